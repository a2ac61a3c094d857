//! Euler characteristics of smooth projective hypersurfaces.
//!
//! Rank level: primitive Hodge numbers from the graded Jacobian ring of a
//! smooth form. GW level: split quadrics, whose motive is a sum of Tate
//! twists with `χ^c(1(−i)) = ⟨−1⟩^i`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::gw::{Field, GwElement};
use crate::{Error, Result};

/// Primitive Hodge numbers `h^{n−q,q}_prim`, `q = 0..=n`, of a smooth degree
/// `d` hypersurface in `ℙ^N` (`n = N − 1`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HodgeTable {
    pub d: u32,
    #[serde(rename = "N")]
    pub big_n: u32,
    pub n: u32,
    pub primitive: Vec<u64>,
}

/// Coefficients of `(1 + t + ⋯ + t^{d−2})^{N+1}`, the Hilbert series of
/// the Jacobian ring of a smooth degree `d` form in `N + 1` variables.
fn jacobian_hilbert_series(d: u32, big_n: u32) -> Result<Vec<u128>> {
    let block = (d - 1) as usize;
    let mut series = vec![1u128];
    for _ in 0..=big_n {
        let mut next = vec![0u128; series.len() + block - 1];
        for (i, &c) in series.iter().enumerate() {
            for slot in &mut next[i..i + block] {
                *slot = slot.checked_add(c).ok_or_else(|| overflow(d, big_n))?;
            }
        }
        series = next;
    }
    Ok(series)
}

fn overflow(d: u32, big_n: u32) -> Error {
    Error::Unsupported(format!("Hodge numbers for d = {d}, N = {big_n} exceed 64 bits"))
}

/// Hodge table of a smooth degree `d ≥ 2` hypersurface in `ℙ^N`, `N ≥ 1`.
/// For `N = 1` the hypersurface is `d` points and the single entry is the
/// `d − 1` classes beyond the hyperplane class.
pub fn primitive_hodge(d: u32, big_n: u32) -> Result<HodgeTable> {
    if d < 2 || big_n < 1 {
        return Err(Error::InvalidInput(format!("need d ≥ 2 and N ≥ 1, got d = {d}, N = {big_n}")));
    }
    let series = jacobian_hilbert_series(d, big_n)?;
    let n = big_n - 1;
    let primitive = (0..=n)
        .map(|q| {
            let deg = i64::from(q + 1) * i64::from(d) - i64::from(big_n) - 1;
            let c = if deg < 0 { 0 } else { series.get(deg as usize).copied().unwrap_or(0) };
            u64::try_from(c).map_err(|_| overflow(d, big_n))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HodgeTable { d, big_n, n, primitive })
}

impl HodgeTable {
    /// Topological Euler characteristic.
    pub fn euler(&self) -> Result<i64> {
        let total: u64 = self
            .primitive
            .iter()
            .try_fold(0u64, |a, &b| a.checked_add(b))
            .ok_or_else(|| overflow(self.d, self.big_n))?;
        let total = i64::try_from(total).map_err(|_| overflow(self.d, self.big_n))?;
        let sign = if self.n.is_multiple_of(2) { 1 } else { -1 };
        Ok(i64::from(self.n) + 1 + sign * total)
    }
}

/// `χ_top` of a smooth degree `d` hypersurface in `ℙ^N`.
pub fn euler_rank(d: u32, big_n: u32) -> Result<i64> {
    primitive_hodge(d, big_n)?.euler()
}

fn minus_one_power(i: u32) -> GwElement {
    if i.is_multiple_of(2) {
        GwElement::int(1)
    } else {
        GwElement::int(-1)
    }
}

fn sum(parts: impl IntoIterator<Item = GwElement>) -> GwElement {
    parts.into_iter().fold(GwElement::zero(Field::Rationals), |acc, x| acc.try_add(&x).expect("same field"))
}

/// `χ^c` of a split smooth quadric of dimension `n`:
/// `Σ_{i=0}^{n} ⟨−1⟩^i`, plus `⟨−1⟩^{n/2}` for even `n`.
pub fn chi_split_quadric(n: u32) -> GwElement {
    let mut parts: Vec<GwElement> = (0..=n).map(minus_one_power).collect();
    if n.is_multiple_of(2) {
        parts.push(minus_one_power(n / 2));
    }
    sum(parts)
}

/// `χ^c` of the split affine quadric `{Q = 1} ⊂ 𝔸^{n+1}`, read off its
/// point count: `L^n − L^{(n−1)/2}` for odd `n`, `L^n + L^{n/2}` for even
/// `n`.
pub fn chi_affine_split_quadric(n: u32) -> GwElement {
    let top = minus_one_power(n);
    if n.is_multiple_of(2) {
        top.try_add(&minus_one_power(n / 2)).expect("same field")
    } else {
        top.try_sub(&minus_one_power((n - 1) / 2)).expect("same field")
    }
}

/// Generators of the symbolic K₀ classes: the closed fibre `D`, its
/// boundary `C`, the open part `A = D ∖ C`, the affine line and a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    AffineLine,
    D,
    A,
    C,
    Point,
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Symbol::D => "[D]",
            Symbol::C => "[C]",
            Symbol::A => "[A]",
            Symbol::AffineLine => "[𝔸¹]",
            Symbol::Point => "[pt]",
        })
    }
}

/// Integer combination of products of [`Symbol`]s, with `[pt] = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct K0Class {
    terms: BTreeMap<Vec<Symbol>, i64>,
}

impl K0Class {
    pub fn zero() -> Self {
        K0Class::default()
    }

    pub fn symbol(s: Symbol) -> Self {
        let key = if s == Symbol::Point { Vec::new() } else { vec![s] };
        K0Class { terms: BTreeMap::from([(key, 1)]) }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Symbol], i64)> {
        self.terms.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    pub fn add(&self, other: &K0Class) -> K0Class {
        let mut terms = self.terms.clone();
        for (k, &v) in &other.terms {
            *terms.entry(k.clone()).or_insert(0) += v;
        }
        terms.retain(|_, v| *v != 0);
        K0Class { terms }
    }

    pub fn scale(&self, c: i64) -> K0Class {
        let mut terms: BTreeMap<_, _> = self.terms.iter().map(|(k, &v)| (k.clone(), v * c)).collect();
        terms.retain(|_, v| *v != 0);
        K0Class { terms }
    }

    pub fn sub(&self, other: &K0Class) -> K0Class {
        self.add(&other.scale(-1))
    }

    pub fn mul(&self, other: &K0Class) -> K0Class {
        let mut out = K0Class::zero();
        for (a, &x) in &self.terms {
            for (b, &y) in &other.terms {
                let mut key: Vec<Symbol> = a.iter().chain(b).copied().collect();
                key.sort();
                out = out.add(&K0Class { terms: BTreeMap::from([(key, x * y)]) });
            }
        }
        out
    }

    /// Replaces every `[D]` by `[A] + [C]`.
    pub fn cut(&self) -> K0Class {
        let mut out = K0Class::zero();
        for (key, &c) in &self.terms {
            let mut term = K0Class { terms: BTreeMap::from([(Vec::new(), c)]) };
            for &s in key {
                let factor = if s == Symbol::D {
                    K0Class::symbol(Symbol::A).add(&K0Class::symbol(Symbol::C))
                } else {
                    K0Class::symbol(s)
                };
                term = term.mul(&factor);
            }
            out = out.add(&term);
        }
        out
    }

    /// `χ^c`-evaluation with `χ^c(𝔸¹) = ⟨−1⟩` and `χ^c(pt) = ⟨1⟩`.
    pub fn evaluate(&self, chi: &ChiValues) -> Result<GwElement> {
        let mut acc = GwElement::zero(Field::Rationals);
        for (key, &c) in &self.terms {
            let mut term = GwElement::int(1);
            for &s in key {
                term = term.try_mul(&chi.get(s)?)?;
            }
            acc = acc.try_add(&term.times(c))?;
        }
        Ok(acc)
    }

    /// Rank of the `χ^c`-evaluation from topological Euler characteristics.
    pub fn evaluate_rank(&self, chi: &RankValues) -> Result<i64> {
        let mut acc = 0i64;
        for (key, &c) in &self.terms {
            let mut term = 1i64;
            for &s in key {
                term *= chi.get(s)?;
            }
            acc += c * term;
        }
        Ok(acc)
    }
}

impl fmt::Display for K0Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(k, _)| (k.len(), k.to_vec()));
        for (i, (key, &c)) in terms.into_iter().enumerate() {
            let sep = match (i, c < 0) {
                (0, true) => "−",
                (0, false) => "",
                (_, true) => " − ",
                (_, false) => " + ",
            };
            f.write_str(sep)?;
            let body = if key.is_empty() {
                "[pt]".to_string()
            } else {
                key.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("·")
            };
            if c.abs() != 1 {
                write!(f, "{}·", c.abs())?;
            }
            f.write_str(&body)?;
        }
        Ok(())
    }
}

/// `[Ψ] = [D] − [𝔸¹]·[C]`.
pub fn k0_nearby_class() -> K0Class {
    K0Class::symbol(Symbol::D).sub(&K0Class::symbol(Symbol::AffineLine).mul(&K0Class::symbol(Symbol::C)))
}

/// `χ^c` values for `D`, `C`, `A`; a missing one of `D` and `A` is filled
/// in from the other two by `[D] = [A] + [C]`.
#[derive(Debug, Clone, Default)]
pub struct ChiValues {
    pub d: Option<GwElement>,
    pub c: Option<GwElement>,
    pub a: Option<GwElement>,
}

impl ChiValues {
    /// The split quadric of dimension `n`, its hyperplane section and the
    /// affine complement.
    pub fn split_quadric(n: u32) -> ChiValues {
        let c = if n == 0 { GwElement::zero(Field::Rationals) } else { chi_split_quadric(n - 1) };
        ChiValues { d: Some(chi_split_quadric(n)), c: Some(c), a: Some(chi_affine_split_quadric(n)) }
    }

    fn get(&self, s: Symbol) -> Result<GwElement> {
        let missing = |name: &str| Error::Unsupported(format!("no χ^c value for {name}"));
        match s {
            Symbol::AffineLine => Ok(GwElement::int(-1)),
            Symbol::Point => Ok(GwElement::int(1)),
            Symbol::C => self.c.clone().ok_or_else(|| missing("[C]")),
            Symbol::D => match (&self.d, &self.a, &self.c) {
                (Some(d), _, _) => Ok(d.clone()),
                (None, Some(a), Some(c)) => a.try_add(c),
                _ => Err(missing("[D]")),
            },
            Symbol::A => match (&self.a, &self.d, &self.c) {
                (Some(a), _, _) => Ok(a.clone()),
                (None, Some(d), Some(c)) => d.try_sub(c),
                _ => Err(missing("[A]")),
            },
        }
    }
}

/// Topological Euler characteristics for `D`, `C`, `A`.
#[derive(Debug, Clone, Copy, Default)]
pub struct RankValues {
    pub d: Option<i64>,
    pub c: Option<i64>,
    pub a: Option<i64>,
}

impl RankValues {
    /// `D = V(F − T^r) ⊂ ℙ^{n+1}`, `C = V(F) ⊂ ℙ^n` for a smooth degree `r`
    /// form `F` in `n + 1` variables.
    pub fn hypersurface(r: u32, n: u32) -> Result<RankValues> {
        Ok(RankValues { d: Some(euler_rank(r, n + 1)?), c: Some(euler_rank(r, n)?), a: None })
    }

    fn get(&self, s: Symbol) -> Result<i64> {
        let missing = |name: &str| Error::Unsupported(format!("no Euler characteristic for {name}"));
        match s {
            Symbol::AffineLine | Symbol::Point => Ok(1),
            Symbol::C => self.c.ok_or_else(|| missing("[C]")),
            Symbol::D => self.d.or_else(|| Some(self.a? + self.c?)).ok_or_else(|| missing("[D]")),
            Symbol::A => self.a.or_else(|| Some(self.d? - self.c?)).ok_or_else(|| missing("[A]")),
        }
    }
}
