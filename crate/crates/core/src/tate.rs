//! Pure Tate objects `⊕ 1(a)[b]` and maps between them, with the hom table
//! `dim Hom(1(a)[b], 1(c)[d]) = [a = c ∧ b = d]`.
//!
//! Used to reproduce the motivic Picard–Lefschetz data of a quadratic
//! singularity: the motives of split quadrics, the factorization of the
//! variation map, and the monodromy on the Kummer motive.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::gw::Notation;
use crate::{Error, Result};

/// `(twist, shift)`, denoting `1(twist)[shift]`.
pub type Summand = (i64, i64);

/// `dim Hom(s, t)`.
pub fn hom_dim(s: Summand, t: Summand) -> u32 {
    u32::from(s == t)
}

fn summand_text(s: Summand, notation: Notation) -> String {
    let num = |v: i64| match notation {
        Notation::Unicode if v < 0 => format!("\u{2212}{}", -v),
        _ => v.to_string(),
    };
    match s {
        (0, 0) => "1".into(),
        (a, 0) => format!("1({})", num(a)),
        (a, b) => format!("1({})[{}]", num(a), num(b)),
    }
}

/// A finite direct sum of Tate twists. The summand order fixes matrix
/// indices; equality ignores it.
#[derive(Debug, Clone, Eq, Default)]
pub struct TateObject {
    summands: Vec<Summand>,
}

impl PartialEq for TateObject {
    fn eq(&self, other: &Self) -> bool {
        self.multiset() == other.multiset()
    }
}

impl TateObject {
    pub fn new(summands: Vec<Summand>) -> Self {
        TateObject { summands }
    }

    pub fn unit() -> Self {
        TateObject::new(vec![(0, 0)])
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn multiset(&self) -> BTreeMap<Summand, usize> {
        let mut m = BTreeMap::new();
        for &s in &self.summands {
            *m.entry(s).or_insert(0) += 1;
        }
        m
    }

    pub fn sum(&self, other: &TateObject) -> TateObject {
        TateObject::new(self.summands.iter().chain(&other.summands).copied().collect())
    }

    /// `X(k)[l]`.
    pub fn twist_shift(&self, k: i64, l: i64) -> TateObject {
        TateObject::new(self.summands.iter().map(|&(a, b)| (a + k, b + l)).collect())
    }

    /// `X(k)`.
    pub fn twist(&self, k: i64) -> TateObject {
        self.twist_shift(k, 0)
    }

    /// Dual object: `1(a)[b] ↦ 1(−a)[−b]`.
    pub fn dual(&self) -> TateObject {
        TateObject::new(self.summands.iter().map(|&(a, b)| (-a, -b)).collect())
    }

    /// Class in `K₀`: `[1(a)[b]] = (−1)^b [1(a)]`, keyed by twist.
    pub fn k0_class(&self) -> BTreeMap<i64, i64> {
        let mut m = BTreeMap::new();
        for &(a, b) in &self.summands {
            *m.entry(a).or_insert(0) += if b % 2 == 0 { 1 } else { -1 };
        }
        m.retain(|_, v| *v != 0);
        m
    }

    /// Rank of the realization: the number of summands.
    pub fn rank(&self) -> usize {
        self.summands.len()
    }

    pub fn to_text(&self, notation: Notation) -> String {
        if self.summands.is_empty() {
            return "0".into();
        }
        let sep = match notation {
            Notation::Unicode => " ⊕ ",
            Notation::Ascii => " + ",
        };
        self.summands.iter().map(|&s| summand_text(s, notation)).collect::<Vec<_>>().join(sep)
    }

    pub fn to_json(&self) -> Value {
        json!(self.summands.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>())
    }

    pub fn from_json(v: &Value) -> Result<TateObject> {
        let bad = || Error::InvalidInput("a Tate object is a list of [twist, shift] pairs".into());
        let items = v.as_array().ok_or_else(bad)?;
        let summands = items
            .iter()
            .map(|p| match p.as_array().map(Vec::as_slice) {
                Some([a, b]) => Ok((a.as_i64().ok_or_else(bad)?, b.as_i64().ok_or_else(bad)?)),
                _ => Err(bad()),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TateObject::new(summands))
    }
}

impl fmt::Display for TateObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(Notation::Unicode))
    }
}

/// A morphism of Tate objects; `entries[t][s]` is the component from source
/// summand `s` to target summand `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TateMap {
    source: TateObject,
    target: TateObject,
    entries: Vec<Vec<BigRational>>,
}

impl TateMap {
    /// Checks the matrix shape and that every nonzero entry sits in a slot
    /// with a nonzero hom space.
    pub fn new(source: TateObject, target: TateObject, entries: Vec<Vec<BigRational>>) -> Result<TateMap> {
        if entries.len() != target.len() || entries.iter().any(|row| row.len() != source.len()) {
            return Err(Error::ShapeMismatch(format!(
                "matrix must be {} × {} (target × source)",
                target.len(),
                source.len()
            )));
        }
        for (t, row) in entries.iter().enumerate() {
            for (s, x) in row.iter().enumerate() {
                let (from, to) = (source.summands[s], target.summands[t]);
                if !x.is_zero() && hom_dim(from, to) == 0 {
                    return Err(Error::ForbiddenHom {
                        from: summand_text(from, Notation::Ascii),
                        to: summand_text(to, Notation::Ascii),
                    });
                }
            }
        }
        Ok(TateMap { source, target, entries })
    }

    pub fn from_ints(source: TateObject, target: TateObject, entries: &[&[i64]]) -> Result<TateMap> {
        let entries =
            entries.iter().map(|row| row.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
        TateMap::new(source, target, entries)
    }

    pub fn zero(source: TateObject, target: TateObject) -> TateMap {
        let entries = vec![vec![BigRational::zero(); source.len()]; target.len()];
        TateMap { source, target, entries }
    }

    pub fn identity(x: &TateObject) -> TateMap {
        let n = x.len();
        let entries = (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
            .collect();
        TateMap { source: x.clone(), target: x.clone(), entries }
    }

    pub fn source(&self) -> &TateObject {
        &self.source
    }

    pub fn target(&self) -> &TateObject {
        &self.target
    }

    pub fn entries(&self) -> &[Vec<BigRational>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &BigRational) -> TateMap {
        let entries = self.entries.iter().map(|row| row.iter().map(|x| x * c).collect()).collect();
        TateMap { entries, ..self.clone() }
    }

    /// `f(k)`: twists source and target; the matrix is unchanged.
    pub fn twist(&self, k: i64) -> TateMap {
        TateMap { source: self.source.twist(k), target: self.target.twist(k), entries: self.entries.clone() }
    }

    /// Matrix rank over ℚ.
    pub fn rank(&self) -> usize {
        let mut a = self.entries.clone();
        let (rows, cols) = (a.len(), self.source.len());
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
            a.swap(rank, p);
            for r in 0..rows {
                if r != rank && !a[r][c].is_zero() {
                    let f = &a[r][c] / &a[rank][c];
                    for k in c..cols {
                        let v = &a[rank][k] * &f;
                        a[r][k] -= v;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn to_json(&self) -> Value {
        json!({
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "matrix": self.entries.iter().map(|row| row.iter().map(rational_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

fn rational_json(x: &BigRational) -> Value {
    if x.is_integer() {
        if let Some(v) = x.numer().to_i64() {
            return json!(v);
        }
    }
    json!(x.to_string())
}

/// `f ∘ g`. The target of `g` must equal the source of `f` summand by
/// summand.
pub fn compose(f: &TateMap, g: &TateMap) -> Result<TateMap> {
    if g.target.summands != f.source.summands {
        return Err(Error::ShapeMismatch(format!("cannot compose {} -> {} after -> {}", f.source, f.target, g.target)));
    }
    let (rows, inner, cols) = (f.target.len(), f.source.len(), g.source.len());
    let mut entries = vec![vec![BigRational::zero(); cols]; rows];
    for (i, out) in entries.iter_mut().enumerate() {
        for k in 0..inner {
            if f.entries[i][k].is_zero() {
                continue;
            }
            for (j, slot) in out.iter_mut().enumerate() {
                *slot += &f.entries[i][k] * &g.entries[k][j];
            }
        }
    }
    TateMap::new(g.source.clone(), f.target.clone(), entries)
}

/// Motive of a split smooth quadric of dimension `n`:
/// `⊕_{i=0}^{n} 1(−i)[−2i]`, plus `1(−n/2)[−n]` for even `n`.
pub fn quadric_motive(n: u32) -> TateObject {
    let n = i64::from(n);
    let mut s: Vec<Summand> = (0..=n).map(|i| (-i, -2 * i)).collect();
    if n % 2 == 0 {
        s.push((-n / 2, -n));
    }
    TateObject::new(s)
}

/// Outer terms of the fiber sequences
/// `1 → h(A) → 1(−⌈n/2⌉)[−n]` and `1(−⌊n/2⌋)[−n] → h_c(A) → 1(−n)[−2n]`
/// for an affine split quadric `A` of dimension `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AffineQuadricBounds {
    pub m1_target: Summand,
    pub m2_source: Summand,
    pub hc_tail: Summand,
}

pub fn affine_quadric_bounds(n: u32) -> Result<AffineQuadricBounds> {
    if n < 1 {
        return Err(Error::InvalidInput("affine quadric needs n ≥ 1".into()));
    }
    let n = i64::from(n);
    Ok(AffineQuadricBounds { m1_target: (-(n + 1) / 2, -n), m2_source: (-n / 2, -n), hc_tail: (-n, -2 * n) })
}

/// `h(A)` and `h_c(A)` of the affine split quadric of dimension `n`.
pub fn affine_quadric_motives(n: u32) -> Result<(TateObject, TateObject)> {
    let b = affine_quadric_bounds(n)?;
    Ok((TateObject::new(vec![(0, 0), b.m1_target]), TateObject::new(vec![b.m2_source, b.hc_tail])))
}

/// A hom space used to show that a map vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomSlot {
    pub source: Summand,
    pub target: Summand,
    pub dim: u32,
}

impl HomSlot {
    fn new(source: Summand, target: Summand) -> Self {
        HomSlot { source, target, dim: hom_dim(source, target) }
    }

    fn to_json(self) -> Value {
        json!({"source": [self.source.0, self.source.1], "target": [self.target.0, self.target.1], "dim": self.dim})
    }
}

/// The variation map of an ordinary double point in relative dimension `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VariationResult {
    /// `var = 0`, with the vanishing hom slots that force it.
    Zero { certificate: Vec<HomSlot> },
    /// `var = m₂ ∘ scalar ∘ m₁`.
    Factored { m1: TateMap, scalar: BigRational, m2: TateMap },
}

impl VariationResult {
    pub fn is_zero(&self) -> bool {
        matches!(self, VariationResult::Zero { .. })
    }

    pub fn scalar(&self) -> Option<&BigRational> {
        match self {
            VariationResult::Factored { scalar, .. } => Some(scalar),
            VariationResult::Zero { .. } => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            VariationResult::Zero { certificate } => json!({
                "kind": "zero",
                "certificate": certificate.iter().map(|s| s.to_json()).collect::<Vec<_>>(),
            }),
            VariationResult::Factored { m1, scalar, m2 } => json!({
                "kind": "factored",
                "m1": m1.to_json(),
                "scalar": rational_json(scalar),
                "m2": m2.to_json(),
            }),
        }
    }
}

/// The step scalar `λ` on `h(C)(−1)[−1]`, fixed by comparison with the
/// two-branch semistable family.
pub const LAMBDA: i64 = -1;

/// Variation map `h(A) → h_c(A)(−1)` of a quadratic singularity in
/// relative dimension `n ≥ 1`.
pub fn variation_quadric(n: u32) -> Result<VariationResult> {
    let (h_a, h_c) = affine_quadric_motives(n)?;
    let target = h_c.twist(-1);
    let ni = i64::from(n);
    let m = ni / 2;
    if n.is_multiple_of(2) {
        let certificate = vec![
            // 1 → h(A) → h_c(A)(−1) → 1(−n−1)[−2n]
            HomSlot::new((0, 0), (-ni - 1, -2 * ni)),
            // cofiber of the first sequence to the twisted fiber of the second
            HomSlot::new((-m, -ni), (-m - 1, -ni)),
        ];
        if certificate.iter().any(|s| s.dim != 0) {
            return Err(Error::Internal("even-dimensional variation has a nonzero hom slot".into()));
        }
        for (i, &s) in h_a.summands().iter().enumerate() {
            for &t in target.summands() {
                if hom_dim(s, t) != 0 {
                    return Err(Error::Internal(format!("summand {i} of h(A) maps to h_c(A)(−1)")));
                }
            }
        }
        return Ok(VariationResult::Zero { certificate });
    }
    let middle = TateObject::new(vec![(-m - 1, -ni)]);
    let m1 = TateMap::from_ints(h_a, middle.clone(), &[&[0, 1]])?;
    let m2 = TateMap::from_ints(middle, target, &[&[1], &[0]])?;
    Ok(VariationResult::Factored { m1, scalar: BigRational::from_integer(LAMBDA.into()), m2 })
}

/// The full variation map as a matrix `h(A) → h_c(A)(−1)`.
pub fn variation_map(n: u32) -> Result<TateMap> {
    match variation_quadric(n)? {
        VariationResult::Zero { .. } => {
            let (h_a, h_c) = affine_quadric_motives(n)?;
            Ok(TateMap::zero(h_a, h_c.twist(-1)))
        }
        VariationResult::Factored { m1, scalar, m2 } => compose(&m2, &m1.scale(&scalar)),
    }
}

/// `−r · var = β(−1) ∘ α` for a homogeneous singularity of degree `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractVariation {
    pub r: u32,
    pub n: u32,
    pub scalar: BigRational,
    pub specialization: Option<VariationResult>,
}

impl AbstractVariation {
    pub fn factorization(&self, notation: Notation) -> String {
        let (neg, dot, circ, beta, alpha) = match notation {
            Notation::Unicode => ("\u{2212}", "·", "∘", "β", "α"),
            Notation::Ascii => ("-", "*", "o", "beta", "alpha"),
        };
        let scalar = self.scalar.to_string().replace('-', neg);
        format!("var = ({scalar}){dot}{beta}({neg}1) {circ} {alpha}")
    }

    pub fn to_json(&self) -> Value {
        json!({
            "r": self.r,
            "n": self.n,
            "scalar": rational_json(&self.scalar),
            "factorization": self.factorization(Notation::Ascii),
            "alpha": "h(A) -> h(C)(-1)[-1]",
            "beta": "h(C)(-1)[-1] -> h_c(A)",
            "specialization": self.specialization.as_ref().map(VariationResult::to_json),
        })
    }
}

/// The structural statement for degree `r ≥ 2`; for `r = 2` it carries the
/// explicit quadric computation.
pub fn abstract_variation_report(r: u32, n: u32) -> Result<AbstractVariation> {
    if r < 2 || n < 1 {
        return Err(Error::InvalidInput(format!("need r ≥ 2 and n ≥ 1, got r = {r}, n = {n}")));
    }
    let scalar = BigRational::new((-1).into(), i64::from(r).into());
    let specialization = if r == 2 { Some(variation_quadric(n)?) } else { None };
    Ok(AbstractVariation { r, n, scalar, specialization })
}

/// Monodromy `N` on the nearby Kummer motive `1 ⊕ 1(−1) → 1(−1) ⊕ 1(−2)`.
pub fn kummer_monodromy() -> TateMap {
    let source = TateObject::new(vec![(0, 0), (-1, 0)]);
    TateMap::from_ints(source.clone(), source.twist(-1), &[&[0, -1], &[0, 0]]).expect("valid hom slots")
}

/// Note recorded for the even-dimensional obstruction slot.
pub const EVEN_SLOT_NOTE: &str =
    "the obstruction map for even n = 2m is 1(-m)[-n] -> 1(-m-1)[-n], with target twist -m-1 (not m-1)";
