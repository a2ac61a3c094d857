//! The quadratic conductor formula
//! `Δχ = ⟨w⟩ − ⟨1⟩ + (−⟨w⟩)^n · μ^q` and its cross-checks.
//!
//! The right side comes from the Scheja–Storch form. The left side is the
//! `χ^c`-evaluation of `[D] − [𝔸¹][C] − [pt]`, at GW level for split
//! quadrics and at rank level for smooth hypersurfaces of any degree.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::ekl::{milnor_rank_weighted, quadratic_milnor, SingularityInput};
use crate::euler::{k0_nearby_class, ChiValues, RankValues};
use crate::gw::{diagonalize, Field, GwElement, SquareClass};
use crate::poly::Monomial;
use crate::{Error, Result};

/// `⟨w⟩ − ⟨1⟩ + (−⟨w⟩)^n · μ`.
pub fn conductor_formula(w: u64, n: u32, mu: &GwElement) -> Result<GwElement> {
    let w = i64::try_from(w).map_err(|_| Error::Unsupported(format!("multiplier {w} exceeds 64 bits")))?;
    let ww = GwElement::int(w);
    let mut twisted = ww.pow(n).try_mul(mu)?;
    if n % 2 == 1 {
        twisted = twisted.neg();
    }
    ww.try_sub(&GwElement::int(1))?.try_add(&twisted)
}

/// The multiplier `w`: the degree `r`, times `Π a_i` for weighted input.
pub fn multiplier(s: &SingularityInput) -> Result<u64> {
    let r = s.degree().ok_or_else(|| {
        Error::InvalidInput("the conductor formula needs a (weighted) homogeneous polynomial and its degree".into())
    })?;
    s.weights()
        .iter()
        .try_fold(r, |acc, &a| acc.checked_mul(a))
        .ok_or_else(|| Error::Unsupported("multiplier exceeds 64 bits".into()))
}

/// Right side of the conductor formula for `s`.
pub fn rhs_conductor(s: &SingularityInput) -> Result<GwElement> {
    let w = multiplier(s)?;
    conductor_formula(w, s.n() as u32, &quadratic_milnor(s)?)
}

/// `χ^c(D) − ⟨−1⟩χ^c(C) − ⟨1⟩` for the split quadric `D` of dimension
/// `n ≥ 1` and its hyperplane section `C`.
pub fn lhs_conductor_quadric(n: u32) -> Result<GwElement> {
    if n < 1 {
        return Err(Error::InvalidInput("the quadric left side needs n ≥ 1".into()));
    }
    k0_nearby_class().evaluate(&ChiValues::split_quadric(n))?.try_sub(&GwElement::int(1))
}

fn hypersurface_ranks(r: u32, n: u32) -> Result<RankValues> {
    if n == 0 {
        // C = V(F) ⊂ ℙ^0 is empty
        return Ok(RankValues { d: Some(i64::from(r)), c: Some(0), a: None });
    }
    RankValues::hypersurface(r, n)
}

/// Rank of `χ^c(D) − ⟨−1⟩χ^c(C) − ⟨1⟩` for `D = V(F − T^r) ⊂ ℙ^{n+1}` and
/// `C = V(F) ⊂ ℙ^n`, `F` a smooth degree `r` form.
pub fn lhs_rank_general(r: u32, n: u32) -> Result<i64> {
    if r < 2 {
        return Err(Error::InvalidInput(format!("degree must be at least 2, got {r}")));
    }
    Ok(k0_nearby_class().evaluate_rank(&hypersurface_ranks(r, n)?)? - 1)
}

/// Rank with `χ^c(A)` in place of `χ^c(C)`.
fn lhs_rank_affine_reading(r: u32, n: u32) -> Result<i64> {
    let v = hypersurface_ranks(r, n)?;
    let (d, c) = (v.d.unwrap_or(0), v.c.unwrap_or(0));
    Ok(d - (d - c) - 1)
}

fn quadratic_form(s: &SingularityInput) -> Result<GwElement> {
    let f = s.polynomial();
    let m = f.nvars();
    let two = BigRational::from_integer(2.into());
    let mut gram = vec![vec![BigRational::zero(); m]; m];
    for (mono, c) in f.terms() {
        let e = mono.exponents();
        let idx: Vec<usize> = (0..m).flat_map(|i| std::iter::repeat_n(i, e[i] as usize)).collect();
        match idx[..] {
            [i, j] if i == j => gram[i][i] = c.clone(),
            [i, j] => {
                gram[i][j] = c / &two;
                gram[j][i] = c / &two;
            }
            _ => return Err(Error::Internal("quadric with a term of degree ≠ 2".into())),
        }
    }
    diagonalize(&gram)
}

/// True when `q` has maximal Witt index over ℚ.
fn is_split(q: &GwElement) -> Result<bool> {
    let k = q.rank();
    let half = GwElement::hyperbolic(Field::Rationals).times(k / 2);
    if k % 2 == 0 {
        return q.is_equal(&half);
    }
    let mut c = q.discriminant();
    if (k / 2) % 2 == 1 {
        c = c.mul(&SquareClass::int(-1))?;
    }
    q.is_equal(&half.try_add(&GwElement::class(c))?)
}

/// Result of one GW-level or rank-level comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Checked(bool),
    Skipped,
}

impl Verdict {
    fn to_json(self) -> Value {
        match self {
            Verdict::Checked(b) => json!(b),
            Verdict::Skipped => json!("skipped"),
        }
    }
}

/// Outcome of [`verify`].
#[derive(Debug, Clone, PartialEq)]
pub struct ConductorReport {
    pub input: SingularityInput,
    pub rhs: GwElement,
    pub lhs_full: Option<GwElement>,
    pub lhs_rank: i64,
    pub rhs_rank: i64,
    pub gw_verdict: Verdict,
    pub rank_verdict: bool,
    pub notes: Vec<String>,
}

impl ConductorReport {
    pub fn to_json(&self) -> Value {
        let s = &self.input;
        json!({
            "input": {
                "polynomial": s.polynomial().display(s.vars()),
                "vars": s.vars(),
                "weights": s.weights(),
                "degree": s.degree(),
                "n": s.n(),
            },
            "rhs": self.rhs.simplified().to_json(),
            "lhs_full": self.lhs_full.as_ref().map(|e| e.simplified().to_json()),
            "rank": {"lhs": self.lhs_rank, "rhs": self.rhs_rank},
            "verdicts": {"gw": self.gw_verdict.to_json(), "rank": self.rank_verdict},
            "notes": self.notes,
        })
    }

    /// All checks that ran succeeded.
    pub fn passed(&self) -> bool {
        self.rank_verdict && self.gw_verdict != Verdict::Checked(false)
    }
}

/// Evaluates both sides of the conductor formula for `s` and compares them
/// wherever the left side is available.
pub fn verify(s: &SingularityInput) -> Result<ConductorReport> {
    let w = multiplier(s)?;
    let r = s.degree().expect("multiplier checked the degree");
    let n = s.n() as u32;
    let mu = quadratic_milnor(s)?;
    let rhs = conductor_formula(w, n, &mu)?;
    let rhs_rank = rhs.rank();
    let mut notes = Vec::new();
    if mu.rank() == 0 {
        notes.push("the origin is a smooth point of f; μ^q is the zero form".to_string());
    }
    let r32 = u32::try_from(r).map_err(|_| Error::Unsupported(format!("degree {r} is too large")))?;

    let (lhs_full, gw_verdict, lhs_rank) = if s.trivial_weights() {
        let lhs_rank = if r32 >= 2 { lhs_rank_general(r32, n)? } else { 0 };
        notes.push(
            "left side evaluated as χ^c(D) − ⟨−1⟩·χ^c(C) − ⟨1⟩ with C = V(F) the hyperplane section of \
             D = V(F − T^r)"
                .to_string(),
        );
        let affine = if r32 >= 2 { lhs_rank_affine_reading(r32, n)? } else { lhs_rank };
        if affine != lhs_rank {
            notes.push(format!(
                "with χ^c(A), A = D ∖ C, in place of χ^c(C) the left side would have rank {affine} instead of {lhs_rank}"
            ));
        }
        if r == 2 && n >= 1 {
            let q = quadratic_form(s)?;
            let with_t = q.try_add(&GwElement::int(-1))?;
            if is_split(&q)? && is_split(&with_t)? {
                let lhs = lhs_conductor_quadric(n)?;
                let ok = rhs.is_equal(&lhs)?;
                (Some(lhs), Verdict::Checked(ok), lhs_rank)
            } else {
                notes.push(format!(
                    "GW-level check skipped: the quadrics V(F) and V(F − T²) are not both split over Q (F ≅ {})",
                    q.simplified()
                ));
                (None, Verdict::Skipped, lhs_rank)
            }
        } else {
            notes.push(format!("GW-level check skipped: the left side is known only at rank level for degree {r}"));
            (None, Verdict::Skipped, lhs_rank)
        }
    } else {
        let mo = milnor_rank_weighted(s.weights(), r)?;
        let mo = i64::try_from(mo).map_err(|_| Error::Unsupported("Milnor number exceeds 64 bits".into()))?;
        let lhs_rank = if n.is_multiple_of(2) { mo } else { -mo };
        let product = s.weights().iter().map(u64::to_string).collect::<Vec<_>>().join("·");
        notes.push(format!("weighted multiplier w = r·Π a_i = {r}·{product} = {w}"));
        notes.push("rank-level left side (−1)^n·Π (r − a_i)/a_i from the weighted Milnor number".to_string());
        notes.push("GW-level check skipped: no left side is available for weighted input".to_string());
        (None, Verdict::Skipped, lhs_rank)
    };
    let rank_verdict = lhs_rank == rhs_rank;
    Ok(ConductorReport { input: s.clone(), rhs, lhs_full, lhs_rank, rhs_rank, gw_verdict, rank_verdict, notes })
}

/// `Σ_{i=0}^{n} ε_i x_i^r` in `n + 1` variables; `alternating` picks
/// `ε_i = (−1)^i`, otherwise all `ε_i = 1`.
pub fn fermat(r: u32, n: usize, alternating: bool) -> Result<SingularityInput> {
    let m = n + 1;
    let vars: Vec<String> = (0..m).map(|i| format!("x{i}")).collect();
    let mut f = crate::poly::Polynomial::zero(m);
    for i in 0..m {
        let sign = if alternating && i % 2 == 1 { -BigRational::one() } else { BigRational::one() };
        f.add_term(Monomial::var(m, i, r), sign);
    }
    SingularityInput::homogeneous(f, vars, u64::from(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn input(src: &str, vars: &[&str], weights: Option<Vec<u64>>, degree: Option<u64>) -> SingularityInput {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        SingularityInput::from_source(src, &vars, weights, degree).unwrap()
    }

    fn minus_minus_one() -> GwElement {
        GwElement::from_ints(&[], &[-1])
    }

    #[test]
    fn formula_examples() {
        let odp = conductor_formula(2, 1, &GwElement::int(-1)).unwrap();
        assert!(odp.is_equal(&minus_minus_one()).unwrap());
        let cusp = conductor_formula(36, 1, &GwElement::int(-1)).unwrap();
        assert!(cusp.is_equal(&minus_minus_one()).unwrap());
        let smooth = conductor_formula(4, 2, &GwElement::zero(Field::Rationals)).unwrap();
        assert!(smooth.is_equal(&GwElement::zero(Field::Rationals)).unwrap());
    }

    #[test]
    fn rhs_examples() {
        let odp = rhs_conductor(&input("x^2 - y^2", &["x", "y"], None, None)).unwrap();
        assert!(odp.is_equal(&minus_minus_one()).unwrap());
        // μ^q = ⟨1⟩ + ⟨−1⟩ here, so the right side is −⟨1⟩ − ⟨−1⟩
        let cusp = rhs_conductor(&input("x^2 - y^3", &["x", "y"], Some(vec![3, 2]), Some(6))).unwrap();
        assert!(cusp.is_equal(&GwElement::from_ints(&[], &[1, -1])).unwrap());
        assert!(rhs_conductor(&input("x^2 - y^3", &["x", "y"], None, None)).is_err());
    }

    #[test]
    fn lhs_examples() {
        assert!(lhs_conductor_quadric(1).unwrap().is_equal(&minus_minus_one()).unwrap());
        assert_eq!(lhs_conductor_quadric(2).unwrap().rank(), 1);
        assert!(lhs_conductor_quadric(0).is_err());
        assert_eq!(lhs_rank_general(2, 1).unwrap(), -1);
        assert_eq!(lhs_rank_general(3, 1).unwrap(), -4);
        assert_eq!(lhs_rank_general(3, 2).unwrap(), 8);
        assert_eq!(lhs_rank_affine_reading(2, 1).unwrap(), 1);
    }

    #[test]
    fn split_detection() {
        assert!(is_split(&GwElement::from_ints(&[1, -1], &[])).unwrap());
        assert!(!is_split(&GwElement::from_ints(&[1, 1], &[])).unwrap());
        assert!(is_split(&GwElement::from_ints(&[1, -1, 5], &[])).unwrap());
        assert!(is_split(&GwElement::from_ints(&[2, -2, -1], &[])).unwrap());
        assert!(!is_split(&GwElement::from_ints(&[1, 1, 1], &[])).unwrap());
    }

    #[test]
    fn verify_examples() {
        let rep = verify(&input("x^2 - y^2", &["x", "y"], None, None)).unwrap();
        assert_eq!(rep.gw_verdict, Verdict::Checked(true));
        assert!(rep.rank_verdict);
        let rep = verify(&input("x^2 - y^3", &["x", "y"], Some(vec![3, 2]), Some(6))).unwrap();
        assert_eq!(rep.gw_verdict, Verdict::Skipped);
        assert!(rep.rank_verdict);
        assert_eq!(rep.rhs_rank, -2);
        let rep = verify(&input("x^3 + y^3", &["x", "y"], None, None)).unwrap();
        assert_eq!((rep.rhs_rank, rep.lhs_rank), (-4, -4));
        let rep = verify(&input("x^2 + y^2", &["x", "y"], None, None)).unwrap();
        assert_eq!(rep.gw_verdict, Verdict::Skipped);
        let rep = verify(&input("x*y", &["x", "y"], None, None)).unwrap();
        assert_eq!(rep.gw_verdict, Verdict::Checked(true));
    }

    #[test]
    fn report_json_shape() {
        let rep = verify(&input("x^2 - y^2", &["x", "y"], None, None)).unwrap();
        let v = rep.to_json();
        assert_eq!(v["verdicts"]["gw"], json!(true));
        assert_eq!(v["rank"], json!({"lhs": -1, "rhs": -1}));
        assert_eq!(v["rhs"], json!({"pos": [], "neg": [-1], "field": "Q"}));
        assert_eq!(v["input"]["polynomial"], json!("x^2 - y^2"));
    }

    #[test]
    fn fermat_grid_ranks() {
        for n in 1..=3u32 {
            for r in 2..=4u32 {
                let s = fermat(r, n as usize, false).unwrap();
                let expected = (if n % 2 == 0 { 1 } else { -1 }) * i64::from(r - 1).pow(n + 1);
                assert_eq!(lhs_rank_general(r, n).unwrap(), expected);
                if (r - 1).pow(n + 1) <= 9 {
                    assert_eq!(rhs_conductor(&s).unwrap().rank(), expected);
                }
            }
        }
    }
}
