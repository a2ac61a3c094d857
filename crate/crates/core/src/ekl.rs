//! The quadratic Milnor number `μ^q` as the class of the Scheja–Storch form.
//!
//! The Bezoutian `det Δ(X, Y)` of the partial derivatives is reduced modulo
//! the local Jacobian algebra separately in the `X` and `Y` variables; its
//! coefficient matrix on the standard-monomial basis is a symmetric matrix
//! whose class in GW(ℚ) is `μ^q`.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::gw::{diagonalize, GwElement};
use crate::poly::{
    is_quasi_homogeneous, parse, weights_admissible, Monomial, MonomialOrder, Polynomial, QuotientBasis,
};
use crate::{Error, Result};

/// A hypersurface germ at the origin with optional (weighted) homogeneity
/// data.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularityInput {
    f: Polynomial,
    vars: Vec<String>,
    weights: Vec<u64>,
    degree: Option<u64>,
}

impl SingularityInput {
    /// A germ without homogeneity data; enough for `μ^q`.
    pub fn germ(f: Polynomial, vars: Vec<String>) -> Result<Self> {
        if vars.is_empty() || vars.len() != f.nvars() {
            return Err(Error::InvalidInput("one variable name per polynomial variable is required".into()));
        }
        if !f.constant_term().is_zero() {
            return Err(Error::InvalidInput("the origin does not lie on the hypersurface (f(0) ≠ 0)".into()));
        }
        let weights = vec![1; vars.len()];
        Ok(SingularityInput { f, vars, weights, degree: None })
    }

    /// `f` homogeneous of degree `r`.
    pub fn homogeneous(f: Polynomial, vars: Vec<String>, r: u64) -> Result<Self> {
        let weights = vec![1; vars.len()];
        Self::weighted(f, vars, weights, r)
    }

    /// `f` weighted homogeneous of degree `r` for admissible weights.
    pub fn weighted(f: Polynomial, vars: Vec<String>, weights: Vec<u64>, r: u64) -> Result<Self> {
        let mut s = Self::germ(f, vars)?;
        if weights.len() != s.vars.len() {
            return Err(Error::InvalidInput(format!("{} weights given for {} variables", weights.len(), s.vars.len())));
        }
        if r == 0 || weights.contains(&0) {
            return Err(Error::InadmissibleWeights("weights and degree must be positive".into()));
        }
        if !is_quasi_homogeneous(&s.f, &weights, r) {
            return Err(Error::InvalidInput(format!(
                "polynomial is not weighted homogeneous of degree {r} for weights {weights:?}"
            )));
        }
        if !weights_admissible(&weights, r, &s.f) {
            return Err(Error::InadmissibleWeights(format!(
                "weights {weights:?} with degree {r} must be pairwise coprime, divide the degree, and each \
                 weight > 1 needs its pure power in the polynomial"
            )));
        }
        s.weights = weights;
        s.degree = Some(r);
        Ok(s)
    }

    /// Parses `src` and attaches homogeneity data. Without weights or a
    /// degree, the degree of a homogeneous `f` is inferred; otherwise the
    /// input is a plain germ.
    pub fn from_source(src: &str, vars: &[String], weights: Option<Vec<u64>>, degree: Option<u64>) -> Result<Self> {
        let f = parse(src, vars)?;
        let vars = vars.to_vec();
        match (weights, degree) {
            (Some(w), Some(r)) => Self::weighted(f, vars, w, r),
            (Some(_), None) => Err(Error::InvalidInput("weights require a degree".into())),
            (None, Some(r)) => Self::homogeneous(f, vars, r),
            (None, None) => {
                let r = f.total_degree().unwrap_or(0);
                let ones = vec![1; vars.len()];
                if r > 0 && is_quasi_homogeneous(&f, &ones, u64::from(r)) {
                    Self::homogeneous(f, vars, u64::from(r))
                } else {
                    Self::germ(f, vars)
                }
            }
        }
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.f
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    /// The (weighted) degree `r`, if known.
    pub fn degree(&self) -> Option<u64> {
        self.degree
    }

    /// Relative dimension: number of variables minus one.
    pub fn n(&self) -> usize {
        self.vars.len() - 1
    }

    pub fn trivial_weights(&self) -> bool {
        self.weights.iter().all(|&a| a == 1)
    }
}

/// Symmetric form on the standard-monomial basis of the local Jacobian
/// algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct BilinearForm {
    pub basis: Vec<Monomial>,
    pub gram: Vec<Vec<BigRational>>,
}

impl BilinearForm {
    pub fn is_symmetric(&self) -> bool {
        let n = self.gram.len();
        (0..n).all(|i| (0..i).all(|j| self.gram[i][j] == self.gram[j][i]))
    }
}

/// `Δ_ij` such that `g_i(X) − g_i(Y) = Σ_j Δ_ij (X_j − Y_j)`, obtained by
/// replacing `X_1, …, X_m` with `Y_1, …, Y_m` left to right. Variables
/// `0..m` are `X`, `m..2m` are `Y`.
fn divided_differences(gs: &[Polynomial]) -> Vec<Vec<Polynomial>> {
    let m = gs.len();
    gs.iter()
        .map(|g| {
            (0..m)
                .map(|j| {
                    let mut out = Polynomial::zero(2 * m);
                    for (mono, c) in g.terms() {
                        let e = mono.exponents();
                        let a = e[j];
                        if a == 0 {
                            continue;
                        }
                        let mut base = vec![0u32; 2 * m];
                        base[m..m + j].copy_from_slice(&e[..j]);
                        base[j + 1..m].copy_from_slice(&e[j + 1..m]);
                        for s in 0..a {
                            let mut ex = base.clone();
                            ex[j] = s;
                            ex[m + j] = a - 1 - s;
                            out.add_term(Monomial::new(ex), c.clone());
                        }
                    }
                    out
                })
                .collect()
        })
        .collect()
}

fn determinant(a: &[Vec<Polynomial>], nvars: usize) -> Polynomial {
    let m = a.len();
    // dp[S]: signed sum over bijections rows 0..|S| → columns S
    let mut dp: Vec<Option<Polynomial>> = vec![None; 1 << m];
    dp[0] = Some(Polynomial::from_int(nvars, 1));
    for mask in 0usize..(1 << m) {
        let Some(cur) = dp[mask].clone() else { continue };
        let row = mask.count_ones() as usize;
        if row == m {
            continue;
        }
        for c in 0..m {
            if mask & (1 << c) != 0 || a[row][c].is_zero() {
                continue;
            }
            let larger = (mask >> (c + 1)).count_ones();
            let mut term = cur.mul(&a[row][c]);
            if larger % 2 == 1 {
                term = term.neg();
            }
            let next = mask | (1 << c);
            dp[next] = Some(match dp[next].take() {
                Some(p) => p.add(&term),
                None => term,
            });
        }
    }
    dp[(1 << m) - 1].take().unwrap_or_else(|| Polynomial::zero(nvars))
}

/// Bezoutian `det Δ` of `m` polynomials in `m` variables, as a polynomial
/// in `X_1..X_m, Y_1..Y_m`.
pub fn bezoutian(gs: &[Polynomial]) -> Result<Polynomial> {
    let m = gs.len();
    if gs.iter().any(|g| g.nvars() != m) {
        return Err(Error::InvalidInput("the Bezoutian needs m polynomials in m variables".into()));
    }
    let delta = divided_differences(gs);
    let xs: Vec<usize> = (0..m).collect();
    let ys: Vec<usize> = (m..2 * m).collect();
    for (i, g) in gs.iter().enumerate() {
        let mut lhs = Polynomial::zero(2 * m);
        for j in 0..m {
            let diff = Polynomial::var(2 * m, j).sub(&Polynomial::var(2 * m, m + j));
            lhs = lhs.add(&delta[i][j].mul(&diff));
        }
        let rhs = g.rename(2 * m, &xs).sub(&g.rename(2 * m, &ys));
        if lhs != rhs {
            return Err(Error::Internal(format!("divided differences of generator {i} do not telescope")));
        }
    }
    Ok(determinant(&delta, 2 * m))
}

/// Local algebra `O_0/J` of the Jacobian ideal at the origin, or `None` when
/// some partial derivative is a unit (the origin is a smooth point).
///
/// When every variable is nilpotent modulo `J` the global quotient is already
/// local. Otherwise `J + m^N` is used for the first `N` at which the
/// dimension stabilizes; by Nakayama `m^N` then lies in `J O_0`.
pub fn local_jacobian_algebra(f: &Polynomial) -> Result<Option<QuotientBasis>> {
    let m = f.nvars();
    let partials = f.partials();
    if partials.iter().any(|g| !g.constant_term().is_zero()) {
        return Ok(None);
    }
    let order = MonomialOrder::grevlex(m);
    if partials.iter().all(Polynomial::is_zero) {
        return Err(Error::NotIsolated);
    }
    let global = QuotientBasis::new(&partials, order.clone())?;
    if let Some(d) = global.dimension() {
        let nilpotent = (0..m).all(|i| global.contains(&Polynomial::var(m, i).pow(d.max(1) as u32)));
        if nilpotent {
            return Ok(Some(global));
        }
    }
    const MAX_POWER: u32 = 48;
    let mut previous: Option<(usize, QuotientBasis)> = None;
    for n in 1..=MAX_POWER {
        let mut gens = partials.clone();
        gens.extend(
            monomials_of_degree(m, n)
                .into_iter()
                .map(|mono| Polynomial::monomial(mono, BigRational::from_integer(1.into()))),
        );
        let q = QuotientBasis::new(&gens, order.clone())?;
        let d = q.dimension().ok_or_else(|| Error::Internal("truncated quotient is infinite".into()))?;
        if let Some((pd, pq)) = previous {
            if pd == d {
                return Ok(Some(pq));
            }
        }
        previous = Some((d, q));
    }
    Err(Error::NotIsolated)
}

fn monomials_of_degree(m: usize, n: u32) -> Vec<Monomial> {
    fn rec(m: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if cur.len() == m - 1 {
            cur.push(left);
            out.push(Monomial::new(cur.clone()));
            cur.pop();
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(m, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, n, &mut Vec::new(), &mut out);
    out
}

/// Milnor number `μ = dim_ℚ O_0/J`; 0 at a smooth point.
pub fn milnor_number(f: &Polynomial) -> Result<usize> {
    Ok(match local_jacobian_algebra(f)? {
        Some(q) => q.dimension().expect("local algebra is finite"),
        None => 0,
    })
}

/// The Scheja–Storch form of `s` on the standard monomials of the local
/// Jacobian algebra; empty at a smooth point.
pub fn ss_form(s: &SingularityInput) -> Result<BilinearForm> {
    let f = &s.f;
    let m = f.nvars();
    let Some(q) = local_jacobian_algebra(f)? else {
        return Ok(BilinearForm { basis: Vec::new(), gram: Vec::new() });
    };
    let basis = q.standard_monomials().expect("local algebra is finite").to_vec();
    let mu = basis.len();
    let b = bezoutian(&f.partials())?;
    let mut memo: HashMap<Vec<u32>, Vec<BigRational>> = HashMap::new();
    let mut coords = |e: &[u32]| -> Result<Vec<BigRational>> {
        if let Some(v) = memo.get(e) {
            return Ok(v.clone());
        }
        let mono = Polynomial::monomial(Monomial::new(e.to_vec()), BigRational::from_integer(1.into()));
        let v = q.coordinates(&mono)?;
        memo.insert(e.to_vec(), v.clone());
        Ok(v)
    };
    let mut gram = vec![vec![BigRational::zero(); mu]; mu];
    for (mono, c) in b.terms() {
        let e = mono.exponents();
        let u = coords(&e[..m])?;
        let v = coords(&e[m..])?;
        for (k, uk) in u.iter().enumerate() {
            if uk.is_zero() {
                continue;
            }
            for (l, vl) in v.iter().enumerate() {
                if !vl.is_zero() {
                    gram[k][l] += c * uk * vl;
                }
            }
        }
    }
    let form = BilinearForm { basis, gram };
    if !form.is_symmetric() {
        return Err(Error::Internal("Scheja–Storch matrix is not symmetric".into()));
    }
    Ok(form)
}

/// `μ^q`: the class of the Scheja–Storch form; 0 at a smooth point.
pub fn quadratic_milnor(s: &SingularityInput) -> Result<GwElement> {
    let form = ss_form(s)?;
    let e = diagonalize(&form.gram)?;
    if e.rank() as usize != form.basis.len() {
        return Err(Error::Internal("rank of μ^q differs from the Milnor number".into()));
    }
    Ok(e)
}

/// Milnor–Orlik number `Π (r − a_i)/a_i` of an isolated weighted
/// homogeneous singularity.
pub fn milnor_rank_weighted(weights: &[u64], r: u64) -> Result<u64> {
    let mut out: u64 = 1;
    for &a in weights {
        if a == 0 || a > r || !(r - a).is_multiple_of(a) {
            return Err(Error::InadmissibleWeights(format!(
                "(r − a)/a is not a non-negative integer for a = {a}, r = {r}"
            )));
        }
        out =
            out.checked_mul((r - a) / a).ok_or_else(|| Error::InadmissibleWeights("Milnor number overflows".into()))?;
    }
    Ok(out)
}
