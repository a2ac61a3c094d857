//! Weighted degrees and admissibility of weight vectors.

use num_integer::Integer;
use num_traits::Zero;

use super::{Monomial, Polynomial};

/// Weighted degree `Σ a_i e_i` of a monomial.
pub fn weighted_degree(m: &Monomial, weights: &[u64]) -> u64 {
    m.exponents().iter().zip(weights).map(|(&e, &a)| u64::from(e) * a).sum()
}

/// True iff every term of `f` has weighted degree exactly `r`.
pub fn is_quasi_homogeneous(f: &Polynomial, weights: &[u64], r: u64) -> bool {
    assert_eq!(weights.len(), f.nvars(), "one weight per variable");
    f.terms().all(|(m, _)| weighted_degree(m, weights) == r)
}

/// Weights are pairwise coprime and divide `r`, and for every `a_i > 1`
/// the pure power `x_i^{r/a_i}` occurs in `f`.
pub fn weights_admissible(weights: &[u64], r: u64, f: &Polynomial) -> bool {
    if weights.contains(&0) || r == 0 {
        return false;
    }
    for i in 0..weights.len() {
        for j in i + 1..weights.len() {
            if weights[i].gcd(&weights[j]) != 1 {
                return false;
            }
        }
    }
    if weights.iter().any(|&a| !r.is_multiple_of(a)) {
        return false;
    }
    weights.iter().enumerate().all(|(i, &a)| {
        a == 1 || {
            let e = u32::try_from(r / a).unwrap_or(u32::MAX);
            i < f.nvars() && !f.coeff(&Monomial::var(f.nvars(), i, e)).is_zero()
        }
    })
}
