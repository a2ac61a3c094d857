//! Diagonalization of symmetric matrices by congruence.

use num_rational::BigRational;
use num_traits::Zero;

use super::{finite_class, Field, GwElement, SquareClass};
use crate::arith::rational_mod;
use crate::{Error, Result};

trait Scalar: Clone + PartialEq {
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn inv(&self) -> Self;
}

impl Scalar for BigRational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

#[derive(Clone, PartialEq)]
struct ModP {
    v: u64,
    p: u64,
}

impl Scalar for ModP {
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn add(&self, o: &Self) -> Self {
        ModP { v: ((u128::from(self.v) + u128::from(o.v)) % u128::from(self.p)) as u64, p: self.p }
    }
    fn sub(&self, o: &Self) -> Self {
        ModP { v: ((u128::from(self.v) + u128::from(self.p - o.v)) % u128::from(self.p)) as u64, p: self.p }
    }
    fn mul(&self, o: &Self) -> Self {
        ModP { v: ((u128::from(self.v) * u128::from(o.v)) % u128::from(self.p)) as u64, p: self.p }
    }
    fn inv(&self) -> Self {
        // Fermat: v^(p-2)
        let mut result = ModP { v: 1, p: self.p };
        let mut base = self.clone();
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        result
    }
}

/// Symmetric Gaussian elimination. Pivots on the first nonzero diagonal
/// entry; if the remaining diagonal vanishes, adds row/column `j` to `i` for
/// the lowest `(i, j)` with a nonzero entry.
fn eliminate<S: Scalar>(mut a: Vec<Vec<S>>) -> Result<Vec<S>> {
    let n = a.len();
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        let pivot = match (k..n).find(|&i| !a[i][i].is_zero()) {
            Some(i) => i,
            None => {
                let hit = (k..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero());
                let Some((i, j)) = hit else {
                    return Err(Error::DegenerateForm { rank: k, size: n });
                };
                for c in 0..n {
                    let v = a[i][c].add(&a[j][c]);
                    a[i][c] = v;
                }
                for r in 0..n {
                    let v = a[r][i].add(&a[r][j]);
                    a[r][i] = v;
                }
                i
            }
        };
        a.swap(k, pivot);
        for row in a.iter_mut() {
            row.swap(k, pivot);
        }
        let d = a[k][k].clone();
        let dinv = d.inv();
        for r in k + 1..n {
            if a[r][k].is_zero() {
                continue;
            }
            let f = a[r][k].mul(&dinv);
            for c in k..n {
                let v = a[r][c].sub(&f.mul(&a[k][c]));
                a[r][c] = v;
            }
            for rr in k..n {
                let v = a[rr][r].sub(&f.mul(&a[rr][k]));
                a[rr][r] = v;
            }
        }
        diag.push(d);
    }
    Ok(diag)
}

fn check_symmetric(m: &[Vec<BigRational>]) -> Result<()> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidInput("matrix must be square".into()));
    }
    for i in 0..n {
        for j in 0..i {
            if m[i][j] != m[j][i] {
                return Err(Error::NotSymmetric);
            }
        }
    }
    Ok(())
}

/// Diagonal entries of a congruent diagonal matrix, over ℚ.
pub fn diagonal_entries(m: &[Vec<BigRational>]) -> Result<Vec<BigRational>> {
    check_symmetric(m)?;
    eliminate(m.to_vec())
}

/// `⟨d_1⟩ + ⋯ + ⟨d_n⟩` for a diagonalization of the symmetric matrix `m`
/// over ℚ.
pub fn diagonalize(m: &[Vec<BigRational>]) -> Result<GwElement> {
    diagonalize_in(Field::Rationals, m)
}

/// As [`diagonalize`], with entries read in `field` (reduced modulo `p`
/// for 𝔽_p).
pub fn diagonalize_in(field: Field, m: &[Vec<BigRational>]) -> Result<GwElement> {
    check_symmetric(m)?;
    let classes = match field {
        Field::Rationals => eliminate(m.to_vec())?.iter().map(SquareClass::rational).collect::<Result<Vec<_>>>()?,
        Field::Fp(p) => {
            let reduce = |x: &BigRational| {
                rational_mod(x, p)
                    .map(|v| ModP { v, p })
                    .ok_or_else(|| Error::InvalidInput(format!("{x} has a denominator divisible by {p}")))
            };
            let a =
                m.iter().map(|row| row.iter().map(reduce).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
            eliminate(a)?.iter().map(|d| finite_class(p, d.v)).collect::<Result<Vec<_>>>()?
        }
        Field::RationalFunctions => {
            return Err(Error::Unsupported("diagonalization over Q(t)".into()));
        }
    };
    GwElement::new(field, classes, Vec::new())
}
