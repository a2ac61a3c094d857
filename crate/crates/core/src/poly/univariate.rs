//! Dense univariate polynomials over ℚ.
//!
//! Used for residue fields `ℚ[x]/(g)` and for square classes in ℚ(t).
//! Coefficients are stored in ascending degree order; the vector is empty
//! for the zero polynomial and otherwise ends in a nonzero coefficient.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Monomial, Polynomial};
use crate::arith;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The indeterminate.
    pub fn x() -> Self {
        Self::from_coeffs(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::from_coeffs(cs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    /// Converts a polynomial in one variable (any variable count, only
    /// variable `var` may occur).
    pub fn from_polynomial(p: &Polynomial, var: usize) -> Result<Self> {
        let mut coeffs = Vec::new();
        for (m, c) in p.terms() {
            if m.exponents().iter().enumerate().any(|(i, &e)| i != var && e > 0) {
                return Err(Error::InvalidInput("expected a univariate polynomial".into()));
            }
            let d = m.exponents().get(var).copied().unwrap_or(0) as usize;
            if coeffs.len() <= d {
                coeffs.resize(d + 1, BigRational::zero());
            }
            coeffs[d] = c.clone();
        }
        Ok(Self::from_coeffs(coeffs))
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let mut p = Polynomial::zero(1);
        for (i, c) in self.coeffs.iter().enumerate() {
            p.add_term(Monomial::new(vec![i as u32]), c.clone());
        }
        p
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => Self::zero(),
        }
    }

    /// Divides out `x^k`. Coefficients below `k` are dropped, so callers
    /// pass at most [`UniPoly::order`].
    pub fn shift_down(&self, k: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = d.leading().unwrap().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1;
            let c = &rem[k] * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    let t = &c * dc;
                    rem[k - dd + j] -= t;
                }
                quot[k - dd] = c;
            }
            rem.pop();
        }
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's square-free decomposition of a monic polynomial: returns
    /// `[f_1, f_2, ...]` with `self = Π f_i^i`, each `f_i` monic and
    /// square-free, pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<Self> {
        let f = self.monic();
        if f.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        let df = f.derivative();
        let mut a = f.gcd(&df);
        let mut b = f.div_rem(&a).0;
        let mut c = df.div_rem(&a).0;
        let mut d = c.sub(&b.derivative());
        while b.degree().unwrap_or(0) > 0 {
            a = b.gcd(&d);
            out.push(a.clone());
            b = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
        }
        while out.last().is_some_and(|p| p.degree() == Some(0)) {
            out.pop();
        }
        out
    }

    /// Primitive integer polynomial with positive leading coefficient that is
    /// a rational multiple of `self`.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> =
            self.coeffs.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if self.leading().is_some_and(|l| l.is_negative()) { -BigInt::one() } else { BigInt::one() };
        ints.into_iter().map(|c| c / &g * &sign).collect()
    }

    /// Decides irreducibility over ℚ.
    ///
    /// Square-free check followed by Kronecker's method: a factor of degree
    /// `k` is determined by its values at `k + 1` integer points, each of
    /// which must divide the corresponding value of `self`.
    pub fn is_irreducible(&self) -> Result<bool> {
        let n = match self.degree() {
            None | Some(0) => return Ok(false),
            Some(1) => return Ok(true),
            Some(n) => n,
        };
        if self.gcd(&self.derivative()).degree() != Some(0) {
            return Ok(false);
        }
        let g = Self::from_coeffs(self.primitive_integer().into_iter().map(BigRational::from_integer).collect());
        // Candidate evaluation points, ordered by the number of divisors of
        // the value there so the search tree stays small.
        let mut points: Vec<(usize, BigInt, BigInt)> = Vec::new();
        for x in (0..=40i64).flat_map(|k| if k == 0 { vec![0] } else { vec![k, -k] }) {
            let xv = BigRational::from_integer(x.into());
            let v = g.eval(&xv).to_integer();
            if v.is_zero() {
                return Ok(false);
            }
            let tau = divisor_count(&v);
            points.push((tau, BigInt::from(x), v));
        }
        points.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.abs().cmp(&b.1.abs())).then(a.1.cmp(&b.1)));
        const BUDGET: u128 = 5_000_000;
        for k in 1..=n / 2 {
            let chosen = &points[..=k];
            let cost: u128 = chosen.iter().map(|p| 2 * p.0 as u128).product();
            if cost > BUDGET {
                return Err(Error::Unsupported(format!(
                    "irreducibility test for a degree {n} polynomial exceeds the search budget"
                )));
            }
            let divs: Vec<Vec<BigInt>> = chosen
                .iter()
                .enumerate()
                .map(|(i, (_, _, v))| {
                    let pos = positive_divisors(v);
                    if i == 0 {
                        pos
                    } else {
                        pos.iter().flat_map(|d| [d.clone(), -d.clone()]).collect()
                    }
                })
                .collect();
            let xs: Vec<BigRational> = chosen.iter().map(|p| BigRational::from_integer(p.1.clone())).collect();
            let mut idx = vec![0usize; k + 1];
            loop {
                let ys: Vec<BigRational> =
                    idx.iter().zip(&divs).map(|(&i, d)| BigRational::from_integer(d[i].clone())).collect();
                let h = interpolate(&xs, &ys);
                if h.degree() == Some(k) && h.coeffs.iter().all(|c| c.is_integer()) && g.rem(&h).is_zero() {
                    return Ok(false);
                }
                // odometer increment
                let mut pos = 0;
                loop {
                    if pos == idx.len() {
                        break;
                    }
                    idx[pos] += 1;
                    if idx[pos] < divs[pos].len() {
                        break;
                    }
                    idx[pos] = 0;
                    pos += 1;
                }
                if pos == idx.len() {
                    break;
                }
            }
        }
        Ok(true)
    }

    /// Formats with the given variable name, highest degree first.
    pub fn display(&self, var: &str) -> String {
        self.to_polynomial().display(&[var.to_string()])
    }
}

fn divisor_count(v: &BigInt) -> usize {
    let m = v.magnitude();
    if m.is_one() {
        return 1;
    }
    num_prime::nt_funcs::factorize(m.clone()).values().map(|&e| e + 1).product()
}

fn positive_divisors(v: &BigInt) -> Vec<BigInt> {
    let mut divs = vec![BigInt::one()];
    for p in arith::prime_divisors(v) {
        let p = BigInt::from(p);
        let mut e = 0;
        let mut m = v.abs();
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        let cur = divs.clone();
        let mut pk = BigInt::one();
        for _ in 0..e {
            pk *= &p;
            divs.extend(cur.iter().map(|d| d * &pk));
        }
    }
    divs.sort();
    divs
}

/// Lagrange interpolation through distinct nodes.
pub fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> UniPoly {
    let mut acc = UniPoly::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut basis = UniPoly::one();
        let mut denom = BigRational::one();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                basis = basis.mul(&UniPoly::from_coeffs(vec![-xj.clone(), BigRational::one()]));
                denom *= xi - xj;
            }
        }
        acc = acc.add(&basis.scale(&(yi / denom)));
    }
    acc
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display("x"))
    }
}
