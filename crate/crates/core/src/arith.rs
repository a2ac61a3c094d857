//! Elementary number theory over ℤ: square-free parts, prime divisors,
//! Jacobi and Hilbert symbols.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_prime::nt_funcs;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A place of ℚ.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Place {
    Real,
    Prime(BigUint),
}

/// Distinct prime divisors of `|n|`, ascending. Empty for 0 and ±1.
pub fn prime_divisors(n: &BigInt) -> Vec<BigUint> {
    let m = n.magnitude();
    if m.is_zero() || m.is_one() {
        return Vec::new();
    }
    nt_funcs::factorize(m.clone()).into_keys().collect()
}

/// The square-free integer in the square class of `n ≠ 0`, sign preserved.
pub fn squarefree_part(n: &BigInt) -> BigInt {
    assert!(!n.is_zero(), "square-free part of zero");
    let m = n.magnitude();
    let mut core = BigUint::one();
    if !m.is_one() {
        for (p, e) in nt_funcs::factorize(m.clone()) {
            if e % 2 == 1 {
                core *= p;
            }
        }
    }
    BigInt::from_biguint(n.sign(), core)
}

/// Square-free representative of the square class of a nonzero rational.
///
/// `p/q` and `p·q` differ by the square `q²`.
pub fn rational_squarefree(x: &BigRational) -> BigInt {
    squarefree_part(&(x.numer() * x.denom()))
}

/// Product of two square-free integers, reduced to its square-free part
/// without factoring.
pub fn squarefree_mul(a: &BigInt, b: &BigInt) -> BigInt {
    let g = a.gcd(b);
    (a / &g) * (b / &g)
}

/// Jacobi symbol `(a/n)` for odd positive `n`.
pub fn jacobi(a: &BigInt, n: &BigUint) -> i8 {
    assert!(n.is_odd(), "Jacobi symbol needs an odd modulus");
    let n_int = BigInt::from(n.clone());
    let mut a = a.mod_floor(&n_int).to_biguint().unwrap();
    let mut n = n.clone();
    let mut result = 1i8;
    let three = BigUint::from(3u8);
    let five = BigUint::from(5u8);
    let eight = BigUint::from(8u8);
    let four = BigUint::from(4u8);
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = &n % &eight;
            if r == three || r == five {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if &a % &four == three && &n % &four == three {
            result = -result;
        }
        a %= &n;
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

fn split_valuation(a: &BigInt, p: &BigUint) -> (u32, BigInt) {
    let p = BigInt::from(p.clone());
    let mut v = 0;
    let mut u = a.clone();
    while (&u % &p).is_zero() {
        u /= &p;
        v += 1;
    }
    (v, u)
}

/// Hilbert symbol `(a, b)_v` of nonzero integers at the place `v`.
pub fn hilbert_symbol(a: &BigInt, b: &BigInt, place: &Place) -> i8 {
    assert!(!a.is_zero() && !b.is_zero(), "Hilbert symbol of zero");
    match place {
        Place::Real => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Prime(p) if p == &BigUint::from(2u8) => {
            let (alpha, u) = split_valuation(a, p);
            let (beta, v) = split_valuation(b, p);
            let eps = |x: &BigInt| -> u32 {
                let r = x.mod_floor(&BigInt::from(4)).to_u32().unwrap();
                u32::from(r == 3)
            };
            let omega = |x: &BigInt| -> u32 {
                let r = x.mod_floor(&BigInt::from(8)).to_u32().unwrap();
                u32::from(r == 3 || r == 5)
            };
            let e = eps(&u) * eps(&v) + alpha * omega(&v) + beta * omega(&u);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::Prime(p) => {
            let (alpha, u) = split_valuation(a, p);
            let (beta, v) = split_valuation(b, p);
            let mut s: i8 = 1;
            // (-1)^{αβ(p-1)/2}
            let half: BigUint = (p - BigUint::one()) >> 1;
            if alpha % 2 == 1 && beta % 2 == 1 && half.is_odd() {
                s = -s;
            }
            if beta % 2 == 1 {
                s *= jacobi(&u, p);
            }
            if alpha % 2 == 1 {
                s *= jacobi(&v, p);
            }
            s
        }
    }
}

pub fn is_odd_prime(p: u64) -> bool {
    p > 2 && nt_funcs::is_prime64(p)
}

/// Legendre symbol of `a` modulo an odd prime `p`.
pub fn legendre(a: u64, p: u64) -> i8 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    let r = BigUint::from(a).modpow(&BigUint::from((p - 1) / 2), &BigUint::from(p));
    if r.is_one() {
        1
    } else {
        -1
    }
}

/// Smallest quadratic non-residue modulo an odd prime.
pub fn least_nonresidue(p: u64) -> u64 {
    (2..p).find(|&n| legendre(n, p) == -1).expect("odd primes have non-residues")
}

/// Reduces a rational number modulo `p`, or `None` if `p` divides the
/// denominator.
pub fn rational_mod(x: &BigRational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let num = x.numer().mod_floor(&pb);
    let den = x.denom().mod_floor(&pb);
    if den.is_zero() {
        return None;
    }
    let den_inv = den.modpow(&BigInt::from(p - 2), &pb);
    Some(((num * den_inv) % &pb).to_u64().unwrap())
}
