use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, is_odd_prime, least_nonresidue, legendre, rational_mod};
use crate::poly::UniPoly;
use crate::{Error, Result};

/// The base field of a Grothendieck–Witt computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Fp(u64),
    RationalFunctions,
}

impl Field {
    pub fn fp(p: u64) -> Result<Field> {
        if is_odd_prime(p) {
            Ok(Field::Fp(p))
        } else {
            Err(Error::InvalidPrime(p))
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => f.write_str("Q"),
            Field::Fp(p) => write!(f, "Fp:{p}"),
            Field::RationalFunctions => f.write_str("Q(t)"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        match s {
            "Q" | "QQ" | "ℚ" => return Ok(Field::Rationals),
            "Q(t)" | "ℚ(t)" => return Ok(Field::RationalFunctions),
            _ => {}
        }
        let rest = s.strip_prefix("Fp:").or_else(|| s.strip_prefix("F")).or_else(|| s.strip_prefix("GF"));
        match rest.and_then(|r| r.parse::<u64>().ok()) {
            Some(p) => Field::fp(p),
            None => Err(Error::InvalidInput(format!("unknown field `{s}` (expected Q, Fp:<p> or Q(t))"))),
        }
    }
}

/// Square class `t^ε · c · S(t)` in ℚ(t)^×/(ℚ(t)^×)², with `ε ∈ {0,1}`, `c` a
/// square-free integer and `S` monic, square-free and prime to `t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentClass {
    odd_order: bool,
    constant: BigInt,
    poly: UniPoly,
}

fn odd_part(f: &UniPoly) -> UniPoly {
    f.squarefree_decomposition().iter().step_by(2).fold(UniPoly::one(), |acc, q| acc.mul(q))
}

impl LaurentClass {
    /// The class of `num/den`.
    pub fn from_fraction(num: &UniPoly, den: &UniPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        if num.is_zero() {
            return Err(Error::ZeroClass);
        }
        let vn = num.order().unwrap();
        let vd = den.order().unwrap();
        let (n, d) = (num.shift_down(vn), den.shift_down(vd));
        let c = n.leading().unwrap() / d.leading().unwrap();
        let a = odd_part(&n.monic());
        let b = odd_part(&d.monic());
        let g = a.gcd(&b);
        let poly = a.div_rem(&g).0.mul(&b.div_rem(&g).0).monic();
        Ok(LaurentClass { odd_order: (vn + vd) % 2 == 1, constant: arith::rational_squarefree(&c), poly })
    }

    /// The class of `t^order · num/den`, where `num/den` must be a unit at
    /// `t = 0`.
    pub fn from_order_unit(order: i64, num: &UniPoly, den: &UniPoly) -> Result<Self> {
        let zero = BigRational::zero();
        if den.is_zero() || den.eval(&zero).is_zero() {
            return Err(Error::NonSpecializable("unit part is undefined at t = 0".into()));
        }
        if num.eval(&zero).is_zero() {
            return Err(Error::NonSpecializable("unit part vanishes at t = 0".into()));
        }
        let mut c = Self::from_fraction(num, den)?;
        c.odd_order ^= order.rem_euclid(2) == 1;
        Ok(c)
    }

    pub fn constant_class(c: &BigRational) -> Result<Self> {
        Self::from_fraction(&UniPoly::constant(c.clone()), &UniPoly::one())
    }

    pub fn odd_order(&self) -> bool {
        self.odd_order
    }

    pub fn constant(&self) -> &BigInt {
        &self.constant
    }

    pub fn poly(&self) -> &UniPoly {
        &self.poly
    }

    pub fn is_one(&self) -> bool {
        !self.odd_order && self.constant.is_one() && self.poly.degree() == Some(0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let g = self.poly.gcd(&other.poly);
        let poly = self.poly.div_rem(&g).0.mul(&other.poly.div_rem(&g).0).monic();
        LaurentClass {
            odd_order: self.odd_order ^ other.odd_order,
            constant: arith::squarefree_mul(&self.constant, &other.constant),
            poly,
        }
    }

    /// Image under `⟨t^n u⟩ ↦ ⟨u(0)⟩`.
    pub fn specialize(&self) -> BigInt {
        let u0 = BigRational::from_integer(self.constant.clone()) * self.poly.eval(&BigRational::zero());
        arith::rational_squarefree(&u0)
    }

    fn display(&self) -> String {
        let mut factors: Vec<String> = Vec::new();
        let c = &self.constant;
        let sign = if c.is_negative() { "-" } else { "" };
        if !c.abs().is_one() {
            factors.push(c.abs().to_string());
        }
        if self.odd_order {
            factors.push("t".into());
        }
        if self.poly.degree() != Some(0) {
            let s = self.poly.display("t");
            let several_terms = self.poly.coeffs().iter().filter(|x| !x.is_zero()).count() > 1;
            if several_terms && (!factors.is_empty() || !sign.is_empty()) {
                factors.push(format!("({s})"));
            } else {
                factors.push(s);
            }
        }
        if factors.is_empty() {
            factors.push("1".into());
        }
        format!("{sign}{}", factors.join("*"))
    }

    fn sort_key(&self) -> (bool, usize, &UniPoly, BigInt, bool) {
        (self.odd_order, self.poly.degree().unwrap_or(0), &self.poly, self.constant.abs(), self.constant.is_negative())
    }
}

/// A normalized square class of a nonzero field element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SquareClass {
    /// Square-free integer, sign preserved.
    Rational(BigInt),
    /// `rep` is 1 or the least quadratic non-residue modulo `p`.
    Finite {
        p: u64,
        rep: u64,
    },
    Laurent(LaurentClass),
}

impl SquareClass {
    /// Class of a nonzero integer over ℚ.
    ///
    /// # Panics
    /// If `a == 0`.
    pub fn int(a: i64) -> Self {
        assert!(a != 0, "zero has no square class");
        SquareClass::Rational(arith::squarefree_part(&BigInt::from(a)))
    }

    pub fn rational(x: &BigRational) -> Result<Self> {
        if x.is_zero() {
            return Err(Error::ZeroClass);
        }
        Ok(SquareClass::Rational(arith::rational_squarefree(x)))
    }

    pub fn finite(p: u64, a: i64) -> Result<Self> {
        if !is_odd_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Self::finite_residue(p, a.rem_euclid(p as i64) as u64)
    }

    fn finite_residue(p: u64, a: u64) -> Result<Self> {
        match legendre(a, p) {
            0 => Err(Error::ZeroClass),
            1 => Ok(SquareClass::Finite { p, rep: 1 }),
            _ => Ok(SquareClass::Finite { p, rep: least_nonresidue(p) }),
        }
    }

    /// The class of a rational constant viewed in `field`.
    pub fn from_rational_in(field: Field, x: &BigRational) -> Result<Self> {
        match field {
            Field::Rationals => Self::rational(x),
            Field::Fp(p) => {
                let a = rational_mod(x, p)
                    .ok_or_else(|| Error::InvalidInput(format!("{x} has a denominator divisible by {p}")))?;
                Self::finite_residue(p, a)
            }
            Field::RationalFunctions => Ok(SquareClass::Laurent(LaurentClass::constant_class(x)?)),
        }
    }

    pub fn one(field: Field) -> Self {
        Self::from_rational_in(field, &BigRational::one()).unwrap()
    }

    pub fn minus_one(field: Field) -> Self {
        Self::from_rational_in(field, &-BigRational::one()).unwrap()
    }

    pub fn field(&self) -> Field {
        match self {
            SquareClass::Rational(_) => Field::Rationals,
            SquareClass::Finite { p, .. } => Field::Fp(*p),
            SquareClass::Laurent(_) => Field::RationalFunctions,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            SquareClass::Rational(a) => a.is_one(),
            SquareClass::Finite { rep, .. } => *rep == 1,
            SquareClass::Laurent(c) => c.is_one(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (SquareClass::Rational(a), SquareClass::Rational(b)) => {
                Ok(SquareClass::Rational(arith::squarefree_mul(a, b)))
            }
            (SquareClass::Finite { p, rep: a }, SquareClass::Finite { p: q, rep: b }) if p == q => {
                Self::finite_residue(*p, ((u128::from(*a) * u128::from(*b)) % u128::from(*p)) as u64)
            }
            (SquareClass::Laurent(a), SquareClass::Laurent(b)) => Ok(SquareClass::Laurent(a.mul(b))),
            _ => Err(Error::ContextMismatch(self.field().to_string(), other.field().to_string())),
        }
    }

    /// Square-free integer representative, for classes over ℚ.
    pub fn as_integer(&self) -> Option<&BigInt> {
        match self {
            SquareClass::Rational(a) => Some(a),
            _ => None,
        }
    }

    /// Entry text as it appears inside `⟨…⟩`; `unicode` selects the minus sign.
    pub fn entry(&self, unicode: bool) -> String {
        let s = match self {
            SquareClass::Rational(a) => a.to_string(),
            SquareClass::Finite { rep, .. } => rep.to_string(),
            SquareClass::Laurent(c) => c.display(),
        };
        if unicode {
            s.replace('-', "\u{2212}")
        } else {
            s
        }
    }

    fn variant(&self) -> u8 {
        match self {
            SquareClass::Rational(_) => 0,
            SquareClass::Finite { .. } => 1,
            SquareClass::Laurent(_) => 2,
        }
    }
}

/// Display order: by absolute value, positive before negative
/// (`1, −1, 2, −2, 3, …`).
impl Ord for SquareClass {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (SquareClass::Rational(a), SquareClass::Rational(b)) => {
                a.abs().cmp(&b.abs()).then(a.is_negative().cmp(&b.is_negative()))
            }
            (SquareClass::Finite { p, rep: a }, SquareClass::Finite { p: q, rep: b }) => (p, a).cmp(&(q, b)),
            (SquareClass::Laurent(a), SquareClass::Laurent(b)) => a.sort_key().cmp(&b.sort_key()),
            _ => self.variant().cmp(&other.variant()),
        }
    }
}

impl PartialOrd for SquareClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}⟩", self.entry(true))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_rational_function;

    fn lc(src: &str) -> LaurentClass {
        let (n, d) = parse_rational_function(src, "t").unwrap();
        LaurentClass::from_fraction(&n, &d).unwrap()
    }

    #[test]
    fn rational_normalization() {
        assert_eq!(SquareClass::int(36), SquareClass::int(1));
        assert_eq!(SquareClass::int(-4), SquareClass::int(-1));
        assert_eq!(SquareClass::rational(&BigRational::new(2.into(), 9.into())).unwrap(), SquareClass::int(2));
        assert_eq!(SquareClass::rational(&BigRational::zero()), Err(Error::ZeroClass));
    }

    #[test]
    fn finite_normalization() {
        assert_eq!(SquareClass::finite(7, 2).unwrap(), SquareClass::Finite { p: 7, rep: 1 });
        assert_eq!(SquareClass::finite(7, -1).unwrap(), SquareClass::Finite { p: 7, rep: 3 });
        assert_eq!(SquareClass::finite(5, -1).unwrap(), SquareClass::Finite { p: 5, rep: 1 });
        assert_eq!(SquareClass::finite(9, 1), Err(Error::InvalidPrime(9)));
        assert_eq!(SquareClass::finite(7, 14), Err(Error::ZeroClass));
    }

    #[test]
    fn laurent_normalization_is_canonical() {
        assert_eq!(lc("t^3"), lc("t"));
        assert_eq!(lc("3*t^2"), lc("3"));
        assert_eq!(lc("(t+1)^2*(t+2)"), lc("4*t + 8"));
        assert_eq!(lc("(t+1)/(t^2 + 2*t + 1)"), lc("t + 1"));
        assert_eq!(lc("(t+1)*(t+2)").mul(&lc("t+2")), lc("t+1"));
        assert_eq!(lc("t^2/(9*t^4)"), lc("1"));
        assert!(lc("25").is_one());
        assert_eq!(lc("-(t+1)/(2*t)").display(), "-2*t*(t + 1)");
    }

    #[test]
    fn laurent_specialization() {
        assert_eq!(lc("t").specialize(), BigInt::from(1));
        assert_eq!(lc("3*t^2").specialize(), BigInt::from(3));
        assert_eq!(lc("(t - 2)*t").specialize(), BigInt::from(-2));
        let one = UniPoly::one();
        assert!(matches!(LaurentClass::from_order_unit(1, &UniPoly::x(), &one), Err(Error::NonSpecializable(_))));
        assert!(LaurentClass::from_order_unit(3, &UniPoly::from_i64s(&[5, 1]), &one).is_ok());
    }

    #[test]
    fn display_order() {
        let mut v: Vec<SquareClass> = [-2, 3, 1, 2, -1].iter().map(|&a| SquareClass::int(a)).collect();
        v.sort();
        let shown: Vec<String> = v.iter().map(|c| c.entry(false)).collect();
        assert_eq!(shown, ["1", "-1", "2", "-2", "3"]);
    }

    #[test]
    fn field_names_round_trip() {
        for f in [Field::Rationals, Field::Fp(7), Field::RationalFunctions] {
            assert_eq!(f.to_string().parse::<Field>().unwrap(), f);
        }
        assert_eq!("Fp:4".parse::<Field>(), Err(Error::InvalidPrime(4)));
    }
}
