//! The Grothendieck–Witt ring GW(k) for k = ℚ, 𝔽_p (p odd) and ℚ(t).
//!
//! Elements are virtual forms `pos − neg` over normalized square classes.
//! Equality over ℚ is decided by Hasse–Minkowski: rank, signature,
//! discriminant and the Hasse invariants at the primes dividing 2 and the
//! representatives.

mod class;
mod diag;
mod text;
mod transfer;

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed};

use crate::arith::{self, hilbert_symbol, legendre, Place};
use crate::{Error, Result};

pub use class::{Field, LaurentClass, SquareClass};
pub use diag::{diagonal_entries, diagonalize, diagonalize_in};
pub use text::Notation;
pub use transfer::{parse_residues, trace_form, transfer};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GwElement {
    field: Field,
    pos: Vec<SquareClass>,
    neg: Vec<SquareClass>,
}

/// Rank, signature, discriminant and Hasse invariants of an element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invariants {
    pub rank: i64,
    /// Only over ℚ.
    pub signature: Option<i64>,
    /// Naive discriminant: the class of the product of all representatives.
    pub discriminant: SquareClass,
    /// Only over ℚ: prime ↦ Hasse–Witt invariant, for the primes dividing 2
    /// and the representatives.
    pub hasse: Option<BTreeMap<BigUint, i8>>,
}

fn check_fields(field: Field, classes: &[SquareClass]) -> Result<()> {
    match classes.iter().find(|c| c.field() != field) {
        Some(c) => Err(Error::ContextMismatch(field.to_string(), c.field().to_string())),
        None => Ok(()),
    }
}

/// Removes classes occurring in both sorted lists.
fn cancel(pos: &mut Vec<SquareClass>, neg: &mut Vec<SquareClass>) {
    pos.sort();
    neg.sort();
    let (mut p, mut n) = (Vec::with_capacity(pos.len()), Vec::with_capacity(neg.len()));
    let (mut i, mut j) = (0, 0);
    while i < pos.len() && j < neg.len() {
        match pos[i].cmp(&neg[j]) {
            std::cmp::Ordering::Less => {
                p.push(pos[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                n.push(neg[j].clone());
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    p.extend_from_slice(&pos[i..]);
    n.extend_from_slice(&neg[j..]);
    *pos = p;
    *neg = n;
}

impl GwElement {
    pub fn new(field: Field, mut pos: Vec<SquareClass>, mut neg: Vec<SquareClass>) -> Result<Self> {
        check_fields(field, &pos)?;
        check_fields(field, &neg)?;
        cancel(&mut pos, &mut neg);
        Ok(GwElement { field, pos, neg })
    }

    pub fn zero(field: Field) -> Self {
        GwElement { field, pos: Vec::new(), neg: Vec::new() }
    }

    pub fn one(field: Field) -> Self {
        Self::class(SquareClass::one(field))
    }

    pub fn class(c: SquareClass) -> Self {
        GwElement { field: c.field(), pos: vec![c], neg: Vec::new() }
    }

    /// `⟨a⟩` over ℚ.
    ///
    /// # Panics
    /// If `a == 0`.
    pub fn int(a: i64) -> Self {
        Self::class(SquareClass::int(a))
    }

    /// `⟨a_1⟩ + ⋯ + ⟨a_k⟩ − ⟨b_1⟩ − ⋯` over ℚ.
    ///
    /// # Panics
    /// If any entry is zero.
    pub fn from_ints(pos: &[i64], neg: &[i64]) -> Self {
        let f = |v: &[i64]| v.iter().map(|&a| SquareClass::int(a)).collect();
        Self::new(Field::Rationals, f(pos), f(neg)).unwrap()
    }

    /// The hyperbolic plane `⟨1⟩ + ⟨−1⟩`.
    pub fn hyperbolic(field: Field) -> Self {
        Self::new(field, vec![SquareClass::one(field), SquareClass::minus_one(field)], Vec::new()).unwrap()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn positive(&self) -> &[SquareClass] {
        &self.pos
    }

    pub fn negative(&self) -> &[SquareClass] {
        &self.neg
    }

    /// True when no classes remain after cancellation. Elements equal to 0 in
    /// GW(k) need not be formally zero; use [`GwElement::is_equal`].
    pub fn is_formally_zero(&self) -> bool {
        self.pos.is_empty() && self.neg.is_empty()
    }

    pub fn rank(&self) -> i64 {
        self.pos.len() as i64 - self.neg.len() as i64
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::ContextMismatch(self.field.to_string(), other.field.to_string()))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let mut pos = self.pos.clone();
        pos.extend_from_slice(&other.pos);
        let mut neg = self.neg.clone();
        neg.extend_from_slice(&other.neg);
        cancel(&mut pos, &mut neg);
        Ok(GwElement { field: self.field, pos, neg })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for (xs, ys, target_pos) in [
            (&self.pos, &other.pos, true),
            (&self.neg, &other.neg, true),
            (&self.pos, &other.neg, false),
            (&self.neg, &other.pos, false),
        ] {
            for x in xs {
                for y in ys {
                    let c = x.mul(y)?;
                    if target_pos {
                        pos.push(c);
                    } else {
                        neg.push(c);
                    }
                }
            }
        }
        cancel(&mut pos, &mut neg);
        Ok(GwElement { field: self.field, pos, neg })
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(&self) -> Self {
        GwElement { field: self.field, pos: self.neg.clone(), neg: self.pos.clone() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.field);
        for _ in 0..e {
            out = out.try_mul(self).expect("same field");
        }
        out
    }

    /// `k · self` for an integer `k`.
    pub fn times(&self, k: i64) -> Self {
        let base = if k < 0 { self.neg() } else { self.clone() };
        let mut out = Self::zero(self.field);
        for _ in 0..k.unsigned_abs() {
            out = out.try_add(&base).expect("same field");
        }
        out
    }

    pub fn discriminant(&self) -> SquareClass {
        self.pos.iter().chain(&self.neg).fold(SquareClass::one(self.field), |acc, c| acc.mul(c).expect("same field"))
    }

    pub fn signature(&self) -> Result<i64> {
        if self.field != Field::Rationals {
            return Err(Error::UnsupportedInvariant { invariant: "signature", field: self.field.to_string() });
        }
        let count = |v: &[SquareClass]| {
            v.iter().map(|c| if c.as_integer().unwrap().is_negative() { -1 } else { 1 }).sum::<i64>()
        };
        Ok(count(&self.pos) - count(&self.neg))
    }

    fn ints(v: &[SquareClass]) -> Vec<BigInt> {
        v.iter().map(|c| c.as_integer().expect("rational class").clone()).collect()
    }

    /// Hasse–Witt invariants at 2 and the primes dividing the
    /// representatives. A virtual form `P − N` gets the value forced by
    /// `s(P) = s(P − N) · s(N) · (d(P − N), d(N))`.
    pub fn hasse(&self) -> Result<BTreeMap<BigUint, i8>> {
        if self.field != Field::Rationals {
            return Err(Error::UnsupportedInvariant { invariant: "hasse", field: self.field.to_string() });
        }
        let p = Self::ints(&self.pos);
        let n = Self::ints(&self.neg);
        let dp = disc(&p);
        let dn = disc(&n);
        let minus_one = -BigInt::one();
        let mut out = BTreeMap::new();
        for prime in relevant_primes(p.iter().chain(&n)) {
            let place = Place::Prime(prime.clone());
            let s = hasse_genuine(&p, &place)
                * hasse_genuine(&n, &place)
                * hilbert_symbol(&dp, &dn, &place)
                * hilbert_symbol(&dn, &minus_one, &place);
            out.insert(prime, s);
        }
        Ok(out)
    }

    pub fn invariants(&self) -> Result<Invariants> {
        match self.field {
            Field::Rationals => Ok(Invariants {
                rank: self.rank(),
                signature: Some(self.signature()?),
                discriminant: self.discriminant(),
                hasse: Some(self.hasse()?),
            }),
            Field::Fp(_) => {
                Ok(Invariants { rank: self.rank(), signature: None, discriminant: self.discriminant(), hasse: None })
            }
            Field::RationalFunctions => {
                Err(Error::UnsupportedInvariant { invariant: "discriminant", field: self.field.to_string() })
            }
        }
    }

    /// Decides equality in GW(k) for k = ℚ or 𝔽_p.
    pub fn is_equal(&self, other: &Self) -> Result<bool> {
        self.same_field(other)?;
        match self.field {
            Field::Rationals => {
                // a − b = 0 iff the genuine forms a⁺ ⊕ b⁻ and b⁺ ⊕ a⁻ are
                // isometric.
                let mut lhs = Self::ints(&self.pos);
                lhs.extend(Self::ints(&other.neg));
                let mut rhs = Self::ints(&other.pos);
                rhs.extend(Self::ints(&self.neg));
                Ok(isometric(&lhs, &rhs))
            }
            Field::Fp(_) => Ok(self.rank() == other.rank() && self.discriminant() == other.discriminant()),
            Field::RationalFunctions => Err(Error::Unsupported("equality decision over Q(t)".into())),
        }
    }

    /// Image under the specialization `GW(ℚ(t)) → GW(ℚ)`, `⟨t^n u⟩ ↦ ⟨u(0)⟩`.
    pub fn specialize(&self) -> Result<Self> {
        if self.field != Field::RationalFunctions {
            return Err(Error::ContextMismatch(Field::RationalFunctions.to_string(), self.field.to_string()));
        }
        let f = |v: &[SquareClass]| -> Vec<SquareClass> {
            v.iter()
                .map(|c| match c {
                    SquareClass::Laurent(l) => SquareClass::Rational(l.specialize()),
                    _ => unreachable!("checked field"),
                })
                .collect()
        };
        Self::new(Field::Rationals, f(&self.pos), f(&self.neg))
    }

    /// An equal element with a short, deterministic presentation.
    ///
    /// Over 𝔽_p this is the normal form determined by rank and
    /// discriminant. Over ℚ a few rewriting rules are applied to a fixpoint:
    /// `⟨a⟩ + ⟨−a⟩ → ⟨1⟩ + ⟨−1⟩`, cancellation of isometric binary pieces
    /// between the two sides, `⟨a⟩ − ⟨b⟩ − ⟨c⟩ → −⟨abc⟩` when
    /// `⟨b, c⟩ ≅ ⟨a, abc⟩`, and replacement of binary pieces by isometric
    /// ones of the form `⟨±1, ∓ab⟩`.
    pub fn simplified(&self) -> Self {
        match self.field {
            Field::Rationals if self.pos.len() + self.neg.len() <= 16 => self.simplify_rational(),
            Field::Fp(p) => self.simplify_finite(p),
            _ => self.clone(),
        }
    }

    fn simplify_finite(&self, p: u64) -> Self {
        let one = SquareClass::Finite { p, rep: 1 };
        let delta = SquareClass::Finite { p, rep: arith::least_nonresidue(p) };
        let r = self.rank();
        let nonsquare = !self.discriminant().is_one();
        let rep = |c: &SquareClass, k: i64| vec![c.clone(); k.max(0) as usize];
        let (pos, neg) = match (nonsquare, r) {
            (false, r) if r >= 0 => (rep(&one, r), Vec::new()),
            (false, r) => (Vec::new(), rep(&one, -r)),
            (true, r) if r >= 1 => {
                let mut v = rep(&one, r - 1);
                v.push(delta);
                (v, Vec::new())
            }
            (true, 0) => (vec![delta], vec![one]),
            (true, r) => {
                let mut v = rep(&one, -r - 1);
                v.push(delta);
                (Vec::new(), v)
            }
        };
        Self::new(self.field, pos, neg).unwrap()
    }

    fn simplify_rational(&self) -> Self {
        let mut pos = Self::ints(&self.pos);
        let mut neg = Self::ints(&self.neg);
        loop {
            let mut changed = false;
            cancel_ints(&mut pos, &mut neg);
            for side in [&mut pos, &mut neg] {
                changed |= rule_hyperbolic(side);
            }
            changed |= rule_cancel_pairs(&mut pos, &mut neg);
            changed |= rule_absorb(&mut pos, &mut neg) || rule_absorb(&mut neg, &mut pos);
            for side in [&mut pos, &mut neg] {
                changed |= rule_shrink_pair(side);
            }
            if !changed {
                break;
            }
        }
        let f = |v: Vec<BigInt>| v.into_iter().map(SquareClass::Rational).collect();
        Self::new(Field::Rationals, f(pos), f(neg)).unwrap()
    }
}

fn disc(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, a| arith::squarefree_mul(&acc, a))
}

/// Primes dividing 2 and any of the given square-free integers.
fn relevant_primes<'a>(v: impl Iterator<Item = &'a BigInt>) -> BTreeSet<BigUint> {
    let mut out = BTreeSet::new();
    out.insert(BigUint::from(2u8));
    for a in v {
        out.extend(arith::prime_divisors(a));
    }
    out
}

/// Witt's invariant `Π_{i<j} (a_i, a_j)_v` of the diagonal form `⟨a_1, …⟩`.
fn hasse_genuine(v: &[BigInt], place: &Place) -> i8 {
    let mut d = BigInt::one();
    let mut s = 1;
    for a in v {
        s *= hilbert_symbol(&d, a, place);
        d = arith::squarefree_mul(&d, a);
    }
    s
}

/// Hasse–Minkowski isometry test for diagonal forms over ℚ with square-free
/// integer entries.
fn isometric(a: &[BigInt], b: &[BigInt]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let negatives = |v: &[BigInt]| v.iter().filter(|x| x.is_negative()).count();
    if negatives(a) != negatives(b) || disc(a) != disc(b) {
        return false;
    }
    relevant_primes(a.iter().chain(b)).into_iter().all(|p| {
        let place = Place::Prime(p);
        hasse_genuine(a, &place) == hasse_genuine(b, &place)
    })
}

fn cancel_ints(pos: &mut Vec<BigInt>, neg: &mut Vec<BigInt>) {
    let mut i = 0;
    while i < pos.len() {
        if let Some(j) = neg.iter().position(|b| *b == pos[i]) {
            pos.swap_remove(i);
            neg.swap_remove(j);
        } else {
            i += 1;
        }
    }
}

fn is_unit_sign(a: &BigInt) -> bool {
    a.abs().is_one()
}

fn rule_hyperbolic(side: &mut [BigInt]) -> bool {
    for i in 0..side.len() {
        if is_unit_sign(&side[i]) {
            continue;
        }
        let target = -side[i].clone();
        if let Some(j) = side.iter().position(|b| *b == target) {
            side[i] = BigInt::one();
            side[j] = -BigInt::one();
            return true;
        }
    }
    false
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

fn remove_indices(v: &mut Vec<BigInt>, idx: &[usize]) {
    let mut idx = idx.to_vec();
    idx.sort_unstable_by(|a, b| b.cmp(a));
    for i in idx {
        v.remove(i);
    }
}

fn rule_cancel_pairs(pos: &mut Vec<BigInt>, neg: &mut Vec<BigInt>) -> bool {
    for (i, j) in pairs(pos.len()) {
        for (k, l) in pairs(neg.len()) {
            if isometric(&[pos[i].clone(), pos[j].clone()], &[neg[k].clone(), neg[l].clone()]) {
                remove_indices(pos, &[i, j]);
                remove_indices(neg, &[k, l]);
                return true;
            }
        }
    }
    false
}

/// `⟨a⟩ − ⟨b⟩ − ⟨c⟩ = −⟨abc⟩` when `⟨b, c⟩ ≅ ⟨a, abc⟩`.
fn rule_absorb(single: &mut Vec<BigInt>, double: &mut Vec<BigInt>) -> bool {
    for i in 0..single.len() {
        for (k, l) in pairs(double.len()) {
            let (a, b, c) = (&single[i], &double[k], &double[l]);
            let abc = disc(&[a.clone(), b.clone(), c.clone()]);
            if isometric(&[b.clone(), c.clone()], &[a.clone(), abc.clone()]) {
                single.remove(i);
                remove_indices(double, &[k, l]);
                double.push(abc);
                return true;
            }
        }
    }
    false
}

fn pair_weight(a: &BigInt, b: &BigInt) -> (BigInt, SquareClass, SquareClass) {
    let (x, y) = (SquareClass::Rational(a.clone()), SquareClass::Rational(b.clone()));
    let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
    (a.abs() + b.abs(), hi, lo)
}

fn rule_shrink_pair(side: &mut [BigInt]) -> bool {
    for (i, j) in pairs(side.len()) {
        let (a, b) = (side[i].clone(), side[j].clone());
        let d = arith::squarefree_mul(&a, &b);
        for u in [BigInt::one(), -BigInt::one()] {
            let v = arith::squarefree_mul(&d, &u);
            if pair_weight(&u, &v) < pair_weight(&a, &b) && isometric(&[a.clone(), b.clone()], &[u.clone(), v.clone()])
            {
                side[i] = u;
                side[j] = v;
                return true;
            }
        }
    }
    false
}

/// Residue symbol helper shared with diagonalization over 𝔽_p.
pub(crate) fn finite_class(p: u64, a: u64) -> Result<SquareClass> {
    match legendre(a, p) {
        0 => Err(Error::ZeroClass),
        1 => Ok(SquareClass::Finite { p, rep: 1 }),
        _ => Ok(SquareClass::Finite { p, rep: arith::least_nonresidue(p) }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(pos: &[i64], neg: &[i64]) -> GwElement {
        GwElement::from_ints(pos, neg)
    }

    #[test]
    fn addition_and_hyperbolic() {
        let h = q(&[1], &[]).try_add(&q(&[-1], &[])).unwrap();
        assert_eq!(h.rank(), 2);
        assert_eq!(h.signature().unwrap(), 0);
        let e = q(&[2, 3], &[5]);
        assert_eq!(e.try_add(&GwElement::zero(Field::Rationals)).unwrap(), e);
        assert!(q(&[2, 3], &[]).is_equal(&q(&[5, 30], &[])).unwrap());
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(q(&[2], &[]).try_mul(&q(&[2], &[])).unwrap(), q(&[1], &[]));
        assert_eq!(q(&[], &[2]).try_mul(&q(&[-1], &[])).unwrap(), q(&[], &[-2]));
        assert_eq!(q(&[], &[3]).pow(2), q(&[1], &[]));
    }

    #[test]
    fn invariant_examples() {
        let e = q(&[1, 1, -1], &[]);
        let inv = e.invariants().unwrap();
        assert_eq!((inv.rank, inv.signature), (3, Some(1)));
        assert_eq!(inv.discriminant, SquareClass::int(-1));
        let e = q(&[2], &[1, -2]);
        assert_eq!((e.rank(), e.signature().unwrap()), (-1, 1));
        let e = q(&[], &[-1]);
        assert_eq!((e.rank(), e.signature().unwrap()), (-1, 1));
        let fp = GwElement::class(SquareClass::finite(7, 3).unwrap());
        assert!(matches!(fp.signature(), Err(Error::UnsupportedInvariant { .. })));
        assert!(fp.invariants().unwrap().signature.is_none());
    }

    #[test]
    fn equality_examples() {
        let target = q(&[], &[-1]);
        assert!(q(&[2], &[1, -2]).is_equal(&target).unwrap());
        let w = q(&[36], &[]);
        let rhs = w.try_sub(&q(&[1], &[])).unwrap().try_sub(&w.try_mul(&q(&[-1], &[])).unwrap()).unwrap();
        assert!(rhs.is_equal(&target).unwrap());
        assert!(!q(&[1], &[]).is_equal(&q(&[-1], &[])).unwrap());
        // same rank, signature and discriminant, different Hasse invariant at 3
        assert!(!q(&[1, 1], &[]).is_equal(&q(&[3, 3], &[])).unwrap());
        assert!(q(&[1, 1], &[]).is_equal(&q(&[2, 2], &[])).unwrap());
        let fp = Field::Fp(7);
        let a = GwElement::new(fp, vec![SquareClass::finite(7, 1).unwrap(); 2], vec![]).unwrap();
        let b = GwElement::new(fp, vec![SquareClass::finite(7, 3).unwrap(); 2], vec![]).unwrap();
        assert!(a.is_equal(&b).unwrap());
        assert!(matches!(a.is_equal(&q(&[1], &[])), Err(Error::ContextMismatch(..))));
    }

    #[test]
    fn simplification_examples() {
        assert_eq!(q(&[2], &[1, -2]).simplified(), q(&[], &[-1]));
        assert_eq!(q(&[3, -3], &[]).simplified(), q(&[1, -1], &[]));
        assert_eq!(q(&[2, 2, 1], &[1, 1]).simplified(), q(&[1], &[]));
        let fp = Field::Fp(5);
        let e = GwElement::new(fp, vec![SquareClass::finite(5, 2).unwrap(); 3], vec![]).unwrap();
        let s = e.simplified();
        assert_eq!(s.rank(), 3);
        assert_eq!(s.positive().iter().filter(|c| c.is_one()).count(), 2);
    }

    #[test]
    fn specialization_examples() {
        let t = |src: &str| {
            let (n, d) = crate::poly::parse_rational_function(src, "t").unwrap();
            SquareClass::Laurent(LaurentClass::from_fraction(&n, &d).unwrap())
        };
        let e = GwElement::class(t("t"));
        assert_eq!(e.specialize().unwrap(), q(&[1], &[]));
        assert_eq!(GwElement::class(t("3*t^2")).specialize().unwrap(), q(&[3], &[]));
        assert_eq!(GwElement::class(t("5")).specialize().unwrap(), q(&[5], &[]));
        assert!(q(&[1], &[]).specialize().is_err());
    }

    fn nonzero() -> impl Strategy<Value = i64> {
        prop_oneof![-60i64..-1, 1i64..60]
    }

    fn element() -> impl Strategy<Value = GwElement> {
        (proptest::collection::vec(nonzero(), 0..3), proptest::collection::vec(nonzero(), 0..3))
            .prop_map(|(p, n)| GwElement::from_ints(&p, &n))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_laws(a in element(), b in element(), c in element(), x in nonzero()) {
            let ab_c = a.try_add(&b).unwrap().try_mul(&c).unwrap();
            let ac_bc = a.try_mul(&c).unwrap().try_add(&b.try_mul(&c).unwrap()).unwrap();
            prop_assert!(ab_c.is_equal(&ac_bc).unwrap());
            prop_assert!(a.try_mul(&GwElement::int(1)).unwrap().is_equal(&a).unwrap());
            let xx = GwElement::int(x).try_mul(&GwElement::int(x)).unwrap();
            prop_assert!(xx.is_equal(&GwElement::int(1)).unwrap());
            prop_assert_eq!(a.try_add(&b).unwrap().rank(), a.rank() + b.rank());
            prop_assert_eq!(a.try_mul(&b).unwrap().rank(), a.rank() * b.rank());
        }

        #[test]
        fn simplification_preserves_class(a in element(), b in element()) {
            let e = a.try_mul(&b).unwrap().try_add(&a).unwrap();
            let s = e.simplified();
            prop_assert!(s.is_equal(&e).unwrap());
            prop_assert!(s.positive().len() + s.negative().len() <= e.positive().len() + e.negative().len());
        }

        #[test]
        fn chain_relation(a in nonzero(), b in nonzero()) {
            prop_assume!(a + b != 0);
            let lhs = GwElement::from_ints(&[a, b], &[]);
            let rhs = GwElement::from_ints(&[a + b, a * b * (a + b)], &[]);
            prop_assert!(lhs.is_equal(&rhs).unwrap());
        }

        #[test]
        fn equality_is_compatible_with_subtraction(a in element(), b in element()) {
            let d = a.try_sub(&b).unwrap();
            prop_assert_eq!(a.is_equal(&b).unwrap(), d.is_equal(&GwElement::zero(Field::Rationals)).unwrap());
            let inv = d.invariants().unwrap();
            if a.is_equal(&b).unwrap() {
                prop_assert!(inv.hasse.unwrap().values().all(|&s| s == 1));
            }
        }
    }
}
