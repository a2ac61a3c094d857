//! Buchberger's algorithm and finite-dimensional quotient algebras.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_rational::BigRational;

use super::{Monomial, MonomialOrder, Polynomial};
use crate::{Error, Result};

pub(crate) fn leading_term<'a>(p: &'a Polynomial, order: &MonomialOrder) -> Option<(&'a Monomial, &'a BigRational)> {
    p.terms().max_by(|a, b| order.cmp(a.0, b.0))
}

fn leading_monomial(p: &Polynomial, order: &MonomialOrder) -> Monomial {
    leading_term(p, order).expect("nonzero polynomial").0.clone()
}

fn monic(p: &Polynomial, order: &MonomialOrder) -> Polynomial {
    match leading_term(p, order) {
        Some((_, c)) => {
            let inv = c.recip();
            p.scale(&inv)
        }
        None => p.clone(),
    }
}

/// Fully reduces `p` modulo `basis` (whose leading monomials are `lms`).
fn reduce(p: &Polynomial, basis: &[Polynomial], lms: &[Monomial], order: &MonomialOrder) -> Polynomial {
    let mut rest = p.clone();
    let mut rem = Polynomial::zero(p.nvars());
    while let Some((m, c)) = leading_term(&rest, order) {
        let (m, c) = (m.clone(), c.clone());
        let hit = lms.iter().position(|lm| lm.divides(&m));
        match hit {
            Some(k) => {
                let g = &basis[k];
                let lc = leading_term(g, order).unwrap().1.clone();
                let q = lms[k].quotient_of(&m).unwrap();
                rest = rest.sub(&g.mul_term(&q, &(c / lc)));
            }
            None => {
                rest.add_term(m.clone(), -c.clone());
                rem.add_term(m, c);
            }
        }
    }
    rem
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, order: &MonomialOrder) -> Polynomial {
    let (mf, cf) = leading_term(f, order).unwrap();
    let (mg, cg) = leading_term(g, order).unwrap();
    let l = mf.lcm(mg);
    let a = f.mul_term(&mf.quotient_of(&l).unwrap(), &cf.recip());
    let b = g.mul_term(&mg.quotient_of(&l).unwrap(), &cg.recip());
    a.sub(&b)
}

/// Reduced Gröbner basis of the ideal generated by `gens`: monic, sorted by
/// ascending leading monomial. The zero ideal has the empty basis.
pub fn groebner(gens: &[Polynomial], order: &MonomialOrder) -> Vec<Polynomial> {
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut lms: Vec<Monomial> = Vec::new();
    for g in gens {
        let r = reduce(g, &basis, &lms, order);
        if !r.is_zero() {
            lms.push(leading_monomial(&r, order));
            basis.push(monic(&r, order));
        }
    }
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert((i, j));
        }
    }
    while !pairs.is_empty() {
        // normal selection: pair with the smallest lcm
        let &(i, j) = pairs
            .iter()
            .min_by(|a, b| order.cmp(&lms[a.0].lcm(&lms[a.1]), &lms[b.0].lcm(&lms[b.1])).then(a.cmp(b)))
            .unwrap();
        pairs.remove(&(i, j));
        if lms[i].is_coprime(&lms[j]) {
            continue;
        }
        let l = lms[i].lcm(&lms[j]);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lms[k].divides(&l)
                && !pairs.contains(&(i.min(k), i.max(k)))
                && !pairs.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order);
        let r = reduce(&s, &basis, &lms, order);
        if r.is_zero() {
            continue;
        }
        let n = basis.len();
        lms.push(leading_monomial(&r, order));
        basis.push(monic(&r, order));
        for k in 0..n {
            pairs.insert((k, n));
        }
    }
    interreduce(basis, order)
}

fn interreduce(basis: Vec<Polynomial>, order: &MonomialOrder) -> Vec<Polynomial> {
    let lms: Vec<Monomial> = basis.iter().map(|g| leading_monomial(g, order)).collect();
    let mut keep: Vec<usize> = Vec::new();
    for (i, lm) in lms.iter().enumerate() {
        let redundant = lms.iter().enumerate().any(|(j, other)| j != i && other.divides(lm) && (other != lm || j < i));
        if !redundant {
            keep.push(i);
        }
    }
    let mut minimal: Vec<Polynomial> = keep.iter().map(|&i| basis[i].clone()).collect();
    let mut min_lms: Vec<Monomial> = keep.iter().map(|&i| lms[i].clone()).collect();
    for k in 0..minimal.len() {
        let g = minimal[k].clone();
        let lm = min_lms[k].clone();
        let lc = g.coeff(&lm);
        let mut tail = g.clone();
        tail.add_term(lm.clone(), -lc.clone());
        let others: Vec<Polynomial> =
            minimal.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, p)| p.clone()).collect();
        let other_lms: Vec<Monomial> =
            min_lms.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, m)| m.clone()).collect();
        let mut r = reduce(&tail, &others, &other_lms, order);
        r.add_term(lm.clone(), lc);
        minimal[k] = monic(&r, order);
        min_lms[k] = lm;
    }
    let mut idx: Vec<usize> = (0..minimal.len()).collect();
    idx.sort_by(|&a, &b| order.cmp(&min_lms[a], &min_lms[b]));
    idx.into_iter().map(|i| minimal[i].clone()).collect()
}

/// The quotient `ℚ[x]/I` presented by a reduced Gröbner basis.
#[derive(Debug, Clone)]
pub struct QuotientBasis {
    order: MonomialOrder,
    basis: Vec<Polynomial>,
    lms: Vec<Monomial>,
    standard: Option<Vec<Monomial>>,
}

impl QuotientBasis {
    pub fn new(gens: &[Polynomial], order: MonomialOrder) -> Result<Self> {
        let n = order.nvars();
        if let Some(g) = gens.iter().find(|g| g.nvars() != n) {
            return Err(Error::InvalidIdeal(format!("generator has {} variables, order has {}", g.nvars(), n)));
        }
        if gens.iter().all(Polynomial::is_zero) {
            return Err(Error::InvalidIdeal("generators are all zero".into()));
        }
        let basis = groebner(gens, &order);
        let lms: Vec<Monomial> = basis.iter().map(|g| leading_monomial(g, &order)).collect();
        let zero_dim = lms.iter().any(Monomial::is_one)
            || (0..n).all(|i| lms.iter().any(|m| matches!(m.pure_power(), Some((j, _)) if j == i)));
        let standard = zero_dim.then(|| standard_monomials(n, &lms, &order));
        Ok(QuotientBasis { order, basis, lms, standard })
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.order.nvars()
    }

    pub fn groebner_basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn is_zero_dimensional(&self) -> bool {
        self.standard.is_some()
    }

    /// `dim_ℚ ℚ[x]/I`, or `None` when the quotient is infinite-dimensional.
    pub fn dimension(&self) -> Option<usize> {
        self.standard.as_ref().map(Vec::len)
    }

    /// Monomials outside the initial ideal, ascending in the order.
    pub fn standard_monomials(&self) -> Option<&[Monomial]> {
        self.standard.as_deref()
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        reduce(p, &self.basis, &self.lms, &self.order).is_zero()
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        if self.standard.is_none() {
            return Err(Error::Unsupported("normal form in an infinite-dimensional quotient".into()));
        }
        Ok(reduce(p, &self.basis, &self.lms, &self.order))
    }

    /// Coefficients of the normal form of `p` on the standard monomials.
    pub fn coordinates(&self, p: &Polynomial) -> Result<Vec<BigRational>> {
        let nf = self.normal_form(p)?;
        let std = self.standard.as_ref().unwrap();
        Ok(std.iter().map(|m| nf.coeff(m)).collect())
    }
}

fn standard_monomials(n: usize, lms: &[Monomial], order: &MonomialOrder) -> Vec<Monomial> {
    let standard = |m: &Monomial| !lms.iter().any(|lm| lm.divides(m));
    let one = Monomial::one(n);
    if !standard(&one) {
        return Vec::new();
    }
    let mut seen: HashSet<Monomial> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(one.clone());
    queue.push_back(one);
    let mut out = Vec::new();
    while let Some(m) = queue.pop_front() {
        for i in 0..n {
            let next = m.mul(&Monomial::var(n, i, 1));
            if standard(&next) && seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
        out.push(m);
    }
    out.sort_by(|a, b| order.cmp(a, b));
    out
}

impl PartialEq for QuotientBasis {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.basis == other.basis
    }
}
