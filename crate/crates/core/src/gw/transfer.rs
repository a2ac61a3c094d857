//! Scharlau transfer along ℚ[x]/(g) → ℚ.

use num_rational::BigRational;
use num_traits::Zero;

use super::text::parse_terms;
use super::{diagonalize, Field, GwElement};
use crate::poly::{parse_rational_function, UniPoly};
use crate::{Error, Result};

fn check_extension(g: &UniPoly) -> Result<UniPoly> {
    match g.degree() {
        None | Some(0) => return Err(Error::InvalidExtension("modulus must have positive degree".into())),
        _ => {}
    }
    let g = g.monic();
    if !g.is_irreducible()? {
        return Err(Error::InvalidExtension(format!("{} is reducible over Q", g.display("x"))));
    }
    Ok(g)
}

/// `Tr(h) = Σ_i [x^i](h·x^i mod g)` for monic `g`.
fn trace(h: &UniPoly, g: &UniPoly) -> BigRational {
    let n = g.degree().unwrap();
    let mut acc = BigRational::zero();
    let mut cur = h.rem(g);
    for i in 0..n {
        acc += cur.coeff(i);
        cur = cur.mul(&UniPoly::x()).rem(g);
    }
    acc
}

/// Gram matrix `Tr(c·x^{i+j})` of the trace form of `⟨c⟩` on the power basis.
pub fn trace_form(g: &UniPoly, c: &UniPoly) -> Result<Vec<Vec<BigRational>>> {
    let g = check_extension(g)?;
    let n = g.degree().unwrap();
    let c = c.rem(&g);
    if c.is_zero() {
        return Err(Error::ZeroClass);
    }
    let traces: Vec<BigRational> = (0..2 * n - 1).map(|k| trace(&c.mul(&UniPoly::x().pow(k as u32)), &g)).collect();
    Ok((0..n).map(|i| (0..n).map(|j| traces[i + j].clone()).collect()).collect())
}

/// Transfer of `Σ⟨pos_i⟩ − Σ⟨neg_j⟩` over ℚ[x]/(g), the classes given as
/// residues modulo `g`.
pub fn transfer(g: &UniPoly, pos: &[UniPoly], neg: &[UniPoly]) -> Result<GwElement> {
    let mut out = GwElement::zero(Field::Rationals);
    for c in pos {
        out = out.try_add(&diagonalize(&trace_form(g, c)?)?)?;
    }
    for c in neg {
        out = out.try_sub(&diagonalize(&trace_form(g, c)?)?)?;
    }
    Ok(out)
}

/// Reads a text form whose entries are rational functions of `var`, as
/// residues modulo `g`. `⟨n/d⟩` is stored as `n·d`, the same square class.
pub fn parse_residues(src: &str, g: &UniPoly, var: &str) -> Result<(Vec<UniPoly>, Vec<UniPoly>)> {
    let entry = |e: &str| -> Result<UniPoly> {
        let (n, d) = parse_rational_function(&e.replace('\u{2212}', "-"), var)?;
        Ok(n.mul(&d).rem(g))
    };
    Ok(parse_terms(src, entry)?.unwrap_or_default())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn gram_matrices() {
        let one = UniPoly::one();
        let m = trace_form(&UniPoly::from_i64s(&[1, 0, 1]), &one).unwrap();
        assert_eq!(m, vec![vec![rat(2), rat(0)], vec![rat(0), rat(-2)]]);
        let m = trace_form(&UniPoly::from_i64s(&[-2, 0, 1]), &one).unwrap();
        assert_eq!(m, vec![vec![rat(2), rat(0)], vec![rat(0), rat(4)]]);
    }

    #[test]
    fn transfer_examples() {
        let one = UniPoly::one();
        let t = transfer(&UniPoly::from_i64s(&[1, 0, 1]), std::slice::from_ref(&one), &[]).unwrap();
        assert!(t.is_equal(&GwElement::from_ints(&[2, -2], &[])).unwrap());
        let t = transfer(&UniPoly::from_i64s(&[-2, 0, 1]), std::slice::from_ref(&one), &[]).unwrap();
        assert!(t.is_equal(&GwElement::from_ints(&[2, 1], &[])).unwrap());
        for a in [-3i64, 2, 5] {
            let t = transfer(&UniPoly::from_i64s(&[-1, 1]), &[UniPoly::from_i64s(&[a])], &[]).unwrap();
            assert_eq!(t, GwElement::int(a));
        }
        let cubic = UniPoly::from_i64s(&[-2, 0, 0, 1]);
        let t = transfer(&cubic, &[UniPoly::x(), one.clone()], &[one]).unwrap();
        assert_eq!(t.rank(), 3);
    }

    #[test]
    fn residue_entries() {
        let g = UniPoly::from_i64s(&[-2, 0, 1]);
        let (pos, neg) = parse_residues("<t, 1/t> - <t^2>", &g, "t").unwrap();
        assert_eq!(pos, vec![UniPoly::x(), UniPoly::x()]);
        assert_eq!(neg, vec![UniPoly::from_i64s(&[2])]);
        let t = transfer(&g, &pos, &neg).unwrap();
        assert_eq!(t.rank(), 2);
        assert!(parse_residues("<s>", &g, "t").is_err());
    }

    #[test]
    fn rejects_reducible_moduli() {
        let g = UniPoly::from_i64s(&[-1, 0, 1]);
        assert!(matches!(transfer(&g, &[UniPoly::one()], &[]), Err(Error::InvalidExtension(_))));
        assert!(matches!(transfer(&UniPoly::one(), &[UniPoly::one()], &[]), Err(Error::InvalidExtension(_))));
        let g = UniPoly::from_i64s(&[1, 0, 1]);
        assert!(matches!(transfer(&g, std::slice::from_ref(&g), &[]), Err(Error::ZeroClass)));
    }
}
