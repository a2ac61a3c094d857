use proptest::prelude::*;

use qmilnor::gw::Notation;
use qmilnor::{Field, GwElement, SquareClass};

fn squarefree(mut a: i64) -> i64 {
    let sign = a.signum();
    a = a.abs();
    let mut out = 1;
    let mut p = 2;
    while p * p <= a {
        let mut k = 0;
        while a % p == 0 {
            a /= p;
            k += 1;
        }
        if k % 2 == 1 {
            out *= p;
        }
        p += 1;
    }
    sign * out * a
}

/// Searches `a x² + b y² = c z²` with `z ≠ 0`; the bound covers Holzer's
/// for the small coefficients used here.
fn represents(a: i64, b: i64, c: i64, bound: i64) -> bool {
    for z in 1..=bound {
        for x in 0..=bound {
            for y in 0..=bound {
                if a * x * x + b * y * y == c * z * z {
                    return true;
                }
            }
        }
    }
    false
}

/// `⟨a, b⟩ ≅ ⟨c, d⟩` iff the discriminants agree and `⟨a, b⟩` represents
/// `c`.
fn binary_isometric(a: i64, b: i64, c: i64, d: i64) -> bool {
    squarefree(a * b) == squarefree(c * d) && represents(a, b, c, 40)
}

fn small() -> impl Strategy<Value = i64> {
    prop_oneof![-12i64..=-1, 1i64..=12]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(160))]

    #[test]
    fn binary_forms_match_legendre_search(a in small(), b in small(), c in small(), d in small()) {
        let x = GwElement::from_ints(&[a, b], &[]);
        let y = GwElement::from_ints(&[c, d], &[]);
        prop_assert_eq!(x.is_equal(&y).unwrap(), binary_isometric(a, b, c, d), "<{},{}> vs <{},{}>", a, b, c, d);
    }

    #[test]
    fn chain_relation(a in -500i64..500, b in -500i64..500) {
        prop_assume!(a != 0 && b != 0 && a + b != 0);
        let x = GwElement::from_ints(&[a, b], &[]);
        let y = GwElement::from_ints(&[a + b, a * b * (a + b)], &[]);
        prop_assert!(x.is_equal(&y).unwrap());
    }

    #[test]
    fn finite_field_classes_follow_euler_criterion(a in 1i64..1000, p in prop_oneof![Just(3u64), Just(5), Just(7), Just(11), Just(13)]) {
        prop_assume!(a % p as i64 != 0);
        let c = SquareClass::finite(p, a).unwrap();
        let residue = (1..p as i64).any(|x| (x * x - a).rem_euclid(p as i64) == 0);
        prop_assert_eq!(c.is_one(), residue);
    }

    #[test]
    fn text_round_trip(pos in proptest::collection::vec(small(), 0..4), neg in proptest::collection::vec(small(), 0..4)) {
        let e = GwElement::from_ints(&pos, &neg);
        for n in [Notation::Unicode, Notation::Ascii] {
            prop_assert_eq!(GwElement::parse(&e.to_text(n), Field::Rationals).unwrap(), e.clone());
        }
    }
}

#[test]
fn classical_isometries() {
    let q = |p: &[i64]| GwElement::from_ints(p, &[]);
    assert!(q(&[1, 1]).is_equal(&q(&[2, 2])).unwrap());
    assert!(q(&[1, 1]).is_equal(&q(&[5, 5])).unwrap());
    assert!(!q(&[1, 1]).is_equal(&q(&[3, 3])).unwrap());
    assert!(q(&[1, 1, 1, 1]).is_equal(&q(&[7, 7, 7, 7])).unwrap());
    assert!(q(&[1, -1]).is_equal(&q(&[3, -3])).unwrap());
    // ⟨1,1,1⟩ does not represent 7
    assert!(!q(&[1, 1, 1]).is_equal(&q(&[7, 1, 7])).unwrap());
    assert!(!q(&[1, 1, 1, 1]).is_equal(&q(&[7, 1, 1, 7])).unwrap());
}

#[test]
fn finite_field_ring() {
    let f = Field::Fp(7);
    let e = GwElement::parse("<3> + <5>", f).unwrap();
    assert!(e.is_equal(&GwElement::parse("<1> + <1>", f).unwrap()).unwrap());
    assert!(!GwElement::parse("<3>", f).unwrap().is_equal(&GwElement::parse("<1>", f).unwrap()).unwrap());
    assert!(GwElement::parse("<1>", f).unwrap().try_add(&GwElement::int(1)).is_err());
}
