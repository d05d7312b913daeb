use s3knots::braid::{alexander_from_braid, torus_braid, transverse_invariants, BraidWord, LaurentPolynomial};
use s3knots::cabling::{cable_braid, iterated_cable, validate_descriptor, CableDescriptor};

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn single_stage_over_unknot_is_a_torus_knot() {
    for q in 3..=9i64 {
        for p in 2..q {
            if gcd(p, q) != 1 {
                continue;
            }
            let c = iterated_cable(&CableDescriptor::new(&[(p, q)])).unwrap();
            let t = torus_braid(p as u32, q, 1).unwrap();
            assert_eq!(alexander_from_braid(&c).unwrap(), alexander_from_braid(&t).unwrap(), "({p},{q})");
            let (ic, it) = (transverse_invariants(&c), transverse_invariants(&t));
            assert_eq!((ic.e, ic.n, ic.components), (it.e, it.n, it.components));
        }
    }
}

#[test]
fn satellite_identity_on_iterated_cables() {
    let figure_eight = LaurentPolynomial::from_coeffs(&[1, -3, 1]);
    let stage_lists: [&[(i64, i64)]; 5] = [&[(2, 3), (2, 13)], &[(2, 3), (3, 20)], &[(2, 5), (2, 21)], &[(3, 4), (2, 25)], &[(2, 3), (2, 13), (2, 53)]];
    for stages in stage_lists {
        let d = CableDescriptor::new(stages);
        assert!(validate_descriptor(&d).is_empty());
        let b = iterated_cable(&d).unwrap();
        assert!(b.is_knot());
        assert!(b.is_positive(), "{stages:?}");
        let delta = alexander_from_braid(&b).unwrap();
        assert!(!delta.eq_up_to_units(&figure_eight));

        let (&(p, q), inner) = stages.split_last().unwrap();
        let base = iterated_cable(&CableDescriptor::new(inner)).unwrap();
        let companion = alexander_from_braid(&base).unwrap().substitute_power(p);
        let pattern = alexander_from_braid(&torus_braid(p as u32, q, 1).unwrap()).unwrap();
        let expected = &companion * &pattern;
        assert!(delta.eq_up_to_units(&expected), "{stages:?}");
    }
}

#[test]
fn mirror_orientation_negates_exponents() {
    let mut d = CableDescriptor::new(&[(2, 3), (2, 13)]);
    let b = iterated_cable(&d).unwrap();
    d.orientation = -1;
    let m = iterated_cable(&d).unwrap();
    assert_eq!(m, b.mirror());
    assert_eq!(transverse_invariants(&m).e, -transverse_invariants(&b).e);
}

#[test]
fn cable_of_a_negative_base_stays_a_knot() {
    let left_trefoil = BraidWord::from_signed(2, &[-1, -1, -1]).unwrap();
    let c = cable_braid(&left_trefoil, 2, 1).unwrap();
    assert!(c.is_knot());
    let expected = LaurentPolynomial::from_coeffs(&[1, -1, 1]).substitute_power(2);
    assert!(alexander_from_braid(&c).unwrap().eq_up_to_units(&expected));
}
