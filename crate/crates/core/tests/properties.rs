use proptest::prelude::*;

use s3knots::braid::{alexander_from_braid, reduced_burau, transverse_invariants, BraidWord, LaurentPolynomial};
use s3knots::cabling::CableDescriptor;
use s3knots::kirby::{det, handle_slide, signature, FramedLink};
use s3knots::knotalg::{markov_neighbors, markov_tree, trace_map, trace_map_integral, traces_to_matrices};
use s3knots::s3flow::{check_reeb_conditions, omega_pairing, PointR4};

fn word(max_strands: u32, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2..=max_strands).prop_flat_map(move |n| {
        let letter = (1..n as i64, any::<bool>()).prop_map(|(i, pos)| if pos { i } else { -i });
        prop::collection::vec(letter, 0..max_len).prop_map(move |w| BraidWord::from_signed(n, &w).unwrap())
    })
}

fn splice(w: &BraidWord, at: usize, insert: &[i64]) -> BraidWord {
    let mut s = w.to_signed();
    let at = at.min(s.len());
    s.splice(at..at, insert.iter().copied());
    BraidWord::from_signed(w.strands(), &s).unwrap()
}

fn symmetric(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(-4i64..=4, n * (n + 1) / 2).prop_map(move |upper| {
        let mut m = vec![vec![0; n]; n];
        let mut it = upper.into_iter();
        for i in 0..n {
            for j in i..n {
                let v = it.next().unwrap();
                m[i][j] = v;
                m[j][i] = v;
            }
        }
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn bennequin_is_exponent_sum_minus_strands(b in word(6, 16)) {
        let t = transverse_invariants(&b);
        prop_assert_eq!(t.beta, t.e - t.n);
        prop_assert_eq!(t.n, b.strands() as i64);
        let m = transverse_invariants(&b.mirror());
        prop_assert_eq!(m.beta, -t.e - t.n);
    }

    #[test]
    fn braid_relations_preserve_burau(b in word(5, 10), at in 0usize..12, pick in 0usize..100) {
        let n = b.strands() as i64;
        prop_assume!(n >= 3);
        let i = 1 + (pick as i64 % (n - 2));
        let lhs = splice(&b, at, &[i, i + 1, i]);
        let rhs = splice(&b, at, &[i + 1, i, i + 1]);
        prop_assert_eq!(reduced_burau(&lhs), reduced_burau(&rhs));
        prop_assert_eq!(lhs.closure_components(), rhs.closure_components());
        prop_assert_eq!(lhs.exponent_sum(), rhs.exponent_sum());
        if lhs.is_knot() {
            prop_assert_eq!(alexander_from_braid(&lhs).unwrap(), alexander_from_braid(&rhs).unwrap());
        }
    }

    #[test]
    fn far_commutation_preserves_burau(b in word(6, 10), at in 0usize..12) {
        let n = b.strands() as i64;
        prop_assume!(n >= 4);
        let lhs = splice(&b, at, &[1, -3]);
        let rhs = splice(&b, at, &[-3, 1]);
        prop_assert_eq!(reduced_burau(&lhs), reduced_burau(&rhs));
    }

    #[test]
    fn conjugation_and_mirror_preserve_alexander(b in word(4, 12), g in word(4, 6), k in 0usize..12) {
        prop_assume!(b.is_knot());
        let delta = alexander_from_braid(&b).unwrap();
        prop_assert!(delta.eval_i64(1).abs() == 1);
        let rotated = b.rotate(k);
        prop_assert_eq!(&alexander_from_braid(&rotated).unwrap(), &delta);
        prop_assert_eq!(transverse_invariants(&rotated), transverse_invariants(&b));
        let g = g.with_strands(b.strands().max(g.strands())).unwrap();
        let b2 = b.with_strands(g.strands()).unwrap();
        let conj = g.concat(&b2).unwrap().concat(&g.inverse()).unwrap();
        if conj.is_knot() && b2.is_knot() {
            prop_assert!(alexander_from_braid(&conj).unwrap().eq_up_to_units(&alexander_from_braid(&b2).unwrap()));
        }
        prop_assert!(alexander_from_braid(&b.mirror()).unwrap().eq_up_to_units(&delta));
    }

    #[test]
    fn stabilization_preserves_alexander(b in word(4, 10), positive in any::<bool>()) {
        prop_assume!(b.is_knot());
        let sign = if positive { 1 } else { -1 };
        let s = b.stabilize(sign);
        prop_assert!(alexander_from_braid(&s).unwrap().eq_up_to_units(&alexander_from_braid(&b).unwrap()));
        let d = s.destabilize(sign).unwrap();
        prop_assert_eq!(transverse_invariants(&d).beta - transverse_invariants(&s).beta, if positive { 0 } else { 2 });
    }

    #[test]
    fn wire_formats_round_trip(b in word(6, 12), lowest in -5i64..5, coeffs in prop::collection::vec(-9i64..9, 0..6)) {
        let text = serde_json::to_string(&b).unwrap();
        prop_assert_eq!(serde_json::from_str::<BraidWord>(&text).unwrap(), b);
        let p = LaurentPolynomial::new(lowest, coeffs);
        let text = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<LaurentPolynomial>(&text).unwrap(), p);
    }

    #[test]
    fn cable_descriptor_round_trip(stages in prop::collection::vec((1i64..6, -20i64..20), 1..4), mirror in any::<bool>()) {
        let mut d = CableDescriptor::new(&stages);
        if mirror {
            d.orientation = -1;
        }
        let text = serde_json::to_string(&d).unwrap();
        prop_assert_eq!(serde_json::from_str::<CableDescriptor>(&text).unwrap(), d);
    }

    #[test]
    fn slides_are_congruences(m in symmetric(4), slides in prop::collection::vec((0usize..4, 1usize..4, any::<bool>()), 1..12)) {
        let start = FramedLink::from_matrix(m).unwrap();
        let (d0, s0) = (det(start.matrix()), signature(start.matrix()));
        let mut link = start.clone();
        for (i, off, pos) in slides {
            let j = (i + off) % 4;
            let sign = if pos { 1 } else { -1 };
            let next = handle_slide(&link, i, j, sign).unwrap();
            prop_assert_eq!(handle_slide(&next, i, j, -sign).unwrap(), link.clone());
            link = next;
        }
        prop_assert_eq!(det(link.matrix()), d0);
        prop_assert_eq!(signature(link.matrix()), s0);
    }

    #[test]
    fn trace_map_integral_is_conserved(x in -50i128..50, y in -50i128..50, z in -50i128..50) {
        let p = [x, y, z];
        prop_assert_eq!(trace_map_integral(trace_map(p)), trace_map_integral(p));
    }

    #[test]
    fn reeb_conditions_hold_everywhere(v in prop::array::uniform4(-1.0f64..1.0)) {
        let p = PointR4::from_array(v);
        prop_assume!(p.norm() > 1e-3);
        let p = p.normalized();
        let c = check_reeb_conditions(p).unwrap();
        prop_assert!((c.alpha_value - 1.0).abs() < 1e-12);
        prop_assert!(c.d_alpha_defect < 1e-12);
        prop_assert!((omega_pairing(p).unwrap() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn markov_triples_give_fricke_pairs() {
    for t in markov_tree(4).unwrap() {
        for n in markov_neighbors(t).unwrap() {
            assert!(n.is_valid());
        }
        let [x, y, z] = t.traces();
        let pair = traces_to_matrices(x as i64, y as i64, z as i64).unwrap();
        assert!(pair.checks.fricke_commutator && pair.checks.fricke_product, "{t:?}");
        assert!(pair.a.is_special() && pair.b.is_special());
    }
}
