use s3knots::braid::alexander_from_braid;
use s3knots::lorenz::{
    close_return_candidates, integrate_lorenz, lobe_encoding, lorenz_invariants, reencode, template_braid, LorenzParams,
    Symbol, SymbolWord,
};

#[test]
fn trajectories_stay_in_the_absorbing_ball() {
    for r in [20.0, 22.0, 24.0, 26.0, 28.0, 30.0] {
        let params = LorenzParams::with_r(r);
        let traj = integrate_lorenz(&params, [1.0, 1.0, 1.0], 1e-3, 1_000_000).unwrap();
        let max_z = traj.max_abs_z();
        // Dissipativity oracle: x² + y² + (z - σ - r)² stays below a sphere
        // of radius about b(σ + r) / (2 sqrt(b - 1)) for b > 2.
        let (s, b) = (params.sigma, params.b);
        let radius = b * (s + r) / (2.0 * (b - 1.0).sqrt());
        let worst = traj
            .points
            .iter()
            .skip(traj.len() / 10)
            .map(|[x, y, z]| (x * x + y * y + (z - s - r).powi(2)).sqrt())
            .fold(0.0f64, f64::max);
        assert!(worst <= radius + 1e-9, "r={r}: {worst} exceeds {radius}");
        if r == 24.0 {
            assert!(max_z < 60.0, "max |z| = {max_z}");
        }
    }
}

#[test]
fn mirrored_trajectory_swaps_symbols() {
    let params = LorenzParams::with_r(28.0);
    let a = integrate_lorenz(&params, [1.0, 1.0, 1.0], 1e-3, 40_000).unwrap();
    let b = integrate_lorenz(&params, [-1.0, -1.0, 1.0], 1e-3, 40_000).unwrap();
    let wa = lobe_encoding(&a);
    let wb = lobe_encoding(&b);
    assert!(wa.len() > 10);
    assert_eq!(wa.iter().map(|s| s.swap()).collect::<Vec<_>>(), wb);
    assert!(wa.contains(&Symbol::L) && wa.contains(&Symbol::R));
}

#[test]
fn close_returns_reencode_consistently() {
    let params = LorenzParams::with_r(28.0);
    let traj = integrate_lorenz(&params, [1.0, 1.0, 1.0], 1e-3, 100_000).unwrap();
    let candidates = close_return_candidates(&traj, 2.0, 6);
    assert!(!candidates.is_empty());
    for c in &candidates {
        assert_eq!(reencode(&traj, c), c.word);
        assert!(c.word.len() <= 6);
    }
}

#[test]
fn template_invariants_of_short_words() {
    let lr = lorenz_invariants(&"LR".parse().unwrap()).unwrap();
    assert_eq!((lr.e, lr.n, lr.beta, lr.genus), (1, 2, -1, Some(0)));
    for w in SymbolWord::all_primitive(7) {
        let inv = lorenz_invariants(&w).unwrap();
        let mirror = lorenz_invariants(&w.swapped()).unwrap();
        assert_eq!((inv.e, inv.n, inv.beta, inv.components), (mirror.e, mirror.n, mirror.beta, mirror.components));
        assert!(inv.positive);
        if w.letters().contains(&Symbol::L) && w.letters().contains(&Symbol::R) {
            assert_eq!(inv.components, 1, "{w:?}");
            let t = template_braid(&w).unwrap();
            let delta = alexander_from_braid(&t.braid).unwrap();
            assert_eq!(delta.eval_i64(1).abs(), 1);
            assert_eq!(delta.leading_coeff().abs(), 1, "positive braids are fibered: {w:?}");
        }
    }
}
