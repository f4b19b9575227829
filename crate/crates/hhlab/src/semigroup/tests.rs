use super::*;
use crate::exponents::{DecayQuadruple, ProblemParams};
use crate::radialcore::{weighted_norm, RadialFunction, RadialGrid};

fn heat3() -> ProblemParams {
    ProblemParams::new(3, 0, 0, 2, 1).unwrap()
}

fn gaussian(grid: &std::sync::Arc<RadialGrid>) -> RadialFunction {
    RadialFunction::from_fn(grid.clone(), |r| (-r * r / 4.0).exp()).unwrap()
}

#[test]
fn zero_maps_to_zero() {
    let g = RadialGrid::new(1e-3, 1e2, 256).unwrap();
    let out = apply_semigroup(&heat3(), 0.5, &RadialFunction::zeros(g)).unwrap();
    assert!(out.values().iter().all(|&v| v == 0.0));
    assert!(apply_semigroup(&heat3(), 0.0, &out).is_err());
}

#[test]
fn gaussian_self_similarity() {
    let g = RadialGrid::default_grid();
    let f = gaussian(&g);
    for &t in &[0.01, 1.0, 10.0] {
        let out = apply_semigroup(&heat3(), t, &f).unwrap();
        let mut worst = 0.0f64;
        for (&r, &v) in g.nodes().iter().zip(out.values()) {
            let exact = (1.0 + t).powf(-1.5) * (-r * r / (4.0 * (1.0 + t))).exp();
            worst = worst.max((v - exact).abs());
        }
        assert!(worst < 1e-10 * (1.0 + t).powf(-1.5), "t = {t}: {worst:e}");
    }
}

#[test]
fn semigroup_law() {
    let g = RadialGrid::default_grid();
    let f = gaussian(&g);
    let p = heat3();
    let norm = weighted_norm(&f, 2.0, 0.0, 3).unwrap();
    for &t1 in &[0.1, 1.0, 10.0] {
        for &t2 in &[0.1, 1.0, 10.0] {
            let two = apply_semigroup(&p, t2, &apply_semigroup(&p, t1, &f).unwrap()).unwrap();
            let one = apply_semigroup(&p, t1 + t2, &f).unwrap();
            let err = weighted_norm(&two.sub(&one).unwrap(), 2.0, 0.0, 3).unwrap();
            assert!(err <= 1e-6 * norm, "t1={t1} t2={t2}: {err:e}");
        }
    }
}

#[test]
fn positivity_and_l2_contraction() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let g = RadialGrid::new(1e-4, 1e2, 600).unwrap();
    for &(a, t) in &[((3, 4), 0.3), ((0, 1), 2.0), ((5, 1), 0.05)] {
        let p = ProblemParams::new(3, crate::Num::ratio(a.0, a.1), 0, 2, 1).unwrap();
        let vals: Vec<f64> =
            g.nodes().iter().map(|&r| rng.gen::<f64>() * (-r).exp() * if r < 5.0 { 1.0 } else { 0.0 }).collect();
        let f = RadialFunction::new(g.clone(), vals).unwrap();
        let out = apply_semigroup(&p, t, &f).unwrap();
        assert!(out.values().iter().all(|&v| v >= 0.0));
        assert!(weighted_norm(&out, 2.0, 0.0, 3).unwrap() <= weighted_norm(&f, 2.0, 0.0, 3).unwrap());
    }
}

#[test]
fn exact_dilation_identity() {
    let p = ProblemParams::new(3, crate::Num::ratio(-15, 64), 0, 2, 1).unwrap();
    let g = RadialGrid::new(1e-4, 1e2, 600).unwrap();
    let f = RadialFunction::from_fn(g.clone(), |r: f64| r.powf(-0.2) * (-r * r).exp()).unwrap();
    let t = 0.3;
    let base = apply_semigroup(&p, t, &f).unwrap();
    for &lambda in &[2.0, 10.0] {
        let g2 = g.rescaled(lambda).unwrap();
        let f2 = RadialFunction::new(g2, f.values().to_vec()).unwrap();
        let out = apply_semigroup(&p, lambda * lambda * t, &f2).unwrap();
        let scale = base.sup();
        for (a, b) in out.values().iter().zip(base.values()) {
            assert!((a - b).abs() <= 1e-10 * b.abs().max(1e-200) || (a - b).abs() < 1e-14 * scale);
        }
    }
}

#[test]
fn origin_behaviour_is_r_to_minus_sigma() {
    let p = ProblemParams::new(3, crate::Num::ratio(-15, 64), 0, 2, 1).unwrap();
    let g = RadialGrid::new(1e-7, 1e1, 513).unwrap();
    let f = RadialFunction::from_fn(g.clone(), |r: f64| r * crate::radialcore::smooth_bump(r)).unwrap();
    let out = apply_semigroup(&p, 1.0, &f).unwrap();
    let (a, b) = (out.eval(1e-5), out.eval(1e-3));
    let slope = (b / a).ln() / (100f64).ln();
    assert!((slope / -p.sigma_minus() - 1.0).abs() < 0.02, "{slope}");
}

#[test]
fn mass_is_conserved_without_potential() {
    let g = RadialGrid::default_grid();
    let one = RadialFunction::from_fn(g.clone(), |_| 1.0).unwrap();
    for &t in &[1e-4, 1.0, 100.0] {
        let out = apply_semigroup(&heat3(), t, &one).unwrap();
        for (&r, &v) in g.nodes().iter().zip(out.values()) {
            if r > 100.0 * t.sqrt().max(1e-3) && r < 1e3 - 60.0 * t.sqrt() {
                assert!((v - 1.0).abs() < 1e-8, "t = {t}, r = {r}: {v}");
            }
        }
    }
}

#[test]
fn lattice_blocks_match_direct_operators() {
    let p = ProblemParams::new(3, crate::Num::ratio(3, 4), 0, 2, 1).unwrap();
    let g = RadialGrid::new(1e-6, 1e1, 449).unwrap();
    let lattice = TimeLattice::new(&g, 1, 2.0, 2e-3).unwrap();
    assert_eq!(lattice.len(), 97);
    assert!((lattice.ratio().powi(32) - 10.0).abs() < 1e-9);
    let f = RadialFunction::from_fn(g.clone(), |r: f64| r.powf(-0.3) * crate::radialcore::smooth_bump(r)).unwrap();
    let c = 0.37;
    let table = LatticeKernel::build(&p, c, &g, &lattice).unwrap();
    for &k in &[0, 40, 96] {
        let from_table = table.apply(&g, k, f.values());
        let direct = SemigroupOperator::build(&p, c * lattice.time(k), &g).unwrap().apply_values(f.values());
        let scale = direct.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for i in 5..g.len() - 5 {
            assert!((from_table[i] - direct[i]).abs() <= 1e-11 * scale, "k={k} i={i}");
        }
    }
}

#[test]
fn probe_exponent_is_exact() {
    let p = ProblemParams::new(3, crate::Num::ratio(-15, 64), 0, 2, 1).unwrap();
    let g = RadialGrid::new(1e-4, 1e2, 500).unwrap();
    let f = RadialFunction::from_fn(g, |r: f64| (-r * r).exp()).unwrap();
    let quad = DecayQuadruple::from_values(2, 0, 4, -0.25).unwrap();
    let e = probe_exponent(&p, &quad, &f, 0.5, 2.0).unwrap();
    let want = crate::exponents::decay_exponent(&p, &quad);
    assert!((e - want).abs() < 1e-10, "{e} vs {want}");
    let bad = DecayQuadruple::from_values(4, 0, 2, 0).unwrap();
    assert!(matches!(probe_exponent(&p, &bad, &f, 0.5, 2.0), Err(crate::Error::Precondition(_))));
}

#[test]
fn gaussian_slope_matches_closed_form_evolution() {
    // ‖(1+t)^{-3/2} e^{-r²/(4(1+t))}‖_{L⁴} = C (1+t)^{-9/8}.
    let g = RadialGrid::default_grid();
    let f = gaussian(&g);
    let quad = DecayQuadruple::from_values(2, 0, 4, 0).unwrap();
    let times = geometric_times(1e2, 1e4, 4).unwrap();
    let measured = decay_slope(&heat3(), &quad, &f, &times).unwrap();
    let pts: Vec<(f64, f64)> = times.iter().map(|&t| (t.ln(), -1.125 * (1.0 + t).ln())).collect();
    let oracle = decay::least_squares_slope(&pts);
    assert!((measured - oracle).abs() < 1e-6, "{measured} vs {oracle}");
    let target = quad.target;
    let asymptotic = crate::exponents::compact_data_decay_exponent(&heat3(), &target);
    assert!((measured / asymptotic - 1.0).abs() < 0.01);
}

#[test]
fn origin_witness_power() {
    let p = ProblemParams::new(3, crate::Num::ratio(-15, 64), 0, 2, 1).unwrap();
    let quad = DecayQuadruple::from_values(2, 0, 2, -1.2).unwrap();
    let w = necessity_witness_origin(&p, &quad).unwrap();
    println!("{w:?}");
    assert!((w.predicted_exponent - 0.15).abs() < 1e-12);
    assert!((w.measured_exponent / w.predicted_exponent - 1.0).abs() < 0.1, "{w:?}");
    assert!(w.norms.windows(2).all(|n| n[1] > n[0]));
    let ok = DecayQuadruple::from_values(2, 0, 2, 0).unwrap();
    assert!(matches!(necessity_witness_origin(&p, &ok), Err(crate::Error::Precondition(_))));
    assert!(matches!(necessity_witness_origin(&heat3(), &ok), Err(crate::Error::Precondition(_))));
}

#[test]
fn translation_witness_growth() {
    let w = necessity_witness_translation(&heat3(), 0.0, 1.0, 2.0, 2.0).unwrap();
    println!("{w:?}");
    let last = *w.growth.last().unwrap();
    assert!((last / 2.0 - 1.0).abs() < 0.1, "{w:?}");
    assert!(necessity_witness_translation(&heat3(), 1.0, 1.0, 2.0, 2.0).is_err());
    assert!(necessity_witness_translation(&heat3(), 1.0, 0.0, 2.0, 2.0).is_err());
}
