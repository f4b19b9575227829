mod common;

use common::{gaussian_spherical_mean, kernel_mass, sandwich_cases, sandwich_ratio, SANDWICH_C};
use hhlab::besselkernel::{bessel_i_scaled, RadialKernel};
use hhlab::{Num, ProblemParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn params(d: u32, a: Num) -> ProblemParams {
    ProblemParams::new(d, a, 0, 2, 1).unwrap()
}

#[test]
fn scaled_bessel_matches_stored_oracle_table() {
    let text = include_str!("fixtures/bessel_oracle.csv");
    let mut rows = 0;
    let mut worst = 0.0f64;
    for line in text.lines().skip(1) {
        let cols: Vec<f64> = line.split(',').map(|c| c.trim().parse().unwrap()).collect();
        let (nu, z, want) = (cols[0], cols[1], cols[2]);
        let got = bessel_i_scaled(nu, z).unwrap();
        let rel = ((got - want) / want).abs();
        assert!(rel <= 1e-10, "nu = {nu}, z = {z}: {got} vs {want}");
        worst = worst.max(rel);
        rows += 1;
    }
    assert_eq!(rows, 200);
    println!("worst relative error over the oracle table: {worst:.2e}");
}

#[test]
fn free_kernel_is_the_gaussian_spherical_mean() {
    let p = params(3, Num::int(0));
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let t = 10f64.powf(rng.gen_range(-3.0..3.0));
        let r = 10f64.powf(rng.gen_range(-3.0..3.0));
        let rho = r * 10f64.powf(rng.gen_range(-0.5..0.5));
        let k = RadialKernel::new(&p, t).unwrap();
        let want = gaussian_spherical_mean(t, r, rho);
        if want < 1e-300 {
            continue;
        }
        let got = k.eval(r, rho);
        assert!(((got - want) / want).abs() < 1e-10, "t={t} r={r} rho={rho}: {got} vs {want}");
    }
}

#[test]
fn free_kernel_conserves_mass() {
    for d in [2, 3, 5] {
        let p = params(d, Num::int(0));
        for t in [0.01, 1.0, 100.0] {
            let k = RadialKernel::new(&p, t).unwrap();
            for r in [0.1, 1.0, 10.0] {
                let m = kernel_mass(&k, r);
                assert!((m - 1.0).abs() < 1e-8, "d={d} t={t} r={r}: {m}");
            }
        }
    }
}

#[test]
fn kernel_scaling_covariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for a in [Num::ratio(-15, 64), Num::int(0), Num::ratio(3, 4), Num::int(5)] {
        let p = params(3, a);
        for _ in 0..50 {
            let t = 10f64.powf(rng.gen_range(-2.0..2.0));
            let r = 10f64.powf(rng.gen_range(-2.0..2.0));
            let rho = 10f64.powf(rng.gen_range(-2.0..2.0));
            let lambda: f64 = rng.gen_range(0.1..10.0);
            let g = RadialKernel::new(&p, t).unwrap().eval(r, rho);
            let scaled = RadialKernel::new(&p, lambda * lambda * t).unwrap().eval(lambda * r, lambda * rho);
            if g < 1e-290 {
                continue;
            }
            assert!((scaled * lambda.powi(3) / g - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn kernel_lies_in_the_fitted_sandwich() {
    // The lower bound uses c₁, the upper c₂. Bounds were measured once on
    // 40000 samples and widened by 25%.
    let (c1, c2) = SANDWICH_C;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (a, lower, upper) in sandwich_cases() {
        let p = params(3, a);
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for _ in 0..1000 {
            let t = 10f64.powf(rng.gen_range(-3.0..3.0));
            let r = 10f64.powf(rng.gen_range(-3.0..3.0));
            let rho = r * 10f64.powf(rng.gen_range(-1.0..1.0));
            let below = sandwich_ratio(&p, c1, t, r, rho);
            let above = sandwich_ratio(&p, c2, t, r, rho);
            assert!(below >= lower, "a={a}: lower ratio {below} at t={t} r={r} rho={rho}");
            assert!(above <= upper, "a={a}: upper ratio {above} at t={t} r={r} rho={rho}");
            lo = lo.min(below);
            hi = hi.max(above);
        }
        println!("a = {a}: min lower ratio {lo:.4}, max upper ratio {hi:.4}");
    }
}
