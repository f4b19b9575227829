use hhlab::dynamics::{DuhamelOperator, Frames, KatoExponents, NonlinearityKind, NonlinearitySpec, TimeGrid};
use hhlab::radialcore::{RadialFunction, RadialGrid};
use hhlab::{ProblemParams, SpacePair};

/// One Duhamel step in the subcritical smoke case agrees with a reference
/// computed with four times as many nodes in `r` and in the time quadrature.
#[test]
fn smoke_step_self_converges() {
    let p = ProblemParams::new(3, 0, 0, 2, 1).unwrap();
    let nl = NonlinearitySpec::for_params(&p, NonlinearityKind::SignedPower);
    let sp = SpacePair::new(4, 0).unwrap();
    let kato = KatoExponents::for_space(&p, &sp).unwrap();
    // 128 nodes per decade; 64 per decade misses the tolerance (3.0e-4).
    let n = 3 * 128 + 1;
    let coarse = RadialGrid::new(1e-2, 1e1, n).unwrap();
    let fine = RadialGrid::new(1e-2, 1e1, 4 * (n - 1) + 1).unwrap();
    let t_end = 1.0;
    let t_floor = Some(1e-3);
    let amp = 0.5;

    let run = |grid, nodes, streaming: bool| -> (DuhamelOperator, Frames) {
        let time = TimeGrid { t_floor, stride: 1, quadrature_nodes: nodes };
        let op = if streaming {
            DuhamelOperator::new_streaming(&p, &nl, &grid, t_end, kato, &time).unwrap()
        } else {
            DuhamelOperator::new(&p, &nl, &grid, t_end, kato, &time).unwrap()
        };
        let u0 = RadialFunction::from_fn(grid.clone(), |r| amp * (-r * r).exp()).unwrap();
        let lin = op.linear_frames(u0.values());
        let out = op.step(u0.values(), &lin, &lin).unwrap().unwrap();
        // Keep only the Duhamel term for the diagnostic below.
        let duhamel = out.iter().zip(&lin).map(|(o, l)| o.iter().zip(l).map(|(a, b)| a - b).collect()).collect();
        (op, [out, duhamel].concat())
    };
    let (op_c, res_c) = run(coarse.clone(), 24, false);
    let (op_f, res_f) = run(fine.clone(), 96, true);
    let frames_c = op_c.times().len();
    let frames_f = op_f.times().len();

    // Coarse times and nodes are a subset of the fine ones.
    let pick = |k: usize| -> usize {
        let t = op_c.times()[k];
        op_f.times().iter().position(|s| (s / t - 1.0).abs() < 1e-10).expect("coarse time on fine lattice")
    };
    let restrict = |f: &[f64]| -> Vec<f64> { (0..n).map(|i| f[4 * i]).collect() };
    let split = |res: &Frames, len: usize| -> (Frames, Frames) { (res[..len].to_vec(), res[len..].to_vec()) };
    let (out_c, duh_c) = split(&res_c, frames_c);
    let (out_f, duh_f) = split(&res_f, frames_f);
    let out_f: Frames = (0..frames_c).map(|k| restrict(&out_f[pick(k)])).collect();
    let duh_f: Frames = (0..frames_c).map(|k| restrict(&duh_f[pick(k)])).collect();

    let rel = op_c.kato_distance(&out_c, &out_f).unwrap() / op_c.kato_norm(&out_f).unwrap();
    let rel_duhamel = op_c.kato_distance(&duh_c, &duh_f).unwrap() / op_c.kato_norm(&duh_f).unwrap();
    println!("step: relative Kato difference {rel:.3e}; Duhamel term alone {rel_duhamel:.3e}");
    assert!(rel < 1e-4);
}
