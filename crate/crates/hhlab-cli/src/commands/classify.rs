//! `classify`: one `key = value` verdict per line on stdout, mirrored in
//! `classify.csv`, plus an optional seeded admissibility sweep.

use hhlab::exponents::decay_exponent;
use hhlab::regime::{blowup_inequality, choose_kato_params, dissipative_admissible, duality_image, lwp_verdict};
use hhlab::{DecayQuadruple, Num, SpacePair};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::nonlinearity;
use crate::context::{CliError, Context};
use crate::output::Csv;

fn quoted(value: &str) -> String {
    if value.contains([',', '"']) {
        format!("\"{}\"", value.replace('"', "\"\""))
    } else {
        value.to_string()
    }
}

pub fn run(ctx: &mut Context) -> Result<(), CliError> {
    let p = ctx.params()?;
    let nl = nonlinearity(ctx, &p)?;
    let mut lines: Vec<(&str, String)> = vec![
        ("d", p.d().to_string()),
        ("a", p.a_num().to_string()),
        ("gamma", p.gamma_num().to_string()),
        ("alpha", p.alpha_num().to_string()),
        ("mu", p.mu().to_string()),
        ("nonlinearity", nl.kind().to_string()),
        ("sigma_minus", p.sigma_minus_num().to_string()),
        ("sigma_plus", p.sigma_plus_num().to_string()),
        ("sigma_plus_plus_2", p.upper_window_num().to_string()),
        ("tau_c", p.tau_c_num().to_string()),
        ("alpha_fujita", p.fujita_num().to_string()),
        ("alpha_fujita_free", p.fujita_free_num().to_string()),
        ("blowup_inequality", blowup_inequality(&p).to_string()),
    ];
    if ctx.config.contains("q") {
        let sp = SpacePair::from_config(&ctx.config, "")?;
        let v = lwp_verdict(&p, &sp, nl.is_sign_compatible());
        lines.extend([
            ("q", sp.q_num().to_string()),
            ("s", sp.s_num().to_string()),
            ("tau", sp.tau_num(p.d()).to_string()),
            ("criticality", format!("{:?}", v.criticality).to_lowercase()),
            ("lwp", v.lwp.to_string()),
            ("uniqueness_in_c", v.uniqueness_in_c.to_string()),
            ("small_data_global", v.small_data_global.to_string()),
            ("blowup_data_exists", v.blowup_data_exists.to_string()),
            ("nonexistence", v.nonexistence.to_string()),
            ("existence_class", v.existence_class().to_string()),
        ]);
        if v.lwp {
            let k = choose_kato_params(&p, &sp)?;
            lines.extend([
                ("kato_p", k.p().to_string()),
                ("kato_k", k.k().to_string()),
                ("kato_beta", k.beta(p.d(), &sp).to_string()),
            ]);
        }
        for h in &v.lwp_failures {
            lines.push(("failed", h.to_string()));
        }
        for w in &v.warnings {
            lines.push(("warning", w.clone()));
        }
    }
    if ctx.config.contains("q1") {
        let quad = DecayQuadruple::new(SpacePair::from_config(&ctx.config, "1")?, SpacePair::from_config(&ctx.config, "2")?);
        let ok = dissipative_admissible(&p, &quad);
        lines.push(("dissipative_admissible", ok.to_string()));
        if ok {
            lines.push(("decay_exponent", decay_exponent(&p, &quad).to_string()));
        }
    }
    if let Some(n) = ctx.config.int("sweep")? {
        let n = usize::try_from(n).map_err(|_| CliError::usage("sweep must be non-negative"))?;
        let (admissible, csv) = sweep(&p, n, ctx.seed);
        lines.push(("sweep_admissible", format!("{admissible}/{n}")));
        ctx.write("classify_sweep.csv", &csv)?;
    }

    let mut csv = Csv::new(
        &["verdicts for one parameter set; numbers are exact where the inputs are rational", "units: dimensionless"],
        &["key", "value"],
    );
    for (k, v) in &lines {
        println!("{k} = {v}");
        csv.row(&[k.to_string(), quoted(v)]);
    }
    ctx.write("classify.csv", &csv.into_string())
}

/// Random rational quadruples `q = n/m ∈ (1, 8]`, `s = k/4 ∈ [-3, 3]`.
fn sweep(p: &hhlab::ProblemParams, n: usize, seed: u64) -> (usize, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut csv = Csv::new(
        &[
            &format!("random decay quadruples, seed {seed}"),
            "admissible: sigma_- < d/q2 + s2 <= d/q1 + s1 < sigma_+ + 2 and s2 <= s1",
            "dual_admissible: the same test on (q2', -s2, q1', -s1) with q' the conjugate exponent",
        ],
        &["q1", "s1", "q2", "s2", "admissible", "dual_admissible"],
    );
    let mut count = 0;
    for _ in 0..n {
        let mut space = || {
            let m: i64 = rng.gen_range(1..=4);
            let q = Num::ratio(rng.gen_range(m + 1..=8 * m), m);
            let s = Num::ratio(rng.gen_range(-12..=12), 4);
            SpacePair::new(q, s).expect("q > 1")
        };
        let quad = DecayQuadruple::new(space(), space());
        let ok = dissipative_admissible(p, &quad);
        let dual = dissipative_admissible(p, &duality_image(&quad));
        count += ok as usize;
        csv.row(&[
            quad.source.q().to_string(),
            quad.source.s().to_string(),
            quad.target.q().to_string(),
            quad.target.s().to_string(),
            ok.to_string(),
            dual.to_string(),
        ]);
    }
    (count, csv.into_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quoting() {
        assert_eq!(quoted("plain"), "plain");
        assert_eq!(quoted("a, b"), "\"a, b\"");
        assert_eq!(quoted("say \"x\", y"), "\"say \"\"x\"\", y\"");
    }

    #[test]
    fn sweep_is_seeded() {
        let p = hhlab::ProblemParams::new(3, 0, 0, 2, 1).unwrap();
        assert_eq!(sweep(&p, 50, 1), sweep(&p, 50, 1));
        assert_ne!(sweep(&p, 50, 1).1, sweep(&p, 50, 2).1);
    }
}
