//! Scalar exponents of the inverse-square heat problem.
//!
//! Everything here is a closed-form expression in the parameters
//! `(d, a, gamma, alpha)` and the weighted Lebesgue exponents `(q, s)`. The
//! arithmetic runs on [`Num`], so rational inputs produce correctly rounded
//! outputs and exact tie information for the classifier.

use crate::config::Config;
use crate::error::{Error, Result};
use crate::exact::{Num, TIE_TOLERANCE};

/// One instance of `u_t - Δu + a|x|^{-2}u = |x|^γ F(u)` in `R^d`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProblemParams {
    d: u32,
    a: Num,
    gamma: Num,
    alpha: Num,
    mu: i8,
    sigma_minus: Num,
    sigma_plus: Num,
    nu: Num,
}

impl ProblemParams {
    /// Validates `d ≥ 2`, `a ≥ a_* = -((d-2)/2)^2` (with a `1e-12` allowance so
    /// the critical coupling itself is accepted), `alpha > 1` and
    /// `mu ∈ {-1, 0, 1}`.
    pub fn new(
        d: u32,
        a: impl Into<Num>,
        gamma: impl Into<Num>,
        alpha: impl Into<Num>,
        mu: i8,
    ) -> Result<ProblemParams> {
        let (a, gamma, alpha) = (a.into(), gamma.into(), alpha.into());
        if d < 2 {
            return Err(Error::domain(format!("dimension d = {d} must be at least 2")));
        }
        if ![a, gamma, alpha].iter().all(|x| x.value().is_finite()) {
            return Err(Error::domain("a, gamma and alpha must be finite"));
        }
        let half = Num::ratio(d as i64 - 2, 2);
        let a_star = -(half * half);
        let mut disc = Num::int((d as i64 - 2) * (d as i64 - 2)) + a * 4;
        if disc.value() < 0.0 || (disc.is_exact() && disc.exact().unwrap().0 < 0) {
            if disc.is_exact() || a.value() < a_star.value() - TIE_TOLERANCE {
                return Err(Error::domain(format!(
                    "coupling a = {} lies below a_* = -((d-2)/2)^2 = {}",
                    a.value(),
                    a_star.value()
                )));
            }
            disc = Num::int(0);
        }
        if alpha.value() <= 1.0 {
            return Err(Error::domain(format!("alpha = {} must exceed 1", alpha.value())));
        }
        if !(-1..=1).contains(&mu) {
            return Err(Error::domain(format!("mu = {mu} must be -1, 0 or 1")));
        }
        let root = disc.sqrt();
        let dm2 = Num::int(d as i64 - 2);
        Ok(ProblemParams {
            d,
            a,
            gamma,
            alpha,
            mu,
            sigma_minus: (dm2 - root) / 2,
            sigma_plus: (dm2 + root) / 2,
            nu: root / 2,
        })
    }

    /// Reads `d`, `a`, `gamma` (default 0), `alpha` (default 2) and `mu`
    /// (default 1).
    pub fn from_config(cfg: &Config) -> Result<ProblemParams> {
        let d = cfg
            .int("d")?
            .ok_or_else(|| Error::Parse { line: 0, message: "missing key `d`".into() })?;
        let d = u32::try_from(d).map_err(|_| Error::domain(format!("invalid dimension {d}")))?;
        let mu = cfg.int("mu")?.unwrap_or(1);
        ProblemParams::new(
            d,
            cfg.num("a")?.unwrap_or(Num::int(0)),
            cfg.num("gamma")?.unwrap_or(Num::int(0)),
            cfg.num("alpha")?.unwrap_or(Num::int(2)),
            i8::try_from(mu).map_err(|_| Error::domain(format!("mu = {mu} must be -1, 0 or 1")))?,
        )
    }

    /// The same instance with a different nonlinearity sign.
    pub fn with_mu(mut self, mu: i8) -> Result<ProblemParams> {
        if !(-1..=1).contains(&mu) {
            return Err(Error::domain(format!("mu = {mu} must be -1, 0 or 1")));
        }
        self.mu = mu;
        Ok(self)
    }

    pub fn d(&self) -> u32 {
        self.d
    }
    pub fn a(&self) -> f64 {
        self.a.value()
    }
    pub fn gamma(&self) -> f64 {
        self.gamma.value()
    }
    pub fn alpha(&self) -> f64 {
        self.alpha.value()
    }
    pub fn mu(&self) -> i8 {
        self.mu
    }
    pub fn sigma_minus(&self) -> f64 {
        self.sigma_minus.value()
    }
    pub fn sigma_plus(&self) -> f64 {
        self.sigma_plus.value()
    }
    /// Bessel order `ν = ½√((d-2)² + 4a)`.
    pub fn nu(&self) -> f64 {
        self.nu.value()
    }

    pub fn a_num(&self) -> Num {
        self.a
    }
    pub fn gamma_num(&self) -> Num {
        self.gamma
    }
    pub fn alpha_num(&self) -> Num {
        self.alpha
    }
    pub fn d_num(&self) -> Num {
        Num::int(self.d as i64)
    }
    pub fn sigma_minus_num(&self) -> Num {
        self.sigma_minus
    }
    pub fn sigma_plus_num(&self) -> Num {
        self.sigma_plus
    }

    /// Upper end of the scaling window, `σ₊ + 2 = d - σ₋`.
    pub fn upper_window_num(&self) -> Num {
        self.sigma_plus + 2
    }

    /// `τ_c = (2+γ)/(α-1)`.
    pub fn tau_c_num(&self) -> Num {
        (self.gamma + 2) / (self.alpha - 1)
    }

    /// `α_F = 1 + (2+γ)⁺/(σ₊+2)`.
    pub fn fujita_num(&self) -> Num {
        Num::int(1) + (self.gamma + 2).pos() / self.upper_window_num()
    }

    /// The Fujita exponent of the potential-free problem, `1 + (2+γ)⁺/d`.
    pub fn fujita_free_num(&self) -> Num {
        Num::int(1) + (self.gamma + 2).pos() / self.d_num()
    }
}

/// A weighted Lebesgue space `L^q_s` with `1 < q < ∞`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpacePair {
    q: Num,
    s: Num,
}

impl SpacePair {
    pub fn new(q: impl Into<Num>, s: impl Into<Num>) -> Result<SpacePair> {
        let (q, s) = (q.into(), s.into());
        if !(q.value() > 1.0 && q.value().is_finite()) {
            return Err(Error::domain(format!("Lebesgue exponent q = {} must lie in (1, inf)", q.value())));
        }
        if !s.value().is_finite() {
            return Err(Error::domain("weight power s must be finite"));
        }
        Ok(SpacePair { q, s })
    }

    /// Reads the keys `q{suffix}` and `s{suffix}` (`s` defaults to 0).
    pub fn from_config(cfg: &Config, suffix: &str) -> Result<SpacePair> {
        let q = cfg.require_num(&format!("q{suffix}"))?;
        let s = cfg.num(&format!("s{suffix}"))?.unwrap_or(Num::int(0));
        SpacePair::new(q, s)
    }

    pub fn q(&self) -> f64 {
        self.q.value()
    }
    pub fn s(&self) -> f64 {
        self.s.value()
    }
    pub fn q_num(&self) -> Num {
        self.q
    }
    pub fn s_num(&self) -> Num {
        self.s
    }

    /// Scaling index `τ = s + d/q`.
    pub fn tau_num(&self, d: u32) -> Num {
        self.s + Num::int(d as i64) / self.q
    }

    pub fn tau(&self, d: u32) -> f64 {
        self.tau_num(d).value()
    }

    /// Hölder conjugate exponent `q' = q/(q-1)`.
    pub fn conjugate_q_num(&self) -> Num {
        self.q / (self.q - 1)
    }
}

/// Source and target spaces of a dissipative estimate
/// `‖e^{-tL}f‖_{L^{q₂}_{s₂}} ≤ C t^e ‖f‖_{L^{q₁}_{s₁}}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecayQuadruple {
    pub source: SpacePair,
    pub target: SpacePair,
}

impl DecayQuadruple {
    pub fn new(source: SpacePair, target: SpacePair) -> DecayQuadruple {
        DecayQuadruple { source, target }
    }

    /// Convenience constructor from `(q₁, s₁, q₂, s₂)`.
    pub fn from_values(q1: impl Into<Num>, s1: impl Into<Num>, q2: impl Into<Num>, s2: impl Into<Num>) -> Result<Self> {
        Ok(DecayQuadruple::new(SpacePair::new(q1, s1)?, SpacePair::new(q2, s2)?))
    }

    pub fn reversed(&self) -> DecayQuadruple {
        DecayQuadruple { source: self.target, target: self.source }
    }

    /// `-(d/2)(1/q₁ - 1/q₂) - (s₁ - s₂)/2`.
    pub fn exponent_num(&self, d: u32) -> Num {
        let dn = Num::int(d as i64);
        -(dn / 2) * (self.source.q.recip() - self.target.q.recip()) - (self.source.s - self.target.s) / 2
    }
}

/// `(σ₋, σ₊)`, the roots of `s² - (d-2)s - a = 0` in increasing order.
pub fn indicial_roots(p: &ProblemParams) -> (f64, f64) {
    (p.sigma_minus(), p.sigma_plus())
}

/// `α_F = 1 + (2+γ)⁺/(σ₊+2)`.
pub fn fujita_exponent(p: &ProblemParams) -> f64 {
    p.fujita_num().value()
}

/// `τ_c = (2+γ)/(α-1)`.
pub fn critical_index(p: &ProblemParams) -> f64 {
    p.tau_c_num().value()
}

/// Weight `s_c = τ_c - d/q` making `L^q_{s}` scale-critical.
pub fn critical_weight(p: &ProblemParams, q: f64) -> f64 {
    critical_index(p) - p.d() as f64 / q
}

/// Lebesgue exponent `q_c = d/(τ_c - s)` making `L^{q}_s` scale-critical, if
/// it lies in `(1, ∞)`.
pub fn critical_lebesgue(p: &ProblemParams, s: f64) -> Option<f64> {
    let q = p.d() as f64 / (critical_index(p) - s);
    (q > 1.0 && q.is_finite()).then_some(q)
}

/// The sharp power of `t` in the dissipative estimate.
pub fn decay_exponent(p: &ProblemParams, quad: &DecayQuadruple) -> f64 {
    quad.exponent_num(p.d()).value()
}

/// Large-time power of `‖e^{-tL}f‖_{L^{q}_{s}}` for a fixed nonnegative,
/// compactly supported, nonzero `f`: `-(σ₊ + 2 - s - d/q)/2`.
///
/// Such data behave like the endpoint source space `(q₁, s₁) = (1, -σ₋)`, so
/// this is generally steeper than [`decay_exponent`].
pub fn compact_data_decay_exponent(p: &ProblemParams, target: &SpacePair) -> f64 {
    -(p.upper_window_num() - target.tau_num(p.d())).value() / 2.0
}

/// Kato time-weight exponent `β = ½(s + d/q - k - d/p)`.
pub fn kato_beta(d: u32, k: f64, s: f64, p: f64, q: f64) -> f64 {
    let d = d as f64;
    0.5 * (s + d / q - k - d / p)
}

/// Lifespan exponent `κ = (2+γ)/(2(α-1)) - β/2` for data `λ|x|^{-β}`.
pub fn lifespan_kappa(p: &ProblemParams, beta_data: f64) -> f64 {
    (p.tau_c_num() / 2).value() - beta_data / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params(d: u32, a: Num) -> ProblemParams {
        ProblemParams::new(d, a, 0, 2, 1).unwrap()
    }

    #[test]
    fn figure_roots_are_exact() {
        let p = params(3, Num::ratio(-15, 64));
        assert_eq!(indicial_roots(&p), (0.375, 0.625));
        assert_eq!(p.upper_window_num().value(), 21.0 / 8.0);
        let p = params(3, Num::ratio(3, 4));
        assert_eq!(indicial_roots(&p), (-0.5, 1.5));
        assert_eq!(p.upper_window_num().value(), 3.5);
    }

    #[test]
    fn free_problem_and_critical_coupling() {
        for d in 2..8 {
            let p = params(d, Num::int(0));
            assert_eq!(indicial_roots(&p), (0.0, d as f64 - 2.0));
        }
        let p = params(4, Num::int(-1));
        assert_eq!(indicial_roots(&p), (1.0, 1.0));
        assert_eq!(p.nu(), 0.0);
        // Float input a hair below a_* is admitted as the critical coupling.
        let p = ProblemParams::new(4, -1.0 - 1e-13, 0, 2, 1).unwrap();
        assert_eq!(p.nu(), 0.0);
    }

    #[test]
    fn subcritical_coupling_rejected_with_threshold() {
        let err = ProblemParams::new(3, Num::ratio(-1, 2), 0, 2, 1).unwrap_err();
        assert!(err.to_string().contains("a_*"), "{err}");
        assert!(ProblemParams::new(3, -0.26, 0, 2, 1).is_err());
        assert!(ProblemParams::new(1, 0, 0, 2, 1).is_err());
        assert!(ProblemParams::new(3, 0, 0, 1, 1).is_err());
        assert!(ProblemParams::new(3, 0, 0, 2, 2).is_err());
    }

    #[test]
    fn fujita_values() {
        let p = ProblemParams::new(3, Num::ratio(3, 4), 1, 2, 1).unwrap();
        assert_eq!(fujita_exponent(&p), 13.0 / 7.0);
        let p = ProblemParams::new(3, 0, 0, 2, 1).unwrap();
        assert_eq!(fujita_exponent(&p), 5.0 / 3.0);
        let p = ProblemParams::new(5, 1, -3, 2, 1).unwrap();
        assert_eq!(fujita_exponent(&p), 1.0);
    }

    #[test]
    fn critical_index_values() {
        let p = ProblemParams::new(3, 0, 1, 2, 1).unwrap();
        assert_eq!(critical_index(&p), 3.0);
        let p = ProblemParams::new(3, 0, Num::ratio(1, 10), Num::ratio(31, 10), 1).unwrap();
        assert_eq!(critical_index(&p), 1.0);
        let p = ProblemParams::new(3, 0, -2, 5, 1).unwrap();
        assert_eq!(critical_index(&p), 0.0);
        let p = ProblemParams::new(3, 0, 0, 3, 1).unwrap();
        assert_eq!(critical_weight(&p, 3.0), 0.0);
        assert_eq!(critical_lebesgue(&p, 0.0), Some(3.0));
    }

    #[test]
    fn decay_exponent_values() {
        let p = params(3, Num::int(0));
        let e = |q1: f64, s1: f64, q2: f64, s2: f64| {
            decay_exponent(&p, &DecayQuadruple::from_values(q1, s1, q2, s2).unwrap())
        };
        assert_eq!(e(2.0, 0.0, 4.0, 0.0), -0.375);
        assert_eq!(e(3.0, 0.5, 3.0, 0.5), 0.0);
        assert_eq!(e(2.0, 1.0, 2.0, 0.0), -0.5);
        let target = SpacePair::new(4, 0).unwrap();
        assert_eq!(compact_data_decay_exponent(&p, &target), -1.125);
    }

    #[test]
    fn kato_beta_and_kappa_values() {
        assert_eq!(kato_beta(3, 0.5, 0.5, 4.0, 4.0), 0.0);
        assert_eq!(kato_beta(3, 0.0, 0.0, 6.0, 2.0), 0.5);
        assert_eq!(kato_beta(3, 0.0, 1.0, 6.0, 3.0), 0.75);
        let p = ProblemParams::new(3, 0, 0, 2, 1).unwrap();
        assert_eq!(lifespan_kappa(&p, 1.0), 0.5);
        assert_eq!(lifespan_kappa(&p, critical_index(&p)), 0.0);
        let p = ProblemParams::new(3, 0, 1, 2, 1).unwrap();
        assert_eq!(lifespan_kappa(&p, 2.0), 0.5);
    }

    fn ulps(x: f64, y: f64) -> f64 {
        (x - y).abs() / (f64::EPSILON * x.abs().max(y.abs()).max(1.0))
    }

    proptest! {
        #[test]
        fn vieta_relations(d in 2u32..9, excess in 0.0f64..20.0) {
            let a = -((d as f64 - 2.0) / 2.0).powi(2) + excess;
            let p = ProblemParams::new(d, Num::float(a), 0, 2, 1).unwrap();
            let (sm, sp) = indicial_roots(&p);
            prop_assert!(sm <= sp);
            prop_assert!(ulps(sm + sp, d as f64 - 2.0) <= 4.0);
            prop_assert!(ulps(sm * sp, -a) <= 4.0 * (1.0 + sp.abs().max(sm.abs())));
            prop_assert!((p.nu() - (sp - sm) / 2.0).abs() <= 4.0 * f64::EPSILON * (1.0 + p.nu()));
            prop_assert!(ulps(sp + 2.0, d as f64 - sm) <= 4.0);
        }

        #[test]
        fn roots_monotone_in_coupling(d in 3u32..9, a1 in -2.0f64..10.0, gap in 1e-3f64..5.0) {
            let a_star = -((d as f64 - 2.0) / 2.0).powi(2);
            let a1 = a1.max(a_star);
            let p1 = ProblemParams::new(d, Num::float(a1), 0, 2, 1).unwrap();
            let p2 = ProblemParams::new(d, Num::float(a1 + gap), 0, 2, 1).unwrap();
            prop_assert!(p2.sigma_minus() < p1.sigma_minus());
            prop_assert!(p2.sigma_plus() > p1.sigma_plus());
        }

        #[test]
        fn sign_of_sigma_minus_tracks_coupling(d in 3u32..9, a in -2.0f64..10.0) {
            let a = a.max(-((d as f64 - 2.0) / 2.0).powi(2));
            let p = ProblemParams::new(d, Num::float(a), 0, 2, 1).unwrap();
            let sm = p.sigma_minus();
            prop_assert_eq!(sm > 0.0, a < 0.0);
            prop_assert_eq!(sm < 0.0, a > 0.0);
        }

        #[test]
        fn decay_exponent_antisymmetric(d in 2u32..9, q1 in 1.01f64..20.0, q2 in 1.01f64..20.0,
                                        s1 in -5.0f64..5.0, s2 in -5.0f64..5.0) {
            let p = ProblemParams::new(d, 0, 0, 2, 1).unwrap();
            let quad = DecayQuadruple::from_values(Num::float(q1), Num::float(s1), Num::float(q2), Num::float(s2)).unwrap();
            let sum = decay_exponent(&p, &quad) + decay_exponent(&p, &quad.reversed());
            prop_assert!(sum.abs() < 1e-12);
        }

        #[test]
        fn fujita_at_least_one(d in 2u32..9, gamma in -6.0f64..6.0, excess in 0.0f64..5.0) {
            let a = -((d as f64 - 2.0) / 2.0).powi(2) + excess;
            let p = ProblemParams::new(d, Num::float(a), Num::float(gamma), 2, 1).unwrap();
            let f = fujita_exponent(&p);
            prop_assert!(f >= 1.0);
            prop_assert_eq!(f == 1.0, gamma <= -2.0);
        }

        #[test]
        fn kato_beta_is_affine(d in 2u32..9, k in -3.0f64..3.0, s in -3.0f64..3.0,
                               p in 1.1f64..20.0, q in 1.1f64..20.0) {
            let h = 1e-3;
            let b = kato_beta(d, k, s, p, q);
            let df = d as f64;
            let tol = 1e-9;
            prop_assert!(((kato_beta(d, k, s + h, p, q) - b) / h - 0.5).abs() < tol);
            prop_assert!(((kato_beta(d, k + h, s, p, q) - b) / h + 0.5).abs() < tol);
            // Exact linearity in 1/q and 1/p.
            let bq = kato_beta(d, k, s, p, 1.0 / (1.0 / q + h));
            prop_assert!(((bq - b) / h - df / 2.0).abs() < 1e-8 * df);
            let bp = kato_beta(d, k, s, 1.0 / (1.0 / p + h), q);
            prop_assert!(((bp - b) / h + df / 2.0).abs() < 1e-8 * df);
        }
    }
}
