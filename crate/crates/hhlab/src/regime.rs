//! Parameter-space classification.
//!
//! Given `(d, a, γ, α)` and a data space `L^q_s`, decide which of the
//! analytic regimes applies: admissibility of the dissipative estimate,
//! criticality, local well-posedness, unconditional uniqueness, small-data
//! global existence, existence of blow-up data, and nonexistence of local
//! solutions. Every inequality is encoded with the strictness it is stated
//! with. Comparisons run on [`Num`], so rational inputs resolve ties exactly;
//! floating ties within `1e-12` count as equality and leave a warning in the
//! verdict.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::Num;
use crate::exponents::{DecayQuadruple, ProblemParams, SpacePair};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Criticality {
    Subcritical,
    Critical,
    Supercritical,
}

/// Three-valued applicability of a theorem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    /// Hypotheses hold; the conclusion is guaranteed.
    Holds,
    /// Hypotheses fail, or another result rules the conclusion out.
    Fails,
    /// The parameters sit in a region the theory leaves open.
    Unknown,
}

impl Status {
    pub fn holds(self) -> bool {
        self == Status::Holds
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "true",
            Status::Fails => "false",
            Status::Unknown => "unknown",
        })
    }
}

/// Individual inequalities a parameter set can violate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Hypothesis {
    GammaRange,
    AlphaRange,
    WeightFloor,
    WeightOrigin,
    WindowLower,
    WindowUpper,
    Criticality,
    StrictSubcritical,
    LebesgueAboveAlpha,
    UniquenessWindow,
    SignCompatible,
    BlowupCondition,
    FreeFujita,
    PlanarCoupling,
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Hypothesis::GammaRange => "gamma > -2 (needed when a <= 0)",
            Hypothesis::AlphaRange => {
                "alpha range: 1 < alpha < 1 + (gamma+2)/sigma_- if a <= 0, alpha > 1 + max((gamma+2)/sigma_-, 0) if a > 0"
            }
            Hypothesis::WeightFloor => "s >= gamma/(alpha-1)",
            Hypothesis::WeightOrigin => "s > sigma_- - d/alpha",
            Hypothesis::WindowLower => "sigma_- < tau",
            Hypothesis::WindowUpper => "tau < sigma_+ + 2",
            Hypothesis::Criticality => "tau > tau_c (supercritical scaling)",
            Hypothesis::StrictSubcritical => "tau < tau_c",
            Hypothesis::LebesgueAboveAlpha => "q > alpha",
            Hypothesis::UniquenessWindow => "tau < (sigma_+ + 2 + gamma)/alpha",
            Hypothesis::SignCompatible => "F not sign-compatible (needs F(z) = z^alpha for z >= 0)",
            Hypothesis::BlowupCondition => "d + gamma < alpha*d if a = 0, d + gamma < alpha*(d-2) if a != 0",
            Hypothesis::FreeFujita => "alpha > 1 + (2+gamma)^+/d",
            Hypothesis::PlanarCoupling => "d = 2 with a != 0 is not covered by the blow-up theorem",
        })
    }
}

/// Feasible `(k, d/p)` rectangle for the Kato parameters. The `d/p` bounds
/// are the ones valid at the chosen `k`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KatoRectangle {
    pub k_lo: f64,
    pub k_hi: f64,
    pub dinvp_lo: f64,
    pub dinvp_hi: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegimeVerdict {
    pub criticality: Criticality,
    /// Filled in by [`RegimeVerdict::with_quadruple`].
    pub dissipative_admissible: Option<bool>,
    pub lwp: bool,
    pub uniqueness_in_c: bool,
    pub small_data_global: bool,
    pub blowup_data_exists: Status,
    pub nonexistence: Status,
    pub kato_feasible: Option<KatoRectangle>,
    /// Hypotheses of local well-posedness that failed, in checking order.
    pub lwp_failures: Vec<Hypothesis>,
    /// Floating-point near-ties that were resolved as equalities.
    pub warnings: Vec<String>,
}

impl RegimeVerdict {
    /// Summary of the existence theory: `lwp`, `nonexistence` or `unknown`.
    pub fn existence_class(&self) -> &'static str {
        if self.lwp {
            "lwp"
        } else if self.nonexistence.holds() {
            "nonexistence"
        } else {
            "unknown"
        }
    }

    pub fn with_quadruple(mut self, p: &ProblemParams, quad: &DecayQuadruple) -> RegimeVerdict {
        self.dissipative_admissible = Some(dissipative_admissible(p, quad));
        self
    }

    /// One-line reason naming the first failed hypothesis.
    pub fn failure_reason(&self) -> Option<String> {
        self.lwp_failures.first().map(|h| match h {
            Hypothesis::Criticality => h.to_string(),
            _ => format!("fails {h}"),
        })
    }
}

/// Records near-tie warnings while comparing.
struct Checker {
    warnings: Vec<String>,
}

impl Checker {
    fn new() -> Checker {
        Checker { warnings: Vec::new() }
    }

    fn cmp(&mut self, lhs: Num, rhs: Num, what: &str) -> Ordering {
        let c = lhs.compare(rhs);
        if c.near_tie {
            self.warnings.push(format!("boundary: {what} ({} vs {})", lhs.value(), rhs.value()));
        }
        c.ordering
    }

    fn lt(&mut self, lhs: Num, rhs: Num, what: &str) -> bool {
        self.cmp(lhs, rhs, what) == Ordering::Less
    }

    fn le(&mut self, lhs: Num, rhs: Num, what: &str) -> bool {
        self.cmp(lhs, rhs, what) != Ordering::Greater
    }
}

/// Compare `τ = s + d/q` with `τ_c`.
pub fn classify_criticality(p: &ProblemParams, sp: &SpacePair) -> Criticality {
    criticality_of(p, sp.tau_num(p.d()), &mut Checker::new())
}

fn criticality_of(p: &ProblemParams, tau: Num, chk: &mut Checker) -> Criticality {
    match chk.cmp(tau, p.tau_c_num(), "tau = tau_c") {
        Ordering::Less => Criticality::Subcritical,
        Ordering::Equal => Criticality::Critical,
        Ordering::Greater => Criticality::Supercritical,
    }
}

/// True iff `σ₋ < d/q₂ + s₂ ≤ d/q₁ + s₁ < σ₊ + 2` and `s₂ ≤ s₁`.
pub fn dissipative_admissible(p: &ProblemParams, quad: &DecayQuadruple) -> bool {
    let d = p.d();
    let (t1, t2) = (quad.source.tau_num(d), quad.target.tau_num(d));
    let mut c = Checker::new();
    c.lt(p.sigma_minus_num(), t2, "sigma_- < tau_2")
        && c.le(t2, t1, "tau_2 <= tau_1")
        && c.lt(t1, p.upper_window_num(), "tau_1 < sigma_+ + 2")
        && c.le(quad.target.s_num(), quad.source.s_num(), "s_2 <= s_1")
}

/// Admissibility of an endpoint quadruple with `q₁` or `q₂` in `{1, ∞}`.
///
/// The open-range characterisation extends to `q₁ ∈ {1, ∞}` when
/// `s₁ = -σ₋` (the last inequality may become an equality) and to
/// `q₂ ∈ {1, ∞}` when `s₂ = σ₋` (the first may become an equality). For
/// `a = 0` and unweighted spaces all four inequalities may be equalities.
/// Returns false when neither exponent is an endpoint.
pub fn endpoint_admissible(p: &ProblemParams, q1: f64, s1: f64, q2: f64, s2: f64) -> bool {
    let is_end = |q: f64| q == 1.0 || q == f64::INFINITY;
    let in_range = |q: f64| (1.0..=f64::INFINITY).contains(&q);
    if !(in_range(q1) && in_range(q2)) || !(is_end(q1) || is_end(q2)) {
        return false;
    }
    let d = p.d() as f64;
    let (sm, upper) = (p.sigma_minus(), p.upper_window_num().value());
    let tol = 1e-12;
    let young = p.a() == 0.0 && s1 == 0.0 && s2 == 0.0;
    let src_end_ok = !is_end(q1) || young || (s1 + sm).abs() <= tol;
    let dst_end_ok = !is_end(q2) || young || (s2 - sm).abs() <= tol;
    let (t1, t2) = (s1 + d / q1, s2 + d / q2);
    let first = if dst_end_ok && is_end(q2) { sm <= t2 + tol } else { sm < t2 - tol };
    let last = if src_end_ok && is_end(q1) { t1 <= upper + tol } else { t1 < upper - tol };
    src_end_ok && dst_end_ok && first && t2 <= t1 + tol && last && s2 <= s1 + tol
}

/// `(q₂′, −s₂, q₁′, −s₁)`.
pub fn duality_image(quad: &DecayQuadruple) -> DecayQuadruple {
    let conj = |sp: &SpacePair| {
        SpacePair::new(sp.conjugate_q_num(), -sp.s_num()).expect("conjugate of q in (1, inf) is in (1, inf)")
    };
    DecayQuadruple { source: conj(&quad.target), target: conj(&quad.source) }
}

/// Membership of the `(α, τ)` point in the regions drawn in the parameter
/// plane, with the weight conditions on `s` assumed to hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Region {
    /// Local well-posedness with unconditional uniqueness.
    Unique,
    /// Local well-posedness.
    Lwp,
    /// No local solution for some positive data.
    Nonexistence,
    /// Not classified.
    Unknown,
}

struct ScalingPart {
    lwp: bool,
    failures: Vec<Hypothesis>,
    unique_window: Vec<Hypothesis>,
    nonexistence: Status,
}

/// `d + γ < αd` when `a = 0`, `d + γ < α(d-2)` otherwise. This is the
/// condition under which the test-function bound has a finite constant.
pub fn blowup_inequality(p: &ProblemParams) -> bool {
    blowup_condition(p, &mut Checker::new())
}

fn blowup_condition(p: &ProblemParams, chk: &mut Checker) -> bool {
    let d = p.d_num();
    let lhs = d + p.gamma_num();
    let rhs = if p.a_num().is_zero() { p.alpha_num() * d } else { p.alpha_num() * (d - 2) };
    chk.lt(lhs, rhs, "d + gamma < alpha*d'")
}

fn alpha_range(p: &ProblemParams, chk: &mut Checker) -> bool {
    let alpha = p.alpha_num();
    let sm = p.sigma_minus_num();
    let g2 = p.gamma_num() + 2;
    let one = Num::int(1);
    if chk.le(p.a_num(), Num::int(0), "a <= 0") {
        chk.lt(one, alpha, "1 < alpha") && (sm.is_zero() || chk.lt(alpha, one + g2 / sm, "alpha < 1 + (gamma+2)/sigma_-"))
    } else {
        let bound = one + (g2 / sm).max(Num::int(0));
        chk.lt(bound, alpha, "alpha > 1 + max((gamma+2)/sigma_-, 0)")
    }
}

/// The hypotheses that depend on `(q, s)` only through `τ`.
fn scaling_part(p: &ProblemParams, tau: Num, f_sign_compatible: bool, chk: &mut Checker) -> ScalingPart {
    let mut failures = Vec::new();
    if chk.le(p.a_num(), Num::int(0), "a <= 0") && !chk.lt(Num::int(-2), p.gamma_num(), "gamma > -2") {
        failures.push(Hypothesis::GammaRange);
    }
    if !alpha_range(p, chk) {
        failures.push(Hypothesis::AlphaRange);
    }
    if !chk.lt(p.sigma_minus_num(), tau, "sigma_- < tau") {
        failures.push(Hypothesis::WindowLower);
    }
    if !chk.lt(tau, p.upper_window_num(), "tau < sigma_+ + 2") {
        failures.push(Hypothesis::WindowUpper);
    }
    let crit = criticality_of(p, tau, chk);
    if crit == Criticality::Supercritical {
        failures.push(Hypothesis::Criticality);
    }
    let mut unique_window = Vec::new();
    if crit != Criticality::Subcritical {
        unique_window.push(Hypothesis::StrictSubcritical);
    }
    let uniq_bound = (p.upper_window_num() + p.gamma_num()) / p.alpha_num();
    if !chk.lt(tau, uniq_bound, "tau < (sigma_+ + 2 + gamma)/alpha") {
        unique_window.push(Hypothesis::UniquenessWindow);
    }
    let lwp = failures.is_empty();
    let nonexistence = if lwp {
        Status::Fails
    } else if crit == Criticality::Supercritical
        && f_sign_compatible
        && blowup_condition(p, chk)
        && chk.lt(p.fujita_free_num(), p.alpha_num(), "alpha > 1 + (2+gamma)^+/d")
    {
        Status::Holds
    } else if crit == Criticality::Supercritical {
        Status::Unknown
    } else {
        Status::Fails
    };
    ScalingPart { lwp, failures, unique_window, nonexistence }
}

/// Region of the `(α, τ)` plane containing the point, for fixed `(d, a, γ)`
/// taken from `base` and a sign-compatible nonlinearity.
pub fn region_at(base: &ProblemParams, alpha: f64, tau: f64) -> Result<Region> {
    let p = ProblemParams::new(base.d(), base.a_num(), base.gamma_num(), Num::float(alpha), base.mu())?;
    let part = scaling_part(&p, Num::float(tau), true, &mut Checker::new());
    Ok(if part.lwp && part.unique_window.is_empty() {
        Region::Unique
    } else if part.lwp {
        Region::Lwp
    } else if part.nonexistence.holds() {
        Region::Nonexistence
    } else {
        Region::Unknown
    })
}

/// Boundary curves of the `(α, τ)` plane, evaluated from the same
/// parameter formulas as the classifier.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BoundaryCurve {
    /// `τ = τ_c(α)`.
    TauCritical,
    /// `τ = (σ₊ + 2 + γ)/α`.
    Uniqueness,
    /// `τ = σ₋`.
    SigmaMinus,
    /// `τ = σ₊ + 2`.
    UpperWindow,
    /// `α = 1 + (2+γ)⁺/(σ₊+2)`.
    Fujita,
    /// `α = 1 + (2+γ)⁺/d`.
    FreeFujita,
    /// `α = (d+γ)/d` for `a = 0`, `α = (d+γ)/(d-2)` otherwise.
    BlowupThreshold,
}

impl BoundaryCurve {
    pub const ALL: [BoundaryCurve; 7] = [
        BoundaryCurve::TauCritical,
        BoundaryCurve::Uniqueness,
        BoundaryCurve::SigmaMinus,
        BoundaryCurve::UpperWindow,
        BoundaryCurve::Fujita,
        BoundaryCurve::FreeFujita,
        BoundaryCurve::BlowupThreshold,
    ];

    pub fn label(self) -> &'static str {
        match self {
            BoundaryCurve::TauCritical => "tau = tau_c",
            BoundaryCurve::Uniqueness => "tau = (sigma_+ + 2 + gamma)/alpha",
            BoundaryCurve::SigmaMinus => "tau = sigma_-",
            BoundaryCurve::UpperWindow => "tau = sigma_+ + 2",
            BoundaryCurve::Fujita => "alpha = alpha_F",
            BoundaryCurve::FreeFujita => "alpha = 1 + (2+gamma)^+/d",
            BoundaryCurve::BlowupThreshold => "alpha = (d+gamma)/(d-2)",
        }
    }

    /// `τ` on the curve at the given `α`, for curves that are graphs over `α`.
    pub fn tau_at(self, base: &ProblemParams, alpha: f64) -> Option<f64> {
        let p = ProblemParams::new(base.d(), base.a_num(), base.gamma_num(), Num::float(alpha), base.mu()).ok()?;
        match self {
            BoundaryCurve::TauCritical => Some(p.tau_c_num().value()),
            BoundaryCurve::Uniqueness => Some(((p.upper_window_num() + p.gamma_num()) / p.alpha_num()).value()),
            BoundaryCurve::SigmaMinus => Some(p.sigma_minus()),
            BoundaryCurve::UpperWindow => Some(p.upper_window_num().value()),
            _ => None,
        }
    }

    /// `α` of a vertical line.
    pub fn alpha_line(self, base: &ProblemParams) -> Option<f64> {
        let d = base.d_num();
        match self {
            BoundaryCurve::Fujita => Some(base.fujita_num().value()),
            BoundaryCurve::FreeFujita => Some(base.fujita_free_num().value()),
            BoundaryCurve::BlowupThreshold => {
                let den = if base.a_num().is_zero() { d } else { d - 2 };
                (den.value() > 0.0).then(|| ((d + base.gamma_num()) / den).value())
            }
            _ => None,
        }
    }
}

/// Full classification of `(p, sp)`. `f_sign_compatible` asserts that the
/// nonlinearity equals `z^α` for `z ≥ 0`, which the blow-up and
/// nonexistence statements need.
pub fn lwp_verdict(p: &ProblemParams, sp: &SpacePair, f_sign_compatible: bool) -> RegimeVerdict {
    let mut chk = Checker::new();
    let tau = sp.tau_num(p.d());
    let s = sp.s_num();
    let alpha = p.alpha_num();
    let mut failures = Vec::new();
    let part = scaling_part(p, tau, f_sign_compatible, &mut chk);
    let weight_floor = chk.le(p.gamma_num() / (alpha - 1), s, "s >= gamma/(alpha-1)");
    let weight_origin = chk.lt(p.sigma_minus_num() - p.d_num() / alpha, s, "s > sigma_- - d/alpha");
    // Keep the printed order of the hypotheses in the failure list.
    for h in &part.failures {
        if matches!(h, Hypothesis::GammaRange | Hypothesis::AlphaRange) {
            failures.push(*h);
        }
    }
    if !weight_floor {
        failures.push(Hypothesis::WeightFloor);
    }
    if !weight_origin {
        failures.push(Hypothesis::WeightOrigin);
    }
    failures.extend(part.failures.iter().filter(|h| !matches!(h, Hypothesis::GammaRange | Hypothesis::AlphaRange)));
    let lwp = failures.is_empty();
    let criticality = criticality_of(p, tau, &mut chk);
    let q_above = chk.lt(alpha, sp.q_num(), "q > alpha");
    let uniqueness_in_c = lwp && part.unique_window.is_empty() && q_above;
    let small_data_global = lwp && criticality == Criticality::Critical;
    let blowup_data_exists = if !lwp || !f_sign_compatible {
        Status::Fails
    } else if p.d() == 2 && !p.a_num().is_zero() {
        Status::Unknown
    } else if blowup_condition(p, &mut chk) {
        Status::Holds
    } else {
        Status::Fails
    };
    // A verdict that grants lwp never reports nonexistence, whatever the
    // scaling part alone says.
    let nonexistence = if lwp { Status::Fails } else { part.nonexistence };
    let kato_feasible = if lwp { kato_rectangle(p, sp).ok().map(|(rect, _, _)| rect) } else { None };
    let mut warnings = chk.warnings;
    warnings.sort();
    warnings.dedup();
    RegimeVerdict {
        criticality,
        dissipative_admissible: None,
        lwp,
        uniqueness_in_c,
        small_data_global,
        blowup_data_exists,
        nonexistence,
        kato_feasible,
        lwp_failures: failures,
        warnings,
    }
}

/// Parameters `(p, k)` of the Kato space used by the fixed-point argument.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KatoParams {
    p: Num,
    k: Num,
}

impl KatoParams {
    /// Validates every condition of the linear Kato estimate and of the
    /// nonlinear estimate for the owner `(params, sp)`.
    pub fn new(params: &ProblemParams, sp: &SpacePair, p: impl Into<Num>, k: impl Into<Num>) -> Result<KatoParams> {
        let (p, k) = (p.into(), k.into());
        let violated = kato_violations(params, sp, p, k);
        if violated.is_empty() {
            Ok(KatoParams { p, k })
        } else {
            Err(Error::Infeasible(format!(
                "(p, k) = ({}, {}) violates {}",
                p.value(),
                k.value(),
                violated.join("; ")
            )))
        }
    }

    pub fn p(&self) -> f64 {
        self.p.value()
    }
    pub fn k(&self) -> f64 {
        self.k.value()
    }

    /// The time weight `β = ½(s + d/q - k - d/p)` for data space `sp`.
    pub fn beta(&self, d: u32, sp: &SpacePair) -> f64 {
        ((sp.tau_num(d) - self.k - Num::int(d as i64) / self.p) / 2).value()
    }
}

/// List of violated conditions; written independently of the chooser.
fn kato_violations(params: &ProblemParams, sp: &SpacePair, p: Num, k: Num) -> Vec<&'static str> {
    let d = params.d_num();
    let alpha = params.alpha_num();
    let gamma = params.gamma_num();
    let sm = params.sigma_minus_num();
    let upper = params.upper_window_num();
    let tau = sp.tau_num(params.d());
    let s = sp.s_num();
    let mid = d / p + k;
    let lt = |a: Num, b: Num| a.compare(b).ordering == Ordering::Less;
    let le = |a: Num, b: Num| a.compare(b).ordering != Ordering::Greater;
    let mut out = Vec::new();
    if !le(k, s) {
        out.push("k <= s");
    }
    if !lt(sm, mid) {
        out.push("sigma_- < d/p + k");
    }
    if !le(mid, tau) {
        out.push("d/p + k <= tau");
    }
    if !lt(tau, upper) {
        out.push("tau < sigma_+ + 2");
    }
    if !le(tau, params.tau_c_num()) {
        out.push("tau <= tau_c");
    }
    if !le(gamma / (alpha - 1), k) {
        out.push("gamma/(alpha-1) <= k");
    }
    if !(lt(alpha, p) && p.value().is_finite()) {
        out.push("alpha < p < inf");
    }
    if !le((s + gamma) / alpha, k) {
        out.push("(s+gamma)/alpha <= k");
    }
    if !lt(mid, (upper + gamma) / alpha) {
        out.push("k + d/p < (sigma_+ + 2 + gamma)/alpha");
    }
    if !lt((tau + gamma) / alpha, mid) {
        out.push("(tau+gamma)/alpha < d/p + k");
    }
    if tau.compare(params.tau_c_num()).ordering == Ordering::Equal && !lt(mid, tau) {
        out.push("d/p + k < tau at criticality");
    }
    out
}

/// Feasible rectangle together with the chosen `k` and `d/p`.
fn kato_rectangle(params: &ProblemParams, sp: &SpacePair) -> Result<(KatoRectangle, Num, Num)> {
    let d = params.d_num();
    let alpha = params.alpha_num();
    let gamma = params.gamma_num();
    let s = sp.s_num();
    let tau = sp.tau_num(params.d());
    let sm = params.sigma_minus_num();
    let uniq = (params.upper_window_num() + gamma) / alpha;
    let strict_lo = sm - d / alpha;
    let closed_lo = (s + gamma) / alpha;
    let k_lo = strict_lo.max(closed_lo);
    let k_hi = uniq.min(s);
    let k = match k_lo.compare(k_hi).ordering {
        Ordering::Less => (k_lo + k_hi) / 2,
        // The closed constraints (s+γ)/α ≤ k ≤ s may pin k to a point when
        // s = γ/(α-1); accept it if the strict ones still hold.
        Ordering::Equal
            if closed_lo.compare(s).ordering == Ordering::Equal
                && strict_lo.compare(s).ordering == Ordering::Less
                && s.compare(uniq).ordering == Ordering::Less =>
        {
            s
        }
        _ => {
            return Err(Error::Infeasible(format!(
                "k interval ({}, {}) is empty",
                k_lo.value(),
                k_hi.value()
            )))
        }
    };
    let dp_lo = (sm - k).max((tau + gamma) / alpha - k).max(Num::int(0));
    let dp_hi = (uniq - k).min(tau - k).min(d / alpha);
    if dp_lo.compare(dp_hi).ordering != Ordering::Less {
        return Err(Error::Infeasible(format!(
            "d/p interval ({}, {}) is empty at k = {}",
            dp_lo.value(),
            dp_hi.value(),
            k.value()
        )));
    }
    let rect = KatoRectangle {
        k_lo: k_lo.value(),
        k_hi: k_hi.value(),
        dinvp_lo: dp_lo.value(),
        dinvp_hi: dp_hi.value(),
    };
    Ok((rect, k, (dp_lo + dp_hi) / 2))
}

/// Kato parameters for the fixed-point argument: `(q, s)` itself when the
/// uniqueness window allows it, otherwise the midpoint of the feasible `k`
/// interval followed by the midpoint of the residual `d/p` interval.
pub fn choose_kato_params(params: &ProblemParams, sp: &SpacePair) -> Result<KatoParams> {
    let verdict = lwp_verdict(params, sp, false);
    if !verdict.lwp {
        return Err(Error::precondition(verdict.failure_reason().unwrap_or_default()));
    }
    if verdict.uniqueness_in_c {
        return KatoParams::new(params, sp, sp.q_num(), sp.s_num());
    }
    let (_, k, dinvp) = kato_rectangle(params, sp)?;
    KatoParams::new(params, sp, params.d_num() / dinvp, k)
}
