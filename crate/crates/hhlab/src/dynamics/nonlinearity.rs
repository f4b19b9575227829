use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exponents::ProblemParams;

/// Shape of the power nonlinearity `F_α`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NonlinearityKind {
    /// `μ|u|^{α-1}u`
    SignedPower,
    /// `μ|u|^α`
    AbsPower,
    /// `μu^α`, undefined for `u < 0` unless `α` is an integer.
    PurePower,
}

impl FromStr for NonlinearityKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "signed" | "signed_power" => Ok(NonlinearityKind::SignedPower),
            "abs" | "abs_power" => Ok(NonlinearityKind::AbsPower),
            "pure" | "pure_power" => Ok(NonlinearityKind::PurePower),
            other => Err(Error::domain(format!("unknown nonlinearity `{other}` (use signed, abs or pure)"))),
        }
    }
}

impl fmt::Display for NonlinearityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NonlinearityKind::SignedPower => "signed",
            NonlinearityKind::AbsPower => "abs",
            NonlinearityKind::PurePower => "pure",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NonlinearitySpec {
    kind: NonlinearityKind,
    mu: i8,
    alpha: f64,
}

impl NonlinearitySpec {
    pub fn new(kind: NonlinearityKind, mu: i8, alpha: f64) -> Result<NonlinearitySpec> {
        if !(-1..=1).contains(&mu) {
            return Err(Error::domain(format!("mu must be -1, 0 or 1, got {mu}")));
        }
        if !(alpha > 1.0 && alpha.is_finite()) {
            return Err(Error::domain(format!("alpha must exceed 1, got {alpha}")));
        }
        Ok(NonlinearitySpec { kind, mu, alpha })
    }

    /// The nonlinearity with the sign and power stored in `params`.
    pub fn for_params(params: &ProblemParams, kind: NonlinearityKind) -> NonlinearitySpec {
        NonlinearitySpec { kind, mu: params.mu(), alpha: params.alpha() }
    }

    pub fn kind(&self) -> NonlinearityKind {
        self.kind
    }

    pub fn mu(&self) -> i8 {
        self.mu
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `F(z) = z^α` for `z ≥ 0`.
    pub fn is_sign_compatible(&self) -> bool {
        self.mu == 1
    }

    /// `F(z)`; NaN where `F` is undefined.
    #[inline]
    pub fn eval(&self, z: f64) -> f64 {
        let mu = self.mu as f64;
        if self.mu == 0 {
            return 0.0;
        }
        match self.kind {
            NonlinearityKind::SignedPower => mu * z.abs().powf(self.alpha - 1.0) * z,
            NonlinearityKind::AbsPower => mu * z.abs().powf(self.alpha),
            NonlinearityKind::PurePower => {
                if z >= 0.0 || self.alpha.fract() == 0.0 {
                    mu * z.powf(self.alpha)
                } else {
                    f64::NAN
                }
            }
        }
    }

    /// Lipschitz template constant: `|F(z)-F(w)| ≤ C₀(|z|^{α-1}+|w|^{α-1})|z-w|`
    /// holds with `C₀ = α |μ|` (and with `α/2` away from sign changes).
    pub fn lipschitz_constant(&self) -> f64 {
        self.alpha * self.mu.abs() as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn values_and_zero() {
        for kind in [NonlinearityKind::SignedPower, NonlinearityKind::AbsPower, NonlinearityKind::PurePower] {
            let f = NonlinearitySpec::new(kind, 1, 2.5).unwrap();
            assert_eq!(f.eval(0.0), 0.0);
            assert!((f.eval(2.0) - 2f64.powf(2.5)).abs() < 1e-14);
        }
        let s = NonlinearitySpec::new(NonlinearityKind::SignedPower, -1, 3.0).unwrap();
        assert_eq!(s.eval(-2.0), 8.0);
        let a = NonlinearitySpec::new(NonlinearityKind::AbsPower, 1, 1.5).unwrap();
        assert!(a.eval(-4.0) > 0.0);
        let p = NonlinearitySpec::new(NonlinearityKind::PurePower, 1, 1.5).unwrap();
        assert!(p.eval(-1.0).is_nan());
        let p2 = NonlinearitySpec::new(NonlinearityKind::PurePower, 1, 2.0).unwrap();
        assert_eq!(p2.eval(-3.0), 9.0);
        assert!(NonlinearitySpec::new(NonlinearityKind::PurePower, 2, 2.0).is_err());
        assert!(NonlinearitySpec::new(NonlinearityKind::PurePower, 1, 1.0).is_err());
        assert_eq!("abs".parse::<NonlinearityKind>().unwrap(), NonlinearityKind::AbsPower);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]
        #[test]
        fn lipschitz_template(z in -10.0f64..10.0, w in -10.0f64..10.0, alpha in 1.01f64..5.0, kind in 0usize..2, mu in -1i8..=1) {
            let kind = [NonlinearityKind::SignedPower, NonlinearityKind::AbsPower][kind];
            let f = NonlinearitySpec::new(kind, mu, alpha).unwrap();
            let lhs = (f.eval(z) - f.eval(w)).abs();
            let rhs = f.lipschitz_constant() * (z.abs().powf(alpha - 1.0) + w.abs().powf(alpha - 1.0)) * (z - w).abs();
            prop_assert!(lhs <= rhs * (1.0 + 1e-12) + 1e-300);
            prop_assert!(f.lipschitz_constant() <= alpha);
        }

        #[test]
        fn lipschitz_template_pure_on_half_line(z in 0.0f64..10.0, w in 0.0f64..10.0, alpha in 1.01f64..5.0) {
            let f = NonlinearitySpec::new(NonlinearityKind::PurePower, 1, alpha).unwrap();
            let lhs = (f.eval(z) - f.eval(w)).abs();
            let rhs = alpha * (z.powf(alpha - 1.0) + w.powf(alpha - 1.0)) * (z - w).abs();
            prop_assert!(lhs <= rhs * (1.0 + 1e-12) + 1e-300);
        }
    }
}
