//! Time decay of edge information.
//!
//! The adjusted sigmoid function (ASF) keeps a fresh edge near full weight
//! for an active period controlled by `p`, decays it, and then settles on the
//! floor `q / (q + 1)`. Exponential decay is available for comparison.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DecayError {
    #[error("p must be positive and finite, got {0}")]
    InvalidP(f64),
    #[error("q must be non-negative and finite, got {0}")]
    InvalidQ(f64),
    #[error("a must be finite, got {0}")]
    InvalidA(f64),
    #[error("theta must lie in (0, 1), got {0}")]
    InvalidTheta(f64),
    #[error("elapsed time must be finite and non-negative, got {0}")]
    InvalidElapsed(f64),
}

pub const DEFAULT_A: f64 = 5.0;

/// Parameters of the adjusted sigmoid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayParams {
    /// Active-period scale.
    pub p: f64,
    /// Stable-floor control; the floor is `q / (q + 1)`.
    pub q: f64,
    /// Position offset.
    pub a: f64,
}

impl DecayParams {
    pub fn new(p: f64, q: f64, a: f64) -> Result<Self, DecayError> {
        if !(p.is_finite() && p > 0.0) {
            return Err(DecayError::InvalidP(p));
        }
        if !(q.is_finite() && q >= 0.0) {
            return Err(DecayError::InvalidQ(q));
        }
        if !a.is_finite() {
            return Err(DecayError::InvalidA(a));
        }
        Ok(Self { p, q, a })
    }

    pub fn with_default_a(p: f64, q: f64) -> Result<Self, DecayError> {
        Self::new(p, q, DEFAULT_A)
    }

    /// Largest value the ASF takes, reached at zero elapsed time.
    pub fn ceiling(&self) -> f64 {
        (1.0 / (1.0 + (-self.a).exp()) + self.q) / (self.q + 1.0)
    }
}

impl Default for DecayParams {
    fn default() -> Self {
        Self {
            p: 1.0,
            q: 1.0,
            a: DEFAULT_A,
        }
    }
}

fn check_elapsed(x: f64) -> Result<f64, DecayError> {
    if x.is_finite() && x >= 0.0 {
        Ok(x)
    } else {
        Err(DecayError::InvalidElapsed(x))
    }
}

/// `ASF(x) = (1 / (1 + exp(x/p - a)) + q) / (q + 1)`
pub fn asf(x: f64, params: &DecayParams) -> Result<f64, DecayError> {
    let x = check_elapsed(x)?;
    let z = x / params.p - params.a;
    Ok((1.0 / (1.0 + z.exp()) + params.q) / (params.q + 1.0))
}

/// Greatest lower bound of the ASF, `q / (q + 1)`.
pub fn asf_floor(params: &DecayParams) -> f64 {
    params.q / (params.q + 1.0)
}

/// Natural log of `ASF(x) - floor`, i.e. `ln σ(a - x/p) - ln(q + 1)`.
///
/// This stays finite (and strictly decreasing) long after `asf` itself has
/// rounded onto the floor in `f64`.
pub fn asf_log_excess(x: f64, params: &DecayParams) -> Result<f64, DecayError> {
    let x = check_elapsed(x)?;
    let z = x / params.p - params.a;
    // ln σ(-z) = -softplus(z)
    let softplus = if z > 0.0 {
        z + (-z).exp().ln_1p()
    } else {
        z.exp().ln_1p()
    };
    Ok(-softplus - params.q.ln_1p())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpDecayParams {
    pub theta: f64,
}

impl ExpDecayParams {
    pub fn new(theta: f64) -> Result<Self, DecayError> {
        if theta > 0.0 && theta < 1.0 {
            Ok(Self { theta })
        } else {
            Err(DecayError::InvalidTheta(theta))
        }
    }
}

/// `exp(-theta (t - s))` for an edge at snapshot `s` seen from snapshot `t`.
pub fn exp_decay(s: f64, t: f64, params: &ExpDecayParams) -> Result<f64, DecayError> {
    let elapsed = check_elapsed(t - s)?;
    Ok((-params.theta * elapsed).exp())
}

/// Decay used to weight edges.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Decay {
    Asf(DecayParams),
    Exp(ExpDecayParams),
}

impl Decay {
    pub fn weight(&self, elapsed: f64) -> Result<f64, DecayError> {
        match self {
            Decay::Asf(p) => asf(elapsed, p),
            Decay::Exp(p) => exp_decay(0.0, elapsed, p),
        }
    }

    /// Weight floor that latent edges are scaled from. Exponential decay has
    /// infimum 0, so it yields no latent edges.
    pub fn floor(&self) -> f64 {
        match self {
            Decay::Asf(p) => asf_floor(p),
            Decay::Exp(_) => 0.0,
        }
    }
}

impl From<DecayParams> for Decay {
    fn from(p: DecayParams) -> Self {
        Decay::Asf(p)
    }
}

impl From<ExpDecayParams> for Decay {
    fn from(p: ExpDecayParams) -> Self {
        Decay::Exp(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params(p: f64, q: f64) -> DecayParams {
        DecayParams::with_default_a(p, q).unwrap()
    }

    #[test]
    fn value_at_zero_elapsed() {
        // (1/(1+e^-5) + 1)/2 evaluated at 30 digits with mpmath:
        // 0.996653574537857572220...
        let v = asf(0.0, &params(1.0, 1.0)).unwrap();
        assert!((v - 0.996_653_574_537_857_6).abs() < 1e-15, "{v}");
    }

    #[test]
    fn floor_values() {
        assert_eq!(asf_floor(&params(1.0, 1.0)), 0.5);
        assert_eq!(asf_floor(&params(1.0, 0.0)), 0.0);
        assert_eq!(asf_floor(&params(1.0, 9.0)), 0.9);
    }

    #[test]
    fn approaches_floor() {
        let pr = params(2.0, 1.0);
        let far = 100.0 * pr.p * pr.a;
        let v = asf(far, &pr).unwrap();
        assert!(v >= 0.5 && v - 0.5 < 1e-9);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            asf(f64::NAN, &DecayParams::default()),
            Err(DecayError::InvalidElapsed(_))
        ));
        assert!(asf(f64::INFINITY, &DecayParams::default()).is_err());
        assert!(asf(-1.0, &DecayParams::default()).is_err());
        assert!(DecayParams::new(0.0, 1.0, 5.0).is_err());
        assert!(DecayParams::new(1.0, -0.1, 5.0).is_err());
        assert!(DecayParams::new(1.0, 1.0, f64::NAN).is_err());
        assert!(ExpDecayParams::new(1.0).is_err());
        assert!(ExpDecayParams::new(0.0).is_err());
    }

    #[test]
    fn exponential_decay() {
        let th = ExpDecayParams::new(0.5).unwrap();
        assert_eq!(exp_decay(3.0, 3.0, &th).unwrap(), 1.0);
        assert!((exp_decay(1.0, 3.0, &th).unwrap() - (-1.0f64).exp()).abs() < 1e-15);
        assert!(exp_decay(1.0, 2.0, &th).unwrap() > exp_decay(1.0, 3.0, &th).unwrap());
        assert!(exp_decay(3.0, 1.0, &th).is_err());
    }

    #[test]
    fn exp_mode_has_zero_floor() {
        let d = Decay::Exp(ExpDecayParams::new(0.2).unwrap());
        assert_eq!(d.floor(), 0.0);
        assert_eq!(d.weight(0.0).unwrap(), 1.0);
    }

    #[test]
    fn log_excess_matches_direct_difference() {
        let pr = params(3.0, 1.0);
        for x in [0.0, 1.0, 5.0, 15.0, 30.0] {
            let direct = asf(x, &pr).unwrap() - asf_floor(&pr);
            let via_log = asf_log_excess(x, &pr).unwrap().exp();
            assert!((direct - via_log).abs() < 1e-14, "x={x}");
        }
    }

    proptest! {
        #[test]
        fn larger_q_keeps_more(x in 0.0f64..50.0, p in 0.1f64..10.0, q in 0.0f64..5.0, dq in 0.01f64..5.0) {
            let lo = asf(x, &params(p, q)).unwrap();
            let hi = asf(x, &params(p, q + dq)).unwrap();
            prop_assert!(hi >= lo);
        }

        #[test]
        fn larger_p_keeps_more(x in 0.0f64..100.0, p in 0.1f64..10.0, dp in 0.01f64..10.0, q in 0.0f64..5.0) {
            let lo = asf(x, &params(p, q)).unwrap();
            let hi = asf(x, &params(p + dp, q)).unwrap();
            prop_assert!(hi >= lo);
        }
    }
}
