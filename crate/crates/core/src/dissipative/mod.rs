//! The doubled-mode description of the damped oscillator.
//!
//! Each damped mode `A` is paired with a time-reversed partner `B`. The
//! interaction `H_I = i Gamma (A^dag B^dag - A B)` drives the vacuum into
//!
//! ```text
//! |0(t)> = sech(Gamma t) sum_n tanh^n(Gamma t) |n, n>,
//! ```
//!
//! which lives entirely in the paired subspace `span{|n, n>}`. Two backends
//! are provided: [`PairedState`] stores the coefficients over that subspace
//! and scales to thousands of levels, while [`TwoModeSpace`] realizes the
//! operators densely on a small tensor product and serves as the brute-force
//! check on the paired formulas.
//!
//! Scalar results (mode numbers, overlaps) come in closed form; the paired
//! and dense backends are used to verify them within the truncation tail.

mod dense;
mod paired;
mod tfd;

pub use dense::{
    annihilation_residuals, canonical_map, canonical_map_report, canonical_map_report_with_tol,
    dense_ground_state, double_squeeze, double_squeeze_report, double_squeeze_report_with_tol,
    evolved_ops, evolved_ops_report, evolved_ops_report_with_tol, fit_quadratic_constant,
    h0_hi_commute, hole_relations, hole_relations_with_tol, number_difference,
    quadratic_identity_residual, su11_two_mode, su11_two_mode_with_tol, two_mode_working_dim,
    vacuum_paired_amplitudes, CanonicalMap, TwoModeOps, TwoModeSpace, MAX_PER_MODE_DIM,
    MAX_TWO_MODE_ZETA, MAX_WORKING_PER_MODE_DIM, MIN_PER_MODE_DIM,
};
pub use paired::{min_dim_for_tail, PairedState, MAX_PAIRED_DIM};
pub use tfd::{tfd_report, tfd_report_with_tol, tfd_theta, thermal_number, thermal_vacuum};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One field degree of freedom: a label, its frequency and its damping rate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawModeSpec")]
pub struct ModeSpec {
    kappa: String,
    omega: f64,
    gamma: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModeSpec {
    kappa: String,
    omega: f64,
    gamma: f64,
}

impl TryFrom<RawModeSpec> for ModeSpec {
    type Error = Error;

    fn try_from(raw: RawModeSpec) -> Result<Self> {
        ModeSpec::new(raw.kappa, raw.omega, raw.gamma)
    }
}

impl ModeSpec {
    pub fn new(kappa: impl Into<String>, omega: f64, gamma: f64) -> Result<Self> {
        if !omega.is_finite() || omega < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "mode frequency must be finite and non-negative, got {omega}"
            )));
        }
        if !gamma.is_finite() || gamma < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "mode damping must be finite and non-negative, got {gamma}"
            )));
        }
        Ok(Self {
            kappa: kappa.into(),
            omega,
            gamma,
        })
    }

    pub fn kappa(&self) -> &str {
        &self.kappa
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

/// `ln cosh x` without overflow for large `|x|`.
pub fn ln_cosh(x: f64) -> f64 {
    let y = x.abs();
    y + (-2.0 * y).exp().ln_1p() - std::f64::consts::LN_2
}

/// Condensate number `<0(t)|A^dag A|0(t)> = sinh^2(Gamma t)`.
pub fn mode_number(gamma: f64, t: f64) -> f64 {
    (gamma * t).sinh().powi(2)
}

/// `ln <0(t)|0> = -sum_k ln cosh(Gamma_k t)`.
pub fn log_vacuum_overlap(modes: &[ModeSpec], t: f64) -> f64 {
    -modes.iter().map(|m| ln_cosh(m.gamma * t)).sum::<f64>()
}

/// `<0(t)|0> = prod_k 1/cosh(Gamma_k t)`, accumulated in log space.
pub fn vacuum_overlap(modes: &[ModeSpec], t: f64) -> f64 {
    log_vacuum_overlap(modes, t).exp()
}

/// `<0(t)|0(t2)> = prod_k 1/cosh(Gamma_k (t - t2))`.
pub fn overlap_two_times(modes: &[ModeSpec], t: f64, t2: f64) -> f64 {
    (-modes
        .iter()
        .map(|m| ln_cosh(m.gamma * (t - t2)))
        .sum::<f64>())
    .exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn modes(n: usize, gamma: f64) -> Vec<ModeSpec> {
        (0..n)
            .map(|k| ModeSpec::new(format!("k{k}"), 1.0, gamma).unwrap())
            .collect()
    }

    #[test]
    fn ln_cosh_matches_direct_and_survives_large_arguments() {
        for x in [0.0, 0.3, -1.0, 5.0, 20.0] {
            let direct: f64 = f64::cosh(x).ln();
            assert!((ln_cosh(x) - direct).abs() <= 1e-15 * direct.abs().max(1.0));
        }
        assert!((ln_cosh(1000.0) - (1000.0 - std::f64::consts::LN_2)).abs() < 1e-12);
    }

    #[test]
    fn mode_numbers() {
        assert_eq!(mode_number(1.0, 0.0), 0.0);
        assert!((mode_number(1.0, 1.0) - 1.381_098).abs() < 1e-6);
        assert!((mode_number(2.0, 1.0) - 13.154_116_418).abs() < 1e-8);
    }

    #[test]
    fn overlaps() {
        let one = modes(1, 1.0);
        assert_eq!(vacuum_overlap(&one, 0.0), 1.0);
        assert!((vacuum_overlap(&one, 1.0) - 0.648_054).abs() < 1e-6);
        assert!((vacuum_overlap(&modes(10, 1.0), 1.0) - 0.013_065_131_6).abs() < 1e-10);
        assert_eq!(overlap_two_times(&one, 1.5, 1.5), 1.0);
        assert!((overlap_two_times(&one, 2.0, 1.0) - 1.0 / 1.0f64.cosh()).abs() < 1e-15);
    }

    #[test]
    fn mode_spec_validation() {
        assert!(ModeSpec::new("k", 1.0, -0.1).is_err());
        assert!(ModeSpec::new("k", f64::NAN, 0.1).is_err());
        let m: ModeSpec =
            serde_json::from_str(r#"{"kappa":"k1","omega":2.0,"gamma":0.5}"#).unwrap();
        assert_eq!((m.kappa(), m.omega(), m.gamma()), ("k1", 2.0, 0.5));
        assert!(serde_json::from_str::<ModeSpec>(r#"{"kappa":"k","omega":1,"gamma":-1}"#).is_err());
        assert!(
            serde_json::from_str::<ModeSpec>(r#"{"kappa":"k","omega":1,"gamma":1,"x":0}"#).is_err()
        );
    }
}
