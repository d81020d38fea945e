//! Thermal vacuum as a two-mode squeezed state.
//!
//! Uses the conventional bosonic angle `theta(beta) = artanh(exp(-beta Omega/2))`,
//! for which `sinh^2(theta)` is the Bose occupation. Setting the squeezing
//! angle of a mode to `theta(beta)` turns the dissipative vacuum into the
//! thermal vacuum at inverse temperature `beta`.

use super::paired::PairedState;
use crate::error::{Error, Result};
use crate::report::VerificationReport;

fn check(beta: f64, omega: f64) -> Result<f64> {
    let x = beta * omega;
    if !(x > 0.0) || x.is_nan() {
        return Err(Error::InvalidParameter(format!(
            "beta * Omega must be positive, got {x}"
        )));
    }
    Ok(x)
}

/// `artanh(exp(-beta Omega / 2))`, written so the high-temperature limit does
/// not round the argument to 1.
pub fn tfd_theta(beta: f64, omega: f64) -> Result<f64> {
    let x = check(beta, omega)?;
    let y = (-0.5 * x).exp();
    Ok(0.5 * ((1.0 + y) / -(-0.5 * x).exp_m1()).ln())
}

/// `1 / (exp(beta Omega) - 1)`.
pub fn thermal_number(beta: f64, omega: f64) -> Result<f64> {
    let x = check(beta, omega)?;
    Ok(1.0 / x.exp_m1())
}

/// The thermal vacuum on `dim` paired levels; `c_n^2` are the Boltzmann
/// weights `(1 - e^(-beta Omega)) e^(-n beta Omega)`.
pub fn thermal_vacuum(beta: f64, omega: f64, dim: usize) -> Result<PairedState> {
    PairedState::with_angle(tfd_theta(beta, omega)?, dim)
}

pub fn tfd_report() -> Result<VerificationReport> {
    tfd_report_with_tol(1e-12)
}

pub fn tfd_report_with_tol(tol: f64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new();
    let ln2 = std::f64::consts::LN_2;
    report.check(
        "tfd.thermal_number.ln2",
        "n(beta Omega = ln 2) = 1",
        (thermal_number(ln2, 1.0)? - 1.0).abs(),
        tol,
        None,
        &[],
    );

    let mut worst = 0.0f64;
    for x in [0.05, 0.5, 1.0, ln2, 3.0, 10.0] {
        let theta = tfd_theta(x, 1.0)?;
        let n = thermal_number(x, 1.0)?;
        worst = worst.max((theta.sinh().powi(2) - n).abs() / n);
    }
    report.check(
        "tfd.sinh2_theta",
        "sinh^2 theta(beta) = 1 / (e^(beta Omega) - 1)",
        worst,
        tol,
        None,
        &[],
    );

    // Zero-temperature limit: both theta and n decrease to 0 along a grid
    // running out to beta Omega = 800. The residual is the largest increase
    // between neighbours plus the final value.
    let mut prev = (f64::INFINITY, f64::INFINITY);
    let mut violation = 0.0f64;
    for k in 0..=80 {
        let x = 0.1 * 1.1f64.powi(k) + 10.0 * k as f64;
        let cur = (tfd_theta(x, 1.0)?, thermal_number(x, 1.0)?);
        violation = violation.max(cur.0 - prev.0).max(cur.1 - prev.1);
        prev = cur;
    }
    report.check(
        "tfd.zero_temperature",
        "theta, n -> 0 monotonically as beta Omega -> infinity",
        violation.max(0.0) + prev.0.max(prev.1),
        tol,
        None,
        &[],
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln2_gives_unit_occupation() {
        let n = thermal_number(std::f64::consts::LN_2, 1.0).unwrap();
        assert!((n - 1.0).abs() < 1e-12);
    }

    #[test]
    fn matches_artanh_identity() {
        // sinh^2(artanh y) = y^2 / (1 - y^2) with y = e^(-x/2).
        for x in [0.01, 0.3, 1.0, 4.0] {
            let y = (-0.5f64 * x).exp();
            let theta = tfd_theta(x, 1.0).unwrap();
            assert!((theta - y.atanh()).abs() < 1e-12 * theta);
            let oracle = y * y / (1.0 - y * y);
            assert!((theta.sinh().powi(2) - oracle).abs() < 1e-12 * oracle);
        }
        assert!((thermal_number(1.0, 1.0).unwrap() - 0.581_977).abs() < 1e-6);
    }

    #[test]
    fn rejects_non_positive() {
        assert!(tfd_theta(0.0, 1.0).is_err());
        assert!(thermal_number(-1.0, 1.0).is_err());
        assert!(tfd_theta(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn thermal_vacuum_has_boltzmann_weights() {
        let x: f64 = 0.8;
        let s = thermal_vacuum(x, 1.0, 40).unwrap();
        for (n, c) in s.coeffs().iter().enumerate() {
            let w = (1.0 - (-x).exp()) * (-(n as f64) * x).exp();
            assert!((c * c - w).abs() < 1e-14);
        }
    }

    #[test]
    fn default_report_passes() {
        assert!(tfd_report().unwrap().all_passed());
    }
}
