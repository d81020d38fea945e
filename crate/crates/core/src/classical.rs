//! The classical damped oscillator `m z'' + gamma z' + kappa z = 0`.
//!
//! Only the underdamped regime has a closed form here; the integrator itself
//! accepts any non-negative damping. The decay rate of the amplitude is
//! `Gamma = gamma / (2m)`, the same rate at which the squeezed amplitude
//! [`crate::squeeze::damped_amplitude`] shrinks.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::squeeze::damped_amplitude;

/// Upper bound on the number of integration steps.
pub const MAX_STEPS: usize = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OscillatorParams {
    pub m: f64,
    pub gamma: f64,
    pub kappa_spring: f64,
    pub z0: f64,
    pub v0: f64,
}

impl Default for OscillatorParams {
    fn default() -> Self {
        Self {
            m: 1.0,
            gamma: 0.5,
            kappa_spring: 1.0,
            z0: 1.0,
            v0: 0.0,
        }
    }
}

impl OscillatorParams {
    pub fn new(m: f64, gamma: f64, kappa_spring: f64, z0: f64, v0: f64) -> Result<Self> {
        let p = Self {
            m,
            gamma,
            kappa_spring,
            z0,
            v0,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.m, self.gamma, self.kappa_spring, self.z0, self.v0];
        if all.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        if self.m <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "mass must be positive, got {}",
                self.m
            )));
        }
        if self.kappa_spring <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "stiffness must be positive, got {}",
                self.kappa_spring
            )));
        }
        if self.gamma < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "damping must be non-negative, got {}",
                self.gamma
            )));
        }
        Ok(())
    }

    /// `Gamma = gamma / (2m)`.
    pub fn decay_rate(&self) -> f64 {
        self.gamma / (2.0 * self.m)
    }

    /// `z'' = -(gamma z' + kappa z) / m`.
    pub fn acceleration(&self, z: f64, v: f64) -> f64 {
        -(self.gamma * v + self.kappa_spring * z) / self.m
    }

    pub fn energy(&self, z: f64, v: f64) -> f64 {
        0.5 * self.m * v * v + 0.5 * self.kappa_spring * z * z
    }
}

/// `Omega = sqrt(kappa/m - gamma^2/(4 m^2))`; rejects `gamma^2 >= 4 m kappa`.
pub fn shifted_frequency(params: &OscillatorParams) -> Result<f64> {
    params.validate()?;
    let p = params;
    let discriminant = p.gamma * p.gamma - 4.0 * p.m * p.kappa_spring;
    if discriminant >= 0.0 {
        return Err(Error::NotUnderdamped { discriminant });
    }
    Ok((p.kappa_spring / p.m - p.decay_rate().powi(2)).sqrt())
}

/// Position and velocity at time `t`.
pub fn analytic_solution(params: &OscillatorParams, t: f64) -> Result<(f64, f64)> {
    let omega = shifted_frequency(params)?;
    let g = params.decay_rate();
    let a = params.z0;
    let b = (params.v0 + g * params.z0) / omega;
    let (s, c) = (omega * t).sin_cos();
    let decay = (-g * t).exp();
    let z = decay * (a * c + b * s);
    let v = decay * ((b * omega - g * a) * c - (a * omega + g * b) * s);
    Ok((z, v))
}

/// `z0 exp(-Gamma t)`: the initial displacement carried by the squeezed
/// amplitude at rate `Gamma = gamma/(2m)`.
pub fn envelope(params: &OscillatorParams, t: f64) -> f64 {
    damped_amplitude(Complex64::new(params.z0, 0.0), params.decay_rate(), t).re
}

/// Amplitude `R` in `z(t) = R exp(-Gamma t) cos(Omega t - phi)`, so that
/// `|z(t)| <= R exp(-Gamma t)`.
pub fn peak_amplitude(params: &OscillatorParams) -> Result<f64> {
    let omega = shifted_frequency(params)?;
    let b = (params.v0 + params.decay_rate() * params.z0) / omega;
    Ok(params.z0.hypot(b))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Sample {
    pub t: f64,
    pub z: f64,
    pub v: f64,
}

/// Fixed-step classical Runge-Kutta from `t = 0`. Sample `k` sits at
/// `t = k dt`; the last one is the largest multiple of `dt` not exceeding
/// `t_end` (up to a relative slack of 1e-9 on `t_end / dt`).
pub fn integrate(params: &OscillatorParams, dt: f64, t_end: f64) -> Result<Vec<Sample>> {
    params.validate()?;
    if !dt.is_finite() || dt <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "time step must be positive, got {dt}"
        )));
    }
    if !t_end.is_finite() || t_end < dt {
        return Err(Error::InvalidParameter(format!(
            "end time must be at least one step ({dt}), got {t_end}"
        )));
    }
    let ratio = t_end / dt;
    let steps = (ratio * (1.0 + 1e-9)).floor();
    if steps > MAX_STEPS as f64 {
        return Err(Error::InvalidParameter(format!(
            "{steps} steps exceeds the limit of {MAX_STEPS}"
        )));
    }
    let steps = steps as usize;
    let f = |z: f64, v: f64| (v, params.acceleration(z, v));
    let mut out = Vec::with_capacity(steps + 1);
    let (mut z, mut v) = (params.z0, params.v0);
    out.push(Sample { t: 0.0, z, v });
    for k in 1..=steps {
        let (k1z, k1v) = f(z, v);
        let (k2z, k2v) = f(z + 0.5 * dt * k1z, v + 0.5 * dt * k1v);
        let (k3z, k3v) = f(z + 0.5 * dt * k2z, v + 0.5 * dt * k2v);
        let (k4z, k4v) = f(z + dt * k3z, v + dt * k3v);
        z += dt / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z);
        v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        out.push(Sample {
            t: k as f64 * dt,
            z,
            v,
        });
    }
    Ok(out)
}

/// Largest `|z_numeric - z_analytic|` over an integrated series.
pub fn max_error(params: &OscillatorParams, series: &[Sample]) -> Result<f64> {
    let mut worst = 0.0f64;
    for s in series {
        worst = worst.max((s.z - analytic_solution(params, s.t)?.0).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(gamma: f64) -> OscillatorParams {
        OscillatorParams::new(1.0, gamma, 1.0, 1.0, 0.0).unwrap()
    }

    #[test]
    fn shifted_frequency_examples() {
        assert_eq!(shifted_frequency(&params(0.0)).unwrap(), 1.0);
        let p = OscillatorParams::new(2.0, 0.0, 8.0, 1.0, 0.0).unwrap();
        assert_eq!(shifted_frequency(&p).unwrap(), 2.0);
        assert!((shifted_frequency(&params(1.0)).unwrap() - 0.866_025).abs() < 1e-6);
        match shifted_frequency(&params(2.0)) {
            Err(Error::NotUnderdamped { discriminant }) => assert_eq!(discriminant, 0.0),
            other => panic!("{other:?}"),
        }
        assert!(shifted_frequency(&params(3.0)).is_err());
    }

    #[test]
    fn analytic_initial_and_half_period() {
        let p = OscillatorParams::new(1.0, 0.5, 1.0, 0.7, -0.3).unwrap();
        assert_eq!(analytic_solution(&p, 0.0).unwrap(), (0.7, -0.3));
        let (z, v) = analytic_solution(&params(0.0), std::f64::consts::PI).unwrap();
        assert!((z + 1.0).abs() < 1e-15 && v.abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(OscillatorParams::new(0.0, 0.1, 1.0, 1.0, 0.0).is_err());
        assert!(OscillatorParams::new(1.0, -0.1, 1.0, 1.0, 0.0).is_err());
        assert!(OscillatorParams::new(1.0, 0.1, 1.0, f64::NAN, 0.0).is_err());
        assert!(integrate(&params(0.5), 0.0, 1.0).is_err());
        assert!(integrate(&params(0.5), 0.1, 0.05).is_err());
    }

    #[test]
    fn grid_is_multiples_of_step() {
        let s = integrate(&params(0.5), 0.1, 1.0).unwrap();
        assert_eq!(s.len(), 11);
        assert_eq!(s[7].t, 7.0 * 0.1);
        assert_eq!(s[10].t, 1.0);
    }

    #[test]
    fn envelope_halves_every_ln2_over_rate() {
        let p = params(0.5);
        let half = std::f64::consts::LN_2 / p.decay_rate();
        assert!((envelope(&p, half) - 0.5).abs() < 1e-15);
        assert!((envelope(&p, 2.0 * half) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn config_defaults_and_unknown_keys() {
        let p: OscillatorParams = serde_json::from_str(r#"{"gamma": 0.0}"#).unwrap();
        assert_eq!(p, OscillatorParams::new(1.0, 0.0, 1.0, 1.0, 0.0).unwrap());
        assert!(serde_json::from_str::<OscillatorParams>(r#"{"mass": 2.0}"#).is_err());
    }
}
