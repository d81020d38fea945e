//! The full identity suite, as run by `qdamp verify`.
//!
//! Each section records one or more checks. Sections whose preconditions do
//! not hold for the requested dimension (too small, margin too large, cap
//! exceeded) are recorded as skipped with the reason; any other error is
//! recorded as a failure. Records are sorted by name.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::bargmann::{
    dilate, q_derivative, q_difference_quotient, q_number, qwh_commutator,
    scale_generator_identity, Polynomial, QParam,
};
use crate::classical::{self, OscillatorParams};
use crate::dissipative::{
    self, min_dim_for_tail, mode_number, ModeSpec, PairedState, TwoModeSpace,
};
use crate::error::{Error, Result};
use crate::fock::{commutator, interior_residual, ladder_ops, policy_margin, FockSpace};
use crate::report::VerificationReport;
use crate::squeeze;

/// Squeezing parameters of the single-mode checks.
pub const ZETA_GRID: [f64; 6] = [-1.0, -0.5, -0.25, 0.25, 0.5, 1.0];

/// Deformation parameters of the exact checks, as `(numerator, denominator)`.
pub const Q_GRID: [(i64, i64); 3] = [(2, 1), (3, 2), (7, 5)];

pub const MAX_DEGREE: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    /// Overrides every dense dimension when set.
    pub dim: Option<usize>,
    /// Overrides every tolerance when set.
    pub tolerance: Option<f64>,
    pub modes: Vec<ModeSpec>,
    /// Time at which the multi-mode overlap checks are evaluated.
    pub t: f64,
    pub oscillator: OscillatorParams,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            dim: None,
            tolerance: None,
            modes: vec![ModeSpec::new("k0", 1.0, 1.0).expect("valid mode")],
            t: 1.0,
            oscillator: OscillatorParams::default(),
        }
    }
}

impl SuiteConfig {
    fn tol(&self, default: f64) -> f64 {
        self.tolerance.unwrap_or(default)
    }

    fn dim(&self, default: usize) -> usize {
        self.dim.unwrap_or(default)
    }
}

/// Runs every section and returns the records sorted by name.
pub fn run(config: &SuiteConfig) -> VerificationReport {
    let mut report = VerificationReport::new();
    type Section = fn(&SuiteConfig, &mut VerificationReport) -> Result<()>;
    let sections: [(&str, &str, Section); 13] = [
        ("qcalc", "exact q-calculus identities", qcalc),
        ("fock.ccr", "[a, a^dag] = 1", fock_ccr),
        (
            "squeeze.dilation",
            "sqrt(q) exp(zeta G) = S(zeta)",
            squeeze_dilation,
        ),
        (
            "squeeze.bogoliubov",
            "S^dag a S = a cosh - a^dag sinh",
            squeeze_bogoliubov,
        ),
        ("su11.single", "single-mode su(1,1)", su11_single),
        ("paired", "paired-state normalization and number", paired),
        ("overlap", "vacuum overlaps", overlap),
        ("evolved", "evolved ladder operators", evolved),
        ("hole", "hole relations", hole),
        ("double_squeeze", "double-mode squeezing", double_squeeze),
        ("canonical", "canonical map", canonical),
        ("two_mode", "two-mode su(1,1) and [H0, H_I]", two_mode),
        ("classical", "classical oscillator", classical_section),
    ];
    for (name, identity, section) in sections {
        let mut part = VerificationReport::new();
        match section(config, &mut part) {
            Ok(()) => report.extend(part),
            Err(e) => {
                report.extend(part);
                let tol = config.tol(0.0);
                if is_precondition(&e) {
                    report.skip(format!("{name}.section"), identity, tol, &[], e.to_string());
                } else {
                    report.error(format!("{name}.section"), identity, tol, &[], e.to_string());
                }
            }
        }
    }
    match dissipative::tfd_report_with_tol(config.tol(1e-12)) {
        Ok(r) => report.extend(r),
        Err(e) => report.error(
            "tfd.section",
            "thermal angle",
            config.tol(1e-12),
            &[],
            e.to_string(),
        ),
    }
    report.sort_by_name();
    report
}

fn is_precondition(e: &Error) -> bool {
    matches!(
        e,
        Error::DimensionCap { .. } | Error::DimensionTooSmall { .. } | Error::MarginTooLarge { .. }
    )
}

/// Runs `f` and turns a precondition failure into a skipped record named
/// `name`; other errors propagate.
fn guarded(
    report: &mut VerificationReport,
    name: &str,
    identity: &str,
    tol: f64,
    dims: &[usize],
    f: impl FnOnce(&mut VerificationReport) -> Result<()>,
) -> Result<()> {
    match f(report) {
        Err(e) if is_precondition(&e) => {
            report.skip(name, identity, tol, dims, e.to_string());
            Ok(())
        }
        other => other,
    }
}

fn qcalc(config: &SuiteConfig, report: &mut VerificationReport) -> Result<()> {
    let tol = config.tol(0.0);
    let one = BigRational::from_integer(BigInt::from(1));
    for (num, den) in Q_GRID {
        let q = QParam::ratio(num, den)?;
        let tag = format!("q={num}/{den}");
        let (mut bad_comm, mut bad_deriv) = (0usize, 0usize);
        for n in 0..=MAX_DEGREE {
            let f = Polynomial::monomial(one.clone(), n);
            if qwh_commutator(&f, &q) != dilate(&f, &q) {
                bad_comm += 1;
            }
            let closed = if n == 0 {
                Polynomial::zero()
            } else {
                Polynomial::monomial(q_number(n, &q), n - 1)
            };
            if q_derivative(&f, &q) != closed || q_difference_quotient(&f, &q)? != closed {
                bad_deriv += 1;
            }
        }
        report.check(
            format!("qcalc.commutator.{tag}"),
            "D_q(z f) - z D_q f = f(qz), f = z^n, n <= 64",
            bad_comm as f64,
            tol,
            None,
            &[],
        );
        report.check(
            format!("qcalc.derivative.{tag}"),
            "(f(qz) - f(z)) / ((q - 1) z) = [n]_q z^(n-1), f = z^n, n <= 64",
            bad_deriv as f64,
            tol,
            None,
            &[],
        );
    }
    let mut bad = 0usize;
    for n in 0..=MAX_DEGREE {
        let (lhs, rhs) = scale_generator_identity(&Polynomial::monomial(one.clone(), n));
        bad += usize::from(lhs != rhs);
    }
    // One dense polynomial with mixed-sign rational coefficients.
    let dense = Polynomial::from_coeffs(
        (0..=MAX_DEGREE as i64)
            .map(|k| {
                BigRational::new(
                    BigInt::from((k * 7919) % 113 - 56),
                    BigInt::from(k % 17 + 1),
                )
            })
            .collect(),
    );
    let (lhs, rhs) = scale_generator_identity(&dense);
    bad += usize::from(lhs != rhs);
    report.check(
        "qcalc.scale_generator",
        "2 z f' = (alpha^2 - alpha^dag^2) f - f, deg f <= 64",
        bad as f64,
        tol,
        None,
        &[],
    );
    Ok(())
}

fn fock_ccr(config: &SuiteConfig, report: &mut VerificationReport) -> Result<()> {
    let d = config.dim(32);
    guarded(
        report,
        "fock.ccr",
        "[a, a^dag] = 1",
        config.tol(1e-12),
        &[d],
        |report| {
            let space = FockSpace::new(d)?;
            let (a, ad) = ladder_ops(space);
            let margin = 1.min(d - 1);
            report.check(
                "fock.ccr",
                "[a, a^dag] = 1",
                interior_residual(&commutator(&a, &ad)?, &space.identity(), margin)?,
                config.tol(1e-12),
                Some(margin),
                &[d],
            );
            Ok(())
        },
    )
}

fn squeeze_dilation(config: &SuiteConfig, report: &mut VerificationReport) -> Result<()> {
    let d = config.dim(32);
    for zeta in ZETA_GRID {
        let name = format!("squeeze.dilation.zeta={zeta}");
        let identity = "sqrt(q) exp(zeta G) = S(zeta), q = e^zeta";
        let tol = config.tol(1e-9);
        guarded(report, &name, identity, tol, &[d], |report| {
            let space = FockSpace::new(d)?;
            let margin = policy_margin(zeta, 2);
            let r = squeeze::dilation_vs_squeeze(space, zeta, margin)?;
            report.check(&name, identity, r, tol, Some(margin), &[d]);
            Ok(())
        })?;
    }
    Ok(())
}

fn squeeze_bogoliubov(config: &SuiteConfig, report: &mut VerificationReport) -> Result<()> {
    let d = config.dim(48);
    let tol = config.tol(1e-8);
    for zeta in ZETA_GRID {
        let name = format!("squeeze.bogoliubov.zeta={zeta}");
        let identity = "S(zeta)^dag a S(zeta) = a cosh zeta - a^dag sinh zeta";
        guarded(report, &name, identity, tol, &[d], |report| {
            let space = FockSpace::new(d)?;
            let margin = policy_margin(zeta, 1);
            let r = squeeze::bogoliubov_residual(space, zeta, margin)?;
            report.check(&name, identity, r, tol, Some(margin), &[d]);
            Ok(())
        })?;
        let name = format!("squeeze.bogoliubov_ccr.zeta={zeta}");
        let identity = "[a(zeta), a(zeta)^dag] = 1";
        guarded(report, &name, identity, tol, &[d], |report| {
            let space = FockSpace::new(d)?;
            let r = squeeze::bogoliubov_ccr_residual(space, zeta, 1)?;
            report.check(&name, identity, r, tol, Some(1), &[d]);
            Ok(())
        })?;
    }
    Ok(())
}

fn su11_single(config: &SuiteConfig, report: &mut VerificationReport) -> Result<()> {
    let d = config.dim(16);
    let tol = config.tol(1e-10);
    guarded(
        report,
        "su11.single",
        "single-mode su(1,1) closure",
        tol,
        &[d],
        |report| {
            let space = FockSpace::new(d)?;
            report.extend(squeeze::su11_single_mode_with_tol(space, 2, tol)?);
            Ok(())
        },
    )
}

fn paired(config: &SuiteConfig, report: &mut VerificationReport) -> Result<()> {
    let tail_target = 1e-8;
    for x in [0.5, 1.0, 2.0] {
        let d = min_dim_for_tail(x, tail_target)?;
        let s = PairedState::ground_state(1.0, x, d)?;
        report.check(
            format!("paired.normalization.gt={x}"),
            "|sum c_n^2 - 1| <= tanh^(2D)",
            (s.norm_sqr() - 1.0).abs(),
            config.tol(s.tail() + 1e-15),
            None,
            &[d],
        );
        report.check(
            format!("paired.number.gt={x}"),
            "|sum n c_n^2 - sinh^2(Gamma t)| <= 2 D tanh^(2D)",
            (s.mean_number() - mode_number(1.0, x)).abs(),
            config.tol(s.number_tail_bound()),
            None,
            &[d],
        );
    }
    let s = PairedState::ground_state(1.0, 1.0, 200)?;
    report.check(
        "paired.number.unit_angle_value",
        "sum n c_n^2 at Gamma t = 1 is 1.381098 (6 decimals)",
        (s.mean_number() - 1.381_098).abs(),
        config.tol(5e-7),
        None,
        &[200],
    );
    Ok(())
}

fn overlap(config: &SuiteConfig, report: &mut VerificationReport) -> Result<()> {
    for x in [0.5, 1.0, 2.0] {
        let d = min_dim_for_tail(x, 1e-12)?;
        let s = PairedState::ground_state(1.0, x, d)?;
        let vac = PairedState::ground_state(1.0, 0.0, 1)?;
        let mode = [ModeSpec::new("unit", 1.0, 1.0)?];
        report.check(
            format!("overlap.single.gt={x}"),
            "<0(t)|0> = sum c_n(t) c_n(0) = 1 / cosh(Gamma t)",
            (s.overlap(&vac) - dissipative::vacuum_overlap(&mode, x)).abs(),
            config.tol(1e-10),
            None,
            &[d],
        );
    }

    let (t, t2) = (2.0, 1.0);
    let d = 400;
    let a = PairedState::ground_state(1.0, t, d)?;
    let b = PairedState::ground_state(1.0, t2, d)?;
    let mode = [ModeSpec::new("unit", 1.0, 1.0)?];
    report.check(
        "overlap.two_times",
        "<0(t)|0(t')> = 1 / cosh(Gamma (t - t'))",
        (a.overlap(&b) - dissipative::overlap_two_times(&mode, t, t2)).abs(),
        config.tol(1e-10),
        None,
        &[d],
    );

    let base = config
        .modes
        .first()
        .cloned()
        .unwrap_or(ModeSpec::new("unit", 1.0, 1.0)?);
    let single = dissipative::log_vacuum_overlap(std::slice::from_ref(&base), config.t);
    let (mut worst, mut violations) = (0.0f64, 0usize);
    let mut prev = f64::INFINITY;
    for m in 1..=64 {
        let modes = vec![base.clone(); m];
        let log_o = dissipative::log_vacuum_overlap(&modes, config.t);
        worst = worst.max((log_o - m as f64 * single).abs());
        if base.gamma() * config.t > 0.0 && log_o >= prev {
            violations += 1;
        }
        prev = log_o;
    }
    report.check(
        "overlap.log_linear",
        "|log o(M) - M log o(1)|, M <= 64",
        worst,
        config.tol(1e-12),
        None,
        &[],
    );
    report.check(
        "overlap.decreasing",
        "o(M) strictly decreasing in M for Gamma t > 0 (count of violations)",
        violations as f64,
        config.tol(0.0),
        None,
        &[],
    );

    let joint = dissipative::vacuum_overlap(&config.modes, config.t);
    let product: f64 = config
        .modes
        .iter()
        .map(|m| dissipative::vacuum_overlap(std::slice::from_ref(m), config.t))
        .product();
    report.check(
        "overlap.factorization",
        "o(modes) = prod_k o(mode_k), relative",
        (joint - product).abs() / joint.max(f64::MIN_POSITIVE),
        config.tol(1e-14),
        None,
        &[config.modes.len()],
    );
    Ok(())
}

fn two_mode_space(config: &SuiteConfig, default: usize) -> Result<TwoModeSpace> {
    TwoModeSpace::new(config.dim(default))
}

fn evolved(config: &SuiteConfig, report: &mut VerificationReport) -> Result<()> {
    let d = config.dim(12);
    for x in [0.3, 0.7] {
        let name = format!("evolved.gt={x}");
        guarded(
            report,
            &name,
            "evolved ladder operators",
            config.tol(1e-6),
            &[d, d],
            |report| {
                let s = two_mode_space(config, 12)?;
                report.extend(dissipative::evolved_ops_report_with_tol(
                    s,
                    1.0,
                    x,
                    1,
                    config.tolerance,
                )?);
                Ok(())
            },
        )?;
    }
    Ok(())
}

fn hole(config: &SuiteConfig, report: &mut VerificationReport) -> Result<()> {
    let d = config.dim(12);
    for x in [0.0, 0.3, 0.7] {
        let name = format!("hole.gt={x}");
        let tol = config.tol(1e-6);
        guarded(report, &name, "hole relations", tol, &[d, d], |report| {
            let s = two_mode_space(config, 12)?;
            report.extend(dissipative::hole_relations_with_tol(s, 1.0, x, tol)?);
            Ok(())
        })?;
    }
    Ok(())
}

fn double_squeeze(config: &SuiteConfig, report: &mut VerificationReport) -> Result<()> {
    let d = config.dim(12);
    for zeta in [0.3, 0.6] {
        let name = format!("double_squeeze.zeta={zeta}");
        guarded(
            report,
            &name,
            "double-mode squeezing",
            config.tol(1e-8),
            &[d, d],
            |report| {
                let s = two_mode_space(config, 12)?;
                let margin = policy_margin(zeta, 2);
                report.extend(dissipative::double_squeeze_report_with_tol(
                    s,
                    zeta,
                    margin,
                    config.tolerance,
                )?);
                Ok(())
            },
        )?;
    }
    Ok(())
}

fn canonical(config: &SuiteConfig, report: &mut VerificationReport) -> Result<()> {
    let d = config.dim(10);
    guarded(
        report,
        "canonical",
        "canonical map",
        config.tol(1e-12),
        &[d, d],
        |report| {
            let s = two_mode_space(config, 10)?;
            report.extend(dissipative::canonical_map_report_with_tol(
                s,
                2,
                config.tolerance,
            )?);
            Ok(())
        },
    )
}

fn two_mode(config: &SuiteConfig, report: &mut VerificationReport) -> Result<()> {
    let d = config.dim(10);
    let tol = config.tol(1e-10);
    guarded(
        report,
        "su11.two_mode",
        "two-mode su(1,1) closure",
        tol,
        &[d, d],
        |report| {
            let s = two_mode_space(config, 10)?;
            report.extend(dissipative::su11_two_mode_with_tol(s, 2, tol)?);
            Ok(())
        },
    )?;
    for mode in &config.modes {
        let name = format!("h0_hi.{}", mode.kappa());
        let identity = "[Omega (N_A - N_B), i Gamma (A^dag B^dag - A B)] = 0";
        guarded(report, &name, identity, tol, &[d, d], |report| {
            let s = two_mode_space(config, 10)?;
            let r = dissipative::h0_hi_commute(s, mode.omega(), mode.gamma(), 2)?;
            report.check(&name, identity, r, tol, Some(2), &[d, d]);
            Ok(())
        })?;
    }
    Ok(())
}

fn classical_section(config: &SuiteConfig, report: &mut VerificationReport) -> Result<()> {
    let p = &config.oscillator;
    let (dt, t_end) = (1e-3, 10.0);
    let series = classical::integrate(p, dt, t_end)?;
    report.check(
        "classical.rk4_error",
        "max |z_rk4 - z_exact|, dt = 1e-3, t in [0, 10]",
        classical::max_error(p, &series)?,
        config.tol(1e-8),
        None,
        &[series.len()],
    );

    let coarse = classical::max_error(p, &classical::integrate(p, 1e-2, t_end)?)?;
    let fine = classical::max_error(p, &classical::integrate(p, 5e-3, t_end)?)?;
    report.check(
        "classical.convergence",
        "err(dt/2) / err(dt) <= 1/14 (order >= 3.8)",
        fine / coarse,
        config.tol(1.0 / 14.0),
        None,
        &[],
    );

    let rate = p.gamma / (2.0 * p.m);
    let mut worst = 0.0f64;
    for k in 0..=100 {
        let t = 0.1 * k as f64;
        let direct = p.z0 * (-rate * t).exp();
        if direct != 0.0 {
            worst = worst.max((classical::envelope(p, t) - direct).abs() / direct.abs());
        }
    }
    report.check(
        "classical.envelope",
        "envelope = z0 exp(-gamma t / 2m), relative",
        worst,
        config.tol(1e-14),
        None,
        &[],
    );

    let free = OscillatorParams { gamma: 0.0, ..*p };
    let series = classical::integrate(&free, dt, t_end)?;
    let e0 = free.energy(free.z0, free.v0);
    let last = series.last().expect("non-empty series");
    report.check(
        "classical.energy",
        "|E(T) - E(0)| / E(0) at gamma = 0",
        (free.energy(last.z, last.v) - e0).abs() / e0.max(f64::MIN_POSITIVE),
        config.tol(1e-8),
        None,
        &[series.len()],
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    #[test]
    fn tiny_dimension_skips_two_mode_checks() {
        let config = SuiteConfig {
            dim: Some(2),
            ..SuiteConfig::default()
        };
        let r = run(&config);
        let skipped: Vec<_> = r
            .records
            .iter()
            .filter(|c| c.status == Status::Skipped)
            .map(|c| c.name.as_str())
            .collect();
        assert!(skipped.contains(&"canonical"), "{skipped:?}");
        assert!(skipped.iter().any(|n| n.starts_with("double_squeeze")));
        assert!(skipped.iter().any(|n| n.starts_with("squeeze.dilation")));
        assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn oversized_dimension_is_skipped_not_failed() {
        let config = SuiteConfig {
            dim: Some(17),
            ..SuiteConfig::default()
        };
        let r = run(&config);
        let rec = r.get("canonical").unwrap();
        assert_eq!(rec.status, Status::Skipped);
        assert!(rec.reason.as_deref().unwrap().contains("16"));
    }
}
