use qdamp_core::classical;
use qdamp_core::dissipative::{mode_number, vacuum_overlap};
use qdamp_core::fock::{policy_margin, FockSpace};
use qdamp_core::report::VerificationReport;
use qdamp_core::squeeze;
use qdamp_core::suite::{self, SuiteConfig};

use crate::config::RunConfig;
use crate::output::Table;
use crate::CliError;

/// Highest `n` in the `<2n|S|0>` columns of `squeeze`.
pub const EVEN_AMPLITUDES: usize = 8;

pub fn verify(config: &RunConfig) -> VerificationReport {
    suite::run(&SuiteConfig {
        dim: config.dim,
        tolerance: config.tolerance,
        modes: config.modes.clone(),
        oscillator: config.oscillator,
        ..SuiteConfig::default()
    })
}

/// Rows `(t, overlap, total N_A, N_A per mode)` over the time grid.
pub fn evolve(config: &RunConfig) -> Table {
    let mut columns = vec![
        "t".to_string(),
        "overlap".to_string(),
        "total_N_A".to_string(),
    ];
    columns.extend(config.modes.iter().map(|m| format!("N_A_{}", m.kappa())));
    let mut table = Table::new(columns);
    for t in config.time_grid.points() {
        let numbers: Vec<f64> = config
            .modes
            .iter()
            .map(|m| mode_number(m.gamma(), t))
            .collect();
        let mut row = vec![t, vacuum_overlap(&config.modes, t), numbers.iter().sum()];
        row.extend(numbers);
        table.push(row);
    }
    table
}

/// Rows `(t, z_numeric, z_analytic, envelope)` at every integration step in
/// `[t_start, t_end]`.
pub fn classical(config: &RunConfig) -> Result<Table, CliError> {
    let p = &config.oscillator;
    classical::shifted_frequency(p)?;
    let grid = &config.time_grid;
    let mut table = Table::new(
        ["t", "z_numeric", "z_analytic", "envelope"]
            .map(String::from)
            .to_vec(),
    );
    if grid.t_end < config.dt {
        let (z, _) = classical::analytic_solution(p, 0.0)?;
        table.push(vec![0.0, p.z0, z, classical::envelope(p, 0.0)]);
        return Ok(table);
    }
    for s in classical::integrate(p, config.dt, grid.t_end)? {
        if s.t + 1e-12 < grid.t_start {
            continue;
        }
        let (z, _) = classical::analytic_solution(p, s.t)?;
        table.push(vec![s.t, s.z, z, classical::envelope(p, s.t)]);
    }
    Ok(table)
}

/// Rows `(zeta, bogoliubov residual, dilation residual, <0|S|0>,
/// <2n|S|0> for n = 0..=8)`.
pub fn squeeze(config: &RunConfig) -> Result<Table, CliError> {
    let space = FockSpace::new(config.dim.unwrap_or(48))?;
    let mut columns: Vec<String> = [
        "zeta",
        "bogoliubov_residual",
        "dilation_residual",
        "vacuum_overlap",
    ]
    .map(String::from)
    .to_vec();
    columns.extend((0..=EVEN_AMPLITUDES).map(|n| format!("amp_{}", 2 * n)));
    let mut table = Table::new(columns);
    for &zeta in &config.zeta_grid {
        let bog = squeeze::bogoliubov_residual(space, zeta, policy_margin(zeta, 1))?;
        let dil = squeeze::dilation_vs_squeeze(space, zeta, policy_margin(zeta, 2))?;
        let vac = squeeze::squeezed_vacuum(space, zeta)?;
        let mut row = vec![zeta, bog, dil, vac.amplitude(0).re];
        row.extend((0..=EVEN_AMPLITUDES).map(|n| {
            let level = 2 * n;
            if level < space.dim() {
                vac.amplitude(level).re
            } else {
                f64::NAN
            }
        }));
        table.push(row);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use qdamp_core::dissipative::ModeSpec;

    #[test]
    fn evolve_first_row_and_unit_time() {
        let mut c = RunConfig::default();
        c.time_grid.t_end = 1.0;
        c.time_grid.steps = 1;
        let t = evolve(&c);
        assert_eq!(t.rows[0], vec![0.0, 1.0, 0.0, 0.0]);
        let last = &t.rows[1];
        assert!((last[1] - 0.648_054).abs() < 1e-6);
        assert!((last[2] - 1.381_098).abs() < 1e-6);
    }

    #[test]
    fn evolve_ten_modes() {
        let mut c = RunConfig::default();
        c.modes = (0..10)
            .map(|k| ModeSpec::new(format!("k{k}"), 1.0, 1.0).unwrap())
            .collect();
        c.time_grid.t_end = 1.0;
        c.time_grid.steps = 1;
        let t = evolve(&c);
        assert_eq!(t.columns.len(), 13);
        assert!((t.rows[1][1] - 1.0f64.cosh().powi(-10)).abs() < 1e-15);
    }

    #[test]
    fn classical_defaults_track_closed_form() {
        let t = classical(&RunConfig::default()).unwrap();
        assert_eq!(t.rows.len(), 10_001);
        let worst = t
            .rows
            .iter()
            .map(|r| (r[1] - r[2]).abs())
            .fold(0.0, f64::max);
        assert!(worst <= 1e-8);
    }

    #[test]
    fn classical_undamped_is_a_cosine() {
        let mut c = RunConfig::default();
        c.oscillator.gamma = 0.0;
        let t = classical(&c).unwrap();
        for r in &t.rows {
            assert!((r[1] - r[0].cos()).abs() <= 1e-8);
        }
    }

    #[test]
    fn envelope_halves_every_ln2_over_rate() {
        let mut c = RunConfig::default();
        c.time_grid.t_end = 20.0;
        let t = classical(&c).unwrap();
        // rate 0.25, half-life 4 ln 2
        let half_life = 4.0 * 2f64.ln();
        for k in 0..4 {
            let t0 = k as f64 * 3.0;
            let e0 = classical::envelope(&c.oscillator, t0);
            let e1 = classical::envelope(&c.oscillator, t0 + half_life);
            assert!((e1 / e0 - 0.5).abs() < 1e-14);
        }
        let at = |row: usize| t.rows[row][3];
        assert!((at(4000) / at(0) - (-1.0f64).exp()).abs() < 1e-14);
    }

    #[test]
    fn classical_rejects_overdamped() {
        let mut c = RunConfig::default();
        c.oscillator.gamma = 3.0;
        assert!(classical(&c).is_err());
    }

    #[test]
    fn squeeze_zero_and_unit_rows() {
        let mut c = RunConfig::default();
        c.zeta_grid = vec![0.0, 1.0];
        let t = squeeze(&c).unwrap();
        assert_eq!(t.rows[0][1], 0.0);
        assert_eq!(t.rows[0][2], 0.0);
        assert_eq!(t.rows[0][3], 1.0);
        assert!((t.rows[1][3] - 0.805_018).abs() < 1e-6);
        assert!(t.rows[1][1] <= 1e-8 && t.rows[1][2] <= 1e-8);
    }
}
