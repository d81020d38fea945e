//! Dense operators on the two-mode tensor product.
//!
//! The composite index is `i = n_A * D + n_B`. Per-mode truncation means a
//! two-mode identity can only be trusted where both levels are away from
//! the edge, so comparisons go through [`TwoModeSpace::interior_residual`].
//!
//! Sign conventions: `J+ = A^dag B^dag`, `J- = A B`,
//! `J3 = (A^dag A + B^dag B + 1)/2`, and
//! `U(zeta) = exp(-zeta (J+ - J-))`. Then `U(zeta)|0,0>` has amplitudes
//! `sech(zeta) (-tanh zeta)^n`, and the dissipative vacuum is
//! `|0(t)> = U(Gamma t)^dag |0,0>`.

use std::f64::consts::FRAC_1_SQRT_2;

use ndarray::Array1;
use num_complex::Complex64;

use super::paired::PairedState;
use crate::error::{Error, Result};
use crate::fock::{
    commutator, ladder_ops, matrix_exponential, FockSpace, Operator, StateVector, DEFAULT_EXP_TOL,
};
use crate::report::VerificationReport;

/// Largest per-mode dimension of a [`TwoModeSpace`] (`D^2 <= 256`).
pub const MAX_PER_MODE_DIM: usize = 16;

/// Smallest per-mode dimension for the quadratic (two-level jump) checks.
pub const MIN_PER_MODE_DIM: usize = 4;

/// Cap on the padded per-mode dimension used to evaluate vacuum amplitudes.
pub const MAX_WORKING_PER_MODE_DIM: usize = 40;

/// Range of `zeta` accepted by [`double_squeeze`].
pub const MAX_TWO_MODE_ZETA: f64 = 2.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwoModeSpace {
    dim: usize,
}

/// Ladder operators of two modes on a [`TwoModeSpace`]; which physical pair
/// they stand for depends on the caller.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoModeOps {
    pub a: Operator,
    pub a_dag: Operator,
    pub b: Operator,
    pub b_dag: Operator,
}

impl TwoModeOps {
    /// `((a + b)/sqrt2, (a - b)/sqrt2)`. Applying it twice gives back the
    /// original pair.
    pub fn rotate(&self) -> TwoModeOps {
        TwoModeOps {
            a: &(&self.a + &self.b) * FRAC_1_SQRT_2,
            a_dag: &(&self.a_dag + &self.b_dag) * FRAC_1_SQRT_2,
            b: &(&self.a - &self.b) * FRAC_1_SQRT_2,
            b_dag: &(&self.a_dag - &self.b_dag) * FRAC_1_SQRT_2,
        }
    }

    /// `(a^2 - a^dag^2) - (b^2 - b^dag^2)`.
    fn quadratic_difference(&self) -> Operator {
        let first = &(&self.a * &self.a) - &(&self.a_dag * &self.a_dag);
        let second = &(&self.b * &self.b) - &(&self.b_dag * &self.b_dag);
        &first - &second
    }

    /// `(J+, J-, J3)`.
    fn su11(&self) -> (Operator, Operator, Operator) {
        let j_plus = &self.a_dag * &self.b_dag;
        let j_minus = &self.a * &self.b;
        let id = self.a.space().identity();
        let j3 = &(&(&(&self.a_dag * &self.a) + &(&self.b_dag * &self.b)) + &id) * 0.5;
        (j_plus, j_minus, j3)
    }
}

impl TwoModeSpace {
    pub fn new(dim: usize) -> Result<Self> {
        Self::with_cap(dim, MAX_PER_MODE_DIM)
    }

    fn with_cap(dim: usize, cap: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if dim > cap {
            return Err(Error::DimensionCap { dim, cap });
        }
        Ok(Self { dim })
    }

    pub fn per_mode_dim(&self) -> usize {
        self.dim
    }

    /// The `D^2`-dimensional space the operators act on.
    pub fn composite(&self) -> FockSpace {
        let n = self.dim * self.dim;
        FockSpace::with_max_dim(n, n).expect("non-zero dimension")
    }

    pub fn index(&self, n_a: usize, n_b: usize) -> usize {
        debug_assert!(n_a < self.dim && n_b < self.dim);
        n_a * self.dim + n_b
    }

    pub fn levels(&self, index: usize) -> (usize, usize) {
        (index / self.dim, index % self.dim)
    }

    /// `A = a (x) 1` and `B = 1 (x) a`.
    pub fn mode_ops(&self) -> TwoModeOps {
        let single = FockSpace::with_max_dim(self.dim, self.dim).expect("non-zero dimension");
        let (a, a_dag) = ladder_ops(single);
        let id = single.identity();
        TwoModeOps {
            a: a.kron(&id),
            a_dag: a_dag.kron(&id),
            b: id.kron(&a),
            b_dag: id.kron(&a_dag),
        }
    }

    pub fn vacuum(&self) -> StateVector {
        self.composite().basis_state(0)
    }

    /// Places `sum_n c_n |n, n>` in the tensor space.
    pub fn embed(&self, state: &PairedState) -> Result<StateVector> {
        if state.dim() > self.dim {
            return Err(Error::ShapeMismatch {
                left: self.dim,
                right: state.dim(),
            });
        }
        let mut amps = Array1::zeros(self.dim * self.dim);
        for (n, &c) in state.coeffs().iter().enumerate() {
            amps[self.index(n, n)] = Complex64::new(c, 0.0);
        }
        StateVector::from_amplitudes(self.composite(), amps)
    }

    /// The amplitudes `<n, n|v>`, `n = 0, ..., D-1`.
    pub fn paired_amplitudes(&self, v: &StateVector) -> Result<Vec<Complex64>> {
        self.check_vector(v)?;
        Ok((0..self.dim)
            .map(|n| v.amplitude(self.index(n, n)))
            .collect())
    }

    /// Largest entry of `x - y` over rows and columns whose two levels are
    /// both below `D - margin`.
    pub fn interior_residual(&self, x: &Operator, y: &Operator, margin: usize) -> Result<f64> {
        self.check_operator(x)?;
        self.check_operator(y)?;
        if margin >= self.dim {
            return Err(Error::MarginTooLarge {
                margin,
                dim: self.dim,
            });
        }
        let keep = self.dim - margin;
        let inside: Vec<usize> = (0..self.dim * self.dim)
            .filter(|&i| {
                let (na, nb) = self.levels(i);
                na < keep && nb < keep
            })
            .collect();
        let mut worst = 0.0f64;
        for &i in &inside {
            for &j in &inside {
                worst = worst.max((x.get(i, j) - y.get(i, j)).norm());
            }
        }
        Ok(worst)
    }

    fn check_operator(&self, x: &Operator) -> Result<()> {
        if x.dim() != self.dim * self.dim {
            return Err(Error::ShapeMismatch {
                left: self.dim * self.dim,
                right: x.dim(),
            });
        }
        Ok(())
    }

    fn check_vector(&self, v: &StateVector) -> Result<()> {
        if v.dim() != self.dim * self.dim {
            return Err(Error::ShapeMismatch {
                left: self.dim * self.dim,
                right: v.dim(),
            });
        }
        Ok(())
    }

    fn require(&self, what: &'static str) -> Result<()> {
        if self.dim < MIN_PER_MODE_DIM {
            return Err(Error::DimensionTooSmall {
                what,
                min: MIN_PER_MODE_DIM,
                dim: self.dim,
            });
        }
        Ok(())
    }
}

fn check_angle(angle: f64) -> Result<()> {
    if !angle.is_finite() || angle < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "Gamma t must be finite and non-negative, got {angle}"
        )));
    }
    Ok(())
}

fn check_zeta(zeta: f64) -> Result<()> {
    if !zeta.is_finite() || zeta.abs() > MAX_TWO_MODE_ZETA {
        return Err(Error::InvalidParameter(format!(
            "two-mode squeezing needs |zeta| <= {MAX_TWO_MODE_ZETA}, got {zeta}"
        )));
    }
    Ok(())
}

/// `A(t) = A cosh - B^dag sinh`, `B(t) = -A^dag sinh + B cosh` at angle
/// `Gamma t`, with their adjoints.
pub fn evolved_ops(space2: TwoModeSpace, gamma: f64, t: f64) -> Result<TwoModeOps> {
    let x = gamma * t;
    check_angle(x)?;
    let (c, s) = (x.cosh(), x.sinh());
    let m = space2.mode_ops();
    Ok(TwoModeOps {
        a: &(&m.a * c) - &(&m.b_dag * s),
        a_dag: &(&m.a_dag * c) - &(&m.b * s),
        b: &(&m.b * c) - &(&m.a_dag * s),
        b_dag: &(&m.b_dag * c) - &(&m.a * s),
    })
}

fn embedded_ground_state(space2: TwoModeSpace, gamma: f64, t: f64) -> Result<StateVector> {
    space2.embed(&PairedState::ground_state(gamma, t, space2.per_mode_dim())?)
}

/// `(|A(t)|0(t)>|, |B(t)|0(t)>|)` with `|0(t)>` the paired ground state
/// embedded in the tensor space.
pub fn annihilation_residuals(space2: TwoModeSpace, gamma: f64, t: f64) -> Result<(f64, f64)> {
    let ops = evolved_ops(space2, gamma, t)?;
    let vac = embedded_ground_state(space2, gamma, t)?;
    Ok((ops.a.apply(&vac)?.norm(), ops.b.apply(&vac)?.norm()))
}

/// `<0(t)|(N_A - N_B)|0(t)>`.
pub fn number_difference(space2: TwoModeSpace, gamma: f64, t: f64) -> Result<f64> {
    let m = space2.mode_ops();
    let diff = &(&m.a_dag * &m.a) - &(&m.b_dag * &m.b);
    let vac = embedded_ground_state(space2, gamma, t)?;
    Ok(vac.inner(&diff.apply(&vac)?)?.re)
}

pub fn evolved_ops_report(
    space2: TwoModeSpace,
    gamma: f64,
    t: f64,
    margin: usize,
) -> Result<VerificationReport> {
    evolved_ops_report_with_tol(space2, gamma, t, margin, None)
}

/// Canonicity, vacuum annihilation and the `N_A - N_B` constant of motion.
/// `tol` replaces every default tolerance when given.
pub fn evolved_ops_report_with_tol(
    space2: TwoModeSpace,
    gamma: f64,
    t: f64,
    margin: usize,
    tol: Option<f64>,
) -> Result<VerificationReport> {
    let ops = evolved_ops(space2, gamma, t)?;
    let id = space2.composite().identity();
    let zero = space2.composite().zero();
    let dims = [space2.per_mode_dim(), space2.per_mode_dim()];
    let tag = format!("gt={}", gamma * t);
    let mut report = VerificationReport::new();

    let ccr = [
        (
            "a_adag",
            "[A(t), A(t)^dag] = 1",
            commutator(&ops.a, &ops.a_dag)?,
            &id,
        ),
        (
            "b_bdag",
            "[B(t), B(t)^dag] = 1",
            commutator(&ops.b, &ops.b_dag)?,
            &id,
        ),
        (
            "a_b",
            "[A(t), B(t)] = 0",
            commutator(&ops.a, &ops.b)?,
            &zero,
        ),
        (
            "a_bdag",
            "[A(t), B(t)^dag] = 0",
            commutator(&ops.a, &ops.b_dag)?,
            &zero,
        ),
    ];
    for (name, identity, lhs, rhs) in ccr {
        report.check(
            format!("evolved.{tag}.ccr.{name}"),
            identity,
            space2.interior_residual(&lhs, rhs, margin)?,
            tol.unwrap_or(1e-8),
            Some(margin),
            &dims,
        );
    }

    let (ra, rb) = annihilation_residuals(space2, gamma, t)?;
    report.check(
        format!("evolved.{tag}.annihilates.a"),
        "A(t)|0(t)> = 0",
        ra,
        tol.unwrap_or(1e-6),
        None,
        &dims,
    );
    report.check(
        format!("evolved.{tag}.annihilates.b"),
        "B(t)|0(t)> = 0",
        rb,
        tol.unwrap_or(1e-6),
        None,
        &dims,
    );
    report.check(
        format!("evolved.{tag}.number_difference"),
        "<0(t)|N_A - N_B|0(t)> = 0",
        number_difference(space2, gamma, t)?.abs(),
        tol.unwrap_or(1e-10),
        None,
        &dims,
    );
    Ok(report)
}

pub fn hole_relations(space2: TwoModeSpace, gamma: f64, t: f64) -> Result<VerificationReport> {
    hole_relations_with_tol(space2, gamma, t, 1e-6)
}

/// `A^dag(t)|0(t)> = A^dag|0(t)>/cosh = B|0(t)>/sinh` and the same with the
/// roles of `A` and `B` exchanged, compared as vectors (Euclidean norm). At
/// `Gamma t = 0` the `1/sinh` forms are skipped: there is no condensate.
pub fn hole_relations_with_tol(
    space2: TwoModeSpace,
    gamma: f64,
    t: f64,
    tol: f64,
) -> Result<VerificationReport> {
    let x = gamma * t;
    let ops = evolved_ops(space2, gamma, t)?;
    let m = space2.mode_ops();
    let vac = embedded_ground_state(space2, gamma, t)?;
    let dims = [space2.per_mode_dim(), space2.per_mode_dim()];
    let tag = format!("gt={x}");
    let mut report = VerificationReport::new();

    let cases = [
        ("a_dag", "A^dag(t)", &ops.a_dag, &m.a_dag, &m.b),
        ("b_dag", "B^dag(t)", &ops.b_dag, &m.b_dag, &m.a),
    ];
    for (name, label, evolved, creation, partner) in cases {
        let lhs = evolved.apply(&vac)?;
        let created = creation
            .apply(&vac)?
            .scale(Complex64::new(1.0 / x.cosh(), 0.0));
        report.check(
            format!("hole.{tag}.{name}.cosh"),
            format!(
                "{label}|0(t)> = (1/cosh Gamma t) {}|0(t)>",
                &label[..label.len() - 3]
            ),
            lhs.distance(&created)?,
            tol,
            None,
            &dims,
        );
        let sinh_name = format!("hole.{tag}.{name}.sinh");
        let partner_label = if name == "a_dag" { "B" } else { "A" };
        let sinh_identity = format!("{label}|0(t)> = (1/sinh Gamma t) {partner_label}|0(t)>");
        if x == 0.0 {
            report.skip(
                sinh_name,
                sinh_identity,
                tol,
                &dims,
                "Gamma t = 0: 1/sinh is undefined and there is no condensate to annihilate",
            );
        } else {
            let annihilated = partner
                .apply(&vac)?
                .scale(Complex64::new(1.0 / x.sinh(), 0.0));
            report.check(
                sinh_name,
                sinh_identity,
                lhs.distance(&annihilated)?,
                tol,
                None,
                &dims,
            );
        }
    }
    Ok(report)
}

/// The pair `alpha`, `beta` on the tensor factors and the rotated pair
/// `A = (alpha + beta)/sqrt2`, `B = (alpha - beta)/sqrt2` built from them.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalMap {
    pub alpha_beta: TwoModeOps,
    pub rotated: TwoModeOps,
}

pub fn canonical_map(space2: TwoModeSpace) -> CanonicalMap {
    let alpha_beta = space2.mode_ops();
    let rotated = alpha_beta.rotate();
    CanonicalMap {
        alpha_beta,
        rotated,
    }
}

/// Interior residual of
/// `(alpha^2 - alpha^dag^2) - (beta^2 - beta^dag^2) = c (A^dag B^dag - A B)`.
pub fn quadratic_identity_residual(
    space2: TwoModeSpace,
    constant: f64,
    margin: usize,
) -> Result<f64> {
    let map = canonical_map(space2);
    let lhs = map.alpha_beta.quadratic_difference();
    let (j_plus, j_minus, _) = map.rotated.su11();
    let rhs = &(&j_plus - &j_minus) * constant;
    space2.interior_residual(&lhs, &rhs, margin)
}

/// Least-squares `c` in
/// `(alpha^2 - alpha^dag^2) - (beta^2 - beta^dag^2) = c (A^dag B^dag - A B)`
/// over the interior block.
pub fn fit_quadratic_constant(space2: TwoModeSpace, margin: usize) -> Result<f64> {
    if margin >= space2.per_mode_dim() {
        return Err(Error::MarginTooLarge {
            margin,
            dim: space2.per_mode_dim(),
        });
    }
    let map = canonical_map(space2);
    let lhs = map.alpha_beta.quadratic_difference();
    let (j_plus, j_minus, _) = map.rotated.su11();
    let basis = &j_plus - &j_minus;
    let keep = space2.per_mode_dim() - margin;
    let n = space2.composite().dim();
    let (mut num, mut den) = (0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            let (ia, ib) = space2.levels(i);
            let (ja, jb) = space2.levels(j);
            if ia < keep && ib < keep && ja < keep && jb < keep {
                let k = basis.get(i, j);
                num += (k.conj() * lhs.get(i, j)).re;
                den += k.norm_sqr();
            }
        }
    }
    if den == 0.0 {
        return Err(Error::InvalidParameter(
            "interior block too small to fit the quadratic constant".into(),
        ));
    }
    Ok(num / den)
}

pub fn canonical_map_report(space2: TwoModeSpace, margin: usize) -> Result<VerificationReport> {
    canonical_map_report_with_tol(space2, margin, None)
}

/// CCR of the rotated pair, the quadratic identity with constant `-2`, and
/// the su(1,1) closure of `J+ = A^dag B^dag`, `J- = A B`. The reading with
/// constant `-1` is recorded as a skipped entry carrying its residual.
pub fn canonical_map_report_with_tol(
    space2: TwoModeSpace,
    margin: usize,
    tol: Option<f64>,
) -> Result<VerificationReport> {
    space2.require("canonical map")?;
    let map = canonical_map(space2);
    let r = &map.rotated;
    let id = space2.composite().identity();
    let zero = space2.composite().zero();
    let dims = [space2.per_mode_dim(), space2.per_mode_dim()];
    let mut report = VerificationReport::new();

    let ccr = [
        ("a_adag", "[A, A^dag] = 1", commutator(&r.a, &r.a_dag)?, &id),
        ("b_bdag", "[B, B^dag] = 1", commutator(&r.b, &r.b_dag)?, &id),
        ("a_b", "[A, B] = 0", commutator(&r.a, &r.b)?, &zero),
        (
            "a_bdag",
            "[A, B^dag] = 0",
            commutator(&r.a, &r.b_dag)?,
            &zero,
        ),
    ];
    for (name, identity, lhs, rhs) in ccr {
        report.check(
            format!("canonical.ccr.{name}"),
            identity,
            space2.interior_residual(&lhs, rhs, margin)?,
            tol.unwrap_or(1e-12),
            Some(margin),
            &dims,
        );
    }

    let fitted = fit_quadratic_constant(space2, margin)?;
    report.check(
        "canonical.quadratic",
        "(alpha^2 - alpha^dag^2) - (beta^2 - beta^dag^2) = -2 (A^dag B^dag - A B)",
        quadratic_identity_residual(space2, -2.0, margin)?,
        tol.unwrap_or(1e-12),
        Some(margin),
        &dims,
    );
    report.check(
        "canonical.quadratic.fitted_constant",
        "least-squares constant = -2",
        (fitted + 2.0).abs(),
        tol.unwrap_or(1e-12),
        Some(margin),
        &dims,
    );
    let unit_reading = quadratic_identity_residual(space2, -1.0, margin)?;
    report.skip(
        "canonical.quadratic.unit_reading",
        "(alpha^2 - alpha^dag^2) - (beta^2 - beta^dag^2) = -(A^dag B^dag - A B)",
        tol.unwrap_or(1e-12),
        &dims,
        format!(
            "alternative reading with constant -1 leaves interior residual {unit_reading:e}; \
             brute-force least-squares constant is {fitted}"
        ),
    );

    let (j_plus, j_minus, j3) = r.su11();
    push_su11(
        &mut report,
        "canonical.su11",
        space2,
        &j_plus,
        &j_minus,
        &j3,
        margin,
        tol.unwrap_or(1e-10),
    )?;
    Ok(report)
}

#[allow(clippy::too_many_arguments)]
fn push_su11(
    report: &mut VerificationReport,
    prefix: &str,
    space2: TwoModeSpace,
    j_plus: &Operator,
    j_minus: &Operator,
    j3: &Operator,
    margin: usize,
    tol: f64,
) -> Result<()> {
    let dims = [space2.per_mode_dim(), space2.per_mode_dim()];
    let rows = [
        (
            "j3_jplus",
            "[J3, J+] = J+",
            commutator(j3, j_plus)?,
            j_plus.clone(),
        ),
        (
            "j3_jminus",
            "[J3, J-] = -J-",
            commutator(j3, j_minus)?,
            -j_minus,
        ),
        (
            "jplus_jminus",
            "[J+, J-] = -2 J3",
            commutator(j_plus, j_minus)?,
            j3 * -2.0,
        ),
    ];
    for (name, identity, lhs, rhs) in rows {
        report.check(
            format!("{prefix}.{name}"),
            identity,
            space2.interior_residual(&lhs, &rhs, margin)?,
            tol,
            Some(margin),
            &dims,
        );
    }
    Ok(())
}

pub fn su11_two_mode(space2: TwoModeSpace, margin: usize) -> Result<VerificationReport> {
    su11_two_mode_with_tol(space2, margin, 1e-10)
}

/// su(1,1) closure of `J+ = A^dag B^dag`, `J- = A B`,
/// `J3 = (N_A + N_B + 1)/2` with `A`, `B` the tensor factors.
pub fn su11_two_mode_with_tol(
    space2: TwoModeSpace,
    margin: usize,
    tol: f64,
) -> Result<VerificationReport> {
    let (j_plus, j_minus, j3) = space2.mode_ops().su11();
    let mut report = VerificationReport::new();
    push_su11(
        &mut report,
        "su11.two_mode",
        space2,
        &j_plus,
        &j_minus,
        &j3,
        margin,
        tol,
    )?;
    Ok(report)
}

/// Interior residual of `[H0, H_I]` with `H0 = Omega (N_A - N_B)` and
/// `H_I = i Gamma (A^dag B^dag - A B)`.
pub fn h0_hi_commute(space2: TwoModeSpace, omega: f64, gamma: f64, margin: usize) -> Result<f64> {
    let m = space2.mode_ops();
    let h0 = &(&(&m.a_dag * &m.a) - &(&m.b_dag * &m.b)) * omega;
    let hi = &(&(&m.a_dag * &m.b_dag) - &(&m.a * &m.b)) * Complex64::new(0.0, gamma);
    space2.interior_residual(&commutator(&h0, &hi)?, &space2.composite().zero(), margin)
}

/// `U(zeta) = exp((zeta/2) [(alpha^2 - alpha^dag^2) - (beta^2 - beta^dag^2)])`
/// with `alpha`, `beta` the tensor factors.
pub fn double_squeeze(space2: TwoModeSpace, zeta: f64) -> Result<Operator> {
    space2.require("double-mode squeezing")?;
    check_zeta(zeta)?;
    let generator = &space2.mode_ops().quadratic_difference() * (0.5 * zeta);
    matrix_exponential(&generator, DEFAULT_EXP_TOL)
}

/// Per-mode dimension of the padded space in which vacuum amplitudes are
/// evaluated. Truncating the paired chain at level `D` perturbs the top
/// amplitudes at order `tanh^(2 pad)`; the pad keeps the levels below `D`
/// at round-off.
pub fn two_mode_working_dim(dim: usize, zeta: f64) -> usize {
    dim + (6.0 * zeta.abs()).ceil() as usize + 8
}

/// `U(zeta)|0,0>` restricted to per-mode levels below `D`, where `U` acts
/// on the number states of the pair `A`, `B` (the tensor factors of
/// `space2`). Evaluated on a padded space so truncation does not touch the
/// returned levels.
fn padded_vacuum_image(space2: TwoModeSpace, zeta: f64) -> Result<StateVector> {
    check_zeta(zeta)?;
    let d = space2.per_mode_dim();
    let work = TwoModeSpace::with_cap(two_mode_working_dim(d, zeta), MAX_WORKING_PER_MODE_DIM)?;
    // alpha, beta expressed through the factor modes; the rotation is its own
    // inverse, so this is the same U written in the A, B number basis.
    let alpha_beta = work.mode_ops().rotate();
    let generator = &alpha_beta.quadratic_difference() * (0.5 * zeta);
    let u = matrix_exponential(&generator, DEFAULT_EXP_TOL)?;
    let mut amps = Array1::zeros(d * d);
    for n_a in 0..d {
        for n_b in 0..d {
            amps[space2.index(n_a, n_b)] = u.get(work.index(n_a, n_b), 0);
        }
    }
    StateVector::from_amplitudes(space2.composite(), amps)
}

/// `<n, n|U(zeta)|0, 0>` for `n < D`, in the `A`, `B` number basis.
pub fn vacuum_paired_amplitudes(space2: TwoModeSpace, zeta: f64) -> Result<Vec<Complex64>> {
    space2.paired_amplitudes(&padded_vacuum_image(space2, zeta)?)
}

/// `|0(t)> = U(Gamma t)^dag |0,0> = U(-Gamma t)|0,0>` computed by dense
/// evolution rather than from the closed form.
pub fn dense_ground_state(space2: TwoModeSpace, gamma: f64, t: f64) -> Result<StateVector> {
    let x = gamma * t;
    check_angle(x)?;
    padded_vacuum_image(space2, -x)
}

pub fn double_squeeze_report(
    space2: TwoModeSpace,
    zeta: f64,
    margin: usize,
) -> Result<VerificationReport> {
    double_squeeze_report_with_tol(space2, zeta, margin, None)
}

/// `U(zeta) = exp(-zeta (J+ - J-))` on the interior block, and the vacuum
/// amplitudes of `U(zeta)` and `U(zeta)^dag` against the paired closed form.
pub fn double_squeeze_report_with_tol(
    space2: TwoModeSpace,
    zeta: f64,
    margin: usize,
    tol: Option<f64>,
) -> Result<VerificationReport> {
    let u = double_squeeze(space2, zeta)?;
    let (j_plus, j_minus, _) = canonical_map(space2).rotated.su11();
    let su11_form = matrix_exponential(&(&(&j_plus - &j_minus) * -zeta), DEFAULT_EXP_TOL)?;
    let d = space2.per_mode_dim();
    let dims = [d, d];
    let tag = format!("zeta={zeta}");
    let mut report = VerificationReport::new();
    report.check(
        format!("double_squeeze.{tag}.su11_form"),
        "exp((zeta/2)[(alpha^2 - alpha^dag^2) - (beta^2 - beta^dag^2)]) = exp(-zeta (J+ - J-))",
        space2.interior_residual(&u, &su11_form, margin)?,
        tol.unwrap_or(1e-8),
        Some(margin),
        &dims,
    );

    let oracle = PairedState::with_angle(zeta.abs(), d)?;
    let sign: f64 = if zeta < 0.0 { 1.0 } else { -1.0 };
    let forward = padded_vacuum_image(space2, zeta)?;
    let amps = space2.paired_amplitudes(&forward)?;
    let (mut magnitude, mut signed) = (0.0f64, 0.0f64);
    for (n, (amp, c)) in amps.iter().zip(oracle.coeffs()).enumerate() {
        magnitude = magnitude.max((amp.norm() - c).abs());
        signed = signed.max((amp - Complex64::new(sign.powi(n as i32) * c, 0.0)).norm());
    }
    let leakage = (forward.norm().powi(2) - amps.iter().map(|a| a.norm_sqr()).sum::<f64>())
        .max(0.0)
        .sqrt();
    report.check(
        format!("double_squeeze.{tag}.vacuum_magnitude"),
        "|<n,n|U(zeta)|0,0>| = sech(zeta) tanh^n(|zeta|)",
        magnitude,
        tol.unwrap_or(1e-6),
        None,
        &dims,
    );
    report.check(
        format!("double_squeeze.{tag}.vacuum_signed"),
        "<n,n|U(zeta)|0,0> = sech(zeta) (-tanh zeta)^n",
        signed,
        tol.unwrap_or(1e-6),
        None,
        &dims,
    );
    report.check(
        format!("double_squeeze.{tag}.off_paired"),
        "U(zeta)|0,0> lies in span{|n,n>}",
        leakage,
        tol.unwrap_or(1e-6),
        None,
        &dims,
    );
    if zeta >= 0.0 {
        let ground = dense_ground_state(space2, 1.0, zeta)?;
        let embedded = space2.embed(&oracle)?;
        report.check(
            format!("double_squeeze.{tag}.ground_state"),
            "U(Gamma t)^dag |0,0> = |0(t)>",
            ground.max_abs_diff(&embedded)?,
            tol.unwrap_or(1e-6),
            None,
            &dims,
        );
    }
    Ok(report)
}
