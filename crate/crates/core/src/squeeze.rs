//! Single-mode squeezing.
//!
//! The squeezing operator is `S(zeta) = exp((zeta/2)(a^2 - a^dag^2))`. Its
//! relation to the q-deformed commutator is that the scale generator
//! `G = (a^2 - a^dag^2 - 1)/2` exponentiates to `exp(zeta G) = S(zeta)/sqrt(q)`
//! with `q = e^zeta`; conjugation by `S` is the Bogoliubov map
//! `a -> a cosh(zeta) - a^dag sinh(zeta)`. Positive `zeta` contracts the
//! position quadrature `(a + a^dag)/sqrt(2)` by `e^(-zeta)`.

use ndarray::{s, Array2};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{
    commutator, interior_residual, ladder_ops, matrix_exponential, number_op, FockSpace, Operator,
    StateVector, DEFAULT_EXP_TOL,
};
use crate::report::VerificationReport;

/// Operating range of the numerical backend.
pub const MAX_ZETA: f64 = 10.0;

/// The generator couples `n` to `n +- 2`.
pub const MIN_DIM: usize = 4;

/// Upper bound on the padded space used by [`bogoliubov_residual`].
pub const MAX_WORKING_DIM: usize = 2048;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SqueezeParam {
    zeta: f64,
}

impl SqueezeParam {
    pub fn new(zeta: f64) -> Result<Self> {
        if !zeta.is_finite() || zeta.abs() > MAX_ZETA {
            return Err(Error::SqueezeRange(zeta));
        }
        Ok(Self { zeta })
    }

    /// From the deformation parameter, `zeta = ln q`.
    pub fn from_q(q: f64) -> Result<Self> {
        if !(q > 0.0) {
            return Err(Error::NonPositiveQ(q.to_string()));
        }
        Self::new(q.ln())
    }

    pub fn zeta(&self) -> f64 {
        self.zeta
    }

    pub fn q(&self) -> f64 {
        self.zeta.exp()
    }
}

fn check(space: FockSpace, zeta: f64) -> Result<SqueezeParam> {
    if space.dim() < MIN_DIM {
        return Err(Error::DimensionTooSmall {
            what: "squeezing",
            min: MIN_DIM,
            dim: space.dim(),
        });
    }
    SqueezeParam::new(zeta)
}

/// `(a^2 - a^dag^2) / 2`, anti-Hermitian.
pub fn squeeze_generator(space: FockSpace) -> Operator {
    let (a, ad) = ladder_ops(space);
    &(&(&a * &a) - &(&ad * &ad)) * 0.5
}

/// `(a^2 - a^dag^2 - 1) / 2`: the realization of `z d/dz` obtained from
/// `2 z f' = (a^2 - a^dag^2) f - f`.
pub fn scale_generator(space: FockSpace) -> Operator {
    &squeeze_generator(space) - &(&space.identity() * 0.5)
}

pub fn squeeze_operator(space: FockSpace, zeta: f64) -> Result<Operator> {
    let p = check(space, zeta)?;
    matrix_exponential(&(&squeeze_generator(space) * p.zeta()), DEFAULT_EXP_TOL)
}

/// `S(zeta)|0>`.
pub fn squeezed_vacuum(space: FockSpace, zeta: f64) -> Result<StateVector> {
    squeeze_operator(space, zeta)?.apply(&space.basis_state(0))
}

/// Interior residual between `sqrt(q) exp(zeta G)` and `S(zeta)`, with the two
/// exponentials computed separately.
pub fn dilation_vs_squeeze(space: FockSpace, zeta: f64, margin: usize) -> Result<f64> {
    let p = check(space, zeta)?;
    let dilation = matrix_exponential(&(&scale_generator(space) * p.zeta()), DEFAULT_EXP_TOL)?;
    let lhs = &dilation * p.q().sqrt();
    interior_residual(&lhs, &squeeze_operator(space, zeta)?, margin)
}

/// `(cosh zeta, sinh zeta)`.
pub fn bogoliubov_coefficients(zeta: f64) -> (f64, f64) {
    (zeta.cosh(), zeta.sinh())
}

/// Size of the padded space in which `S(zeta)` is exponentiated before the
/// conjugated lowering operator is compared on the lowest `dim - margin`
/// levels. A squeezed level `n` spreads over roughly `n e^(2|zeta|)` levels;
/// the constant factors were fixed empirically with a safety factor over the
/// smallest working size that reaches 1e-11.
pub fn bogoliubov_working_dim(dim: usize, margin: usize, zeta: f64) -> usize {
    let interior = dim.saturating_sub(margin) as f64;
    let w = ((2.0 * zeta.abs()).exp() * (1.6 * interior + 16.0)).ceil() as usize;
    w.max(dim).div_ceil(8) * 8
}

/// Interior residual of `S^-1 a S` against `a cosh(zeta) - a^dag sinh(zeta)`.
///
/// `S` is exponentiated in the padded space of [`bogoliubov_working_dim`]
/// and the conjugated operator compressed back to `space`; conjugating inside
/// `space` itself would measure the truncation of `S`, not the identity.
pub fn bogoliubov_residual(space: FockSpace, zeta: f64, margin: usize) -> Result<f64> {
    let p = check(space, zeta)?;
    let d = space.dim();
    if margin >= d {
        return Err(Error::MarginTooLarge { margin, dim: d });
    }
    let work = FockSpace::with_max_dim(bogoliubov_working_dim(d, margin, zeta), MAX_WORKING_DIM)?;
    let s_op = matrix_exponential(&(&squeeze_generator(work) * p.zeta()), DEFAULT_EXP_TOL)?;
    let conj = Operator::from_matrix(space, conjugate_lowering(s_op.entries(), d))?;

    let (a, ad) = ladder_ops(space);
    let (ch, sh) = bogoliubov_coefficients(p.zeta());
    let expected = &(&a * ch) - &(&ad * sh);
    interior_residual(&conj, &expected, margin)
}

/// Top-left `d x d` block of `S^dag a S`, with `a` the lowering operator on
/// the full space of `s`. Only the first `d` columns of `S` are needed, and
/// `a` acts on them as a weighted row shift.
fn conjugate_lowering(s_full: &Array2<Complex64>, d: usize) -> Array2<Complex64> {
    let w = s_full.nrows();
    let cols = s_full.slice(s![.., ..d]);
    let mut lowered = Array2::<Complex64>::zeros((w, d));
    for n in 1..w {
        let f = (n as f64).sqrt();
        lowered.row_mut(n - 1).assign(&cols.row(n).mapv(|z| z * f));
    }
    cols.t().mapv(|z| z.conj()).dot(&lowered)
}

/// Interior residual of `[a(zeta), a(zeta)^dag]` against the identity, with
/// `a(zeta) = a cosh(zeta) - a^dag sinh(zeta)`.
pub fn bogoliubov_ccr_residual(space: FockSpace, zeta: f64, margin: usize) -> Result<f64> {
    let p = check(space, zeta)?;
    let (a, ad) = ladder_ops(space);
    let (ch, sh) = bogoliubov_coefficients(p.zeta());
    let az = &(&a * ch) - &(&ad * sh);
    interior_residual(&commutator(&az, &az.adjoint())?, &space.identity(), margin)
}

/// Interior residual of `S(z1) S(z2)` against `S(z1 + z2)`.
pub fn group_law_residual(space: FockSpace, z1: f64, z2: f64, margin: usize) -> Result<f64> {
    let prod = &squeeze_operator(space, z1)? * &squeeze_operator(space, z2)?;
    interior_residual(&prod, &squeeze_operator(space, z1 + z2)?, margin)
}

/// su(1,1) closure for `K- = a^2/2`, `K+ = a^dag^2/2`, `Kz = (a^dag a + 1/2)/2`,
/// plus `Kz = H/2` for `H = a^dag a + 1/2`.
pub fn su11_single_mode(space: FockSpace, margin: usize) -> Result<VerificationReport> {
    su11_single_mode_with_tol(space, margin, 1e-12)
}

pub fn su11_single_mode_with_tol(
    space: FockSpace,
    margin: usize,
    tol: f64,
) -> Result<VerificationReport> {
    if space.dim() < MIN_DIM {
        return Err(Error::DimensionTooSmall {
            what: "su(1,1) single-mode closure",
            min: MIN_DIM,
            dim: space.dim(),
        });
    }
    let (a, ad) = ladder_ops(space);
    let id = space.identity();
    let k_minus = &(&a * &a) * 0.5;
    let k_plus = &(&ad * &ad) * 0.5;
    let hamiltonian = &number_op(space) + &(&id * 0.5);
    let k_z = &(&(&ad * &a) + &(&id * 0.5)) * 0.5;

    let dims = [space.dim()];
    let mut report = VerificationReport::new();
    report.check(
        "su11.single.kz_kplus",
        "[Kz, K+] = K+",
        interior_residual(&commutator(&k_z, &k_plus)?, &k_plus, margin)?,
        tol,
        Some(margin),
        &dims,
    );
    report.check(
        "su11.single.kz_kminus",
        "[Kz, K-] = -K-",
        interior_residual(&commutator(&k_z, &k_minus)?, &(-&k_minus), margin)?,
        tol,
        Some(margin),
        &dims,
    );
    report.check(
        "su11.single.kplus_kminus",
        "[K+, K-] = -2 Kz",
        interior_residual(&commutator(&k_plus, &k_minus)?, &(&k_z * -2.0), margin)?,
        tol,
        Some(margin),
        &dims,
    );
    report.check(
        "su11.single.kz_hamiltonian",
        "Kz = H / (2 hbar omega)",
        interior_residual(&k_z, &(&hamiltonian * 0.5), 0)?,
        tol,
        Some(0),
        &dims,
    );
    report.check(
        "su11.single.kz_vacuum",
        "<0|Kz|0> = 1/4",
        (k_z.get(0, 0) - Complex64::new(0.25, 0.0)).norm(),
        tol,
        None,
        &dims,
    );
    Ok(report)
}

/// `z0 exp(-gamma t)`, the squeezed amplitude with `zeta = gamma t` where
/// `gamma` is the damping rate `gamma/(2m)` of the classical oscillator.
pub fn damped_amplitude(z0: Complex64, gamma: f64, t: f64) -> Complex64 {
    z0 * (-gamma * t).exp()
}
