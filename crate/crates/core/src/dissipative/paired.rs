use crate::error::{Error, Result};

/// Largest paired-subspace dimension accepted.
pub const MAX_PAIRED_DIM: usize = 100_000;

/// Coefficients `c_n` of a state `sum_n c_n |n, n>` on the paired subspace,
/// `n = 0, ..., D-1`.
///
/// States built from a squeezing angle `x` have `c_n = sech(x) tanh^n(x)`.
/// What the truncation drops is the geometric tail
/// `1 - sum c_n^2 = tanh^(2D)(x)`, reported by [`PairedState::tail`].
#[derive(Clone, Debug, PartialEq)]
pub struct PairedState {
    coeffs: Vec<f64>,
    angle: f64,
}

impl PairedState {
    /// The dissipative vacuum `|0(t)>` at angle `Gamma t`.
    pub fn ground_state(gamma: f64, t: f64, dim: usize) -> Result<Self> {
        Self::with_angle(gamma * t, dim)
    }

    /// Like [`PairedState::ground_state`], but rejects `dim` when the
    /// discarded tail exceeds `tail_bound`.
    pub fn ground_state_within(gamma: f64, t: f64, dim: usize, tail_bound: f64) -> Result<Self> {
        let angle = gamma * t;
        let min_dim = min_dim_for_tail(angle, tail_bound)?;
        if dim < min_dim {
            return Err(Error::TailTooLarge {
                tail: tail(angle, dim),
                requested: tail_bound,
                min_dim,
            });
        }
        Self::with_angle(angle, dim)
    }

    /// Two-mode squeezed vacuum `sech(x) sum_n tanh^n(x) |n, n>`, `x >= 0`.
    pub fn with_angle(angle: f64, dim: usize) -> Result<Self> {
        if !angle.is_finite() || angle < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "squeezing angle must be finite and non-negative, got {angle}"
            )));
        }
        check_dim(dim)?;
        let r = angle.tanh();
        let mut coeffs = Vec::with_capacity(dim);
        let mut c = 1.0 / angle.cosh();
        for _ in 0..dim {
            coeffs.push(c);
            c *= r;
        }
        Ok(Self { coeffs, angle })
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    /// Exact weight of the discarded levels, `tanh^(2D)`.
    pub fn tail(&self) -> f64 {
        tail(self.angle, self.dim())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// `sum_n n c_n^2`, the truncated `<N_A>` (equal to `<N_B>`).
    pub fn mean_number(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| n as f64 * c * c)
            .sum()
    }

    /// Bound `2 D tanh^(2D)` on `|mean_number - sinh^2|`.
    pub fn number_tail_bound(&self) -> f64 {
        2.0 * self.dim() as f64 * self.tail()
    }

    /// `sum_n c_n c'_n` over the common levels.
    pub fn overlap(&self, other: &PairedState) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a * b)
            .sum()
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    if dim > MAX_PAIRED_DIM {
        return Err(Error::DimensionCap {
            dim,
            cap: MAX_PAIRED_DIM,
        });
    }
    Ok(())
}

fn tail(angle: f64, dim: usize) -> f64 {
    angle.tanh().powf(2.0 * dim as f64)
}

/// Smallest `D` with `tanh(angle)^(2D) <= tail_bound`.
pub fn min_dim_for_tail(angle: f64, tail_bound: f64) -> Result<usize> {
    if !(tail_bound > 0.0 && tail_bound < 1.0) {
        return Err(Error::InvalidTolerance(tail_bound));
    }
    if !angle.is_finite() || angle < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "squeezing angle must be finite and non-negative, got {angle}"
        )));
    }
    if angle == 0.0 {
        return Ok(1);
    }
    let log_r = angle.tanh().ln();
    if log_r == 0.0 {
        return Err(Error::DimensionCap {
            dim: usize::MAX,
            cap: MAX_PAIRED_DIM,
        });
    }
    let estimate = (tail_bound.ln() / (2.0 * log_r)).ceil().max(1.0);
    if estimate > MAX_PAIRED_DIM as f64 {
        return Err(Error::DimensionCap {
            dim: estimate as usize,
            cap: MAX_PAIRED_DIM,
        });
    }
    let mut dim = estimate as usize;
    while dim > 1 && tail(angle, dim - 1) <= tail_bound {
        dim -= 1;
    }
    while tail(angle, dim) > tail_bound {
        dim += 1;
    }
    Ok(dim)
}
