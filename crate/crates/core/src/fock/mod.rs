//! Truncated Fock spaces and dense operators on them.
//!
//! Everything here is dimensionless (hbar = m = omega = 1). A space keeps the
//! levels |0>, ..., |D-1>; ladder operators are the exact matrix elements of
//! the infinite-dimensional ones restricted to that block, so identities like
//! `[a, a^dag] = 1` fail only in the last row and column. `interior_residual`
//! is the comparison that accounts for this.

mod expm;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use ndarray::{s, Array1, Array2};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default upper bound on the number of retained levels.
pub const DEFAULT_MAX_DIM: usize = 256;

/// Default tolerance handed to [`matrix_exponential`] by convenience callers.
pub const DEFAULT_EXP_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FockSpace {
    dim: usize,
}

impl FockSpace {
    pub fn new(dim: usize) -> Result<Self> {
        Self::with_max_dim(dim, DEFAULT_MAX_DIM)
    }

    /// Same as [`FockSpace::new`] with an explicit cap on `dim`.
    pub fn with_max_dim(dim: usize, max_dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if dim > max_dim {
            return Err(Error::DimensionCap { dim, cap: max_dim });
        }
        Ok(Self { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn identity(&self) -> Operator {
        Operator {
            space: *self,
            entries: Array2::eye(self.dim),
        }
    }

    pub fn zero(&self) -> Operator {
        Operator {
            space: *self,
            entries: Array2::zeros((self.dim, self.dim)),
        }
    }

    /// The number state |n>.
    ///
    /// # Panics
    /// Panics if `n >= dim`.
    pub fn basis_state(&self, n: usize) -> StateVector {
        assert!(n < self.dim, "level {n} outside a {}-level space", self.dim);
        let mut amplitudes = Array1::zeros(self.dim);
        amplitudes[n] = Complex64::new(1.0, 0.0);
        StateVector {
            space: *self,
            amplitudes,
        }
    }
}

/// A dense operator on a [`FockSpace`].
///
/// The arithmetic operators (`+`, `-`, `*`) panic when the two operands live
/// on different spaces; use [`commutator`] or [`Operator::try_mul`] for the
/// checked versions.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    space: FockSpace,
    entries: Array2<Complex64>,
}

impl Operator {
    pub fn from_matrix(space: FockSpace, entries: Array2<Complex64>) -> Result<Self> {
        let (r, c) = entries.dim();
        if r != space.dim {
            return Err(Error::ShapeMismatch {
                left: space.dim,
                right: r,
            });
        }
        if c != space.dim {
            return Err(Error::ShapeMismatch {
                left: space.dim,
                right: c,
            });
        }
        if entries
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        Ok(Self { space, entries })
    }

    pub fn from_diagonal(space: FockSpace, diag: impl IntoIterator<Item = f64>) -> Result<Self> {
        let d: Vec<Complex64> = diag.into_iter().map(|x| Complex64::new(x, 0.0)).collect();
        Self::from_matrix(space, Array2::from_diag(&Array1::from(d)))
    }

    pub fn space(&self) -> FockSpace {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim
    }

    pub fn entries(&self) -> &Array2<Complex64> {
        &self.entries
    }

    pub fn into_entries(self) -> Array2<Complex64> {
        self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[[row, col]]
    }

    pub fn adjoint(&self) -> Operator {
        Operator {
            space: self.space,
            entries: self.entries.t().mapv(|z| z.conj()),
        }
    }

    pub fn try_mul(&self, rhs: &Operator) -> Result<Operator> {
        same_space(self, rhs)?;
        Ok(Operator {
            space: self.space,
            entries: product(&self.entries, &rhs.entries),
        })
    }

    pub fn scale(&self, c: Complex64) -> Operator {
        Operator {
            space: self.space,
            entries: self.entries.mapv(|z| z * c),
        }
    }

    pub fn apply(&self, v: &StateVector) -> Result<StateVector> {
        if v.space != self.space {
            return Err(Error::ShapeMismatch {
                left: self.dim(),
                right: v.dim(),
            });
        }
        Ok(StateVector {
            space: self.space,
            amplitudes: self.entries.dot(&v.amplitudes),
        })
    }

    /// Tensor product; the composite index is `i * other.dim() + j`.
    pub fn kron(&self, other: &Operator) -> Operator {
        let (d1, d2) = (self.dim(), other.dim());
        let mut out = Array2::zeros((d1 * d2, d1 * d2));
        for ((i, k), x) in self.entries.indexed_iter() {
            if x.re == 0.0 && x.im == 0.0 {
                continue;
            }
            out.slice_mut(s![i * d2..(i + 1) * d2, k * d2..(k + 1) * d2])
                .assign(&other.entries.mapv(|y| x * y));
        }
        Operator {
            space: FockSpace { dim: d1 * d2 },
            entries: out,
        }
    }

    /// The top-left `space.dim()` block, i.e. the compression onto the
    /// lowest levels.
    pub fn restrict(&self, space: FockSpace) -> Result<Operator> {
        if space.dim > self.dim() {
            return Err(Error::ShapeMismatch {
                left: self.dim(),
                right: space.dim,
            });
        }
        let d = space.dim;
        Ok(Operator {
            space,
            entries: self.entries.slice(s![..d, ..d]).to_owned(),
        })
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.diag().sum()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Maximum absolute column sum.
    pub fn norm_one(&self) -> f64 {
        self.entries
            .columns()
            .into_iter()
            .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

/// Matrix product that scatters rows when the left factor is sparse, which
/// is the common case for ladder operators on tensor-product spaces.
fn product(x: &Array2<Complex64>, y: &Array2<Complex64>) -> Array2<Complex64> {
    let n = x.nrows();
    let nnz = x.iter().filter(|z| z.re != 0.0 || z.im != 0.0).count();
    if n < 32 || nnz * 8 > n * n {
        return x.dot(y);
    }
    let mut out = Array2::zeros((n, y.ncols()));
    for ((i, k), &v) in x.indexed_iter() {
        if v.re != 0.0 || v.im != 0.0 {
            out.row_mut(i).zip_mut_with(&y.row(k), |o, &w| *o += v * w);
        }
    }
    out
}

fn same_space(x: &Operator, y: &Operator) -> Result<()> {
    if x.space != y.space {
        return Err(Error::ShapeMismatch {
            left: x.dim(),
            right: y.dim(),
        });
    }
    Ok(())
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.entries.rows() {
            let cells: Vec<String> = row
                .iter()
                .map(|z| format!("{:+.4}{:+.4}i", z.re, z.im))
                .collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl Add for &Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        assert_eq!(self.space, rhs.space, "operators live on different spaces");
        Operator {
            space: self.space,
            entries: &self.entries + &rhs.entries,
        }
    }
}

impl Sub for &Operator {
    type Output = Operator;
    fn sub(self, rhs: &Operator) -> Operator {
        assert_eq!(self.space, rhs.space, "operators live on different spaces");
        Operator {
            space: self.space,
            entries: &self.entries - &rhs.entries,
        }
    }
}

impl Mul for &Operator {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        self.try_mul(rhs)
            .expect("operators live on different spaces")
    }
}

impl Mul<f64> for &Operator {
    type Output = Operator;
    fn mul(self, rhs: f64) -> Operator {
        Operator {
            space: self.space,
            entries: self.entries.mapv(|z| z * rhs),
        }
    }
}

impl Mul<Complex64> for &Operator {
    type Output = Operator;
    fn mul(self, rhs: Complex64) -> Operator {
        self.scale(rhs)
    }
}

impl Neg for &Operator {
    type Output = Operator;
    fn neg(self) -> Operator {
        self * -1.0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    space: FockSpace,
    amplitudes: Array1<Complex64>,
}

impl StateVector {
    pub fn from_amplitudes(space: FockSpace, amplitudes: Array1<Complex64>) -> Result<Self> {
        if amplitudes.len() != space.dim {
            return Err(Error::ShapeMismatch {
                left: space.dim,
                right: amplitudes.len(),
            });
        }
        if amplitudes
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        Ok(Self { space, amplitudes })
    }

    pub fn from_real(space: FockSpace, amplitudes: &[f64]) -> Result<Self> {
        Self::from_amplitudes(
            space,
            amplitudes.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn space(&self) -> FockSpace {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim
    }

    pub fn amplitudes(&self) -> &Array1<Complex64> {
        &self.amplitudes
    }

    pub fn amplitude(&self, n: usize) -> Complex64 {
        self.amplitudes[n]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `<self|other>`, antilinear in `self`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.space != other.space {
            return Err(Error::ShapeMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(x, y)| x.conj() * y)
            .sum())
    }

    pub fn scale(&self, c: Complex64) -> StateVector {
        StateVector {
            space: self.space,
            amplitudes: self.amplitudes.mapv(|z| z * c),
        }
    }

    /// `max_n |self_n - other_n|`.
    pub fn max_abs_diff(&self, other: &StateVector) -> Result<f64> {
        if self.space != other.space {
            return Err(Error::ShapeMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max))
    }

    /// Euclidean distance `||self - other||`.
    pub fn distance(&self, other: &StateVector) -> Result<f64> {
        if self.space != other.space {
            return Err(Error::ShapeMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(x, y)| (x - y).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }
}

/// Lowering and raising operators: `lowering[n-1, n] = sqrt(n)`.
pub fn ladder_ops(space: FockSpace) -> (Operator, Operator) {
    let d = space.dim;
    let mut lowering = Array2::zeros((d, d));
    for n in 1..d {
        lowering[[n - 1, n]] = Complex64::new((n as f64).sqrt(), 0.0);
    }
    let lowering = Operator {
        space,
        entries: lowering,
    };
    let raising = lowering.adjoint();
    (lowering, raising)
}

/// `diag(0, 1, ..., D-1)`.
pub fn number_op(space: FockSpace) -> Operator {
    Operator {
        space,
        entries: Array2::from_diag(&Array1::from_iter(
            (0..space.dim).map(|n| Complex64::new(n as f64, 0.0)),
        )),
    }
}

/// `XY - YX`.
pub fn commutator(x: &Operator, y: &Operator) -> Result<Operator> {
    same_space(x, y)?;
    let xy = product(&x.entries, &y.entries);
    let yx = product(&y.entries, &x.entries);
    Ok(Operator {
        space: x.space,
        entries: xy - yx,
    })
}

/// `exp(X)`.
///
/// Fails if `X` has non-finite entries, if `tol` is not a positive finite
/// number, or if the a priori relative error estimate of the scaling and
/// squaring run (unit roundoff times the number of squarings times
/// `max(1, ||X||_1)`) exceeds `tol`.
pub fn matrix_exponential(x: &Operator, tol: f64) -> Result<Operator> {
    exponential_with_estimate(x, tol).map(|(op, _)| op)
}

/// [`matrix_exponential`] that also returns the error estimate it checked.
pub fn exponential_with_estimate(x: &Operator, tol: f64) -> Result<(Operator, f64)> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidTolerance(tol));
    }
    if x.entries
        .iter()
        .any(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        return Err(Error::NonFinite);
    }
    let out = expm::expm(&x.entries, tol)?;
    Ok((
        Operator {
            space: x.space,
            entries: out.value,
        },
        out.error_estimate,
    ))
}

/// Max-abs entrywise difference of `x` and `y` over rows and columns with
/// index `< D - margin`.
pub fn interior_residual(x: &Operator, y: &Operator, margin: usize) -> Result<f64> {
    same_space(x, y)?;
    let d = x.dim();
    if margin >= d {
        return Err(Error::MarginTooLarge { margin, dim: d });
    }
    let k = d - margin;
    let diff = &x.entries.slice(s![..k, ..k]) - &y.entries.slice(s![..k, ..k]);
    Ok(diff.iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// Truncation margin for an identity whose exponent has scale `exponent_scale`
/// (e.g. |zeta|) and which applies `ladder_power` ladder operators to a level:
/// `ceil(exponent_scale) + 2 * ladder_power`.
pub fn policy_margin(exponent_scale: f64, ladder_power: usize) -> usize {
    exponent_scale.abs().ceil() as usize + 2 * ladder_power
}
