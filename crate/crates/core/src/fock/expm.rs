//! Dense complex matrix exponential.
//!
//! Scaling and squaring with a diagonal Pade approximant whose degree is
//! picked from the 1-norm of the argument (degrees 3, 5, 7, 9, 13 with the
//! usual backward-error thresholds). Before any of that the matrix is split
//! into the connected components of its sparsity graph: ladder-operator
//! generators typically conserve parity or a number difference, and each
//! invariant block is exponentiated on its own.

use ndarray::{Array2, Axis};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Backward-error thresholds for the Pade degrees in `DEGREES`.
const THETA: [f64; 5] = [
    1.495_585_217_958_292e-2,
    2.539_398_330_063_230e-1,
    9.504_178_996_162_932e-1,
    2.097_847_961_257_068,
    5.371_920_351_148_152,
];
const DEGREES: [usize; 5] = [3, 5, 7, 9, 13];

const UNIT_ROUNDOFF: f64 = f64::EPSILON / 2.0;

/// Outcome of a single exponential: the matrix and the a priori relative
/// error estimate that was checked against the caller's tolerance.
#[derive(Debug, Clone)]
pub(crate) struct Expm {
    pub value: Array2<Complex64>,
    pub error_estimate: f64,
}

pub(crate) fn expm(a: &Array2<Complex64>, tol: f64) -> Result<Expm> {
    let n = a.nrows();
    debug_assert_eq!(n, a.ncols());

    let blocks = invariant_blocks(a);
    let mut value = Array2::<Complex64>::zeros((n, n));
    let mut error_estimate: f64 = 0.0;
    for idx in &blocks {
        let sub = gather(a, idx);
        let (e, est) = expm_block(&sub)?;
        error_estimate = error_estimate.max(est);
        for (bi, &i) in idx.iter().enumerate() {
            for (bj, &j) in idx.iter().enumerate() {
                value[[i, j]] = e[[bi, bj]];
            }
        }
    }

    if value.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::ExpTolerance {
            estimate: f64::INFINITY,
            tol,
        });
    }
    if error_estimate > tol {
        return Err(Error::ExpTolerance {
            estimate: error_estimate,
            tol,
        });
    }
    Ok(Expm {
        value,
        error_estimate,
    })
}

/// Index sets of the connected components of the graph with an edge i-j
/// whenever `a[i,j]` or `a[j,i]` is non-zero. Each set is sorted, and the
/// sets are ordered by their smallest index.
pub(crate) fn invariant_blocks(a: &Array2<Complex64>) -> Vec<Vec<usize>> {
    let n = a.nrows();
    let mut parent: Vec<usize> = (0..n).collect();

    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }

    for ((i, j), z) in a.indexed_iter() {
        if i != j && (z.re != 0.0 || z.im != 0.0) {
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }

    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[slot[r]].push(i);
    }
    blocks
}

fn gather(a: &Array2<Complex64>, idx: &[usize]) -> Array2<Complex64> {
    let rows = a.select(Axis(0), idx);
    rows.select(Axis(1), idx)
}

fn norm_one(a: &Array2<Complex64>) -> f64 {
    a.columns()
        .into_iter()
        .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn expm_block(a: &Array2<Complex64>) -> Result<(Array2<Complex64>, f64)> {
    let n = a.nrows();
    if n == 1 {
        let mut out = Array2::zeros((1, 1));
        out[[0, 0]] = a[[0, 0]].exp();
        return Ok((out, UNIT_ROUNDOFF));
    }

    let norm = norm_one(a);
    for (&m, &theta) in DEGREES.iter().zip(THETA.iter()).take(4) {
        if norm <= theta {
            let e = pade(a, m)?;
            return Ok((e, estimate(norm, 0)));
        }
    }

    let s = if norm > THETA[4] {
        (norm / THETA[4]).log2().ceil() as i32
    } else {
        0
    };
    let scaled = a.mapv(|z| z * 2f64.powi(-s));
    let mut e = pade(&scaled, 13)?;
    for _ in 0..s {
        e = e.dot(&e);
    }
    Ok((e, estimate(norm, s as u32)))
}

/// Relative error model: the approximant carries a backward error of one
/// unit roundoff relative to ||A||, and each squaring adds a rounding step.
fn estimate(norm: f64, squarings: u32) -> f64 {
    UNIT_ROUNDOFF * (1.0 + squarings as f64) * norm.max(1.0)
}

/// Coefficients b_j of the [m/m] Pade approximant to exp, b_0 = 1.
pub(crate) fn pade_coefficients(m: usize) -> Vec<f64> {
    let mut b = vec![1.0; m + 1];
    for j in 1..=m {
        b[j] = b[j - 1] * (m + 1 - j) as f64 / ((2 * m + 1 - j) * j) as f64;
    }
    b
}

fn pade(a: &Array2<Complex64>, m: usize) -> Result<Array2<Complex64>> {
    let n = a.nrows();
    let b = pade_coefficients(m);
    let eye = Array2::<Complex64>::eye(n);
    let a2 = a.dot(a);

    let (u, v) = if m == 13 {
        let a4 = a2.dot(&a2);
        let a6 = a4.dot(&a2);
        let inner_u = &a6 * b[13] + &a4 * b[11] + &a2 * b[9];
        let u = a.dot(&(a6.dot(&inner_u) + &a6 * b[7] + &a4 * b[5] + &a2 * b[3] + &eye * b[1]));
        let inner_v = &a6 * b[12] + &a4 * b[10] + &a2 * b[8];
        let v = a6.dot(&inner_v) + &a6 * b[6] + &a4 * b[4] + &a2 * b[2] + &eye * b[0];
        (u, v)
    } else {
        // Even powers I, A^2, A^4, ... up to A^(m-1).
        let mut powers = vec![eye.clone(), a2.clone()];
        while powers.len() < m.div_ceil(2) {
            let next = powers.last().unwrap().dot(&a2);
            powers.push(next);
        }
        let mut u_inner = Array2::<Complex64>::zeros((n, n));
        let mut v = Array2::<Complex64>::zeros((n, n));
        for (k, p) in powers.iter().enumerate() {
            u_inner = u_inner + p * b[2 * k + 1];
            v = v + p * b[2 * k];
        }
        (a.dot(&u_inner), v)
    };

    solve(&v - &u, &v + &u)
}

/// Solves `lhs * X = rhs` by Gaussian elimination with partial pivoting.
fn solve(mut lhs: Array2<Complex64>, mut rhs: Array2<Complex64>) -> Result<Array2<Complex64>> {
    let n = lhs.nrows();
    let m = rhs.ncols();
    let scale = lhs
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);

    for col in 0..n {
        let mut pivot_row = col;
        let mut best = lhs[[col, col]].norm();
        for row in col + 1..n {
            let v = lhs[[row, col]].norm();
            if v > best {
                best = v;
                pivot_row = row;
            }
        }
        if best <= scale * 1e3 * f64::EPSILON * (n as f64) {
            return Err(Error::SingularDenominator);
        }
        if pivot_row != col {
            for j in 0..n {
                lhs.swap([col, j], [pivot_row, j]);
            }
            for j in 0..m {
                rhs.swap([col, j], [pivot_row, j]);
            }
        }
        let pivot = lhs[[col, col]];
        for row in col + 1..n {
            let factor = lhs[[row, col]] / pivot;
            if factor.re == 0.0 && factor.im == 0.0 {
                continue;
            }
            for j in col..n {
                let t = lhs[[col, j]];
                lhs[[row, j]] -= factor * t;
            }
            for j in 0..m {
                let t = rhs[[col, j]];
                rhs[[row, j]] -= factor * t;
            }
        }
    }

    for col in (0..n).rev() {
        let pivot = lhs[[col, col]];
        for j in 0..m {
            let mut acc = rhs[[col, j]];
            for k in col + 1..n {
                acc -= lhs[[col, k]] * rhs[[k, j]];
            }
            rhs[[col, j]] = acc / pivot;
        }
    }
    Ok(rhs)
}
