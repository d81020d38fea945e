//! Exact q-calculus on the Fock-Bargmann representation.
//!
//! States are polynomials `f(z) = sum p_k z^k` with arbitrary-precision
//! rational coefficients; `a^dag` acts as multiplication by `z`, `a` as
//! `d/dz` and the number operator as `z d/dz`. The deformed lowering operator
//! is the q-derivative `D_q f = (f(qz) - f(z)) / ((q - 1) z)`, and the
//! deformed commutator `[D_q, z]` acts as the dilation `f(z) -> f(qz)`.
//! Nothing in this module rounds; floating point appears only in
//! [`to_fock`], where the `sqrt(n!)` normalization of `u_n = z^n / sqrt(n!)`
//! is applied.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fock::{FockSpace, StateVector};

/// Real positive deformation parameter `q = e^zeta`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QParam(BigRational);

impl QParam {
    pub fn new(q: BigRational) -> Result<Self> {
        if !q.is_positive() {
            return Err(Error::NonPositiveQ(q.to_string()));
        }
        Ok(Self(q))
    }

    /// `num / den`.
    pub fn ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidParameter("zero denominator".into()));
        }
        Self::new(BigRational::new(num.into(), den.into()))
    }

    pub fn integer(q: i64) -> Result<Self> {
        Self::ratio(q, 1)
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn inverse(&self) -> QParam {
        QParam(self.0.recip())
    }

    pub fn pow(&self, k: usize) -> BigRational {
        self.0.pow(k as i32)
    }

    /// `ln q`, the squeezing parameter, in floating point.
    pub fn zeta(&self) -> f64 {
        self.0.to_f64().map_or(f64::NAN, f64::ln)
    }
}

impl fmt::Display for QParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Dense polynomial in `z`, coefficients in ascending degree. The vector is
/// empty for the zero polynomial and has a non-zero last entry otherwise.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c z^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        let mut p = Self { coeffs };
        p.normalize();
        p
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `z^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn evaluate(&self, z: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * z + c)
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        Self::from_coeffs(self.coeffs.iter().map(|p| p * c).collect())
    }

    /// `z f(z)`: the undeformed and deformed raising operator alike.
    pub fn mul_z(&self) -> Polynomial {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(BigRational::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// `f'(z)`.
    pub fn derivative(&self) -> Polynomial {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, p)| p * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("({c}) z"),
                _ => format!("({c}) z^{k}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

fn zip_with(
    x: &Polynomial,
    y: &Polynomial,
    op: impl Fn(&BigRational, &BigRational) -> BigRational,
) -> Polynomial {
    let n = x.coeffs.len().max(y.coeffs.len());
    Polynomial::from_coeffs((0..n).map(|k| op(&x.coeff(k), &y.coeff(k))).collect())
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        zip_with(self, rhs, |a, b| a + b)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        zip_with(self, rhs, |a, b| a - b)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// `[n]_q = (q^n - 1)/(q - 1)`, and `n` at `q = 1`.
pub fn q_number(n: usize, q: &QParam) -> BigRational {
    if q.is_one() {
        return BigRational::from_integer(BigInt::from(n));
    }
    let one = BigRational::one();
    (q.pow(n) - &one) / (q.value() - &one)
}

/// `D_q f` at coefficient level: `(D_q f)_k = [k+1]_q p_(k+1)`.
pub fn q_derivative(f: &Polynomial, q: &QParam) -> Polynomial {
    Polynomial::from_coeffs(
        f.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, p)| q_number(k, q) * p)
            .collect(),
    )
}

/// `D_q f` straight from the difference quotient `(f(qz) - f(z)) / ((q-1) z)`.
/// The numerator has no constant term, so the division by `z` is a shift.
pub fn q_difference_quotient(f: &Polynomial, q: &QParam) -> Result<Polynomial> {
    if q.is_one() {
        return Err(Error::UnitQ);
    }
    let numerator = &dilate(f, q) - f;
    debug_assert!(numerator.coeff(0).is_zero());
    let shifted = Polynomial::from_coeffs(numerator.coeffs.iter().skip(1).cloned().collect());
    Ok(shifted.scale(&(q.value() - BigRational::one()).recip()))
}

/// `f(qz)`.
pub fn dilate(f: &Polynomial, q: &QParam) -> Polynomial {
    let mut power = BigRational::one();
    let mut coeffs = Vec::with_capacity(f.coeffs.len());
    for p in &f.coeffs {
        coeffs.push(p * &power);
        power *= q.value();
    }
    Polynomial::from_coeffs(coeffs)
}

/// `[a_q, a_q^hat] f = D_q(z f) - z D_q(f)`, computed from the two products.
/// Equals `dilate(f, q)`.
pub fn qwh_commutator(f: &Polynomial, q: &QParam) -> Polynomial {
    &q_derivative(&f.mul_z(), q) - &q_derivative(f, q).mul_z()
}

/// Both sides of `2 z f' = (a^2 - a^dag^2) f - f` with `a = (z + d/dz)/sqrt 2`
/// and `a^dag = (z - d/dz)/sqrt 2`. The right side is expanded as
/// `((z + d/dz)^2 f - (z - d/dz)^2 f) / 2 - f`, so the `sqrt 2` factors never
/// appear.
pub fn scale_generator_identity(f: &Polynomial) -> (Polynomial, Polynomial) {
    let two = BigRational::from_integer(2.into());
    let lhs = f.derivative().mul_z().scale(&two);

    let plus = |g: &Polynomial| &g.mul_z() + &g.derivative();
    let minus = |g: &Polynomial| &g.mul_z() - &g.derivative();
    let half = BigRational::new(1.into(), 2.into());
    let alpha_sq_diff = (&plus(&plus(f)) - &minus(&minus(f))).scale(&half);
    let rhs = &alpha_sq_diff - f;
    (lhs, rhs)
}

/// `sqrt(n!)` in floating point, from the exact factorial while it fits in
/// an f64 and by continued products beyond.
fn sqrt_factorial(n: usize) -> f64 {
    const EXACT_LIMIT: usize = 170;
    let m = n.min(EXACT_LIMIT);
    let fact: BigInt = (1..=m).map(BigInt::from).product();
    let mut out = fact.to_f64().unwrap_or(f64::INFINITY).sqrt();
    for k in EXACT_LIMIT + 1..=n {
        out *= (k as f64).sqrt();
    }
    out
}

/// Amplitudes over the orthonormal basis `u_n = z^n / sqrt(n!)`:
/// `c_n = p_n sqrt(n!)`.
pub fn to_fock(f: &Polynomial, space: FockSpace) -> Result<StateVector> {
    if let Some(degree) = f.degree() {
        if degree >= space.dim() {
            return Err(Error::DegreeTooLarge {
                degree,
                dim: space.dim(),
            });
        }
    }
    let amplitudes = (0..space.dim())
        .map(|n| {
            let p = f.coeff(n);
            let v = if p.is_zero() {
                0.0
            } else {
                p.to_f64().unwrap_or(f64::NAN) * sqrt_factorial(n)
            };
            Complex64::new(v, 0.0)
        })
        .collect();
    StateVector::from_amplitudes(space, amplitudes)
}

/// Inverse of [`to_fock`] for real amplitudes. Each `c_n / sqrt(n!)` is
/// converted to the rational with the same f64 value.
pub fn from_fock(state: &StateVector) -> Result<Polynomial> {
    let mut coeffs = Vec::with_capacity(state.dim());
    for (n, c) in state.amplitudes().iter().enumerate() {
        if c.im != 0.0 {
            return Err(Error::NonRealAmplitude { index: n });
        }
        let p = c.re / sqrt_factorial(n);
        coeffs.push(BigRational::from_float(p).ok_or(Error::NonFinite)?);
    }
    Ok(Polynomial::from_coeffs(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn q(n: i64, d: i64) -> QParam {
        QParam::ratio(n, d).unwrap()
    }

    /// Lagrange interpolation through `(x_i, y_i)`, used as an independent
    /// route from sampled values back to coefficients.
    fn interpolate(points: &[(BigRational, BigRational)]) -> Polynomial {
        let mut acc = Polynomial::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut basis = Polynomial::one();
            let mut denom = BigRational::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i != j {
                    basis = &basis.mul_z() - &basis.scale(xj);
                    denom *= xi - xj;
                }
            }
            acc = &acc + &basis.scale(&(yi / denom));
        }
        acc
    }

    #[test]
    fn q_param_validation() {
        assert!(QParam::ratio(0, 1).is_err());
        assert!(QParam::ratio(-3, 2).is_err());
        assert!(QParam::ratio(1, 0).is_err());
        assert!(q(1, 1).is_one());
        assert_eq!(q(3, 2).inverse(), q(2, 3));
        assert!((q(2, 1).zeta() - std::f64::consts::LN_2).abs() < 1e-16);
    }

    #[test]
    fn polynomial_normalizes_trailing_zeros() {
        let p = Polynomial::from_integers(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(Polynomial::from_integers(&[0, 0]).degree(), None);
        assert!((&p - &p).is_zero());
        assert_eq!(
            format!("{}", Polynomial::from_integers(&[1, 0, 3])),
            "1 + (3) z^2"
        );
    }

    #[test]
    fn q_number_examples() {
        assert_eq!(q_number(0, &q(7, 5)), r(0, 1));
        // Independent route: sum_{k<n} q^k with big integers.
        let geometric =
            |n: u32, base: i64| -> BigInt { (0..n).map(|k| BigInt::from(base).pow(k)).sum() };
        assert_eq!(
            q_number(2, &q(2, 1)),
            BigRational::from_integer(geometric(2, 2))
        );
        assert_eq!(q_number(2, &q(2, 1)), r(3, 1));
        assert_eq!(q_number(3, &q(2, 1)), r(7, 1));
        assert_eq!(q_number(5, &q(1, 1)), r(5, 1));
    }

    #[test]
    fn q_derivative_examples() {
        let two = q(2, 1);
        assert_eq!(
            q_derivative(&Polynomial::from_integers(&[0, 1]), &q(7, 5)),
            Polynomial::one()
        );
        assert!(q_derivative(&Polynomial::from_integers(&[9]), &two).is_zero());

        // z^2 at q = 2: sample the difference quotient at five points and
        // interpolate back to coefficients.
        let f = Polynomial::from_integers(&[0, 0, 1]);
        let qv = two.value().clone();
        let samples: Vec<_> = (1..=5)
            .map(|k| {
                let z = r(k, 1);
                let y =
                    (f.evaluate(&(&qv * &z)) - f.evaluate(&z)) / ((&qv - BigRational::one()) * &z);
                (z, y)
            })
            .collect();
        let oracle = interpolate(&samples);
        assert_eq!(oracle, Polynomial::from_integers(&[0, 3]));
        assert_eq!(q_derivative(&f, &two), oracle);
    }

    #[test]
    fn difference_quotient_rejects_unit_q() {
        assert_eq!(
            q_difference_quotient(&Polynomial::one(), &q(1, 1)).unwrap_err(),
            Error::UnitQ
        );
    }

    #[test]
    fn q_to_one_limit() {
        for k in [1_000i64, 1_000_000] {
            let qk = q(k + 1, k);
            for n in 1..=20usize {
                let d = q_derivative(&Polynomial::monomial(BigRational::one(), n), &qk);
                let err = (d.coeff(n - 1) - r(n as i64, 1)).abs();
                assert!(err <= r((n * n) as i64, k), "n {n} k {k}");
            }
        }
    }

    #[test]
    fn dilate_examples() {
        let f = Polynomial::from_integers(&[1, 1, 0, 1]);
        assert_eq!(dilate(&f, &q(1, 1)), f);
        assert_eq!(
            dilate(&Polynomial::from_integers(&[0, 0, 1]), &q(2, 1)),
            Polynomial::from_integers(&[0, 0, 4])
        );
        let got = dilate(&f, &q(3, 1));
        assert_eq!(got, Polynomial::from_integers(&[1, 3, 0, 27]));
        // Pointwise: f(3z) at four points pins a cubic.
        for k in 1..=4 {
            let z = r(k, 1);
            assert_eq!(got.evaluate(&z), f.evaluate(&(r(3, 1) * &z)));
        }
    }

    #[test]
    fn qwh_commutator_examples() {
        let q32 = q(3, 2);
        for n in 0..=32usize {
            let f = Polynomial::monomial(BigRational::one(), n);
            // [n+1]_q - [n]_q = q^n.
            let coeff = q_number(n + 1, &q32) - q_number(n, &q32);
            assert_eq!(coeff, q32.pow(n));
            assert_eq!(qwh_commutator(&f, &q32), Polynomial::monomial(coeff, n));
        }
        assert!(qwh_commutator(&Polynomial::zero(), &q32).is_zero());
        // D_2(z + z^2) - z D_2(1 + z) = (1 + 3z) - z = 1 + 2z.
        assert_eq!(
            qwh_commutator(&Polynomial::from_integers(&[1, 1]), &q(2, 1)),
            Polynomial::from_integers(&[1, 2])
        );
    }

    #[test]
    fn scale_generator_examples() {
        let (l, r0) = scale_generator_identity(&Polynomial::one());
        assert!(l.is_zero() && r0.is_zero());
        let (l, r1) = scale_generator_identity(&Polynomial::from_integers(&[0, 1]));
        assert_eq!(l, Polynomial::from_integers(&[0, 2]));
        assert_eq!(r1, Polynomial::from_integers(&[0, 2]));
        for n in 0..=16usize {
            let (l, rn) = scale_generator_identity(&Polynomial::monomial(BigRational::one(), n));
            let expected = Polynomial::monomial(r(2 * n as i64, 1), n);
            assert_eq!(l, expected);
            assert_eq!(rn, expected);
        }
    }

    #[test]
    fn to_fock_examples() {
        let space = FockSpace::new(4).unwrap();
        let vac = to_fock(&Polynomial::one(), space).unwrap();
        assert_eq!(vac, space.basis_state(0));

        // z^2 / sqrt(2!) is u_2.
        let inv_sqrt2 = BigRational::from_float(std::f64::consts::FRAC_1_SQRT_2).unwrap();
        let u2 = to_fock(&Polynomial::monomial(inv_sqrt2, 2), space).unwrap();
        assert!((u2.amplitude(2).re - 1.0).abs() < 1e-15);
        assert_eq!(u2.amplitude(0).re, 0.0);
        assert_eq!(u2.amplitude(1).re, 0.0);

        let cubic = Polynomial::from_integers(&[0, 0, 0, 0, 1]);
        assert_eq!(
            to_fock(&cubic, space).unwrap_err(),
            Error::DegreeTooLarge { degree: 4, dim: 4 }
        );
    }

    #[test]
    fn sqrt_factorial_continues_past_f64_factorial_range() {
        assert_eq!(sqrt_factorial(0), 1.0);
        assert!((sqrt_factorial(5) - 120f64.sqrt()).abs() < 1e-13);
        let ratio = sqrt_factorial(172) / sqrt_factorial(170);
        assert!((ratio / (171f64 * 172.0).sqrt() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn from_fock_rejects_complex() {
        let space = FockSpace::new(2).unwrap();
        let v = StateVector::from_amplitudes(
            space,
            vec![Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0)].into(),
        )
        .unwrap();
        assert_eq!(
            from_fock(&v).unwrap_err(),
            Error::NonRealAmplitude { index: 0 }
        );
    }
}
