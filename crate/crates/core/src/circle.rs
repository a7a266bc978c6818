//! Discrete calculus on the unit circle.
//!
//! Functions on `T` are carried as equispaced samples at `tau_k = exp(2 pi i k / N)`.
//! The coefficient convention is `f_j = (1/N) sum_k f(tau_k) tau_k^{-j}`, so a
//! band-limited function is recovered exactly from its samples once `N` exceeds
//! twice its band.

use std::cell::RefCell;
use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn forward_plan(len: usize) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft_forward(len))
}

fn inverse_plan(len: usize) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(len))
}

/// Smallest admissible power of two that is at least `min`.
pub fn grid_size_for(min: usize) -> usize {
    min.max(8).next_power_of_two()
}

fn check_size(n: usize) -> Result<()> {
    if n < 8 || !n.is_power_of_two() {
        return Err(Error::InvalidGridSize(n));
    }
    Ok(())
}

/// Samples of a function at the `N` equispaced nodes of the unit circle.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    values: Vec<Complex64>,
}

impl GridFunction {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        check_size(values.len())?;
        Ok(Self { values })
    }

    /// Samples `f(tau_k)` for `k = 0..size`.
    pub fn from_fn(size: usize, f: impl Fn(Complex64) -> Complex64) -> Result<Self> {
        check_size(size)?;
        let values = (0..size).map(|k| f(node(k, size))).collect();
        Ok(Self { values })
    }

    /// Like [`GridFunction::from_fn`] but the closure receives the angle `2 pi k / N`.
    pub fn from_angle_fn(size: usize, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        check_size(size)?;
        let values = (0..size)
            .map(|k| f(2.0 * PI * k as f64 / size as f64))
            .collect();
        Ok(Self { values })
    }

    pub fn size(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> GridFunction {
        GridFunction {
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn zip_with(
        &self,
        other: &GridFunction,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<GridFunction> {
        if self.size() != other.size() {
            return Err(Error::DimensionMismatch {
                expected: self.size(),
                found: other.size(),
            });
        }
        Ok(GridFunction {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn min_modulus(&self) -> f64 {
        self.values
            .iter()
            .map(|v| v.norm())
            .fold(f64::INFINITY, f64::min)
    }
}

/// `tau_k = exp(2 pi i k / N)`.
pub fn node(k: usize, size: usize) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * k as f64 / size as f64)
}

/// Discrete Fourier coefficients `f_j`, `j = -N/2 .. N/2 - 1`, stored in FFT order.
#[derive(Debug, Clone, PartialEq)]
pub struct Coefficients {
    data: Vec<Complex64>,
}

impl Coefficients {
    /// Zero coefficient vector for a grid of `size` nodes.
    pub fn zeros(size: usize) -> Result<Self> {
        check_size(size)?;
        Ok(Self {
            data: vec![Complex64::new(0.0, 0.0); size],
        })
    }

    /// Builds a coefficient vector from `(j, f_j)` pairs. Indices must fit the grid.
    pub fn from_pairs(size: usize, pairs: impl IntoIterator<Item = (i64, Complex64)>) -> Result<Self> {
        let mut c = Self::zeros(size)?;
        for (j, v) in pairs {
            *c.get_mut(j).ok_or_else(|| {
                Error::InvalidArgument(format!("index {j} outside grid of size {size}"))
            })? += v;
        }
        Ok(c)
    }

    pub fn size(&self) -> usize {
        self.data.len()
    }

    pub fn min_index(&self) -> i64 {
        -(self.size() as i64 / 2)
    }

    pub fn max_index(&self) -> i64 {
        self.size() as i64 / 2 - 1
    }

    fn slot(&self, j: i64) -> Option<usize> {
        if j < self.min_index() || j > self.max_index() {
            return None;
        }
        Some(j.rem_euclid(self.size() as i64) as usize)
    }

    /// `f_j`, or zero outside the representable range.
    pub fn get(&self, j: i64) -> Complex64 {
        self.slot(j)
            .map(|i| self.data[i])
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn get_mut(&mut self, j: i64) -> Option<&mut Complex64> {
        self.slot(j).map(move |i| &mut self.data[i])
    }

    /// `(j, f_j)` in increasing `j`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        (self.min_index()..=self.max_index()).map(move |j| (j, self.get(j)))
    }

    /// `sum_j f_j t^j`, pairing nonnegative and negative powers separately.
    pub fn evaluate(&self, t: Complex64) -> Complex64 {
        let plus = horner(
            (0..=self.max_index()).map(|j| self.get(j)),
            t,
        );
        let minus = horner(
            (1..=-self.min_index()).map(|j| self.get(-j)),
            t.inv(),
        ) - self.get(0);
        plus + minus
    }

    pub fn map(&self, f: impl Fn(i64, Complex64) -> Complex64) -> Coefficients {
        let mut out = self.clone();
        for j in self.min_index()..=self.max_index() {
            let v = self.get(j);
            *out.get_mut(j).expect("index in range") = f(j, v);
        }
        out
    }
}

/// Evaluates `sum_k c_k x^k` for coefficients given in increasing order.
fn horner(coeffs: impl DoubleEndedIterator<Item = Complex64>, x: Complex64) -> Complex64 {
    coeffs
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c)
}

pub fn to_coefficients(f: &GridFunction) -> Coefficients {
    let n = f.size();
    let mut data = f.values.clone();
    forward_plan(n).process(&mut data);
    let scale = 1.0 / n as f64;
    for v in &mut data {
        *v *= scale;
    }
    Coefficients { data }
}

pub fn to_samples(c: &Coefficients) -> GridFunction {
    let mut values = c.data.clone();
    inverse_plan(values.len()).process(&mut values);
    GridFunction { values }
}

/// Continuous logarithm of a nonvanishing grid function.
#[derive(Debug, Clone)]
pub struct LogBranch {
    pub samples: GridFunction,
    pub winding: i64,
    pub min_modulus: f64,
}

const NEAR_ZERO: f64 = 1e-10;
const MAX_PHASE_STEP: f64 = 0.75 * PI;

/// `log|f| + i * arg f` with the argument unwrapped along the nodes.
///
/// The branch is fixed by the principal argument of the first sample; every
/// subsequent increment is taken in `(-pi, pi]`.
pub fn continuous_log(f: &GridFunction) -> Result<LogBranch> {
    let values = f.values();
    let mut min_modulus = f64::INFINITY;
    for (index, v) in values.iter().enumerate() {
        let modulus = v.norm();
        if !(modulus >= NEAR_ZERO) {
            return Err(Error::NearZeroSample { index, modulus });
        }
        min_modulus = min_modulus.min(modulus);
    }

    let mut out = Vec::with_capacity(values.len());
    let mut phase = values[0].arg();
    out.push(Complex64::new(values[0].norm().ln(), phase));
    for index in 1..=values.len() {
        let cur = values[index % values.len()];
        let increment = (cur / values[index - 1]).arg();
        if increment.abs() > MAX_PHASE_STEP {
            return Err(Error::UnresolvedPhase { index, increment });
        }
        phase += increment;
        if index < values.len() {
            out.push(Complex64::new(cur.norm().ln(), phase));
        }
    }
    let total = phase - values[0].arg();
    let winding = (total / (2.0 * PI)).round() as i64;

    Ok(LogBranch {
        samples: GridFunction { values: out },
        winding,
        min_modulus,
    })
}

/// Winding number of a nonvanishing grid function about the origin.
pub fn winding(f: &GridFunction) -> Result<i64> {
    continuous_log(f).map(|l| l.winding)
}

/// Riesz projection `P f = sum_{j >= 0} f_j t^j`.
pub fn plus_projection(c: &Coefficients) -> Coefficients {
    c.map(|j, v| if j >= 0 { v } else { Complex64::new(0.0, 0.0) })
}

/// Principal value of `(1/2 pi i) \oint f(tau) / (tau - t0) d tau` for `|t0| = 1`.
///
/// For a Laurent polynomial this is `(1/2)(sum_{j>=0} f_j t0^j - sum_{j<0} f_j t0^j)`.
pub fn pv_cauchy(f: &GridFunction, t0: Complex64) -> Result<Complex64> {
    pv_cauchy_coefficients(&to_coefficients(f), t0)
}

pub fn pv_cauchy_coefficients(c: &Coefficients, t0: Complex64) -> Result<Complex64> {
    if (t0.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::NotUnimodular(t0));
    }
    let plus = horner((0..=c.max_index()).map(|j| c.get(j)), t0);
    let zero = Complex64::new(0.0, 0.0);
    let minus = horner(
        (0..=-c.min_index()).map(|j| if j == 0 { zero } else { c.get(-j) }),
        t0.inv(),
    );
    Ok(0.5 * (plus - minus))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constant_and_monomial_coefficients() {
        let one = GridFunction::from_fn(16, |_| c(1.0, 0.0)).unwrap();
        let co = to_coefficients(&one);
        assert!((co.get(0) - 1.0).norm() < 1e-15);
        assert!(co.iter().filter(|(j, _)| *j != 0).all(|(_, v)| v.norm() < 1e-15));

        let tau = GridFunction::from_fn(16, |t| t).unwrap();
        let co = to_coefficients(&tau);
        assert!((co.get(1) - 1.0).norm() < 1e-15);
        assert!(co.get(0).norm() < 1e-15);
    }

    #[test]
    fn grid_size_is_validated() {
        assert!(matches!(
            GridFunction::new(vec![c(1.0, 0.0); 12]),
            Err(Error::InvalidGridSize(12))
        ));
        assert!(GridFunction::new(vec![c(1.0, 0.0); 4]).is_err());
    }

    #[test]
    fn log_of_minus_one() {
        let f = GridFunction::from_fn(32, |_| c(-1.0, 0.0)).unwrap();
        let l = continuous_log(&f).unwrap();
        assert_eq!(l.winding, 0);
        for v in l.samples.values() {
            assert!(v.re.abs() < 1e-15);
            assert!((v.im.abs() - PI).abs() < 1e-15);
        }
    }

    #[test]
    fn winding_of_identity_is_one() {
        let f = GridFunction::from_fn(8, |t| t).unwrap();
        assert_eq!(winding(&f).unwrap(), 1);
        let g = GridFunction::from_fn(64, |t| t.inv() * t.inv()).unwrap();
        assert_eq!(winding(&g).unwrap(), -2);
    }

    #[test]
    fn near_zero_sample_rejected() {
        let f = GridFunction::from_fn(16, |t| t - 1.0).unwrap();
        assert!(matches!(
            continuous_log(&f),
            Err(Error::NearZeroSample { index: 0, .. })
        ));
    }

    #[test]
    fn under_resolved_phase_rejected() {
        let f = GridFunction::from_fn(8, |t| t.powi(3)).unwrap();
        assert!(matches!(
            continuous_log(&f),
            Err(Error::UnresolvedPhase { .. })
        ));
    }

    #[test]
    fn exp_of_log_reproduces_input() {
        let f = GridFunction::from_fn(64, |t| 3.0 + t + 0.5 * t.inv() * t.inv()).unwrap();
        let l = continuous_log(&f).unwrap();
        for (a, b) in l.samples.values().iter().zip(f.values()) {
            assert!((a.exp() - b).norm() <= 1e-12 * b.norm());
        }
    }

    #[test]
    fn plus_projection_of_cosine() {
        let f = GridFunction::from_fn(16, |t| t + t.inv()).unwrap();
        let p = plus_projection(&to_coefficients(&f));
        assert!((p.get(1) - 1.0).norm() < 1e-15);
        assert!(p.get(-1).norm() == 0.0);
        let back = to_samples(&p);
        for (k, v) in back.values().iter().enumerate() {
            assert!((v - node(k, 16)).norm() < 1e-14);
        }
    }

    #[test]
    fn pv_examples() {
        let one = GridFunction::from_fn(16, |_| c(1.0, 0.0)).unwrap();
        let t0 = Complex64::from_polar(1.0, 0.7);
        assert!((pv_cauchy(&one, t0).unwrap() - 0.5).norm() < 1e-14);

        let tau = GridFunction::from_fn(16, |t| t).unwrap();
        assert!((pv_cauchy(&tau, c(1.0, 0.0)).unwrap() - 0.5).norm() < 1e-14);

        assert!(matches!(
            pv_cauchy(&one, c(1.1, 0.0)),
            Err(Error::NotUnimodular(_))
        ));
    }

    /// Symmetric excision of the arc `|phi| < eps` around `t0`, with `eps -> 0`.
    /// Pairing `phi` with `-phi` cancels the `1/phi` singularity, so a plain
    /// midpoint rule on `(0, pi)` converges to the principal value.
    fn pv_by_indentation(f: impl Fn(Complex64) -> Complex64, t0: Complex64, m: usize) -> Complex64 {
        let h = PI / m as f64;
        let kernel = |phi: f64| {
            let tau = t0 * Complex64::from_polar(1.0, phi);
            f(tau) * Complex64::i() * tau / (tau - t0)
        };
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..m {
            let phi = (k as f64 + 0.5) * h;
            acc += kernel(phi) + kernel(-phi);
        }
        acc * h / (2.0 * PI * Complex64::i())
    }

    #[test]
    fn pv_of_inverse_monomial_matches_indentation_oracle() {
        let oracle = pv_by_indentation(|t| t.inv(), c(1.0, 0.0), 20_000);
        assert!((oracle - c(-0.5, 0.0)).norm() < 1e-8, "oracle {oracle}");

        let f = GridFunction::from_fn(16, |t| t.inv()).unwrap();
        let pv = pv_cauchy(&f, c(1.0, 0.0)).unwrap();
        assert!((pv - oracle).norm() < 1e-8);
    }

    #[test]
    fn pv_of_laurent_polynomial_matches_indentation_oracle() {
        let f = |t: Complex64| c(0.3, 0.1) * t * t - 2.0 * t.inv() + c(0.0, 1.5) * t.inv().powi(3);
        let t0 = Complex64::from_polar(1.0, 2.1);
        let oracle = pv_by_indentation(f, t0, 40_000);
        let pv = pv_cauchy(&GridFunction::from_fn(32, f).unwrap(), t0).unwrap();
        assert!((pv - oracle).norm() < 1e-7, "{pv} vs {oracle}");
    }

    #[test]
    fn plemelj_jump() {
        let f = |t: Complex64| 1.0 + c(0.5, -0.2) * t - 0.75 * t.inv() * t.inv();
        let g = GridFunction::from_fn(32, f).unwrap();
        let co = to_coefficients(&g);
        let t0 = Complex64::from_polar(1.0, -0.4);
        let interior = (0..=co.max_index()).fold(Complex64::new(0.0, 0.0), |a, j| a + co.get(j) * t0.powi(j as i32));
        let pv = pv_cauchy_coefficients(&co, t0).unwrap();
        assert!((interior - pv - 0.5 * f(t0)).norm() < 1e-12);
    }
}
