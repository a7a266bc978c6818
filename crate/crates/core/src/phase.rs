//! The regularized function `b_n(t, s)`, its Wiener-Hopf factorization and the
//! phase function `eta_n(s)`.
//!
//! For a symmetric symbol and a spectral parameter `lambda = g_n(s)`,
//!
//! ```text
//! b_n(t, s) = (a_n(t) - g_n(s)) e^{is} / ((t - e^{is}) (1/t - e^{is}))
//!           = -(a_n(t) - g_n(s)) / (t + 1/t - 2 cos s)
//! ```
//!
//! is a Laurent polynomial of degree `n - 2` with coefficients
//! `b_m = -sum_{k > |m|} a_k sin((k - |m|) s) / sin s`. It has winding number
//! zero, so `b = b_+ b_-` with `log b_+ = sum_{j >= 0} f_j t^j` where `f_j` are
//! the Fourier coefficients of `log b`, and `b_-(t) = b_+(1/t) / chi` with
//! `chi = exp(f_0)`. The phase function is fixed by
//! `b_+(e^{is}) / b_+(e^{-is}) = e^{i eta(s)}`, i.e.
//! `eta(s) = 2 sum_{j > 0} f_j sin(j s)`, which vanishes at `s = 0` and `s = pi`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::circle::{
    continuous_log, grid_size_for, node, pv_cauchy_coefficients, to_coefficients, to_samples,
    Coefficients, GridFunction,
};
use crate::error::{Error, Result};
use crate::symbol::FourierSymbol;

/// Radius around `exp(+-is)` inside which the removable singularity of `b` is patched.
pub const EPS_SING: f64 = 1e-6;

/// Radius around `s = 0, pi` inside which `eta` is interpolated to its endpoint value.
pub const ENDPOINT_CLAMP: f64 = 1e-5;

pub const DEFAULT_OVERSAMPLE: usize = 16;

/// Environment variable overriding [`DEFAULT_OVERSAMPLE`].
pub const OVERSAMPLE_ENV: &str = "TSLEIG_GRID_OVERSAMPLE";

pub fn default_oversample() -> usize {
    std::env::var(OVERSAMPLE_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&v| v >= 1)
        .unwrap_or(DEFAULT_OVERSAMPLE)
}

/// Smallest power of two `>= oversample * (n + 2)`.
pub fn default_grid_size(n: usize, oversample: usize) -> usize {
    grid_size_for(oversample * (n + 2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EtaRoute {
    /// Sine series of the plus part of `log b`, with `b` assembled from its exact coefficients.
    Factorization,
    /// Principal-value Cauchy integrals of `log b`, with `b` sampled pointwise.
    PvIntegral,
}

/// How grid samples of `b(., s)` are produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BBackend {
    /// Pointwise quotient with the removable singularity patched.
    Direct,
    /// Inverse FFT of the sine-ratio coefficient series.
    Series,
}

#[derive(Debug, Clone, Serialize)]
pub struct EtaEvaluation {
    pub s: Complex64,
    pub eta: Complex64,
    pub eta_prime: Option<Complex64>,
    pub route: EtaRoute,
    pub winding_checked: bool,
}

/// Coefficients `b_m` and `d b_m / ds` for `m = 0..=n-2`; the negative half mirrors them.
#[derive(Debug, Clone)]
pub struct BSeries {
    pub values: Vec<Complex64>,
    pub derivatives: Vec<Complex64>,
}

impl BSeries {
    fn coefficients(half: &[Complex64], size: usize) -> Coefficients {
        let mut c = Coefficients::zeros(size).expect("grid size validated");
        for (m, &v) in half.iter().enumerate() {
            let m = m as i64;
            *c.get_mut(m).expect("band fits grid") = v;
            if m > 0 {
                *c.get_mut(-m).expect("band fits grid") = v;
            }
        }
        c
    }
}

/// Wiener-Hopf factors of `b_n(., s)`.
#[derive(Debug, Clone)]
pub struct Factorization {
    /// Taylor coefficients of `b_+`, degrees `0..N/2`.
    pub plus_coeffs: Vec<Complex64>,
    pub chi: Complex64,
    /// Mean of `log b` on the circle.
    pub f0: Complex64,
    /// Fourier coefficients of `log b`.
    pub log_coeffs: Coefficients,
}

impl Factorization {
    pub fn plus_at(&self, t: Complex64) -> Complex64 {
        self.plus_coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * t + c)
    }

    /// `b_-(t) = b_+(1/t) / chi`.
    pub fn minus_at(&self, t: Complex64) -> Complex64 {
        self.plus_at(t.inv()) / self.chi
    }

    /// `log b_+(t) = sum_{j >= 0} f_j t^j`, exact for `|t| <= 1` up to aliasing.
    pub fn log_plus_at(&self, t: Complex64) -> Complex64 {
        (0..=self.log_coeffs.max_index())
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, j| acc * t + self.log_coeffs.get(j))
    }

    /// `max_k |b_+(tau_k) b_-(tau_k) - b(tau_k)| / |b(tau_k)|` against reference samples.
    pub fn reconstruction_residual(&self, b: &GridFunction) -> f64 {
        b.values()
            .iter()
            .enumerate()
            .map(|(k, &bk)| {
                let t = node(k, b.size());
                (self.plus_at(t) * self.minus_at(t) - bk).norm() / bk.norm()
            })
            .fold(0.0, f64::max)
    }
}

/// `b_n`, its factorization and `eta_n` for one truncated symbol `a_n`.
#[derive(Debug, Clone)]
pub struct PhaseFunction {
    sym_n: FourierSymbol,
    n: usize,
    grid: usize,
}

impl PhaseFunction {
    /// Works with `a_n`, the truncation of `sym` relevant to `T_n`, on the
    /// default grid for dimension `n`.
    pub fn new(sym: &FourierSymbol, n: usize) -> Self {
        Self {
            sym_n: sym.truncate(n),
            n,
            grid: default_grid_size(n, default_oversample()),
        }
    }

    /// Wraps an already truncated symbol, taking `n = band + 1`.
    pub fn from_truncated(sym_n: &FourierSymbol) -> Self {
        Self::new(sym_n, sym_n.band() + 1)
    }

    pub fn with_oversample(self, oversample: usize) -> Result<Self> {
        let size = default_grid_size(self.n, oversample.max(1));
        self.with_grid_size(size)
    }

    /// Uses `size` nodes; must be a power of two and resolve `b` (`size >= 8 deg b`).
    pub fn with_grid_size(mut self, size: usize) -> Result<Self> {
        if size < 8 || !size.is_power_of_two() {
            return Err(Error::InvalidGridSize(size));
        }
        let required = 8 * self.sym_n.band().saturating_sub(1);
        if size < required {
            return Err(Error::GridTooCoarse { size, required });
        }
        self.grid = size;
        Ok(self)
    }

    pub fn symbol(&self) -> &FourierSymbol {
        &self.sym_n
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn grid_size(&self) -> usize {
        self.grid
    }

    fn check_node(&self, s: Complex64) -> Result<()> {
        let gap = (Complex64::i() * s).exp() - (-Complex64::i() * s).exp();
        if gap.norm() < EPS_SING {
            return Err(Error::DegenerateNode { s });
        }
        Ok(())
    }

    /// `b_n(t, s)` at a point `t` of the unit circle.
    pub fn b(&self, s: Complex64, t: Complex64) -> Result<Complex64> {
        self.check_node(s)?;
        let phi = t.arg();
        for center in [s, -s] {
            let delta = wrap_angle(Complex64::new(phi, 0.0) - center);
            if delta.norm() <= EPS_SING {
                return Ok(self.patched_b(center, delta));
            }
        }
        let sym = &self.sym_n;
        let lambda = sym.g(s);
        Ok(-(sym.value_at(t) - lambda) / (t + t.inv() - 2.0 * s.cos()))
    }

    /// Taylor quotient near `t = exp(i center)`; `delta = phi - center` is tiny.
    fn patched_b(&self, center: Complex64, delta: Complex64) -> Complex64 {
        let sym = &self.sym_n;
        let (g1, g2, g3) = (sym.eval(center, 1), sym.eval(center, 2), sym.eval(center, 3));
        let num = g1 + g2 * delta / 2.0 + g3 * delta * delta / 6.0;
        let den = -2.0 * center.sin() - center.cos() * delta + center.sin() * delta * delta / 3.0;
        -num / den
    }

    /// Sine-ratio coefficients of `b(., s)` and of `d b / ds`.
    pub fn b_series(&self, s: Complex64) -> Result<BSeries> {
        self.check_node(s)?;
        let a = self.sym_n.half_coefficients();
        let band = self.sym_n.band();
        let (z, w) = ((Complex64::i() * s).exp(), (-Complex64::i() * s).exp());
        let (sin, cos) = (s.sin(), s.cos());
        let zero = Complex64::new(0.0, 0.0);
        // E(x)_m = sum_{k>m} a_k x^{k-m}, D(x)_m = sum_{k>m} (k-m) a_k x^{k-m}
        let (mut ez, mut ew, mut dz, mut dw) = (zero, zero, zero, zero);
        let len = band.max(1);
        let mut values = vec![zero; len];
        let mut derivatives = vec![zero; len];
        for m in (0..band).rev() {
            let am = a[m + 1];
            dz = z * (am + dz + ez);
            ez = z * (am + ez);
            dw = w * (am + dw + ew);
            ew = w * (am + ew);
            let sine_sum = (ez - ew) / (2.0 * Complex64::i());
            let cosine_sum = (dz + dw) / 2.0;
            values[m] = -sine_sum / sin;
            derivatives[m] = -(cosine_sum * sin - sine_sum * cos) / (sin * sin);
        }
        Ok(BSeries { values, derivatives })
    }

    pub fn sample_b(&self, s: Complex64, backend: BBackend) -> Result<GridFunction> {
        match backend {
            BBackend::Series => {
                let series = self.b_series(s)?;
                Ok(to_samples(&BSeries::coefficients(&series.values, self.grid)))
            }
            BBackend::Direct => {
                self.check_node(s)?;
                let values = (0..self.grid)
                    .map(|k| self.b(s, node(k, self.grid)))
                    .collect::<Result<Vec<_>>>()?;
                GridFunction::new(values)
            }
        }
    }

    fn log_coefficients(&self, samples: &GridFunction) -> Result<Coefficients> {
        let log = continuous_log(samples)?;
        if log.winding != 0 {
            return Err(Error::NonzeroWinding(log.winding));
        }
        Ok(to_coefficients(&log.samples))
    }

    pub fn factorize(&self, s: Complex64) -> Result<Factorization> {
        let samples = self.sample_b(s, BBackend::Series)?;
        let log_coeffs = self.log_coefficients(&samples)?;
        let f0 = log_coeffs.get(0);
        let plus_log = to_samples(&log_coeffs.map(|j, v| if j >= 0 { v } else { Complex64::new(0.0, 0.0) }));
        let plus = to_coefficients(&plus_log.map(|v| v.exp()));
        let plus_coeffs = (0..=plus.max_index()).map(|j| plus.get(j)).collect();
        Ok(Factorization {
            plus_coeffs,
            chi: f0.exp(),
            f0,
            log_coeffs,
        })
    }

    /// `eta(s) = 2 sum_{j>0} f_j sin(j s)` from the plus part of `log b`.
    fn eta_from_log(log: &Coefficients, s: Complex64) -> Complex64 {
        (1..=log.max_index())
            .rev()
            .map(|j| log.get(j) * (s * j as f64).sin())
            .sum::<Complex64>()
            * 2.0
    }

    pub fn eta(&self, s: Complex64, route: EtaRoute) -> Result<EtaEvaluation> {
        let eta = match route {
            EtaRoute::Factorization => {
                let samples = self.sample_b(s, BBackend::Series)?;
                Self::eta_from_log(&self.log_coefficients(&samples)?, s)
            }
            EtaRoute::PvIntegral => {
                if s.im.abs() > 1e-12 {
                    return Err(Error::ComplexParameter(s));
                }
                let samples = self.sample_b(s, BBackend::Direct)?;
                let log = self.log_coefficients(&samples)?;
                let t = Complex64::from_polar(1.0, s.re);
                let forward = pv_cauchy_coefficients(&log, t)?;
                let backward = pv_cauchy_coefficients(&log, t.conj())?;
                -Complex64::i() * (forward - backward)
            }
        };
        Ok(EtaEvaluation {
            s,
            eta,
            eta_prime: None,
            route,
            winding_checked: true,
        })
    }

    /// `eta(s)` by the factorization route.
    pub fn eta_value(&self, s: Complex64) -> Result<Complex64> {
        let samples = self.sample_b(s, BBackend::Series)?;
        Ok(Self::eta_from_log(&self.log_coefficients(&samples)?, s))
    }

    /// `eta(s)` and the total derivative `eta'(s)`.
    ///
    /// `eta' = 2 sum_{j>0} (j f_j cos(js) + f_j' sin(js))` where `f_j'` are the
    /// coefficients of `(d b / ds) / b`.
    pub fn eta_with_derivative(&self, s: Complex64) -> Result<EtaEvaluation> {
        let series = self.b_series(s)?;
        let b = to_samples(&BSeries::coefficients(&series.values, self.grid));
        let db = to_samples(&BSeries::coefficients(&series.derivatives, self.grid));
        let log = self.log_coefficients(&b)?;
        let dlog = to_coefficients(&db.zip_with(&b, |d, v| d / v)?);
        let mut eta = Complex64::new(0.0, 0.0);
        let mut eta_prime = Complex64::new(0.0, 0.0);
        for j in (1..=log.max_index()).rev() {
            let x = s * j as f64;
            let (sin, cos) = (x.sin(), x.cos());
            eta += log.get(j) * sin;
            eta_prime += log.get(j) * cos * j as f64 + dlog.get(j) * sin;
        }
        Ok(EtaEvaluation {
            s,
            eta: 2.0 * eta,
            eta_prime: Some(2.0 * eta_prime),
            route: EtaRoute::Factorization,
            winding_checked: true,
        })
    }

    pub fn eta_derivative(&self, s: Complex64) -> Result<Complex64> {
        Ok(self
            .eta_with_derivative(s)?
            .eta_prime
            .expect("derivative computed"))
    }

    /// Central difference of [`PhaseFunction::eta_value`] with step `h`.
    pub fn eta_derivative_fd(&self, s: Complex64, h: f64) -> Result<Complex64> {
        Ok((self.eta_value(s + h)? - self.eta_value(s - h)?) / (2.0 * h))
    }

    /// `eta` on the whole closed interval: inside the endpoint neighborhoods the
    /// value is interpolated linearly to `eta(0) = eta(pi) = 0`.
    pub fn eta_clamped(&self, s: Complex64) -> Result<Complex64> {
        if s.re < ENDPOINT_CLAMP {
            let edge = self.eta_value(Complex64::new(ENDPOINT_CLAMP, 0.0))?;
            Ok(edge * s / ENDPOINT_CLAMP)
        } else if s.re > PI - ENDPOINT_CLAMP {
            let edge = self.eta_value(Complex64::new(PI - ENDPOINT_CLAMP, 0.0))?;
            Ok(edge * (PI - s) / ENDPOINT_CLAMP)
        } else {
            self.eta_value(s)
        }
    }

    /// `eta`, `eta'` at `points` equispaced interior parameters `s_k = pi k / (points + 1)`.
    pub fn eta_table(&self, points: usize) -> Result<Vec<EtaRow>> {
        let mut rows: Vec<EtaRow> = Vec::with_capacity(points);
        for k in 1..=points {
            let s = PI * k as f64 / (points + 1) as f64;
            let e = self.eta_with_derivative(Complex64::new(s, 0.0))?;
            let branch_jump = rows
                .last()
                .is_some_and(|prev| (prev.eta - e.eta).norm() > PI);
            rows.push(EtaRow {
                s,
                eta: e.eta,
                eta_prime: e.eta_prime.expect("derivative computed"),
                branch_jump,
            });
        }
        Ok(rows)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EtaRow {
    pub s: f64,
    pub eta: Complex64,
    pub eta_prime: Complex64,
    /// Set when `eta` moved by more than `pi` since the previous row.
    pub branch_jump: bool,
}

fn wrap_angle(x: Complex64) -> Complex64 {
    let re = (x.re + PI).rem_euclid(2.0 * PI) - PI;
    Complex64::new(re, x.im)
}

/// `b_n(t, s)` for an already truncated symbol.
pub fn eval_b(sym_n: &FourierSymbol, s: Complex64, t: Complex64) -> Result<Complex64> {
    PhaseFunction::from_truncated(sym_n).b(s, t)
}

pub fn sample_b(
    sym_n: &FourierSymbol,
    s: Complex64,
    size: usize,
    backend: BBackend,
) -> Result<GridFunction> {
    PhaseFunction::from_truncated(sym_n)
        .with_grid_size(size)?
        .sample_b(s, backend)
}

pub fn factorize(sym_n: &FourierSymbol, s: Complex64, size: usize) -> Result<Factorization> {
    PhaseFunction::from_truncated(sym_n)
        .with_grid_size(size)?
        .factorize(s)
}

pub fn eta(sym_n: &FourierSymbol, s: Complex64, route: EtaRoute) -> Result<EtaEvaluation> {
    PhaseFunction::from_truncated(sym_n).eta(s, route)
}

pub fn eta_derivative(sym_n: &FourierSymbol, s: Complex64) -> Result<Complex64> {
    PhaseFunction::from_truncated(sym_n).eta_derivative(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real(s: f64) -> Complex64 {
        c(s, 0.0)
    }

    fn pentadiagonal() -> FourierSymbol {
        FourierSymbol::from_half(vec![c(0.3, 0.1), c(1.0, 0.0), c(0.2, 0.15)], 0.0)
    }

    #[test]
    fn tridiagonal_b_is_minus_one() {
        let pf = PhaseFunction::new(&FourierSymbol::tridiagonal(), 10);
        for s in [0.3, 1.0, 2.5] {
            for k in 0..7 {
                let t = Complex64::from_polar(1.0, 0.9 * k as f64);
                assert!((pf.b(real(s), t).unwrap() + 1.0).norm() < 1e-13);
            }
            let grid = pf.sample_b(real(s), BBackend::Direct).unwrap();
            assert!(grid.values().iter().all(|v| (v + 1.0).norm() < 1e-13));
            let grid = pf.sample_b(real(s), BBackend::Series).unwrap();
            assert!(grid.values().iter().all(|v| (v + 1.0).norm() < 1e-13));
        }
    }

    #[test]
    fn patched_node_matches_nearby_value() {
        let pf = PhaseFunction::from_truncated(&pentadiagonal());
        for s in [0.4, 1.3, 2.7] {
            for sign in [1.0, -1.0] {
                let t = Complex64::from_polar(1.0, sign * s);
                let at = pf.b(real(s), t).unwrap();
                let near = pf.b(real(s), t * Complex64::from_polar(1.0, 1e-7)).unwrap();
                assert!((at - near).norm() < 1e-6 * at.norm(), "{at} vs {near}");
                // exact Laurent value at the node
                let series = pf.b_series(real(s)).unwrap();
                let lv = series.values[0]
                    + series.values.iter().enumerate().skip(1).map(|(m, v)| v * (t.powi(m as i32) + t.powi(-(m as i32)))).sum::<Complex64>();
                assert!((at - lv).norm() < 1e-12 * lv.norm().max(1.0));
            }
        }
    }

    #[test]
    fn degenerate_nodes_rejected() {
        let pf = PhaseFunction::from_truncated(&pentadiagonal());
        for s in [0.0, 1e-8, PI, PI - 1e-9] {
            assert!(matches!(
                pf.b(real(s), c(0.0, 1.0)),
                Err(Error::DegenerateNode { .. })
            ));
            assert!(matches!(pf.eta_value(real(s)), Err(Error::DegenerateNode { .. })));
        }
    }

    #[test]
    fn b_is_symmetric_in_t() {
        let pf = PhaseFunction::from_truncated(&pentadiagonal());
        for s in [c(0.7, 0.0), c(1.9, 0.01)] {
            for k in 0..11 {
                let t = Complex64::from_polar(1.0, 0.37 + 0.55 * k as f64);
                let d = pf.b(s, t).unwrap() - pf.b(s, t.inv()).unwrap();
                assert!(d.norm() < 1e-10);
            }
        }
    }

    #[test]
    fn backends_agree_on_small_symbol() {
        let pf = PhaseFunction::from_truncated(&pentadiagonal());
        for s in [c(0.5, 0.0), c(2.0, -0.02)] {
            let d = pf.sample_b(s, BBackend::Direct).unwrap();
            let r = pf.sample_b(s, BBackend::Series).unwrap();
            for (x, y) in d.values().iter().zip(r.values()) {
                assert!((x - y).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn tridiagonal_factorization_is_constant() {
        let pf = PhaseFunction::new(&FourierSymbol::tridiagonal(), 12);
        let f = pf.factorize(real(1.1)).unwrap();
        assert!((f.chi + 1.0).norm() < 1e-14);
        assert!((f.plus_coeffs[0] + 1.0).norm() < 1e-14);
        assert!(f.plus_coeffs.iter().skip(1).all(|v| v.norm() < 1e-14));
        let t = Complex64::from_polar(1.0, 0.2);
        assert!((f.plus_at(t) * f.minus_at(t) + 1.0).norm() < 1e-14);
    }

    #[test]
    fn tridiagonal_eta_vanishes() {
        let tri = FourierSymbol::tridiagonal();
        let pf = PhaseFunction::new(&tri, 30);
        for s in [0.2, 1.0, 3.0] {
            let e = pf.eta_with_derivative(real(s)).unwrap();
            assert!(e.eta.norm() < 1e-14);
            assert!(e.eta_prime.unwrap().norm() < 1e-14);
            assert!(pf.eta(real(s), EtaRoute::PvIntegral).unwrap().eta.norm() < 1e-14);
        }
        // a constant shift changes lambda and a(t) alike
        let shifted = PhaseFunction::new(&tri.shifted(c(0.7, -0.3)), 30);
        assert!(shifted.eta_derivative(real(0.8)).unwrap().norm() < 1e-14);
    }

    #[test]
    fn shift_leaves_eta_unchanged() {
        let base = PhaseFunction::from_truncated(&pentadiagonal());
        let moved = PhaseFunction::from_truncated(&pentadiagonal().shifted(c(-2.0, 0.5)));
        for s in [c(0.6, 0.0), c(2.2, 0.01)] {
            let (a, b) = (base.eta_with_derivative(s).unwrap(), moved.eta_with_derivative(s).unwrap());
            assert!((a.eta - b.eta).norm() < 1e-14);
            assert!((a.eta_prime.unwrap() - b.eta_prime.unwrap()).norm() < 1e-13);
        }
    }

    #[test]
    fn routes_agree_and_derivative_matches_fd() {
        let pf = PhaseFunction::from_truncated(&pentadiagonal());
        for s in [0.3, 1.5, 2.8] {
            let f = pf.eta(real(s), EtaRoute::Factorization).unwrap().eta;
            let p = pf.eta(real(s), EtaRoute::PvIntegral).unwrap().eta;
            assert!((f - p).norm() < 1e-12, "{f} vs {p}");
            let an = pf.eta_derivative(real(s)).unwrap();
            let fd = pf.eta_derivative_fd(real(s), 1e-5).unwrap();
            assert!((an - fd).norm() < 1e-8 * an.norm().max(1.0), "{an} vs {fd}");
        }
    }

    #[test]
    fn pv_route_rejects_complex_parameter() {
        let pf = PhaseFunction::from_truncated(&pentadiagonal());
        assert!(matches!(
            pf.eta(c(1.0, 0.01), EtaRoute::PvIntegral),
            Err(Error::ComplexParameter(_))
        ));
    }

    #[test]
    fn eta_vanishes_at_endpoints() {
        let pf = PhaseFunction::from_truncated(&pentadiagonal());
        let near0 = pf.eta_value(real(1e-4)).unwrap();
        let nearpi = pf.eta_value(real(PI - 1e-4)).unwrap();
        assert!(near0.norm() < 1e-3 && nearpi.norm() < 1e-3);
        assert_eq!(pf.eta_clamped(real(0.0)).unwrap(), c(0.0, 0.0));
        assert!(pf.eta_clamped(real(PI)).unwrap().norm() < 1e-15);
        let mid = pf.eta_clamped(real(ENDPOINT_CLAMP / 2.0)).unwrap();
        assert!((mid - 0.5 * pf.eta_value(real(ENDPOINT_CLAMP)).unwrap()).norm() < 1e-15);
    }

    #[test]
    fn grid_checks() {
        let pf = PhaseFunction::from_truncated(&pentadiagonal());
        assert!(matches!(pf.clone().with_grid_size(24), Err(Error::InvalidGridSize(24))));
        let wide = FourierSymbol::from_half((0..40).map(|j| c(1.0 / (1.0 + j as f64).powi(3), 0.0)).collect(), 0.0);
        assert!(matches!(
            PhaseFunction::from_truncated(&wide).with_grid_size(256),
            Err(Error::GridTooCoarse { .. })
        ));
    }
}
