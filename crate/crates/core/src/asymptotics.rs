//! Eigenvalue asymptotics from the phase equation.
//!
//! For `j = 1..=n` let `d_{j,n} = pi j / (n + 1)`. The parameter `s_{j,n}` solves
//! `F_n(s) = s + eta_n(s) / (n + 1) = d_{j,n}` and the eigenvalue is
//! `g_n(s_{j,n})`. The root is found by successive approximation
//! `s <- d_{j,n} - eta_n(s) / (n + 1)` started at
//! `e_{j,n} = d_{j,n} - eta_n(d_{j,n}) / (n + 1)`. Expanding around `d_{j,n}`
//! gives the closed forms
//!
//! ```text
//! s   ~ d - eta/(n+1) + eta eta' / (n+1)^2
//! lam ~ g(d) - g' eta / (n+1) + (g'' eta^2 / 2 + g' eta eta') / (n+1)^2
//! ```
//!
//! with every function evaluated at `d`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phase::{default_oversample, PhaseFunction};
use crate::symbol::FourierSymbol;

/// Below this dimension the command-line front end reports oracle eigenvalues only.
pub const N_MIN: usize = 8;

/// Probe count for the simple-loop check done before a full sweep.
const VALIDATION_PROBES: usize = 256;

const DUPLICATE_ROOT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SolverConfig {
    pub tol: f64,
    pub max_iter: usize,
    /// Endpoint exclusion of the strip, `Re s in [c/n, pi - c/n]`.
    pub c_strip: f64,
    /// Half-width of the strip, `|Im s| <= C/n`.
    #[serde(rename = "C_strip")]
    pub cap_strip: f64,
    pub oversample: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            tol: 1e-12,
            max_iter: 50,
            c_strip: 0.5,
            cap_strip: 1.0,
            oversample: default_oversample(),
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::InvalidArgument(format!("tol must be positive, got {}", self.tol)));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidArgument("max_iter must be at least 1".into()));
        }
        if self.oversample == 0 {
            return Err(Error::InvalidArgument("oversample must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Order {
    Zero,
    One,
    Two,
    /// `g_n` at the fixed point of the phase equation.
    Fixed,
}

impl Order {
    pub const ALL: [Order; 4] = [Order::Zero, Order::One, Order::Two, Order::Fixed];
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Order::Zero => "0",
            Order::One => "1",
            Order::Two => "2",
            Order::Fixed => "fixed",
        })
    }
}

impl FromStr for Order {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "0" => Ok(Order::Zero),
            "1" => Ok(Order::One),
            "2" => Ok(Order::Two),
            "fixed" | "f" => Ok(Order::Fixed),
            other => Err(Error::InvalidArgument(format!(
                "unknown order {other:?}, expected 0, 1, 2 or fixed"
            ))),
        }
    }
}

/// Outcome of the successive approximations for one index.
#[derive(Debug, Clone, Serialize)]
pub struct FixedPoint {
    pub s: Complex64,
    /// Number of applications of the iteration map.
    pub iterations: usize,
    /// `|s_{k+1} - s_k|` for every step taken.
    pub displacements: Vec<f64>,
    /// `|F_n(s) - d_{j,n}|` at the returned point.
    pub residual: f64,
}

impl FixedPoint {
    /// Ratios of consecutive displacements.
    pub fn contraction_ratios(&self) -> Vec<f64> {
        self.displacements
            .windows(2)
            .map(|w| w[1] / w[0])
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumRecord {
    pub j: usize,
    pub d_jn: f64,
    pub e_jn: Complex64,
    pub s_jn: Complex64,
    pub iterations: usize,
    pub lambda_order0: Complex64,
    pub lambda_order1: Complex64,
    pub lambda_order2: Option<Complex64>,
    pub lambda_fixed: Complex64,
}

impl SpectrumRecord {
    pub fn lambda(&self, order: Order) -> Option<Complex64> {
        match order {
            Order::Zero => Some(self.lambda_order0),
            Order::One => Some(self.lambda_order1),
            Order::Two => self.lambda_order2,
            Order::Fixed => Some(self.lambda_fixed),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumEstimate {
    pub n: usize,
    pub records: Vec<SpectrumRecord>,
}

impl SpectrumEstimate {
    pub fn lambdas(&self, order: Order) -> Option<Vec<Complex64>> {
        self.records.iter().map(|r| r.lambda(order)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum End {
    Left,
    Right,
}

/// Decomposition of the order-1 estimate into a point of the curve and a normal offset.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct NormalDisplacement {
    pub point_on_curve: Complex64,
    pub offset: Complex64,
    /// Sign of `Im eta(d_{j,n})`: which side of the curve the eigenvalue sits on.
    pub side: f64,
}

/// `d_{j,n} = pi j / (n + 1)`.
pub fn grid_point(n: usize, j: usize) -> f64 {
    PI * j as f64 / (n + 1) as f64
}

/// Phase-equation machinery for one symbol and one dimension `n`.
#[derive(Debug, Clone)]
pub struct Asymptotics {
    phase: PhaseFunction,
    cfg: SolverConfig,
    n: usize,
}

impl Asymptotics {
    pub fn new(sym: &FourierSymbol, n: usize, cfg: SolverConfig) -> Result<Self> {
        cfg.validate()?;
        if n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        let phase = PhaseFunction::new(sym, n).with_oversample(cfg.oversample)?;
        Ok(Self { phase, cfg, n })
    }

    pub fn phase(&self) -> &PhaseFunction {
        &self.phase
    }

    pub fn symbol(&self) -> &FourierSymbol {
        self.phase.symbol()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check_index(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.n {
            return Err(Error::InvalidArgument(format!(
                "index j = {j} outside 1..={}",
                self.n
            )));
        }
        Ok(())
    }

    fn scale(&self) -> f64 {
        (self.n + 1) as f64
    }

    /// Root of `F_n(s) = d_{j,n}` by successive approximation from `e_{j,n}`.
    pub fn solve_s(&self, j: usize) -> Result<FixedPoint> {
        self.check_index(j)?;
        let d = Complex64::new(grid_point(self.n, j), 0.0);
        let start = d - self.phase.eta_value(d)? / self.scale();
        self.iterate(j, d, start)
    }

    fn iterate(&self, j: usize, d: Complex64, start: Complex64) -> Result<FixedPoint> {
        let mut s = start;
        let mut displacements = Vec::new();
        let mut growing = 0;
        for step in 1..=self.cfg.max_iter {
            let next = d - self.phase.eta_value(s)? / self.scale();
            let disp = (next - s).norm();
            if let Some(&prev) = displacements.last() {
                if disp >= prev {
                    growing += 1;
                    if growing >= 3 {
                        return Err(Error::NoContraction { j, step });
                    }
                } else {
                    growing = 0;
                }
            }
            displacements.push(disp);
            if disp <= self.cfg.tol {
                return Ok(FixedPoint {
                    s,
                    iterations: step,
                    displacements,
                    residual: disp,
                });
            }
            s = next;
        }
        Err(Error::MaxIterExceeded {
            j,
            residual: displacements.last().copied().unwrap_or(f64::NAN),
        })
    }

    /// Closed-form approximation of `s_{j,n}` of the given order (0, 1 or 2).
    pub fn expansion_s(&self, j: usize, order: u8) -> Result<Complex64> {
        self.check_index(j)?;
        let d = Complex64::new(grid_point(self.n, j), 0.0);
        let m = self.scale();
        match order {
            0 => Ok(d),
            1 => Ok(d - self.phase.eta_value(d)? / m),
            2 => {
                let e = self.phase.eta_with_derivative(d)?;
                let (eta, eta_prime) = (e.eta, e.eta_prime.expect("derivative computed"));
                Ok(d - eta / m + eta * eta_prime / (m * m))
            }
            other => Err(Error::InvalidArgument(format!(
                "expansion order {other} not available, expected 0, 1 or 2"
            ))),
        }
    }

    pub fn lambda_estimates(&self, j: usize) -> Result<SpectrumRecord> {
        self.check_index(j)?;
        let d = grid_point(self.n, j);
        let dc = Complex64::new(d, 0.0);
        let e = self.phase.eta_with_derivative(dc)?;
        let (eta, eta_prime) = (e.eta, e.eta_prime.expect("derivative computed"));
        let sym = self.phase.symbol();
        let (g, g1, g2) = (sym.g(dc), sym.dg(dc), sym.d2g(dc));
        let m = self.scale();
        let order1 = g - g1 * eta / m;
        let order2 = order1 + (0.5 * g2 * eta * eta + g1 * eta * eta_prime) / (m * m);
        let e_jn = dc - eta / m;
        let fixed = self.iterate(j, dc, e_jn)?;
        Ok(SpectrumRecord {
            j,
            d_jn: d,
            e_jn,
            s_jn: fixed.s,
            iterations: fixed.iterations,
            lambda_order0: g,
            lambda_order1: order1,
            lambda_order2: Some(order2),
            lambda_fixed: sym.g(fixed.s),
        })
    }

    /// Quadratic approximation at the end points of the arc, where `g'` vanishes.
    pub fn edge_lambda(&self, j: usize, end: End) -> Complex64 {
        let sym = self.phase.symbol();
        let m = self.scale();
        let (at, k) = match end {
            End::Left => (0.0, j as f64),
            End::Right => (PI, (self.n + 1) as f64 - j as f64),
        };
        let at = Complex64::new(at, 0.0);
        sym.g(at) + PI * PI * sym.d2g(at) / 2.0 * (k * k) / (m * m)
    }

    /// The order-1 estimate written as `g(e~) + offset` with the offset normal to the curve.
    pub fn normal_displacement(&self, j: usize) -> Result<NormalDisplacement> {
        self.check_index(j)?;
        let d = grid_point(self.n, j);
        let eta = self.phase.eta_value(Complex64::new(d, 0.0))?;
        let m = self.scale();
        let tilde = Complex64::new(d - eta.re / m, 0.0);
        let sym = self.phase.symbol();
        Ok(NormalDisplacement {
            point_on_curve: sym.g(tilde),
            offset: -Complex64::i() * sym.dg(tilde) * eta.im / m,
            side: if eta.im == 0.0 { 0.0 } else { eta.im.signum() },
        })
    }

    /// Estimates for every `j = 1..=n`, computed in parallel and returned in order of `j`.
    pub fn full_spectrum(&self) -> Result<SpectrumEstimate> {
        let report = self.phase.symbol().validate_simple_loop(VALIDATION_PROBES);
        if !report.is_valid() {
            return Err(Error::InvalidSymbol(report.failures().join("; ")));
        }
        let records = (1..=self.n)
            .into_par_iter()
            .map(|j| self.lambda_estimates(j))
            .collect::<Result<Vec<_>>>()?;
        for (a, ra) in records.iter().enumerate() {
            for rb in &records[a + 1..] {
                if (ra.s_jn - rb.s_jn).norm() < DUPLICATE_ROOT_TOL {
                    return Err(Error::DuplicateRoot { j: ra.j, k: rb.j });
                }
            }
        }
        Ok(SpectrumEstimate {
            n: self.n,
            records,
        })
    }

    /// `sup |eta_n'|` sampled on the strip
    /// `[c/n, pi - c/n] x [-C/n, C/n]` with `samples` real abscissae and three
    /// imaginary levels.
    pub fn eta_prime_sup(&self, samples: usize) -> Result<f64> {
        let n = self.n as f64;
        let (lo, hi) = (self.cfg.c_strip / n, PI - self.cfg.c_strip / n);
        let half_width = self.cfg.cap_strip / n;
        let samples = samples.max(2);
        let points: Vec<Complex64> = (0..samples)
            .flat_map(|k| {
                let re = lo + (hi - lo) * k as f64 / (samples - 1) as f64;
                [-half_width, 0.0, half_width].map(|im| Complex64::new(re, im))
            })
            .collect();
        let values = points
            .par_iter()
            .map(|&s| self.phase.eta_derivative(s).map(|v| v.norm()))
            .collect::<Result<Vec<_>>>()?;
        Ok(values.into_iter().fold(0.0, f64::max))
    }
}

pub fn solve_s(sym: &FourierSymbol, n: usize, j: usize, cfg: SolverConfig) -> Result<FixedPoint> {
    Asymptotics::new(sym, n, cfg)?.solve_s(j)
}

pub fn expansion_s(sym: &FourierSymbol, n: usize, j: usize, order: u8) -> Result<Complex64> {
    Asymptotics::new(sym, n, SolverConfig::default())?.expansion_s(j, order)
}

pub fn lambda_estimates(
    sym: &FourierSymbol,
    n: usize,
    j: usize,
    cfg: SolverConfig,
) -> Result<SpectrumRecord> {
    Asymptotics::new(sym, n, cfg)?.lambda_estimates(j)
}

pub fn edge_lambda(sym: &FourierSymbol, n: usize, j: usize, end: End) -> Result<Complex64> {
    Ok(Asymptotics::new(sym, n, SolverConfig::default())?.edge_lambda(j, end))
}

pub fn normal_displacement(sym: &FourierSymbol, n: usize, j: usize) -> Result<NormalDisplacement> {
    Asymptotics::new(sym, n, SolverConfig::default())?.normal_displacement(j)
}

pub fn full_spectrum(sym: &FourierSymbol, n: usize, cfg: SolverConfig) -> Result<SpectrumEstimate> {
    Asymptotics::new(sym, n, cfg)?.full_spectrum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn grid_points() {
        assert_eq!(grid_point(20, 1), PI / 21.0);
        assert_eq!(grid_point(5, 3), PI / 2.0);
    }

    #[test]
    fn order_parsing() {
        assert_eq!("fixed".parse::<Order>().unwrap(), Order::Fixed);
        assert_eq!("2".parse::<Order>().unwrap(), Order::Two);
        assert!("3".parse::<Order>().is_err());
        assert_eq!(Order::One.to_string(), "1");
    }

    #[test]
    fn config_validation() {
        let bad = SolverConfig { tol: 0.0, ..Default::default() };
        assert!(bad.validate().is_err());
        let bad = SolverConfig { max_iter: 0, ..Default::default() };
        assert!(bad.validate().is_err());
        assert!(SolverConfig::default().validate().is_ok());
    }

    #[test]
    fn tridiagonal_fixed_point_is_grid_point() {
        let a = Asymptotics::new(&FourierSymbol::tridiagonal(), 12, SolverConfig::default()).unwrap();
        for j in 1..=12 {
            let fp = a.solve_s(j).unwrap();
            assert_eq!(fp.iterations, 1);
            assert!((fp.s - grid_point(12, j)).norm() < 1e-15);
            for order in 0..=2 {
                assert!((a.expansion_s(j, order).unwrap() - grid_point(12, j)).norm() < 1e-15);
            }
        }
        assert!(a.solve_s(0).is_err());
        assert!(a.solve_s(13).is_err());
        assert!(a.expansion_s(1, 3).is_err());
    }

    #[test]
    fn tridiagonal_estimates_are_exact() {
        let n = 9;
        let a = Asymptotics::new(&FourierSymbol::tridiagonal(), n, SolverConfig::default()).unwrap();
        let est = a.full_spectrum().unwrap();
        for r in &est.records {
            let exact = 2.0 * (PI * r.j as f64 / (n + 1) as f64).cos();
            for order in Order::ALL {
                assert!((r.lambda(order).unwrap() - exact).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn edge_formula_is_cosine_taylor() {
        let n = 40;
        let a = Asymptotics::new(&FourierSymbol::tridiagonal(), n, SolverConfig::default()).unwrap();
        for j in 0..4 {
            let x = PI * j as f64 / (n + 1) as f64;
            let left = a.edge_lambda(j, End::Left);
            assert!((left - (2.0 - x * x)).norm() < 1e-14);
            let right = a.edge_lambda(n + 1 - j, End::Right);
            assert!((right - (-2.0 + x * x)).norm() < 1e-14);
        }
        assert_eq!(a.edge_lambda(0, End::Left), c(2.0, 0.0));
    }

    #[test]
    fn real_symbol_has_no_normal_offset() {
        let sym = FourierSymbol::from_half(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.2, 0.0)], f64::INFINITY);
        let a = Asymptotics::new(&sym, 30, SolverConfig::default()).unwrap();
        for j in [5, 15, 25] {
            let nd = a.normal_displacement(j).unwrap();
            assert!(nd.offset.norm() < 1e-14);
            assert!(nd.point_on_curve.im.abs() < 1e-14);
        }
    }

    #[test]
    fn invalid_symbol_is_rejected() {
        let sym = FourierSymbol::constant(c(1.0, 0.0));
        assert!(matches!(
            full_spectrum(&sym, 10, SolverConfig::default()),
            Err(Error::InvalidSymbol(_))
        ));
    }
}
