//! Symmetric symbols given by their Fourier coefficients.
//!
//! A symbol `a(t) = sum_j a_j t^j` with `a_j = a_{-j}` is stored by its
//! nonnegative half. Its restriction to the circle is `g(phi) = a(exp(i phi))`,
//! which may be continued into a thin strip `|Im phi| <= C / band`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circle::{to_coefficients, GridFunction};
use crate::error::{Error, Result};

/// Tolerance for `|a_j - a_{-j}|` on explicitly supplied coefficients.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Half-width constant of the evaluation strip, `|Im psi| <= STRIP_WIDTH / band`.
pub const STRIP_WIDTH: f64 = 10.0;

#[derive(Debug, Clone, PartialEq)]
pub struct FourierSymbol {
    /// `a_0, a_1, ..., a_band`.
    coeffs: Vec<Complex64>,
    alpha_hint: f64,
    asymmetry: f64,
}

impl FourierSymbol {
    /// Builds a symbol from `(j, a_j)` pairs, which must describe a symmetric sequence.
    pub fn from_coefficients(pairs: &[(i64, Complex64)]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for &(j, v) in pairs {
            if map.insert(j, v).is_some() {
                return Err(Error::DuplicateIndex(j));
            }
        }
        let zero = Complex64::new(0.0, 0.0);
        let band = map.keys().map(|j| j.unsigned_abs()).max().unwrap_or(0) as usize;
        let mut coeffs = vec![zero; band + 1];
        let mut asymmetry: f64 = 0.0;
        for (j, slot) in coeffs.iter_mut().enumerate() {
            let j = j as i64;
            let plus = map.get(&j).copied().unwrap_or(zero);
            let minus = map.get(&-j).copied().unwrap_or(zero);
            let mismatch = (plus - minus).norm();
            if mismatch > SYMMETRY_TOL {
                return Err(Error::AsymmetricCoefficients { index: j, mismatch });
            }
            asymmetry = asymmetry.max(mismatch);
            *slot = if j == 0 { plus } else { 0.5 * (plus + minus) };
        }
        Ok(Self::from_half(coeffs, f64::INFINITY).with_asymmetry(asymmetry))
    }

    /// Builds a symbol from `a_0..=a_band` directly.
    pub fn from_half(mut coeffs: Vec<Complex64>, alpha_hint: f64) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        let mut s = Self {
            coeffs,
            alpha_hint,
            asymmetry: 0.0,
        };
        s.trim();
        s
    }

    /// Extracts `a_j`, `|j| <= band_limit`, from circle samples by the DFT and
    /// symmetrizes. The pre-averaging asymmetry is kept as a diagnostic.
    pub fn from_circle_samples(values: &GridFunction, band_limit: usize) -> Result<Self> {
        let n = values.size();
        let required = 4 * band_limit;
        if n < required {
            return Err(Error::GridTooCoarse { size: n, required });
        }
        let c = to_coefficients(values);
        let mut coeffs = Vec::with_capacity(band_limit + 1);
        let mut asymmetry: f64 = 0.0;
        for j in 0..=band_limit as i64 {
            let (p, m) = (c.get(j), c.get(-j));
            asymmetry = asymmetry.max((p - m).norm());
            coeffs.push(0.5 * (p + m));
        }
        Ok(Self::from_half(coeffs, 0.0).with_asymmetry(asymmetry))
    }

    pub fn with_alpha_hint(mut self, alpha: f64) -> Self {
        self.alpha_hint = alpha;
        self
    }

    fn with_asymmetry(mut self, asymmetry: f64) -> Self {
        self.asymmetry = asymmetry;
        self
    }

    fn trim(&mut self) {
        while self.coeffs.len() > 1 && *self.coeffs.last().unwrap() == Complex64::new(0.0, 0.0) {
            self.coeffs.pop();
        }
    }

    /// `a(t) = t + 1/t`, i.e. `g(phi) = 2 cos(phi)`.
    pub fn tridiagonal() -> Self {
        Self::from_half(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)], f64::INFINITY)
    }

    pub fn constant(value: Complex64) -> Self {
        Self::from_half(vec![value], f64::INFINITY)
    }

    /// Largest `|j|` with a stored coefficient.
    pub fn band(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn alpha_hint(&self) -> f64 {
        self.alpha_hint
    }

    /// Largest `|a_j - a_{-j}|` seen before symmetrization.
    pub fn asymmetry(&self) -> f64 {
        self.asymmetry
    }

    pub fn coeff(&self, j: i64) -> Complex64 {
        self.coeffs
            .get(j.unsigned_abs() as usize)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// `a_0, ..., a_band`.
    pub fn half_coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `(j, a_j)` for `j = -band..=band`.
    pub fn pairs(&self) -> Vec<(i64, Complex64)> {
        let b = self.band() as i64;
        (-b..=b).map(|j| (j, self.coeff(j))).collect()
    }

    /// `sum_j |a_j| (1 + |j|)^alpha`.
    pub fn weighted_norm(&self, alpha: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, a)| {
                let w = a.norm() * (1.0 + j as f64).powf(alpha);
                if j == 0 { w } else { 2.0 * w }
            })
            .sum()
    }

    /// `a_n`: keeps `|j| <= n - 1`. `T_n` of the result equals `T_n` of `self`.
    pub fn truncate(&self, n: usize) -> Self {
        let keep = n.max(1).min(self.coeffs.len());
        let mut out = Self {
            coeffs: self.coeffs[..keep].to_vec(),
            alpha_hint: self.alpha_hint,
            asymmetry: self.asymmetry,
        };
        out.trim();
        out
    }

    /// `sup_t |a(t) - a_n(t)|` bounded by the tail sum `sum_{|j| >= n} |a_j|`.
    pub fn tail_sum(&self, n: usize) -> f64 {
        self.coeffs.iter().skip(n).map(|a| 2.0 * a.norm()).sum()
    }

    /// Strip half-width where evaluation is admissible.
    pub fn strip_limit(&self) -> f64 {
        if self.band() == 0 {
            f64::INFINITY
        } else {
            STRIP_WIDTH / self.band() as f64
        }
    }

    /// `g^{(k)}(psi) = sum_j a_j (ij)^k exp(ij psi)`, checked against the strip.
    pub fn evaluate(&self, psi: Complex64, deriv_order: u32) -> Result<Complex64> {
        let limit = self.strip_limit();
        if psi.im.abs() > 10.0 * limit {
            return Err(Error::StripExceeded {
                imag: psi.im.abs(),
                limit,
            });
        }
        Ok(self.eval(psi, deriv_order))
    }

    /// Unchecked `g^{(k)}(psi)`. Terms `j` and `-j` are combined before
    /// accumulation, smallest terms first.
    pub fn eval(&self, psi: Complex64, deriv_order: u32) -> Complex64 {
        let k = deriv_order;
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, a) in self.coeffs.iter().enumerate().skip(1).rev() {
            let x = psi * j as f64;
            // (ij)^k e^{ij psi} + (-ij)^k e^{-ij psi}
            let paired = if k.is_multiple_of(2) { 2.0 * x.cos() } else { 2.0 * Complex64::i() * x.sin() };
            acc += a * Complex64::i().powu(k) * (j as f64).powi(k as i32) * paired;
        }
        if k == 0 {
            acc += self.coeffs[0];
        }
        acc
    }

    /// `g(psi)`.
    pub fn g(&self, psi: Complex64) -> Complex64 {
        self.eval(psi, 0)
    }

    pub fn dg(&self, psi: Complex64) -> Complex64 {
        self.eval(psi, 1)
    }

    pub fn d2g(&self, psi: Complex64) -> Complex64 {
        self.eval(psi, 2)
    }

    /// `a(t)` for `t` on or near the unit circle.
    pub fn value_at(&self, t: Complex64) -> Complex64 {
        let inv = t.inv();
        let (mut p, mut m) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for a in self.coeffs.iter().skip(1).rev() {
            p = (p + a) * t;
            m = (m + a) * inv;
        }
        p + m + self.coeffs[0]
    }

    /// Returns a copy with `c` added to `a_0`.
    pub fn shifted(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        out.coeffs[0] += c;
        out
    }

    pub fn validate_simple_loop(&self, probe_count: usize) -> LoopValidationReport {
        LoopValidationReport::probe(self, probe_count.max(64))
    }

    pub fn to_file_format(&self) -> SymbolFile {
        SymbolFile {
            coeffs: self
                .pairs()
                .into_iter()
                .filter(|(_, v)| *v != Complex64::new(0.0, 0.0))
                .map(|(j, v)| (j, v.re, v.im))
                .collect(),
            alpha_hint: self.alpha_hint.is_finite().then_some(self.alpha_hint),
        }
    }
}

/// JSON symbol file: `{"coeffs": [[j, re, im], ...], "alpha_hint": x}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SymbolFile {
    pub coeffs: Vec<(i64, f64, f64)>,
    /// Decay exponent of the coefficients; absent for finitely many coefficients.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_hint: Option<f64>,
}

impl SymbolFile {
    pub fn into_symbol(self) -> Result<FourierSymbol> {
        let pairs: Vec<_> = self
            .coeffs
            .iter()
            .map(|&(j, re, im)| (j, Complex64::new(re, im)))
            .collect();
        Ok(FourierSymbol::from_coefficients(&pairs)?.with_alpha_hint(self.alpha_hint.unwrap_or(f64::INFINITY)))
    }

    pub fn parse(text: &str) -> Result<FourierSymbol> {
        serde_json::from_str::<SymbolFile>(text)?.into_symbol()
    }

    pub fn read(path: impl AsRef<Path>) -> Result<FourierSymbol> {
        Self::parse(&std::fs::read_to_string(path)?)
    }
}

/// Outcome of probing the simple-loop conditions.
#[derive(Debug, Clone, Serialize)]
pub struct LoopValidationReport {
    pub is_symmetric: bool,
    pub min_abs_g_prime_interior: f64,
    pub g_pp_at_0: Complex64,
    pub g_pp_at_pi: Complex64,
    pub arc_self_intersection: bool,
    #[serde(rename = "M0")]
    pub m0: Complex64,
    #[serde(rename = "M1")]
    pub m1: Complex64,
}

impl LoopValidationReport {
    fn probe(sym: &FourierSymbol, probes: usize) -> Self {
        let at = |phi: f64| Complex64::new(phi, 0.0);
        let min_abs_g_prime_interior = (1..probes)
            .map(|k| sym.dg(at(PI * k as f64 / probes as f64)).norm())
            .fold(f64::INFINITY, f64::min);
        let arc: Vec<Complex64> = (0..=probes)
            .map(|k| sym.g(at(PI * k as f64 / probes as f64)))
            .collect();
        Self {
            is_symmetric: sym.asymmetry() <= SYMMETRY_TOL,
            min_abs_g_prime_interior,
            g_pp_at_0: sym.d2g(at(0.0)),
            g_pp_at_pi: sym.d2g(at(PI)),
            arc_self_intersection: polyline_self_intersects(&arc),
            m0: arc[0],
            m1: arc[probes],
        }
    }

    /// Human-readable list of the violated conditions, empty for a valid loop.
    pub fn failures(&self) -> Vec<String> {
        let tiny = 1e-12 * (1.0 + self.m0.norm().max(self.m1.norm()));
        let mut out = Vec::new();
        if !self.is_symmetric {
            out.push("coefficients are not symmetric".to_string());
        }
        if !(self.min_abs_g_prime_interior > tiny) {
            out.push(format!(
                "g' vanishes inside (0, pi): min |g'| = {:e}",
                self.min_abs_g_prime_interior
            ));
        }
        if !(self.g_pp_at_0.norm() > tiny) {
            out.push("g''(0) = 0".to_string());
        }
        if !(self.g_pp_at_pi.norm() > tiny) {
            out.push("g''(pi) = 0".to_string());
        }
        if self.arc_self_intersection {
            out.push("the arc g([0, pi]) intersects itself".to_string());
        }
        if !((self.m0 - self.m1).norm() > tiny) {
            out.push(format!("end points coincide: M0 = M1 = {}", self.m0));
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.failures().is_empty()
    }
}

fn polyline_self_intersects(points: &[Complex64]) -> bool {
    let segs = points.len().saturating_sub(1);
    for i in 0..segs {
        for k in (i + 2)..segs {
            if segments_cross(points[i], points[i + 1], points[k], points[k + 1]) {
                return true;
            }
        }
    }
    false
}

fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

fn segments_cross(p1: Complex64, p2: Complex64, q1: Complex64, q2: Complex64) -> bool {
    let d1 = cross(q2 - q1, p1 - q1);
    let d2 = cross(q2 - q1, p2 - q1);
    let d3 = cross(p2 - p1, q1 - p1);
    let d4 = cross(p2 - p1, q2 - p1);
    (d1 > 0.0) != (d2 > 0.0) && (d3 > 0.0) != (d4 > 0.0) && d1 != 0.0 && d2 != 0.0 && d3 != 0.0 && d4 != 0.0
}

/// Constants of the smooth complex example symbol.
pub struct ExampleA1;

impl ExampleA1 {
    pub fn c0() -> Complex64 {
        Complex64::new(0.2, -1.0 / 6.0)
    }

    pub fn c2() -> f64 {
        0.05
    }

    /// Chosen so that `g'(pi) = g'(-pi)`.
    pub fn c1() -> Complex64 {
        let c0 = Self::c0();
        let num = principal_pow(1.0 - PI, 1.5) - principal_pow(1.0 + PI, 1.5);
        num / (16.0 * PI * c0 * (PI * PI * c0).cos())
    }

    /// `g(phi) = c1 sin(c0 phi^2) + c2 ((1 + phi)^{5/2} + (1 - phi)^{5/2})`, `phi` in `[-pi, pi]`.
    pub fn profile(phi: f64) -> Complex64 {
        Self::c1() * (Self::c0() * phi * phi).sin()
            + Self::c2() * (principal_pow(1.0 + phi, 2.5) + principal_pow(1.0 - phi, 2.5))
    }

    /// Closed-form `g'(phi)`.
    pub fn profile_derivative(phi: f64) -> Complex64 {
        let c0 = Self::c0();
        2.0 * phi * c0 * Self::c1() * (c0 * phi * phi).cos()
            + 2.5 * Self::c2() * (principal_pow(1.0 + phi, 1.5) - principal_pow(1.0 - phi, 1.5))
    }
}

/// `x^p` on the principal branch, so a negative base gives `|x|^p exp(i pi p)`.
pub fn principal_pow(x: f64, p: f64) -> Complex64 {
    if x >= 0.0 {
        Complex64::new(x.powf(p), 0.0)
    } else {
        Complex64::from_polar((-x).powf(p), PI * p)
    }
}

pub const DEFAULT_A1_GRID: usize = 8192;

/// The example symbol, with coefficients extracted numerically for `|j| <= band`.
pub fn example_symbol_a1(grid_size: usize, band: usize) -> Result<FourierSymbol> {
    let samples = GridFunction::from_angle_fn(grid_size, |theta| {
        let phi = if theta >= PI { theta - 2.0 * PI } else { theta };
        ExampleA1::profile(phi)
    })?;
    Ok(FourierSymbol::from_circle_samples(&samples, band)?.with_alpha_hint(2.5))
}
