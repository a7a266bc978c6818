//! Dense reference spectrum of `T_n(a)` and comparison against the asymptotic estimates.

pub mod assignment;
mod eig;
mod matrix;

use num_complex::Complex64;
use serde::Serialize;

use crate::asymptotics::{Order, SpectrumEstimate};
use crate::error::{Error, Result};

pub use eig::{balance, eigenvalues, hessenberg, hessenberg_qr, DenseSpectrum};
pub use matrix::{build_toeplitz, DenseMatrix};

/// Largest dimension the dense solver accepts.
pub const MAX_DIMENSION: usize = 2048;

/// Eigenvalues of `T_n(a)`.
pub fn toeplitz_spectrum(sym: &crate::symbol::FourierSymbol, n: usize) -> Result<DenseSpectrum> {
    if n > MAX_DIMENSION {
        return Err(Error::InvalidArgument(format!(
            "dense oracle limited to n <= {MAX_DIMENSION}, got {n}"
        )));
    }
    eigenvalues(&build_toeplitz(sym, n)?)
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    pub n: usize,
    /// Order whose estimates drove the matching.
    pub order: Order,
    /// `pairing[j - 1]` is the index into the oracle eigenvalue list matched with estimate `j`.
    pub pairing: Vec<usize>,
    /// Maximum relative error of the matching order.
    pub delta: f64,
    pub delta0: f64,
    pub delta1: f64,
    pub delta2: Option<f64>,
    pub delta_fixed: f64,
    pub per_j_abs: Vec<f64>,
    pub per_j_rel: Vec<f64>,
    /// Some swap of two partners changes the total distance by less than the tolerance.
    pub ambiguous: bool,
}

fn max_relative(estimates: &[Complex64], oracle: &[Complex64], pairing: &[usize]) -> f64 {
    estimates
        .iter()
        .zip(pairing)
        .map(|(e, &k)| (e - oracle[k]).norm() / oracle[k].norm())
        .fold(0.0, f64::max)
}

/// Matches estimates of the given order to oracle eigenvalues by minimum total distance
/// and reports the maximum relative errors of every order under that matching.
pub fn pair_spectra(
    oracle: &DenseSpectrum,
    estimate: &SpectrumEstimate,
    order: Order,
) -> Result<ComparisonReport> {
    let n = oracle.n;
    if estimate.n != n || estimate.records.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: estimate.records.len(),
        });
    }
    let lambdas = estimate.lambdas(order).ok_or_else(|| {
        Error::InvalidArgument(format!("estimate has no values of order {order}"))
    })?;
    let cost: Vec<Vec<f64>> = lambdas
        .iter()
        .map(|l| oracle.eigenvalues.iter().map(|o| (l - o).norm()).collect())
        .collect();
    let pairing = assignment::solve(&cost);
    let ambiguous = assignment::is_ambiguous(&cost, &pairing);
    let per_j_abs: Vec<f64> = pairing.iter().enumerate().map(|(j, &k)| cost[j][k]).collect();
    let per_j_rel: Vec<f64> = per_j_abs
        .iter()
        .zip(&pairing)
        .map(|(a, &k)| a / oracle.eigenvalues[k].norm())
        .collect();
    let delta_of = |o: Order| {
        estimate
            .lambdas(o)
            .map(|ls| max_relative(&ls, &oracle.eigenvalues, &pairing))
    };
    Ok(ComparisonReport {
        n,
        order,
        delta: per_j_rel.iter().copied().fold(0.0, f64::max),
        delta0: delta_of(Order::Zero).unwrap_or(f64::NAN),
        delta1: delta_of(Order::One).unwrap_or(f64::NAN),
        delta2: delta_of(Order::Two),
        delta_fixed: delta_of(Order::Fixed).unwrap_or(f64::NAN),
        pairing,
        per_j_abs,
        per_j_rel,
        ambiguous,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::{full_spectrum, SolverConfig};
    use crate::symbol::FourierSymbol;
    use std::f64::consts::PI;

    /// Roots of the characteristic polynomial of the path-graph matrix located by
    /// bisection on sign changes of the three-term recurrence `p_k = x p_{k-1} - p_{k-2}`.
    fn path_graph_roots(n: usize) -> Vec<f64> {
        let p = |x: f64| {
            let (mut a, mut b) = (1.0, x);
            for _ in 1..n {
                let c = x * b - a;
                a = b;
                b = c;
            }
            b
        };
        let samples = 200 * n;
        let xs: Vec<f64> = (0..=samples).map(|k| -2.0001 + 4.0002 * (k as f64 + 0.37) / samples as f64).collect();
        let mut roots = Vec::new();
        for w in xs.windows(2) {
            let (mut lo, mut hi) = (w[0], w[1]);
            if p(lo) * p(hi) > 0.0 {
                continue;
            }
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if p(lo).signum() == p(mid).signum() {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
        roots
    }

    #[test]
    fn tridiagonal_spectrum_matches_recurrence_and_closed_form() {
        let n = 5;
        let spec = toeplitz_spectrum(&FourierSymbol::tridiagonal(), n).unwrap();
        let roots = path_graph_roots(n);
        assert_eq!(roots.len(), n);
        for (j, r) in roots.iter().enumerate() {
            let closed = 2.0 * (PI * (n - j) as f64 / (n + 1) as f64).cos();
            assert!((r - closed).abs() < 1e-12);
            assert!((spec.eigenvalues[n - 1 - j] - Complex64::new(*r, 0.0)).norm() < 1e-10);
        }
    }

    #[test]
    fn tridiagonal_comparison_is_exact() {
        let sym = FourierSymbol::tridiagonal();
        let n = 20;
        let spec = toeplitz_spectrum(&sym, n).unwrap();
        let est = full_spectrum(&sym, n, SolverConfig::default()).unwrap();
        let report = pair_spectra(&spec, &est, Order::One).unwrap();
        assert!(report.per_j_abs.iter().all(|&e| e < 1e-12));
        assert!(report.delta1 < 1e-9);
        assert!(report.delta2.unwrap() < 1e-9);
        assert_eq!(report.pairing, (0..n).collect::<Vec<_>>());
    }

    #[test]
    fn dimension_mismatch() {
        let sym = FourierSymbol::tridiagonal();
        let spec = toeplitz_spectrum(&sym, 9).unwrap();
        let est = full_spectrum(&sym, 10, SolverConfig::default()).unwrap();
        assert!(pair_spectra(&spec, &est, Order::One).is_err());
        assert!(toeplitz_spectrum(&sym, MAX_DIMENSION + 1).is_err());
    }
}
