//! Dense complex eigensolver: balancing, Householder reduction to Hessenberg
//! form, then single-shift QR with Givens rotations.

use num_complex::Complex64;
use serde::Serialize;

use super::matrix::DenseMatrix;
use crate::error::{Error, Result};

const RADIX: f64 = 2.0;
const MAX_SWEEPS_PER_DIM: usize = 30;

#[derive(Debug, Clone, Serialize)]
pub struct DenseSpectrum {
    pub n: usize,
    pub eigenvalues: Vec<Complex64>,
    /// `|sum(lambda) - trace|`.
    pub trace_residual: f64,
    /// `|prod(lambda) / det - 1|`, determinant taken from an LU factorization.
    pub det_residual: f64,
}

/// Diagonal similarity scaling by powers of two so that row and column norms are comparable.
pub fn balance(a: &mut DenseMatrix) {
    let n = a.n();
    let l1 = |z: Complex64| z.re.abs() + z.im.abs();
    loop {
        let mut done = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += l1(a[(j, i)]);
                    r += l1(a[(i, j)]);
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= RADIX * RADIX;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= RADIX * RADIX;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                for j in 0..n {
                    a[(i, j)] /= f;
                    a[(j, i)] *= f;
                }
            }
        }
        if done {
            break;
        }
    }
}

/// Unitary similarity to upper Hessenberg form by Householder reflections.
pub fn hessenberg(a: &mut DenseMatrix) {
    let n = a.n();
    if n < 3 {
        return;
    }
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    for k in 0..n - 2 {
        let norm = (k + 1..n).map(|i| a[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * norm;
        for i in k + 1..n {
            v[i] = a[(i, k)];
        }
        v[k + 1] -= alpha;
        let vnorm = (k + 1..n).map(|i| v[i].norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for vi in &mut v[k + 1..n] {
            *vi /= vnorm;
        }
        // A <- (I - 2 v v*) A
        for c in k..n {
            let dot: Complex64 = (k + 1..n).map(|i| v[i].conj() * a[(i, c)]).sum();
            for i in k + 1..n {
                a[(i, c)] -= 2.0 * v[i] * dot;
            }
        }
        // A <- A (I - 2 v v*)
        for r in 0..n {
            let dot: Complex64 = (k + 1..n).map(|i| a[(r, i)] * v[i]).sum();
            for i in k + 1..n {
                a[(r, i)] -= 2.0 * dot * v[i].conj();
            }
        }
        a[(k + 1, k)] = alpha;
        for i in k + 2..n {
            a[(i, k)] = Complex64::new(0.0, 0.0);
        }
    }
}

/// Eigenvalue of the trailing 2x2 block `[[a, b], [c, d]]` closest to `d`.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mean = (a + d) * 0.5;
    let (l1, l2) = (mean + disc, mean - disc);
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Rotation `[[conj(c), conj(s)], [-s, c]]` mapping `(x, y)` to `(r, 0)`.
fn givens(x: Complex64, y: Complex64) -> (Complex64, Complex64) {
    let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
    if r == 0.0 {
        (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
    } else {
        (x / r, y / r)
    }
}

/// Eigenvalues of an upper Hessenberg matrix, which is overwritten.
pub fn hessenberg_qr(h: &mut DenseMatrix) -> Result<Vec<Complex64>> {
    let n = h.n();
    let mut eig = vec![Complex64::new(0.0, 0.0); n];
    if n == 0 {
        return Ok(eig);
    }
    let budget = MAX_SWEEPS_PER_DIM * n;
    let mut rotations = Vec::with_capacity(n);
    let mut hi = n - 1;
    let mut its = 0usize;
    while hi > 0 {
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let diag = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            if sub <= f64::EPSILON * diag || sub < f64::MIN_POSITIVE {
                h[(lo, lo - 1)] = Complex64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eig[hi] = h[(hi, hi)];
            hi -= 1;
            its = 0;
            continue;
        }
        its += 1;
        if its > budget {
            return Err(Error::NoConvergence { index: hi });
        }
        let mu = if its.is_multiple_of(11) {
            // exceptional shift to break cycles
            h[(hi, hi)] + 0.75 * h[(hi, hi - 1)].norm()
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };
        for k in lo..=hi {
            h[(k, k)] -= mu;
        }
        rotations.clear();
        for k in lo..hi {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            for col in k..=hi {
                let x = h[(k, col)];
                let y = h[(k + 1, col)];
                h[(k, col)] = c.conj() * x + s.conj() * y;
                h[(k + 1, col)] = -s * x + c * y;
            }
            rotations.push((c, s));
        }
        for (idx, &(c, s)) in rotations.iter().enumerate() {
            let k = lo + idx;
            for row in lo..=(k + 1).min(hi) {
                let x = h[(row, k)];
                let y = h[(row, k + 1)];
                h[(row, k)] = x * c + y * s;
                h[(row, k + 1)] = -x * s.conj() + y * c.conj();
            }
        }
        for k in lo..=hi {
            h[(k, k)] += mu;
        }
    }
    eig[0] = h[(0, 0)];
    Ok(eig)
}

fn wrap_phase(x: f64) -> f64 {
    use std::f64::consts::{PI, TAU};
    let y = x.rem_euclid(TAU);
    if y > PI {
        y - TAU
    } else {
        y
    }
}

/// All eigenvalues of `matrix`, by decreasing real part, with identity residuals.
pub fn eigenvalues(matrix: &DenseMatrix) -> Result<DenseSpectrum> {
    let n = matrix.n();
    let mut work = matrix.clone();
    balance(&mut work);
    hessenberg(&mut work);
    let mut eigenvalues = hessenberg_qr(&mut work)?;
    eigenvalues.sort_by(|a, b| b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im)));

    let sum: Complex64 = eigenvalues.iter().sum();
    let trace_residual = (sum - matrix.trace()).norm();
    let det_residual = match matrix.log_det() {
        Some(log_det) if eigenvalues.iter().all(|l| l.norm() > 0.0) => {
            let log_prod: Complex64 = eigenvalues.iter().map(|l| l.ln()).sum();
            let diff = log_prod - log_det;
            (Complex64::new(diff.re, wrap_phase(diff.im)).exp() - 1.0).norm()
        }
        Some(_) => 1.0,
        None => eigenvalues.iter().map(|l| l.norm()).product(),
    };
    Ok(DenseSpectrum {
        n,
        eigenvalues,
        trace_residual,
        det_residual,
    })
}
