use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use tsleig::oracle::{assignment, build_toeplitz, eigenvalues};
use tsleig::FourierSymbol;

fn random_symbol(rng: &mut impl Rng, band: usize) -> FourierSymbol {
    let coeffs = (0..=band)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    FourierSymbol::from_half(coeffs, f64::INFINITY)
}

fn matching_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let cost: Vec<Vec<f64>> = a.iter().map(|x| b.iter().map(|y| (x - y).norm()).collect()).collect();
    let p = assignment::solve(&cost);
    p.iter().enumerate().map(|(i, &k)| cost[i][k]).fold(0.0, f64::max)
}

#[test]
fn trace_and_determinant_identities() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(2024);
    for _ in 0..50 {
        let n = rng.gen_range(1..=64);
        let band = rng.gen_range(0..n.min(8));
        let sym = random_symbol(&mut rng, band);
        let spec = eigenvalues(&build_toeplitz(&sym, n).unwrap()).unwrap();
        let amax = sym.half_coefficients().iter().map(|a| a.norm()).fold(0.0, f64::max);
        let sum: Complex64 = spec.eigenvalues.iter().sum();
        assert!((sum - n as f64 * sym.coeff(0)).norm() <= 1e-8 * n as f64 * amax);
        assert!(spec.det_residual <= 1e-6, "n = {n}: {}", spec.det_residual);
    }
}

#[test]
fn permutation_similarity() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    for _ in 0..5 {
        let n = rng.gen_range(5..40);
        let t = build_toeplitz(&random_symbol(&mut rng, 4), n).unwrap();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let a = eigenvalues(&t).unwrap();
        let b = eigenvalues(&t.permuted(&perm).unwrap()).unwrap();
        assert!(matching_distance(&a.eigenvalues, &b.eigenvalues) <= 1e-8);
    }
}

#[test]
fn shift_covariance() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(99);
    let t = build_toeplitz(&random_symbol(&mut rng, 3), 30).unwrap();
    let c = Complex64::new(0.7, -1.3);
    let a = eigenvalues(&t).unwrap();
    let b = eigenvalues(&t.shifted(c)).unwrap();
    let moved: Vec<Complex64> = a.eigenvalues.iter().map(|l| l + c).collect();
    assert!(matching_distance(&moved, &b.eigenvalues) <= 1e-10);
}

#[test]
fn general_complex_matrices() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(5);
    for _ in 0..10 {
        let m = tsleig::oracle::DenseMatrix::from_fn(6, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let spec = eigenvalues(&m).unwrap();
        assert!(spec.trace_residual < 1e-9);
        assert!(spec.det_residual < 1e-9);
    }
}
