//! Individual eigenvalue asymptotics for large symmetric Toeplitz matrices whose
//! symbols trace a smooth simple loop.
//!
//! The eigenvalues of `T_n(a)` are `g_n(s_{j,n})`, where `s_{j,n}` solves the
//! phase equation `(n + 1) s + eta_n(s) = pi j`. The crate computes `eta_n` from
//! a Wiener-Hopf factorization, solves the phase equation by successive
//! approximation, evaluates the closed-form expansions of orders 0 to 2, and
//! checks everything against a dense eigensolver.
//!
//! | module | contents |
//! |---|---|
//! | [`symbol`] | symbols by Fourier coefficients, simple-loop validation, the example symbol |
//! | [`circle`] | FFT calculus on the unit circle: logarithms, projections, PV integrals |
//! | [`phase`] | `b_n(t, s)`, its factorization, `eta_n` and `eta_n'` |
//! | [`asymptotics`] | phase-equation solver and eigenvalue expansions |
//! | [`oracle`] | dense Toeplitz matrices, QR eigensolver, spectrum pairing |
//! | [`report`] | the tabular outputs behind the `tsleig` binary |

pub mod asymptotics;
pub mod circle;
pub mod error;
pub mod oracle;
pub mod phase;
pub mod report;
pub mod symbol;

pub use asymptotics::{full_spectrum, Order, SolverConfig, SpectrumEstimate, SpectrumRecord};
pub use error::{Error, Result};
pub use oracle::{ComparisonReport, DenseSpectrum};
pub use phase::{EtaEvaluation, EtaRoute, Factorization, PhaseFunction};
pub use symbol::{example_symbol_a1, FourierSymbol, LoopValidationReport};
