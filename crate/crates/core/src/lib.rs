//! Spectral solver for the two-sided variable-coefficient fractional
//! diffusion equation
//!
//! ```text
//! -D [ K(x) ( r 0Ix^{2-a} + (1-r) xI1^{2-a} ) D u(x) ] = f(x),   x in (0,1),
//!  u(0) = u(1) = 0,    1 < a < 2,
//! ```
//!
//! where `0Ix^s` and `xI1^s` are the left and right Riemann-Liouville
//! fractional integrals, `K` is a positive diffusivity and `r` weights the
//! forward against the backward transition probability.
//!
//! Integrating once turns the problem into a constant-coefficient form whose
//! solution has an explicit expansion in weighted shifted Jacobi polynomials:
//! the expansion coefficients come from Gauss-Jacobi projections of the
//! transformed right-hand side, divided by known eigenvalues. No linear
//! system is assembled; the method is fully diagonal.
//!
//! The crate is organised along the pipeline:
//!
//! * [`specfun`] - log-gamma, Beta, Gauss 2F1 and shifted Jacobi polynomials,
//! * [`quadrature`] - Gauss-Jacobi rules on (0,1) and singular-endpoint
//!   integration, including a fractional-integral quadrature oracle,
//! * [`problem`] - problem definition, the transcendental exponent `beta`,
//!   the transformation to constant-coefficient form and the two built-in
//!   benchmark problems,
//! * [`solver`] - projection, the solvability constant `A`, and the
//!   spectral solution itself,
//! * [`analysis`] - weighted and plain L2 error norms, empirical convergence
//!   rates and convergence studies,
//! * [`cli`] - the command-line driver (`solve`, `convergence`, `verify`).

pub mod analysis;
pub mod cli;
mod error;
pub mod problem;
pub mod quadrature;
pub mod solver;
pub mod specfun;

pub use error::{Error, Result};
