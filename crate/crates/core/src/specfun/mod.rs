//! Special functions underpinning the solver: log-gamma, the Beta function,
//! the Gauss hypergeometric function 2F1 and shifted Jacobi polynomials on
//! [0,1] together with their norms and derivative identities.
//!
//! Everything here is a pure function of its arguments; sharing across
//! threads is safe.

mod gamma;
mod hyp2f1;
mod jacobi;

pub use gamma::{beta_fn, log_gamma};
pub use hyp2f1::gauss_2f1;
pub use jacobi::JacobiBasis;

pub(crate) use gamma::ln_gamma_positive;
