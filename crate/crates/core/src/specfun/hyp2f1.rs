//! Gauss hypergeometric function 2F1 on the unit interval.

use super::gamma::{ln_gamma_positive, ln_gamma_signed};
use crate::{Error, Result};

/// Hard cap on the number of series terms.
const TERM_CAP: usize = 1_000_000;

/// Gauss hypergeometric function 2F1(p, q; c; x) for x in [0, 1].
///
/// Evaluated by the power series with the term recurrence
/// `t_{k+1} = t_k (p+k)(q+k) x / ((c+k)(k+1))`, summed until
/// `|t_k| < 1e-16 |sum|` or one million terms. At x = 1 the Gauss summation
/// theorem is used instead (it requires c - p - q > 0).
///
/// If the cap is hit while the last term is still above `1e-10 |sum|` the
/// call fails with a non-convergence error. Below that the truncated sum is
/// returned: the tail of the algebraically decaying series is then smaller
/// than roughly 1e-5 of the value, which is the accuracy regime the cap is
/// meant to guard.
pub fn gauss_2f1(p: f64, q: f64, c: f64, x: f64) -> Result<f64> {
    if !c.is_finite() || c <= 0.0 {
        return Err(Error::domain("gauss_2f1", format!("c = {c} must be > 0")));
    }
    if !p.is_finite() || !q.is_finite() {
        return Err(Error::domain("gauss_2f1", "p, q must be finite"));
    }
    if !x.is_finite() || !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(
            "gauss_2f1",
            format!("x = {x} outside [0, 1]"),
        ));
    }
    if x == 1.0 {
        if c - p - q <= 0.0 {
            return Err(Error::domain(
                "gauss_2f1",
                format!("series diverges at x = 1 for c - p - q = {}", c - p - q),
            ));
        }
        return Ok(gauss_summation(p, q, c));
    }

    let mut sum = 1.0_f64;
    let mut term = 1.0_f64;
    for k in 0..TERM_CAP {
        let k = k as f64;
        term *= (p + k) * (q + k) / ((c + k) * (k + 1.0)) * x;
        sum += term;
        if term.abs() < 1e-16 * sum.abs() {
            return Ok(sum);
        }
    }
    if term.abs() < 1e-10 * sum.abs() {
        return Ok(sum);
    }
    Err(Error::SeriesNonConvergence {
        partial: sum,
        terms: TERM_CAP,
    })
}

/// 2F1(p, q; c; 1) = Gamma(c) Gamma(c-p-q) / (Gamma(c-p) Gamma(c-q)).
fn gauss_summation(p: f64, q: f64, c: f64) -> f64 {
    let (lcp, scp) = ln_gamma_signed(c - p);
    let (lcq, scq) = ln_gamma_signed(c - q);
    let ln = ln_gamma_positive(c) + ln_gamma_positive(c - p - q) - lcp - lcq;
    scp * scq * ln.exp()
}
