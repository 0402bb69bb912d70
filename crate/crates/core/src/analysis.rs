//! Error measurement and convergence-rate analysis.
//!
//! The natural error norm for this problem is weighted by
//! w^{(-(alpha-beta), -beta)}, which is singular at both endpoints. Instead
//! of sampling that weight directly, the error u - u_N is factored as
//! w^{(alpha-beta, beta)} g; the squared integrand then carries the smooth
//! factor g^2 against a regular Jacobi weight:
//!
//! ```text
//! ||u - u_N||^2_{w^{(-(a-b),-b)}} = int w^{(a-b, b)} g^2,
//! ||u - u_N||^2_{L2}             = int w^{(2(a-b), 2b)} g^2.
//! ```
//!
//! The direct (negative-exponent) form is also implemented as a
//! cross-check oracle; the factored form is the default.

use crate::problem::{transform, ProblemSpec};
use crate::quadrature::{shared_gauss_jacobi, QuadOrder};
use crate::solver::{solve, SpectralSolution};
use crate::specfun::JacobiBasis;
use crate::{Error, Result};

/// Error-norm quadrature order used when the run is in auto mode.
const ERROR_ORDER_BASE: usize = 160;

fn auto_error_order(order: usize) -> usize {
    ERROR_ORDER_BASE.max(2 * order + 40)
}

/// One row of a convergence table.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub err_weighted: f64,
    pub rate_weighted: Option<f64>,
    pub err_l2: f64,
    pub rate_l2: Option<f64>,
}

/// A convergence study: rows sorted by increasing N (the first row carries
/// no rates) plus the regularity-limited predicted rate.
#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
    pub predicted_rate: f64,
    pub alpha: f64,
    pub r: f64,
    pub beta: f64,
}

fn weighted_residual_norm<F: Fn(f64) -> f64>(
    sol: &SpectralSolution,
    exact: F,
    rule_a: f64,
    rule_b: f64,
    quad_order: usize,
) -> Result<f64> {
    let rule = shared_gauss_jacobi(rule_a, rule_b, quad_order)?;
    let (a, b) = (sol.alpha() - sol.beta(), sol.beta());
    let basis = JacobiBasis::new(a, b)?;
    let mut poly = vec![0.0_f64; sol.order() + 1];
    let mut acc = 0.0;
    for (&t, &w) in rule.nodes().iter().zip(rule.weights()) {
        basis.eval_all_into(t, &mut poly);
        let series: f64 = sol.coeffs().iter().zip(&poly).map(|(c, p)| c * p).sum();
        let weight = (1.0 - t).powf(a) * t.powf(b);
        let g = exact(t) / weight - series;
        if !g.is_finite() {
            return Err(Error::NonFiniteSample { x: t });
        }
        acc += w * g * g;
    }
    Ok(acc.max(0.0).sqrt())
}

/// ||exact - u_N|| in the w^{(-(alpha-beta), -beta)}-weighted L2 norm,
/// by the factored form (exact evaluated at interior nodes only).
pub fn error_weighted<F: Fn(f64) -> f64>(
    sol: &SpectralSolution,
    exact: F,
    quad_order: usize,
) -> Result<f64> {
    let (a, b) = (sol.alpha() - sol.beta(), sol.beta());
    weighted_residual_norm(sol, exact, a, b, quad_order)
}

/// ||exact - u_N|| in the plain L2 norm, same factoring with the squared
/// solution weight absorbed into the rule.
pub fn error_l2<F: Fn(f64) -> f64>(
    sol: &SpectralSolution,
    exact: F,
    quad_order: usize,
) -> Result<f64> {
    let (a, b) = (sol.alpha() - sol.beta(), sol.beta());
    weighted_residual_norm(sol, exact, 2.0 * a, 2.0 * b, quad_order)
}

/// The weighted error norm by direct sampling of the singular weight
/// w^{(-(alpha-beta), -beta)}. Converges more slowly than the factored
/// form; retained as an independent cross-check.
pub fn error_weighted_direct<F: Fn(f64) -> f64>(
    sol: &SpectralSolution,
    exact: F,
    quad_order: usize,
) -> Result<f64> {
    let (a, b) = (sol.alpha() - sol.beta(), sol.beta());
    let rule = shared_gauss_jacobi(-a, -b, quad_order)?;
    let mut acc = 0.0;
    for (&t, &w) in rule.nodes().iter().zip(rule.weights()) {
        let d = exact(t) - sol.evaluate(t);
        if !d.is_finite() {
            return Err(Error::NonFiniteSample { x: t });
        }
        acc += w * d * d;
    }
    Ok(acc.max(0.0).sqrt())
}

/// Empirical convergence rate between two truncation orders, in the (N+1)
/// convention: kappa = ln(e_prev/e_curr) / ln((N_curr+1)/(N_prev+1)).
pub fn empirical_rate(e_prev: f64, e_curr: f64, n_prev: usize, n_curr: usize) -> f64 {
    (e_prev / e_curr).ln() / ((n_curr as f64 + 1.0) / (n_prev as f64 + 1.0)).ln()
}

/// Regularity-limited predicted rate min(3 - beta, 3 - (alpha - beta)) for
/// sources whose worst singular parts are x^{1-alpha} and (1-x)^{1-alpha}.
pub fn predicted_rate(alpha: f64, beta: f64) -> f64 {
    (3.0 - beta).min(3.0 - (alpha - beta))
}

/// Solves at every order in `n_list` and fills both error columns, the
/// rate columns between consecutive rows, and the predicted rate.
pub fn convergence_study(
    spec: &ProblemSpec,
    n_list: &[usize],
    quad_order: QuadOrder,
) -> Result<ConvergenceReport> {
    if n_list.is_empty() {
        return Err(Error::domain("convergence_study", "empty N list"));
    }
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain(
            "convergence_study",
            "N list must be strictly increasing",
        ));
    }
    let exact = spec
        .exact_solution()
        .ok_or_else(|| Error::domain("convergence_study", "problem has no exact solution"))?
        .clone();

    let tp = transform(spec)?;
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let sol = solve(&tp, n, quad_order)?;
        let error_order = match quad_order {
            QuadOrder::Auto => auto_error_order(n),
            QuadOrder::Fixed(q) => q,
        };
        let err_weighted = error_weighted(&sol, |x| exact(x), error_order)?;
        let err_l2 = error_l2(&sol, |x| exact(x), error_order)?;
        let (rate_weighted, rate_l2) = match rows.last() {
            Some(prev) => (
                Some(empirical_rate(prev.err_weighted, err_weighted, prev.n, n)),
                Some(empirical_rate(prev.err_l2, err_l2, prev.n, n)),
            ),
            None => (None, None),
        };
        rows.push(ConvergenceRow {
            n,
            err_weighted,
            rate_weighted,
            err_l2,
            rate_l2,
        });
    }

    Ok(ConvergenceReport {
        rows,
        predicted_rate: predicted_rate(tp.alpha(), tp.beta()),
        alpha: tp.alpha(),
        r: spec.r(),
        beta: tp.beta(),
    })
}

impl ConvergenceReport {
    /// CSV rendering: full-precision scientific data rows, then metadata
    /// comment lines with the predicted rate (two decimals) and the
    /// parameters.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("N,err_weighted,rate_weighted,err_l2,rate_l2\n");
        let fmt_rate = |r: &Option<f64>| r.map(|v| format!("{v:.9e}")).unwrap_or_default();
        for row in &self.rows {
            out.push_str(&format!(
                "{},{:.9e},{},{:.9e},{}\n",
                row.n,
                row.err_weighted,
                fmt_rate(&row.rate_weighted),
                row.err_l2,
                fmt_rate(&row.rate_l2),
            ));
        }
        out.push_str(&format!("# predicted_rate={:.2}\n", self.predicted_rate));
        out.push_str(&format!(
            "# alpha={}, r={}, beta={}\n",
            self.alpha, self.r, self.beta
        ));
        out
    }
}
