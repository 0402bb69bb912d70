//! The constructive spectral solution.
//!
//! Expanding the transformed right-hand sides f1, f2 in the Jacobi basis
//! G_j^{(beta-1, alpha-beta-1)} and the solution ansatz in the weighted
//! basis w^{(alpha-beta, beta)} G_j^{(alpha-beta, beta)}, the two-sided
//! operator acts diagonally: each solution coefficient is
//!
//! ```text
//! c_j = (-f_{1,j+1} + A f_{2,j+1}) / lambda_j,
//! ```
//!
//! with the solvability condition f_{1,0} - A f_{2,0} = 0 fixing A. There is
//! no linear system; the solve is projection plus division.

use log::warn;

use crate::problem::{lambda_n, TransformedProblem};
use crate::quadrature::{
    shared_gauss_jacobi, QuadOrder, DEFAULT_ORDER_MARGIN, LADDER_CAP, LADDER_TOLERANCE,
};
use crate::specfun::JacobiBasis;
use crate::{Error, Result};

/// A truncated spectral solution u_N together with the projection data that
/// produced it. Immutable; evaluation is pure.
#[derive(Debug, Clone)]
pub struct SpectralSolution {
    alpha: f64,
    beta: f64,
    order: usize,
    coeffs: Vec<f64>,
    a_constant: f64,
    f1_coeffs: Vec<f64>,
    f2_coeffs: Vec<f64>,
}

/// Expansion coefficients of g against the basis: f_{g,j} = (g, G_j)_w /
/// |||G_j|||^2 for j = 0..=order. The quadrature order must exceed the
/// projection order.
pub fn project<F: Fn(f64) -> f64>(
    g: F,
    basis: &JacobiBasis,
    order: usize,
    quad_order: usize,
) -> Result<Vec<f64>> {
    if quad_order < order + 1 {
        return Err(Error::domain(
            "project",
            format!("quadrature order {quad_order} too small for projection order {order}"),
        ));
    }
    let rule = shared_gauss_jacobi(basis.a(), basis.b(), quad_order)?;
    let mut coeffs = vec![0.0_f64; order + 1];
    let mut poly = vec![0.0_f64; order + 1];
    for (&t, &w) in rule.nodes().iter().zip(rule.weights()) {
        let sample = g(t);
        if !sample.is_finite() {
            return Err(Error::NonFiniteSample { x: t });
        }
        basis.eval_all_into(t, &mut poly);
        let ws = w * sample;
        for (c, p) in coeffs.iter_mut().zip(&poly) {
            *c += ws * p;
        }
    }
    for (j, c) in coeffs.iter_mut().enumerate() {
        *c /= basis.norm_sq(j);
    }
    Ok(coeffs)
}

/// The solvability constant A = f_{1,0} / f_{2,0}. The denominator is a
/// weighted average of 1/K and must stay away from zero.
pub fn compute_a(f1_coeffs: &[f64], f2_coeffs: &[f64]) -> Result<f64> {
    let (f10, f20) = match (f1_coeffs.first(), f2_coeffs.first()) {
        (Some(&x), Some(&y)) => (x, y),
        _ => return Err(Error::domain("compute_a", "empty projection vectors")),
    };
    if !f20.is_finite() || f20.abs() < 1e-300 {
        return Err(Error::DegenerateSolvability { value: f20 });
    }
    Ok(f10 / f20)
}

/// A by the ratio of raw weighted inner products (f1, 1)_w / (1/K, 1)_w.
/// Mathematically identical to [`compute_a`] on the projections; kept as an
/// independent code path for cross-checking.
pub fn compute_a_by_inner_products(tp: &TransformedProblem, quad_order: usize) -> Result<f64> {
    let basis = rhs_basis(tp)?;
    let rule = shared_gauss_jacobi(basis.a(), basis.b(), quad_order)?;
    let numerator = rule.inner_product(|x| (tp.f1())(x), |_| 1.0)?;
    let denominator = rule.inner_product(|x| (tp.f2())(x), |_| 1.0)?;
    if denominator.abs() < 1e-300 {
        return Err(Error::DegenerateSolvability { value: denominator });
    }
    Ok(numerator / denominator)
}

/// Basis carrying the right-hand-side expansions, (beta-1, alpha-beta-1).
pub fn rhs_basis(tp: &TransformedProblem) -> Result<JacobiBasis> {
    JacobiBasis::new(tp.beta() - 1.0, tp.alpha() - tp.beta() - 1.0)
}

/// Basis of the solution expansion, (alpha-beta, beta).
pub fn solution_basis(tp: &TransformedProblem) -> Result<JacobiBasis> {
    JacobiBasis::new(tp.alpha() - tp.beta(), tp.beta())
}

fn relative_change(old: &[f64], new: &[f64]) -> f64 {
    let scale = new
        .iter()
        .fold(0.0_f64, |acc, v| acc.max(v.abs()))
        .max(f64::MIN_POSITIVE);
    old.iter()
        .zip(new)
        .fold(0.0_f64, |acc, (o, n)| acc.max((o - n).abs()))
        / scale
}

/// Projects f1 and f2 at the base order N + 40, then doubles the rule until
/// the coefficients move by less than [`LADDER_TOLERANCE`] relative or the
/// node cap is reached (the integrands are smooth-times-algebraic, so the
/// cap is expected for singular data and only costs accuracy beyond what
/// the truncation error can see).
fn project_pair_auto(
    tp: &TransformedProblem,
    basis: &JacobiBasis,
    order: usize,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut q = order + DEFAULT_ORDER_MARGIN;
    let mut f1c = project(|x| (tp.f1())(x), basis, order + 1, q)?;
    let mut f2c = project(|x| (tp.f2())(x), basis, order + 1, q)?;
    loop {
        let doubled = q * 2;
        if doubled > LADDER_CAP {
            warn!(
                "projection quadrature hit the {LADDER_CAP}-node cap at relative change above {LADDER_TOLERANCE:e}"
            );
            break;
        }
        let g1 = project(|x| (tp.f1())(x), basis, order + 1, doubled)?;
        let g2 = project(|x| (tp.f2())(x), basis, order + 1, doubled)?;
        let change = relative_change(&f1c, &g1).max(relative_change(&f2c, &g2));
        f1c = g1;
        f2c = g2;
        q = doubled;
        if change < LADDER_TOLERANCE {
            break;
        }
    }
    Ok((f1c, f2c))
}

/// Solves the transformed problem at truncation order N.
///
/// Projections of f1 and f2 are taken to order N + 1 (the coefficient
/// formula consumes index j + 1), A comes from the degree-0 projections,
/// and each c_j is a single division by lambda_j.
pub fn solve(
    tp: &TransformedProblem,
    order: usize,
    quad_order: QuadOrder,
) -> Result<SpectralSolution> {
    let basis = rhs_basis(tp)?;
    let (f1_coeffs, f2_coeffs) = match quad_order {
        QuadOrder::Auto => project_pair_auto(tp, &basis, order)?,
        QuadOrder::Fixed(q) => (
            project(|x| (tp.f1())(x), &basis, order + 1, q)?,
            project(|x| (tp.f2())(x), &basis, order + 1, q)?,
        ),
    };
    let a_constant = compute_a(&f1_coeffs, &f2_coeffs)?;

    let (alpha, beta) = (tp.alpha(), tp.beta());
    let coeffs: Vec<f64> = (0..=order)
        .map(|j| (-f1_coeffs[j + 1] + a_constant * f2_coeffs[j + 1]) / lambda_n(alpha, beta, j))
        .collect();

    Ok(SpectralSolution {
        alpha,
        beta,
        order,
        coeffs,
        a_constant,
        f1_coeffs,
        f2_coeffs,
    })
}

impl SpectralSolution {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Truncation order N; there are N + 1 coefficients.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn solvability_constant(&self) -> f64 {
        self.a_constant
    }

    /// Projections f_{1,j}, j = 0..=N+1.
    pub fn f1_coeffs(&self) -> &[f64] {
        &self.f1_coeffs
    }

    /// Projections f_{2,j}, j = 0..=N+1.
    pub fn f2_coeffs(&self) -> &[f64] {
        &self.f2_coeffs
    }

    /// u_N(x) = (1-x)^{alpha-beta} x^beta sum c_j G_j^{(alpha-beta,beta)}(x).
    /// The weight exponents are positive, so the endpoint values are 0 by
    /// definition and the weight is never raised to a negative power.
    pub fn evaluate(&self, x: f64) -> f64 {
        if x <= 0.0 || x >= 1.0 {
            return 0.0;
        }
        let (a, b) = (self.alpha - self.beta, self.beta);
        let basis = JacobiBasis::new(a, b).expect("solution basis exponents exceed -1");
        let mut poly = vec![0.0_f64; self.order + 1];
        basis.eval_all_into(x, &mut poly);
        let series: f64 = self.coeffs.iter().zip(&poly).map(|(c, p)| c * p).sum();
        (1.0 - x).powf(a) * x.powf(b) * series
    }

    /// The exact analytic action of the two-sided operator on u_N:
    /// -(sum c_j lambda_j G_{j+1}^{(beta-1, alpha-beta-1)}(x)).
    pub fn apply_operator(&self, x: f64) -> f64 {
        let basis = JacobiBasis::new(self.beta - 1.0, self.alpha - self.beta - 1.0)
            .expect("rhs basis exponents exceed -1");
        let mut poly = vec![0.0_f64; self.order + 2];
        basis.eval_all_into(x, &mut poly);
        -self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| c * lambda_n(self.alpha, self.beta, j) * poly[j + 1])
            .sum::<f64>()
    }
}
