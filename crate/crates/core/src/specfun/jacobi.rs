//! Shifted Jacobi polynomials G_n^{(a,b)} on [0, 1].
//!
//! G_n^{(a,b)}(t) = P_n^{(a,b)}(2t - 1) is orthogonal under the weight
//! (1-t)^a t^b; `a` is the exponent at the right endpoint, `b` at the left.
//! Polynomials of negative degree are identically zero.

use super::gamma::ln_gamma_positive;
use crate::{Error, Result};

/// A Jacobi parameter pair (a, b) with a, b > -1, giving the weight
/// (1-t)^a t^b on (0, 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiBasis {
    a: f64,
    b: f64,
}

impl JacobiBasis {
    /// Both exponents must exceed -1 for the weight to be integrable.
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || a <= -1.0 || !b.is_finite() || b <= -1.0 {
            return Err(Error::domain(
                "JacobiBasis",
                format!("exponents ({a}, {b}) must be > -1"),
            ));
        }
        Ok(JacobiBasis { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// G_n^{(a,b)}(t) by the three-term recurrence in n. The explicit
    /// binomial-sum definition cancels catastrophically already for
    /// moderate n and is only used as a test oracle.
    pub fn eval(&self, n: usize, t: f64) -> f64 {
        let (a, b) = (self.a, self.b);
        if n == 0 {
            return 1.0;
        }
        let mut prev = 1.0;
        let mut cur = (a + b + 2.0) * t - (b + 1.0);
        let y = 2.0 * t - 1.0;
        for m in 2..=n {
            let m = m as f64;
            let c1 = 2.0 * m * (m + a + b) * (2.0 * m + a + b - 2.0);
            let c2 = (2.0 * m + a + b - 1.0) * (a * a - b * b);
            let c3 = (2.0 * m + a + b - 2.0) * (2.0 * m + a + b - 1.0) * (2.0 * m + a + b);
            let c4 = 2.0 * (m + a - 1.0) * (m + b - 1.0) * (2.0 * m + a + b);
            let next = ((c2 + c3 * y) * cur - c4 * prev) / c1;
            prev = cur;
            cur = next;
        }
        cur
    }

    /// Fills `out[j] = G_j^{(a,b)}(t)` for j = 0..out.len(). One recurrence
    /// pass; this is the hot path of projections and evaluations.
    pub fn eval_all_into(&self, t: f64, out: &mut [f64]) {
        let (a, b) = (self.a, self.b);
        if out.is_empty() {
            return;
        }
        out[0] = 1.0;
        if out.len() == 1 {
            return;
        }
        out[1] = (a + b + 2.0) * t - (b + 1.0);
        let y = 2.0 * t - 1.0;
        for m in 2..out.len() {
            let mf = m as f64;
            let c1 = 2.0 * mf * (mf + a + b) * (2.0 * mf + a + b - 2.0);
            let c2 = (2.0 * mf + a + b - 1.0) * (a * a - b * b);
            let c3 = (2.0 * mf + a + b - 2.0) * (2.0 * mf + a + b - 1.0) * (2.0 * mf + a + b);
            let c4 = 2.0 * (mf + a - 1.0) * (mf + b - 1.0) * (2.0 * mf + a + b);
            out[m] = ((c2 + c3 * y) * out[m - 1] - c4 * out[m - 2]) / c1;
        }
    }

    /// Squared weighted norm |||G_n^{(a,b)}|||^2 under (1-t)^a t^b on (0,1).
    pub fn norm_sq(&self, n: usize) -> f64 {
        let (a, b) = (self.a, self.b);
        if n == 0 {
            // the general formula divides by Gamma(a+b+1), which is negative
            // for a+b < 0; the n = 0 norm is just the Beta integral
            return (ln_gamma_positive(a + 1.0) + ln_gamma_positive(b + 1.0)
                - ln_gamma_positive(a + b + 2.0))
            .exp();
        }
        let n = n as f64;
        (ln_gamma_positive(n + a + 1.0) + ln_gamma_positive(n + b + 1.0)
            - ln_gamma_positive(n + 1.0)
            - ln_gamma_positive(n + a + b + 1.0))
        .exp()
            / (2.0 * n + a + b + 1.0)
    }

    /// Weighted norm |||G_n^{(a,b)}|||. Symmetric under swapping (a, b).
    pub fn norm(&self, n: usize) -> f64 {
        self.norm_sq(n).sqrt()
    }

    /// k-th derivative d^k/dt^k G_n^{(a,b)}(t). Zero for k > n (Jacobi
    /// polynomials of negative degree are identically zero); otherwise
    /// a Gamma-ratio factor times G_{n-k}^{(a+k,b+k)}(t).
    pub fn deriv(&self, n: usize, k: usize, t: f64) -> f64 {
        if k == 0 {
            return self.eval(n, t);
        }
        if k > n {
            return 0.0;
        }
        let (a, b) = (self.a, self.b);
        let (nf, kf) = (n as f64, k as f64);
        let factor =
            (ln_gamma_positive(nf + kf + a + b + 1.0) - ln_gamma_positive(nf + a + b + 1.0)).exp();
        let shifted = JacobiBasis {
            a: a + kf,
            b: b + kf,
        };
        factor * shifted.eval(n - k, t)
    }

    /// First derivative of the weighted polynomial
    /// (1-t)^{a+1} t^{b+1} G_{n-1}^{(a+1,b+1)}(t), in its analytic form
    /// -n (1-t)^a t^b G_n^{(a,b)}(t). This is the exact D(w G) that feeds
    /// the fractional-integral quadrature.
    pub fn weighted_deriv_identity(&self, n: usize, t: f64) -> f64 {
        if n == 0 {
            return 0.0;
        }
        -(n as f64) * (1.0 - t).powf(self.a) * t.powf(self.b) * self.eval(n, t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    /// Binomial-sum definition of P_n^{(a,b)}(2t-1); numerically unstable
    /// beyond small n, used only to pin the recurrence down.
    fn binomial_sum_oracle(a: f64, b: f64, n: usize, t: f64) -> f64 {
        let x = 2.0 * t - 1.0;
        let mut sum = 0.0;
        for m in 0..=n {
            // C(n+a, m) * C(n+b, n-m) via stable product forms
            let mut c1 = 1.0;
            for i in 1..=m {
                c1 *= (n as f64 + a - (i as f64) + 1.0) / i as f64;
            }
            let mut c2 = 1.0;
            for i in 1..=(n - m) {
                c2 *= (n as f64 + b - (i as f64) + 1.0) / i as f64;
            }
            sum += c1 * c2 * (x - 1.0).powi((n - m) as i32) * (x + 1.0).powi(m as i32);
        }
        sum / 2f64.powi(n as i32)
    }

    #[test]
    fn degree_zero_is_one() {
        let basis = JacobiBasis::new(-0.1, -0.2).unwrap();
        for t in [0.0, 0.3, 1.0] {
            assert_eq!(basis.eval(0, t), 1.0);
        }
    }

    #[test]
    fn degree_one_closed_form() {
        let (a, b) = (0.8, -0.4);
        let basis = JacobiBasis::new(a, b).unwrap();
        for t in [0.0, 0.25, 0.7, 1.0] {
            assert_relative_eq!(
                basis.eval(1, t),
                (a + b + 2.0) * t - (b + 1.0),
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn legendre_endpoint_value() {
        let basis = JacobiBasis::new(0.0, 0.0).unwrap();
        for n in [1, 2, 5, 11] {
            assert_relative_eq!(basis.eval(n, 1.0), 1.0, max_relative = 1e-13);
        }
    }

    #[test]
    fn recurrence_matches_binomial_sum() {
        for (a, b) in [(0.0, 0.0), (-0.0986, -0.2014), (1.3, -0.5), (0.5, 0.5)] {
            let basis = JacobiBasis::new(a, b).unwrap();
            for n in 0..=10 {
                for t in [0.1, 0.37, 0.5, 0.92] {
                    let want = binomial_sum_oracle(a, b, n, t);
                    assert_abs_diff_eq!(
                        basis.eval(n, t),
                        want,
                        epsilon = 1e-12 * want.abs().max(1.0)
                    );
                }
            }
        }
    }

    #[test]
    fn eval_all_matches_eval() {
        let basis = JacobiBasis::new(-0.0986, -0.2014).unwrap();
        let mut buf = vec![0.0; 13];
        basis.eval_all_into(0.42, &mut buf);
        for (n, &v) in buf.iter().enumerate() {
            assert_eq!(v, basis.eval(n, 0.42));
        }
    }

    #[test]
    fn norm_legendre_constant() {
        let basis = JacobiBasis::new(0.0, 0.0).unwrap();
        assert_relative_eq!(basis.norm(0), 1.0, max_relative = 1e-14);
    }

    #[test]
    fn norm_parameter_symmetry() {
        for (a, b) in [(0.8, 0.9), (-0.1, 1.3), (-0.9, -0.5)] {
            let ab = JacobiBasis::new(a, b).unwrap();
            let ba = JacobiBasis::new(b, a).unwrap();
            for j in 0..=12 {
                assert_relative_eq!(ab.norm(j), ba.norm(j), max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn deriv_order_zero_is_eval() {
        let basis = JacobiBasis::new(0.7, -0.3).unwrap();
        assert_eq!(basis.deriv(4, 0, 0.3), basis.eval(4, 0.3));
    }

    #[test]
    fn deriv_of_constant_vanishes() {
        let basis = JacobiBasis::new(0.7, -0.3).unwrap();
        assert_eq!(basis.deriv(0, 1, 0.3), 0.0);
        assert_eq!(basis.deriv(2, 5, 0.3), 0.0);
    }

    #[test]
    fn deriv_matches_finite_difference() {
        let basis = JacobiBasis::new(0.3, 0.6).unwrap();
        let h = 1e-6;
        for n in 1..=8 {
            for t in [0.2, 0.37, 0.8] {
                let fd = (basis.eval(n, t + h) - basis.eval(n, t - h)) / (2.0 * h);
                let an = basis.deriv(n, 1, t);
                assert_relative_eq!(an, fd, max_relative = 1e-6);
            }
        }
    }

    #[test]
    fn weighted_identity_degree_one() {
        // n = 1: d/dt[(1-t)^{a+1} t^{b+1} G_0^{(a+1,b+1)}] = -(1-t)^a t^b G_1
        let (a, b) = (0.6, 0.2);
        let basis = JacobiBasis::new(a, b).unwrap();
        for t in [0.1_f64, 0.5, 0.9] {
            let want = -(1.0 - t).powf(a) * t.powf(b) * basis.eval(1, t);
            assert_relative_eq!(
                basis.weighted_deriv_identity(1, t),
                want,
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn weighted_identity_vanishes_at_origin_limit() {
        let basis = JacobiBasis::new(0.5, 0.25).unwrap();
        let v = basis.weighted_deriv_identity(1, 1e-30);
        assert!(v.abs() < 1e-6);
    }

    #[test]
    fn weighted_identity_matches_finite_difference() {
        let (a, b) = (0.6, 0.2);
        let basis = JacobiBasis::new(a, b).unwrap();
        let inner = JacobiBasis::new(a + 1.0, b + 1.0).unwrap();
        let weighted = |t: f64| (1.0 - t).powf(a + 1.0) * t.powf(b + 1.0) * inner.eval(1, t);
        let (t, h) = (0.5, 1e-6);
        let fd = (weighted(t + h) - weighted(t - h)) / (2.0 * h);
        assert_relative_eq!(basis.weighted_deriv_identity(2, t), fd, max_relative = 1e-8);
    }

    #[test]
    fn invalid_exponents_rejected() {
        assert!(JacobiBasis::new(-1.0, 0.0).is_err());
        assert!(JacobiBasis::new(0.0, -1.5).is_err());
        assert!(JacobiBasis::new(f64::NAN, 0.0).is_err());
    }
}
