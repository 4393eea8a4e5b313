//! Gauss–Jacobi quadrature by the Golub–Welsch method.
//!
//! The nodes are the eigenvalues of the symmetric tridiagonal Jacobi matrix
//! built from the monic recurrence coefficients of `P_n^{(a,b)}`; the weights
//! are `μ₀ v₀²` with `v₀` the first component of each normalized eigenvector
//! and `μ₀ = ∫(1−x)^a(1+x)^b dx = 2^{a+b+1} B(a+1, b+1)`.

use crate::error::{Error, Result};
use crate::special::gamma::{ln_beta, ln_gamma};
use crate::special::jacobi::check_exponents;

/// Nodes and weights for `∫_{−1}^{1} (1−x)^a (1+x)^b f(x) dx`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    a: f64,
    b: f64,
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight_exponents(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Order that integrates a polynomial of degree `degree` exactly, plus two
/// guard nodes.
pub fn exact_order(degree: usize) -> usize {
    degree.div_ceil(2).max(1) + 2
}

/// `∫(1−x)^a(1+x)^b dx` over `[−1, 1]`.
pub fn weight_moment(a: f64, b: f64) -> f64 {
    ((a + b + 1.0) * std::f64::consts::LN_2 + ln_beta(a + 1.0, b + 1.0)).exp()
}

pub fn gauss_jacobi(order: usize, a: f64, b: f64) -> Result<QuadratureRule> {
    if order == 0 {
        return Err(Error::InvalidParams("quadrature order must be at least 1".into()));
    }
    check_exponents(a, b)?;

    let ab = a + b;
    let mut diag = vec![0.0; order];
    let mut off = vec![0.0; order];
    diag[0] = (b - a) / (ab + 2.0);
    for (k, d) in diag.iter_mut().enumerate().skip(1) {
        let c = 2.0 * k as f64 + ab;
        *d = (b * b - a * a) / (c * (c + 2.0));
    }
    for (k, e) in off.iter_mut().enumerate().take(order - 1) {
        let k = (k + 1) as f64;
        let beta = if k == 1.0 {
            4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab).powi(2) * (3.0 + ab))
        } else {
            let c = 2.0 * k + ab;
            4.0 * k * (k + a) * (k + b) * (k + ab) / (c * c * (c + 1.0) * (c - 1.0))
        };
        *e = beta.sqrt();
    }

    let first = symmetric_tridiagonal_eigen(&mut diag, &mut off)?;
    let mu0 = weight_moment(a, b);

    let mut pairs: Vec<(f64, f64)> = diag
        .into_iter()
        .zip(first)
        .map(|(x, v)| (x, mu0 * v * v))
        .collect();
    pairs.sort_by(|l, r| l.0.total_cmp(&r.0));
    let (nodes, weights) = pairs.into_iter().unzip();
    Ok(QuadratureRule { nodes, weights, a, b })
}

/// Implicit-shift QL on a symmetric tridiagonal matrix.
///
/// On entry `diag` holds the diagonal and `off[i]` couples rows `i` and
/// `i + 1` (the last entry is ignored). On exit `diag` holds the eigenvalues
/// (unsorted) and the returned vector the first component of each unit
/// eigenvector. Only the first row of the eigenvector matrix is carried
/// through the rotations.
pub fn symmetric_tridiagonal_eigen(diag: &mut [f64], off: &mut [f64]) -> Result<Vec<f64>> {
    const MAX_SWEEPS: usize = 60;
    let n = diag.len();
    assert_eq!(off.len(), n);
    let mut z = vec![0.0; n];
    z[0] = 1.0;
    if n == 1 {
        return Ok(z);
    }
    off[n - 1] = 0.0;

    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if off[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_SWEEPS {
                return Err(Error::InvalidParams("QL iteration did not converge".into()));
            }

            let mut g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
            let mut r = g.hypot(1.0);
            g = diag[m] - diag[l] + off[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * off[i];
                let bb = c * off[i];
                r = f.hypot(g);
                off[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= p;
                    off[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * bb;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - bb;

                let zf = z[i + 1];
                z[i + 1] = s * z[i] + c * zf;
                z[i] = c * z[i] - s * zf;
            }
            if deflated {
                continue;
            }
            diag[l] -= p;
            off[l] = g;
            off[m] = 0.0;
        }
    }
    Ok(z)
}

/// Closed form of `∫(1−x)^a(1+x)^{b−1} (P_m^{(a,b)}(x))² dx`:
///
/// `2^{a+b}/b · Γ(a+m+1) Γ(b+m+1) / (m! Γ(a+b+m+1))`, valid for `a > −1`,
/// `b > 0`.
pub fn gr_7391(a: f64, b: f64, m: usize) -> Result<f64> {
    if !(a.is_finite() && a > -1.0) || !(b.is_finite() && b > 0.0) {
        return Err(Error::InvalidParams(format!(
            "identity requires a > -1 and b > 0 (got a={a}, b={b})"
        )));
    }
    let m = m as f64;
    let log = (a + b) * std::f64::consts::LN_2 - b.ln() + ln_gamma(a + m + 1.0)
        + ln_gamma(b + m + 1.0)
        - ln_gamma(m + 1.0)
        - ln_gamma(a + b + m + 1.0);
    Ok(log.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::jacobi::{jacobi_p, JacobiParams};
    use nalgebra::{DMatrix, SymmetricEigen};

    #[test]
    fn single_node_legendre() {
        let rule = gauss_jacobi(1, 0.0, 0.0).unwrap();
        assert_eq!(rule.nodes(), &[0.0]);
        assert!((rule.weights()[0] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn legendre_exactness() {
        let rule = gauss_jacobi(5, 0.0, 0.0).unwrap();
        let got = rule.integrate(|x| x.powi(8));
        assert!((got - 2.0 / 9.0).abs() < 1e-13);
    }

    #[test]
    fn invalid_inputs() {
        assert!(gauss_jacobi(0, 0.0, 0.0).is_err());
        assert!(gauss_jacobi(3, -1.0, 0.0).is_err());
        assert!(gauss_jacobi(3, 0.0, -2.0).is_err());
        assert!(gr_7391(0.0, 0.0, 1).is_err());
        assert!(gr_7391(-1.0, 1.0, 1).is_err());
    }

    #[test]
    fn nodes_inside_interval_and_weights_positive() {
        for &(n, a, b) in &[(1, 0.0, 0.0), (7, 2.0, 5.0), (30, -0.5, 0.5), (40, 6.0, 0.0)] {
            let rule = gauss_jacobi(n, a, b).unwrap();
            assert!(rule.nodes().iter().all(|x| (-1.0..1.0).contains(x) && *x > -1.0));
            assert!(rule.weights().iter().all(|w| *w > 0.0));
            assert!(rule.nodes().windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn nodes_are_zeros_of_jacobi_polynomial() {
        let (a, b) = (1.5, 3.0);
        let rule = gauss_jacobi(12, a, b).unwrap();
        let p = JacobiParams::new(a, b, 12).unwrap();
        let scale = jacobi_p(&p, 1.0);
        for &x in rule.nodes() {
            assert!(jacobi_p(&p, x).abs() < 1e-11 * scale);
        }
    }

    #[test]
    fn eigenvalues_match_nalgebra() {
        let (a, b, n) = (2.0, 0.5, 16);
        let rule = gauss_jacobi(n, a, b).unwrap();
        let ab = a + b;
        let mut m = DMatrix::<f64>::zeros(n, n);
        for k in 0..n {
            let c = 2.0 * k as f64 + ab;
            m[(k, k)] = if k == 0 { (b - a) / (ab + 2.0) } else { (b * b - a * a) / (c * (c + 2.0)) };
        }
        for k in 1..n {
            let kf = k as f64;
            let c = 2.0 * kf + ab;
            let beta = 4.0 * kf * (kf + a) * (kf + b) * (kf + ab) / (c * c * (c + 1.0) * (c - 1.0));
            m[(k, k - 1)] = beta.sqrt();
            m[(k - 1, k)] = beta.sqrt();
        }
        let eig = SymmetricEigen::new(m);
        let mut pairs: Vec<(f64, f64)> = eig
            .eigenvalues
            .iter()
            .zip(eig.eigenvectors.row(0).iter())
            .map(|(&x, &v)| (x, v * v * weight_moment(a, b)))
            .collect();
        pairs.sort_by(|l, r| l.0.total_cmp(&r.0));
        for ((x, w), (x_ref, w_ref)) in rule.nodes().iter().zip(rule.weights()).zip(pairs) {
            assert!((x - x_ref).abs() < 1e-13);
            assert!((w - w_ref).abs() < 1e-13 * w_ref.max(1e-3));
        }
    }

    #[test]
    fn closed_form_examples() {
        assert!((gr_7391(0.0, 1.0, 0).unwrap() - 2.0).abs() < 1e-15);
        assert!((gr_7391(1.0, 1.0, 0).unwrap() - 2.0).abs() < 1e-15);
        // a=2, b=3, m=2: left-hand side by quadrature
        let lhs = gauss_jacobi(exact_order(4), 2.0, 2.0)
            .unwrap()
            .integrate(|x| jacobi_p(&JacobiParams::new(2.0, 3.0, 2).unwrap(), x).powi(2));
        let rhs = gr_7391(2.0, 3.0, 2).unwrap();
        assert!((lhs - rhs).abs() <= 1e-12 * rhs);
    }

    #[test]
    fn exact_order_policy() {
        assert_eq!(exact_order(0), 3);
        assert_eq!(exact_order(1), 3);
        assert_eq!(exact_order(2), 3);
        assert_eq!(exact_order(3), 4);
        assert_eq!(exact_order(16), 10);
    }
}
