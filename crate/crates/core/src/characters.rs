//! Characters `χ^η(g) = tr U^η(g)`.
//!
//! The closed form depends on `Re α` only:
//!
//! ```text
//! χ^η(g) = ½ ((Re α)² − 1)^{−1/2} (Re α + ((Re α)² − 1)^{1/2})^{1−2η}
//! ```
//!
//! For `(Re α)² < 1` the root is taken as `+i √(1 − (Re α)²)`; on the
//! compact subgroup this is `√(cos²(θ/2) − 1) = i sin(θ/2)` for
//! `θ ∈ (0, 2π)`. The trace itself never converges absolutely (the diagonal
//! entries decay at best like `n^{−1/2}`), so the numerical counterparts here
//! are partial sums and Abel-damped sums `Σ rⁿ U_{nn}` with `r` and the term
//! count explicit.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::{GroupElement, RepLabel};
use crate::rep_matrix::diagonal_elements;

/// Half-width of the excluded band around `(Re α)² = 1`.
pub const BOUNDARY_TOL: f64 = 1e-9;
/// Smallest `|sin(θ/2)|` accepted on the compact subgroup.
pub const SINGULAR_SIN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `(Re α)² > 1`.
    HyperbolicAbsConvergent,
    /// `(Re α)² < 1`, where only regularized traces exist.
    EllipticAbel,
    /// `|(Re α)² − 1| ≤ BOUNDARY_TOL`.
    Boundary,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::HyperbolicAbsConvergent => "hyperbolic_abs_convergent",
            Regime::EllipticAbel => "elliptic_abel",
            Regime::Boundary => "boundary",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharacterValue {
    pub value: Complex64,
    pub regime: Regime,
}

pub fn classify(g: &GroupElement) -> Regime {
    classify_gap(g.alpha().re.powi(2) - 1.0)
}

fn classify_gap(gap: f64) -> Regime {
    if gap.abs() <= BOUNDARY_TOL {
        Regime::Boundary
    } else if gap > 0.0 {
        Regime::HyperbolicAbsConvergent
    } else {
        Regime::EllipticAbel
    }
}

/// `√gap` with the `+i` branch for negative `gap`.
fn branch_sqrt(gap: f64) -> Complex64 {
    if gap >= 0.0 {
        Complex64::new(gap.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-gap).sqrt())
    }
}

fn closed_form(eta: RepLabel, re_alpha: f64, root: Complex64, scale: f64) -> Complex64 {
    let exponent = (1 - eta.two_eta()) as i32;
    (Complex64::new(re_alpha, 0.0) + root).powi(exponent) * scale / (2.0 * root)
}

fn check_gap(gap: f64, re_alpha_sign: f64, re_alpha: f64) -> Result<Regime> {
    let regime = classify_gap(gap);
    match regime {
        Regime::Boundary => Err(Error::BoundaryConjugacyClass { gap }),
        Regime::HyperbolicAbsConvergent if re_alpha_sign < 0.0 => Err(Error::UnsupportedClass { re_alpha }),
        _ => Ok(regime),
    }
}

/// Closed-form character from `Re α`.
pub fn character(eta: RepLabel, g: &GroupElement) -> Result<CharacterValue> {
    let re_alpha = g.alpha().re;
    let gap = re_alpha * re_alpha - 1.0;
    let regime = check_gap(gap, re_alpha, re_alpha)?;
    let value = closed_form(eta, re_alpha, branch_sqrt(gap), 1.0);
    Ok(CharacterValue { value, regime })
}

/// The same closed form written in `(x, φ, ψ)`:
///
/// `½ (1+x)^η (cos(φ+ψ) − x)^{−1/2} (√2 cos((φ+ψ)/2) + (cos(φ+ψ) − x)^{1/2})^{1−2η}`.
pub fn character_cartan(eta: RepLabel, x: f64, phi: f64, psi: f64) -> Result<CharacterValue> {
    if !(x > -1.0 && x <= 1.0) {
        return Err(Error::InvalidCoordinates(format!("x = {x} is outside (-1, 1]")));
    }
    let c = (phi + psi).cos();
    let half = (0.5 * (phi + psi)).cos();
    let one_plus_x = 1.0 + x;
    // (Re α)² − 1 = (cos(φ+ψ) − x)/(1 + x), Re α = √2 cos((φ+ψ)/2)/√(1+x)
    let gap = (c - x) / one_plus_x;
    let re_alpha = std::f64::consts::SQRT_2 * half / one_plus_x.sqrt();
    let regime = check_gap(gap, half, re_alpha)?;
    let root = branch_sqrt(c - x);
    let value = closed_form(
        eta,
        std::f64::consts::SQRT_2 * half,
        root,
        one_plus_x.powf(eta.value()),
    );
    Ok(CharacterValue { value, regime })
}

/// Reduces θ into `[0, 4π)` and checks it lies in the supported window
/// `(0, 2π)` away from the poles of `1/sin(θ/2)`.
pub(crate) fn check_compact_angle(theta: f64) -> Result<f64> {
    if !theta.is_finite() {
        return Err(Error::UnsupportedAngle { theta });
    }
    let t = theta.rem_euclid(4.0 * PI);
    if (0.5 * t).sin().abs() < SINGULAR_SIN_TOL {
        return Err(Error::SingularAngle { theta });
    }
    if t > 2.0 * PI {
        return Err(Error::UnsupportedAngle { theta });
    }
    Ok(t)
}

/// `χ^η(h(θ)) = e^{i(1−2η)θ/2} / (2i sin(θ/2))`.
pub fn character_compact(eta: RepLabel, theta: f64) -> Result<Complex64> {
    let t = check_compact_angle(theta)?;
    Ok(compact_formula(eta.two_eta(), t))
}

pub(crate) fn compact_formula(two_eta: i64, theta: f64) -> Complex64 {
    let num = Complex64::from_polar(1.0, (1 - two_eta) as f64 * 0.5 * theta);
    num / Complex64::new(0.0, 2.0 * (0.5 * theta).sin())
}

/// `Σ_{n<terms} U^η_{nn}(g)`.
pub fn trace_partial_sum(eta: RepLabel, g: &GroupElement, terms: usize) -> Complex64 {
    diagonal_elements(eta, g).take(terms).sum()
}

/// `Σ_{n<terms} rⁿ U^η_{nn}(g)` for an arbitrary element.
pub fn abel_damped_trace(eta: RepLabel, g: &GroupElement, r: f64, terms: usize) -> Result<Complex64> {
    check_damping(r)?;
    let mut weight = 1.0;
    let mut acc = Complex64::new(0.0, 0.0);
    for u in diagonal_elements(eta, g).take(terms) {
        acc += u * weight;
        weight *= r;
    }
    Ok(acc)
}

pub(crate) fn check_damping(r: f64) -> Result<()> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidDamping { r });
    }
    Ok(())
}

/// Number of terms after which `rⁿ < eps`.
pub fn terms_for_damping(r: f64, eps: f64) -> usize {
    (eps.ln() / r.ln()).ceil() as usize + 1
}

fn check_elliptic_angle(theta: f64) -> Result<()> {
    if !theta.is_finite() || (0.5 * theta).sin().abs() <= SINGULAR_SIN_TOL {
        return Err(Error::SingularAngle { theta });
    }
    Ok(())
}

/// `Σ_{n<terms} rⁿ e^{−i(η+n)θ}`, the damped trace at `h(θ)`.
pub fn abel_trace(eta: RepLabel, theta: f64, r: f64, terms: usize) -> Result<Complex64> {
    check_damping(r)?;
    check_elliptic_angle(theta)?;
    let step = Complex64::from_polar(r, -theta);
    let mut term = Complex64::from_polar(1.0, -eta.value() * theta);
    let mut acc = Complex64::new(0.0, 0.0);
    for _ in 0..terms {
        acc += term;
        term *= step;
    }
    Ok(acc)
}

/// `e^{−iηθ} / (1 − r e^{−iθ})`, the infinite damped trace.
pub fn abel_trace_closed_form(eta: RepLabel, theta: f64, r: f64) -> Result<Complex64> {
    check_damping(r)?;
    check_elliptic_angle(theta)?;
    Ok(Complex64::from_polar(1.0, -eta.value() * theta) / (1.0 - Complex64::from_polar(r, -theta)))
}

/// `e^{−iηθ} / (1 − e^{−iθ})`, the Abel limit `r → 1⁻`.
pub fn abel_limit(eta: RepLabel, theta: f64) -> Result<Complex64> {
    check_elliptic_angle(theta)?;
    Ok(Complex64::from_polar(1.0, -eta.value() * theta) / (1.0 - Complex64::from_polar(1.0, -theta)))
}

/// Residuals of a damped sum against its limit over a sweep of `r`.
#[derive(Debug, Clone, PartialEq)]
pub struct DampingSweep {
    pub dampings: Vec<f64>,
    pub residuals: Vec<f64>,
    /// Least-squares `C` in `residual ≈ C (1 − r)`.
    pub slope: f64,
    /// Log-log slope of residual against `1 − r`; 1 for a linear trend.
    pub order: f64,
}

impl DampingSweep {
    pub fn new(dampings: &[f64], residuals: Vec<f64>) -> Self {
        assert_eq!(dampings.len(), residuals.len());
        let h: Vec<f64> = dampings.iter().map(|r| 1.0 - r).collect();
        let slope = h.iter().zip(&residuals).map(|(h, e)| h * e).sum::<f64>()
            / h.iter().map(|h| h * h).sum::<f64>();
        let lx: Vec<f64> = h.iter().map(|v| v.ln()).collect();
        let ly: Vec<f64> = residuals.iter().map(|v| v.ln()).collect();
        let n = lx.len() as f64;
        let (mx, my) = (lx.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
        let cov: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
        let var: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
        Self {
            dampings: dampings.to_vec(),
            residuals,
            slope,
            order: cov / var,
        }
    }

    /// Positive finite slope with a log-log order within `order_tol` of 1.
    pub fn is_linear(&self, order_tol: f64) -> bool {
        self.slope.is_finite() && self.slope > 0.0 && (self.order - 1.0).abs() <= order_tol
    }
}

/// Damping values of the standard sweep.
pub const SWEEP_DAMPINGS: [f64; 3] = [0.9, 0.99, 0.999];

/// Abel residual `|abel_trace(r) − χ^η(h(θ))|` over [`SWEEP_DAMPINGS`], with
/// enough terms that `rⁿ` falls below 1e-17.
pub fn abel_trace_sweep(eta: RepLabel, theta: f64) -> Result<DampingSweep> {
    let target = character_compact(eta, theta)?;
    let residuals = SWEEP_DAMPINGS
        .iter()
        .map(|&r| abel_trace(eta, theta, r, terms_for_damping(r, 1e-17)).map(|v| (v - target).norm()))
        .collect::<Result<Vec<_>>>()?;
    Ok(DampingSweep::new(&SWEEP_DAMPINGS, residuals))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::CartanCoords;

    fn label(twice: i64) -> RepLabel {
        RepLabel::from_twice(twice).unwrap()
    }

    #[test]
    fn elliptic_example_eta_one() {
        let v = character(label(2), &GroupElement::compact(PI)).unwrap();
        assert_eq!(v.regime, Regime::EllipticAbel);
        assert!((v.value - Complex64::new(-0.5, 0.0)).norm() < 1e-15);
        assert!((character_compact(label(2), PI).unwrap() - Complex64::new(-0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn compact_example_eta_three_halves() {
        let v = character_compact(label(3), PI).unwrap();
        assert!((v - Complex64::new(0.0, 0.5)).norm() < 1e-15);
    }

    #[test]
    fn hyperbolic_example() {
        let t: f64 = 1.0;
        let g = GroupElement::boost(2.0 * t);
        let v = character(label(2), &g).unwrap();
        assert_eq!(v.regime, Regime::HyperbolicAbsConvergent);
        let want = 0.5 / t.sinh() / t.exp();
        assert!((v.value - Complex64::new(want, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn boundary_and_unsupported_classes() {
        assert_eq!(character(label(2), &GroupElement::identity()).unwrap_err().name(), "BoundaryConjugacyClass");
        assert_eq!(classify(&GroupElement::identity()), Regime::Boundary);
        let minus = GroupElement::compact(2.0 * PI).multiply(&GroupElement::boost(1.0));
        assert!(minus.alpha().re < -1.0);
        assert_eq!(character(label(2), &minus).unwrap_err().name(), "UnsupportedClass");
    }

    #[test]
    fn cartan_boundary() {
        let x = 0.3f64;
        let phi = x.acos();
        assert_eq!(character_cartan(label(2), x, phi, 0.0).unwrap_err().name(), "BoundaryConjugacyClass");
    }

    #[test]
    fn cartan_form_agrees_with_closed_form() {
        let samples = [(0.8, 0.3, 0.2), (1.5, 2.0, 1.0), (0.2, 5.0, -1.0), (2.5, 0.1, 0.0), (0.6, 3.0, 0.5)];
        for &(tau, phi, psi) in &samples {
            let c = CartanCoords::new(tau, phi, psi).unwrap();
            let g = GroupElement::from_cartan(&c);
            for twice in 2..8 {
                match (character(label(twice), &g), character_cartan(label(twice), c.x(), c.phi(), c.psi())) {
                    (Ok(a), Ok(b)) => {
                        assert_eq!(a.regime, b.regime);
                        assert!((a.value - b.value).norm() < 1e-11 * (1.0 + a.value.norm()));
                    }
                    (Err(a), Err(b)) => assert_eq!(a.name(), b.name()),
                    (a, b) => panic!("forms disagree: {a:?} vs {b:?}"),
                }
            }
        }
    }

    #[test]
    fn cartan_form_reduces_to_compact() {
        for &theta in &[0.5, 1.0, 2.5, PI, 5.0] {
            for twice in 2..6 {
                let a = character_cartan(label(twice), 1.0, theta, 0.0).unwrap().value;
                let b = character_compact(label(twice), theta).unwrap();
                assert!((a - b).norm() < 1e-12 * b.norm());
            }
        }
    }

    #[test]
    fn compact_angle_domain() {
        assert_eq!(character_compact(label(2), 0.0).unwrap_err().name(), "SingularAngle");
        assert_eq!(character_compact(label(2), 1e-13).unwrap_err().name(), "SingularAngle");
        assert_eq!(character_compact(label(2), 2.0 * PI).unwrap_err().name(), "SingularAngle");
        assert_eq!(character_compact(label(2), 3.0 * PI).unwrap_err().name(), "UnsupportedAngle");
        assert!(character_compact(label(2), PI + 4.0 * PI).is_ok());
    }

    #[test]
    fn partial_sum_on_compact_subgroup() {
        let (theta, n) = (1.3, 25);
        for twice in [2, 3, 5] {
            let eta = label(twice);
            let got = trace_partial_sum(eta, &GroupElement::compact(theta), n);
            let q = Complex64::from_polar(1.0, -theta);
            let want = Complex64::from_polar(1.0, -eta.value() * theta) * (1.0 - q.powi(n as i32)) / (1.0 - q);
            assert!((got - want).norm() < 1e-12);
        }
        assert_eq!(trace_partial_sum(label(2), &GroupElement::boost(1.0), 0), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn abel_trace_geometric_closed_form() {
        for twice in [2, 3, 4] {
            let eta = label(twice);
            let theta = 2.1;
            let got = abel_trace(eta, theta, 0.5, 200).unwrap();
            let want = Complex64::from_polar(1.0, -eta.value() * theta) / (1.0 - Complex64::from_polar(0.5, -theta));
            assert!((got - want).norm() < 1e-12);
            assert!((abel_trace_closed_form(eta, theta, 0.5).unwrap() - want).norm() < 1e-15);
        }
    }

    #[test]
    fn abel_limit_is_compact_character() {
        for i in 1..50 {
            let theta = 2.0 * PI * i as f64 / 50.0;
            for twice in 2..7 {
                let a = abel_limit(label(twice), theta).unwrap();
                let b = character_compact(label(twice), theta).unwrap();
                assert!((a - b).norm() < 1e-13 * (1.0 + b.norm()));
            }
        }
    }

    #[test]
    fn abel_sweep_is_linear() {
        for &theta in &[0.5, 1.0, PI, 2.0 * PI - 0.5] {
            let sweep = abel_trace_sweep(label(2), theta).unwrap();
            assert!(sweep.is_linear(0.05), "{sweep:?}");
        }
        let s = abel_trace_sweep(label(2), PI).unwrap();
        assert!((character_compact(label(2), PI).unwrap() - abel_trace(label(2), PI, 0.999, 60_000).unwrap()).norm() <= s.residuals[2] + 1e-12);
    }

    #[test]
    fn damping_validation() {
        assert_eq!(abel_trace(label(2), 1.0, 1.0, 10).unwrap_err().name(), "InvalidDamping");
        assert_eq!(abel_trace(label(2), 1.0, 0.0, 10).unwrap_err().name(), "InvalidDamping");
        assert_eq!(abel_trace(label(2), 0.0, 0.5, 10).unwrap_err().name(), "SingularAngle");
        assert!(abel_damped_trace(label(2), &GroupElement::boost(1.0), 1.5, 10).is_err());
    }

    #[test]
    fn conjugation_invariance() {
        let g = GroupElement::from_cartan(&CartanCoords::new(1.2, 0.4, 0.3).unwrap());
        let h = GroupElement::from_cartan(&CartanCoords::new(0.7, 2.0, -1.0).unwrap());
        let conj = h.multiply(&g).multiply(&h.inverse());
        assert!((conj.alpha().re - g.alpha().re).abs() < 1e-12);
        let a = character(label(3), &g).unwrap().value;
        let b = character(label(3), &conj).unwrap().value;
        assert!((a - b).norm() < 1e-10);
    }
}
