//! Decomposition of `U^{η₁} ⊗ U^{η₂}` from characters on the compact
//! subgroup.
//!
//! On `h(θ)` the product of characters is
//! `−e^{i(1−η₁−η₂)θ} / (4 sin²(θ/2))`; expanding one factor `1/sin(θ/2)` as
//! `2i e^{−iθ/2} Σ e^{−inθ}` rewrites it as `Σ_{n≥0} χ^{η₁+η₂+n}(h(θ))`, so
//! every `η₃ = η₁+η₂+n` occurs exactly once. The series has terms of constant
//! modulus and is only summable in the Abel sense; it is certified here with
//! damping `rⁿ` and the closed-form limit.

use num_complex::Complex64;

use crate::characters::{check_compact_angle, check_damping, compact_formula, terms_for_damping, DampingSweep, SWEEP_DAMPINGS};
use crate::error::Result;
use crate::group::RepLabel;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecompositionTerm {
    pub eta3: RepLabel,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub eta1: RepLabel,
    pub eta2: RepLabel,
    /// Ascending in `η₃`, starting at `η₁ + η₂`.
    pub terms: Vec<DecompositionTerm>,
    /// Largest `n` included.
    pub truncation: usize,
}

fn lowest(eta1: RepLabel, eta2: RepLabel) -> i64 {
    eta1.two_eta() + eta2.two_eta()
}

pub fn decompose(eta1: RepLabel, eta2: RepLabel, n_max: usize) -> Decomposition {
    let base = lowest(eta1, eta2);
    let terms = (0..=n_max as i64)
        .map(|n| DecompositionTerm {
            eta3: RepLabel::from_twice(base + 2 * n).expect("η₁+η₂+n ≥ 2"),
            multiplicity: 1,
        })
        .collect();
    Decomposition { eta1, eta2, terms, truncation: n_max }
}

/// 1 if `η₃ − η₁ − η₂` is a non-negative integer, else 0.
pub fn multiplicity(eta1: RepLabel, eta2: RepLabel, eta3: RepLabel) -> u32 {
    let d = eta3.two_eta() - lowest(eta1, eta2);
    u32::from(d >= 0 && d % 2 == 0)
}

/// `χ^{η₁}(h(θ)) χ^{η₂}(h(θ)) = −e^{i(1−η₁−η₂)θ} / (4 sin²(θ/2))`.
pub fn character_product(eta1: RepLabel, eta2: RepLabel, theta: f64) -> Result<Complex64> {
    let t = check_compact_angle(theta)?;
    let phase = Complex64::from_polar(1.0, (2 - lowest(eta1, eta2)) as f64 * 0.5 * t);
    Ok(-phase / (4.0 * (0.5 * t).sin().powi(2)))
}

/// `Σ_{n=0}^{n_max} rⁿ χ^{η₁+η₂+n}(h(θ))`. Consecutive terms differ by the
/// factor `r e^{−iθ}`.
pub fn abel_character_sum(eta1: RepLabel, eta2: RepLabel, theta: f64, r: f64, n_max: usize) -> Result<Complex64> {
    check_damping(r)?;
    let t = check_compact_angle(theta)?;
    let step = Complex64::from_polar(r, -t);
    let mut term = compact_formula(lowest(eta1, eta2), t);
    let mut acc = Complex64::new(0.0, 0.0);
    for _ in 0..=n_max {
        acc += term;
        term *= step;
    }
    Ok(acc)
}

/// The infinite damped sum `χ^{η₁+η₂}(h(θ)) / (1 − r e^{−iθ})`.
pub fn abel_character_sum_closed_form(eta1: RepLabel, eta2: RepLabel, theta: f64, r: f64) -> Result<Complex64> {
    check_damping(r)?;
    let t = check_compact_angle(theta)?;
    Ok(compact_formula(lowest(eta1, eta2), t) / (1.0 - Complex64::from_polar(r, -t)))
}

/// The Abel limit `χ^{η₁+η₂}(h(θ)) / (1 − e^{−iθ})`.
pub fn abel_character_limit(eta1: RepLabel, eta2: RepLabel, theta: f64) -> Result<Complex64> {
    let t = check_compact_angle(theta)?;
    Ok(compact_formula(lowest(eta1, eta2), t) / (1.0 - Complex64::from_polar(1.0, -t)))
}

/// `|1/sin(θ/2) − 2i e^{−iθ/2} / (1 − e^{−iθ})|`.
pub fn verify_expansion_identity(theta: f64) -> Result<f64> {
    let t = check_compact_angle(theta)?;
    let rhs = Complex64::new(0.0, 2.0) * Complex64::from_polar(1.0, -0.5 * t) / (1.0 - Complex64::from_polar(1.0, -t));
    Ok((rhs - 1.0 / (0.5 * t).sin()).norm())
}

/// Evidence that `Σ χ^{η₁+η₂+n}` reproduces the character product.
#[derive(Debug, Clone, PartialEq)]
pub struct Certification {
    /// `|abel_character_sum(r) − character_product|` over the damping sweep.
    pub sweep: DampingSweep,
    /// `|abel_character_limit − character_product|`.
    pub limit_error: f64,
    pub product: Complex64,
}

/// Terms needed for `rⁿ` to fall below 1e-17.
pub fn certification_terms(r: f64) -> usize {
    terms_for_damping(r, 1e-17)
}

pub fn certify(eta1: RepLabel, eta2: RepLabel, theta: f64) -> Result<Certification> {
    let product = character_product(eta1, eta2, theta)?;
    let residuals = SWEEP_DAMPINGS
        .iter()
        .map(|&r| abel_character_sum(eta1, eta2, theta, r, certification_terms(r)).map(|s| (s - product).norm()))
        .collect::<Result<Vec<_>>>()?;
    let limit_error = (abel_character_limit(eta1, eta2, theta)? - product).norm();
    Ok(Certification {
        sweep: DampingSweep::new(&SWEEP_DAMPINGS, residuals),
        limit_error,
        product,
    })
}
