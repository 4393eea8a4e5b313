//! Matrix elements `U^η_{nn'}(g) = ⟨e_n | U^η(g) | e_{n'}⟩` and finite
//! truncations of the operator.
//!
//! With `n_< = min(n, n')`, `n_> = max(n, n')`, `d = n_> − n_<`:
//!
//! ```text
//! U^η_{nn'}(g) = √(n_<! Γ(2η+n_>) / (n_>! Γ(2η+n_<)))
//!                · α^{−2η−n_>} ᾱ^{n_<} γ^d · P_{n_<}^{(d, 2η−1)}(1 − 2|z|²)
//! ```
//!
//! where `z = β/ᾱ` and `γ = −β` when `n_> = n'`, `γ = β̄` when `n_> = n`.
//! Magnitude and phase are assembled separately, the magnitude in log space,
//! so indices in the thousands neither overflow nor underflow prematurely.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::group::{CartanCoords, GroupElement, RepLabel};
use crate::special::{log_poch_ratio, JacobiSequence};

/// An ordered index pair `(n, n')` with its min/max split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IndexPair {
    pub n: usize,
    pub n_prime: usize,
}

impl IndexPair {
    pub fn new(n: usize, n_prime: usize) -> Self {
        Self { n, n_prime }
    }

    pub fn n_less(&self) -> usize {
        self.n.min(self.n_prime)
    }

    pub fn n_greater(&self) -> usize {
        self.n.max(self.n_prime)
    }

    pub fn is_n_prime_greater(&self) -> bool {
        self.n_prime > self.n
    }

    pub fn gap(&self) -> usize {
        self.n_greater() - self.n_less()
    }
}

/// `u^k` for a unit complex number by binary exponentiation; negative `k`
/// uses `ū = u⁻¹`.
fn unit_pow(u: Complex64, k: i64) -> Complex64 {
    let mut base = if k < 0 { u.conj() } else { u };
    let mut e = k.unsigned_abs();
    let mut acc = Complex64::new(1.0, 0.0);
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base *= base;
        e >>= 1;
    }
    acc
}

fn jacobi_nth(a: f64, b: f64, x: f64, degree: usize) -> f64 {
    JacobiSequence::new(a, b, x).nth(degree).expect("sequence is infinite")
}

/// Matrix element from `(α, β)`.
pub fn matrix_element(eta: RepLabel, n: usize, n_prime: usize, g: &GroupElement) -> Complex64 {
    let idx = IndexPair::new(n, n_prime);
    let (lo, hi, d) = (idx.n_less(), idx.n_greater(), idx.gap());
    let two_eta = eta.two_eta();
    let (alpha, beta) = (g.alpha(), g.beta());
    if d > 0 && beta.norm() == 0.0 {
        return Complex64::new(0.0, 0.0);
    }

    let gamma = if idx.is_n_prime_greater() { -beta } else { beta.conj() };
    let abs_alpha = alpha.norm();
    let ln_abs_alpha = abs_alpha.ln();
    let mut log_mag = 0.5 * log_poch_ratio(two_eta, hi as u64, lo as u64)
        - (two_eta as f64 + hi as f64 - lo as f64) * ln_abs_alpha;
    let mut phase = unit_pow(alpha / abs_alpha, -(two_eta + (hi + lo) as i64));
    if d > 0 {
        let abs_gamma = gamma.norm();
        log_mag += d as f64 * abs_gamma.ln();
        phase *= unit_pow(gamma / abs_gamma, d as i64);
    }

    let z2 = beta.norm_sqr() / alpha.norm_sqr();
    let p = jacobi_nth(d as f64, (two_eta - 1) as f64, 1.0 - 2.0 * z2, lo);
    phase * (log_mag.exp() * p)
}

/// Matrix element from `(τ, φ, ψ)`:
///
/// ```text
/// 2^{(n_<−n_>)/2 − η} √(ratio) (1−x)^{d/2} (1+x)^η P_{n_<}^{(d, 2η−1)}(x)
///   · (−1)^{n'−n} [n' > n] · e^{−i(η+n)φ} e^{−i(η+n')ψ}
/// ```
///
/// The angle φ always pairs with the row index and ψ with the column index,
/// in both orderings of `(n, n')`.
pub fn matrix_element_cartan(eta: RepLabel, n: usize, n_prime: usize, c: &CartanCoords) -> Complex64 {
    let idx = IndexPair::new(n, n_prime);
    let (lo, hi, d) = (idx.n_less(), idx.n_greater(), idx.gap());
    let two_eta = eta.two_eta();
    let (one_minus_x, one_plus_x) = c.one_minus_plus_x();
    if d > 0 && one_minus_x == 0.0 {
        return Complex64::new(0.0, 0.0);
    }

    let eta_f = eta.value();
    let mut log_mag = ((lo as f64 - hi as f64) / 2.0 - eta_f) * std::f64::consts::LN_2
        + 0.5 * log_poch_ratio(two_eta, hi as u64, lo as u64)
        + eta_f * one_plus_x.ln();
    if d > 0 {
        log_mag += 0.5 * d as f64 * one_minus_x.ln();
    }
    let p = jacobi_nth(d as f64, (two_eta - 1) as f64, c.x(), lo);
    let sign = if idx.is_n_prime_greater() && d % 2 == 1 { -1.0 } else { 1.0 };

    // (η+n)φ = (2η+2n)·φ/2 with an integer multiplier
    let row = (two_eta + 2 * n as i64) as f64 * (0.5 * c.phi());
    let col = (two_eta + 2 * n_prime as i64) as f64 * (0.5 * c.psi());
    Complex64::from_polar(sign * log_mag.exp() * p, -(row + col))
}

/// The diagonal `U^η_{00}(g), U^η_{11}(g), …`, generated with one Jacobi
/// recurrence: `U_{nn} = α^{−2η} (ᾱ/α)ⁿ P_n^{(0, 2η−1)}(x)`.
pub fn diagonal_elements(eta: RepLabel, g: &GroupElement) -> impl Iterator<Item = Complex64> {
    let alpha = g.alpha();
    let abs_alpha = alpha.norm();
    let unit = alpha / abs_alpha;
    let lead = unit_pow(unit, -eta.two_eta()) * abs_alpha.powi(-(eta.two_eta() as i32));
    let ratio = unit_pow(unit, -2);
    let x = 1.0 - 2.0 * g.beta().norm_sqr() / alpha.norm_sqr();
    let mut phase = lead;
    JacobiSequence::new(0.0, (eta.two_eta() - 1) as f64, x).map(move |p| {
        let v = phase * p;
        phase *= ratio;
        v
    })
}

/// The top-left `size × size` block of `U^η(g)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixBlock {
    eta: RepLabel,
    group_element: GroupElement,
    entries: DMatrix<Complex64>,
}

impl MatrixBlock {
    pub fn eta(&self) -> RepLabel {
        self.eta
    }

    pub fn size(&self) -> usize {
        self.entries.nrows()
    }

    pub fn group_element(&self) -> &GroupElement {
        &self.group_element
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[(i, j)]
    }
}

pub fn truncated_operator(eta: RepLabel, g: &GroupElement, size: usize) -> MatrixBlock {
    assert!(size >= 1, "truncation size must be at least 1");
    MatrixBlock {
        eta,
        group_element: *g,
        entries: operator_window(eta, g, size, size),
    }
}

fn operator_window(eta: RepLabel, g: &GroupElement, rows: usize, cols: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(rows, cols, |i, j| matrix_element(eta, i, j, g))
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().fold(0.0, |acc, v| acc.max(v.norm()))
}

/// Max-norm of `(B†B − I)` on the leading `k × k` corner.
pub fn unitarity_defect(block: &MatrixBlock, k: usize) -> f64 {
    assert!(k <= block.size(), "corner {k} exceeds block size {}", block.size());
    let cols = block.entries.columns(0, k);
    let gram = cols.adjoint() * cols;
    max_abs(&(gram - DMatrix::identity(k, k)))
}

/// Max-norm over the leading `k × k` corner of
/// `U(g₁g₂) − U(g₁)·U(g₂)`, with the inner sum truncated at `size`.
pub fn homomorphism_defect(
    eta: RepLabel,
    g1: &GroupElement,
    g2: &GroupElement,
    size: usize,
    k: usize,
) -> f64 {
    assert!(k <= size, "corner {k} exceeds truncation size {size}");
    let direct = operator_window(eta, &g1.multiply(g2), k, k);
    let left = operator_window(eta, g1, k, size);
    let right = operator_window(eta, g2, size, k);
    max_abs(&(direct - left * right))
}
