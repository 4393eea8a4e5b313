//! Orthogonality of matrix elements over the Haar measure.
//!
//! In Cartan coordinates the φ and ψ integrals are done analytically: they
//! vanish unless `η₁ − η₂ = n − m = n′ − m′`. What remains is a polynomial
//! integral in `x` against the weight `(1−x)^{m′−m}(1+x)^{η₁+η₂−2}`:
//!
//! ```text
//! 2^{2+m−m′−η₁−η₂} [m! n! Γ(2η₁+m′) Γ(2η₂+n′) / (m′! n′! Γ(2η₁+m) Γ(2η₂+n))]^{1/2}
//!   × ∫ (1−x)^{m′−m} (1+x)^{η₁+η₂−2} P_m^{(m′−m, 2η₁−1)}(x) P_n^{(m′−m, 2η₂−1)}(x) dx
//! ```
//!
//! which Gauss–Jacobi quadrature evaluates exactly. The expected value is
//! `d_{η₁} δ_{η₁η₂} δ_{mn} δ_{m′n′}` with formal dimension `d_η = 2/(2η−1)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{haar_density, CartanCoords, GroupElement, RepLabel};
use crate::rep_matrix::matrix_element;
use crate::special::{exact_order, gauss_jacobi, log_poch_ratio, JacobiSequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrthoRequest {
    pub eta1: RepLabel,
    pub eta2: RepLabel,
    pub m: usize,
    pub m_prime: usize,
    pub n: usize,
    pub n_prime: usize,
}

impl OrthoRequest {
    pub fn new(eta1: RepLabel, eta2: RepLabel, m: usize, m_prime: usize, n: usize, n_prime: usize) -> Self {
        Self { eta1, eta2, m, m_prime, n, n_prime }
    }

    /// Both index pairs swapped when `m > m′`. Under angular selection
    /// `m′ − m = n′ − n`, so the pairs are always swapped together and the
    /// two `(−1)^{gap}` signs cancel.
    pub fn canonical(&self) -> Self {
        if self.m > self.m_prime {
            Self {
                m: self.m_prime,
                m_prime: self.m,
                n: self.n_prime,
                n_prime: self.n,
                ..*self
            }
        } else {
            *self
        }
    }

    fn is_diagonal(&self) -> bool {
        self.eta1 == self.eta2 && self.m == self.n && self.m_prime == self.n_prime
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrthoResult {
    pub value: f64,
    pub angular_selected: bool,
    pub expected: f64,
    pub formal_dimension: Ratio<i64>,
}

impl OrthoResult {
    pub fn abs_error(&self) -> f64 {
        (self.value - self.expected).abs()
    }
}

/// `d_η = 2/(2η−1)`.
pub fn formal_dimension(eta: RepLabel) -> Ratio<i64> {
    Ratio::new(2, eta.two_eta() - 1)
}

fn ratio_to_f64(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub fn angular_selection(req: &OrthoRequest) -> bool {
    let diff = req.eta1.two_eta() - req.eta2.two_eta();
    if diff % 2 != 0 {
        return false;
    }
    let s = diff / 2;
    s == req.n as i64 - req.m as i64 && s == req.n_prime as i64 - req.m_prime as i64
}

/// The `x` integral of the reduced form, by Gauss–Jacobi quadrature with
/// weight exponents `(m′−m, η₁+η₂−2)`.
pub fn radial_integral(req: &OrthoRequest) -> Result<f64> {
    radial_integral_with_order(req, exact_order(req.m + req.n))
}

/// [`radial_integral`] with an explicit quadrature order.
pub fn radial_integral_with_order(req: &OrthoRequest, order: usize) -> Result<f64> {
    if !angular_selection(req) {
        return Err(Error::AngularSelectionFailed);
    }
    let r = req.canonical();
    let a = (r.m_prime - r.m) as f64;
    let b = ((r.eta1.two_eta() + r.eta2.two_eta()) / 2 - 2) as f64;
    let rule = gauss_jacobi(order, a, b)?;
    let b1 = (r.eta1.two_eta() - 1) as f64;
    let b2 = (r.eta2.two_eta() - 1) as f64;
    Ok(rule.integrate(|x| {
        let p = JacobiSequence::new(a, b1, x).nth(r.m).unwrap_or_default();
        let q = JacobiSequence::new(a, b2, x).nth(r.n).unwrap_or_default();
        p * q
    }))
}

/// `2^{2+m−m′−η₁−η₂}` times the square-rooted factorial-Gamma ratio.
fn prefactor(r: &OrthoRequest) -> f64 {
    let log2 = (2 + r.m as i64 - r.m_prime as i64) as f64 - 0.5 * (r.eta1.two_eta() + r.eta2.two_eta()) as f64;
    let log_ratio = log_poch_ratio(r.eta1.two_eta(), r.m_prime as u64, r.m as u64)
        + log_poch_ratio(r.eta2.two_eta(), r.n_prime as u64, r.n as u64);
    (log2 * std::f64::consts::LN_2 + 0.5 * log_ratio).exp()
}

/// `∫ dg U^{η₁}_{mm′}(g) conj(U^{η₂}_{nn′}(g))` over the Haar measure.
pub fn orthogonality_integral(req: &OrthoRequest) -> OrthoResult {
    let formal_dimension = formal_dimension(req.eta1);
    let expected = if req.is_diagonal() { ratio_to_f64(formal_dimension) } else { 0.0 };
    let angular_selected = angular_selection(req);
    let value = if angular_selected {
        let r = req.canonical();
        prefactor(&r) * radial_integral(&r).expect("selection checked")
    } else {
        0.0
    };
    OrthoResult { value, angular_selected, expected, formal_dimension }
}

/// Default radial cutoff for the Monte Carlo integral.
pub const MC_TAU_MAX: f64 = 12.0;
/// Number of independent random streams; fixed so results do not depend on
/// the thread count.
pub const MC_STREAMS: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloEstimate {
    /// Real part of the estimate.
    pub value: f64,
    pub imag: f64,
    /// Standard error of `value` from the sample variance.
    pub std_error: f64,
    pub samples: usize,
}

/// Monte Carlo estimate of the full three-dimensional Haar integral, sampling
/// `(τ, φ, ψ)` uniformly on `[0, τ_max) × [0, 2π) × [−2π, 2π)`.
///
/// Stream `i` uses ChaCha8 seeded with `seed` on stream number `i`; the
/// streams run in parallel and are combined in index order, so the result is
/// bit-for-bit reproducible.
pub fn monte_carlo_haar_check(req: &OrthoRequest, samples: usize, seed: u64) -> Result<MonteCarloEstimate> {
    monte_carlo_haar_check_with_cutoff(req, samples, seed, MC_TAU_MAX)
}

pub fn monte_carlo_haar_check_with_cutoff(
    req: &OrthoRequest,
    samples: usize,
    seed: u64,
    tau_max: f64,
) -> Result<MonteCarloEstimate> {
    if samples == 0 {
        return Err(Error::InvalidParams("samples must be at least 1".into()));
    }
    if !(tau_max.is_finite() && tau_max > 0.0) {
        return Err(Error::InvalidParams(format!("tau_max must be positive, got {tau_max}")));
    }
    let volume = tau_max * 2.0 * PI * 4.0 * PI;
    let per = samples / MC_STREAMS as usize;
    let extra = samples % MC_STREAMS as usize;

    let partials: Vec<(Complex64, f64)> = (0..MC_STREAMS)
        .into_par_iter()
        .map(|stream| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(stream);
            let count = per + usize::from((stream as usize) < extra);
            let mut sum = Complex64::new(0.0, 0.0);
            let mut sum_sq = 0.0;
            for _ in 0..count {
                let tau = tau_max * rng.random::<f64>();
                let phi = 2.0 * PI * rng.random::<f64>();
                let psi = 4.0 * PI * rng.random::<f64>() - 2.0 * PI;
                let v = volume * haar_integrand(req, tau, phi, psi);
                sum += v;
                sum_sq += v.re * v.re;
            }
            (sum, sum_sq)
        })
        .collect();

    let (sum, sum_sq) = partials
        .into_iter()
        .fold((Complex64::new(0.0, 0.0), 0.0), |(s, q), (ps, pq)| (s + ps, q + pq));
    let n = samples as f64;
    let mean = sum / n;
    let variance = if samples > 1 { ((sum_sq - n * mean.re * mean.re) / (n - 1.0)).max(0.0) } else { 0.0 };
    Ok(MonteCarloEstimate {
        value: mean.re,
        imag: mean.im,
        std_error: (variance / n).sqrt(),
        samples,
    })
}

fn haar_integrand(req: &OrthoRequest, tau: f64, phi: f64, psi: f64) -> Complex64 {
    let c = CartanCoords::new(tau, phi, psi).expect("sampled coordinates are in range");
    let g = GroupElement::from_cartan(&c);
    let u1 = matrix_element(req.eta1, req.m, req.m_prime, &g);
    let u2 = matrix_element(req.eta2, req.n, req.n_prime, &g);
    u1 * u2.conj() * haar_density(&c)
}
