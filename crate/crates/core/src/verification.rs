//! The acceptance checks, grouped into suites.
//!
//! Every check is deterministic for a fixed [`VerifyConfig`]: random samples
//! come from seeded ChaCha8 streams and the checks run in parallel but are
//! reported in a fixed order.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::characters::{
    abel_damped_trace, abel_limit, abel_trace, character, character_compact, terms_for_damping, trace_partial_sum,
    DampingSweep, SWEEP_DAMPINGS,
};
use crate::group::{CartanCoords, GroupElement, RepLabel};
use crate::orthogonality::{angular_selection, monte_carlo_haar_check, orthogonality_integral, OrthoRequest};
use crate::rep_matrix::{homomorphism_defect, matrix_element, matrix_element_cartan, truncated_operator, unitarity_defect};
use crate::special::{exact_order, gauss_jacobi, gr_7391, jacobi_p, JacobiParams};
use crate::tensor_product::{certify, decompose, multiplicity};

pub mod tolerances {
    pub const ORTHO_DIAGONAL: f64 = 1e-10;
    pub const ORTHO_VANISHING: f64 = 1e-12;
    pub const MC_SIGMAS: f64 = 3.0;
    pub const CROSS_FORM: f64 = 1e-11;
    pub const UNITARITY: f64 = 1e-8;
    pub const HOMOMORPHISM: f64 = 1e-8;
    pub const HYPERBOLIC_TRACE: f64 = 1e-9;
    /// Residual at `r = 0.999` relative to `|χ|`.
    pub const ABEL_RESIDUAL_REL: f64 = 1e-2;
    pub const ABEL_LIMIT: f64 = 1e-13;
    pub const EXPANSION_IDENTITY: f64 = 1e-13;
    pub const GR_7391_REL: f64 = 1e-12;
    pub const MOMENT_REL: f64 = 1e-13;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Ortho,
    Unitary,
    Character,
    Tensor,
    All,
}

impl Suite {
    pub fn as_str(&self) -> &'static str {
        match self {
            Suite::Ortho => "ortho",
            Suite::Unitary => "unitary",
            Suite::Character => "character",
            Suite::Tensor => "tensor",
            Suite::All => "all",
        }
    }

    fn contains(&self, other: Suite) -> bool {
        *self == Suite::All || *self == other
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "ortho" => Ok(Suite::Ortho),
            "unitary" => Ok(Suite::Unitary),
            "character" => Ok(Suite::Character),
            "tensor" => Ok(Suite::Tensor),
            "all" => Ok(Suite::All),
            _ => Err(format!("unknown suite '{s}' (expected ortho, unitary, character, tensor or all)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Monte Carlo samples per spot case.
    pub samples: usize,
    pub size: usize,
    pub k: usize,
    /// Largest index in the orthogonality sweeps.
    pub max_index: usize,
    /// Replaces the primary tolerance of every check when set.
    pub tol: Option<f64>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            samples: 1_000_000,
            size: 60,
            k: 10,
            max_index: 8,
            tol: None,
        }
    }
}

impl VerifyConfig {
    fn tol(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckRecord {
    pub id: &'static str,
    pub suite: Suite,
    pub name: &'static str,
    /// Worst observed value of the primary metric.
    pub metric: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Secondary metrics.
    pub detail: String,
}

type CheckFn = fn(&VerifyConfig) -> CheckRecord;

/// `(id, suite, check)` in reporting order.
pub const CHECKS: [(&str, Suite, CheckFn); 10] = [
    ("1", Suite::Ortho, check_ortho_diagonal),
    ("2", Suite::Ortho, check_ortho_vanishing),
    ("3", Suite::Unitary, check_cross_form),
    ("4", Suite::Unitary, check_unitarity_homomorphism),
    ("5", Suite::Character, check_hyperbolic_partial_sum),
    ("5b", Suite::Character, check_hyperbolic_abel),
    ("6", Suite::Character, check_elliptic_abel),
    ("7", Suite::Character, check_expansion_identity),
    ("8", Suite::Tensor, check_tensor_spectrum),
    ("9", Suite::Ortho, check_quadrature_kernel),
];

/// Runs the checks of `suite` in parallel and returns them in reporting order.
pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Vec<CheckRecord> {
    CHECKS
        .par_iter()
        .filter(|(_, s, _)| suite.contains(*s))
        .map(|(_, _, check)| check(cfg))
        .collect()
}

pub fn run_check(id: &str, cfg: &VerifyConfig) -> Option<CheckRecord> {
    CHECKS.iter().find(|(i, _, _)| *i == id).map(|(_, _, check)| check(cfg))
}

const ETA_SET: [i64; 5] = [2, 3, 4, 5, 6];

fn label(twice: i64) -> RepLabel {
    RepLabel::from_twice(twice).expect("valid label")
}

fn rng(cfg: &VerifyConfig, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(cfg.seed);
    r.set_stream(stream);
    r
}

fn random_coords(rng: &mut ChaCha8Rng, tau_max: f64) -> CartanCoords {
    let tau = tau_max * rng.random::<f64>();
    let phi = 2.0 * PI * rng.random::<f64>();
    let psi = 4.0 * PI * rng.random::<f64>() - 2.0 * PI;
    CartanCoords::new(tau, phi, psi).expect("in range")
}

fn index_quads(max: usize) -> impl Iterator<Item = (usize, usize, usize, usize)> {
    let r = max + 1;
    (0..r.pow(4)).map(move |i| (i % r, (i / r) % r, (i / r / r) % r, i / r / r / r))
}

pub fn check_ortho_diagonal(cfg: &VerifyConfig) -> CheckRecord {
    let tol = cfg.tol(tolerances::ORTHO_DIAGONAL);
    let mut worst: f64 = 0.0;
    for &t in &ETA_SET {
        for m in 0..=cfg.max_index {
            for mp in 0..=cfg.max_index {
                let r = orthogonality_integral(&OrthoRequest::new(label(t), label(t), m, mp, m, mp));
                worst = worst.max((r.value - r.expected).abs());
            }
        }
    }
    CheckRecord {
        id: "1",
        suite: Suite::Ortho,
        name: "orthogonality diagonal equals formal dimension",
        metric: worst,
        tolerance: tol,
        passed: worst <= tol,
        detail: format!("max |I - 2/(2eta-1)| over eta in {{1,3/2,2,5/2,3}}, m,m' <= {}", cfg.max_index),
    }
}

/// Cross-η combinations that fail angular selection, checked by Monte Carlo.
pub const MC_SPOT_CASES: [(i64, i64, usize, usize, usize, usize); 5] = [
    (4, 2, 0, 0, 0, 0),
    (3, 2, 0, 0, 0, 0),
    (5, 4, 1, 0, 1, 0),
    (6, 2, 0, 1, 2, 2),
    (4, 3, 2, 2, 1, 3),
];

pub fn check_ortho_vanishing(cfg: &VerifyConfig) -> CheckRecord {
    let tol = cfg.tol(tolerances::ORTHO_VANISHING);
    let mut worst: f64 = 0.0;
    let (mut selected, mut nonzero_unselected) = (0usize, 0usize);
    for &t1 in &ETA_SET {
        for &t2 in ETA_SET.iter().filter(|&&t2| t2 != t1) {
            for (m, mp, n, np) in index_quads(cfg.max_index) {
                let req = OrthoRequest::new(label(t1), label(t2), m, mp, n, np);
                let r = orthogonality_integral(&req);
                if r.angular_selected {
                    selected += 1;
                    worst = worst.max(r.value.abs());
                } else if r.value != 0.0 {
                    nonzero_unselected += 1;
                }
            }
        }
    }

    let mut worst_sigma: f64 = 0.0;
    let mut mc_ok = true;
    for &(t1, t2, m, mp, n, np) in &MC_SPOT_CASES {
        let req = OrthoRequest::new(label(t1), label(t2), m, mp, n, np);
        debug_assert!(!angular_selection(&req));
        match monte_carlo_haar_check(&req, cfg.samples, cfg.seed) {
            Ok(e) => {
                let z = e.value.abs() / e.std_error;
                worst_sigma = worst_sigma.max(z);
                mc_ok &= e.value.abs() <= tolerances::MC_SIGMAS * e.std_error;
            }
            Err(_) => mc_ok = false,
        }
    }

    CheckRecord {
        id: "2",
        suite: Suite::Ortho,
        name: "orthogonality vanishes across eta",
        metric: worst,
        tolerance: tol,
        passed: worst <= tol && nonzero_unselected == 0 && mc_ok,
        detail: format!(
            "{selected} selected combos; unselected nonzero = {nonzero_unselected}; monte carlo worst |mean|/sigma = {worst_sigma:.3} (limit {:.0}) at {} samples",
            tolerances::MC_SIGMAS,
            cfg.samples
        ),
    }
}

pub fn check_cross_form(cfg: &VerifyConfig) -> CheckRecord {
    let tol = cfg.tol(tolerances::CROSS_FORM);
    let mut rng = rng(cfg, 3);
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let eta = label(rng.random_range(2..=8));
        let n = rng.random_range(0..=12);
        let np = rng.random_range(0..=12);
        let c = random_coords(&mut rng, 4.0);
        let a = matrix_element(eta, n, np, &GroupElement::from_cartan(&c));
        let b = matrix_element_cartan(eta, n, np, &c);
        worst = worst.max((a - b).norm() / (1.0 + a.norm()));
    }
    CheckRecord {
        id: "3",
        suite: Suite::Unitary,
        name: "matrix element algebraic and Cartan forms agree",
        metric: worst,
        tolerance: tol,
        passed: worst <= tol,
        detail: "10000 samples, eta <= 4, indices <= 12, tau <= 4; metric |a-b|/(1+|a|)".into(),
    }
}

pub fn check_unitarity_homomorphism(cfg: &VerifyConfig) -> CheckRecord {
    let tol = cfg.tol(tolerances::UNITARITY);
    let hom_tol = cfg.tol(tolerances::HOMOMORPHISM);
    let mut rng = rng(cfg, 4);
    let (mut unit, mut hom): (f64, f64) = (0.0, 0.0);
    for t in [2, 3, 4] {
        let eta = label(t);
        for _ in 0..100 {
            let g = GroupElement::from_cartan(&random_coords(&mut rng, 1.0));
            unit = unit.max(unitarity_defect(&truncated_operator(eta, &g, cfg.size), cfg.k));
            let g1 = GroupElement::from_cartan(&random_coords(&mut rng, 1.0));
            let g2 = GroupElement::from_cartan(&random_coords(&mut rng, 1.0));
            hom = hom.max(homomorphism_defect(eta, &g1, &g2, cfg.size, cfg.k));
        }
    }
    CheckRecord {
        id: "4",
        suite: Suite::Unitary,
        name: "truncated unitarity and homomorphism",
        metric: unit.max(hom),
        tolerance: tol,
        passed: unit <= tol && hom <= hom_tol,
        detail: format!("unitarity {unit:.3e}, homomorphism {hom:.3e}; size {}, k {}, tau <= 1", cfg.size, cfg.k),
    }
}

const HYPERBOLIC_HALF_TAUS: [f64; 3] = [0.5, 1.0, 2.0];

pub fn check_hyperbolic_partial_sum(cfg: &VerifyConfig) -> CheckRecord {
    let tol = cfg.tol(tolerances::HYPERBOLIC_TRACE);
    let mut worst: f64 = 0.0;
    for &t in &HYPERBOLIC_HALF_TAUS {
        // Re α = cosh t
        let g = GroupElement::boost(2.0 * t);
        for te in [2, 3, 4] {
            let eta = label(te);
            let want = character(eta, &g).expect("hyperbolic").value;
            worst = worst.max((trace_partial_sum(eta, &g, 60) - want).norm());
        }
    }
    CheckRecord {
        id: "5",
        suite: Suite::Character,
        name: "hyperbolic trace partial sum (60 terms) equals closed form",
        metric: worst,
        tolerance: tol,
        passed: worst <= tol,
        detail: "Re alpha in {cosh 0.5, cosh 1, cosh 2}, eta in {1,3/2,2}; the diagonal entries decay like n^(-1/2)".into(),
    }
}

fn sweep_ok(sweep: &DampingSweep, scale: f64) -> (bool, f64) {
    let rel = sweep.residuals[SWEEP_DAMPINGS.len() - 1] / scale;
    (sweep.slope.is_finite() && sweep.slope > 0.0, rel)
}

pub fn check_hyperbolic_abel(cfg: &VerifyConfig) -> CheckRecord {
    let tol = cfg.tol(tolerances::ABEL_RESIDUAL_REL);
    let (mut worst, mut worst_order_dev): (f64, f64) = (0.0, 0.0);
    let mut ok = true;
    for &t in &HYPERBOLIC_HALF_TAUS {
        let g = GroupElement::boost(2.0 * t);
        for te in [2, 3, 4] {
            let eta = label(te);
            let want = character(eta, &g).expect("hyperbolic").value;
            let residuals: Vec<f64> = SWEEP_DAMPINGS
                .iter()
                .map(|&r| {
                    let v = abel_damped_trace(eta, &g, r, terms_for_damping(r, 1e-17)).expect("valid damping");
                    (v - want).norm()
                })
                .collect();
            let sweep = DampingSweep::new(&SWEEP_DAMPINGS, residuals);
            let (slope_ok, rel) = sweep_ok(&sweep, want.norm());
            ok &= slope_ok;
            worst = worst.max(rel);
            worst_order_dev = worst_order_dev.max((sweep.order - 1.0).abs());
        }
    }
    CheckRecord {
        id: "5b",
        suite: Suite::Character,
        name: "hyperbolic Abel-damped trace tends linearly to closed form",
        metric: worst,
        tolerance: tol,
        passed: ok && worst <= tol,
        detail: format!("residual at r=0.999 relative to |chi|; max |log-log order - 1| = {worst_order_dev:.3e}"),
    }
}

const ELLIPTIC_THETAS: [f64; 4] = [0.5, 1.0, PI, 2.0 * PI - 0.5];

pub fn check_elliptic_abel(cfg: &VerifyConfig) -> CheckRecord {
    let tol = cfg.tol(tolerances::ABEL_RESIDUAL_REL);
    let (mut worst, mut limit_err, mut worst_order_dev): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let mut slopes_ok = true;
    for &theta in &ELLIPTIC_THETAS {
        for te in [2, 3, 4] {
            let eta = label(te);
            let chi = character_compact(eta, theta).expect("regular angle");
            let residuals: Vec<f64> = SWEEP_DAMPINGS
                .iter()
                .map(|&r| (abel_trace(eta, theta, r, terms_for_damping(r, 1e-17)).expect("valid") - chi).norm())
                .collect();
            let sweep = DampingSweep::new(&SWEEP_DAMPINGS, residuals);
            let (slope_ok, rel) = sweep_ok(&sweep, chi.norm());
            slopes_ok &= slope_ok;
            worst = worst.max(rel);
            worst_order_dev = worst_order_dev.max((sweep.order - 1.0).abs());
            limit_err = limit_err.max((abel_limit(eta, theta).expect("regular") - chi).norm());
        }
    }
    CheckRecord {
        id: "6",
        suite: Suite::Character,
        name: "elliptic Abel trace tends linearly to compact character",
        metric: worst,
        tolerance: tol,
        passed: slopes_ok && worst <= tol && limit_err <= tolerances::ABEL_LIMIT,
        detail: format!(
            "residual at r=0.999 relative to |chi|; closed-form limit error {limit_err:.3e} (limit {:.0e}); max |log-log order - 1| = {worst_order_dev:.3e}",
            tolerances::ABEL_LIMIT
        ),
    }
}

pub fn check_expansion_identity(cfg: &VerifyConfig) -> CheckRecord {
    let tol = cfg.tol(tolerances::EXPANSION_IDENTITY);
    let worst = (0..100)
        .map(|i| {
            let theta = 0.1 + (2.0 * PI - 0.2) * (i as f64 + 0.5) / 100.0;
            crate::tensor_product::verify_expansion_identity(theta).expect("regular angle")
        })
        .fold(0.0, f64::max);
    CheckRecord {
        id: "7",
        suite: Suite::Character,
        name: "geometric expansion of 1/sin(theta/2) at the Abel level",
        metric: worst,
        tolerance: tol,
        passed: worst <= tol,
        detail: "100-point grid in (0.1, 2pi-0.1)".into(),
    }
}

const CERTIFY_TUPLES: [(i64, i64, f64); 5] = [(2, 2, 1.0), (2, 3, 0.5), (3, 4, PI), (4, 5, 2.0 * PI - 0.5), (8, 7, 2.5)];

pub fn check_tensor_spectrum(cfg: &VerifyConfig) -> CheckRecord {
    let tol = cfg.tol(tolerances::ABEL_RESIDUAL_REL);
    let mut mismatches = 0usize;
    for t1 in 2..=8 {
        for t2 in 2..=8 {
            let (e1, e2) = (label(t1), label(t2));
            let d = decompose(e1, e2, 20);
            for t3 in 2..=(t1 + t2 + 40) {
                let e3 = label(t3);
                let diff = e3.eta() - e1.eta() - e2.eta();
                let want = u32::from(diff.is_integer() && diff.twice() >= 0);
                let listed = d.terms.iter().filter(|t| t.eta3 == e3).map(|t| t.multiplicity).sum::<u32>();
                if multiplicity(e1, e2, e3) != want || listed != want {
                    mismatches += 1;
                }
            }
        }
    }

    let (mut worst, mut limit_err): (f64, f64) = (0.0, 0.0);
    let mut slopes_ok = true;
    for &(t1, t2, theta) in &CERTIFY_TUPLES {
        match certify(label(t1), label(t2), theta) {
            Ok(c) => {
                let (slope_ok, rel) = sweep_ok(&c.sweep, c.product.norm());
                slopes_ok &= slope_ok;
                worst = worst.max(rel);
                limit_err = limit_err.max(c.limit_error / c.product.norm());
            }
            Err(_) => slopes_ok = false,
        }
    }
    CheckRecord {
        id: "8",
        suite: Suite::Tensor,
        name: "tensor product spectrum and character certification",
        metric: worst,
        tolerance: tol,
        passed: mismatches == 0 && slopes_ok && worst <= tol && limit_err <= tolerances::ABEL_LIMIT,
        detail: format!(
            "spectrum mismatches {mismatches}; residual at r=0.999 relative to |product|; relative limit error {limit_err:.3e}"
        ),
    }
}

/// `(order, a, b)` triples for the moment test.
const MOMENT_TRIPLES: [(usize, f64, f64); 20] = [
    (1, 0.0, 0.0),
    (2, 0.0, 0.0),
    (5, 1.0, 0.0),
    (8, 0.0, 3.0),
    (3, 2.0, 2.0),
    (10, 5.0, 1.0),
    (12, 6.0, 8.0),
    (15, 3.0, 7.0),
    (20, 1.0, 1.0),
    (4, 4.0, 0.0),
    (6, 2.0, 5.0),
    (7, 6.0, 6.0),
    (9, 0.0, 8.0),
    (11, 5.0, 5.0),
    (13, 3.0, 1.0),
    (16, 2.0, 4.0),
    (18, 6.0, 2.0),
    (25, 1.0, 7.0),
    (30, 4.0, 3.0),
    (40, 0.0, 1.0),
];

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

pub fn check_quadrature_kernel(cfg: &VerifyConfig) -> CheckRecord {
    let tol = cfg.tol(tolerances::GR_7391_REL);
    let mut worst: f64 = 0.0;
    for a in 0..=6u32 {
        for b in 1..=8u32 {
            let (af, bf) = (f64::from(a), f64::from(b));
            for m in 0..=10usize {
                let rule = gauss_jacobi(exact_order(2 * m), af, bf - 1.0).expect("valid exponents");
                let p = JacobiParams::new(af, bf, m).expect("valid exponents");
                let lhs = rule.integrate(|x| jacobi_p(&p, x).powi(2));
                let rhs = gr_7391(af, bf, m).expect("valid exponents");
                worst = worst.max((lhs - rhs).abs() / rhs);
            }
        }
    }

    let mut moment: f64 = 0.0;
    for &(order, a, b) in &MOMENT_TRIPLES {
        let rule = gauss_jacobi(order, a, b).expect("valid");
        // 2^{a+b+1} a! b! / (a+b+1)!
        let (ai, bi) = (a as u32, b as u32);
        let want = 2f64.powi((ai + bi + 1) as i32) * factorial(ai) * factorial(bi) / factorial(ai + bi + 1);
        let got: f64 = rule.weights().iter().sum();
        moment = moment.max((got - want).abs() / want);
    }
    CheckRecord {
        id: "9",
        suite: Suite::Ortho,
        name: "Gauss-Jacobi kernel against closed forms",
        metric: worst,
        tolerance: tol,
        passed: worst <= tol && moment <= tolerances::MOMENT_REL,
        detail: format!("a <= 6, b <= 8, m <= 10; moment test max rel error {moment:.3e} (limit {:.0e})", tolerances::MOMENT_REL),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_parsing() {
        for s in ["ortho", "unitary", "character", "tensor", "all"] {
            assert_eq!(s.parse::<Suite>().unwrap().as_str(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn suite_membership() {
        let ids = |s: Suite| CHECKS.iter().filter(|c| s.contains(c.1)).map(|c| c.0).collect::<Vec<_>>();
        assert_eq!(ids(Suite::Ortho), vec!["1", "2", "9"]);
        assert_eq!(ids(Suite::Unitary), vec!["3", "4"]);
        assert_eq!(ids(Suite::Character), vec!["5", "5b", "6", "7"]);
        assert_eq!(ids(Suite::Tensor), vec!["8"]);
        assert_eq!(ids(Suite::All).len(), CHECKS.len());
    }

    #[test]
    fn index_quads_cover_grid() {
        let v: Vec<_> = index_quads(2).collect();
        assert_eq!(v.len(), 81);
        assert!(v.contains(&(2, 0, 1, 2)));
    }

    #[test]
    fn cheap_checks_pass() {
        let cfg = VerifyConfig::default();
        for id in ["1", "6", "7", "9"] {
            let r = run_check(id, &cfg).unwrap();
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn tolerance_override() {
        let cfg = VerifyConfig { tol: Some(0.0), ..VerifyConfig::default() };
        let r = check_expansion_identity(&cfg);
        assert_eq!(r.tolerance, 0.0);
        assert!(!r.passed);
    }
}
