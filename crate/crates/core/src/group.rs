//! SU(1,1) elements, their Cartan-type coordinates and the Haar density.
//!
//! An element is stored as the pair `(alpha, beta)` of the matrix
//!
//! ```text
//! ⎡ α  β ⎤
//! ⎣ β̄  ᾱ ⎦     |α|² − |β|² = 1
//! ```
//!
//! and factorizes as `h(φ) · a(τ) · h(ψ)` with `h` diagonal in U(1) and `a(τ)`
//! the symmetric boost. The coordinate ranges are `τ ≥ 0`, `φ ∈ [0, 2π)` and
//! `ψ ∈ [−2π, 2π)`, which cover the group exactly once away from `τ = 0`.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default tolerance on `| |α|² − |β|² − 1 |` accepted at construction.
pub const DET_TOL: f64 = 1e-12;

const TWO_PI: f64 = 2.0 * PI;
const FOUR_PI: f64 = 4.0 * PI;

/// An exact element of ℤ/2, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInteger {
    twice: i64,
}

impl HalfInteger {
    pub const fn from_twice(twice: i64) -> Self {
        Self { twice }
    }

    pub const fn from_int(value: i64) -> Self {
        Self { twice: 2 * value }
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    /// The integer value, if there is one.
    pub const fn as_integer(self) -> Option<i64> {
        if self.is_integer() {
            Some(self.twice / 2)
        } else {
            None
        }
    }

    pub fn value(self) -> f64 {
        self.twice as f64 / 2.0
    }
}

impl Add for HalfInteger {
    type Output = HalfInteger;
    fn add(self, rhs: Self) -> Self {
        Self::from_twice(self.twice + rhs.twice)
    }
}

impl Sub for HalfInteger {
    type Output = HalfInteger;
    fn sub(self, rhs: Self) -> Self {
        Self::from_twice(self.twice - rhs.twice)
    }
}

impl Neg for HalfInteger {
    type Output = HalfInteger;
    fn neg(self) -> Self {
        Self::from_twice(-self.twice)
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl FromStr for HalfInteger {
    type Err = Error;

    /// Accepts `"3/2"`, `"1.5"`, `"2"` and rejects anything that is not an
    /// exact half-integer. No rounding takes place.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidLabel(format!("'{s}' is not an exact half-integer"));
        if let Some((num, den)) = s.split_once('/') {
            let num: i64 = num.trim().parse().map_err(|_| bad())?;
            let den: i64 = den.trim().parse().map_err(|_| bad())?;
            return match den {
                1 => Ok(Self::from_int(num)),
                2 => Ok(Self::from_twice(num)),
                -1 => Ok(Self::from_int(-num)),
                -2 => Ok(Self::from_twice(-num)),
                _ => Err(bad()),
            };
        }
        if let Ok(i) = s.parse::<i64>() {
            return Ok(Self::from_int(i));
        }
        let v: f64 = s.parse().map_err(|_| bad())?;
        let doubled = 2.0 * v;
        if !doubled.is_finite() || doubled.fract() != 0.0 || doubled.abs() > 9.0e15 {
            return Err(bad());
        }
        Ok(Self::from_twice(doubled as i64))
    }
}

/// Lowest-weight label η ∈ {1, 3/2, 2, …} of a holomorphic discrete series
/// representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RepLabel(HalfInteger);

impl RepLabel {
    pub fn new(eta: HalfInteger) -> Result<Self> {
        if eta.twice() < 2 {
            return Err(Error::InvalidLabel(format!(
                "eta = {eta} is below the supported range (eta >= 1)"
            )));
        }
        Ok(Self(eta))
    }

    pub fn from_twice(twice: i64) -> Result<Self> {
        Self::new(HalfInteger::from_twice(twice))
    }

    pub fn eta(self) -> HalfInteger {
        self.0
    }

    /// 2η, always an integer ≥ 2.
    pub fn two_eta(self) -> i64 {
        self.0.twice()
    }

    pub fn value(self) -> f64 {
        self.0.value()
    }
}

impl fmt::Display for RepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for RepLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        RepLabel::new(s.parse()?)
    }
}

/// `x = 1 − 2 tanh²(τ/2)`, the argument of the Jacobi polynomials.
pub fn x_coordinate(tau: f64) -> f64 {
    let t = (0.5 * tau).tanh();
    1.0 - 2.0 * t * t
}

/// Coordinates `(τ, φ, ψ)` of the factorization `g = h(φ) a(τ) h(ψ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CartanCoords {
    tau: f64,
    phi: f64,
    psi: f64,
}

impl CartanCoords {
    /// Builds coordinates, moving the angles into `φ ∈ [0, 2π)`,
    /// `ψ ∈ [−2π, 2π)` without changing the group element they describe.
    pub fn new(tau: f64, phi: f64, psi: f64) -> Result<Self> {
        if !(tau.is_finite() && phi.is_finite() && psi.is_finite()) {
            return Err(Error::InvalidCoordinates(format!(
                "non-finite coordinates (tau={tau}, phi={phi}, psi={psi})"
            )));
        }
        if tau < 0.0 {
            return Err(Error::InvalidCoordinates(format!("tau = {tau} is negative")));
        }
        let (phi, psi) = normalize_angles(phi, psi);
        Ok(Self { tau, phi, psi })
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn psi(&self) -> f64 {
        self.psi
    }

    pub fn x(&self) -> f64 {
        x_coordinate(self.tau)
    }

    /// `(1 − x, 1 + x)` evaluated from τ directly, avoiding the cancellation
    /// in `1 − x` near the identity.
    pub fn one_minus_plus_x(&self) -> (f64, f64) {
        let t = (0.5 * self.tau).tanh();
        let sech = 1.0 / (0.5 * self.tau).cosh();
        (2.0 * t * t, 2.0 * sech * sech)
    }
}

// φ ↦ φ − 2πk must be paired with ψ ↦ ψ + 2πk to keep (α, β); ψ alone has
// period 4π.
fn normalize_angles(phi: f64, psi: f64) -> (f64, f64) {
    let k = (phi / TWO_PI).floor();
    let mut phi = phi - k * TWO_PI;
    let mut psi = psi + k * TWO_PI;
    if phi >= TWO_PI {
        phi -= TWO_PI;
        psi += TWO_PI;
    }
    psi = (psi + TWO_PI).rem_euclid(FOUR_PI) - TWO_PI;
    if psi >= TWO_PI {
        psi -= FOUR_PI;
    }
    (phi, psi)
}

/// A point of the unit disk, `z = β ᾱ⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint {
    z: Complex64,
}

impl DiskPoint {
    pub fn new(z: Complex64) -> Result<Self> {
        if z.norm().is_nan() || z.norm() >= 1.0 {
            return Err(Error::InvalidCoordinates(format!("|z| = {} is not < 1", z.norm())));
        }
        Ok(Self { z })
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn modulus(&self) -> f64 {
        self.z.norm()
    }
}

/// An element of SU(1,1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement {
    alpha: Complex64,
    beta: Complex64,
}

impl GroupElement {
    pub fn identity() -> Self {
        Self {
            alpha: Complex64::new(1.0, 0.0),
            beta: Complex64::new(0.0, 0.0),
        }
    }

    pub fn from_alpha_beta(alpha: Complex64, beta: Complex64) -> Result<Self> {
        Self::from_alpha_beta_with_tol(alpha, beta, DET_TOL)
    }

    pub fn from_alpha_beta_with_tol(alpha: Complex64, beta: Complex64, tol: f64) -> Result<Self> {
        let det = alpha.norm_sqr() - beta.norm_sqr();
        if det.is_nan() || (det - 1.0).abs() > tol {
            return Err(Error::DeterminantViolation { det, tol });
        }
        Ok(Self { alpha, beta })
    }

    /// `α = cosh(τ/2) e^{i(φ+ψ)/2}`, `β = sinh(τ/2) e^{i(φ−ψ)/2}`.
    pub fn from_cartan(c: &CartanCoords) -> Self {
        let half = 0.5 * c.tau;
        Self {
            alpha: Complex64::from_polar(half.cosh(), 0.5 * (c.phi + c.psi)),
            beta: Complex64::from_polar(half.sinh(), 0.5 * (c.phi - c.psi)),
        }
    }

    /// The compact element `h(θ) = diag(e^{iθ/2}, e^{−iθ/2})`.
    pub fn compact(theta: f64) -> Self {
        Self {
            alpha: Complex64::from_polar(1.0, 0.5 * theta),
            beta: Complex64::new(0.0, 0.0),
        }
    }

    /// The symmetric boost `a(τ)`.
    pub fn boost(tau: f64) -> Self {
        Self {
            alpha: Complex64::new((0.5 * tau).cosh(), 0.0),
            beta: Complex64::new((0.5 * tau).sinh(), 0.0),
        }
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    pub fn determinant(&self) -> f64 {
        self.alpha.norm_sqr() - self.beta.norm_sqr()
    }

    /// Inverts [`from_cartan`](Self::from_cartan). At `τ = 0` (`β = 0`) the
    /// split of the phase between φ and ψ is not unique; the canonical
    /// choice is `φ = 0` with all of the phase carried by ψ.
    pub fn to_cartan(&self) -> CartanCoords {
        let tau = 2.0 * self.beta.norm().asinh();
        let sum = 2.0 * self.alpha.arg();
        if self.beta.norm() == 0.0 {
            let (phi, psi) = normalize_angles(0.0, sum);
            return CartanCoords { tau, phi, psi };
        }
        let diff = 2.0 * self.beta.arg();
        let (phi, psi) = normalize_angles(0.5 * (sum + diff), 0.5 * (sum - diff));
        CartanCoords { tau, phi, psi }
    }

    pub fn multiply(&self, rhs: &GroupElement) -> GroupElement {
        GroupElement {
            alpha: self.alpha * rhs.alpha + self.beta * rhs.beta.conj(),
            beta: self.alpha * rhs.beta + self.beta * rhs.alpha.conj(),
        }
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            alpha: self.alpha.conj(),
            beta: -self.beta,
        }
    }

    pub fn disk_point(&self) -> DiskPoint {
        DiskPoint {
            z: self.beta / self.alpha.conj(),
        }
    }

    /// Max-norm distance between the two 2×2 matrices.
    pub fn distance(&self, other: &GroupElement) -> f64 {
        (self.alpha - other.alpha)
            .norm()
            .max((self.beta - other.beta).norm())
    }
}

/// Density of the Haar measure in `dτ dφ dψ`: `sinh τ / (8π²)`.
pub fn haar_density(c: &CartanCoords) -> f64 {
    c.tau.sinh() / (8.0 * PI * PI)
}
