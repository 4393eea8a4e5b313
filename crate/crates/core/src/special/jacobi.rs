//! Jacobi polynomials `P_n^{(a,b)}(x)` by upward three-term recurrence.

use crate::error::{Error, Result};

/// Parameters `(a, b, n)` of `P_n^{(a,b)}`. Requires `a > −1`, `b > −1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    a: f64,
    b: f64,
    degree: usize,
}

impl JacobiParams {
    pub fn new(a: f64, b: f64, degree: usize) -> Result<Self> {
        check_exponents(a, b)?;
        Ok(Self { a, b, degree })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
}

pub(crate) fn check_exponents(a: f64, b: f64) -> Result<()> {
    if !(a.is_finite() && a > -1.0) || !(b.is_finite() && b > -1.0) {
        return Err(Error::InvalidParams(format!(
            "Jacobi exponents must satisfy a > -1 and b > -1 (got a={a}, b={b})"
        )));
    }
    Ok(())
}

/// Evaluates `P_n^{(a,b)}(x)`.
pub fn jacobi_p(p: &JacobiParams, x: f64) -> f64 {
    JacobiSequence::new(p.a, p.b, x)
        .nth(p.degree)
        .expect("sequence is infinite")
}

/// The values `P_0(x), P_1(x), P_2(x), …` at a fixed point, one recurrence
/// step per item.
#[derive(Debug, Clone)]
pub struct JacobiSequence {
    a: f64,
    b: f64,
    x: f64,
    next_degree: usize,
    prev: f64,
    curr: f64,
}

impl JacobiSequence {
    /// Exponents are not validated here; use [`JacobiParams`] at API
    /// boundaries.
    pub fn new(a: f64, b: f64, x: f64) -> Self {
        Self {
            a,
            b,
            x,
            next_degree: 0,
            prev: 0.0,
            curr: 0.0,
        }
    }
}

impl Iterator for JacobiSequence {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let (a, b, x) = (self.a, self.b, self.x);
        let value = match self.next_degree {
            0 => 1.0,
            1 => (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0),
            n => {
                let n = n as f64;
                let c = 2.0 * n + a + b;
                let lead = 2.0 * n * (n + a + b) * (c - 2.0);
                let p1 = (c - 1.0) * (c * (c - 2.0) * x + a * a - b * b);
                let p2 = 2.0 * (n + a - 1.0) * (n + b - 1.0) * c;
                (p1 * self.curr - p2 * self.prev) / lead
            }
        };
        self.prev = self.curr;
        self.curr = value;
        self.next_degree += 1;
        Some(value)
    }
}
