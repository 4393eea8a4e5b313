//! Log-space Gamma and factorial ratios.

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

// Beyond this many factors the direct log-sum is replaced by lgamma differences.
const DIRECT_SUM_LIMIT: u64 = 512;

/// `ln[ m! Γ(2η+n) / (n! Γ(2η+m)) ]` for integer `2η = two_eta ≥ 1`.
///
/// With `n > m` this is `Σ_{k=m}^{n−1} ln((2η+k)/(k+1))`; every factor is
/// accumulated as `ln_1p((2η−1)/(k+1))`, so the result stays accurate for
/// `n, m` far beyond the range where the factorials themselves overflow.
pub fn log_poch_ratio(two_eta: i64, n: u64, m: u64) -> f64 {
    assert!(two_eta >= 1, "log_poch_ratio needs 2η ≥ 1, got {two_eta}");
    if n == m {
        return 0.0;
    }
    if n < m {
        return -log_poch_ratio(two_eta, m, n);
    }
    let shift = (two_eta - 1) as f64;
    if n - m <= DIRECT_SUM_LIMIT {
        (m..n).map(|k| (shift / (k as f64 + 1.0)).ln_1p()).sum()
    } else {
        let te = two_eta as f64;
        (ln_gamma(te + n as f64) - ln_gamma(te + m as f64))
            - (ln_gamma(n as f64 + 1.0) - ln_gamma(m as f64 + 1.0))
    }
}

/// `ln B(x, y)`.
pub fn ln_beta(x: f64, y: f64) -> f64 {
    ln_gamma(x) + ln_gamma(y) - ln_gamma(x + y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn factorial(n: u64) -> BigUint {
        (1..=n).fold(BigUint::from(1u32), |acc, k| acc * k)
    }

    fn big_to_f64(x: &BigUint) -> f64 {
        x.to_string().parse().unwrap()
    }

    #[test]
    fn equal_indices_give_zero() {
        for te in 1..8 {
            for n in 0..20 {
                assert_eq!(log_poch_ratio(te, n, n), 0.0);
            }
        }
    }

    #[test]
    fn small_exact_case() {
        assert!((log_poch_ratio(2, 1, 0) - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn matches_exact_big_integer_ratio() {
        // Γ(2η+n) = (2η+n−1)! for integer 2η.
        for te in 1..=10i64 {
            for n in 0..=(20 - te as u64) {
                for m in 0..=(20 - te as u64) {
                    let num = factorial(m) * factorial(te as u64 + n - 1);
                    let den = factorial(n) * factorial(te as u64 + m - 1);
                    let exact = big_to_f64(&num) / big_to_f64(&den);
                    let got = log_poch_ratio(te, n, m).exp();
                    assert!((got - exact).abs() <= 1e-13 * exact, "2η={te} n={n} m={m}: {got} vs {exact}");
                }
            }
        }
    }

    #[test]
    fn large_index_branch_is_consistent() {
        let direct: f64 = (0..2000u64).map(|k| (5.0 / (k as f64 + 1.0)).ln_1p()).sum();
        let got = log_poch_ratio(6, 2000, 0);
        assert!((got - direct).abs() < 1e-10 * direct.abs());
        assert!(got.is_finite());
    }
}
