//! Factorial-type helpers. Ratios are formed as short integer products when
//! they stay exact in `f64`, and in log-space otherwise.

use statrs::function::gamma::ln_gamma;

/// Products of up to this many factors are formed directly.
const DIRECT_PRODUCT_LIMIT: u64 = 64;

/// `(n+1)(n+2)...(n+m) = (n+m)!/n!`.
pub(crate) fn rising(n: u64, m: u64) -> f64 {
    if m <= DIRECT_PRODUCT_LIMIT {
        (1..=m).fold(1.0, |acc, i| acc * (n + i) as f64)
    } else {
        (ln_factorial(n + m) - ln_factorial(n)).exp()
    }
}

/// `j(j-1)...(j-k+1) = j!/(j-k)!`, zero when `k > j`.
pub(crate) fn falling(j: u64, k: u64) -> f64 {
    if k > j {
        return 0.0;
    }
    rising(j - k, k)
}

pub(crate) fn binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    if k <= DIRECT_PRODUCT_LIMIT {
        // Each partial product is itself a binomial coefficient, hence an integer.
        let mut acc = 1.0;
        for i in 1..=k {
            acc = acc * (n - k + i) as f64 / i as f64;
        }
        acc.round()
    } else {
        (ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)).exp()
    }
}

pub(crate) fn ln_factorial(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    if n <= 20 {
        return (2..=n).map(|i| i as f64).product::<f64>().ln();
    }
    ln_gamma(n as f64 + 1.0)
}

pub(crate) fn ln_gamma_real(x: f64) -> f64 {
    ln_gamma(x)
}

/// `sqrt((n+j)! / (n! m!))`-style matrix element `(n+j)!/sqrt(n! m!)` with `m = n+j-k`.
pub(crate) fn monomial_matrix_element(n: u64, j: u64, k: u64) -> f64 {
    debug_assert!(n + j >= k);
    let m = n + j - k;
    if j <= DIRECT_PRODUCT_LIMIT && k <= DIRECT_PRODUCT_LIMIT {
        (rising(n, j) * rising(m, k)).sqrt()
    } else {
        (ln_factorial(n + j) - 0.5 * ln_factorial(n) - 0.5 * ln_factorial(m)).exp()
    }
}
