//! Symbol calculus: the diamond product, Wick symbols from gamma sequences,
//! and the heat semigroup relating anti-Wick and Wick symbols.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::quadrature::GammaSequence;
use crate::report::{complex, format_f64};
use crate::special::{binomial, falling, ln_factorial};
use crate::symbols::{Polynomial, Symbol};
use crate::{Error, Result};

/// `sum_k (-1)^k / k! (d_z^k phi)(d_zbar^k psi)` on polynomials.
///
/// For monomials the k-th coefficient is `C(j1, k) * k2!/(k2-k)!`, an integer,
/// so integer-coefficient inputs give exact results.
pub fn diamond_polynomials(phi: &Polynomial, psi: &Polynomial) -> Polynomial {
    let mut terms = Vec::new();
    for ((j1, k1), c1) in phi.terms() {
        for ((j2, k2), c2) in psi.terms() {
            for k in 0..=j1.min(k2) {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                let factor = sign * binomial(j1 as u64, k as u64) * falling(k2 as u64, k as u64);
                terms.push(((j1 - k + j2, k1 + k2 - k), c1 * c2 * factor));
            }
        }
    }
    Polynomial::from_terms(terms)
}

/// Diamond product of two polynomial symbols (radial monomials convert via
/// `r^{2m} = z^m zbar^m`).
pub fn diamond(phi: &Symbol, psi: &Symbol) -> Result<Symbol> {
    let p = phi.to_polynomial()?;
    let q = psi.to_polynomial()?;
    Ok(Symbol::polynomial(diamond_polynomials(&p, &q)))
}

/// `sigma(r) = e^{-r^2} sum_n gamma(n) r^{2n} / n!` from a gamma prefix.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialPowerSeries {
    gamma: GammaSequence,
}

impl RadialPowerSeries {
    pub fn new(gamma: GammaSequence) -> Self {
        RadialPowerSeries { gamma }
    }

    pub fn gamma(&self) -> &GammaSequence {
        &self.gamma
    }

    /// `max|gamma| r^{2N} / N! e^{r^2}` for a prefix of length `len`.
    fn bound_for(&self, r: f64, len: usize) -> f64 {
        let g = self.gamma.max_abs();
        if g == 0.0 {
            return 0.0;
        }
        let x = r * r;
        if x == 0.0 {
            return if len == 0 { g } else { 0.0 };
        }
        (g.ln() + len as f64 * x.ln() - ln_factorial(len as u64) + x).exp()
    }

    pub fn tail_bound(&self, r: f64) -> f64 {
        self.bound_for(r, self.gamma.len())
    }

    /// Prefix length at which the tail bound drops below `tol`.
    pub fn required_len(&self, r: f64, tol: f64) -> usize {
        (1..100_000)
            .find(|&n| self.bound_for(r, n) < tol)
            .unwrap_or(100_000)
    }

    pub fn eval(&self, r: f64, tol: f64) -> Result<C64> {
        if !(r >= 0.0 && r.is_finite()) {
            return Err(Error::domain(format!("radius must be finite and >= 0, got {r}")));
        }
        let bound = self.tail_bound(r);
        if !(bound < tol) {
            let required = self.required_len(r, tol);
            return Err(Error::Accuracy {
                message: format!(
                    "Wick series tail bound {bound:e} >= {tol:e} at r = {r} with N = {}; need N >= {required}",
                    self.gamma.len()
                ),
                required_n: Some(required),
            });
        }
        let x = r * r;
        let mut term = 1.0;
        let mut sum = C64::new(0.0, 0.0);
        for (n, g) in self.gamma.values.iter().enumerate() {
            if n > 0 {
                term *= x / n as f64;
            }
            sum += g * term;
        }
        Ok(sum * (-x).exp())
    }
}

/// Wick symbol of the radial Toeplitz operator with diagonal `gamma`, at radius `r`.
pub fn wick_from_gamma(gamma: &GammaSequence, r: f64, tol: f64) -> Result<C64> {
    RadialPowerSeries::new(gamma.clone()).eval(r, tol)
}

/// `(r, sigma(r))` on an evenly spaced grid `[0, r_max]`.
pub fn wick_grid(gamma: &GammaSequence, r_max: f64, points: usize, tol: f64) -> Result<Vec<(f64, C64)>> {
    if points < 2 {
        return Err(Error::domain("a radius grid needs at least 2 points"));
    }
    let series = RadialPowerSeries::new(gamma.clone());
    (0..points)
        .map(|i| {
            let r = r_max * i as f64 / (points - 1) as f64;
            series.eval(r, tol).map(|v| (r, v))
        })
        .collect()
}

/// `r,re,im` lines with a header.
pub fn wick_grid_csv(grid: &[(f64, C64)]) -> String {
    let mut out = String::from("r,re,im\n");
    for (r, v) in grid {
        out.push_str(&format!("{},{},{}\n", format_f64(*r), format_f64(v.re), format_f64(v.im)));
    }
    out
}

/// Heat semigroup `H_t a(z) = (pi t)^{-1} int a(w) e^{-|z-w|^2/t} dv(w)`.
///
/// `H_1` maps anti-Wick symbols to Wick symbols. Closed forms:
/// `H_t(e^{lambda|z|^2}) = (1 - lambda t)^{-1} e^{lambda |z|^2 / (1 - lambda t)}` for
/// `Re lambda < 1/t`, and `H_t(z^a zbar^b) = sum_j C(a,j) C(b,j) j! t^j z^{a-j} zbar^{b-j}`.
pub fn heat_transform(symbol: &Symbol, t: f64) -> Result<Symbol> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::domain(format!("heat time must be finite and > 0, got {t}")));
    }
    match symbol {
        Symbol::RadialMonomial { m } => Ok(Symbol::polynomial(heat_polynomial(&Polynomial::radial_monomial(*m), t))),
        Symbol::BivariatePolynomial(p) => Ok(Symbol::polynomial(heat_polynomial(p, t))),
        Symbol::RadialExponential { lambda } => {
            if !(lambda.re < 1.0 / t) {
                return Err(Error::divergence(format!(
                    "H_{t} of exp({lambda} r^2) needs Re lambda < 1/t = {}",
                    1.0 / t
                )));
            }
            let d = C64::new(1.0, 0.0) - lambda * t;
            Ok(Symbol::sum([(d.inv(), Symbol::radial_exponential(lambda / d))]))
        }
        Symbol::Combination(c) => {
            let terms = c
                .terms()
                .iter()
                .map(|(w, s)| heat_transform(s, t).map(|h| (*w, h)))
                .collect::<Result<Vec<_>>>()?;
            Ok(Symbol::sum(terms))
        }
    }
}

fn heat_polynomial(p: &Polynomial, t: f64) -> Polynomial {
    let mut terms = Vec::new();
    for ((a, b), c) in p.terms() {
        let mut tj = 1.0;
        for j in 0..=a.min(b) {
            if j > 0 {
                tj *= t;
            }
            let factor = binomial(a as u64, j as u64)
                * binomial(b as u64, j as u64)
                * falling(j as u64, j as u64)
                * tj;
            terms.push(((a - j, b - j), c * factor));
        }
    }
    Polynomial::from_terms(terms)
}

/// Log-linear least-squares fit `sigma(r) ~ C e^{-K r^2}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianFit {
    #[serde(with = "complex")]
    pub c: C64,
    #[serde(with = "complex")]
    pub k: C64,
    pub k_abs_sq: f64,
    pub two_re_k: f64,
    pub r_max: f64,
    pub points: usize,
    /// Largest deviation of the fitted line from the unwrapped complex logarithm.
    pub max_log_residual: f64,
}

/// Fits `ln sigma = ln C - K r^2` on `points` radii in `[0, r_max]`.
///
/// The phase of `sigma` is unwrapped along the grid before fitting, so the
/// imaginary part of `K` is recovered even when it winds past `pi`.
pub fn fit_gaussian_wick(gamma: &GammaSequence, r_max: f64, points: usize, tol: f64) -> Result<GaussianFit> {
    let grid = wick_grid(gamma, r_max, points, tol)?;
    if grid.iter().any(|(_, v)| *v == C64::new(0.0, 0.0)) {
        return Err(Error::domain("Wick symbol vanishes on the fit grid"));
    }
    let xs: Vec<f64> = grid.iter().map(|(r, _)| r * r).collect();
    let log_mod: Vec<f64> = grid.iter().map(|(_, v)| v.norm().ln()).collect();
    let mut phase: Vec<f64> = Vec::with_capacity(grid.len());
    for (i, (_, v)) in grid.iter().enumerate() {
        let mut a = v.arg();
        if i > 0 {
            let prev = phase[i - 1];
            let tau = std::f64::consts::TAU;
            a += tau * ((prev - a) / tau).round();
        }
        phase.push(a);
    }
    let (a_re, s_re) = least_squares_line(&xs, &log_mod);
    let (a_im, s_im) = least_squares_line(&xs, &phase);
    let intercept = C64::new(a_re, a_im);
    let k = -C64::new(s_re, s_im);
    let max_log_residual = xs
        .iter()
        .zip(log_mod.iter().zip(&phase))
        .map(|(&x, (&lm, &ph))| (C64::new(lm, ph) - (intercept - k * x)).norm())
        .fold(0.0, f64::max);
    Ok(GaussianFit {
        c: intercept.exp(),
        k,
        k_abs_sq: k.norm_sqr(),
        two_re_k: 2.0 * k.re,
        r_max,
        points,
        max_log_residual,
    })
}

/// Ordinary least squares `y = a + s x`; returns `(a, s)`.
fn least_squares_line(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let s = sxy / sxx;
    (my - s * mx, s)
}
