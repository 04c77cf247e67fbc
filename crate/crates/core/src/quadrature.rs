//! Generalized Gauss-Laguerre quadrature and gamma sequences of radial symbols.
//!
//! Rules for the weight `s^alpha e^{-s}` come from the Jacobi matrix of the
//! generalized Laguerre polynomials (Golub-Welsch): the nodes are its
//! eigenvalues and the weights are the squared first components of its
//! normalized eigenvectors. Only those first components are tracked through
//! the implicit QL sweeps, so a rule costs `O(order^2)`.

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::report::ComplexJson;
use crate::special::{ln_gamma_real, rising};
use crate::symbols::{membership, RadialTerm, Symbol, SymbolClass};
use crate::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ORDER: usize = 512;
const START_ORDER: usize = 8;
const QL_MAX_SWEEPS: usize = 60;

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    order: usize,
    alpha: f64,
    nodes: Vec<f64>,
    /// Weights divided by `Gamma(alpha + 1)`; they sum to one.
    normalized_weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn normalized_weights(&self) -> &[f64] {
        &self.normalized_weights
    }

    /// Weights for `int f(s) s^alpha e^{-s} ds`; they sum to `Gamma(alpha + 1)`.
    /// Overflows for `alpha` beyond ~170; use [`Self::normalized_weights`] there.
    pub fn weights(&self) -> Vec<f64> {
        let mass = ln_gamma_real(self.alpha + 1.0).exp();
        self.normalized_weights.iter().map(|w| w * mass).collect()
    }

    /// `int f(s) s^alpha e^{-s} ds / Gamma(alpha + 1)`.
    pub fn integrate_normalized<F: Fn(f64) -> C64>(&self, f: F) -> C64 {
        self.nodes
            .iter()
            .zip(&self.normalized_weights)
            .map(|(&x, &w)| f(x) * w)
            .sum()
    }

    pub fn integrate<F: Fn(f64) -> C64>(&self, f: F) -> C64 {
        self.integrate_normalized(f) * ln_gamma_real(self.alpha + 1.0).exp()
    }
}

/// Generalized Gauss-Laguerre rule of the given order for `s^alpha e^{-s}`.
pub fn build_rule(order: usize, alpha: f64) -> Result<QuadratureRule> {
    if order == 0 {
        return Err(Error::domain("quadrature order must be >= 1"));
    }
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(Error::domain(format!("alpha must be finite and >= 0, got {alpha}")));
    }
    let mut diag: Vec<f64> = (0..order).map(|i| 2.0 * i as f64 + 1.0 + alpha).collect();
    let mut off: Vec<f64> = (1..order)
        .map(|i| (i as f64 * (i as f64 + alpha)).sqrt())
        .chain(std::iter::once(0.0))
        .collect();
    let mut first = vec![0.0; order];
    first[0] = 1.0;
    tridiagonal_ql(&mut diag, &mut off, &mut first)?;

    let mut pairs: Vec<(f64, f64)> = diag.into_iter().zip(first.into_iter().map(|v| v * v)).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let total: f64 = pairs.iter().map(|p| p.1).sum();
    let (nodes, normalized_weights) = pairs.into_iter().map(|(x, w)| (x, w / total)).unzip();
    Ok(QuadratureRule {
        order,
        alpha,
        nodes,
        normalized_weights,
    })
}

/// Implicit QL with Wilkinson shifts on a symmetric tridiagonal matrix.
///
/// `diag` is replaced by the eigenvalues and `first` (initially the first row
/// of the identity) by the first components of the eigenvectors. `off[i]`
/// couples rows `i` and `i+1`; `off[n-1]` must be zero.
fn tridiagonal_ql(diag: &mut [f64], off: &mut [f64], first: &mut [f64]) -> Result<()> {
    let n = diag.len();
    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if off[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > QL_MAX_SWEEPS {
                return Err(Error::EigenSolver(format!(
                    "no convergence for eigenvalue {l} of a {n}x{n} Jacobi matrix"
                )));
            }
            let mut g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
            let mut r = g.hypot(1.0);
            g = diag[m] - diag[l] + off[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * off[i];
                let b = c * off[i];
                r = f.hypot(g);
                off[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= p;
                    off[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
                let f = first[i + 1];
                first[i + 1] = s * first[i] + c * f;
                first[i] = c * first[i] - s * f;
            }
            if deflated {
                continue;
            }
            diag[l] -= p;
            off[l] = g;
            off[m] = 0.0;
        }
    }
    Ok(())
}

/// Settings for the adaptive order-doubling loop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOptions {
    /// Successive estimates must satisfy `|delta| <= tol * max(1, |value|)`.
    pub tol: f64,
    pub max_order: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        QuadratureOptions {
            tol: DEFAULT_TOL,
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

impl QuadratureOptions {
    pub fn with_tol(tol: f64) -> Self {
        QuadratureOptions {
            tol,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedIntegral {
    pub value: C64,
    /// Last difference between successive orders.
    pub err: f64,
    pub order: usize,
    pub converged: bool,
}

fn accepted(delta: f64, value: C64, tol: f64) -> bool {
    delta <= tol * value.norm().max(1.0)
}

/// Order-doubling driver shared by every integral in this module.
fn adaptive<F>(alpha: f64, opts: QuadratureOptions, eval: F) -> Result<WeightedIntegral>
where
    F: Fn(&QuadratureRule) -> C64,
{
    let mut order = START_ORDER.min(opts.max_order).max(1);
    let mut prev = eval(&build_rule(order, alpha)?);
    let mut err = f64::INFINITY;
    while order < opts.max_order {
        order = (order * 2).min(opts.max_order);
        let next = eval(&build_rule(order, alpha)?);
        err = (next - prev).norm();
        prev = next;
        if accepted(err, next, opts.tol) {
            return Ok(WeightedIntegral {
                value: next,
                err,
                order,
                converged: true,
            });
        }
    }
    Ok(WeightedIntegral {
        value: prev,
        err,
        order,
        converged: false,
    })
}

/// `int_0^inf f(s) s^alpha e^{-s} ds` with adaptive order doubling.
pub fn integrate_weighted<F>(f: F, alpha: f64, opts: QuadratureOptions) -> Result<WeightedIntegral>
where
    F: Fn(f64) -> C64,
{
    let mass = ln_gamma_real(alpha + 1.0).exp();
    let mut out = adaptive(alpha, opts, |rule| rule.integrate_normalized(&f))?;
    out.value *= mass;
    out.err *= mass;
    Ok(out)
}

// ---------------------------------------------------------------------------
// Gamma sequences

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GammaMethod {
    /// Closed forms for every term (all representable radial symbols have one).
    ClosedForm,
    /// Gauss-Laguerre quadrature on the real half-line.
    Quadrature,
    /// Values supplied directly, e.g. a product of two sequences.
    Given,
}

/// Prefix `gamma(0..N)` of the eigenvalues of a radial Toeplitz operator.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaSequence {
    pub values: Vec<C64>,
    pub abs_err: Vec<f64>,
    pub reliable: Vec<bool>,
    pub source: Option<Symbol>,
    pub method: GammaMethod,
}

impl GammaSequence {
    /// An exact, sourceless sequence.
    pub fn from_values(values: Vec<C64>) -> Self {
        let n = values.len();
        GammaSequence {
            values,
            abs_err: vec![0.0; n],
            reliable: vec![true; n],
            source: None,
            method: GammaMethod::Given,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn all_reliable(&self) -> bool {
        self.reliable.iter().all(|&r| r)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Entrywise product; errors combine to first order.
    pub fn product(&self, other: &GammaSequence) -> GammaSequence {
        let n = self.len().min(other.len());
        let values = (0..n).map(|i| self.values[i] * other.values[i]).collect();
        let abs_err = (0..n)
            .map(|i| self.abs_err[i] * other.values[i].norm() + other.abs_err[i] * self.values[i].norm())
            .collect();
        let reliable = (0..n).map(|i| self.reliable[i] && other.reliable[i]).collect();
        GammaSequence {
            values,
            abs_err,
            reliable,
            source: None,
            method: GammaMethod::Given,
        }
    }
}

#[derive(Serialize)]
struct GammaEntryJson {
    n: usize,
    gamma: ComplexJson,
    abs_err: f64,
    reliable: bool,
}

#[derive(Serialize)]
struct GammaSequenceJson<'a> {
    symbol: Option<&'a Symbol>,
    method: GammaMethod,
    entries: Vec<GammaEntryJson>,
}

impl Serialize for GammaSequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GammaSequenceJson {
            symbol: self.source.as_ref(),
            method: self.method,
            entries: (0..self.len())
                .map(|n| GammaEntryJson {
                    n,
                    gamma: self.values[n].into(),
                    abs_err: self.abs_err[n],
                    reliable: self.reliable[n],
                })
                .collect(),
        }
        .serialize(s)
    }
}

fn l1_terms(symbol: &Symbol) -> Result<Vec<RadialTerm>> {
    let terms = symbol.radial_terms()?;
    let verdict = membership(symbol, SymbolClass::L1InfWeighted);
    if !verdict.member {
        return Err(Error::divergence(format!(
            "{} is not in L1-inf: {}",
            symbol, verdict.witness
        )));
    }
    Ok(terms)
}

/// Closed form of one term: `(n+m)!/n!` for `r^{2m}`, `(1-lambda)^{-(n+1)}` for `e^{lambda r^2}`.
fn closed_form_term(t: &RadialTerm, n: usize) -> (C64, f64) {
    if t.is_power() {
        let v = rising(n as u64, t.m as u64);
        let err = if v < 9.007_199_254_740_992e15 { 0.0 } else { f64::EPSILON * v };
        (t.weight * v, err * t.weight.norm())
    } else {
        debug_assert_eq!(t.m, 0);
        let beta = (C64::new(1.0, 0.0) - t.lambda).inv();
        let v = beta.powi(n as i32 + 1) * t.weight;
        let err = 4.0 * f64::EPSILON * (1.0 + ((n + 1) as f64).log2()) * v.norm();
        (v, err)
    }
}

/// One entry by quadrature, all terms sharing one adaptive loop.
///
/// A power term integrates `s^m` against the rule for `s^n e^{-s}`. An
/// exponential term is rescaled by `s -> s / (1 - Re lambda)` first, leaving
/// the bounded factor `e^{i Im(lambda) s / c}` and the prefactor `c^{-(n+1)}`.
fn quadrature_entry(terms: &[RadialTerm], n: usize, opts: QuadratureOptions) -> Result<WeightedIntegral> {
    adaptive(n as f64, opts, |rule| {
        terms
            .iter()
            .map(|t| {
                if t.is_power() {
                    t.weight * rule.integrate_normalized(|s| C64::new(s.powi(t.m as i32), 0.0))
                } else {
                    let c = 1.0 - t.lambda.re;
                    let omega = t.lambda.im;
                    let scale = (-(n as f64 + 1.0) * c.ln()).exp();
                    t.weight * scale * rule.integrate_normalized(|s| C64::new(0.0, omega * s / c).exp())
                }
            })
            .sum()
    })
}

/// `gamma(n)` for `n = 0..len` of a radial symbol in L1-inf.
///
/// Entries are computed independently (in parallel) and collected in index
/// order. Quadrature entries whose successive-order difference stays above
/// `opts.tol` at `opts.max_order` are marked unreliable.
pub fn gamma_sequence(
    symbol: &Symbol,
    len: usize,
    method: GammaMethod,
    opts: QuadratureOptions,
) -> Result<GammaSequence> {
    let terms = l1_terms(symbol)?;
    let entries: Vec<(C64, f64, bool)> = match method {
        GammaMethod::ClosedForm | GammaMethod::Given => (0..len)
            .into_par_iter()
            .map(|n| {
                let (v, e) = terms.iter().fold((C64::new(0.0, 0.0), 0.0), |(v, e), t| {
                    let (tv, te) = closed_form_term(t, n);
                    (v + tv, e + te)
                });
                (v, e, e <= opts.tol * v.norm().max(1.0))
            })
            .collect(),
        GammaMethod::Quadrature => (0..len)
            .into_par_iter()
            .map(|n| quadrature_entry(&terms, n, opts).map(|w| (w.value, w.err, w.converged)))
            .collect::<Result<Vec<_>>>()?,
    };
    let mut values = Vec::with_capacity(len);
    let mut abs_err = Vec::with_capacity(len);
    let mut reliable = Vec::with_capacity(len);
    for (v, e, ok) in entries {
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::NonFinite(format!("gamma of {symbol} overflows")));
        }
        values.push(v);
        abs_err.push(e);
        reliable.push(ok);
    }
    Ok(GammaSequence {
        values,
        abs_err,
        reliable,
        source: Some(symbol.clone()),
        method: if method == GammaMethod::Given { GammaMethod::ClosedForm } else { method },
    })
}

/// Closed-form gamma sequence with default tolerance.
pub fn gamma_closed_form(symbol: &Symbol, len: usize) -> Result<GammaSequence> {
    gamma_sequence(symbol, len, GammaMethod::ClosedForm, QuadratureOptions::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::Polynomial;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn order_one_rule() {
        let rule = build_rule(1, 0.0).unwrap();
        assert!((rule.nodes()[0] - 1.0).abs() < 1e-15);
        assert!((rule.weights()[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn order_two_nodes_are_laguerre_roots() {
        let rule = build_rule(2, 0.0).unwrap();
        let s2 = 2f64.sqrt();
        assert!((rule.nodes()[0] - (2.0 - s2)).abs() < 1e-14);
        assert!((rule.nodes()[1] - (2.0 + s2)).abs() < 1e-14);
        // Exact up to degree 3: int s^p e^{-s} = p!.
        for (p, expected) in [(0, 1.0), (1, 1.0), (2, 2.0), (3, 6.0)] {
            let v = rule.integrate(|s| c(s.powi(p), 0.0));
            assert!((v.re - expected).abs() < 1e-13, "p={p}");
        }
    }

    #[test]
    fn order_four_integrates_cubic() {
        let rule = build_rule(4, 0.0).unwrap();
        assert!((rule.integrate(|s| c(s.powi(3), 0.0)).re - 6.0).abs() < 1e-12);
    }

    #[test]
    fn invalid_rule_arguments() {
        assert!(matches!(build_rule(0, 0.0), Err(Error::Domain(_))));
        assert!(matches!(build_rule(3, -0.5), Err(Error::Domain(_))));
    }

    #[test]
    fn rule_structure() {
        for &(order, alpha) in &[(5, 0.0), (33, 2.5), (64, 40.0), (100, 7.0)] {
            let rule = build_rule(order, alpha).unwrap();
            assert_eq!(rule.nodes().len(), order);
            assert!(rule.nodes().windows(2).all(|w| w[0] < w[1]));
            assert!(rule.nodes()[0] > 0.0);
            assert!(rule.normalized_weights().iter().all(|&w| w > 0.0));
            let sum: f64 = rule.weights().iter().sum();
            let mass = statrs::function::gamma::gamma(alpha + 1.0);
            assert!((sum / mass - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn large_orders_build() {
        let rule = build_rule(512, 40.0).unwrap();
        assert!(rule.normalized_weights().iter().all(|&w| w >= 0.0));
        let total: f64 = rule.normalized_weights().iter().sum();
        assert!((total - 1.0).abs() < 1e-14);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn polynomial_exactness(order in 1usize..40, alpha in 0.0..30.0f64) {
            let rule = build_rule(order, alpha).unwrap();
            for deg in 0..(2 * order) {
                // Normalized moment Gamma(alpha+deg+1)/Gamma(alpha+1) = (alpha+1)...(alpha+deg).
                let expected: f64 = (1..=deg).map(|i| alpha + i as f64).product();
                let got = rule.integrate_normalized(|s| c(s.powi(deg as i32), 0.0)).re;
                prop_assert!((got / expected - 1.0).abs() < 1e-12,
                    "order {} alpha {} deg {}: {} vs {}", order, alpha, deg, got, expected);
            }
        }
    }

    #[test]
    fn integrate_weighted_examples() {
        let opts = QuadratureOptions::default();
        let one = integrate_weighted(|_| c(1.0, 0.0), 0.0, opts).unwrap();
        assert!((one.value - c(1.0, 0.0)).norm() < 1e-14 && one.converged);
        let half = integrate_weighted(|s| c((s / 2.0).exp(), 0.0), 0.0, opts).unwrap();
        assert!((half.value.re - 2.0).abs() < 1e-10, "{half:?}");
        let lin = integrate_weighted(|s| c(s, 0.0), 1.0, opts).unwrap();
        assert!((lin.value.re - 2.0).abs() < 1e-13);
    }

    #[test]
    fn max_order_is_reported_as_partial() {
        let opts = QuadratureOptions { tol: 1e-14, max_order: 16 };
        let r = integrate_weighted(|s| c(0.0, 3.0 * s).exp(), 0.0, opts).unwrap();
        assert!(!r.converged);
        assert_eq!(r.order, 16);
        assert!(r.err > 0.0);
    }

    #[test]
    fn gamma_closed_form_examples() {
        let one = gamma_closed_form(&Symbol::one(), 10).unwrap();
        assert!(one.values.iter().all(|v| *v == c(1.0, 0.0)));
        let r2 = gamma_closed_form(&Symbol::radial_monomial(1), 10).unwrap();
        for (n, v) in r2.values.iter().enumerate() {
            assert_eq!(*v, c(n as f64 + 1.0, 0.0));
        }
        let expo = gamma_closed_form(&Symbol::radial_exponential(c(0.4, 0.8)), 41).unwrap();
        let beta = c(3.0, 4.0) / 5.0;
        for (n, v) in expo.values.iter().enumerate() {
            assert!((v - beta.powi(n as i32 + 1)).norm() < 1e-13);
            assert!((v - c(0.6, -0.8).powi(-(n as i32 + 1))).norm() < 1e-13);
        }
    }

    #[test]
    fn gamma_quadrature_matches_monomials() {
        let opts = QuadratureOptions::default();
        let q = gamma_sequence(&Symbol::radial_monomial(1), 41, GammaMethod::Quadrature, opts).unwrap();
        for (n, v) in q.values.iter().enumerate() {
            assert!((v - c(n as f64 + 1.0, 0.0)).norm() <= 1e-12 * (n as f64 + 1.0), "n={n}: {v}");
        }
        assert!(q.all_reliable());
    }

    #[test]
    fn closed_form_and_quadrature_agree() {
        let opts = QuadratureOptions::default();
        let mut symbols: Vec<Symbol> = (0..4).map(Symbol::radial_monomial).collect();
        symbols.extend([c(-1.0, 0.0), c(0.4, 0.0), c(0.3, 0.1), c(-0.5, 0.4)].map(Symbol::radial_exponential));
        for s in &symbols {
            let a = gamma_sequence(s, 41, GammaMethod::ClosedForm, opts).unwrap();
            let b = gamma_sequence(s, 41, GammaMethod::Quadrature, opts).unwrap();
            for n in 0..41 {
                let scale = a.values[n].norm().max(1.0);
                assert!(
                    (a.values[n] - b.values[n]).norm() <= 1e-10 * scale,
                    "{s} n={n}: {} vs {}",
                    a.values[n],
                    b.values[n]
                );
            }
        }
    }

    /// For the large oscillation of the expo symbol the real-axis sum cancels
    /// by a factor `(1 - Re lambda)^{n+1}` relative to `|gamma|`; agreement is
    /// tight for short prefixes and the error estimate tracks the true error.
    #[test]
    fn exponential_example_quadrature_short_prefix_and_error_reporting() {
        let s = Symbol::radial_exponential(c(0.4, 0.8));
        let q = gamma_sequence(&s, 41, GammaMethod::Quadrature, QuadratureOptions::default()).unwrap();
        let beta = c(3.0, 4.0) / 5.0;
        for n in 0..=20 {
            assert!((q.values[n] - beta.powi(n as i32 + 1)).norm() < 1e-9, "n={n}");
        }
        for n in 0..=40 {
            let true_err = (q.values[n] - beta.powi(n as i32 + 1)).norm();
            if q.reliable[n] {
                assert!(true_err < 1e-9, "n={n} flagged reliable with error {true_err}");
            }
        }
    }

    #[test]
    fn gamma_errors() {
        let nonradial = Symbol::polynomial(Polynomial::monomial(2, 0, c(1.0, 0.0)));
        assert!(matches!(gamma_closed_form(&nonradial, 3), Err(Error::Domain(_))));
        let divergent = Symbol::radial_exponential(c(1.0, 0.0));
        assert!(matches!(gamma_closed_form(&divergent, 3), Err(Error::Divergence(_))));
    }

    #[test]
    fn positivity_and_reality() {
        let s = Symbol::sum([
            (c(2.0, 0.0), Symbol::radial_exponential(c(-1.0, 0.0))),
            (c(0.5, 0.0), Symbol::radial_monomial(2)),
        ]);
        for method in [GammaMethod::ClosedForm, GammaMethod::Quadrature] {
            let g = gamma_sequence(&s, 30, method, QuadratureOptions::default()).unwrap();
            assert!(g.values.iter().all(|v| v.im == 0.0 && v.re >= 0.0));
        }
        let real = Symbol::sum([
            (c(1.0, 0.0), Symbol::radial_exponential(c(0.2, 0.0))),
            (c(-3.0, 0.0), Symbol::radial_monomial(1)),
        ]);
        let g = gamma_closed_form(&real, 30).unwrap();
        assert!(g.values.iter().all(|v| v.im == 0.0));
    }

    #[test]
    fn sequence_is_deterministic_and_ordered() {
        let s = Symbol::radial_exponential(c(-0.5, 0.4));
        let a = gamma_sequence(&s, 30, GammaMethod::Quadrature, QuadratureOptions::default()).unwrap();
        let b = gamma_sequence(&s, 30, GammaMethod::Quadrature, QuadratureOptions::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn json_entries() {
        let g = gamma_closed_form(&Symbol::radial_monomial(1), 2).unwrap();
        let v = serde_json::to_value(&g).unwrap();
        assert_eq!(v["entries"][1]["n"], 1);
        assert_eq!(v["entries"][1]["gamma"]["re"], 2.0);
        assert_eq!(v["symbol"]["kind"], "radial_monomial");
    }
}
