//! Closed-form symbols `phi(z, zbar)`.
//!
//! Four shapes are representable: radial monomials `r^{2m}`, radial
//! exponentials `e^{lambda r^2}`, polynomials in `z` and `zbar`, and finite
//! linear combinations of those. Every symbol is closed form so that class
//! membership reduces to an exact convergence condition.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::report::ComplexJson;
use crate::special::{falling, ln_factorial, ln_gamma_real};
use crate::{Error, Result};

/// Polynomial `sum c_{jk} z^j zbar^k` with no stored zero coefficients.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Polynomial {
    coeffs: BTreeMap<(u32, u32), C64>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, C64::new(1.0, 0.0))
    }

    /// `c z^j zbar^k`.
    pub fn monomial(j: u32, k: u32, c: C64) -> Self {
        Self::from_terms([((j, k), c)])
    }

    /// `|z|^{2m} = z^m zbar^m`.
    pub fn radial_monomial(m: u32) -> Self {
        Self::monomial(m, m, C64::new(1.0, 0.0))
    }

    /// Builds a polynomial, summing repeated exponents and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), C64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for ((j, k), c) in terms {
            p.add_term(j, k, c);
        }
        p
    }

    fn add_term(&mut self, j: u32, k: u32, c: C64) {
        let entry = self.coeffs.entry((j, k)).or_insert(C64::new(0.0, 0.0));
        *entry += c;
        if *entry == C64::new(0.0, 0.0) {
            self.coeffs.remove(&(j, k));
        }
    }

    pub fn coeff(&self, j: u32, k: u32) -> C64 {
        self.coeffs.get(&(j, k)).copied().unwrap_or_default()
    }

    /// Terms in ascending `(j, k)` order.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), C64)> + '_ {
        self.coeffs.iter().map(|(&jk, &c)| (jk, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Radial iff every monomial has `j == k`.
    pub fn is_radial(&self) -> bool {
        self.coeffs.keys().all(|&(j, k)| j == k)
    }

    /// Real-valued iff `c_{kj} = conj(c_{jk})` for all `(j, k)`.
    pub fn is_real_valued(&self) -> bool {
        self.coeffs
            .iter()
            .all(|(&(j, k), c)| self.coeff(k, j) == c.conj())
    }

    pub fn degree_z(&self) -> u32 {
        self.coeffs.keys().map(|&(j, _)| j).max().unwrap_or(0)
    }

    pub fn degree_zbar(&self) -> u32 {
        self.coeffs.keys().map(|&(_, k)| k).max().unwrap_or(0)
    }

    pub fn scale(&self, w: C64) -> Self {
        Self::from_terms(self.terms().map(|(jk, c)| (jk, c * w)))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(self.terms().chain(other.terms()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((j1, k1), c1) in self.terms() {
            for ((j2, k2), c2) in other.terms() {
                out.add_term(j1 + j2, k1 + k2, c1 * c2);
            }
        }
        out
    }

    /// `d^order/dz^order`, treating `z` and `zbar` as independent.
    pub fn d_z(&self, order: u32) -> Self {
        Self::from_terms(self.terms().filter(|&((j, _), _)| j >= order).map(|((j, k), c)| {
            ((j - order, k), c * falling(j as u64, order as u64))
        }))
    }

    /// `d^order/dzbar^order`.
    pub fn d_zbar(&self, order: u32) -> Self {
        Self::from_terms(self.terms().filter(|&((_, k), _)| k >= order).map(|((j, k), c)| {
            ((j, k - order), c * falling(k as u64, order as u64))
        }))
    }

    pub fn conj(&self) -> Self {
        Self::from_terms(self.terms().map(|((j, k), c)| ((k, j), c.conj())))
    }

    pub fn evaluate(&self, z: C64) -> C64 {
        let zb = z.conj();
        self.terms()
            .map(|((j, k), c)| c * z.powu(j) * zb.powu(k))
            .sum()
    }

    /// Largest absolute coefficient difference; used by tests and reports.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
            .terms()
            .map(|(_, c)| c.norm())
            .fold(0.0, f64::max)
    }
}

/// A flat, nonempty linear combination. Members are never combinations.
#[derive(Debug, Clone, PartialEq)]
pub struct Combination {
    terms: Vec<(C64, Symbol)>,
}

impl Combination {
    pub fn terms(&self) -> &[(C64, Symbol)] {
        &self.terms
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SymbolWire", into = "SymbolWire")]
pub enum Symbol {
    /// `a(r) = r^{2m}`.
    RadialMonomial { m: u32 },
    /// `a(r) = e^{lambda r^2}`.
    RadialExponential { lambda: C64 },
    BivariatePolynomial(Polynomial),
    Combination(Combination),
}

/// One term `weight * r^{2m} * e^{lambda r^2}` of a radial symbol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialTerm {
    pub weight: C64,
    pub m: u32,
    pub lambda: C64,
}

impl RadialTerm {
    pub fn is_power(&self) -> bool {
        self.lambda == C64::new(0.0, 0.0)
    }
}

fn one() -> C64 {
    C64::new(1.0, 0.0)
}

fn lambda_key(l: C64) -> (u64, u64) {
    (l.re.to_bits(), l.im.to_bits())
}

impl Symbol {
    pub fn constant(c: C64) -> Self {
        Symbol::BivariatePolynomial(Polynomial::monomial(0, 0, c))
    }

    pub fn one() -> Self {
        Symbol::constant(one())
    }

    pub fn radial_monomial(m: u32) -> Self {
        Symbol::RadialMonomial { m }
    }

    pub fn radial_exponential(lambda: C64) -> Self {
        Symbol::RadialExponential { lambda }
    }

    pub fn polynomial(p: Polynomial) -> Self {
        Symbol::BivariatePolynomial(p)
    }

    /// Normalized linear combination.
    ///
    /// Nested combinations are flattened, radial monomials and polynomials
    /// merge into one polynomial term, exponentials with equal `lambda` merge
    /// (`lambda = 0` joins the polynomial constant), and zero weights vanish.
    /// A single remaining term with unit weight is returned unwrapped; an
    /// empty result is the zero polynomial.
    pub fn sum<I: IntoIterator<Item = (C64, Symbol)>>(terms: I) -> Symbol {
        let mut poly = Polynomial::zero();
        let mut exps: BTreeMap<(u64, u64), (C64, C64)> = BTreeMap::new();
        let mut stack: Vec<(C64, Symbol)> = terms.into_iter().collect();
        stack.reverse();
        while let Some((w, s)) = stack.pop() {
            if w == C64::new(0.0, 0.0) {
                continue;
            }
            match s {
                Symbol::RadialMonomial { m } => poly.add_term(m, m, w),
                Symbol::BivariatePolynomial(p) => poly = poly.add(&p.scale(w)),
                Symbol::RadialExponential { lambda } => {
                    if lambda == C64::new(0.0, 0.0) {
                        poly.add_term(0, 0, w);
                    } else {
                        let e = exps.entry(lambda_key(lambda)).or_insert((lambda, C64::new(0.0, 0.0)));
                        e.1 += w;
                    }
                }
                Symbol::Combination(c) => {
                    for (w2, s2) in c.terms.into_iter().rev() {
                        stack.push((w * w2, s2));
                    }
                }
            }
        }
        let mut out: Vec<(C64, Symbol)> = Vec::new();
        if !poly.is_zero() {
            out.push((one(), Symbol::BivariatePolynomial(poly)));
        }
        let mut exp_terms: Vec<(C64, C64)> = exps
            .into_values()
            .filter(|(_, w)| *w != C64::new(0.0, 0.0))
            .collect();
        exp_terms.sort_by(|a, b| {
            a.0.re
                .total_cmp(&b.0.re)
                .then(a.0.im.total_cmp(&b.0.im))
        });
        out.extend(
            exp_terms
                .into_iter()
                .map(|(lambda, w)| (w, Symbol::RadialExponential { lambda })),
        );
        match out.len() {
            0 => Symbol::BivariatePolynomial(Polynomial::zero()),
            1 if out[0].0 == one() => out.pop().unwrap().1,
            _ => Symbol::Combination(Combination { terms: out }),
        }
    }

    pub fn scale(&self, w: C64) -> Symbol {
        Symbol::sum([(w, self.clone())])
    }

    pub fn is_radial(&self) -> bool {
        match self {
            Symbol::RadialMonomial { .. } | Symbol::RadialExponential { .. } => true,
            Symbol::BivariatePolynomial(p) => p.is_radial(),
            Symbol::Combination(c) => c.terms.iter().all(|(_, s)| s.is_radial()),
        }
    }

    pub fn conj(&self) -> Symbol {
        match self {
            Symbol::RadialMonomial { .. } => self.clone(),
            Symbol::RadialExponential { lambda } => Symbol::RadialExponential {
                lambda: lambda.conj(),
            },
            Symbol::BivariatePolynomial(p) => Symbol::BivariatePolynomial(p.conj()),
            Symbol::Combination(c) => {
                Symbol::sum(c.terms.iter().map(|(w, s)| (w.conj(), s.conj())))
            }
        }
    }

    /// True when the symbol equals its complex conjugate as a function.
    pub fn is_real_valued(&self) -> bool {
        match self {
            Symbol::RadialMonomial { .. } => true,
            Symbol::RadialExponential { lambda } => lambda.im == 0.0,
            Symbol::BivariatePolynomial(p) => p.is_real_valued(),
            Symbol::Combination(_) => Symbol::sum([(one(), self.clone())]) == Symbol::sum([(one(), self.conj())]),
        }
    }

    /// `phi(z, zbar)`; radial shapes go through `r = |z|`.
    pub fn evaluate(&self, z: C64) -> Result<C64> {
        let v = self.evaluate_unchecked(z);
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite(format!("{} at z = {}", self, z)))
        }
    }

    fn evaluate_unchecked(&self, z: C64) -> C64 {
        let r2 = z.norm_sqr();
        match self {
            Symbol::RadialMonomial { m } => C64::new(r2.powi(*m as i32), 0.0),
            Symbol::RadialExponential { lambda } => (lambda * r2).exp(),
            Symbol::BivariatePolynomial(p) => p.evaluate(z),
            Symbol::Combination(c) => c
                .terms
                .iter()
                .map(|(w, s)| w * s.evaluate_unchecked(z))
                .sum(),
        }
    }

    /// Decomposes a radial symbol into `weight * r^{2m} * e^{lambda r^2}` terms.
    pub fn radial_terms(&self) -> Result<Vec<RadialTerm>> {
        if !self.is_radial() {
            return Err(Error::domain(format!("symbol {} is not radial", self)));
        }
        let mut out = Vec::new();
        self.push_radial_terms(one(), &mut out);
        Ok(out)
    }

    fn push_radial_terms(&self, w: C64, out: &mut Vec<RadialTerm>) {
        let zero = C64::new(0.0, 0.0);
        match self {
            Symbol::RadialMonomial { m } => out.push(RadialTerm { weight: w, m: *m, lambda: zero }),
            Symbol::RadialExponential { lambda } => out.push(RadialTerm { weight: w, m: 0, lambda: *lambda }),
            Symbol::BivariatePolynomial(p) => {
                out.extend(p.terms().map(|((m, _), c)| RadialTerm { weight: w * c, m, lambda: zero }))
            }
            Symbol::Combination(c) => {
                for (w2, s) in &c.terms {
                    s.push_radial_terms(w * w2, out);
                }
            }
        }
    }

    /// Polynomial form, writing `r^{2m}` as `z^m zbar^m`. Exponentials other
    /// than `e^0` have none.
    pub fn to_polynomial(&self) -> Result<Polynomial> {
        match self {
            Symbol::RadialMonomial { m } => Ok(Polynomial::radial_monomial(*m)),
            Symbol::RadialExponential { lambda } if *lambda == C64::new(0.0, 0.0) => Ok(Polynomial::one()),
            Symbol::RadialExponential { .. } => Err(Error::domain(format!(
                "{} is not a polynomial symbol",
                self
            ))),
            Symbol::BivariatePolynomial(p) => Ok(p.clone()),
            Symbol::Combination(c) => c.terms.iter().try_fold(Polynomial::zero(), |acc, (w, s)| {
                Ok(acc.add(&s.to_polynomial()?.scale(*w)))
            }),
        }
    }

    pub fn membership(&self, space: SymbolClass) -> MembershipVerdict {
        membership(self, space)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn c(z: &C64) -> String {
            if z.im == 0.0 {
                format!("{}", z.re)
            } else {
                format!("({}{:+}i)", z.re, z.im)
            }
        }
        match self {
            Symbol::RadialMonomial { m } => write!(f, "r^{}", 2 * m),
            Symbol::RadialExponential { lambda } => write!(f, "exp({} r^2)", c(lambda)),
            Symbol::BivariatePolynomial(p) => {
                if p.is_zero() {
                    return write!(f, "0");
                }
                let parts: Vec<String> = p
                    .terms()
                    .map(|((j, k), coef)| format!("{} z^{} zbar^{}", c(&coef), j, k))
                    .collect();
                write!(f, "{}", parts.join(" + "))
            }
            Symbol::Combination(comb) => {
                let parts: Vec<String> = comb
                    .terms
                    .iter()
                    .map(|(w, s)| format!("{}*[{}]", c(w), s))
                    .collect();
                write!(f, "{}", parts.join(" + "))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// JSON wire format

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum SymbolWire {
    RadialMonomial { m: u32 },
    RadialExponential { lambda: ComplexJson },
    Poly { terms: Vec<PolyTermWire> },
    Sum { terms: Vec<SumTermWire> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct PolyTermWire {
    j: u32,
    k: u32,
    c: ComplexJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SumTermWire {
    w: ComplexJson,
    s: SymbolWire,
}

fn finite(c: ComplexJson, what: &str) -> Result<C64> {
    if c.re.is_finite() && c.im.is_finite() {
        Ok(c.into())
    } else {
        Err(Error::InvalidSymbol(format!("non-finite {what}")))
    }
}

impl TryFrom<SymbolWire> for Symbol {
    type Error = Error;

    fn try_from(w: SymbolWire) -> Result<Symbol> {
        match w {
            SymbolWire::RadialMonomial { m } => Ok(Symbol::RadialMonomial { m }),
            SymbolWire::RadialExponential { lambda } => Ok(Symbol::RadialExponential {
                lambda: finite(lambda, "lambda")?,
            }),
            SymbolWire::Poly { terms } => {
                let terms = terms
                    .into_iter()
                    .map(|t| Ok(((t.j, t.k), finite(t.c, "coefficient")?)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Symbol::BivariatePolynomial(Polynomial::from_terms(terms)))
            }
            SymbolWire::Sum { terms } => {
                if terms.is_empty() {
                    return Err(Error::InvalidSymbol("empty sum".into()));
                }
                let terms = terms
                    .into_iter()
                    .map(|t| Ok((finite(t.w, "weight")?, Symbol::try_from(t.s)?)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Symbol::sum(terms))
            }
        }
    }
}

impl From<Symbol> for SymbolWire {
    fn from(s: Symbol) -> SymbolWire {
        match s {
            Symbol::RadialMonomial { m } => SymbolWire::RadialMonomial { m },
            Symbol::RadialExponential { lambda } => SymbolWire::RadialExponential {
                lambda: lambda.into(),
            },
            Symbol::BivariatePolynomial(p) => SymbolWire::Poly {
                terms: p
                    .terms()
                    .map(|((j, k), c)| PolyTermWire { j, k, c: c.into() })
                    .collect(),
            },
            Symbol::Combination(c) => SymbolWire::Sum {
                terms: c
                    .terms
                    .into_iter()
                    .map(|(w, s)| SumTermWire {
                        w: w.into(),
                        s: s.into(),
                    })
                    .collect(),
            },
        }
    }
}

// ---------------------------------------------------------------------------
// Symbol classes

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SymbolClass {
    /// `int |a(r)| e^{-r^2} r^n dr < inf` for all n.
    L1InfWeighted,
    /// `int |a(r)|^2 e^{-r^2} r^{n+1} dr < inf` for all n.
    L2InfWeighted,
    /// `|a| <= C e^{delta r^2}` for some `delta < 1/2`.
    GrowthDeltaHalf,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembershipVerdict {
    pub space: SymbolClass,
    pub member: bool,
    pub witness: String,
}

fn exponential_membership(lambda: C64, space: SymbolClass) -> (bool, String) {
    let re = lambda.re;
    match space {
        SymbolClass::L1InfWeighted => (
            re < 1.0,
            format!("int e^{{(Re lambda - 1) r^2}} r^n dr finite iff Re lambda < 1; Re lambda = {re}"),
        ),
        SymbolClass::L2InfWeighted => (
            2.0 * re < 1.0,
            format!("int e^{{(2 Re lambda - 1) r^2}} r^(n+1) dr finite iff 2 Re lambda < 1; Re lambda = {re}"),
        ),
        SymbolClass::GrowthDeltaHalf => (
            re < 0.5,
            format!("|e^{{lambda r^2}}| = e^{{Re lambda r^2}} with Re lambda = {re}; need < 1/2"),
        ),
    }
}

/// Exact class membership from closed-form convergence conditions.
///
/// A normalized combination is a member iff every term is: distinct
/// exponentials with the maximal real part cannot cancel at infinity.
pub fn membership(symbol: &Symbol, space: SymbolClass) -> MembershipVerdict {
    let (member, witness) = match symbol {
        Symbol::RadialMonomial { m } => (
            true,
            format!("r^{} times a Gaussian weight is integrable against every power", 2 * m),
        ),
        Symbol::RadialExponential { lambda } => exponential_membership(*lambda, space),
        Symbol::BivariatePolynomial(p) => (
            true,
            format!(
                "polynomial growth: |phi| <= sum |c_jk| r^(j+k), degree {}",
                p.terms().map(|((j, k), _)| j + k).max().unwrap_or(0)
            ),
        ),
        Symbol::Combination(c) => {
            let verdicts: Vec<MembershipVerdict> =
                c.terms.iter().map(|(_, s)| membership(s, space)).collect();
            let member = verdicts.iter().all(|v| v.member);
            let witness = verdicts
                .iter()
                .map(|v| v.witness.clone())
                .collect::<Vec<_>>()
                .join("; ");
            (member, format!("all terms required: {witness}"))
        }
    };
    MembershipVerdict {
        space,
        member,
        witness,
    }
}

// ---------------------------------------------------------------------------
// q_f and A_f

/// `ln q_f(n)` with `q_f(n) = int_0^inf |f(r)|^2 e^{-r^2} r^{n+1} dr`.
///
/// `|f|^2` expands into pair products `w_i conj(w_j) r^{2p} e^{mu r^2}`, each
/// with closed form `1/2 Gamma(s) (1-mu)^{-s}`, `s = p + n/2 + 1`. The sum is
/// accumulated relative to its largest log-term.
fn ln_q(terms: &[RadialTerm], n: usize) -> f64 {
    let mut logs: Vec<C64> = Vec::with_capacity(terms.len() * terms.len());
    for a in terms {
        for b in terms {
            let w = a.weight * b.weight.conj();
            let p = (a.m + b.m) as f64;
            let mu = a.lambda + b.lambda.conj();
            let s = p + n as f64 / 2.0 + 1.0;
            let l = w.ln() + C64::new(0.5f64.ln() + ln_gamma_real(s), 0.0)
                - (C64::new(1.0, 0.0) - mu).ln() * s;
            logs.push(l);
        }
    }
    let max = logs.iter().map(|l| l.re).fold(f64::NEG_INFINITY, f64::max);
    let total: f64 = logs.iter().map(|l| (l - max).exp().re).sum();
    if total > 0.0 {
        max + total.ln()
    } else {
        f64::NEG_INFINITY
    }
}

fn l2_terms(symbol: &Symbol) -> Result<Vec<RadialTerm>> {
    let terms = symbol.radial_terms()?;
    let verdict = membership(symbol, SymbolClass::L2InfWeighted);
    if !verdict.member {
        return Err(Error::divergence(format!(
            "{} is not in L2-inf: {}",
            symbol, verdict.witness
        )));
    }
    Ok(terms)
}

/// `q_f(0), ..., q_f(len-1)`.
pub fn q_sequence(symbol: &Symbol, len: usize) -> Result<Vec<f64>> {
    let terms = l2_terms(symbol)?;
    (0..len)
        .map(|n| {
            let q = ln_q(&terms, n).exp();
            if q.is_finite() {
                Ok(q)
            } else {
                Err(Error::NonFinite(format!("q_f({n}) overflows for {symbol}")))
            }
        })
        .collect()
}

/// Partial sum of `A_f(x) = sum_n x^n q_f(n) / n!` with a ratio-test flag.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ASeries {
    pub x: f64,
    pub value: f64,
    pub converged: bool,
    /// Largest term ratio `t_{n+1}/t_n` over the last window.
    pub max_ratio: f64,
    /// Geometric bound on the omitted tail.
    pub tail_bound: f64,
    pub terms: usize,
}

/// Number of trailing term ratios inspected by the convergence test.
pub const A_SERIES_WINDOW: usize = 8;
/// Every ratio in the window must stay below this.
pub const A_SERIES_RATIO_MARGIN: f64 = 0.9;

pub fn a_series(symbol: &Symbol, x: f64, n_terms: usize, tol: f64) -> Result<ASeries> {
    if !(x >= 0.0 && x.is_finite()) {
        return Err(Error::domain(format!("A_f needs x >= 0, got {x}")));
    }
    if n_terms == 0 {
        return Err(Error::domain("A_f needs at least one term"));
    }
    let terms = l2_terms(symbol)?;
    if x == 0.0 {
        let value = ln_q(&terms, 0).exp();
        return Ok(ASeries {
            x,
            value,
            converged: value.is_finite(),
            max_ratio: 0.0,
            tail_bound: 0.0,
            terms: 1,
        });
    }
    let lnx = x.ln();
    let log_terms: Vec<f64> = (0..n_terms)
        .map(|n| n as f64 * lnx + ln_q(&terms, n) - ln_factorial(n as u64))
        .collect();
    let value: f64 = log_terms.iter().map(|l| l.exp()).sum();
    if !value.is_finite() {
        return Err(Error::NonFinite(format!("A_f({x}) overflows for {symbol}")));
    }
    let window = A_SERIES_WINDOW.min(n_terms - 1);
    let ratios: Vec<f64> = log_terms[n_terms - 1 - window..]
        .windows(2)
        .map(|w| (w[1] - w[0]).exp())
        .collect();
    let max_ratio = ratios.iter().copied().fold(0.0, f64::max);
    let last = log_terms[n_terms - 1].exp();
    let tail_bound = if max_ratio < 1.0 {
        last * max_ratio / (1.0 - max_ratio)
    } else {
        f64::INFINITY
    };
    let converged = window == A_SERIES_WINDOW
        && max_ratio < A_SERIES_RATIO_MARGIN
        && tail_bound <= tol * value.max(1.0);
    Ok(ASeries {
        x,
        value,
        converged,
        max_ratio,
        tail_bound,
        terms: n_terms,
    })
}
