//! Composition of radial Toeplitz operators: hypothesis audit, product
//! gamma sequences, symbol reconstruction and the Gaussian obstruction test.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::calculus::{diamond, fit_gaussian_wick, GaussianFit};
use crate::fock::{scaling_operator, wick_symbol_numeric};
use crate::quadrature::{gamma_closed_form, gamma_sequence, GammaMethod, GammaSequence, QuadratureOptions};
use crate::report::complex;
use crate::special::{binomial, rising};
use crate::symbols::{a_series, q_sequence, ASeries, MembershipVerdict, Polynomial, Symbol, SymbolClass};
use crate::{Error, Result};

/// Default absolute tolerance for the circle condition `|theta|^2 = 2 Re theta`.
pub const DEFAULT_CASE_TOL: f64 = 1e-9;
/// Sample points for the `A_f` convergence check.
pub const DEFAULT_X_SAMPLES: [f64; 4] = [0.5, 1.0, 2.0, 4.0];
/// Basis label carried by every boundedness verdict.
pub const PREFIX_BASIS: &str = "prefix-based";

const A_SERIES_START: usize = 64;
const A_SERIES_MAX: usize = 8192;
const MAX_POLY_DEGREE: usize = 12;

// ---------------------------------------------------------------------------
// Obstruction classifier

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ObstructionCase {
    /// `|theta|^2 = 2 Re theta` and `Re theta > 1`.
    Case1,
    /// `|theta|^2 > 2 Re theta`.
    Case2,
    NoneAsserted,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObstructionVerdict {
    #[serde(with = "complex")]
    pub theta: C64,
    pub case: ObstructionCase,
    /// Distance from the boundary of the region defining the case.
    pub margin: f64,
    /// `|theta|^2 - 2 Re theta`.
    pub circle_defect: f64,
    pub tol: f64,
}

/// Classifies the Wick parameter `theta` of `e^{-theta |z|^2}`.
///
/// Case2 reports `|theta|^2 - 2 Re theta` as its margin. Case1 reports
/// `Re theta - 1`. Otherwise the margin is the smallest distance to a case.
pub fn classify_obstruction(theta: C64, tol: f64) -> ObstructionVerdict {
    let d = theta.norm_sqr() - 2.0 * theta.re;
    let (case, margin) = if d.abs() <= tol && theta.re > 1.0 + tol {
        (ObstructionCase::Case1, theta.re - 1.0)
    } else if d > tol {
        (ObstructionCase::Case2, d)
    } else if d.abs() <= tol {
        (ObstructionCase::NoneAsserted, (1.0 - theta.re).max(0.0))
    } else {
        (ObstructionCase::NoneAsserted, -d)
    };
    ObstructionVerdict {
        theta,
        case,
        margin,
        circle_defect: d,
        tol,
    }
}

// ---------------------------------------------------------------------------
// Hypotheses

/// Finite-prefix evidence that a gamma sequence is bounded.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundednessVerdict {
    pub holds: bool,
    pub label: String,
    pub basis: String,
    pub prefix_len: usize,
    pub max_abs: f64,
    pub argmax: usize,
    pub tail_nonincreasing: bool,
    /// Least-squares slope of `ln|gamma(n)|` against `ln(n+1)` on `[N/2, N)`.
    pub growth_exponent: f64,
    pub caveat: Option<String>,
}

/// Bounded when the maximum is attained before `N/2` and `|gamma|` does not
/// increase over the last quartile (both to relative tolerance `tol`).
pub fn boundedness(gamma: &GammaSequence, tol: f64) -> BoundednessVerdict {
    let mods: Vec<f64> = gamma.values.iter().map(|v| v.norm()).collect();
    let n = mods.len();
    let half = n / 2;
    let (argmax, max_abs) = mods
        .iter()
        .copied()
        .enumerate()
        .fold((0, 0.0), |(i, m), (j, v)| if v > m { (j, v) } else { (i, m) });
    let first_max = mods[..half].iter().copied().fold(0.0, f64::max);
    let second_max = mods[half..].iter().copied().fold(0.0, f64::max);
    let early_max = n >= 2 && second_max <= first_max * (1.0 + tol) + tol;
    let tail_nonincreasing = mods[n - n / 4..]
        .windows(2)
        .all(|w| w[1] <= w[0] * (1.0 + tol) + tol);
    let holds = early_max && tail_nonincreasing;
    let caveat = match &gamma.source {
        Some(s) if !s.is_real_valued() => Some(
            "boundedness criterion applied to a complex-valued symbol; its if-and-only-if form is stated for real symbols"
                .to_string(),
        ),
        _ => None,
    };
    BoundednessVerdict {
        holds,
        label: if holds { "bounded" } else { "unbounded (trend)" }.to_string(),
        basis: PREFIX_BASIS.to_string(),
        prefix_len: n,
        max_abs,
        argmax,
        tail_nonincreasing,
        growth_exponent: growth_exponent(&mods),
        caveat,
    }
}

fn growth_exponent(mods: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = (mods.len() / 2..mods.len())
        .filter(|&i| mods[i] > 0.0)
        .map(|i| (((i + 1) as f64).ln(), mods[i].ln()))
        .collect();
    if pts.len() < 2 {
        return 0.0;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// `phi` in the weighted L2 class, `q_phi` finite and `A_phi(x)` convergent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct L2Verdict {
    pub holds: bool,
    pub membership: MembershipVerdict,
    pub q_finite: bool,
    pub q_max: Option<f64>,
    pub a_series: Vec<ASeries>,
    pub message: Option<String>,
}

fn l2_verdict(phi: &Symbol, len: usize, x_samples: &[f64], tol: f64) -> L2Verdict {
    let membership = phi.membership(SymbolClass::L2InfWeighted);
    if !membership.member {
        return L2Verdict {
            holds: false,
            membership,
            q_finite: false,
            q_max: None,
            a_series: Vec::new(),
            message: Some("symbol is not in the weighted L2 class".to_string()),
        };
    }
    let (q_finite, q_max, mut message) = match q_sequence(phi, len) {
        Ok(q) => (true, Some(q.iter().copied().fold(0.0, f64::max)), None),
        Err(e) => (false, None, Some(e.to_string())),
    };
    let mut series = Vec::new();
    for &x in x_samples {
        match a_series_adaptive(phi, x, tol) {
            Ok(s) => series.push(s),
            Err(e) => {
                message.get_or_insert_with(|| e.to_string());
            }
        }
    }
    let holds = q_finite && series.len() == x_samples.len() && series.iter().all(|s| s.converged);
    L2Verdict {
        holds,
        membership,
        q_finite,
        q_max,
        a_series: series,
        message,
    }
}

fn a_series_adaptive(phi: &Symbol, x: f64, tol: f64) -> Result<ASeries> {
    let mut n = A_SERIES_START;
    loop {
        let s = a_series(phi, x, n, tol)?;
        if s.converged || n >= A_SERIES_MAX {
            return Ok(s);
        }
        n *= 2;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisAudit {
    /// `gamma_psi` bounded.
    pub hyp1: BoundednessVerdict,
    /// `gamma_phi * gamma_psi` bounded.
    pub hyp2: BoundednessVerdict,
    /// `phi` in weighted L2 with convergent `A_phi`.
    pub hyp3: L2Verdict,
    pub all_hold: bool,
}

fn radial_l1_gamma(symbol: &Symbol, len: usize, name: &str) -> Result<GammaSequence> {
    if !symbol.is_radial() {
        return Err(Error::domain(format!("{name} = {symbol} is not radial")));
    }
    gamma_closed_form(symbol, len)
}

fn audit_with(
    phi: &Symbol,
    gamma_psi: &GammaSequence,
    gamma_tau: &GammaSequence,
    x_samples: &[f64],
    tol: f64,
) -> HypothesisAudit {
    let hyp1 = boundedness(gamma_psi, tol);
    let hyp2 = boundedness(gamma_tau, tol);
    let hyp3 = l2_verdict(phi, gamma_tau.len(), x_samples, tol);
    let all_hold = hyp1.holds && hyp2.holds && hyp3.holds;
    HypothesisAudit { hyp1, hyp2, hyp3, all_hold }
}

/// Checks the three composition hypotheses on the `n`-prefix.
pub fn audit_hypotheses(phi: &Symbol, psi: &Symbol, n: usize, x_samples: &[f64], tol: f64) -> Result<HypothesisAudit> {
    if n < 4 {
        return Err(Error::domain("hypothesis audit needs a prefix of length >= 4"));
    }
    let gp = radial_l1_gamma(phi, n, "phi")?;
    let gq = radial_l1_gamma(psi, n, "psi")?;
    let mut tau = gp.product(&gq);
    tau.source = None;
    Ok(audit_with(phi, &gq, &tau, x_samples, tol))
}

// ---------------------------------------------------------------------------
// Reconstruction

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Reconstruction {
    /// `gamma(n) = sum_m d_m (n+1)...(n+m)`, so `a = sum_m d_m r^{2m}`.
    Polynomial {
        symbol: Symbol,
        #[serde(with = "crate::report::complex_vec")]
        rising_coefficients: Vec<C64>,
        residual: f64,
    },
    /// `gamma(n) = beta^{n+1}`, so `a = e^{lambda r^2}` with `lambda = 1 - 1/beta`.
    Exponential {
        symbol: Symbol,
        #[serde(with = "complex")]
        beta: C64,
        residual: f64,
    },
    /// Geometric with `Re lambda >= 1`: no symbol in the L1 class.
    OutsideL1Inf {
        #[serde(with = "complex")]
        beta: C64,
        #[serde(with = "complex")]
        lambda: C64,
        residual: f64,
    },
    /// Neither family fits; the gamma sequence is the canonical datum.
    None {
        polynomial_residual: f64,
        geometric_residual: f64,
    },
}

impl Reconstruction {
    pub fn symbol(&self) -> Option<&Symbol> {
        match self {
            Reconstruction::Polynomial { symbol, .. } | Reconstruction::Exponential { symbol, .. } => Some(symbol),
            _ => None,
        }
    }

    pub fn beta(&self) -> Option<C64> {
        match self {
            Reconstruction::Exponential { beta, .. } | Reconstruction::OutsideL1Inf { beta, .. } => Some(*beta),
            _ => None,
        }
    }
}

fn residual<F: Fn(usize) -> C64>(values: &[C64], model: F) -> f64 {
    values
        .iter()
        .enumerate()
        .map(|(n, v)| (model(n) - v).norm() / v.norm().max(1.0))
        .fold(0.0, f64::max)
}

fn rising_c(n: usize, m: usize) -> f64 {
    rising(n as u64, m as u64)
}

/// Interpolates the first `deg + 1` entries on the rising-factorial basis.
///
/// `Delta^k (n+1)_m` at `n = 0` is `m! C(m, k)`, so the forward differences
/// of the data determine `d_m` by back substitution.
fn rising_coefficients(values: &[C64], deg: usize) -> Vec<C64> {
    let mut diffs: Vec<C64> = values[..=deg].to_vec();
    let mut delta = Vec::with_capacity(deg + 1);
    for k in 0..=deg {
        delta.push(diffs[0]);
        for i in 0..deg - k {
            diffs[i] = diffs[i + 1] - diffs[i];
        }
    }
    let mut d = vec![C64::new(0.0, 0.0); deg + 1];
    for k in (0..=deg).rev() {
        let known: C64 = d
            .iter()
            .enumerate()
            .skip(k + 1)
            .map(|(m, dm)| dm * (rising(0, m as u64) * binomial(m as u64, k as u64)))
            .sum();
        d[k] = (delta[k] - known) / rising(0, k as u64);
    }
    d
}

/// Recognizes a gamma prefix as coming from a radial polynomial or a radial
/// Gaussian. Each entry must match to relative tolerance `tol`.
pub fn reconstruct_symbol(gamma: &GammaSequence, tol: f64) -> Reconstruction {
    let values = &gamma.values;
    if values.is_empty() {
        return Reconstruction::None {
            polynomial_residual: f64::INFINITY,
            geometric_residual: f64::INFINITY,
        };
    }
    let max_deg = MAX_POLY_DEGREE.min(values.len().saturating_sub(2));
    let mut poly_best = f64::INFINITY;
    for deg in 0..=max_deg {
        let d = rising_coefficients(values, deg);
        let res = residual(values, |n| {
            d.iter().enumerate().map(|(m, dm)| dm * rising_c(n, m)).sum()
        });
        poly_best = poly_best.min(res);
        if res <= tol {
            let poly = Polynomial::from_terms(
                d.iter()
                    .enumerate()
                    .map(|(m, dm)| ((m as u32, m as u32), *dm)),
            );
            return Reconstruction::Polynomial {
                symbol: Symbol::polynomial(poly),
                rising_coefficients: d,
                residual: res,
            };
        }
    }
    let beta = values[0];
    let geometric_residual = if beta == C64::new(0.0, 0.0) {
        f64::INFINITY
    } else {
        residual(values, |n| beta.powu(n as u32 + 1))
    };
    if geometric_residual <= tol {
        let lambda = C64::new(1.0, 0.0) - beta.inv();
        return if lambda.re < 1.0 {
            Reconstruction::Exponential {
                symbol: Symbol::radial_exponential(lambda),
                beta,
                residual: geometric_residual,
            }
        } else {
            Reconstruction::OutsideL1Inf {
                beta,
                lambda,
                residual: geometric_residual,
            }
        };
    }
    Reconstruction::None {
        polynomial_residual: poly_best,
        geometric_residual,
    }
}

// ---------------------------------------------------------------------------
// Composition

/// `gamma_{phi <> psi}` against the product sequence for polynomial inputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiamondCheck {
    pub diamond: Symbol,
    pub max_abs_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompositionReport {
    pub phi: Symbol,
    pub psi: Symbol,
    pub truncation: usize,
    pub hyp1: BoundednessVerdict,
    pub hyp2: BoundednessVerdict,
    pub hyp3: L2Verdict,
    pub gamma_tau: GammaSequence,
    pub tau: Option<Symbol>,
    pub reconstruction: Reconstruction,
    pub obstruction: Option<ObstructionVerdict>,
    pub diamond_check: Option<DiamondCheck>,
    pub notes: Vec<String>,
}

impl CompositionReport {
    pub fn all_hypotheses_hold(&self) -> bool {
        self.hyp1.holds && self.hyp2.holds && self.hyp3.holds
    }
}

/// `T_phi T_psi` for radial symbols through the product of gamma sequences.
pub fn compose_radial(phi: &Symbol, psi: &Symbol, n: usize, x_samples: &[f64], tol: f64) -> Result<CompositionReport> {
    if n < 4 {
        return Err(Error::domain("composition needs a prefix of length >= 4"));
    }
    let gp = radial_l1_gamma(phi, n, "phi")?;
    let gq = radial_l1_gamma(psi, n, "psi")?;
    let mut gamma_tau = gp.product(&gq);
    gamma_tau.source = None;
    let audit = audit_with(phi, &gq, &gamma_tau, x_samples, tol);
    let reconstruction = reconstruct_symbol(&gamma_tau, tol);
    let mut notes = Vec::new();

    let diamond_check = match (phi.to_polynomial(), psi.to_polynomial()) {
        (Ok(_), Ok(_)) => {
            let d = diamond(phi, psi)?;
            let gd = gamma_closed_form(&d, n)?;
            let dev = gd
                .values
                .iter()
                .zip(&gamma_tau.values)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            notes.push(format!("gamma of the diamond product matches gamma_tau to {dev:e}"));
            Some(DiamondCheck {
                diamond: d,
                max_abs_deviation: dev,
            })
        }
        _ => None,
    };

    let obstruction = reconstruction.beta().map(|beta| {
        let theta = C64::new(1.0, 0.0) - beta;
        notes.push(format!(
            "gamma_tau is geometric with ratio beta = {beta}; Wick symbol of T_tau is beta e^{{-theta |z|^2}} with theta = 1 - beta"
        ));
        classify_obstruction(theta, DEFAULT_CASE_TOL)
    });
    match &reconstruction {
        Reconstruction::OutsideL1Inf { lambda, .. } => notes.push(format!(
            "geometric reconstruction gives lambda = {lambda} with Re lambda >= 1: outside L1Inf, no anti-Wick symbol in the class"
        )),
        Reconstruction::None { .. } => notes.push(
            "no closed-form family fits; gamma_tau is the canonical representation of T_tau".to_string(),
        ),
        _ => {}
    }
    if let Some(v) = &obstruction {
        if audit.all_hold && v.case != ObstructionCase::NoneAsserted {
            notes.push(format!(
                "all three composition hypotheses verify on the prefix while the obstruction classifier returns {:?}; both verdicts are reported without adjudication",
                v.case
            ));
        }
    }
    for caveat in [&audit.hyp1.caveat, &audit.hyp2.caveat].into_iter().flatten() {
        if !notes.contains(caveat) {
            notes.push(caveat.clone());
        }
    }

    Ok(CompositionReport {
        phi: phi.clone(),
        psi: psi.clone(),
        truncation: n,
        hyp1: audit.hyp1,
        hyp2: audit.hyp2,
        hyp3: audit.hyp3,
        tau: reconstruction.symbol().cloned(),
        gamma_tau,
        reconstruction,
        obstruction,
        diamond_check,
        notes,
    })
}

// ---------------------------------------------------------------------------
// Worked example

/// `e^{2(1+2i)/5 |z|^2}`.
pub fn worked_example_symbol() -> Symbol {
    Symbol::radial_exponential(C64::new(0.4, 0.8))
}

/// `(3+4i)/5`, the ratio of the example's gamma sequence.
pub fn worked_example_beta() -> C64 {
    C64::new(0.6, 0.8)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaComparison {
    pub quadrature: GammaSequence,
    /// `max_n |gamma_quad(n) - beta^{n+1}|`.
    pub quadrature_max_abs_error: f64,
    pub quadrature_argmax: usize,
    /// Largest `n0` such that every entry below it is within `1e-9` of the closed form.
    pub quadrature_accurate_prefix: usize,
    pub closed_form_max_abs_error: f64,
    /// `max_n ||gamma(n)| - 1|` from the closed form.
    pub unit_modulus_defect: f64,
}

/// The scaling operator `diag(beta^{n+1})` and its Wick symbol from the
/// ratio definition, compared against the series `sum beta^n ...`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingCheck {
    #[serde(with = "complex")]
    pub theta: C64,
    pub r: f64,
    #[serde(with = "complex")]
    pub ratio_definition: C64,
    /// `e^{-theta r^2}` from the series with `gamma(n) = (1 - theta)^n`.
    #[serde(with = "complex")]
    pub unit_prefactor_series: C64,
    /// `ratio_definition / unit_prefactor_series`, equal to `1 - theta`.
    #[serde(with = "complex")]
    pub prefactor: C64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExampleAudit {
    pub symbol: Symbol,
    pub truncation: usize,
    pub gamma: GammaComparison,
    pub composition: CompositionReport,
    pub fit: GaussianFit,
    pub obstruction: ObstructionVerdict,
    /// The example's stated `K`, classified on its own.
    pub stated_k: ObstructionVerdict,
    pub scaling: ScalingCheck,
    pub hypotheses_all_hold: bool,
    pub notes: Vec<String>,
}

/// Runs the full chain on `phi = e^{2(1+2i)/5 |z|^2}` composed with itself.
pub fn audit_paper_example(n: usize, tol: f64) -> Result<ExampleAudit> {
    let phi = worked_example_symbol();
    let beta = worked_example_beta();
    let closed = gamma_closed_form(&phi, n)?;
    let quad = gamma_sequence(&phi, n, GammaMethod::Quadrature, QuadratureOptions::default())?;
    let errs: Vec<f64> = quad
        .values
        .iter()
        .enumerate()
        .map(|(i, v)| (v - beta.powu(i as u32 + 1)).norm())
        .collect();
    let (quadrature_argmax, quadrature_max_abs_error) = errs
        .iter()
        .copied()
        .enumerate()
        .fold((0, 0.0), |(i, m), (j, e)| if e > m { (j, e) } else { (i, m) });
    let quadrature_accurate_prefix = errs.iter().position(|&e| !(e <= 1e-9)).unwrap_or(n);
    let closed_form_max_abs_error = closed
        .values
        .iter()
        .enumerate()
        .map(|(i, v)| (v - beta.powu(i as u32 + 1)).norm())
        .fold(0.0, f64::max);
    let unit_modulus_defect = closed.values.iter().map(|v| (v.norm() - 1.0).abs()).fold(0.0, f64::max);

    let composition = compose_radial(&phi, &phi, n, &DEFAULT_X_SAMPLES, tol)?;
    let fit = fit_gaussian_wick(&composition.gamma_tau, 2.0, 25, tol.min(1e-12))?;
    let obstruction = classify_obstruction(fit.k, DEFAULT_CASE_TOL);
    let stated = C64::new(32.0, 24.0) / 25.0;
    let stated_k = classify_obstruction(stated, DEFAULT_CASE_TOL);

    let theta = C64::new(1.0, 0.0) - beta;
    let r = 1.0;
    let z = C64::new(r, 0.0);
    let dim = n.max(64);
    let ratio_definition = wick_symbol_numeric(&scaling_operator(beta, dim), z, z, tol.min(1e-12))?;
    let unit_prefactor_series = (-theta * r * r).exp();
    let scaling = ScalingCheck {
        theta,
        r,
        ratio_definition,
        unit_prefactor_series,
        prefactor: ratio_definition / unit_prefactor_series,
    };

    let hypotheses_all_hold = composition.all_hypotheses_hold();
    let mut notes = vec![
        format!(
            "quadrature gamma matches beta^(n+1) to {quadrature_max_abs_error:e} (worst at n = {quadrature_argmax}); entries below n = {quadrature_accurate_prefix} are within 1e-9"
        ),
        format!("fitted K = {} with |K|^2 = {} and 2 Re K = {}", fit.k, fit.k_abs_sq, fit.two_re_k),
        format!(
            "the stated K = {stated} is the complex conjugate of the fitted K; both satisfy |K|^2 = 2 Re K = 64/25"
        ),
        format!(
            "Wick symbol of diag(beta^(n+1)) from the ratio definition equals (1 - theta) e^{{-theta r^2}}; measured prefactor {}",
            scaling.prefactor
        ),
        format!(
            "hypotheses all hold: {hypotheses_all_hold}; obstruction verdict on the composed Wick parameter: {:?}; the two are reported side by side",
            obstruction.case
        ),
    ];
    notes.extend(composition.notes.iter().cloned());

    Ok(ExampleAudit {
        symbol: phi,
        truncation: n,
        gamma: GammaComparison {
            quadrature: quad,
            quadrature_max_abs_error,
            quadrature_argmax,
            quadrature_accurate_prefix,
            closed_form_max_abs_error,
            unit_modulus_defect,
        },
        composition,
        fit,
        obstruction,
        stated_k,
        scaling,
        hypotheses_all_hold,
        notes,
    })
}
