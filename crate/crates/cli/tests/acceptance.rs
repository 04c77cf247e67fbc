//! Acceptance suite. One line per criterion; nonzero exit if any fails.
//!
//! Run with `cargo test -p fock-toeplitz-cli --test acceptance`.

use std::process::Command;
use std::time::Instant;

use num_complex::Complex64 as C64;

use fock_toeplitz::calculus::{diamond, fit_gaussian_wick, heat_transform, wick_from_gamma};
use fock_toeplitz::composition::{
    audit_hypotheses, classify_obstruction, compose_radial, worked_example_beta, worked_example_symbol, ObstructionCase,
    DEFAULT_CASE_TOL, DEFAULT_X_SAMPLES,
};
use fock_toeplitz::fock::{
    ladder_matrices, norm_estimate, project_polynomial, r_map, r_of_polynomial, r_star, spectrum_radial, toeplitz_matrix,
    wick_symbol_numeric,
};
use fock_toeplitz::quadrature::{gamma_closed_form, gamma_sequence, GammaMethod, QuadratureOptions};
use fock_toeplitz::symbols::{Polynomial, Symbol};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn failure<E: std::fmt::Display>(e: E) -> Outcome {
    outcome(false, format!("error: {e}"))
}

fn quadrature_closed_form() -> Outcome {
    let start = Instant::now();
    let g = match gamma_sequence(&worked_example_symbol(), 41, GammaMethod::Quadrature, QuadratureOptions::default()) {
        Ok(g) => g,
        Err(e) => return failure(e),
    };
    let elapsed = start.elapsed().as_secs_f64();
    let beta = worked_example_beta();
    let (worst_n, worst) = g
        .values
        .iter()
        .enumerate()
        .map(|(n, v)| (n, (v - beta.powu(n as u32 + 1)).norm()))
        .fold((0, 0.0), |a, b| if b.1 > a.1 { b } else { a });
    let first_bad = g
        .values
        .iter()
        .enumerate()
        .position(|(n, v)| (v - beta.powu(n as u32 + 1)).norm() > 1e-9);
    outcome(
        worst <= 1e-9 && elapsed < 2.0,
        format!(
            "max abs error {worst:.3e} at n = {worst_n} (bound 1e-9), first n above bound: {first_bad:?}, runtime {elapsed:.3} s"
        ),
    )
}

fn wick_constants() -> Outcome {
    let phi = worked_example_symbol();
    let rep = match compose_radial(&phi, &phi, 64, &DEFAULT_X_SAMPLES, 1e-10) {
        Ok(r) => r,
        Err(e) => return failure(e),
    };
    let fit = match fit_gaussian_wick(&rep.gamma_tau, 2.0, 25, 1e-12) {
        Ok(f) => f,
        Err(e) => return failure(e),
    };
    let case = classify_obstruction(fit.k, DEFAULT_CASE_TOL).case;
    let d1 = (fit.k_abs_sq - 2.56).abs();
    let d2 = (fit.two_re_k - 2.56).abs();
    outcome(
        d1 <= 1e-6 && d2 <= 1e-6 && case == ObstructionCase::Case1,
        format!("K = {}, ||K|^2 - 64/25| = {d1:.2e}, |2Re K - 64/25| = {d2:.2e}, case {case:?}", fit.k),
    )
}

fn diamond_homomorphism() -> Outcome {
    let mut worst: f64 = 0.0;
    for a in 0..=3 {
        for b in 0..=3 {
            let phi = Symbol::radial_monomial(a);
            let psi = Symbol::radial_monomial(b);
            let d = match diamond(&phi, &psi) {
                Ok(d) => d,
                Err(e) => return failure(e),
            };
            let (gd, gp, gq) = match (gamma_closed_form(&d, 32), gamma_closed_form(&phi, 32), gamma_closed_form(&psi, 32)) {
                (Ok(x), Ok(y), Ok(z)) => (x, y, z),
                _ => return outcome(false, "gamma computation failed".into()),
            };
            for n in 0..32 {
                worst = worst.max((gd.values[n] - gp.values[n] * gq.values[n]).norm());
            }
        }
    }
    outcome(worst <= 1e-8, format!("max deviation {worst:.3e} over a, b <= 3, n < 32"))
}

fn unitary_chain() -> Outcome {
    let s = Symbol::radial_monomial(1);
    let m = match toeplitz_matrix(&s, 32) {
        Ok(m) => m,
        Err(e) => return failure(e),
    };
    let mut dev: f64 = 0.0;
    for i in 0..32 {
        for j in 0..32 {
            let expected = if i == j { (i + 1) as f64 } else { 0.0 };
            dev = dev.max((m.get(i, j) - c(expected, 0.0)).norm());
        }
    }
    let g = gamma_closed_form(&s, 32).unwrap();
    let spec = spectrum_radial(&g, 1e-10);
    let spec_ok = spec.points.len() == 32
        && spec
            .points
            .iter()
            .enumerate()
            .all(|(i, p)| (p - c((i + 1) as f64, 0.0)).norm() <= 1e-10);
    let eig = m.hermitian_eigenvalues(1e-12).unwrap_or_default();
    let eig_dev = eig
        .iter()
        .enumerate()
        .map(|(i, e)| (e - (i + 1) as f64).abs())
        .fold(0.0, f64::max);
    outcome(
        dev <= 1e-10 && spec_ok && eig.len() == 32 && eig_dev <= 1e-10,
        format!("matrix deviation {dev:.2e}, prefix spectrum 1..32: {spec_ok}, eigenvalue deviation {eig_dev:.2e}"),
    )
}

fn wick_triangle() -> Outcome {
    let s = Symbol::radial_monomial(1);
    let g = gamma_closed_form(&s, 64).unwrap();
    let h = heat_transform(&s, 1.0).unwrap();
    let t = toeplitz_matrix(&s, 64).unwrap();
    let mut worst: f64 = 0.0;
    for r in [0.0, 0.5, 1.0, 1.5] {
        let z = c(r, 0.0);
        let a = match wick_from_gamma(&g, r, 1e-12) {
            Ok(v) => v,
            Err(e) => return failure(e),
        };
        let b = h.evaluate(z).unwrap();
        let w = match wick_symbol_numeric(&t, z, z, 1e-12) {
            Ok(v) => v,
            Err(e) => return failure(e),
        };
        let expected = c(1.0 + r * r, 0.0);
        worst = worst
            .max((a - b).norm())
            .max((a - w).norm())
            .max((b - w).norm())
            .max((a - expected).norm());
    }
    outcome(worst <= 1e-8, format!("max pairwise deviation {worst:.3e} on r in {{0, 0.5, 1, 1.5}}"))
}

fn structural_identities() -> Outcome {
    let dim = 24;
    let seq: Vec<C64> = (0..dim).map(|n| c(n as f64 - 3.5, 0.25 * n as f64)).collect();
    let rr_exact = r_map(&r_star(&seq)) == seq;
    // Same identity through the integral form of R; equal up to rounding.
    let via_integral = r_of_polynomial(&r_star(&seq).to_polynomial(), dim);
    let rr_dev = via_integral
        .iter()
        .zip(&seq)
        .map(|(a, b)| (a - b).norm() / b.norm().max(1.0))
        .fold(0.0, f64::max);

    let p = Polynomial::from_terms([
        ((0, 2), c(1.0, 1.0)),
        ((3, 1), c(-2.0, 0.0)),
        ((2, 2), c(0.5, 0.0)),
        ((1, 0), c(0.0, 3.0)),
    ]);
    let once = project_polynomial(&p, dim);
    let twice = project_polynomial(&once.to_polynomial(), dim);
    let idem_dev = once
        .coeffs()
        .iter()
        .zip(twice.coeffs())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);

    let (create, annihilate) = ladder_matrices(dim).unwrap();
    let comm = annihilate.compose(&create).sub(&create.compose(&annihilate));
    let mut comm_dev: f64 = 0.0;
    for i in 0..dim - 1 {
        for j in 0..dim - 1 {
            let expected = if i == j { 1.0 } else { 0.0 };
            comm_dev = comm_dev.max((comm.get(i, j) - c(expected, 0.0)).norm());
        }
    }

    let real = Symbol::sum([
        (c(1.0, 0.0), Symbol::polynomial(Polynomial::from_terms([((2, 1), c(1.0, 2.0)), ((1, 2), c(1.0, -2.0))]))),
        (c(0.5, 0.0), Symbol::radial_exponential(c(-0.3, 0.0))),
        (c(2.0, 0.0), Symbol::radial_monomial(2)),
    ]);
    let herm = toeplitz_matrix(&real, dim).unwrap().hermiticity_defect();

    let nonneg = [
        Symbol::radial_monomial(2),
        Symbol::radial_exponential(c(-1.0, 0.0)),
        Symbol::sum([(c(1.0, 0.0), Symbol::one()), (c(1.0, 0.0), Symbol::radial_monomial(1))]),
    ];
    let diag_ok = nonneg.iter().all(|s| {
        toeplitz_matrix(s, dim)
            .map(|m| m.is_diagonal() && m.diagonal_entries().iter().all(|d| d.re >= 0.0 && d.im == 0.0))
            .unwrap_or(false)
    });

    outcome(
        rr_exact && rr_dev <= 1e-13 && idem_dev == 0.0 && comm_dev <= 1e-12 && herm <= 1e-12 && diag_ok,
        format!(
            "RR* = I on coefficients {rr_exact}, via integral form {rr_dev:.2e}, P^2 - P {idem_dev:.2e}, commutator {comm_dev:.2e}, hermiticity {herm:.2e}, nonnegative diagonals {diag_ok}"
        ),
    )
}

fn norm_sandwich() -> Outcome {
    let s = Symbol::radial_exponential(c(-1.0, 0.0));
    let op = toeplitz_matrix(&s, 64).unwrap();
    let norm = norm_estimate(&op);
    let mut sup_wick: f64 = 0.0;
    for i in 0..=60 {
        let v = c(0.05 * i as f64, 0.0);
        match wick_symbol_numeric(&op, v, v, 1e-12) {
            Ok(w) => sup_wick = sup_wick.max(w.norm()),
            Err(e) => return failure(e),
        }
    }
    let sup_symbol = 1.0;
    outcome(
        sup_wick <= norm + 1e-6 && norm <= sup_symbol + 1e-6,
        format!("grid sup |Wick| on [0, 3] = {sup_wick:.12}, norm estimate = {norm:.12}, sup |phi| = {sup_symbol}"),
    )
}

fn classifier_boundary() -> Outcome {
    let a = classify_obstruction(c(1.0, 1.0), DEFAULT_CASE_TOL);
    let b = classify_obstruction(c(3.0, 0.0), DEFAULT_CASE_TOL);
    let k = classify_obstruction(c(32.0 / 25.0, 24.0 / 25.0), DEFAULT_CASE_TOL);
    outcome(
        a.case == ObstructionCase::NoneAsserted
            && b.case == ObstructionCase::Case2
            && (b.margin - 3.0).abs() <= 1e-12
            && k.case == ObstructionCase::Case1,
        format!(
            "1+i -> {:?}; 3 -> {:?} margin {}; 32/25+24i/25 -> {:?}",
            a.case, b.case, b.margin, k.case
        ),
    )
}

fn hypothesis_audit() -> Outcome {
    let zz = Symbol::radial_monomial(1);
    let a = match audit_hypotheses(&zz, &zz, 64, &DEFAULT_X_SAMPLES, 1e-10) {
        Ok(a) => a,
        Err(e) => return failure(e),
    };
    let phi = worked_example_symbol();
    let p = match audit_hypotheses(&phi, &phi, 64, &DEFAULT_X_SAMPLES, 1e-10) {
        Ok(a) => a,
        Err(e) => return failure(e),
    };
    let out = Command::new(env!("CARGO_BIN_EXE_fock-toeplitz"))
        .args(["verify-paper-example", "-N", "40"])
        .output();
    let (cli_ok, cli_detail) = match out {
        Ok(o) if o.status.success() => {
            let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap_or_default();
            let holds = v["hypotheses_all_hold"].as_bool() == Some(true);
            let case1 = v["obstruction"]["case"].as_str() == Some("Case1");
            (holds && case1, format!("CLI reports hypotheses hold = {holds}, Case1 = {case1}"))
        }
        Ok(o) => (false, format!("CLI exit {:?}", o.status.code())),
        Err(e) => (false, format!("CLI not runnable: {e}")),
    };
    let slope = a.hyp2.growth_exponent;
    outcome(
        !a.hyp2.holds && (slope - 2.0).abs() <= 0.2 && p.all_hold && cli_ok,
        format!(
            "|z|^2: hyp2 holds = {}, growth exponent {slope:.4}; exponential example: all hold = {}; {cli_detail}",
            a.hyp2.holds, p.all_hold
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 quadrature gamma of the exponential example vs closed form", quadrature_closed_form),
        ("2 fitted Wick constant K and Case1", wick_constants),
        ("3 gamma homomorphism for the diamond product", diamond_homomorphism),
        ("4 Toeplitz matrix of |z|^2 and its prefix spectrum", unitary_chain),
        ("5 Wick consistency triangle", wick_triangle),
        ("6 structural identities", structural_identities),
        ("7 norm sandwich for e^{-r^2}", norm_sandwich),
        ("8 obstruction classifier boundary", classifier_boundary),
        ("9 hypothesis audit and verify command", hypothesis_audit),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!("{} criterion {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
