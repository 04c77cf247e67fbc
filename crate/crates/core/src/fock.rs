//! Truncations of Fock-space objects in the basis `e_n = z^n / sqrt(n!)`.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::quadrature::{gamma_closed_form, GammaSequence};
use crate::report::{complex_vec, format_f64, ComplexJson};
use crate::special::{ln_factorial, monomial_matrix_element};
use crate::symbols::{membership, Polynomial, Symbol, SymbolClass};
use crate::{Error, Result};

pub const DEFAULT_TRUNCATION: usize = 64;

fn zero() -> C64 {
    C64::new(0.0, 0.0)
}

/// Coefficients `c_n` of `f = sum c_n e_n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FockVector {
    #[serde(with = "complex_vec")]
    coeffs: Vec<C64>,
}

impl FockVector {
    pub fn new(coeffs: Vec<C64>) -> Self {
        FockVector { coeffs }
    }

    /// `e_n` inside a truncation of dimension `dim`.
    pub fn basis(n: usize, dim: usize) -> Self {
        let mut coeffs = vec![zero(); dim.max(n + 1)];
        coeffs[n] = C64::new(1.0, 0.0);
        FockVector { coeffs }
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `<self, other> = sum a_n conj(b_n)`, linear in the first slot.
    pub fn inner(&self, other: &FockVector) -> C64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a * b.conj())
            .sum()
    }

    /// The analytic polynomial `sum c_n z^n / sqrt(n!)`.
    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::from_terms(self.coeffs.iter().enumerate().map(|(n, &c)| {
            ((n as u32, 0), c * (-0.5 * ln_factorial(n as u64)).exp())
        }))
    }
}

/// `c_n = conj(a)^n / sqrt(n!)`, the expansion of `K_a(z) = e^{z conj(a)}`.
pub fn coherent_coefficients(a: C64, dim: usize) -> FockVector {
    let ab = a.conj();
    let mut coeffs = Vec::with_capacity(dim);
    let mut c = C64::new(1.0, 0.0);
    for n in 0..dim {
        if n > 0 {
            c = c * ab / (n as f64).sqrt();
        }
        coeffs.push(c);
    }
    FockVector { coeffs }
}

/// `e_0(z), ..., e_{dim-1}(z)` by the recursion `e_n = e_{n-1} z / sqrt(n)`.
fn basis_values(z: C64, dim: usize) -> Vec<C64> {
    let mut out = Vec::with_capacity(dim);
    let mut e = C64::new(1.0, 0.0);
    for n in 0..dim {
        if n > 0 {
            e = e * z / (n as f64).sqrt();
        }
        out.push(e);
    }
    out
}

/// `f(z) = sum c_n z^n / sqrt(n!)`.
pub fn eval_fock(f: &FockVector, z: C64) -> C64 {
    f.coeffs
        .iter()
        .zip(basis_values(z, f.dim()))
        .map(|(c, e)| c * e)
        .sum()
}

/// Remainder bound `|v conj(z)|^N / N! * e^{|v||z|}` of the coherent-state series.
pub fn coherent_tail_bound(v: C64, z: C64, dim: usize) -> f64 {
    let x = v.norm() * z.norm();
    if x == 0.0 {
        return if dim == 0 { 1.0 } else { 0.0 };
    }
    (dim as f64 * x.ln() - ln_factorial(dim as u64) + x).exp()
}

fn required_truncation(v: C64, z: C64, tol: f64) -> usize {
    (1..100_000)
        .find(|&n| coherent_tail_bound(v, z, n) < tol)
        .unwrap_or(100_000)
}

/// `N x N` matrix with entry `(m, n) = <A e_n, e_m>`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedOperator {
    entries: DMatrix<C64>,
}

impl TruncatedOperator {
    pub fn from_matrix(entries: DMatrix<C64>) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::domain("operator matrices must be square"));
        }
        Ok(TruncatedOperator { entries })
    }

    pub fn identity(dim: usize) -> Self {
        TruncatedOperator {
            entries: DMatrix::identity(dim, dim),
        }
    }

    pub fn diagonal(diag: &[C64]) -> Self {
        TruncatedOperator {
            entries: DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(diag)),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.entries
    }

    pub fn get(&self, m: usize, n: usize) -> C64 {
        self.entries[(m, n)]
    }

    pub fn apply(&self, f: &FockVector) -> FockVector {
        let dim = self.dim();
        let mut out = vec![zero(); dim];
        for (n, c) in f.coeffs.iter().take(dim).enumerate() {
            if *c == zero() {
                continue;
            }
            for (m, slot) in out.iter_mut().enumerate() {
                *slot += self.entries[(m, n)] * c;
            }
        }
        FockVector { coeffs: out }
    }

    pub fn compose(&self, other: &TruncatedOperator) -> TruncatedOperator {
        TruncatedOperator {
            entries: &self.entries * &other.entries,
        }
    }

    pub fn adjoint(&self) -> TruncatedOperator {
        TruncatedOperator {
            entries: self.entries.adjoint(),
        }
    }

    pub fn sub(&self, other: &TruncatedOperator) -> TruncatedOperator {
        TruncatedOperator {
            entries: &self.entries - &other.entries,
        }
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_diagonal(&self) -> bool {
        let dim = self.dim();
        (0..dim).all(|m| (0..dim).all(|n| m == n || self.entries[(m, n)] == zero()))
    }

    pub fn diagonal_entries(&self) -> Vec<C64> {
        (0..self.dim()).map(|i| self.entries[(i, i)]).collect()
    }

    /// `max |A - A^dagger|` entrywise.
    pub fn hermiticity_defect(&self) -> f64 {
        self.sub(&self.adjoint()).max_abs()
    }

    /// Ascending eigenvalues of a Hermitian truncation.
    pub fn hermitian_eigenvalues(&self, tol: f64) -> Result<Vec<f64>> {
        let defect = self.hermiticity_defect();
        if defect > tol * self.max_abs().max(1.0) {
            return Err(Error::domain(format!("matrix is not Hermitian (defect {defect:e})")));
        }
        let mut ev: Vec<f64> = self.entries.clone().symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        Ok(ev)
    }

    /// Row-major complex pairs.
    pub fn to_json(&self) -> MatrixJson {
        let dim = self.dim();
        MatrixJson {
            dim,
            row_major: (0..dim)
                .flat_map(|m| (0..dim).map(move |n| (m, n)))
                .map(|(m, n)| self.entries[(m, n)].into())
                .collect(),
        }
    }

    /// `m,n,re,im` lines with a header.
    pub fn to_csv(&self) -> String {
        let dim = self.dim();
        let mut out = String::from("m,n,re,im\n");
        for m in 0..dim {
            for n in 0..dim {
                let c = self.entries[(m, n)];
                out.push_str(&format!("{},{},{},{}\n", m, n, format_f64(c.re), format_f64(c.im)));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub row_major: Vec<ComplexJson>,
}

impl MatrixJson {
    pub fn to_operator(&self) -> Result<TruncatedOperator> {
        if self.row_major.len() != self.dim * self.dim {
            return Err(Error::domain("row_major length must be dim^2"));
        }
        Ok(TruncatedOperator {
            entries: DMatrix::from_row_iterator(
                self.dim,
                self.dim,
                self.row_major.iter().map(|&c| C64::from(c)),
            ),
        })
    }
}

/// `T_{z^j zbar^k}`: entry `(n+j-k, n)` equals `(n+j)!/sqrt(n! m!)`, all others vanish.
fn polynomial_matrix(p: &Polynomial, dim: usize) -> DMatrix<C64> {
    let mut out = DMatrix::from_element(dim, dim, zero());
    for ((j, k), c) in p.terms() {
        for n in 0..dim {
            let target = n as i64 + j as i64 - k as i64;
            if target < 0 || target >= dim as i64 {
                continue;
            }
            out[(target as usize, n)] += c * monomial_matrix_element(n as u64, j as u64, k as u64);
        }
    }
    out
}

/// Truncation of `T_phi`.
///
/// Radial symbols give `diag(gamma(0..N))`; polynomial terms use the exact
/// monomial matrix elements; combinations are assembled term by term.
pub fn toeplitz_matrix(symbol: &Symbol, dim: usize) -> Result<TruncatedOperator> {
    if symbol.is_radial() {
        let gamma = gamma_closed_form(symbol, dim)?;
        return Ok(TruncatedOperator::diagonal(&gamma.values));
    }
    let entries = match symbol {
        Symbol::BivariatePolynomial(p) => polynomial_matrix(p, dim),
        Symbol::Combination(c) => {
            let mut acc = DMatrix::from_element(dim, dim, zero());
            for (w, s) in c.terms() {
                acc += toeplitz_matrix(s, dim)?.entries * *w;
            }
            acc
        }
        _ => unreachable!("monomials and exponentials are radial"),
    };
    Ok(TruncatedOperator { entries })
}

/// Toeplitz matrix of a radial symbol from an already computed gamma sequence.
pub fn diagonal_from_gamma(gamma: &GammaSequence) -> TruncatedOperator {
    TruncatedOperator::diagonal(&gamma.values)
}

/// Creation `a* e_n = sqrt(n+1) e_{n+1}` and annihilation `a e_n = sqrt(n) e_{n-1}`.
pub fn ladder_matrices(dim: usize) -> Result<(TruncatedOperator, TruncatedOperator)> {
    if dim < 2 {
        return Err(Error::domain("ladder operators need N >= 2"));
    }
    let mut create = DMatrix::from_element(dim, dim, zero());
    let mut annihilate = DMatrix::from_element(dim, dim, zero());
    for n in 0..dim - 1 {
        let s = C64::new(((n + 1) as f64).sqrt(), 0.0);
        create[(n + 1, n)] = s;
        annihilate[(n, n + 1)] = s;
    }
    Ok((
        TruncatedOperator { entries: create },
        TruncatedOperator { entries: annihilate },
    ))
}

/// `M_a f(z) = a f(a z)`, i.e. `diag(a^{n+1})`.
pub fn scaling_operator(a: C64, dim: usize) -> TruncatedOperator {
    let diag: Vec<C64> = (0..dim).map(|n| a.powi(n as i32 + 1)).collect();
    TruncatedOperator::diagonal(&diag)
}

/// `(A K_v)(z) / K_v(z)` on the truncation.
///
/// Refuses `(v, z)` whose coherent-state tail bound reaches `tol`, naming the
/// truncation that would suffice.
pub fn wick_symbol_numeric(a: &TruncatedOperator, v: C64, z: C64, tol: f64) -> Result<C64> {
    let dim = a.dim();
    let bound = coherent_tail_bound(v, z, dim);
    if !(bound < tol) {
        let required = required_truncation(v, z, tol);
        return Err(Error::Accuracy {
            message: format!(
                "coherent-state tail bound {bound:e} >= {tol:e} at N = {dim}; need N >= {required}"
            ),
            required_n: Some(required),
        });
    }
    let applied = a.apply(&coherent_coefficients(v, dim));
    let value = eval_fock(&applied, z) / (z * v.conj()).exp();
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite(format!("Wick symbol at v = {v}, z = {z}")))
    }
}

/// Largest singular value of the truncation.
pub fn norm_estimate(a: &TruncatedOperator) -> f64 {
    if a.is_diagonal() {
        return a.diagonal_entries().iter().map(|c| c.norm()).fold(0.0, f64::max);
    }
    a.entries
        .clone()
        .singular_values()
        .iter()
        .copied()
        .fold(0.0, f64::max)
}

/// Distinct values of a gamma prefix. Never the closure of the full sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrefixSpectrum {
    pub label: String,
    pub prefix_len: usize,
    #[serde(with = "complex_vec")]
    pub points: Vec<C64>,
    pub multiplicities: Vec<usize>,
}

pub const PREFIX_SPECTRUM_LABEL: &str = "prefix of spectrum";

/// Values `gamma(n)` in order of first appearance, merging entries within `tol`.
pub fn spectrum_radial(gamma: &GammaSequence, tol: f64) -> PrefixSpectrum {
    let mut points: Vec<C64> = Vec::new();
    let mut multiplicities: Vec<usize> = Vec::new();
    for v in &gamma.values {
        match points
            .iter()
            .position(|p| (p - v).norm() <= tol * p.norm().max(1.0))
        {
            Some(i) => multiplicities[i] += 1,
            None => {
                points.push(*v);
                multiplicities.push(1);
            }
        }
    }
    PrefixSpectrum {
        label: PREFIX_SPECTRUM_LABEL.to_string(),
        prefix_len: gamma.len(),
        points,
        multiplicities,
    }
}

/// `R* {c_n} = sum c_n z^n / sqrt(n!)` on truncated sequences.
pub fn r_star(seq: &[C64]) -> FockVector {
    FockVector::new(seq.to_vec())
}

/// `R f = {c_n}` for an analytic truncation.
pub fn r_map(f: &FockVector) -> Vec<C64> {
    f.coeffs.clone()
}

/// `R` on a polynomial in `L^2(dmu)`:
/// `(R phi)_n = (1/sqrt(n!)) int phi zbar^n dmu = sum_k c_{n+k,k} (n+k)!/sqrt(n!)`.
pub fn r_of_polynomial(p: &Polynomial, dim: usize) -> Vec<C64> {
    let mut out = vec![zero(); dim];
    for ((j, k), c) in p.terms() {
        if j < k {
            continue;
        }
        let n = (j - k) as usize;
        if n >= dim {
            continue;
        }
        out[n] += c * (ln_factorial(j as u64) - 0.5 * ln_factorial(n as u64)).exp();
    }
    out
}

/// `P = R* R` applied to a polynomial in `L^2(dmu)`.
pub fn project_polynomial(p: &Polynomial, dim: usize) -> FockVector {
    r_star(&r_of_polynomial(p, dim))
}

/// `T_phi f = P(phi f)` for a polynomial symbol and an analytic truncation.
pub fn toeplitz_apply_via_projection(phi: &Polynomial, f: &FockVector, dim: usize) -> FockVector {
    project_polynomial(&phi.mul(&f.to_polynomial()), dim)
}

/// Symbols admissible for `toeplitz_matrix`: radial L1-inf members or polynomials.
pub fn check_toeplitz_admissible(symbol: &Symbol) -> Result<()> {
    if symbol.is_radial() && !membership(symbol, SymbolClass::L1InfWeighted).member {
        return Err(Error::divergence(format!("{symbol} is not in L1-inf")));
    }
    Ok(())
}
