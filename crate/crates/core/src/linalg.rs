//! Exact integer matrices (arbitrary precision), characteristic polynomials,
//! power traces, exact rationals, and a floating-point symmetric eigensolver.
//!
//! Everything spectral that feeds an exact result (trace sums, characteristic
//! polynomials, divisibility) is computed over big integers or rationals;
//! floating point appears only in [`eigenvalues_symmetric`], whose results
//! always travel with their tolerance.

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::SignedGraph;

/// Errors raised by matrix and polynomial operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("division by the zero polynomial")]
    DivisionByZeroPolynomial,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("Jacobi iteration did not converge within the sweep limit")]
    NoConvergence,
}

/// Dense matrix with arbitrary-precision integer entries, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut m = ExactMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, BigInt::from(f(i, j)));
            }
        }
        m
    }

    /// Signed adjacency matrix: entry (u, v) is the sign of edge {u+1, v+1},
    /// or 0 when absent.
    pub fn adjacency(g: &SignedGraph) -> Self {
        let mut m = ExactMatrix::zeros(g.n(), g.n());
        for e in g.edges() {
            let val = BigInt::from(e.sign.value());
            m.set(e.u - 1, e.v - 1, val.clone());
            m.set(e.v - 1, e.u - 1, val);
        }
        m
    }

    /// Signed Laplacian D − A, where D is the (unsigned) degree diagonal.
    pub fn laplacian(g: &SignedGraph) -> Self {
        let mut m = ExactMatrix::adjacency(g).scaled(&BigInt::from(-1));
        for v in 1..=g.n() {
            m.set(v - 1, v - 1, BigInt::from(g.degree(v) as i64));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = ExactMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn add(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn sub(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scaled(&self, c: &BigInt) -> ExactMatrix {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::SizeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = ExactMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Trace; the matrix must be square.
    pub fn trace(&self) -> BigInt {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    fn check_same_shape(&self, other: &ExactMatrix) -> Result<(), LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::SizeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// Entries converted to f64 (entries of the matrices this crate builds
    /// are tiny; the conversion is exact).
    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j).to_f64().expect("entry convertible to f64"))
                    .collect()
            })
            .collect()
    }
}

/// Traces of the matrix powers M^0, M^1, …, M^up_to (inclusive), computed by
/// exact iterated multiplication.
pub fn power_traces(m: &ExactMatrix, up_to: usize) -> Vec<BigInt> {
    assert!(m.is_square(), "power traces of a non-square matrix");
    let mut traces = Vec::with_capacity(up_to + 1);
    traces.push(BigInt::from(m.rows() as i64));
    let mut p = ExactMatrix::identity(m.rows());
    for _ in 1..=up_to {
        p = p.mul(m).expect("square sizes agree");
        traces.push(p.trace());
    }
    traces
}

/// Returns true when the two square matrices have equal size and commute.
pub fn commute(a: &ExactMatrix, b: &ExactMatrix) -> Result<bool, LinalgError> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(LinalgError::SizeMismatch(format!(
            "commutation needs equal square matrices, got {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    Ok(a.mul(b)? == b.mul(a)?)
}

/// Polynomial with arbitrary-precision integer coefficients, ascending by
/// degree; the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactPolynomial {
    coeffs: Vec<BigInt>,
}

impl ExactPolynomial {
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map(Zero::is_zero).unwrap_or(false) {
            coeffs.pop();
        }
        ExactPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        ExactPolynomial { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficients ascending by degree (empty for the zero polynomial).
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Evaluate at an integer point.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn mul(&self, other: &ExactPolynomial) -> ExactPolynomial {
        if self.is_zero() || other.is_zero() {
            return ExactPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        ExactPolynomial::from_coeffs(coeffs)
    }
}

impl fmt::Display for ExactPolynomial {
    /// Human-readable form, highest degree first: `x^4 - 6x^2 + 5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
                first = false;
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let show_coeff = d == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match d {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{d}")?,
            }
        }
        Ok(())
    }
}

/// Characteristic polynomial det(xI − M) of a square matrix, monic, computed
/// exactly by the Faddeev–LeVerrier recurrence (all interior divisions are
/// exact and checked).
pub fn char_poly(m: &ExactMatrix) -> ExactPolynomial {
    assert!(m.is_square(), "characteristic polynomial of a non-square matrix");
    let n = m.rows();
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    if n == 0 {
        return ExactPolynomial::from_coeffs(c);
    }
    let mut aux = m.clone();
    c[n - 1] = -aux.trace();
    for k in 2..=n {
        // aux ← M(aux + c_{n−k+1} I)
        let mut shifted = aux;
        for i in 0..n {
            let v = shifted.get(i, i) + &c[n - k + 1];
            shifted.set(i, i, v);
        }
        aux = m.mul(&shifted).expect("square sizes agree");
        let tr = aux.trace();
        let (q, r) = tr.div_rem(&BigInt::from(k as i64));
        assert!(r.is_zero(), "Faddeev-LeVerrier division must be exact");
        c[n - k] = -q;
    }
    ExactPolynomial::from_coeffs(c)
}

/// Result of exact polynomial division over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyDivision {
    /// True when the remainder is zero.
    pub divides: bool,
    /// The quotient, present when the division is exact and the quotient has
    /// integer coefficients (always the case for monic divisors).
    pub quotient: Option<ExactPolynomial>,
}

/// Tests whether `den` divides `num` over the rationals, by long division.
pub fn poly_divides(num: &ExactPolynomial, den: &ExactPolynomial) -> Result<PolyDivision, LinalgError> {
    if den.is_zero() {
        return Err(LinalgError::DivisionByZeroPolynomial);
    }
    if num.is_zero() {
        return Ok(PolyDivision {
            divides: true,
            quotient: Some(ExactPolynomial::zero()),
        });
    }
    let nd = num.degree().unwrap();
    let dd = den.degree().unwrap();
    if nd < dd {
        return Ok(PolyDivision {
            divides: false,
            quotient: None,
        });
    }
    let to_rat = |p: &ExactPolynomial| -> Vec<BigRational> {
        p.coeffs()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect()
    };
    let mut rem = to_rat(num);
    let den_r = to_rat(den);
    let lead = den_r.last().unwrap().clone();
    let mut quot = vec![BigRational::zero(); nd - dd + 1];
    for step in (0..=nd - dd).rev() {
        let factor = &rem[step + dd] / &lead;
        if !factor.is_zero() {
            for (j, dc) in den_r.iter().enumerate() {
                let delta = &factor * dc;
                rem[step + j] -= delta;
            }
        }
        quot[step] = factor;
    }
    let divides = rem.iter().all(Zero::is_zero);
    let quotient = if divides && quot.iter().all(|q| q.is_integer()) {
        Some(ExactPolynomial::from_coeffs(
            quot.into_iter().map(|q| q.to_integer()).collect(),
        ))
    } else {
        None
    };
    Ok(PolyDivision { divides, quotient })
}

/// An exact rational number (always in lowest terms, positive denominator).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn new(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        ExactRational(BigRational::new(num, den))
    }

    pub fn from_integer(v: i64) -> Self {
        ExactRational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(BigInt::from(num), BigInt::from(den))
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }

    pub fn from_big(r: BigRational) -> Self {
        ExactRational(r)
    }

    pub fn add(&self, other: &ExactRational) -> ExactRational {
        ExactRational(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &ExactRational) -> ExactRational {
        ExactRational(&self.0 - &other.0)
    }

    pub fn mul(&self, other: &ExactRational) -> ExactRational {
        ExactRational(&self.0 * &other.0)
    }

    pub fn to_f64(&self) -> f64 {
        // Numerators can exceed f64 range in principle; divide as BigInts
        // first when needed.
        self.0
            .to_f64()
            .unwrap_or_else(|| panic!("rational not representable: {self}"))
    }

    /// Fixed-point decimal string with `digits` places, rounding half away
    /// from zero (e.g. 1944/2821 → "0.6891" with 4 digits).
    pub fn decimal(&self, digits: u32) -> String {
        let scale = BigInt::from(10u32).pow(digits);
        let scaled = &self.0 * BigRational::from_integer(scale.clone());
        let num = scaled.numer();
        let den = scaled.denom();
        let (q, r) = num.div_rem(den);
        let double_r: BigInt = r.abs() * 2;
        let mut rounded = q.clone();
        if double_r >= den.abs() {
            if num.is_negative() {
                rounded -= 1;
            } else {
                rounded += 1;
            }
        }
        let neg = rounded.is_negative();
        let mag = rounded.abs();
        let (int_part, frac_part) = mag.div_rem(&scale);
        let sign = if neg { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!(
                "{sign}{int_part}.{frac:0>width$}",
                frac = frac_part.to_string(),
                width = digits as usize
            )
        }
    }
}

impl fmt::Display for ExactRational {
    /// `p/q`, or just `p` when the value is an integer.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Serialize for ExactRational {
    /// Serializes as {"num": "...", "den": "...", "approx": float} so exact
    /// values survive JSON round-trips.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ExactRational", 3)?;
        s.serialize_field("num", &self.numer().to_string())?;
        s.serialize_field("den", &self.denom().to_string())?;
        s.serialize_field("approx", &self.to_f64())?;
        s.end()
    }
}

/// Eigenvalues of a symmetric matrix, ascending, with the tolerance they
/// were computed to.
#[derive(Debug, Clone, Serialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub tol: f64,
}

impl Spectrum {
    /// True when the spectrum equals its own negation as a multiset, up to
    /// `tol` per eigenvalue.
    pub fn symmetric_about_zero(&self, tol: f64) -> bool {
        let n = self.eigenvalues.len();
        (0..n).all(|i| (self.eigenvalues[i] + self.eigenvalues[n - 1 - i]).abs() <= tol)
    }

    /// True when both spectra have the same length and agree entrywise
    /// (ascending order) up to `tol`.
    pub fn close_to(&self, other: &Spectrum, tol: f64) -> bool {
        self.eigenvalues.len() == other.eigenvalues.len()
            && self
                .eigenvalues
                .iter()
                .zip(&other.eigenvalues)
                .all(|(a, b)| (a - b).abs() <= tol)
    }

    /// True when `other` is a sub-multiset of `self`, matching each value to
    /// a distinct eigenvalue within `tol` (both lists ascending, greedy).
    pub fn contains(&self, other: &Spectrum, tol: f64) -> bool {
        let mut i = 0;
        'outer: for &x in &other.eigenvalues {
            while i < self.eigenvalues.len() {
                let y = self.eigenvalues[i];
                i += 1;
                if (x - y).abs() <= tol {
                    continue 'outer;
                }
                if y > x + tol {
                    return false;
                }
            }
            return false;
        }
        true
    }

    pub fn max_abs(&self) -> f64 {
        self.eigenvalues
            .iter()
            .fold(0.0_f64, |acc, &x| acc.max(x.abs()))
    }
}

/// Symmetric eigendecomposition by cyclic Jacobi rotations.
///
/// Returns eigenvalues ascending together with an orthogonal matrix whose
/// column j (i.e. `vectors[i][j]` over i) is the eigenvector for eigenvalue
/// j, so A ≈ V diag(λ) Vᵀ.
pub fn symmetric_eigen(
    m: &ExactMatrix,
    tol: f64,
) -> Result<(Spectrum, Vec<Vec<f64>>), LinalgError> {
    if !m.is_symmetric() {
        return Err(LinalgError::NotSymmetric);
    }
    let n = m.rows();
    let mut a = m.to_f64();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();

    let off_norm = |a: &Vec<Vec<f64>>| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                s += a[i][j] * a[i][j];
            }
        }
        (2.0 * s).sqrt()
    };
    let initial = off_norm(&a);
    let target = tol * initial.max(1.0);

    let mut converged = initial <= target;
    for _sweep in 0..100 {
        if converged {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    -1.0 / (-theta + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for i in 0..n {
                    let (aip, aiq) = (a[i][p], a[i][q]);
                    a[i][p] = c * aip - s * aiq;
                    a[i][q] = s * aip + c * aiq;
                }
                for j in 0..n {
                    let (apj, aqj) = (a[p][j], a[q][j]);
                    a[p][j] = c * apj - s * aqj;
                    a[q][j] = s * apj + c * aqj;
                }
                for i in 0..n {
                    let (vip, viq) = (v[i][p], v[i][q]);
                    v[i][p] = c * vip - s * viq;
                    v[i][q] = s * vip + c * viq;
                }
            }
        }
        if off_norm(&a) <= target {
            converged = true;
        }
    }
    if !converged {
        return Err(LinalgError::NoConvergence);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i][i].partial_cmp(&a[j][j]).expect("finite eigenvalues"));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[i][i]).collect();
    let vectors: Vec<Vec<f64>> = (0..n)
        .map(|i| order.iter().map(|&j| v[i][j]).collect())
        .collect();
    Ok((Spectrum { eigenvalues, tol }, vectors))
}

/// Eigenvalues of a symmetric integer matrix, ascending.
pub fn eigenvalues_symmetric(m: &ExactMatrix, tol: f64) -> Result<Spectrum, LinalgError> {
    symmetric_eigen(m, tol).map(|(s, _)| s)
}

/// Default tolerance for floating-point spectra.
pub const DEFAULT_TOL: f64 = 1e-12;
