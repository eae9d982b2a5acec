//! Dense complex linear algebra.
//!
//! Everything here works on small row-major matrices of `Complex64`:
//! products, LU with partial pivoting, Faddeev–LeVerrier characteristic
//! polynomials, cyclic Jacobi for Hermitian spectra, and the helpers used
//! by the period search (powering, distance to identity, unitary
//! re-projection).

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const HERMITIAN_TOL: f64 = 1e-10;
pub const GROUPING_TOL: f64 = 1e-7;
pub const IDENTITY_TOL: f64 = 1e-9;

const JACOBI_OFF_TOL: f64 = 1e-12;
const JACOBI_MAX_SWEEPS: usize = 100;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ComplexMatrix { rows, cols, data }
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::domain(format!(
                "{} entries cannot fill a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    /// Real matrix from nested rows.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::domain("ragged rows"));
        }
        Ok(Self::from_fn(r, c, |i, j| Complex64::new(rows[i][j], 0.0)))
    }

    pub fn diagonal(values: &[Complex64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
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

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::domain(format!(
                "shape mismatch: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise `|a_ij - b_ij|`; infinite on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |M - M*|` entrywise. Infinite for non-square input.
    pub fn hermitian_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// `max |M M* - I|` entrywise.
    pub fn unitarity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let p = matmul(self, &self.adjoint()).expect("square");
        distance_to_identity(&p)
    }

    /// Permutes rows and columns: entry `(perm[i], perm[j])` of the result is
    /// entry `(i, j)` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::domain("permutation of a non-square matrix"));
        }
        crate::graph::check_permutation(perm, self.rows)?;
        let mut out = Self::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(perm[i], perm[j])] = self[(i, j)];
            }
        }
        Ok(out)
    }

    /// Nested `[re, im]` rows, the JSON dump format.
    pub fn to_pairs(&self) -> Vec<Vec<[f64; 2]>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|z| [z.re, z.im]).collect())
            .collect()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, " ")?;
            for z in self.row(i) {
                write!(f, " {:+.4}{:+.4}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

pub fn matmul(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.cols != b.rows {
        return Err(Error::domain(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut out = ComplexMatrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a[(i, k)];
            if aik == ZERO {
                continue;
            }
            let brow = b.row(k);
            let orow = &mut out.data[i * b.cols..(i + 1) * b.cols];
            for (o, &bkj) in orow.iter_mut().zip(brow) {
                *o += aik * bkj;
            }
        }
    }
    Ok(out)
}

/// One powering step: `acc · u`.
pub fn matrix_power_step(u: &ComplexMatrix, acc: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !u.is_square() || u.rows != acc.rows || u.cols != acc.cols {
        return Err(Error::domain("power step needs square matrices of equal size"));
    }
    matmul(acc, u)
}

/// `u^k` by binary powering.
pub fn matrix_power(u: &ComplexMatrix, mut k: u64) -> Result<ComplexMatrix> {
    if !u.is_square() {
        return Err(Error::domain("power of a non-square matrix"));
    }
    let mut result = ComplexMatrix::identity(u.rows);
    let mut base = u.clone();
    while k > 0 {
        if k & 1 == 1 {
            result = matmul(&result, &base)?;
        }
        k >>= 1;
        if k > 0 {
            base = matmul(&base, &base)?;
        }
    }
    Ok(result)
}

/// `max |M - I|` entrywise.
pub fn distance_to_identity(m: &ComplexMatrix) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..m.rows {
        for j in 0..m.cols {
            let target = if i == j { ONE } else { ZERO };
            worst = worst.max((m[(i, j)] - target).norm());
        }
    }
    worst
}

/// LU factorization `P A = L U` with partial pivoting.
#[derive(Clone, Debug)]
pub struct Lu {
    n: usize,
    // L below the diagonal (unit diagonal implied), U on and above
    factors: ComplexMatrix,
    perm: Vec<usize>,
    sign: f64,
    singular: bool,
}

impl Lu {
    pub fn new(m: &ComplexMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::domain(format!(
                "LU of a non-square {}x{} matrix",
                m.rows, m.cols
            )));
        }
        let n = m.rows;
        let mut a = m.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        let mut singular = false;
        for k in 0..n {
            let (p, pivot_abs) = (k..n)
                .map(|i| (i, a[(i, k)].norm()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pivot_abs == 0.0 {
                singular = true;
                continue;
            }
            if p != k {
                for j in 0..n {
                    a.data.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let pivot = a[(k, k)];
            for i in k + 1..n {
                let f = a[(i, k)] / pivot;
                a[(i, k)] = f;
                if f == ZERO {
                    continue;
                }
                for j in k + 1..n {
                    let akj = a[(k, j)];
                    a[(i, j)] -= f * akj;
                }
            }
        }
        Ok(Lu {
            n,
            factors: a,
            perm,
            sign,
            singular,
        })
    }

    pub fn determinant(&self) -> Complex64 {
        if self.singular {
            return ZERO;
        }
        (0..self.n).fold(Complex64::new(self.sign, 0.0), |acc, i| {
            acc * self.factors[(i, i)]
        })
    }

    /// Solves `A X = B`.
    pub fn solve(&self, b: &ComplexMatrix) -> Result<ComplexMatrix> {
        if b.rows != self.n {
            return Err(Error::domain("right-hand side has the wrong number of rows"));
        }
        if self.singular {
            return Err(Error::domain("matrix is singular"));
        }
        let n = self.n;
        let mut x = ComplexMatrix::from_fn(n, b.cols, |i, j| b[(self.perm[i], j)]);
        for c in 0..b.cols {
            for i in 0..n {
                let mut s = x[(i, c)];
                for k in 0..i {
                    s -= self.factors[(i, k)] * x[(k, c)];
                }
                x[(i, c)] = s;
            }
            for i in (0..n).rev() {
                let mut s = x[(i, c)];
                for k in i + 1..n {
                    s -= self.factors[(i, k)] * x[(k, c)];
                }
                x[(i, c)] = s / self.factors[(i, i)];
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<ComplexMatrix> {
        self.solve(&ComplexMatrix::identity(self.n))
    }
}

pub fn determinant(m: &ComplexMatrix) -> Result<Complex64> {
    Ok(Lu::new(m)?.determinant())
}

/// One Newton step toward the nearest unitary: `X ← (X + (X*)⁻¹) / 2`.
pub fn reunitarize(x: &ComplexMatrix) -> Result<ComplexMatrix> {
    let inv_adj = Lu::new(&x.adjoint())?.inverse()?;
    Ok(x.add(&inv_adj)?.scale(Complex64::new(0.5, 0.0)))
}

/// Monic polynomial with complex coefficients stored low-to-high.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        Polynomial { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Polynomial {
            coeffs: coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Coefficients `c_0..c_n`.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `λ^k`.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    /// `a_l` in `λ^n + a_1 λ^{n-1} + … + a_n`.
    pub fn a(&self, l: usize) -> Complex64 {
        let n = self.degree();
        if l > n {
            ZERO
        } else {
            self.coeff(n - l)
        }
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * x + c)
    }

    /// Largest coefficientwise difference; infinite if degrees differ.
    pub fn max_coeff_diff(&self, other: &Polynomial) -> f64 {
        if self.coeffs.len() != other.coeffs.len() {
            return f64::INFINITY;
        }
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Polynomial, tol: f64) -> bool {
        self.max_coeff_diff(other) < tol
    }

    /// Number of leading coefficients `a_1, a_2, …` that agree within `tol`
    /// before the first disagreement.
    pub fn leading_agreement(&self, other: &Polynomial, tol: f64) -> usize {
        if self.degree() != other.degree() {
            return 0;
        }
        (1..=self.degree())
            .take_while(|&l| (self.a(l) - other.a(l)).norm() < tol)
            .count()
    }
}

/// Characteristic polynomial `det(λI - M)` by the Faddeev–LeVerrier
/// recurrence `M_k = A M_{k-1} + c_{n-k+1} I`, `c_{n-k} = -tr(A M_k) / k`.
pub fn charpoly(m: &ComplexMatrix) -> Result<Polynomial> {
    if !m.is_square() {
        return Err(Error::domain(format!(
            "characteristic polynomial of a non-square {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let n = m.rows;
    let mut coeffs = vec![ZERO; n + 1];
    coeffs[n] = ONE;
    let mut mk = ComplexMatrix::zeros(n, n);
    for k in 1..=n {
        let mut next = matmul(m, &mk)?;
        for i in 0..n {
            next[(i, i)] += coeffs[n - k + 1];
        }
        mk = next;
        let am = matmul(m, &mk)?;
        coeffs[n - k] = -am.trace() / k as f64;
    }
    Ok(Polynomial { coeffs })
}

/// Eigenvalues with multiplicities, sorted by real then imaginary part.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    entries: Vec<(Complex64, usize)>,
}

impl Spectrum {
    /// Groups `values` whose consecutive sorted distance is below `tol`;
    /// each group is represented by its mean.
    pub fn group(mut values: Vec<Complex64>, tol: f64) -> Self {
        values.sort_by(|a, b| {
            a.re.partial_cmp(&b.re)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(a.im.partial_cmp(&b.im).unwrap_or(std::cmp::Ordering::Equal))
        });
        let mut entries: Vec<(Complex64, usize)> = Vec::new();
        let mut group: Vec<Complex64> = Vec::new();
        for v in values {
            if let Some(&last) = group.last() {
                if (v - last).norm() >= tol {
                    entries.push(mean_entry(&group));
                    group.clear();
                }
            }
            group.push(v);
        }
        if !group.is_empty() {
            entries.push(mean_entry(&group));
        }
        Spectrum { entries }
    }

    pub fn from_real(values: &[f64], tol: f64) -> Self {
        Self::group(values.iter().map(|&x| Complex64::new(x, 0.0)).collect(), tol)
    }

    pub fn entries(&self) -> &[(Complex64, usize)] {
        &self.entries
    }

    pub fn dimension(&self) -> usize {
        self.entries.iter().map(|e| e.1).sum()
    }

    /// Eigenvalues repeated by multiplicity.
    pub fn values(&self) -> Vec<Complex64> {
        self.entries
            .iter()
            .flat_map(|&(v, m)| std::iter::repeat_n(v, m))
            .collect()
    }

    pub fn real_values(&self) -> Vec<f64> {
        self.values().iter().map(|z| z.re).collect()
    }

    /// Total multiplicity of eigenvalues within `tol` of `target`.
    pub fn multiplicity_near(&self, target: Complex64, tol: f64) -> usize {
        self.entries
            .iter()
            .filter(|e| (e.0 - target).norm() < tol)
            .map(|e| e.1)
            .sum()
    }

    /// `Σ μ^k` over the multiset.
    pub fn power_sum(&self, k: u32) -> Complex64 {
        self.entries
            .iter()
            .map(|&(v, m)| v.powu(k) * m as f64)
            .sum()
    }
}

fn mean_entry(group: &[Complex64]) -> (Complex64, usize) {
    let sum: Complex64 = group.iter().sum();
    (sum / group.len() as f64, group.len())
}

/// Real eigenvalues of a Hermitian matrix, ascending, by cyclic complex
/// Jacobi rotations.
pub fn hermitian_eigenvalues_sorted(m: &ComplexMatrix) -> Result<Vec<f64>> {
    if !m.is_square() {
        return Err(Error::contract("eigenvalues of a non-square matrix"));
    }
    let defect = m.hermitian_defect();
    if defect >= HERMITIAN_TOL {
        return Err(Error::contract(format!(
            "matrix is not Hermitian (defect {defect:.3e})"
        )));
    }
    let n = m.rows;
    let mut a = m.clone();
    for i in 0..n {
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
    }
    for _sweep in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) < JACOBI_OFF_TOL {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                jacobi_rotate(&mut a, p, q);
            }
        }
    }
    let mut values: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    values.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    Ok(values)
}

/// Grouped Hermitian spectrum.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Spectrum> {
    let values = hermitian_eigenvalues_sorted(m)?;
    Ok(Spectrum::from_real(&values, GROUPING_TOL))
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let mut s = 0.0;
    for i in 0..a.rows {
        for j in 0..a.cols {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Annihilates `a[p][q]` with the unitary `G = diag(1, e^{-iφ}) R(θ)` acting
/// on coordinates `p, q`, where `a[p][q] = r e^{iφ}` and `R` is the real
/// symmetric Jacobi rotation for `[[a_pp, r], [r, a_qq]]`.
fn jacobi_rotate(a: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r < 1e-300 {
        return;
    }
    let phase = apq / r;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let zeta = (aqq - app) / (2.0 * r);
    let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    // columns of G
    let g_pp = Complex64::new(c, 0.0);
    let g_pq = Complex64::new(s, 0.0);
    let g_qp = -phase.conj() * s;
    let g_qq = phase.conj() * c;
    let n = a.rows;
    // A ← A G
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * g_pp + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * g_qq;
    }
    // A ← G* A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
}
