//! Small dense complex matrices and a cyclic Jacobi eigensolver for the
//! Hermitian case.
//!
//! Every matrix in this crate is at most 16x16, so a row-major `Vec` with
//! straightforward triple loops is all the machinery needed.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Off-diagonal Frobenius norm (relative to the full norm) at which the
/// Jacobi sweeps stop.
pub const JACOBI_TOLERANCE: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 64;

/// Square complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major entries; panics if the length is not a
    /// perfect square.
    pub fn from_row_major(entries: Vec<Complex64>) -> Self {
        let dim = (entries.len() as f64).sqrt().round() as usize;
        assert_eq!(dim * dim, entries.len(), "entry count is not a square");
        Self { dim, data: entries }
    }

    pub fn from_rows<const N: usize>(rows: [[Complex64; N]; N]) -> Self {
        Self {
            dim: N,
            data: rows.iter().flat_map(|r| r.iter().copied()).collect(),
        }
    }

    /// `|v⟩⟨w|`
    pub fn outer(v: &[Complex64], w: &[Complex64]) -> Self {
        assert_eq!(v.len(), w.len());
        let dim = v.len();
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = v[i] * w[j].conj();
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    pub fn kron(&self, other: &Self) -> Self {
        let n = self.dim * other.dim;
        let mut m = Self::zeros(n);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let a = self[(i, j)];
                if a == ZERO {
                    continue;
                }
                for k in 0..other.dim {
                    for l in 0..other.dim {
                        m[(i * other.dim + k, j * other.dim + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// Largest entry-wise deviation between the matrix and its adjoint.
    pub fn hermiticity_residual(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Largest entry-wise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in product");
        let n = self.dim;
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    m.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        m
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim);
        CMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim);
        CMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Eigenvalues (descending) and matching orthonormal eigenvectors of a
/// Hermitian matrix. `vectors[k]` belongs to `values[k]`.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<Complex64>>,
}

impl HermitianEigen {
    /// Rebuilds `Σ f(λ_k) |v_k⟩⟨v_k|`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let dim = self.values.len();
        let mut m = CMatrix::zeros(dim);
        for (lambda, v) in self.values.iter().zip(&self.vectors) {
            let w = f(*lambda);
            if w == 0.0 {
                continue;
            }
            for i in 0..dim {
                for j in 0..dim {
                    m[(i, j)] += v[i] * v[j].conj() * w;
                }
            }
        }
        m
    }
}

/// Diagonalizes a Hermitian matrix with cyclic complex Jacobi rotations.
///
/// Only the upper triangle's relation to the lower one is trusted to within
/// rounding; callers are expected to pass Hermitian input.
pub fn hermitian_eigen(matrix: &CMatrix) -> Result<HermitianEigen> {
    if !matrix.is_finite() {
        return Err(Error::NonFinite);
    }
    let n = matrix.dim();
    let mut a = matrix.clone();
    // Symmetrize so tiny rounding asymmetries cannot stall the rotations.
    for i in 0..n {
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let avg = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }
    let mut v = CMatrix::identity(n);
    let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);

    let off_norm = |a: &CMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                s += 2.0 * a[(i, j)].norm_sqr();
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    let mut previous = f64::INFINITY;
    loop {
        let off = off_norm(&a);
        // Past the tolerance, keep sweeping only while rotations still pay off.
        let converged = off <= JACOBI_TOLERANCE * scale;
        if off == 0.0 || (converged && (off <= 1e-3 * JACOBI_TOLERANCE * scale || off > 0.5 * previous)) {
            break;
        }
        if sweeps >= JACOBI_MAX_SWEEPS {
            if converged {
                break;
            }
            return Err(Error::Convergence {
                dim: n,
                sweeps,
                residual: off,
            });
        }
        previous = off;
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                jacobi_rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let values = order.iter().map(|&k| a[(k, k)].re).collect();
    let vectors = order
        .iter()
        .map(|&k| (0..n).map(|i| v[(i, k)]).collect())
        .collect();
    Ok(HermitianEigen { values, vectors })
}

/// Zeroes `a[p][q]` with a unitary rotation `J`, replacing `a` by `J† a J`
/// and accumulating `v ← v J`.
fn jacobi_rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let g = apq.norm();
    if g < 1e-300 {
        return;
    }
    let n = a.dim();
    let phase = apq / g;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * g);
    let t = if theta.is_infinite() {
        0.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let s_fwd = phase * s; // J[p][q]
    let s_back = phase.conj() * s; // -J[q][p]

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * s_back;
        a[(k, q)] = akp * s_fwd + akq * c;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * s_fwd;
        a[(q, k)] = apk * s_back + aqk * c;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * s_back;
        v[(k, q)] = vkp * s_fwd + vkq * c;
    }
}

/// Eigenvalues of a 2x2 Hermitian matrix from the characteristic quadratic,
/// larger first.
pub fn hermitian_eigenvalues_2x2(m: &CMatrix) -> [f64; 2] {
    debug_assert_eq!(m.dim(), 2);
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let b = (m[(0, 1)] + m[(1, 0)].conj()) * 0.5;
    let mean = 0.5 * (a + d);
    let half_gap = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    [mean + half_gap, mean - half_gap]
}

/// Singular values of an arbitrary square matrix, descending, computed as the
/// non-negative eigenvalues of the Hermitian dilation `[[0, A], [A†, 0]]`.
/// Small singular values keep absolute accuracy at the rounding level, which
/// squaring into `A A†` would destroy.
pub fn singular_values(m: &CMatrix) -> Result<Vec<f64>> {
    let n = m.dim();
    let mut dilation = CMatrix::zeros(2 * n);
    for i in 0..n {
        for j in 0..n {
            dilation[(i, n + j)] = m[(i, j)];
            dilation[(n + j, i)] = m[(i, j)].conj();
        }
    }
    let eig = hermitian_eigen(&dilation)?;
    Ok(eig.values[..n].iter().map(|s| s.max(0.0)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_input_is_returned_sorted() {
        let m = CMatrix::from_diagonal(&[0.2, 0.5, 0.3]);
        let eig = hermitian_eigen(&m).unwrap();
        assert_eq!(eig.values, vec![0.5, 0.3, 0.2]);
    }

    #[test]
    fn complex_2x2_against_quadratic() {
        let m = CMatrix::from_rows([[c(0.6, 0.0), c(0.1, -0.2)], [c(0.1, 0.2), c(0.4, 0.0)]]);
        let eig = hermitian_eigen(&m).unwrap();
        let closed = hermitian_eigenvalues_2x2(&m);
        assert!((eig.values[0] - closed[0]).abs() < 1e-14);
        assert!((eig.values[1] - closed[1]).abs() < 1e-14);
    }

    #[test]
    fn eigenvectors_reconstruct_the_matrix() {
        let m = CMatrix::from_rows([
            [c(2.0, 0.0), c(0.5, 0.5), c(0.0, -1.0)],
            [c(0.5, -0.5), c(1.0, 0.0), c(0.3, 0.0)],
            [c(0.0, 1.0), c(0.3, 0.0), c(-1.0, 0.0)],
        ]);
        let eig = hermitian_eigen(&m).unwrap();
        let back = eig.reconstruct_with(|x| x);
        assert!(back.max_abs_diff(&m) < 1e-13);
        for (lambda, vec) in eig.values.iter().zip(&eig.vectors) {
            let mv = m.mul_vec(vec);
            for (x, y) in mv.iter().zip(vec) {
                assert!((x - y * lambda).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn singular_values_of_rank_one() {
        let v = [c(0.6, 0.0), c(0.0, 0.8)];
        let m = CMatrix::outer(&v, &v).scale(c(3.0, 0.0));
        let sv = singular_values(&m).unwrap();
        assert!((sv[0] - 3.0).abs() < 1e-14);
        assert!(sv[1].abs() < 1e-15);
    }

    #[test]
    fn kron_of_identities() {
        let i2 = CMatrix::identity(2);
        assert_eq!(i2.kron(&i2), CMatrix::identity(4));
    }

    #[test]
    fn non_finite_input_is_rejected() {
        let mut m = CMatrix::identity(2);
        m[(0, 1)] = c(f64::NAN, 0.0);
        assert_eq!(hermitian_eigen(&m).unwrap_err(), Error::NonFinite);
    }
}
