//! Small dense complex matrices: Pauli operators, Kronecker products, a
//! Hermitian eigenvalue solver and the Shannon entropy of a spectrum.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::{Error, Result};

/// Entrywise tolerance for `M = M†`.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Tolerance on the unit trace of a density matrix.
pub const TRACE_TOL: f64 = 1e-12;
/// Eigenvalues / probabilities above `-NEGATIVE_TOL` are clamped to zero.
pub const NEGATIVE_TOL: f64 = 1e-10;
/// Tolerance on `Σp = 1` accepted by [`entropy_kernel`].
pub const NORMALIZATION_TOL: f64 = 1e-8;

const MAX_JACOBI_SWEEPS: usize = 64;

/// Square complex matrix stored row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMatrix<const N: usize>(pub [[Complex64; N]; N]);

pub type ComplexMatrix2 = ComplexMatrix<2>;
pub type ComplexMatrix4 = ComplexMatrix<4>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

impl<const N: usize> ComplexMatrix<N> {
    pub fn zeros() -> Self {
        Self([[ZERO; N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.0[i][i] = ONE;
        }
        m
    }

    pub fn from_real_diagonal(diag: [f64; N]) -> Self {
        let mut m = Self::zeros();
        for (i, d) in diag.into_iter().enumerate() {
            m.0[i][i] = Complex64::new(d, 0.0);
        }
        m
    }

    pub fn dagger(&self) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                out.0[i][j] = self.0[j][i].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..N).map(|i| self.0[i][i]).sum()
    }

    pub fn scale(&self, k: f64) -> Self {
        let mut out = *self;
        out.0.iter_mut().flatten().for_each(|z| *z *= k);
        out
    }

    /// Largest entrywise deviation `|M - M†|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..N {
            for j in i..N {
                worst = worst.max((self.0[i][j] - self.0[j][i].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermiticity_defect() <= HERMITIAN_TOL
    }

    /// Largest entrywise distance to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl<const N: usize> Index<(usize, usize)> for ComplexMatrix<N> {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.0[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for ComplexMatrix<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.0[i][j]
    }
}

impl<const N: usize> Add for ComplexMatrix<N> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (a, b) in self.0.iter_mut().flatten().zip(rhs.0.iter().flatten()) {
            *a += b;
        }
        self
    }
}

impl<const N: usize> Sub for ComplexMatrix<N> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (a, b) in self.0.iter_mut().flatten().zip(rhs.0.iter().flatten()) {
            *a -= b;
        }
        self
    }
}

impl<const N: usize> Mul for ComplexMatrix<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            for k in 0..N {
                let a = self.0[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..N {
                    out.0[i][j] += a * rhs.0[k][j];
                }
            }
        }
        out
    }
}

/// Pauli matrix σ₁, σ₂ or σ₃.
pub fn pauli(index: u8) -> Result<ComplexMatrix2> {
    match index {
        1 => Ok(ComplexMatrix([[ZERO, ONE], [ONE, ZERO]])),
        2 => Ok(ComplexMatrix([[ZERO, -I], [I, ZERO]])),
        3 => Ok(ComplexMatrix([[ONE, ZERO], [ZERO, -ONE]])),
        other => Err(Error::InvalidPauliIndex(other)),
    }
}

/// Projector `|k⟩⟨k|` onto a computational basis state, `k ∈ {0, 1}`.
pub fn projector(k: usize) -> ComplexMatrix2 {
    let mut m = ComplexMatrix2::zeros();
    m.0[k][k] = ONE;
    m
}

pub fn kron(a: &ComplexMatrix2, b: &ComplexMatrix2) -> ComplexMatrix4 {
    let mut out = ComplexMatrix4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out.0[2 * i + k][2 * j + l] = a.0[i][j] * b.0[k][l];
                }
            }
        }
    }
    out
}

/// Eigenvalues of a Hermitian matrix in descending order.
///
/// Cyclic complex Jacobi: each pivot is made real by a diagonal phase and
/// then annihilated with a real plane rotation.
pub fn eigenvalues_hermitian<const N: usize>(m: &ComplexMatrix<N>) -> Result<[f64; N]> {
    let defect = m.hermiticity_defect();
    if !(defect <= HERMITIAN_TOL) {
        return Err(Error::NotHermitian(defect));
    }
    let mut a = m.0;
    for i in 0..N {
        a[i][i] = Complex64::new(a[i][i].re, 0.0);
    }
    let scale: f64 = a.iter().flatten().map(|z| z.norm_sqr()).sum();

    for _ in 0..MAX_JACOBI_SWEEPS {
        let mut off = 0.0;
        for p in 0..N {
            for q in p + 1..N {
                off += a[p][q].norm_sqr();
            }
        }
        if off <= 1e-34 * scale || off == 0.0 {
            break;
        }
        for p in 0..N {
            for q in p + 1..N {
                let apq = a[p][q];
                let mag = apq.norm();
                if mag == 0.0 {
                    continue;
                }
                let phase = apq / mag;
                let theta = (a[q][q].re - a[p][p].re) / (2.0 * mag);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // U = diag(.., 1 @p, .., conj(phase) @q, ..) · R(c, s)
                let uqp = -s * phase.conj();
                let uqq = c * phase.conj();
                for row in a.iter_mut() {
                    let (x, y) = (row[p], row[q]);
                    row[p] = x * c + y * uqp;
                    row[q] = x * s + y * uqq;
                }
                for k in 0..N {
                    let (x, y) = (a[p][k], a[q][k]);
                    a[p][k] = x * c + y * uqp.conj();
                    a[q][k] = x * s + y * uqq.conj();
                }
                a[p][q] = ZERO;
                a[q][p] = ZERO;
                a[p][p].im = 0.0;
                a[q][q].im = 0.0;
            }
        }
    }

    let mut values = [0.0; N];
    for (i, v) in values.iter_mut().enumerate() {
        *v = a[i][i].re;
    }
    values.sort_by(|x, y| y.total_cmp(x));
    Ok(values)
}

/// Eigenvalues of a 4×4 Hermitian matrix, descending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix4) -> Result<[f64; 4]> {
    eigenvalues_hermitian(m)
}

/// Shannon entropy `-Σ p log₂ p` of a probability vector, in bits.
///
/// Entries in `[-1e-10, 0)` are treated as zero; `0·log 0 = 0`.
pub fn entropy_kernel(probs: &[f64]) -> Result<f64> {
    let mut total = 0.0;
    for &p in probs {
        if !(p >= -NEGATIVE_TOL) {
            return Err(Error::NegativeProbability(p));
        }
        total += p;
    }
    if !((total - 1.0).abs() <= NORMALIZATION_TOL) {
        return Err(Error::Unnormalized(total));
    }
    Ok(probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum::<f64>()
        .max(0.0))
}

/// A two-qubit density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix4 {
    matrix: ComplexMatrix4,
    eigenvalues: [f64; 4],
}

impl DensityMatrix4 {
    pub fn new(matrix: ComplexMatrix4) -> Result<Self> {
        let eigenvalues = hermitian_eigenvalues(&matrix)?;
        let tr = matrix.trace().re;
        if !((tr - 1.0).abs() <= TRACE_TOL) {
            return Err(Error::BadTrace(tr));
        }
        if let Some(&low) = eigenvalues.iter().find(|&&v| v < -NEGATIVE_TOL) {
            return Err(Error::NegativeProbability(low));
        }
        Ok(Self {
            matrix,
            eigenvalues,
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix4 {
        &self.matrix
    }

    /// Numerically computed spectrum, descending.
    pub fn eigenvalues(&self) -> [f64; 4] {
        self.eigenvalues
    }

    /// Von Neumann entropy in bits.
    pub fn entropy(&self) -> f64 {
        entropy_kernel(&self.eigenvalues).expect("validated density matrix")
    }
}
