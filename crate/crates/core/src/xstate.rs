//! The symmetric two-qubit X state
//!
//! ```text
//! ρ = ¼ (I⊗I + r σ₃⊗I + r I⊗σ₃ + c σ₁⊗σ₁ + c σ₂⊗σ₂ + c₃ σ₃⊗σ₃)
//! ```
//!
//! Both sites carry the same magnetization `r` and the two transverse
//! correlators coincide; the post-measurement formulas in
//! [`crate::deficit`] rely on exactly this symmetry, so it is fixed by the
//! type rather than checked at each call.

use crate::linalg::{kron, pauli, ComplexMatrix2, ComplexMatrix4, DensityMatrix4, NEGATIVE_TOL};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XStateParams {
    r: f64,
    c: f64,
    c3: f64,
}

impl XStateParams {
    /// Validates that every closed-form eigenvalue is at least `-1e-10`.
    pub fn new(r: f64, c: f64, c3: f64) -> Result<Self> {
        for (name, value) in [("r", r), ("c", c), ("c3", c3)] {
            if !(value.abs() <= 1.0) {
                return Err(Error::ParameterOutOfRange { name, value });
            }
        }
        let p = Self { r, c, c3 };
        let names = ["u+", "u-", "v+", "v-"];
        for (name, value) in names.into_iter().zip(p.spectrum()) {
            if value < -NEGATIVE_TOL {
                return Err(Error::NonPositiveState { name, value });
            }
        }
        Ok(p)
    }

    /// `I/4`.
    pub fn maximally_mixed() -> Self {
        Self {
            r: 0.0,
            c: 0.0,
            c3: 0.0,
        }
    }

    /// `|↑↑⟩⟨↑↑|`.
    pub fn pure_up_up() -> Self {
        Self {
            r: 1.0,
            c: 0.0,
            c3: 1.0,
        }
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn c3(&self) -> f64 {
        self.c3
    }

    /// Bloch-form matrix, validated as a density matrix.
    pub fn build_density_matrix(&self) -> Result<DensityMatrix4> {
        DensityMatrix4::new(self.bloch_matrix())
    }

    pub(crate) fn bloch_matrix(&self) -> ComplexMatrix4 {
        let id = ComplexMatrix2::identity();
        let s1 = pauli(1).expect("valid index");
        let s2 = pauli(2).expect("valid index");
        let s3 = pauli(3).expect("valid index");
        let m = kron(&id, &id)
            + kron(&s3, &id).scale(self.r)
            + kron(&id, &s3).scale(self.r)
            + kron(&s1, &s1).scale(self.c)
            + kron(&s2, &s2).scale(self.c)
            + kron(&s3, &s3).scale(self.c3);
        m.scale(0.25)
    }

    /// Closed-form eigenvalues `[u+, u-, v+, v-]`.
    pub fn spectrum(&self) -> [f64; 4] {
        let (r, c, c3) = (self.r.abs(), self.c.abs(), self.c3);
        [
            0.25 * (1.0 - c3 + 2.0 * c),
            0.25 * (1.0 - c3 - 2.0 * c),
            0.25 * (1.0 + c3 + 2.0 * r),
            0.25 * (1.0 + c3 - 2.0 * r),
        ]
    }

    /// Von Neumann entropy in bits, `2 - ¼ Σ x log₂ x` over `x = 4·spectrum`.
    pub fn entropy(&self) -> f64 {
        let weighted: f64 = self
            .spectrum()
            .iter()
            .map(|&u| 4.0 * u)
            .filter(|&x| x > 0.0)
            .map(|x| x * x.log2())
            .sum();
        (2.0 - 0.25 * weighted).max(0.0)
    }
}
