//! Density matrices, partial traces and basis changes.
//!
//! Partial traces are explicit index sums over the traced-out variable. The
//! two-qubit matrices produced here are ordered `2·a + b` over their pair of
//! binary variables: `(HH, HV, VH, VV)` for polarization and
//! `(hh, hl, lh, ll)` for frequency.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, ZERO};
use crate::state::{flat_index, PureBiphotonState, QuquartCoeffs};

pub const HERMITICITY_TOLERANCE: f64 = 1e-12;
pub const TRACE_TOLERANCE: f64 = 1e-10;
/// Eigenvalues down to this floor are treated as rounding noise around zero.
pub const PSD_FLOOR: f64 = -1e-10;

/// Which ordered basis a matrix is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisTag {
    /// Product basis of the underlying variables.
    Natural,
    /// Frequency Bell basis `{Ψ+, Ψ−, Φ+, Φ−}`.
    BellFreq,
    /// Polarization Bell basis `{Ψ+, Ψ−, Φ+, Φ−}`.
    BellPol,
    /// `{HH, Ψ+, VV, Ψ−}`, in which the polarization matrix is block diagonal.
    QuquartMixed,
}

/// Variable removed by a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SubsystemSelector {
    Photon1,
    Photon2,
    Polarization,
    Frequency,
}

/// Target basis for [`change_basis`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TargetBasis {
    Natural,
    Bell,
    Mixed,
}

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
    basis: BasisTag,
}

impl DensityMatrix {
    /// Validates Hermiticity, trace and positivity.
    pub fn new(matrix: CMatrix, basis: BasisTag) -> Result<Self> {
        if !matches!(matrix.dim(), 2 | 3 | 4 | 16) {
            return Err(Error::Dimension {
                expected: 4,
                found: matrix.dim(),
            });
        }
        if !matrix.is_finite() {
            return Err(Error::NonFinite);
        }
        let herm = matrix.hermiticity_residual();
        if herm > HERMITICITY_TOLERANCE {
            return Err(Error::Domain(format!("matrix is not Hermitian (residual {herm:e})")));
        }
        let tr = matrix.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > TRACE_TOLERANCE {
            return Err(Error::Domain(format!("trace is {tr}, expected 1")));
        }
        let rho = Self { matrix, basis };
        let min = *rho.eigenvalues_raw()?.last().unwrap_or(&0.0);
        if min < PSD_FLOOR {
            return Err(Error::Domain(format!("negative eigenvalue {min:e}")));
        }
        Ok(rho)
    }

    /// Skips validation; for matrices that are density matrices by
    /// construction.
    pub(crate) fn from_parts(matrix: CMatrix, basis: BasisTag) -> Self {
        Self { matrix, basis }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn basis(&self) -> BasisTag {
        self.basis
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.matrix[(i, j)]
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    /// `Tr ρ²`
    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    /// Unclamped eigenvalues, descending.
    pub fn eigenvalues_raw(&self) -> Result<Vec<f64>> {
        if self.dim() == 2 {
            return Ok(linalg::hermitian_eigenvalues_2x2(&self.matrix).to_vec());
        }
        Ok(linalg::hermitian_eigen(&self.matrix)?.values)
    }

    fn expect_dim(&self, expected: usize) -> Result<()> {
        if self.dim() == expected {
            Ok(())
        } else {
            Err(Error::Dimension {
                expected,
                found: self.dim(),
            })
        }
    }
}

/// `|Ψ⟩⟨Ψ|` over the 16-dimensional two-photon space.
pub fn pure_density(state: &PureBiphotonState) -> DensityMatrix {
    let amps = state.amplitudes();
    DensityMatrix::from_parts(CMatrix::outer(amps, amps), BasisTag::Natural)
}

/// Gram matrix of the mixed-basis coefficient vector `(C1, B+, C4, B−)`:
/// the nonzero 4x4 block of the ququart density matrix.
pub fn ququart_density_4x4(coeffs: &QuquartCoeffs) -> DensityMatrix {
    let v = coeffs.mixed();
    DensityMatrix::from_parts(CMatrix::outer(&v, &v), BasisTag::QuquartMixed)
}

/// Single-photon reduced matrix over `(Hh, Hl, Vh, Vl)`.
pub fn partial_trace_photon(rho: &DensityMatrix, which: SubsystemSelector) -> Result<DensityMatrix> {
    rho.expect_dim(16)?;
    let m = rho.matrix();
    let mut out = CMatrix::zeros(4);
    for a in 0..4 {
        for b in 0..4 {
            let mut acc = ZERO;
            for k in 0..4 {
                acc += match which {
                    // keep photon 1, sum over photon 2
                    SubsystemSelector::Photon2 => m[(flat_index(a, k), flat_index(b, k))],
                    SubsystemSelector::Photon1 => m[(flat_index(k, a), flat_index(k, b))],
                    _ => {
                        return Err(Error::Domain(format!(
                            "{which:?} is not a photon selector"
                        )))
                    }
                };
            }
            out[(a, b)] = acc;
        }
    }
    Ok(DensityMatrix::from_parts(out, BasisTag::Natural))
}

/// Traces one binary variable (`pol` or `freq` digit of each mode) out of
/// the 16-dimensional matrix, keeping the other one for both photons.
fn trace_variable(rho: &DensityMatrix, keep_polarization: bool) -> Result<DensityMatrix> {
    rho.expect_dim(16)?;
    let m = rho.matrix();
    let mode = |kept: usize, traced: usize| {
        if keep_polarization {
            2 * kept + traced
        } else {
            2 * traced + kept
        }
    };
    let mut out = CMatrix::zeros(4);
    for k1 in 0..2 {
        for k2 in 0..2 {
            for j1 in 0..2 {
                for j2 in 0..2 {
                    let mut acc = ZERO;
                    for t1 in 0..2 {
                        for t2 in 0..2 {
                            let row = flat_index(mode(k1, t1), mode(k2, t2));
                            let col = flat_index(mode(j1, t1), mode(j2, t2));
                            acc += m[(row, col)];
                        }
                    }
                    out[(2 * k1 + k2, 2 * j1 + j2)] = acc;
                }
            }
        }
    }
    Ok(DensityMatrix::from_parts(out, BasisTag::Natural))
}

/// Two-photon frequency matrix over `(hh, hl, lh, ll)`.
pub fn partial_trace_polarization(rho: &DensityMatrix) -> Result<DensityMatrix> {
    trace_variable(rho, false)
}

/// Two-photon polarization matrix over `(HH, HV, VH, VV)`.
pub fn partial_trace_frequency(rho: &DensityMatrix) -> Result<DensityMatrix> {
    trace_variable(rho, true)
}

/// Traces the second qubit out of a natural-basis two-qubit matrix.
pub fn reduce_single_qubit(rho4: &DensityMatrix) -> Result<DensityMatrix> {
    rho4.expect_dim(4)?;
    let rho4 = if rho4.basis() == BasisTag::Natural {
        rho4.clone()
    } else {
        change_basis(rho4, TargetBasis::Natural)?
    };
    let m = rho4.matrix();
    let mut out = CMatrix::zeros(2);
    for a in 0..2 {
        for b in 0..2 {
            out[(a, b)] = m[(2 * a, 2 * b)] + m[(2 * a + 1, 2 * b + 1)];
        }
    }
    // Exact Hermitian form: diagonal real, lower corner the conjugate of the upper.
    out[(0, 0)] = Complex64::new(out[(0, 0)].re, 0.0);
    out[(1, 1)] = Complex64::new(out[(1, 1)].re, 0.0);
    out[(1, 0)] = out[(0, 1)].conj();
    Ok(DensityMatrix::from_parts(out, BasisTag::Natural))
}

/// Columns are the basis vectors, in natural coordinates.
fn basis_columns(tag: BasisTag) -> CMatrix {
    let h = FRAC_1_SQRT_2;
    let r = |x: f64| Complex64::new(x, 0.0);
    let columns: [[f64; 4]; 4] = match tag {
        BasisTag::Natural => [[1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0]],
        // Ψ+, Ψ−, Φ+, Φ−
        BasisTag::BellFreq | BasisTag::BellPol => {
            [[0.0, h, h, 0.0], [0.0, h, -h, 0.0], [h, 0.0, 0.0, h], [h, 0.0, 0.0, -h]]
        }
        // HH, Ψ+, VV, Ψ−
        BasisTag::QuquartMixed => [[1.0, 0.0, 0.0, 0.0], [0.0, h, h, 0.0], [0.0, 0.0, 0.0, 1.0], [0.0, h, -h, 0.0]],
    };
    let mut u = CMatrix::zeros(4);
    for (j, col) in columns.iter().enumerate() {
        for (i, &x) in col.iter().enumerate() {
            u[(i, j)] = r(x);
        }
    }
    u
}

/// Rewrites a two-qubit matrix in another ordered basis by unitary
/// conjugation. A Bell target keeps track of whether the source is a
/// polarization matrix (`QuquartMixed` sources are).
pub fn change_basis(rho: &DensityMatrix, target: TargetBasis) -> Result<DensityMatrix> {
    rho.expect_dim(4)?;
    let target_tag = match (target, rho.basis()) {
        (TargetBasis::Natural, _) => BasisTag::Natural,
        (TargetBasis::Mixed, _) => BasisTag::QuquartMixed,
        (TargetBasis::Bell, BasisTag::BellFreq) => BasisTag::BellFreq,
        (TargetBasis::Bell, BasisTag::BellPol | BasisTag::QuquartMixed) => BasisTag::BellPol,
        (TargetBasis::Bell, BasisTag::Natural) => BasisTag::BellFreq,
    };
    if target_tag == rho.basis() {
        return Ok(rho.clone());
    }
    let from = basis_columns(rho.basis());
    let to = basis_columns(target_tag);
    // natural = from · ρ · from†, result = to† · natural · to
    let natural = &(&from * rho.matrix()) * &from.adjoint();
    let out = &(&to.adjoint() * &natural) * &to;
    Ok(DensityMatrix::from_parts(out, target_tag))
}

/// Same as [`change_basis`] to a Bell basis, but with the variable named
/// explicitly so the tag reads `BellPol` for polarization matrices.
pub fn to_bell_basis(rho: &DensityMatrix, polarization: bool) -> Result<DensityMatrix> {
    let out = change_basis(rho, TargetBasis::Bell)?;
    let tag = if polarization { BasisTag::BellPol } else { BasisTag::BellFreq };
    Ok(DensityMatrix::from_parts(out.into_matrix(), tag))
}

/// Frequency-mixed state of a ququart: `Tr_pol |Ψ⟩⟨Ψ|`.
pub fn frequency_state(coeffs: &QuquartCoeffs) -> DensityMatrix {
    let rho = pure_density(&crate::state::ququart_state(coeffs));
    partial_trace_polarization(&rho).expect("16-dimensional input")
}

/// Polarization-mixed state of a ququart: `Tr_freq |Ψ⟩⟨Ψ|`.
pub fn polarization_state(coeffs: &QuquartCoeffs) -> DensityMatrix {
    let rho = pure_density(&crate::state::ququart_state(coeffs));
    partial_trace_frequency(&rho).expect("16-dimensional input")
}
