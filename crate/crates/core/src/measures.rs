//! Correlation measures: spectra, entropies, Schmidt parameter, concurrence,
//! relative entropy, Stokes vector and the closed-form expressions for the
//! polarization-mixed state.
//!
//! Entropies are in bits, with `0·log 0 = 0`.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::Serialize;

use crate::density::{change_basis, BasisTag, DensityMatrix, TargetBasis, PSD_FLOOR};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, ZERO};
use crate::state::{flat_index, PureBiphotonState, QuquartCoeffs};

/// Below this gap two Schmidt weights count as degenerate.
pub const DEGENERACY_GAP: f64 = 1e-8;

/// Eigenvalues of a density matrix, descending, clamped into `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum(Vec<f64>);

impl Spectrum {
    /// Clamps values in `[PSD_FLOOR, 0)` to zero and sorts descending.
    /// Anything more negative is rejected.
    pub fn from_raw(mut values: Vec<f64>) -> Result<Self> {
        for v in values.iter_mut() {
            if *v < PSD_FLOOR {
                return Err(Error::Domain(format!("eigenvalue {v:e} below PSD floor")));
            }
            *v = v.clamp(0.0, 1.0);
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(Self(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn purity(&self) -> f64 {
        self.0.iter().map(|l| l * l).sum()
    }
}

/// Per-photon Stokes vector `(ξ1, ξ2, ξ3)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StokesVector {
    pub xi1: f64,
    pub xi2: f64,
    pub xi3: f64,
}

impl StokesVector {
    pub fn norm(&self) -> f64 {
        (self.xi1 * self.xi1 + self.xi2 * self.xi2 + self.xi3 * self.xi3).sqrt()
    }
}

/// Real spectrum of a density matrix. Dimension 2 uses the quadratic
/// formula, larger dimensions the Jacobi solver.
pub fn hermitian_eigenvalues(rho: &DensityMatrix) -> Result<Spectrum> {
    Spectrum::from_raw(rho.eigenvalues_raw()?)
}

fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

pub fn von_neumann_entropy(spec: &Spectrum) -> f64 {
    -spec.values().iter().map(|&l| xlog2x(l)).sum::<f64>()
}

/// `K = 1 / Σ λ²` of a (reduced) density matrix.
pub fn schmidt_parameter(rho_reduced: &DensityMatrix) -> Result<f64> {
    Ok(1.0 / hermitian_eigenvalues(rho_reduced)?.purity())
}

/// `I = 2 S(ρ_r) − S(ρ)` for an exchange-symmetric bipartite state.
pub fn mutual_information(s_full: f64, s_reduced: f64) -> f64 {
    2.0 * s_reduced - s_full
}

/// One term `√λ φ ⊗ χ` of a Schmidt decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtMode {
    pub weight: f64,
    pub photon1: [Complex64; 4],
    pub photon2: [Complex64; 4],
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtDecomposition {
    pub spectrum: Spectrum,
    /// Modes with nonzero weight, in spectrum order.
    pub modes: Vec<SchmidtMode>,
    /// Set when two nonzero weights coincide, so the modes are not unique.
    pub degenerate: bool,
}

impl SchmidtDecomposition {
    pub fn schmidt_parameter(&self) -> f64 {
        1.0 / self.spectrum.purity()
    }

    /// `Σ √λ φ ⊗ χ` as raw amplitudes.
    pub fn reconstruct(&self) -> [Complex64; 16] {
        let mut amps = [ZERO; 16];
        for mode in &self.modes {
            let s = mode.weight.sqrt();
            for m1 in 0..4 {
                for m2 in 0..4 {
                    amps[flat_index(m1, m2)] += mode.photon1[m1] * mode.photon2[m2] * s;
                }
            }
        }
        amps
    }
}

/// Diagonalizes the photon-1 reduced matrix; photon-2 modes follow from
/// `χ_n = ⟨φ_n|Ψ⟩ / √λ_n`.
pub fn schmidt_decompose(state: &PureBiphotonState) -> Result<SchmidtDecomposition> {
    let mut reduced = CMatrix::zeros(4);
    for a in 0..4 {
        for b in 0..4 {
            reduced[(a, b)] = (0..4)
                .map(|k| state.amplitude(a, k) * state.amplitude(b, k).conj())
                .sum();
        }
    }
    let eig = linalg::hermitian_eigen(&reduced)?;
    let spectrum = Spectrum::from_raw(eig.values.clone())?;
    let cutoff = 1e-14;
    let mut modes = Vec::new();
    for (&lambda, phi) in spectrum.values().iter().zip(&eig.vectors) {
        if lambda <= cutoff {
            continue;
        }
        let s = lambda.sqrt();
        let photon1: [Complex64; 4] = std::array::from_fn(|i| phi[i]);
        let photon2: [Complex64; 4] = std::array::from_fn(|m2| {
            (0..4).map(|m1| phi[m1].conj() * state.amplitude(m1, m2)).sum::<Complex64>() / s
        });
        modes.push(SchmidtMode {
            weight: lambda,
            photon1,
            photon2,
        });
    }
    let degenerate = modes.windows(2).any(|w| (w[0].weight - w[1].weight).abs() < DEGENERACY_GAP);
    Ok(SchmidtDecomposition {
        spectrum,
        modes,
        degenerate,
    })
}

/// `σy ⊗ σy` in the `(HH, HV, VH, VV)` product basis. Real.
fn sigma_yy() -> CMatrix {
    let mut m = CMatrix::zeros(4);
    m[(0, 3)] = Complex64::new(-1.0, 0.0);
    m[(3, 0)] = Complex64::new(-1.0, 0.0);
    m[(1, 2)] = Complex64::new(1.0, 0.0);
    m[(2, 1)] = Complex64::new(1.0, 0.0);
    m
}

fn natural_two_qubit(rho: &DensityMatrix) -> Result<CMatrix> {
    if rho.dim() != 4 {
        return Err(Error::Dimension {
            expected: 4,
            found: rho.dim(),
        });
    }
    Ok(match rho.basis() {
        BasisTag::Natural => rho.matrix().clone(),
        _ => change_basis(rho, TargetBasis::Natural)?.into_matrix(),
    })
}

/// `ρ̃ = (σy⊗σy) ρ* (σy⊗σy)`.
pub fn spin_flip(rho: &DensityMatrix) -> Result<DensityMatrix> {
    let m = natural_two_qubit(rho)?;
    let yy = sigma_yy();
    let flipped = &(&yy * &m.conj()) * &yy;
    Ok(DensityMatrix::from_parts(flipped, BasisTag::Natural))
}

/// Square roots of the eigenvalues of `ρ ρ̃`, descending.
///
/// They are obtained as singular values of `√ρ (σy⊗σy) √ρ*`, whose Gram
/// matrix `√ρ ρ̃ √ρ` shares its spectrum with `ρ ρ̃`. Working with the
/// singular values directly keeps vanishing Wootters numbers at rounding
/// level instead of at the square root of it.
pub fn wootters_numbers(rho: &DensityMatrix) -> Result<[f64; 4]> {
    let m = natural_two_qubit(rho)?;
    let eig = linalg::hermitian_eigen(&m)?;
    if let Some(&min) = eig.values.last() {
        if min < PSD_FLOOR {
            return Err(Error::Domain(format!("negative eigenvalue {min:e}")));
        }
    }
    let sqrt_rho = eig.reconstruct_with(|l| l.max(0.0).sqrt());
    let a = &(&sqrt_rho * &sigma_yy()) * &sqrt_rho.conj();
    let sv = linalg::singular_values(&a)?;
    Ok([sv[0], sv[1], sv[2], sv[3]])
}

/// `C = max(0, √μ1 − √μ2 − √μ3 − √μ4)`.
pub fn wootters_concurrence(rho: &DensityMatrix) -> Result<f64> {
    let w = wootters_numbers(rho)?;
    Ok((w[0] - w[1] - w[2] - w[3]).max(0.0))
}

/// `| |2 C1 C4 − B+²| − |B−|² |` for the polarization-mixed state.
pub fn concurrence_pol_closed(coeffs: &QuquartCoeffs) -> f64 {
    let [c1, bp, c4, bm] = coeffs.mixed();
    ((c1 * c4 * 2.0 - bp * bp).norm() - bm.norm_sqr()).abs()
}

/// `|1 − 2|B−|²|` for the frequency-mixed state.
pub fn concurrence_freq_closed(coeffs: &QuquartCoeffs) -> f64 {
    (1.0 - 2.0 * coeffs.b_minus().norm_sqr()).abs()
}

/// Relative entropy of entanglement of a mixture of two Bell states with
/// concurrence `c`: `(1+C)/2 log(1+C) + (1−C)/2 log(1−C)`.
pub fn relative_entropy_bell_diagonal(c: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&c) || c.is_nan() {
        return Err(Error::Domain(format!("concurrence {c} outside [0, 1]")));
    }
    Ok(0.5 * (xlog2x(1.0 + c) + xlog2x(1.0 - c)))
}

/// `C_cl = I − S_rel`.
pub fn classical_correlations(mutual_info: f64, s_rel: f64) -> f64 {
    mutual_info - s_rel
}

/// `ξ = Tr(ρ σ) = (2 Re z, −2 Im z, 2x − 1)` for `ρ = [[x, z], [z*, 1−x]]`.
pub fn stokes_vector(rho2: &DensityMatrix) -> Result<StokesVector> {
    if rho2.dim() != 2 {
        return Err(Error::Dimension {
            expected: 2,
            found: rho2.dim(),
        });
    }
    let x = rho2.get(0, 0).re;
    let z = rho2.get(0, 1);
    Ok(StokesVector {
        xi1: 2.0 * z.re,
        xi2: -2.0 * z.im,
        xi3: 2.0 * x - 1.0,
    })
}

pub fn degree_of_polarization(xi: &StokesVector) -> f64 {
    xi.norm()
}

/// Analytic results for the polarization-mixed state of a ququart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosedForms {
    /// Eigenvalues `λ±` of the one-photon polarization matrix.
    pub lambda_pm: [f64; 2],
    pub k_pol: f64,
    pub c_pol: f64,
    /// Degree of polarization `√(radicand)`.
    pub p: f64,
    /// Spectrum of the two-photon polarization (and frequency) matrix,
    /// descending.
    pub spectrum_full: [f64; 4],
    /// `|2 C1 C4 − B+²|`
    pub qutrit_concurrence: f64,
}

/// Radicand `(1−|B−|²)² − |2C1C4 − B+²|²` below which the input is
/// rejected instead of clamped.
pub const RADICAND_FLOOR: f64 = -1e-12;

pub fn closed_forms(coeffs: &QuquartCoeffs) -> Result<ClosedForms> {
    let [c1, bp, c4, bm] = coeffs.mixed();
    let bm2 = bm.norm_sqr();
    let q = (c1 * c4 * 2.0 - bp * bp).norm();
    let radicand = (1.0 - bm2).powi(2) - q * q;
    if radicand < RADICAND_FLOOR {
        return Err(Error::Domain(format!("negative radicand {radicand:e}")));
    }
    let root = radicand.max(0.0).sqrt();
    let k_pol = 2.0 / (1.0 + (1.0 - bm2).powi(2) - q * q);
    let mut spectrum_full = [1.0 - bm2, bm2, 0.0, 0.0];
    spectrum_full.sort_by(|a, b| b.total_cmp(a));
    Ok(ClosedForms {
        lambda_pm: [(1.0 + root) / 2.0, (1.0 - root) / 2.0],
        k_pol,
        c_pol: (q - bm2).abs(),
        p: root,
        spectrum_full,
        qutrit_concurrence: q,
    })
}

/// The `x`, `z` entries of the one-photon polarization matrix
/// `[[x, z], [z*, 1−x]]` written directly in the ququart coefficients.
pub fn reduced_polarization_entries(coeffs: &QuquartCoeffs) -> (f64, Complex64) {
    let [c1, bp, c4, bm] = coeffs.mixed();
    let x = c1.norm_sqr() + 0.5 * (bp.norm_sqr() + bm.norm_sqr());
    let z = (c1 * bp.conj() + bp * c4.conj()) * FRAC_1_SQRT_2;
    (x, z)
}
