//! Two-qubit description of a ququart behind a dichroic beam splitter.
//!
//! Splitting the ququart by photon frequency leaves, in each channel, a
//! polarization-only two-qubit wave function without exchange symmetry:
//! `Ψ^(4) = (Ψ_h δ(ω1,h) δ(ω2,l) + Ψ_l δ(ω1,l) δ(ω2,h)) / √2`, with `Ψ_l`
//! obtained from `Ψ_h` by `C2 ⇄ C3`.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::Serialize;

use crate::density::{BasisTag, DensityMatrix};
use crate::error::Result;
use crate::linalg::{CMatrix, ZERO};
use crate::measures::{degree_of_polarization, schmidt_parameter, stokes_vector};
use crate::state::{flat_index, polarization_rotation, PureBiphotonState, QuquartCoeffs};

/// Polarization amplitudes over `(HH, HV, VH, VV)` of photons 1 and 2.
/// Deliberately separate from [`PureBiphotonState`]: no exchange symmetry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitState {
    amps: [Complex64; 4],
}

impl TwoQubitState {
    pub fn new(amps: [Complex64; 4]) -> Self {
        Self { amps }
    }

    /// `(|HV⟩ + |VH⟩)/√2`, the wave function of `|1_H, 1_V⟩`.
    pub fn single_configuration_hv() -> Self {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        Self { amps: [ZERO, h, h, ZERO] }
    }

    pub fn amplitudes(&self) -> &[Complex64; 4] {
        &self.amps
    }

    pub fn norm_sq(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `2 |a d − b c|`
    pub fn concurrence(&self) -> f64 {
        let [a, b, c, d] = self.amps;
        2.0 * (a * d - b * c).norm()
    }

    /// One-photon matrix `Σ_σ2 Ψ(σ1,σ2) Ψ*(σ1',σ2)`.
    pub fn reduced(&self) -> DensityMatrix {
        let mut m = CMatrix::zeros(2);
        for a in 0..2 {
            for b in 0..2 {
                m[(a, b)] = (0..2).map(|k| self.amps[2 * a + k] * self.amps[2 * b + k].conj()).sum();
            }
        }
        DensityMatrix::from_parts(m, BasisTag::Natural)
    }

    /// Same local basis change as
    /// [`rotate_polarization_basis`](crate::state::rotate_polarization_basis).
    pub fn rotate_polarization_basis(&self, alpha: f64) -> Self {
        let r = polarization_rotation(alpha);
        let mut amps = [ZERO; 4];
        for n1 in 0..2 {
            for n2 in 0..2 {
                amps[2 * n1 + n2] = (0..2)
                    .flat_map(|m1| (0..2).map(move |m2| (m1, m2)))
                    .map(|(m1, m2)| self.amps[2 * m1 + m2] * (r[n1][m1] * r[n2][m2]))
                    .sum();
            }
        }
        Self { amps }
    }
}

/// `(Ψ_h, Ψ_l)`: the high-frequency-first and low-frequency-first channel
/// wave functions.
pub fn two_qubit_states(coeffs: &QuquartCoeffs) -> (TwoQubitState, TwoQubitState) {
    let [c1, c2, c3, c4] = coeffs.as_array();
    (
        TwoQubitState::new([c1, c2, c3, c4]),
        TwoQubitState::new([c1, c3, c2, c4]),
    )
}

/// Inverse of the channel split: rebuilds the symmetric 16-component state.
pub fn reassemble(high: &TwoQubitState, low: &TwoQubitState) -> Result<PureBiphotonState> {
    let mut amps = [ZERO; 16];
    for p1 in 0..2 {
        for p2 in 0..2 {
            // ω1 = h, ω2 = l
            amps[flat_index(2 * p1, 2 * p2 + 1)] = high.amps[2 * p1 + p2] * FRAC_1_SQRT_2;
            // ω1 = l, ω2 = h
            amps[flat_index(2 * p1 + 1, 2 * p2)] = low.amps[2 * p1 + p2] * FRAC_1_SQRT_2;
        }
    }
    PureBiphotonState::from_amplitudes(amps)
}

/// One-photon polarization matrices seen in the high and low channels.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelPair {
    pub rho_h: DensityMatrix,
    pub rho_l: DensityMatrix,
}

pub fn channel_reduced(coeffs: &QuquartCoeffs) -> ChannelPair {
    let (h, l) = two_qubit_states(coeffs);
    ChannelPair {
        rho_h: h.reduced(),
        rho_l: l.reduced(),
    }
}

/// `(ρ_{r,h} + ρ_{r,l}) / 2`
pub fn half_sum(pair: &ChannelPair) -> DensityMatrix {
    let sum = pair.rho_h.matrix() + pair.rho_l.matrix();
    DensityMatrix::from_parts(sum.scale(Complex64::new(0.5, 0.0)), BasisTag::Natural)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoQubitMeasures {
    /// `2 |C1 C4 − C2 C3|`
    pub c_2qb: f64,
    /// `|2 C1 C4 − B+² + B−²|`, the same quantity via the Bell coefficients.
    pub c_2qb_bell: f64,
    /// `2 / (2 − C²)`
    pub k_2qb: f64,
    /// `√(1 − C²)`, from `P² + 2(1 − 1/K) = 1`.
    pub p_2qb: f64,
}

pub fn two_qubit_measures(coeffs: &QuquartCoeffs) -> TwoQubitMeasures {
    let [c1, c2, c3, c4] = coeffs.as_array();
    let [_, bp, _, bm] = coeffs.mixed();
    let c_2qb = 2.0 * (c1 * c4 - c2 * c3).norm();
    let c_2qb_bell = (c1 * c4 * 2.0 - bp * bp + bm * bm).norm();
    let k_2qb = 2.0 / (2.0 - c_2qb * c_2qb);
    TwoQubitMeasures {
        c_2qb,
        c_2qb_bell,
        k_2qb,
        p_2qb: (1.0 - c_2qb * c_2qb).max(0.0).sqrt(),
    }
}

/// The same measures evaluated numerically from the high-frequency channel
/// wave function and its reduced matrix.
pub fn two_qubit_measures_numeric(coeffs: &QuquartCoeffs) -> Result<TwoQubitMeasures> {
    let (h, _) = two_qubit_states(coeffs);
    let reduced = h.reduced();
    let c = h.concurrence();
    Ok(TwoQubitMeasures {
        c_2qb: c,
        c_2qb_bell: c,
        k_2qb: schmidt_parameter(&reduced)?,
        p_2qb: degree_of_polarization(&stokes_vector(&reduced)?),
    })
}

/// `C_2qb` for `C1 = C4 = 0`, `B+ = e^{iφ} √(1 − |B−|²)`, real `B−`.
pub fn phase_concurrence_2qb(b_minus: f64, phi: f64) -> f64 {
    let b2 = b_minus * b_minus;
    ((1.0 - b2).powi(2) - 2.0 * (1.0 - b2) * b2 * (2.0 * phi).cos() + b2 * b2)
        .max(0.0)
        .sqrt()
}
