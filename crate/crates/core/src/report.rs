//! Assembled correlation reports for two-qubit mixed states and whole
//! ququarts.

use serde::Serialize;

use crate::density::{
    partial_trace_photon, polarization_state, frequency_state, pure_density, reduce_single_qubit,
    to_bell_basis, BasisTag, DensityMatrix, SubsystemSelector,
};
use crate::error::Result;
use crate::measures::{
    classical_correlations, closed_forms, concurrence_freq_closed, degree_of_polarization,
    hermitian_eigenvalues, mutual_information, relative_entropy_bell_diagonal, schmidt_parameter,
    stokes_vector, von_neumann_entropy, wootters_concurrence, ClosedForms, Spectrum, StokesVector,
};
use crate::state::{ququart_state, QuquartCoeffs};
use crate::two_qubit::{two_qubit_measures, two_qubit_measures_numeric, TwoQubitMeasures};

/// Off-diagonal and eigenvalue threshold for the Bell-diagonal test.
pub const BELL_DIAGONAL_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrelationReport {
    /// Schmidt parameter of the one-qubit reduced matrix.
    pub k: f64,
    /// Wootters concurrence.
    pub c: f64,
    pub s_full: f64,
    pub s_reduced: f64,
    pub mutual_info: f64,
    /// Present only for mixtures of at most two Bell states.
    pub s_rel: Option<f64>,
    pub c_cl: Option<f64>,
    pub stokes: StokesVector,
    pub p: f64,
}

/// Whether a two-qubit matrix is diagonal in the Bell basis with at most
/// two populated Bell states.
pub fn is_two_state_bell_mixture(rho4: &DensityMatrix) -> Result<bool> {
    let polarization = matches!(rho4.basis(), BasisTag::BellPol | BasisTag::QuquartMixed);
    let bell = to_bell_basis(rho4, polarization)?;
    let m = bell.matrix();
    let mut populated = 0;
    for i in 0..4 {
        for j in 0..4 {
            if i != j && m[(i, j)].norm() > BELL_DIAGONAL_TOLERANCE {
                return Ok(false);
            }
        }
        if m[(i, i)].re > BELL_DIAGONAL_TOLERANCE {
            populated += 1;
        }
    }
    Ok(populated <= 2)
}

/// Every measure of a two-qubit mixed state, evaluated numerically.
pub fn correlation_report(rho4: &DensityMatrix) -> Result<CorrelationReport> {
    let full = hermitian_eigenvalues(rho4)?;
    let reduced = reduce_single_qubit(rho4)?;
    let reduced_spec = hermitian_eigenvalues(&reduced)?;
    let s_full = von_neumann_entropy(&full);
    let s_reduced = von_neumann_entropy(&reduced_spec);
    let mutual_info = mutual_information(s_full, s_reduced);
    let c = wootters_concurrence(rho4)?;
    let (s_rel, c_cl) = if is_two_state_bell_mixture(rho4)? {
        let s_rel = relative_entropy_bell_diagonal(c.min(1.0))?;
        (Some(s_rel), Some(classical_correlations(mutual_info, s_rel)))
    } else {
        (None, None)
    };
    let stokes = stokes_vector(&reduced)?;
    Ok(CorrelationReport {
        k: 1.0 / reduced_spec.purity(),
        c,
        s_full,
        s_reduced,
        mutual_info,
        s_rel,
        c_cl,
        stokes,
        p: degree_of_polarization(&stokes),
    })
}

/// A quantity available both in closed form and numerically.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub name: &'static str,
    pub closed_form: f64,
    pub numeric: f64,
    pub residual: f64,
}

impl Comparison {
    fn new(name: &'static str, closed_form: f64, numeric: f64) -> Self {
        Self {
            name,
            closed_form,
            numeric,
            residual: (closed_form - numeric).abs(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuquartAnalysis {
    /// `(C1, C2, C3, C4)` as `[re, im]` pairs.
    pub coefficients: [[f64; 2]; 4],
    /// `(C1, B+, C4, B−)` as `[re, im]` pairs.
    pub mixed: [[f64; 2]; 4],
    pub polarization: CorrelationReport,
    pub frequency: CorrelationReport,
    /// Schmidt parameter of the full state reduced to one photon.
    pub k_photon: f64,
    pub closed_forms: ClosedForms,
    pub two_qubit: TwoQubitMeasures,
    pub comparisons: Vec<Comparison>,
}

fn pairs(c: [num_complex::Complex64; 4]) -> [[f64; 2]; 4] {
    c.map(|z| [z.re, z.im])
}

pub fn analyze(coeffs: &QuquartCoeffs) -> Result<QuquartAnalysis> {
    let rho_pol = polarization_state(coeffs);
    let rho_freq = frequency_state(coeffs);
    let polarization = correlation_report(&rho_pol)?;
    let frequency = correlation_report(&rho_freq)?;
    let pol_reduced_spec = hermitian_eigenvalues(&reduce_single_qubit(&rho_pol)?)?;

    let full = pure_density(&ququart_state(coeffs));
    let k_photon = schmidt_parameter(&partial_trace_photon(&full, SubsystemSelector::Photon2)?)?;

    let cf = closed_forms(coeffs)?;
    let two_qubit = two_qubit_measures(coeffs);
    let two_qubit_numeric = two_qubit_measures_numeric(coeffs)?;
    let s_closed = von_neumann_entropy(&Spectrum::from_raw(cf.spectrum_full.to_vec())?);

    let comparisons = vec![
        Comparison::new("lambda_plus", cf.lambda_pm[0], pol_reduced_spec.values()[0]),
        Comparison::new("lambda_minus", cf.lambda_pm[1], pol_reduced_spec.values()[1]),
        Comparison::new("k_pol", cf.k_pol, polarization.k),
        Comparison::new("p", cf.p, polarization.p),
        Comparison::new("c_pol", cf.c_pol, polarization.c),
        Comparison::new("s_pol", s_closed, polarization.s_full),
        Comparison::new("s_freq", s_closed, frequency.s_full),
        Comparison::new("k_freq", 2.0, frequency.k),
        Comparison::new("c_freq", concurrence_freq_closed(coeffs), frequency.c),
        Comparison::new("c_2qb", two_qubit.c_2qb, two_qubit_numeric.c_2qb),
        Comparison::new("c_2qb_bell", two_qubit.c_2qb_bell, two_qubit_numeric.c_2qb),
        Comparison::new("k_2qb", two_qubit.k_2qb, two_qubit_numeric.k_2qb),
        Comparison::new("p_2qb", two_qubit.p_2qb, two_qubit_numeric.p_2qb),
    ];

    Ok(QuquartAnalysis {
        coefficients: pairs(coeffs.as_array()),
        mixed: pairs(coeffs.mixed()),
        polarization,
        frequency,
        k_photon,
        closed_forms: cf,
        two_qubit,
        comparisons,
    })
}
