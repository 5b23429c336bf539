mod common;

use biphoton_core::density::{
    frequency_state, partial_trace_frequency, partial_trace_photon, polarization_state, pure_density,
    reduce_single_qubit, SubsystemSelector,
};
use biphoton_core::format::fmt_num;
use biphoton_core::linalg::CMatrix;
use biphoton_core::measures::{
    closed_forms, concurrence_freq_closed, concurrence_pol_closed, degree_of_polarization, hermitian_eigenvalues,
    mutual_information, schmidt_decompose, schmidt_parameter, stokes_vector, von_neumann_entropy,
    wootters_concurrence,
};
use biphoton_core::state::{
    from_bell_coeffs, ququart_state, rotate_polarization_basis, swap_photons, to_bell_coeffs,
};
use biphoton_core::two_qubit::{channel_reduced, half_sum, two_qubit_measures, TwoQubitState};
use biphoton_core::QuquartCoeffs;
use common::*;
use proptest::prelude::*;

fn coeffs() -> impl Strategy<Value = QuquartCoeffs> {
    prop::array::uniform8(-1.0f64..1.0).prop_filter_map("nonzero", |x| {
        QuquartCoeffs::normalizing([c(x[0], x[1]), c(x[2], x[3]), c(x[4], x[5]), c(x[6], x[7])])
            .ok()
            .filter(|_| x.iter().map(|v| v * v).sum::<f64>() > 1e-3)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn state_is_normalized_and_symmetric(q in coeffs()) {
        let psi = ququart_state(&q);
        prop_assert!((psi.norm_sq() - 1.0).abs() < 1e-12);
        prop_assert!(swap_photons(&psi).max_abs_diff(&psi) < 1e-12);
        prop_assert!(psi.same_frequency_weight() < 1e-15);
    }

    #[test]
    fn bell_map_round_trips(q in coeffs()) {
        let b = to_bell_coeffs(&q);
        prop_assert!((b.norm_sq() - 1.0).abs() < 1e-12);
        let back = from_bell_coeffs(&b);
        for (x, y) in back.as_array().iter().zip(q.as_array()) {
            prop_assert!((x - y).norm() < 1e-14);
        }
    }

    #[test]
    fn reduced_matrices_are_valid_states(q in coeffs()) {
        for rho in [polarization_state(&q), frequency_state(&q)] {
            prop_assert!((rho.trace() - 1.0).norm() < 1e-10);
            prop_assert!(rho.matrix().hermiticity_residual() < 1e-12);
            prop_assert!(*hermitian_eigenvalues(&rho).unwrap().values().last().unwrap() >= 0.0);
        }
    }

    #[test]
    fn spectrum_law_holds(q in coeffs()) {
        let law = spectrum_law(q.as_array());
        for rho in [polarization_state(&q), frequency_state(&q)] {
            let s = hermitian_eigenvalues(&rho).unwrap();
            for (a, b) in s.values().iter().zip(&law) {
                prop_assert!((a - b).abs() < 1e-10);
            }
        }
        let e_pol = von_neumann_entropy(&hermitian_eigenvalues(&polarization_state(&q)).unwrap());
        let e_freq = von_neumann_entropy(&hermitian_eigenvalues(&frequency_state(&q)).unwrap());
        prop_assert!((e_pol - e_freq).abs() < 1e-10);
    }

    #[test]
    fn degree_of_polarization_and_schmidt_parameter(q in coeffs()) {
        let red = reduce_single_qubit(&polarization_state(&q)).unwrap();
        let k = schmidt_parameter(&red).unwrap();
        let p = degree_of_polarization(&stokes_vector(&red).unwrap());
        prop_assert!(p <= 1.0 + 1e-10);
        prop_assert!((p * p + 2.0 * (1.0 - 1.0 / k) - 1.0).abs() < 1e-10);
        let cf = closed_forms(&q).unwrap();
        prop_assert!((cf.k_pol - k).abs() < 1e-10);
        prop_assert!((cf.p - p).abs() < 1e-10);
    }

    #[test]
    fn concurrences_match_closed_forms(q in coeffs()) {
        let pol = wootters_concurrence(&polarization_state(&q)).unwrap();
        let freq = wootters_concurrence(&frequency_state(&q)).unwrap();
        prop_assert!((pol - concurrence_pol_closed(&q)).abs() < 1e-10);
        prop_assert!((freq - concurrence_freq_closed(&q)).abs() < 1e-10);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&pol));
    }

    #[test]
    fn frequency_reduction_is_maximally_mixed(q in coeffs()) {
        let red = reduce_single_qubit(&frequency_state(&q)).unwrap();
        prop_assert!(red.matrix().max_abs_diff(&CMatrix::from_diagonal(&[0.5, 0.5])) < 1e-12);
    }

    #[test]
    fn mutual_information_is_nonnegative(q in coeffs()) {
        for rho in [polarization_state(&q), frequency_state(&q)] {
            let s_full = von_neumann_entropy(&hermitian_eigenvalues(&rho).unwrap());
            let s_red = von_neumann_entropy(&hermitian_eigenvalues(&reduce_single_qubit(&rho).unwrap()).unwrap());
            prop_assert!(mutual_information(s_full, s_red) >= -1e-10);
        }
    }

    #[test]
    fn half_sum_is_the_reduced_polarization_matrix(q in coeffs()) {
        let full = pure_density(&ququart_state(&q));
        let reduced = reduce_single_qubit(&partial_trace_frequency(&full).unwrap()).unwrap();
        prop_assert!(half_sum(&channel_reduced(&q)).matrix().max_abs_diff(reduced.matrix()) < 1e-12);
    }

    #[test]
    fn two_qubit_relations(q in coeffs()) {
        let m = two_qubit_measures(&q);
        prop_assert!((m.c_2qb - m.c_2qb_bell).abs() < 1e-12);
        prop_assert!((m.p_2qb.powi(2) + 2.0 * (1.0 - 1.0 / m.k_2qb) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn photon_schmidt_parameter_is_rotation_invariant(q in coeffs(), alpha in -3.2f64..3.2) {
        let k = |psi| schmidt_parameter(
            &partial_trace_photon(&pure_density(psi), SubsystemSelector::Photon2).unwrap()
        ).unwrap();
        let psi = ququart_state(&q);
        let rotated = rotate_polarization_basis(&psi, alpha);
        prop_assert!((rotated.norm_sq() - 1.0).abs() < 1e-12);
        prop_assert!((k(&rotated) - k(&psi)).abs() < 1e-10);
    }

    #[test]
    fn two_qubit_rotation_preserves_concurrence(alpha in -3.2f64..3.2) {
        let hv = TwoQubitState::single_configuration_hv();
        let r = hv.rotate_polarization_basis(alpha);
        prop_assert!((r.norm_sq() - 1.0).abs() < 1e-12);
        prop_assert!((schmidt_parameter(&r.reduced()).unwrap() - 2.0).abs() < 1e-10);
    }

    #[test]
    fn schmidt_decomposition_reconstructs(q in coeffs()) {
        let psi = ququart_state(&q);
        let d = schmidt_decompose(&psi).unwrap();
        for (a, b) in d.reconstruct().iter().zip(psi.amplitudes()) {
            prop_assert!((a - b).norm() < 1e-10);
        }
        prop_assert!((d.spectrum.sum() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn number_format_round_trips(x in prop::num::f64::NORMAL) {
        let parsed: f64 = fmt_num(x).parse().unwrap();
        prop_assert!((parsed - x).abs() <= 5e-12 * x.abs());
    }
}
