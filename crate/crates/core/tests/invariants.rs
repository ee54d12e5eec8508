//! Heavier module invariants: random sweeps and dense-oracle cross-checks
//! that would be too slow as inline unit tests.

mod common;

use common::*;
use dgrover_core::dihedral::is_normal;
use dgrover_core::pst::{default_tau_max, pst_brute_force};
use dgrover_core::spectrum::{adjacency_matrix, full_spectrum};
use dgrover_core::walk::{
    build_operators, complex_multisets_close, component_count, is_bipartite, period,
    transition_spectrum,
};
use num_complex::Complex64;

#[test]
fn transition_spectrum_matches_dense_oracle_on_connected_graphs() {
    let mut checked = 0usize;
    for n in 2..=6 {
        for conn in dgrover_core::enumerate::all_connection_sets(n) {
            if component_count(&conn) != 1 {
                continue;
            }
            let items = full_spectrum(&conn);
            let ops = build_operators(&conn);
            let lifted = transition_spectrum(
                &items,
                ops.edge_count,
                conn.vertex_count(),
                1,
                is_bipartite(&conn),
            )
            .unwrap();
            assert_eq!(lifted.total_multiplicity(), 2 * ops.edge_count);
            let mut expanded: Vec<Complex64> = Vec::new();
            for &(val, mult) in &lifted.eigenvalues {
                expanded.extend(std::iter::repeat_n(val, mult));
            }
            let oracle = dense_u_eigenvalues(&ops.transition);
            assert!(
                complex_multisets_close(&expanded, &oracle, 1e-7),
                "transition spectrum mismatch at n={n}, S={:?}",
                conn.elements()
            );
            checked += 1;
        }
    }
    assert!(checked > 600, "sweep unexpectedly small: {checked}");
}

#[test]
fn analytic_spectrum_matches_dense_oracle_on_random_sets() {
    let mut rng = rng();
    for _ in 0..200 {
        let n = rand::Rng::random_range(&mut rng, 2..=24usize);
        let conn = random_connection_set(&mut rng, n);
        let mut analytic: Vec<f64> = Vec::new();
        for it in full_spectrum(&conn) {
            analytic.extend(std::iter::repeat_n(
                it.adjacency_eigenvalue,
                it.multiplicity,
            ));
        }
        analytic.sort_by(f64::total_cmp);
        let oracle = dense_symmetric_eigenvalues(&adjacency_matrix(&conn));
        assert_eq!(analytic.len(), oracle.len());
        for (a, b) in analytic.iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-8, "eigenvalue gap at n={n}");
        }
    }
}

#[test]
fn walk_operator_identities_on_random_sets() {
    let mut rng = rng();
    for _ in 0..50 {
        let n = rand::Rng::random_range(&mut rng, 2..=24usize);
        let conn = random_connection_set(&mut rng, n);
        let ops = build_operators(&conn);
        assert!(ops.max_unitarity_defect() < 1e-10, "unitarity at n={n}");
        let size = conn.vertex_count();
        let nn = &ops.boundary * ops.boundary.transpose();
        let boundary_dev = (nn - nalgebra::DMatrix::<f64>::identity(size, size))
            .iter()
            .fold(0.0f64, |m, x| m.max(x.abs()));
        assert!(boundary_dev < 1e-12, "boundary rows at n={n}");
        let p = adjacency_matrix(&conn) / conn.degree() as f64;
        let p_dev = (&ops.discriminant - p)
            .iter()
            .fold(0.0f64, |m, x| m.max(x.abs()));
        assert!(p_dev < 1e-12, "discriminant at n={n}");
        for a in 0..ops.arc_space.len() {
            assert_eq!(ops.arc_space.reversal(ops.arc_space.reversal(a)), a);
        }
    }
}

#[test]
fn normality_methods_agree_on_random_sets() {
    let mut rng = rng();
    for _ in 0..1000 {
        let n = rand::Rng::random_range(&mut rng, 2..=24usize);
        let conn = random_connection_set(&mut rng, n);
        // is_normal errors out if any two of its three routes disagree
        is_normal(&conn).expect("normality methods disagree");
    }
}

#[test]
fn minimum_transfer_time_is_half_the_period() {
    for n in 2..=5 {
        for conn in dgrover_core::enumerate::all_connection_sets(n) {
            let cert = pst_brute_force(&conn, default_tau_max(n), 1e-9).unwrap();
            let Some(tau) = cert.min_time else { continue };
            let items = full_spectrum(&conn);
            let sigma = period(
                &items,
                n * conn.degree(),
                conn.vertex_count(),
                component_count(&conn),
                is_bipartite(&conn),
                4 * n as u64 * conn.degree() as u64,
            );
            if let Some(sigma) = sigma {
                assert_eq!(sigma, 2 * tau, "period/transfer mismatch at n={n}");
            }
        }
    }
}

#[test]
fn detected_transfers_carry_clean_oracle_residuals() {
    for n in 2..=5 {
        for conn in dgrover_core::enumerate::all_connection_sets(n) {
            let cert = pst_brute_force(&conn, default_tau_max(n), 1e-9).unwrap();
            if !cert.occurs {
                continue;
            }
            assert!(cert.residuals.entry < 1e-9);
            assert!(cert.residuals.evolution.unwrap() < 1e-7);
            let gamma = cert.gamma.unwrap();
            assert!((gamma - Complex64::new(1.0, 0.0)).norm() < 1e-6);
            assert!(
                cert.warnings.is_empty(),
                "unexpected warnings at n={n}: {:?}",
                cert.warnings
            );
        }
    }
}
