//! Closed-form spectra and spectral projectors of `Cay(D_n, S)`.
//!
//! The adjacency matrix `A` of a dihedral Cayley graph decomposes along the
//! irreducible representations of `D_n`. The one-dimensional characters
//! contribute the eigenvalues
//!
//! ```text
//! lambda_1 = d,   lambda_2 = s_1 - s_2,
//! lambda_3 = d10 - d11 + d20 - d21,   lambda_4 = d10 - d11 + d21 - d20,
//! ```
//!
//! (`lambda_3`, `lambda_4` for even `n` only). Each two-dimensional block
//! `rho_h` contributes either a single eigenvalue `eta_h(S_1)` of
//! multiplicity 4 (when `eta_h(S_2) = 0`) or the pair
//! `eta_h(S_1) +- |eta_h(S_2)|`, each of multiplicity 2. Projectors are
//! assembled from the explicit eigenvectors, so `sum mu Pi` reconstructs the
//! discriminant `P = A/d` and `sum Pi = I`; the test suites verify both
//! against dense eigendecompositions.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::dihedral::{label_of, ConnectionSet, VertexLabel};
use crate::representation::{eta, rho_band, UnityRoots};
use crate::{Error, ZERO_TOL};

/// Which spectral component an eigenvalue belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenLabel {
    Psi1,
    Psi2,
    Psi3,
    Psi4,
    /// A two-dimensional block with `eta_h(S_2) = 0`; multiplicity 4.
    RhoDegenerate(usize),
    /// The `eta_h(S_1) + |eta_h(S_2)|` branch of block `h`; multiplicity 2.
    RhoPlus(usize),
    /// The `eta_h(S_1) - |eta_h(S_2)|` branch of block `h`; multiplicity 2.
    RhoMinus(usize),
}

impl EigenLabel {
    /// Short stable name used in reports.
    pub fn name(self) -> String {
        match self {
            EigenLabel::Psi1 => "psi1".into(),
            EigenLabel::Psi2 => "psi2".into(),
            EigenLabel::Psi3 => "psi3".into(),
            EigenLabel::Psi4 => "psi4".into(),
            EigenLabel::RhoDegenerate(h) => format!("rho{h}"),
            EigenLabel::RhoPlus(h) => format!("rho{h}+"),
            EigenLabel::RhoMinus(h) => format!("rho{h}-"),
        }
    }
}

/// One analytic eigenvalue of `A` (and of `P = A/d`) with its projector.
#[derive(Debug, Clone)]
pub struct EigenItem {
    pub label: EigenLabel,
    /// Eigenvalue of the adjacency matrix.
    pub adjacency_eigenvalue: f64,
    /// Eigenvalue of the discriminant, clamped into `[-1, 1]`.
    pub discriminant_eigenvalue: f64,
    pub multiplicity: usize,
    /// Hermitian idempotent projector onto the eigenspace (`2n x 2n`).
    pub projector: DMatrix<Complex64>,
}

/// The unit-modulus ratio entering the mixed-block eigenvectors.
#[derive(Debug, Clone, Copy)]
pub struct EllH {
    pub h: usize,
    /// `ell_h` with `|ell_h| = 1` and `ell_h^2 = eta_h(S_2^{-1}) / eta_h(S_2)`.
    pub value: Complex64,
}

/// The adjacency matrix of `Cay(D_n, S)`: `A[u][v] = 1` iff
/// `g_u g_v^{-1}` lies in `S`.
pub fn adjacency_matrix(conn: &ConnectionSet) -> DMatrix<f64> {
    let n = conn.n();
    let size = 2 * n;
    let mut a = DMatrix::zeros(size, size);
    for u in 0..size {
        let gu = label_of(VertexLabel(u), n).unwrap();
        for v in 0..size {
            if u == v {
                continue;
            }
            let gv = label_of(VertexLabel(v), n).unwrap();
            if conn.contains(gu.multiply(gv.inverse(n), n)) {
                a[(u, v)] = 1.0;
            }
        }
    }
    a
}

/// The discriminant `P = A/d` of the walk on a `d`-regular graph.
pub fn discriminant_matrix(conn: &ConnectionSet) -> DMatrix<f64> {
    adjacency_matrix(conn) / conn.degree() as f64
}

fn clamp_unit(x: f64) -> f64 {
    x.clamp(-1.0, 1.0)
}

fn item(
    conn: &ConnectionSet,
    label: EigenLabel,
    lambda: f64,
    vectors: &[DVector<Complex64>],
) -> EigenItem {
    let size = conn.vertex_count();
    let mut projector = DMatrix::<Complex64>::zeros(size, size);
    for v in vectors {
        projector += v * v.adjoint();
    }
    EigenItem {
        label,
        adjacency_eigenvalue: lambda,
        discriminant_eigenvalue: clamp_unit(lambda / conn.degree() as f64),
        multiplicity: vectors.len(),
        projector,
    }
}

/// Eigenpairs contributed by the one-dimensional characters.
///
/// For odd `n` only `psi1` and `psi2` exist. The eigenvectors are the
/// all-ones vector, the half-signed vector, and (even `n`) the two
/// alternating-sign patterns.
pub fn one_dim_eigenpairs(conn: &ConnectionSet) -> Vec<EigenItem> {
    let n = conn.n();
    let size = 2 * n;
    let norm = 1.0 / (size as f64).sqrt();
    let c = |x: f64| Complex64::new(x * norm, 0.0);
    let build = |f: &dyn Fn(usize, usize) -> f64| {
        DVector::from_iterator(
            size,
            (0..size).map(|u| if u < n { c(f(0, u)) } else { c(f(1, u - n)) }),
        )
    };

    let mut items = vec![
        item(
            conn,
            EigenLabel::Psi1,
            conn.degree() as f64,
            &[build(&|_, _| 1.0)],
        ),
        item(
            conn,
            EigenLabel::Psi2,
            conn.s1() as f64 - conn.s2() as f64,
            &[build(&|half, _| if half == 0 { 1.0 } else { -1.0 })],
        ),
    ];
    if n.is_multiple_of(2) {
        let sign = |k: usize| if k.is_multiple_of(2) { 1.0 } else { -1.0 };
        let (d10, d11, d20, d21) = (
            conn.d10() as f64,
            conn.d11() as f64,
            conn.d20() as f64,
            conn.d21() as f64,
        );
        items.push(item(
            conn,
            EigenLabel::Psi3,
            d10 - d11 + d20 - d21,
            &[build(&|_, k| sign(k))],
        ));
        items.push(item(
            conn,
            EigenLabel::Psi4,
            d10 - d11 + d21 - d20,
            &[build(&|half, k| if half == 0 { sign(k) } else { -sign(k) })],
        ));
    }
    items
}

/// The unit ratio `ell_h` for a block with `eta_h(S_2) != 0`.
///
/// The branch is fixed by the eigenvalue equation: `ell_h` is the unit
/// complex number with `ell_h * eta_h(S_2) = |eta_h(S_2)|`, i.e.
/// `conj(eta_h(S_2)) / |eta_h(S_2)|`. Its square is
/// `eta_h(S_2^{-1}) / eta_h(S_2)` because the inverse set conjugates the sum.
pub fn ell_h(conn: &ConnectionSet, h: usize) -> Result<EllH, Error> {
    let n = conn.n();
    if h < 1 || h > rho_band(n) {
        return Err(Error::IndexOutOfRange {
            index: h,
            limit: rho_band(n),
        });
    }
    let e2 = eta(conn.s2_star(), h, n);
    if e2.norm() <= ZERO_TOL {
        return Err(Error::DegenerateBlock { h });
    }
    Ok(EllH {
        h,
        value: e2.conj() / e2.norm(),
    })
}

/// Eigenpairs contributed by the two-dimensional block `rho_h`.
///
/// Returns one multiplicity-4 item when `eta_h(S_2)` vanishes, otherwise the
/// `+`/`-` pair of multiplicity-2 items.
pub fn two_dim_eigenpairs(conn: &ConnectionSet, h: usize) -> Result<Vec<EigenItem>, Error> {
    let n = conn.n();
    if h < 1 || h > rho_band(n) {
        return Err(Error::IndexOutOfRange {
            index: h,
            limit: rho_band(n),
        });
    }
    let w = UnityRoots::new(n);
    let e1 = eta(conn.s1_star(), h, n);
    debug_assert!(
        e1.im.abs() < 1e-9,
        "eta_h(S_1) must be real for symmetric S_1"
    );
    let e2 = eta(conn.s2_star(), h, n);
    let size = 2 * n;
    let hh = h as i64;

    // assemble a vector from its G0 / G1 coordinate functions
    let vector = |scale: f64, g0: &dyn Fn(i64) -> Complex64, g1: &dyn Fn(i64) -> Complex64| {
        DVector::from_iterator(
            size,
            (0..size).map(|u| {
                if u < n {
                    g0(u as i64) * scale
                } else {
                    g1((u - n) as i64) * scale
                }
            }),
        )
    };

    if e2.norm() <= ZERO_TOL {
        let zero = |_: i64| Complex64::new(0.0, 0.0);
        let fwd = |k: i64| w.pow(hh * k);
        let bwd = |k: i64| w.pow(-hh * k);
        let scale = 1.0 / (n as f64).sqrt();
        let vectors = [
            vector(scale, &fwd, &zero),
            vector(scale, &zero, &fwd),
            vector(scale, &zero, &bwd),
            vector(scale, &bwd, &zero),
        ];
        return Ok(vec![item(
            conn,
            EigenLabel::RhoDegenerate(h),
            e1.re,
            &vectors,
        )]);
    }

    let ell = ell_h(conn, h)?.value;
    let lb = ell.conj();
    let scale = 1.0 / (size as f64).sqrt();
    let plus = [
        vector(scale, &|k| lb * w.pow(hh * k), &|k| w.pow(hh * k)),
        vector(scale, &|k| w.pow(-hh * k), &|k| lb * w.pow(-hh * k)),
    ];
    let minus = [
        vector(scale, &|k| -w.pow(hh * k), &|k| ell * w.pow(hh * k)),
        vector(scale, &|k| ell * w.pow(-hh * k), &|k| -w.pow(-hh * k)),
    ];
    Ok(vec![
        item(conn, EigenLabel::RhoPlus(h), e1.re + e2.norm(), &plus),
        item(conn, EigenLabel::RhoMinus(h), e1.re - e2.norm(), &minus),
    ])
}

/// The complete analytic spectrum of `A` (equivalently of `P`).
///
/// Multiplicities sum to `2n`; the projectors resolve the identity and
/// reconstruct `P`.
pub fn full_spectrum(conn: &ConnectionSet) -> Vec<EigenItem> {
    let mut items = one_dim_eigenpairs(conn);
    for h in 1..=rho_band(conn.n()) {
        items.extend(two_dim_eigenpairs(conn, h).expect("h is in band"));
    }
    debug_assert_eq!(
        items.iter().map(|i| i.multiplicity).sum::<usize>(),
        conn.vertex_count()
    );
    items
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dihedral::DihedralElement;
    use std::collections::BTreeSet;

    fn set(n: usize, elems: &[(bool, i64)]) -> ConnectionSet {
        ConnectionSet::new(
            n,
            elems.iter().map(|&(r, k)| {
                if r {
                    DihedralElement::reflection(k, n)
                } else {
                    DihedralElement::rotation(k, n)
                }
            }),
        )
        .unwrap()
    }

    fn max_abs(m: &DMatrix<Complex64>) -> f64 {
        m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn adjacency_of_two_reflections_at_n2_is_a_four_cycle() {
        let conn = set(2, &[(true, 0), (true, 1)]);
        let a = adjacency_matrix(&conn);
        for u in 0..4 {
            assert_eq!(a.row(u).sum(), 2.0);
            assert_eq!(a[(u, u)], 0.0);
        }
        // bipartite between halves: no edges inside a half
        assert_eq!(a[(0, 1)], 0.0);
        assert_eq!(a[(2, 3)], 0.0);
    }

    #[test]
    fn adjacency_of_single_reflection_at_n2_is_two_disjoint_edges() {
        let conn = set(2, &[(true, 0)]);
        let a = adjacency_matrix(&conn);
        assert_eq!(a[(0, 2)], 1.0);
        assert_eq!(a[(1, 3)], 1.0);
        assert_eq!(a.sum(), 4.0);
    }

    #[test]
    fn adjacency_rows_sum_to_degree() {
        for n in 2..=6 {
            for conn in crate::enumerate::all_connection_sets(n) {
                let a = adjacency_matrix(&conn);
                for u in 0..2 * n {
                    assert_eq!(a.row(u).sum(), conn.degree() as f64);
                }
                assert_eq!(a.transpose(), a);
            }
        }
    }

    #[test]
    fn one_dim_values_for_adjacent_reflection_pair() {
        // {b, ba} at even n: discriminant eigenvalues 1, -1, 0, 0
        let conn = set(4, &[(true, 0), (true, 1)]);
        let items = one_dim_eigenpairs(&conn);
        let mus: Vec<f64> = items.iter().map(|i| i.discriminant_eigenvalue).collect();
        assert_eq!(mus, vec![1.0, -1.0, 0.0, 0.0]);
    }

    #[test]
    fn leading_eigenvalue_is_always_one() {
        for n in 2..=6 {
            for conn in crate::enumerate::all_connection_sets(n) {
                let items = one_dim_eigenpairs(&conn);
                assert_eq!(items[0].discriminant_eigenvalue, 1.0);
                assert_eq!(items[0].adjacency_eigenvalue, conn.degree() as f64);
            }
        }
    }

    #[test]
    fn mixed_block_eigenvalues_for_adjacent_reflection_pair() {
        // {b, ba} at odd n: mu_h = +-cos(pi h / n)
        for n in [5usize, 7, 9] {
            let conn = set(n, &[(true, 0), (true, 1)]);
            for h in 1..=(n - 1) / 2 {
                let items = two_dim_eigenpairs(&conn, h).unwrap();
                assert_eq!(items.len(), 2);
                let expect = (std::f64::consts::PI * h as f64 / n as f64).cos();
                assert!((items[0].discriminant_eigenvalue - expect).abs() < 1e-12);
                assert!((items[1].discriminant_eigenvalue + expect).abs() < 1e-12);
                assert_eq!(items[0].multiplicity, 2);
                assert_eq!(items[1].multiplicity, 2);
            }
        }
    }

    #[test]
    fn all_reflections_blocks_are_degenerate_zero() {
        for n in [4usize, 6, 8] {
            let conn = set(n, &(0..n).map(|k| (true, k as i64)).collect::<Vec<_>>());
            for h in 1..=(n - 1) / 2 {
                let items = two_dim_eigenpairs(&conn, h).unwrap();
                assert_eq!(items.len(), 1);
                assert_eq!(items[0].multiplicity, 4);
                assert!(items[0].discriminant_eigenvalue.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn out_of_band_h_is_rejected() {
        let conn = set(6, &[(true, 0), (true, 1)]);
        assert!(two_dim_eigenpairs(&conn, 0).is_err());
        assert!(two_dim_eigenpairs(&conn, 3).is_err());
        assert!(ell_h(&conn, 0).is_err());
    }

    #[test]
    fn spectrum_completeness_and_reconstruction() {
        for n in 2..=6 {
            for conn in crate::enumerate::all_connection_sets(n) {
                let items = full_spectrum(&conn);
                let total: usize = items.iter().map(|i| i.multiplicity).sum();
                assert_eq!(total, 2 * n);

                let size = 2 * n;
                let mut sum_proj = DMatrix::<Complex64>::zeros(size, size);
                let mut sum_mu = DMatrix::<Complex64>::zeros(size, size);
                for it in &items {
                    // trace equals multiplicity; idempotent; Hermitian
                    let tr = it.projector.trace();
                    assert!((tr - Complex64::new(it.multiplicity as f64, 0.0)).norm() < 1e-9);
                    let idem = &it.projector * &it.projector - &it.projector;
                    assert!(max_abs(&idem) < 1e-9);
                    assert!(max_abs(&(it.projector.adjoint() - &it.projector)) < 1e-12);
                    sum_proj += &it.projector;
                    sum_mu += &it.projector * Complex64::new(it.discriminant_eigenvalue, 0.0);
                }
                let eye = DMatrix::<Complex64>::identity(size, size);
                assert!(max_abs(&(sum_proj - eye)) < 1e-8);
                let p = discriminant_matrix(&conn).map(|x| Complex64::new(x, 0.0));
                assert!(max_abs(&(sum_mu - p)) < 1e-8);
            }
        }
    }

    #[test]
    fn projector_columns_are_eigenvectors() {
        for n in 2..=6 {
            for conn in crate::enumerate::all_connection_sets(n) {
                let a = adjacency_matrix(&conn).map(|x| Complex64::new(x, 0.0));
                for it in full_spectrum(&conn) {
                    let lhs = &a * &it.projector;
                    let rhs = &it.projector * Complex64::new(it.adjacency_eigenvalue, 0.0);
                    assert!(
                        max_abs(&(lhs - rhs)) < 1e-8,
                        "eigen equation failed for {:?} at n={n}",
                        it.label
                    );
                }
            }
        }
    }

    #[test]
    fn analytic_eigenvalues_match_dense_oracle() {
        // dense symmetric eigendecomposition as the independent route
        for n in 2..=6 {
            for conn in crate::enumerate::all_connection_sets(n) {
                let mut analytic: Vec<f64> = Vec::new();
                for it in full_spectrum(&conn) {
                    analytic.extend(std::iter::repeat_n(
                        it.adjacency_eigenvalue,
                        it.multiplicity,
                    ));
                }
                analytic.sort_by(f64::total_cmp);
                let dense = nalgebra::SymmetricEigen::new(adjacency_matrix(&conn));
                let mut oracle: Vec<f64> = dense.eigenvalues.iter().copied().collect();
                oracle.sort_by(f64::total_cmp);
                for (a, b) in analytic.iter().zip(&oracle) {
                    assert!((a - b).abs() < 1e-8, "spectra differ at n={n}");
                }
            }
        }
    }

    #[test]
    fn rotation_pair_spectrum_at_n5() {
        // S = {a, a^4}: every block degenerate, eigenvalues cos(2 pi h / 5)
        let conn = set(5, &[(false, 1), (false, 4)]);
        let items = full_spectrum(&conn);
        let mut vals: Vec<(f64, usize)> = items
            .iter()
            .map(|i| (i.discriminant_eigenvalue, i.multiplicity))
            .collect();
        vals.sort_by(|a, b| a.0.total_cmp(&b.0));
        let c1 = (2.0 * std::f64::consts::PI / 5.0).cos();
        let c2 = (4.0 * std::f64::consts::PI / 5.0).cos();
        assert_eq!(vals.len(), 4);
        assert!((vals[0].0 - c2).abs() < 1e-12 && vals[0].1 == 4);
        assert!((vals[1].0 - c1).abs() < 1e-12 && vals[1].1 == 4);
        assert!((vals[2].0 - 1.0).abs() < 1e-12);
        assert!((vals[3].0 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ell_is_unit_and_squares_to_the_eta_ratio() {
        for n in 3..=9usize {
            let conn = set(n, &[(true, 0), (true, 1)]);
            for h in 1..=(n - 1) / 2 {
                let ell = ell_h(&conn, h).unwrap().value;
                assert!((ell.norm() - 1.0).abs() < 1e-12);
                let e2 = eta(conn.s2_star(), h, n);
                let e2inv: BTreeSet<usize> = conn.s2_star().iter().map(|&k| (n - k) % n).collect();
                let target = eta(&e2inv, h, n);
                assert!((ell * ell * e2 - target).norm() < 1e-10);
                // the eta product is real, so the mixed-block eigenvalues are
                assert!((e2 * target - Complex64::new(e2.norm_sqr(), 0.0)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn ell_is_one_for_single_even_reflection() {
        let conn = set(6, &[(true, 0)]);
        for h in 1..=2 {
            let ell = ell_h(&conn, h).unwrap().value;
            assert!((ell - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn ell_phase_cancels_to_alternating_signs() {
        // {b, ba} at odd n, with 2(v-u) = n+1: ell_h * w^{(v-u) h} = (-1)^h
        for n in [3usize, 5, 7, 9] {
            let conn = set(n, &[(true, 0), (true, 1)]);
            let w = UnityRoots::new(n);
            let delta = (n as i64 + 1) / 2; // 2*delta = n+1 mod n
            for h in 1..=(n - 1) / 2 {
                let ell = ell_h(&conn, h).unwrap().value;
                let val = ell * w.pow(delta * h as i64);
                let expect = if h % 2 == 0 { 1.0 } else { -1.0 };
                assert!((val - Complex64::new(expect, 0.0)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn degenerate_block_error_for_normal_sets() {
        let conn = set(6, &(0..6).map(|k| (true, k as i64)).collect::<Vec<_>>());
        assert!(matches!(
            ell_h(&conn, 1),
            Err(Error::DegenerateBlock { h: 1 })
        ));
    }

    #[test]
    fn eigen_equation_holds_for_both_ell_branches() {
        // flipping the sign of ell swaps the two mixed-block eigenspaces but
        // keeps every column an eigenvector of A
        for n in [4usize, 5, 6, 7] {
            let conn = set(n, &[(true, 0), (true, 1)]);
            let a = adjacency_matrix(&conn).map(|x| Complex64::new(x, 0.0));
            for h in 1..=(n - 1) / 2 {
                let items = two_dim_eigenpairs(&conn, h).unwrap();
                let ell = ell_h(&conn, h).unwrap().value;
                let size = 2 * n;
                let w = UnityRoots::new(n);
                // the "plus" vector rebuilt with the flipped branch
                let flipped = DVector::from_iterator(
                    size,
                    (0..size).map(|u| {
                        let scale = 1.0 / (size as f64).sqrt();
                        if u < n {
                            -ell.conj() * w.pow(h as i64 * u as i64) * scale
                        } else {
                            w.pow(h as i64 * (u - n) as i64) * scale
                        }
                    }),
                );
                let image = &a * &flipped;
                // it is an eigenvector of the *minus* eigenvalue
                let lam = Complex64::new(items[1].adjacency_eigenvalue, 0.0);
                assert!((image - flipped * lam).norm() < 1e-9);
            }
        }
    }
}
