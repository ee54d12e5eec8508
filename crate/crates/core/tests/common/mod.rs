//! Shared oracles and generators for the integration suites.
//!
//! Each suite pulls a different subset of these helpers.
#![allow(dead_code)]

use dgrover_core::dihedral::{ConnectionSet, DihedralElement};
use dgrover_core::enumerate::{atoms, set_from_mask};
use nalgebra::DMatrix;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

/// Deterministic RNG for reproducible random sweeps.
pub fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x20260810)
}

/// A uniformly random valid connection set (nonempty union of atoms).
pub fn random_connection_set(rng: &mut ChaCha8Rng, n: usize) -> ConnectionSet {
    let ats = atoms(n);
    assert!(ats.len() < 64);
    loop {
        let mask = rng.random::<u64>() & ((1u64 << ats.len()) - 1);
        if mask != 0 {
            return set_from_mask(n, &ats, mask).unwrap();
        }
    }
}

/// Build a set from rotation exponents and reflection exponents.
pub fn set_of(n: usize, rotations: &[i64], reflections: &[i64]) -> ConnectionSet {
    let elems = rotations
        .iter()
        .map(|&k| DihedralElement::rotation(k, n))
        .chain(
            reflections
                .iter()
                .map(|&k| DihedralElement::reflection(k, n)),
        );
    ConnectionSet::new(n, elems).unwrap()
}

/// Sorted eigenvalues of a real symmetric matrix, by dense decomposition.
pub fn dense_symmetric_eigenvalues(a: &DMatrix<f64>) -> Vec<f64> {
    let mut vals: Vec<f64> = nalgebra::SymmetricEigen::new(a.clone())
        .eigenvalues
        .iter()
        .copied()
        .collect();
    vals.sort_by(f64::total_cmp);
    vals
}

/// Dense eigenvalue oracle for the (real, orthogonal) transition matrix.
///
/// Schur iteration on `U` itself stalls on the highly degenerate spectra
/// these walks produce, so the oracle goes through the symmetric part:
/// `(U + U^T)/2` has eigenvalue `cos(theta)` exactly where `U` has
/// `e^{+-i theta}`, and for a real matrix the two signs carry equal
/// multiplicity. Clustered cosines therefore reconstruct the complex
/// multiset; an odd cluster away from `+-1` would falsify realness and
/// panics.
pub fn dense_u_eigenvalues(u: &DMatrix<f64>) -> Vec<num_complex::Complex64> {
    use num_complex::Complex64;
    let sym = (u + u.transpose()) / 2.0;
    let mut cosines = dense_symmetric_eigenvalues(&sym);
    cosines.sort_by(f64::total_cmp);
    let mut out = Vec::with_capacity(cosines.len());
    let mut i = 0;
    while i < cosines.len() {
        let mut j = i + 1;
        while j < cosines.len() && (cosines[j] - cosines[i]).abs() < 1e-7 {
            j += 1;
        }
        let c = cosines[(i + j - 1) / 2];
        let count = j - i;
        if (c - 1.0).abs() < 1e-7 || (c + 1.0).abs() < 1e-7 {
            out.extend(std::iter::repeat_n(Complex64::new(c.round(), 0.0), count));
        } else {
            assert!(
                count % 2 == 0,
                "unpaired rotation eigenvalue cluster at cos={c}"
            );
            let theta = c.clamp(-1.0, 1.0).acos();
            out.extend(std::iter::repeat_n(
                Complex64::from_polar(1.0, theta),
                count / 2,
            ));
            out.extend(std::iter::repeat_n(
                Complex64::from_polar(1.0, -theta),
                count / 2,
            ));
        }
        i = j;
    }
    out
}

/// Minimum transfer time and witnessing pairs by a dense Chebyshev scan.
///
/// Independent of the analytic spectrum machinery: iterates the three-term
/// matrix recurrence on `P` directly and inspects off-diagonal entries.
pub fn dense_min_pst_time(
    p: &DMatrix<f64>,
    tau_max: u64,
    tol: f64,
) -> Option<(u64, Vec<(usize, usize)>)> {
    let size = p.nrows();
    let mut prev = DMatrix::<f64>::identity(size, size);
    let mut cur = p.clone();
    for tau in 1..=tau_max {
        if tau > 1 {
            let next = p * &cur * 2.0 - &prev;
            prev = cur;
            cur = next;
        }
        let mut pairs = Vec::new();
        for u in 0..size {
            for v in (u + 1)..size {
                if (cur[(u, v)] - 1.0).abs() <= tol {
                    pairs.push((u, v));
                }
            }
        }
        if !pairs.is_empty() {
            return Some((tau, pairs));
        }
    }
    None
}
