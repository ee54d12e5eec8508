//! Enumeration of valid connection sets for sweep-style verification.
//!
//! A subset of `D_n \ {1}` is closed under inverses iff it is a union of
//! "atoms": the rotation pairs `{a^k, a^{-k}}`, the self-inverse rotation
//! `a^{n/2}` (even `n` only), and the individual reflections `b a^k`. The
//! exhaustive sweeps used throughout the test suites walk the power set of
//! these atoms.

use crate::dihedral::{ConnectionSet, DihedralElement};

/// The inverse-closed atoms of `D_n \ {1}`.
///
/// Every valid connection set is a nonempty union of these; distinct unions
/// give distinct sets.
pub fn atoms(n: usize) -> Vec<Vec<DihedralElement>> {
    let mut out = Vec::new();
    for k in 1..=(n - 1) / 2 {
        out.push(vec![
            DihedralElement::rotation(k as i64, n),
            DihedralElement::rotation(-(k as i64), n),
        ]);
    }
    if n.is_multiple_of(2) {
        out.push(vec![DihedralElement::rotation(n as i64 / 2, n)]);
    }
    for k in 0..n {
        out.push(vec![DihedralElement::reflection(k as i64, n)]);
    }
    out
}

/// Build the connection set selected by an atom bitmask.
///
/// Returns `None` for the empty mask.
pub fn set_from_mask(n: usize, atoms: &[Vec<DihedralElement>], mask: u64) -> Option<ConnectionSet> {
    if mask == 0 {
        return None;
    }
    let elements = atoms
        .iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .flat_map(|(_, atom)| atom.iter().copied());
    Some(ConnectionSet::new(n, elements).expect("atom unions are always valid"))
}

/// Every valid connection set for `Cay(D_n, S)`.
///
/// The count is `2^a - 1` for `a` atoms, so this is only sensible for small
/// `n` (the suites use `n <= 10`).
pub fn all_connection_sets(n: usize) -> impl Iterator<Item = ConnectionSet> {
    let atoms = atoms(n);
    let count = atoms.len();
    assert!(count < 64, "exhaustive enumeration capped at 63 atoms");
    (1..(1u64 << count)).map(move |mask| set_from_mask(n, &atoms, mask).unwrap())
}
