//! Irreducible unitary representations of `D_n` and exponential sums.
//!
//! `D_n` has the one-dimensional characters `psi_1` (trivial) and `psi_2`
//! (sign of the reflection factor); for even `n` also `psi_3`, `psi_4`
//! (alternating in the rotation exponent); and the two-dimensional
//! representations `rho_h` for `1 <= h <= floor((n-1)/2)`:
//!
//! ```text
//! rho_h(a^k)   = [ w^{hk}    0     ]      rho_h(b a^k) = [ 0        w^{-hk} ]
//!                [ 0         w^{-hk}]                    [ w^{hk}   0       ]
//! ```
//!
//! with `w = e^{2 pi i / n}`. The exponential sum
//! `eta_h(C) = sum_{k in C*} w^{hk}` over an exponent set `C*` drives every
//! eigenvalue formula in [`crate::spectrum`].

use std::collections::BTreeSet;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::dihedral::DihedralElement;
use crate::Error;

/// Powers of the primitive `n`-th root of unity `w = e^{2 pi i / n}`.
///
/// Each power is evaluated directly from its reduced angle, so there is no
/// phase drift however large the requested exponent.
#[derive(Debug, Clone)]
pub struct UnityRoots {
    n: usize,
    powers: Vec<Complex64>,
}

impl UnityRoots {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let powers = (0..n)
            .map(|k| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64))
            .collect();
        UnityRoots { n, powers }
    }

    /// `w^e` with `e` reduced modulo `n`; negative exponents allowed.
    pub fn pow(&self, e: i64) -> Complex64 {
        self.powers[e.rem_euclid(self.n as i64) as usize]
    }
}

/// An irreducible representation of `D_n`.
///
/// `Psi3` and `Psi4` exist only for even `n`; `Rho(h)` requires
/// `1 <= h <= floor((n-1)/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IrreducibleRep {
    Psi1,
    Psi2,
    Psi3,
    Psi4,
    Rho(usize),
}

impl IrreducibleRep {
    pub fn degree(self) -> usize {
        match self {
            IrreducibleRep::Rho(_) => 2,
            _ => 1,
        }
    }

    fn name(self) -> String {
        match self {
            IrreducibleRep::Psi1 => "psi1".into(),
            IrreducibleRep::Psi2 => "psi2".into(),
            IrreducibleRep::Psi3 => "psi3".into(),
            IrreducibleRep::Psi4 => "psi4".into(),
            IrreducibleRep::Rho(h) => format!("rho{h}"),
        }
    }
}

/// The largest two-dimensional block index, `floor((n-1)/2)`.
pub fn rho_band(n: usize) -> usize {
    (n - 1) / 2
}

/// The complete list of irreducible representations of `D_n`.
///
/// The sum of squared degrees equals `2n` (checked in tests): two or four
/// one-dimensional characters according to the parity of `n`, plus the
/// two-dimensional `rho_h`.
pub fn list_irreps(n: usize) -> Vec<IrreducibleRep> {
    let mut reps = vec![IrreducibleRep::Psi1, IrreducibleRep::Psi2];
    if n.is_multiple_of(2) {
        reps.push(IrreducibleRep::Psi3);
        reps.push(IrreducibleRep::Psi4);
    }
    reps.extend((1..=rho_band(n)).map(IrreducibleRep::Rho));
    reps
}

/// Evaluate a representation at a group element as a unitary matrix.
pub fn evaluate(
    rep: IrreducibleRep,
    x: DihedralElement,
    n: usize,
) -> Result<DMatrix<Complex64>, Error> {
    let bad = |rep: IrreducibleRep| Error::RepNotDefined {
        label: rep.name(),
        n,
    };
    let k = x.exponent();
    let sign_k = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let scalar = |v: f64| DMatrix::from_element(1, 1, Complex64::new(v, 0.0));
    match rep {
        IrreducibleRep::Psi1 => Ok(scalar(1.0)),
        IrreducibleRep::Psi2 => Ok(scalar(if x.is_reflection() { -1.0 } else { 1.0 })),
        IrreducibleRep::Psi3 => {
            if n % 2 == 1 {
                return Err(bad(rep));
            }
            Ok(scalar(sign_k))
        }
        IrreducibleRep::Psi4 => {
            if n % 2 == 1 {
                return Err(bad(rep));
            }
            Ok(scalar(if x.is_reflection() { -sign_k } else { sign_k }))
        }
        IrreducibleRep::Rho(h) => {
            if h < 1 || h > rho_band(n) {
                return Err(bad(rep));
            }
            let w = UnityRoots::new(n);
            let hk = (h * k) as i64;
            let zero = Complex64::new(0.0, 0.0);
            let m = if x.is_reflection() {
                DMatrix::from_row_slice(2, 2, &[zero, w.pow(-hk), w.pow(hk), zero])
            } else {
                DMatrix::from_row_slice(2, 2, &[w.pow(hk), zero, zero, w.pow(-hk)])
            };
            Ok(m)
        }
    }
}

/// The exponential sum `eta_h(C) = sum_{k in C*} w_n^{hk}`.
///
/// `eta_0(C) = |C*|`, and an empty set gives zero. Any `h` is accepted; the
/// spectral theorems only use `1 <= h <= floor((n-1)/2)`, but other indices
/// are useful for inverse-transform oracles.
pub fn eta(c_star: &BTreeSet<usize>, h: usize, n: usize) -> Complex64 {
    let w = UnityRoots::new(n);
    c_star.iter().map(|&k| w.pow((h * k) as i64)).sum()
}
