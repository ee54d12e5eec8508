//! Exact arithmetic in the dihedral group `D_n` and connection-set handling.
//!
//! `D_n = <a, b | a^n = b^2 = 1, bab = a^{-1}>` has order `2n`. Every element
//! has the canonical form `b^e a^k` with `e` in `{0,1}` and `0 <= k < n`;
//! [`DihedralElement`] stores exactly that pair, so equality is structural.
//!
//! A connection set `S` (no identity, `S = S^{-1}`) splits into a rotation
//! part `S_1 = S ∩ <a>` and a reflection part encoded by
//! `S_2 = bS ∩ <a>`, i.e. `b a^k` is in `S` iff `a^k` is in `S_2`. All
//! spectral formulas downstream are driven by the exponent sets of these two
//! parts and their parity counts.

use std::collections::BTreeSet;
use std::fmt;

use crate::representation::eta;
use crate::{Error, ZERO_TOL};

/// An element of `D_n` in canonical form `b^e a^k`.
///
/// The exponent is always reduced modulo `n` at construction, so two values
/// compare equal iff they denote the same group element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DihedralElement {
    reflection: bool,
    exponent: usize,
}

impl DihedralElement {
    /// The identity element `a^0`.
    pub const fn identity() -> Self {
        DihedralElement {
            reflection: false,
            exponent: 0,
        }
    }

    /// The rotation `a^k`, with `k` reduced modulo `n`.
    pub fn rotation(k: i64, n: usize) -> Self {
        DihedralElement {
            reflection: false,
            exponent: reduce(k, n),
        }
    }

    /// The reflection `b a^k`, with `k` reduced modulo `n`.
    pub fn reflection(k: i64, n: usize) -> Self {
        DihedralElement {
            reflection: true,
            exponent: reduce(k, n),
        }
    }

    /// Whether the canonical form carries the `b` factor.
    pub fn is_reflection(self) -> bool {
        self.reflection
    }

    /// The exponent `k` of the canonical form `b^e a^k`.
    pub fn exponent(self) -> usize {
        self.exponent
    }

    pub fn is_identity(self) -> bool {
        !self.reflection && self.exponent == 0
    }

    /// The product `self * other` in `D_n`.
    ///
    /// Follows from the presentation: `a^j a^k = a^{j+k}`,
    /// `a^j (b a^k) = b a^{k-j}`, `(b a^j) a^k = b a^{j+k}`, and
    /// `(b a^j)(b a^k) = a^{k-j}`, exponents modulo `n`.
    pub fn multiply(self, other: Self, n: usize) -> Self {
        let exponent = if other.reflection {
            reduce(other.exponent as i64 - self.exponent as i64, n)
        } else {
            reduce(self.exponent as i64 + other.exponent as i64, n)
        };
        DihedralElement {
            reflection: self.reflection ^ other.reflection,
            exponent,
        }
    }

    /// The group inverse: `(a^k)^{-1} = a^{n-k}` and `(b a^k)^{-1} = b a^k`.
    pub fn inverse(self, n: usize) -> Self {
        if self.reflection {
            self
        } else {
            DihedralElement {
                reflection: false,
                exponent: reduce(-(self.exponent as i64), n),
            }
        }
    }
}

impl fmt::Display for DihedralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.reflection, self.exponent) {
            (false, 0) => write!(f, "1"),
            (false, k) => write!(f, "a^{k}"),
            (true, 0) => write!(f, "b"),
            (true, k) => write!(f, "b*a^{k}"),
        }
    }
}

fn reduce(k: i64, n: usize) -> usize {
    debug_assert!(n >= 1);
    k.rem_euclid(n as i64) as usize
}

/// Enumerate all `2n` elements of `D_n` in label order.
pub fn all_elements(n: usize) -> impl Iterator<Item = DihedralElement> {
    (0..2 * n).map(move |u| {
        if u < n {
            DihedralElement::rotation(u as i64, n)
        } else {
            DihedralElement::reflection((u - n) as i64, n)
        }
    })
}

/// The conjugacy class of `x` in `D_n`, by direct enumeration of all
/// conjugators `g x g^{-1}`.
pub fn conjugacy_class(x: DihedralElement, n: usize) -> BTreeSet<DihedralElement> {
    all_elements(n)
        .map(|g| g.multiply(x, n).multiply(g.inverse(n), n))
        .collect()
}

/// A validated connection set for `Cay(D_n, S)` together with its
/// rotation/reflection decomposition and parity counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionSet {
    n: usize,
    elements: BTreeSet<DihedralElement>,
    s1_star: BTreeSet<usize>,
    s2_star: BTreeSet<usize>,
}

impl ConnectionSet {
    /// Validate a raw set: nonempty, identity-free, closed under inverses.
    ///
    /// Duplicate inputs collapse (the iterator feeds a set); exponents are
    /// assumed already reduced modulo `n`, which the element constructors
    /// guarantee.
    pub fn new(n: usize, raw: impl IntoIterator<Item = DihedralElement>) -> Result<Self, Error> {
        if n < 2 {
            return Err(Error::ModulusTooSmall(n));
        }
        let elements: BTreeSet<DihedralElement> = raw.into_iter().collect();
        if elements.is_empty() {
            return Err(Error::EmptySet);
        }
        for &x in &elements {
            if x.is_identity() {
                return Err(Error::IdentityInSet);
            }
            if !elements.contains(&x.inverse(n)) {
                return Err(Error::NotSymmetric(x.to_string()));
            }
        }
        let s1_star = elements
            .iter()
            .filter(|x| !x.is_reflection())
            .map(|x| x.exponent())
            .collect();
        let s2_star = elements
            .iter()
            .filter(|x| x.is_reflection())
            .map(|x| x.exponent())
            .collect();
        Ok(ConnectionSet {
            n,
            elements,
            s1_star,
            s2_star,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of vertices of `Cay(D_n, S)`, i.e. `2n`.
    pub fn vertex_count(&self) -> usize {
        2 * self.n
    }

    pub fn elements(&self) -> &BTreeSet<DihedralElement> {
        &self.elements
    }

    pub fn contains(&self, x: DihedralElement) -> bool {
        self.elements.contains(&x)
    }

    /// Exponents `k` with `a^k` in `S`.
    pub fn s1_star(&self) -> &BTreeSet<usize> {
        &self.s1_star
    }

    /// Exponents `k` with `b a^k` in `S`.
    pub fn s2_star(&self) -> &BTreeSet<usize> {
        &self.s2_star
    }

    /// Degree `d = |S|` of the Cayley graph.
    pub fn degree(&self) -> usize {
        self.elements.len()
    }

    /// `|S_1|`, the number of rotations in `S`.
    pub fn s1(&self) -> usize {
        self.s1_star.len()
    }

    /// `|S_2|`, the number of reflections in `S`.
    pub fn s2(&self) -> usize {
        self.s2_star.len()
    }

    /// Count of even exponents among the rotations of `S`.
    pub fn d10(&self) -> usize {
        self.s1_star.iter().filter(|k| *k % 2 == 0).count()
    }

    /// Count of odd exponents among the rotations of `S`.
    pub fn d11(&self) -> usize {
        self.s1_star.iter().filter(|k| *k % 2 == 1).count()
    }

    /// Count of even exponents among the reflections of `S`.
    pub fn d20(&self) -> usize {
        self.s2_star.iter().filter(|k| *k % 2 == 0).count()
    }

    /// Count of odd exponents among the reflections of `S`.
    pub fn d21(&self) -> usize {
        self.s2_star.iter().filter(|k| *k % 2 == 1).count()
    }
}

/// Outcome of the three-way normality test, tagged per method.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormalityVerdict {
    /// The agreed verdict: `S` is a union of conjugacy classes.
    pub normal: bool,
    /// Method 1: `S` is closed under conjugation (oracle).
    pub by_closure: bool,
    /// Method 2: `S_2` is one of the closed-form reflection classes.
    pub by_membership: bool,
    /// Method 3: `eta_h(S_2) = 0` for every `h` in the spectral band.
    pub by_eta: bool,
}

/// Decide whether `S` is a normal subset of `D_n`, three independent ways.
///
/// The methods must agree; disagreement is an implementation bug and is
/// reported as [`Error::InternalInconsistency`].
pub fn is_normal(conn: &ConnectionSet) -> Result<NormalityVerdict, Error> {
    let n = conn.n();

    let by_closure = conn
        .elements()
        .iter()
        .all(|&x| conjugacy_class(x, n).iter().all(|c| conn.contains(*c)));

    // For a symmetric set the rotation part is automatically
    // conjugacy-closed, so normality is decided by the reflection part:
    // S_2 must be empty, all of <a>, or (for even n) one of the two cosets
    // of <a^2>.
    let s2 = conn.s2_star();
    let all: BTreeSet<usize> = (0..n).collect();
    let evens: BTreeSet<usize> = (0..n).step_by(2).collect();
    let odds: BTreeSet<usize> = (1..n).step_by(2).collect();
    let by_membership = if n % 2 == 1 {
        s2.is_empty() || *s2 == all
    } else {
        s2.is_empty() || *s2 == all || *s2 == evens || *s2 == odds
    };

    let band = (n - 1) / 2;
    let by_eta = (1..=band).all(|h| eta(s2, h, n).norm() <= ZERO_TOL);

    if by_closure != by_membership || by_membership != by_eta {
        return Err(Error::InternalInconsistency {
            closure: by_closure,
            membership: by_membership,
            eta: by_eta,
        });
    }
    Ok(NormalityVerdict {
        normal: by_closure,
        by_closure,
        by_membership,
        by_eta,
    })
}

/// Which half of the vertex set a label falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Half {
    /// Rotations `a^u`, labels `0..n`.
    G0,
    /// Reflections `b a^{u-n}`, labels `n..2n`.
    G1,
}

/// A vertex label of `Cay(D_n, S)` in `0..2n`.
///
/// Label `u < n` denotes `a^u`; label `n <= u < 2n` denotes `b a^{u-n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexLabel(pub usize);

impl VertexLabel {
    pub fn index(self) -> usize {
        self.0
    }

    pub fn half(self, n: usize) -> Half {
        if self.0 < n {
            Half::G0
        } else {
            Half::G1
        }
    }
}

/// The label of a group element.
pub fn vertex_of(x: DihedralElement, n: usize) -> VertexLabel {
    if x.is_reflection() {
        VertexLabel(n + x.exponent())
    } else {
        VertexLabel(x.exponent())
    }
}

/// The group element carried by a label; inverse of [`vertex_of`].
pub fn label_of(u: VertexLabel, n: usize) -> Result<DihedralElement, Error> {
    if u.0 >= 2 * n {
        return Err(Error::IndexOutOfRange {
            index: u.0,
            limit: 2 * n,
        });
    }
    Ok(if u.0 < n {
        DihedralElement::rotation(u.0 as i64, n)
    } else {
        DihedralElement::reflection((u.0 - n) as i64, n)
    })
}
