//! Arc-space Grover-walk operators, transition spectrum, and periodicity.
//!
//! The walk lives on the symmetric arcs of the graph: every edge `{u, v}`
//! contributes the two arcs `(u, v)` and `(v, u)`. The shift `R` swaps each
//! arc with its reversal, the boundary matrix `N` has `1/sqrt(deg u)` at
//! `(u, a)` whenever arc `a` terminates at `u`, and one step of the walk is
//! `U = R (2 N* N - I)`. The `|V| x |V|` discriminant `P = N R N*` equals
//! `A/d` on a `d`-regular graph and determines the spectrum of `U`: each
//! discriminant eigenvalue `mu` lifts to `e^{+- i arccos(mu)}`, topped up by
//! flat `+1` / `-1` eigenvalues counted by the cycle rank `b1 = |E| - |V| + 1`
//! and bipartiteness.

use std::collections::HashMap;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::dihedral::{label_of, ConnectionSet, VertexLabel};
use crate::spectrum::{adjacency_matrix, EigenItem};
use crate::{Error, ZERO_TOL};

/// The ordered symmetric arcs of a graph with their reversal pairing.
#[derive(Debug, Clone)]
pub struct ArcSpace {
    arcs: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
    reversal: Vec<usize>,
}

impl ArcSpace {
    /// Build the arc list from an adjacency matrix, sorted lexicographically
    /// by `(origin, terminus)` so operator layouts are deterministic.
    pub fn from_adjacency(a: &DMatrix<f64>) -> Self {
        let size = a.nrows();
        let mut arcs = Vec::new();
        for u in 0..size {
            for v in 0..size {
                if u != v && a[(u, v)] != 0.0 {
                    arcs.push((u, v));
                }
            }
        }
        let index: HashMap<(usize, usize), usize> =
            arcs.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let reversal = arcs.iter().map(|&(u, v)| index[&(v, u)]).collect();
        ArcSpace {
            arcs,
            index,
            reversal,
        }
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn origin(&self, a: usize) -> usize {
        self.arcs[a].0
    }

    pub fn terminus(&self, a: usize) -> usize {
        self.arcs[a].1
    }

    pub fn index_of(&self, origin: usize, terminus: usize) -> Option<usize> {
        self.index.get(&(origin, terminus)).copied()
    }

    /// The index of the reversed arc.
    pub fn reversal(&self, a: usize) -> usize {
        self.reversal[a]
    }
}

/// The dense walk operators of one graph instance.
#[derive(Debug, Clone)]
pub struct WalkOperators {
    pub arc_space: ArcSpace,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub degree: usize,
    /// Shift matrix `R` (arc-reversal permutation).
    pub shift: DMatrix<f64>,
    /// Boundary matrix `N`, `|V| x |A|`.
    pub boundary: DMatrix<f64>,
    /// Transition matrix `U = R (2 N* N - I)`.
    pub transition: DMatrix<f64>,
    /// Discriminant `P = N R N*`.
    pub discriminant: DMatrix<f64>,
}

/// A unit vector over the arcs.
#[derive(Debug, Clone)]
pub struct WalkState {
    pub amplitudes: DVector<Complex64>,
}

impl WalkState {
    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }
}

/// Construct `R`, `N`, `U`, and `P` for `Cay(D_n, S)`.
pub fn build_operators(conn: &ConnectionSet) -> WalkOperators {
    let a = adjacency_matrix(conn);
    let arc_space = ArcSpace::from_adjacency(&a);
    let m = arc_space.len();
    let vertex_count = conn.vertex_count();
    let degree = conn.degree();

    let mut shift = DMatrix::zeros(m, m);
    for arc in 0..m {
        shift[(arc_space.reversal(arc), arc)] = 1.0;
    }

    let amp = 1.0 / (degree as f64).sqrt();
    let mut boundary = DMatrix::zeros(vertex_count, m);
    for arc in 0..m {
        boundary[(arc_space.terminus(arc), arc)] = amp;
    }

    // coin = 2 N* N - I, then U = R * coin; multiplying by the permutation R
    // is a row permutation, applied directly.
    let mut coin = boundary.transpose() * &boundary * 2.0;
    for arc in 0..m {
        coin[(arc, arc)] -= 1.0;
    }
    let mut transition = DMatrix::zeros(m, m);
    for arc in 0..m {
        transition
            .row_mut(arc)
            .copy_from(&coin.row(arc_space.reversal(arc)));
    }

    let discriminant = &boundary * &shift * boundary.transpose();

    WalkOperators {
        arc_space,
        vertex_count,
        edge_count: m / 2,
        degree,
        shift,
        boundary,
        transition,
        discriminant,
    }
}

impl WalkOperators {
    /// Largest absolute entry of `U^T U - I`, evaluated from the stored
    /// transition matrix through its nonzero pattern (each arc row has at
    /// most `degree` entries, which keeps the Gram product cheap).
    pub fn max_unitarity_defect(&self) -> f64 {
        let m = self.arc_space.len();
        let rows: Vec<Vec<(usize, f64)>> = (0..m)
            .map(|a| {
                (0..m)
                    .filter(|&b| self.transition[(a, b)] != 0.0)
                    .map(|b| (b, self.transition[(a, b)]))
                    .collect()
            })
            .collect();
        let mut gram = DMatrix::<f64>::zeros(m, m);
        for row in &rows {
            for &(i, vi) in row {
                for &(j, vj) in row {
                    gram[(i, j)] += vi * vj;
                }
            }
        }
        let mut defect = 0.0f64;
        for i in 0..m {
            for j in 0..m {
                let target = if i == j { 1.0 } else { 0.0 };
                defect = defect.max((gram[(i, j)] - target).abs());
            }
        }
        defect
    }
}

/// The vertex-type state `Phi_u = N* e_u`: amplitude `1/sqrt(d)` on every
/// arc pointing into `u`.
pub fn vertex_state(ops: &WalkOperators, u: VertexLabel) -> WalkState {
    let m = ops.arc_space.len();
    let amp = Complex64::new(1.0 / (ops.degree as f64).sqrt(), 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let amplitudes = DVector::from_iterator(
        m,
        (0..m).map(|a| {
            if ops.arc_space.terminus(a) == u.index() {
                amp
            } else {
                zero
            }
        }),
    );
    WalkState { amplitudes }
}

/// Apply `t` steps of the walk: `U^t` times the state.
pub fn evolve(ops: &WalkOperators, state: &WalkState, t: u64) -> WalkState {
    let mut re = state.amplitudes.map(|z| z.re);
    let mut im = state.amplitudes.map(|z| z.im);
    for _ in 0..t {
        re = &ops.transition * re;
        im = &ops.transition * im;
    }
    let amplitudes = DVector::from_iterator(
        re.len(),
        re.iter()
            .zip(im.iter())
            .map(|(&r, &i)| Complex64::new(r, i)),
    );
    WalkState { amplitudes }
}

/// Neighbor labels of a vertex, straight from the group structure.
fn neighbors(conn: &ConnectionSet, u: usize) -> Vec<usize> {
    let n = conn.n();
    let gu = label_of(VertexLabel(u), n).unwrap();
    conn.elements()
        .iter()
        .map(|s| crate::dihedral::vertex_of(s.inverse(n).multiply(gu, n), n).index())
        .collect()
}

/// Connected components and 2-colorability in one breadth-first pass.
fn graph_shape(conn: &ConnectionSet) -> (usize, bool) {
    let size = conn.vertex_count();
    let mut color: Vec<i8> = vec![-1; size];
    let mut components = 0;
    let mut bipartite = true;
    for start in 0..size {
        if color[start] >= 0 {
            continue;
        }
        components += 1;
        color[start] = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for v in neighbors(conn, u) {
                if color[v] < 0 {
                    color[v] = 1 - color[u];
                    queue.push_back(v);
                } else if color[v] == color[u] {
                    bipartite = false;
                }
            }
        }
    }
    (components, bipartite)
}

/// Whether `Cay(D_n, S)` admits a proper 2-coloring.
pub fn is_bipartite(conn: &ConnectionSet) -> bool {
    graph_shape(conn).1
}

/// Number of connected components of `Cay(D_n, S)`.
pub fn component_count(conn: &ConnectionSet) -> usize {
    graph_shape(conn).0
}

/// The transition-matrix spectrum assembled from discriminant eigenvalues.
#[derive(Debug, Clone)]
pub struct TransitionSpectrum {
    /// Distinct eigenvalues of `U` with multiplicities. Values at `+-1` are
    /// merged with the flat part so the total stays `2|E|`.
    pub eigenvalues: Vec<(Complex64, usize)>,
    /// Set when the cycle-rank bookkeeping was applied to a disconnected
    /// graph, where the flat multiplicities are not reliable.
    pub disconnected: bool,
}

impl TransitionSpectrum {
    pub fn total_multiplicity(&self) -> usize {
        self.eigenvalues.iter().map(|&(_, m)| m).sum()
    }
}

/// Lift the discriminant spectrum to the transition-matrix spectrum.
///
/// Every eigenvalue `mu` of `P` contributes `e^{+- i arccos(mu)}` with its
/// multiplicity; the values `+1` and `-1` (where the pair degenerates) are
/// merged with the flat multiplicities `b1` and `b1 - 1 + 1_B`.
pub fn transition_spectrum(
    items: &[EigenItem],
    edge_count: usize,
    vertex_count: usize,
    component_count: usize,
    bipartite: bool,
) -> Result<TransitionSpectrum, Error> {
    let b1 = edge_count as i64 - vertex_count as i64 + 1;
    let minus_one_flat = b1 - 1 + i64::from(bipartite);
    if b1 < 0 || minus_one_flat < 0 {
        return Err(Error::NegativeMultiplicity {
            b1,
            minus_one: minus_one_flat,
        });
    }

    let mut plus_one = b1 as usize;
    let mut minus_one = minus_one_flat as usize;
    let mut eigenvalues = Vec::new();
    for it in items {
        let mu = it.discriminant_eigenvalue;
        if (mu - 1.0).abs() <= ZERO_TOL {
            plus_one += it.multiplicity;
        } else if (mu + 1.0).abs() <= ZERO_TOL {
            minus_one += it.multiplicity;
        } else {
            let theta = mu.clamp(-1.0, 1.0).acos();
            eigenvalues.push((Complex64::from_polar(1.0, theta), it.multiplicity));
            eigenvalues.push((Complex64::from_polar(1.0, -theta), it.multiplicity));
        }
    }
    if plus_one > 0 {
        eigenvalues.push((Complex64::new(1.0, 0.0), plus_one));
    }
    if minus_one > 0 {
        eigenvalues.push((Complex64::new(-1.0, 0.0), minus_one));
    }
    Ok(TransitionSpectrum {
        eigenvalues,
        disconnected: component_count > 1,
    })
}

/// Whether two complex multisets match within `tol`, by greedy
/// nearest-neighbor pairing. Used to compare analytic spectra against dense
/// eigendecompositions, where sorting is unstable under roundoff.
pub fn complex_multisets_close(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut remaining: Vec<Complex64> = b.to_vec();
    for &x in a {
        let Some((idx, dist)) = remaining
            .iter()
            .enumerate()
            .map(|(i, y)| (i, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
        else {
            return false;
        };
        if dist > tol {
            return false;
        }
        remaining.swap_remove(idx);
    }
    true
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> Option<u64> {
    (a / gcd(a, b)).checked_mul(b)
}

/// Best rational approximation `p/q` to `x` in `[0, 1]` with `q <= q_max`,
/// by continued-fraction convergents. `None` if no convergent lands within
/// `tol` before the denominator bound.
fn best_rational(x: f64, q_max: u64, tol: f64) -> Option<(u64, u64)> {
    let (mut p0, mut q0) = (1u64, 0u64);
    let (mut p1, mut q1) = (x.floor() as u64, 1u64);
    let mut frac = x - x.floor();
    loop {
        if q1 > q_max {
            return None;
        }
        if (x - p1 as f64 / q1 as f64).abs() <= tol {
            return Some((p1, q1));
        }
        if frac < 1e-15 {
            return None;
        }
        let inv = 1.0 / frac;
        let a = inv.floor();
        if a > 1e15 {
            return None;
        }
        frac = inv - a;
        let a = a as u64;
        let p2 = a.checked_mul(p1)?.checked_add(p0)?;
        let q2 = a.checked_mul(q1)?.checked_add(q0)?;
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
}

/// Multiplicative order of `e^{+- i arccos(mu)}`, by rational-angle
/// detection: write `arccos(mu)/pi = p/q` and cross-check that
/// `|T_q(mu)| = 1`; the order is then `2q / gcd(p, 2q)`.
fn eigenvalue_order(mu: f64, q_max: u64) -> Option<u64> {
    let mu = mu.clamp(-1.0, 1.0);
    let theta = mu.acos() / std::f64::consts::PI;
    let (p, q) = best_rational(theta, q_max, 1e-9)?;
    let t_q = (q as f64 * mu.acos()).cos();
    if (t_q.abs() - 1.0).abs() > 1e-9 {
        return None;
    }
    Some(2 * q / gcd(p, 2 * q))
}

/// Walk period from discriminant eigenvalues given as `(mu, multiplicity)`.
///
/// Returns the least common multiple of the orders of all transition
/// eigenvalues, or `None` when any angle resists rational detection within
/// the denominator bound, when the flat multiplicities are invalid, or when
/// the graph is disconnected (the cycle-rank bookkeeping assumes one
/// component).
pub fn period_from_values(
    values: &[(f64, usize)],
    edge_count: usize,
    vertex_count: usize,
    component_count: usize,
    bipartite: bool,
    q_max: u64,
) -> Option<u64> {
    if component_count > 1 {
        return None;
    }
    let b1 = edge_count as i64 - vertex_count as i64 + 1;
    let minus_one_flat = b1 - 1 + i64::from(bipartite);
    if b1 < 0 || minus_one_flat < 0 {
        return None;
    }
    let mut acc = 1u64;
    if minus_one_flat > 0 {
        acc = 2;
    }
    for &(mu, mult) in values {
        if mult == 0 {
            continue;
        }
        let order = eigenvalue_order(mu, q_max)?;
        acc = lcm(acc, order)?;
    }
    Some(acc)
}

/// Walk period from analytic spectrum items; see [`period_from_values`].
pub fn period(
    items: &[EigenItem],
    edge_count: usize,
    vertex_count: usize,
    component_count: usize,
    bipartite: bool,
    q_max: u64,
) -> Option<u64> {
    let values: Vec<(f64, usize)> = items
        .iter()
        .map(|it| (it.discriminant_eigenvalue, it.multiplicity))
        .collect();
    period_from_values(
        &values,
        edge_count,
        vertex_count,
        component_count,
        bipartite,
        q_max,
    )
}
