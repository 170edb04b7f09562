//! Orientations, skew adjacency matrices, the Kasteleyn orientation of an
//! embedded planar graph and the Gram matrix `B = -S^2`.

use std::collections::VecDeque;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::embedding::PlanarEmbedding;
use crate::error::{param, Error, Result};
use crate::graph::{cartesian_product, make_classic, Classic, Graph, WeightedGraph};
use crate::linalg::{exact_sqrt, rational_determinant, Matrix};
use crate::matching::{enumerate_perfect_matchings, hafnian, list_perfect_matchings};

/// One direction per edge of `graph`; `forward[e]` means edge `e = (lo, hi)`
/// points from `lo` to `hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    graph: Graph,
    forward: Vec<bool>,
}

impl Orientation {
    pub fn new(graph: Graph, forward: Vec<bool>) -> Result<Orientation> {
        if forward.len() != graph.m() {
            return param(format!("{} directions for {} edges", forward.len(), graph.m()));
        }
        Ok(Orientation { graph, forward })
    }

    /// Every edge `lo -> hi`.
    pub fn ascending(graph: Graph) -> Orientation {
        let forward = vec![true; graph.m()];
        Orientation { graph, forward }
    }

    /// From a list of arcs `tail -> head` covering every edge exactly once.
    pub fn from_arcs(graph: Graph, arcs: &[(usize, usize)]) -> Result<Orientation> {
        let mut forward = vec![None; graph.m()];
        for &(t, h) in arcs {
            let Some(e) = graph.edge_index(t, h) else {
                return param(format!("arc {t}->{h} is not an edge"));
            };
            if forward[e].replace(t < h).is_some() {
                return param(format!("edge {t}-{h} oriented twice"));
            }
        }
        let forward = forward
            .into_iter()
            .collect::<Option<Vec<bool>>>()
            .ok_or_else(|| Error::Parameter("some edge has no direction".into()))?;
        Ok(Orientation { graph, forward })
    }

    /// `forward` packed into the low `m` bits of `mask`.
    pub fn from_mask(graph: Graph, mask: u64) -> Orientation {
        let forward = (0..graph.m()).map(|e| mask >> e & 1 == 1).collect();
        Orientation { graph, forward }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn forward(&self) -> &[bool] {
        &self.forward
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        self.graph
            .edges()
            .iter()
            .zip(&self.forward)
            .map(|(&(a, b), &f)| if f { (a, b) } else { (b, a) })
            .collect()
    }

    /// `+1` if the edge points `u -> v`, `-1` if `v -> u`, `0` off edges.
    pub fn sign(&self, u: usize, v: usize) -> i32 {
        match self.graph.edge_index(u, v) {
            None => 0,
            Some(e) if self.forward[e] == (u < v) => 1,
            Some(_) => -1,
        }
    }

    pub fn flip(&mut self, e: usize) {
        self.forward[e] = !self.forward[e];
    }

    pub fn skew_matrix(&self) -> SkewMatrix {
        let mut m = Matrix::zeros(self.graph.n());
        for (u, v) in self.arcs() {
            m[(u, v)] = BigInt::one();
            m[(v, u)] = -BigInt::one();
        }
        SkewMatrix(m)
    }

    /// `s_uv = w(u, v)` along the arc, `-w(u, v)` against it.
    pub fn weighted_skew(&self, w: &WeightedGraph) -> Result<Vec<Vec<BigRational>>> {
        if w.graph() != &self.graph {
            return param("weights belong to a different graph");
        }
        let n = self.graph.n();
        let mut rows = vec![vec![BigRational::zero(); n]; n];
        for (e, (u, v)) in self.arcs().into_iter().enumerate() {
            rows[u][v] = w.weights()[e].clone();
            rows[v][u] = -w.weights()[e].clone();
        }
        Ok(rows)
    }
}

/// Integer skew-symmetric matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewMatrix(Matrix);

impl SkewMatrix {
    pub fn try_from_matrix(m: Matrix) -> Result<SkewMatrix> {
        if !m.is_skew_symmetric() {
            return param("matrix is not skew-symmetric");
        }
        Ok(SkewMatrix(m))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.order()
    }

    pub fn determinant(&self) -> BigInt {
        if self.order() % 2 == 1 {
            return BigInt::zero();
        }
        self.0.determinant()
    }
}

pub fn exact_determinant(m: &Matrix) -> BigInt {
    m.determinant()
}

/// FKT. The spanning tree comes from a BFS at vertex 0 with neighbours in
/// ascending order and its edges point `lo -> hi`. The remaining edges form
/// a spanning tree of the dual rooted at the outer face; bounded faces are
/// fixed leaves first so each ends with an odd number of clockwise edges.
pub fn kasteleyn_orient(e: &PlanarEmbedding) -> Result<Orientation> {
    let g = e.graph();
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let m = g.m();
    let mut forward = vec![true; m];
    if m == 0 {
        return Ok(Orientation { graph: g.clone(), forward });
    }
    let mut in_tree = vec![false; m];
    let mut seen = vec![false; g.n()];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                in_tree[g.edge_index(u, v).unwrap()] = true;
                queue.push_back(v);
            }
        }
    }

    let faces = e.faces();
    let outer = e.outer_index().expect("graph with edges has an outer face");
    let mut dual: Vec<Vec<(usize, usize)>> = vec![Vec::new(); faces.len()];
    for (idx, &(u, v)) in g.edges().iter().enumerate() {
        if !in_tree[idx] {
            let (f, h) = (e.face_of((u, v)).unwrap(), e.face_of((v, u)).unwrap());
            dual[f].push((h, idx));
            dual[h].push((f, idx));
        }
    }
    let mut parent_edge = vec![usize::MAX; faces.len()];
    let mut visited = vec![false; faces.len()];
    visited[outer] = true;
    let mut order = vec![outer];
    let mut head = 0;
    while head < order.len() {
        let f = order[head];
        head += 1;
        for &(h, idx) in &dual[f] {
            if !visited[h] {
                visited[h] = true;
                parent_edge[h] = idx;
                order.push(h);
            }
        }
    }
    if order.len() != faces.len() {
        return Err(Error::Embedding("dual of the cotree is not connected".into()));
    }
    for &f in order.iter().skip(1).rev() {
        let pe = parent_edge[f];
        let mut odd = false;
        let mut pe_dart = None;
        for &(u, v) in faces[f].darts() {
            let idx = g.edge_index(u, v).unwrap();
            if idx == pe {
                pe_dart = Some((u, v));
            } else if counts_in_face(e, f, (u, v)) && forward[idx] != (u < v) {
                odd = !odd;
            }
        }
        let (u, v) = pe_dart.expect("parent edge lies on the face");
        // clockwise for the parent edge exactly when the others are even
        let along = odd;
        forward[pe] = if along { u < v } else { u > v };
    }
    Ok(Orientation { graph: g.clone(), forward })
}

// An edge with both darts on one face is a bridge and lies on no cycle.
fn counts_in_face(e: &PlanarEmbedding, f: usize, (u, v): (usize, usize)) -> bool {
    e.face_of((v, u)) != Some(f)
}

/// Number of edges of bounded face `f` oriented against its walk. Bounded
/// faces are walked counterclockwise, so these are the clockwise edges.
pub fn clockwise_count(e: &PlanarEmbedding, o: &Orientation, f: usize) -> usize {
    e.faces()[f]
        .darts()
        .iter()
        .filter(|&&d| counts_in_face(e, f, d) && o.sign(d.0, d.1) < 0)
        .count()
}

/// Post-hoc Kasteleyn check: every bounded face has an odd clockwise count.
pub fn is_kasteleyn(e: &PlanarEmbedding, o: &Orientation) -> bool {
    (0..e.faces().len())
        .filter(|&f| Some(f) != e.outer_index())
        .all(|f| {
            let cycle_len = e.faces()[f].darts().iter().filter(|&&d| counts_in_face(e, f, d)).count();
            cycle_len == 0 || clockwise_count(e, o, f) % 2 == 1
        })
}

/// `sqrt(det S)` for an orientation trusted to be pfaffian.
pub fn count_with_orientation(o: &Orientation) -> Result<BigUint> {
    let det = o.skew_matrix().determinant();
    exact_sqrt(&det).ok_or_else(|| Error::NotPerfectSquare(det.to_string()))
}

/// Perfect matchings of an embedded planar graph via its Kasteleyn
/// orientation. Odd `n` gives 0.
pub fn count_by_pfaffian(e: &PlanarEmbedding) -> Result<BigUint> {
    if e.graph().n() % 2 == 1 {
        return Ok(BigUint::zero());
    }
    count_with_orientation(&kasteleyn_orient(e)?)
}

/// `B = -S^2 = S S^T`, positive semidefinite with `b_vv = d(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix(Matrix);

impl GramMatrix {
    pub fn new(o: &Orientation) -> GramMatrix {
        let s = o.skew_matrix();
        let b = s.matrix().mul(s.matrix()).neg();
        for v in 0..b.order() {
            assert_eq!(b[(v, v)], BigInt::from(o.graph().degree(v)), "diagonal of B at {v}");
        }
        GramMatrix(b)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn block_det(&self, idx: &[usize]) -> BigInt {
        self.0.principal(idx).determinant()
    }

    pub fn leading_minors_nonnegative(&self) -> bool {
        self.0.leading_minors().iter().all(|d| !d.is_negative())
    }
}

pub fn gram_matrix(o: &Orientation) -> GramMatrix {
    GramMatrix::new(o)
}

/// Weighted `B = -S_w^2`, whose diagonal is `d_{w,2}`.
pub fn weighted_gram(o: &Orientation, w: &WeightedGraph) -> Result<Vec<Vec<BigRational>>> {
    let s = o.weighted_skew(w)?;
    let n = s.len();
    let mut b = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            // -(S S)_ij = sum_k s_ik s_jk
            b[i][j] = (0..n).map(|k| &s[i][k] * &s[j][k]).sum();
        }
        debug_assert_eq!(b[i][i], w.weighted_degree2(i));
    }
    Ok(b)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkewBound {
    /// `det S(G_w)`.
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub lhs: BigRational,
    /// `(perfmat G_w)^2`, the squared hafnian.
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub rhs: BigRational,
    pub holds: bool,
    pub equality: bool,
    /// Every matching carries the same sign in the pfaffian expansion.
    pub uniform_sign: bool,
    /// `det S` equals the square of the expanded pfaffian.
    pub consistent: bool,
}

/// `det S(G_w) <= (perfmat G_w)^2`, with equality exactly when all
/// matchings enter the pfaffian with one sign.
pub fn verify_skew_bound(o: &Orientation, w: Option<&WeightedGraph>, limit: usize) -> Result<SkewBound> {
    let g = o.graph();
    let unit = WeightedGraph::unit(g.clone());
    let w = w.unwrap_or(&unit);
    let s = o.weighted_skew(w)?;
    let lhs = rational_determinant(&s);
    let abs: Vec<Vec<BigRational>> = s.iter().map(|r| r.iter().map(|x| x.abs()).collect()).collect();
    let haf = hafnian(&abs, limit)?;
    let rhs = &haf * &haf;

    let mut pf = BigRational::zero();
    let (mut pos, mut neg) = (false, false);
    for m in list_perfect_matchings(g, limit)? {
        let perm: Vec<usize> = m.iter().flat_map(|&(a, b)| [a, b]).collect();
        let inversions = (0..perm.len())
            .flat_map(|i| (i + 1..perm.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| perm[i] > perm[j])
            .count();
        let mut term: BigRational = m.iter().map(|&(a, b)| s[a][b].clone()).product();
        if inversions % 2 == 1 {
            term = -term;
        }
        if term.is_positive() {
            pos = true;
        } else if term.is_negative() {
            neg = true;
        }
        pf += term;
    }
    Ok(SkewBound {
        holds: lhs <= rhs,
        equality: lhs == rhs,
        uniform_sign: !(pos && neg),
        consistent: &pf * &pf == lhs,
        lhs,
        rhs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrientationSweep {
    pub orientations: u64,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub perfmat: BigUint,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub max_det: BigInt,
    /// Orientations with `det S = perfmat^2`.
    pub pfaffian_orientations: u64,
}

impl OrientationSweep {
    pub fn is_pfaffian(&self) -> bool {
        self.pfaffian_orientations > 0
    }
}

/// Exhaustive sweep over all `2^m` orientations.
pub fn orientation_sweep(g: &Graph, limit: usize) -> Result<OrientationSweep> {
    if g.m() > 24 {
        return param(format!("{} edges is too many for an exhaustive sweep", g.m()));
    }
    let perfmat = enumerate_perfect_matchings(g, limit)?;
    let target = BigInt::from(&perfmat * &perfmat);
    let mut max_det: Option<BigInt> = None;
    let mut hits = 0;
    let total = 1u64 << g.m();
    for mask in 0..total {
        let det = Orientation::from_mask(g.clone(), mask).skew_matrix().determinant();
        if det == target {
            hits += 1;
        }
        if max_det.as_ref().is_none_or(|m| det > *m) {
            max_det = Some(det);
        }
    }
    Ok(OrientationSweep {
        orientations: total,
        perfmat,
        max_det: max_det.unwrap_or_default(),
        pfaffian_orientations: hits,
    })
}

/// `K_4 x K_2` (vertex `(u, u')` is `2u + u'`) with a pfaffian orientation
/// found by search; `det S = 256 = 16^2`.
pub fn k4k2_fixture() -> Orientation {
    const ARCS: [(usize, usize); 16] = [
        (0, 1), (0, 2), (4, 0), (6, 0), (3, 1), (1, 5), (7, 1), (2, 3),
        (2, 4), (6, 2), (5, 3), (7, 3), (4, 5), (6, 4), (7, 5), (7, 6),
    ];
    let g = cartesian_product(
        &make_classic(Classic::Complete(4)).expect("K4"),
        &make_classic(Classic::Complete(2)).expect("K2"),
    );
    Orientation::from_arcs(g, &ARCS).expect("fixture covers every edge")
}
