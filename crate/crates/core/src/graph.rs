//! Simple undirected graphs and the structural queries the bounds rely on.
//!
//! Vertices are the dense indices `0..n`. The JSON interchange format is
//! 1-based (`{"n": 4, "edges": [[1,2], ...]}`) and is converted at the
//! boundary, see [`GraphJson`].

use std::collections::{HashMap, VecDeque};

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    /// Sorted, each pair stored as `(lo, hi)`.
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list. Pairs may be given in either order;
    /// self-loops, duplicates and out-of-range endpoints are rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return param(format!("edge ({u},{v}) out of range for n={n}"));
            }
            if u == v {
                return param(format!("self-loop at vertex {u}"));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return param(format!("duplicate edge ({},{})", w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &list {
            adj[u].push(v);
            adj[v].push(u);
        }
        for nb in &mut adj {
            nb.sort_unstable();
        }
        Ok(Graph { n, edges: list, adj })
    }

    pub fn empty(n: usize) -> Graph {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// `Some(d)` when every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|a| a.len() == d).then_some(d)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Position of the edge `{u, v}` in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    /// Connected components as a label per vertex, labels `0..count`.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if label[w] == usize::MAX {
                        label[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.components().0 == 1
    }

    /// Subgraph induced on `keep`, relabelled in increasing vertex order.
    /// Returns the subgraph and the map from new to old indices.
    pub fn induced(&self, keep: &[bool]) -> (Graph, Vec<usize>) {
        let old: Vec<usize> = (0..self.n).filter(|&v| keep[v]).collect();
        let mut new_of = vec![usize::MAX; self.n];
        for (i, &v) in old.iter().enumerate() {
            new_of[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| keep[u] && keep[v])
            .map(|&(u, v)| (new_of[u], new_of[v]));
        let g = Graph::new(old.len(), edges).expect("induced subgraph of a simple graph");
        (g, old)
    }

    /// The 0/1 adjacency matrix as nested rows.
    pub fn adjacency_rows(&self) -> Vec<Vec<u8>> {
        let mut a = vec![vec![0u8; self.n]; self.n];
        for &(u, v) in &self.edges {
            a[u][v] = 1;
            a[v][u] = 1;
        }
        a
    }
}

/// The named families with fixed, documented vertex numbering.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classic {
    /// `K_n`, vertices `0..n`.
    Complete(usize),
    /// `C_n` with edges `i -- i+1 (mod n)`.
    Cycle(usize),
    /// Path on `n` vertices, `0 -- 1 -- ... -- n-1`.
    Path(usize),
    /// `K_{r,r}` with sides `0..r` and `r..2r`.
    CompleteBipartite(usize),
    /// `K_{1,k}` with centre `0`.
    Star(usize),
    /// `K_6` minus the matching `{0,1}, {2,3}, {4,5}`.
    Octahedron,
    /// The 20-vertex fullerene, numbered ring-major like `pentacap(1)`.
    Dodecahedron,
    /// `C_n x K_2`, numbered like [`cartesian_product`].
    Prism(usize),
}

pub fn make_classic(kind: Classic) -> Result<Graph> {
    match kind {
        Classic::Complete(n) => {
            if n < 1 {
                return param("K_n needs n >= 1");
            }
            Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
        }
        Classic::Cycle(n) => {
            if n < 3 {
                return param("C_n needs n >= 3");
            }
            Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
        }
        Classic::Path(n) => {
            if n < 1 {
                return param("P_n needs n >= 1");
            }
            Graph::new(n, (1..n).map(|i| (i - 1, i)))
        }
        Classic::CompleteBipartite(r) => {
            if r < 1 {
                return param("K_{r,r} needs r >= 1");
            }
            Graph::new(2 * r, (0..r).flat_map(|u| (r..2 * r).map(move |v| (u, v))))
        }
        Classic::Star(k) => {
            if k < 1 {
                return param("K_{1,k} needs k >= 1");
            }
            Graph::new(k + 1, (1..=k).map(|v| (0, v)))
        }
        Classic::Octahedron => Graph::new(
            6,
            (0..6usize)
                .flat_map(|u| (u + 1..6).map(move |v| (u, v)))
                .filter(|&(u, v)| !(u % 2 == 0 && v == u + 1)),
        ),
        Classic::Dodecahedron => Graph::new(20, crate::fullerene::cap_edges(5, 1)),
        Classic::Prism(n) => {
            let c = make_classic(Classic::Cycle(n))?;
            Ok(cartesian_product(&c, &make_classic(Classic::Complete(2))?))
        }
    }
}

/// `G x H`: vertex `(u, u')` becomes `u * |V(H)| + u'`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Graph {
    let nh = h.n();
    let id = |u: usize, up: usize| u * nh + up;
    let mut edges = Vec::with_capacity(g.n() * h.m() + nh * g.m());
    for u in 0..g.n() {
        for &(a, b) in h.edges() {
            edges.push((id(u, a), id(u, b)));
        }
    }
    for up in 0..nh {
        for &(a, b) in g.edges() {
            edges.push((id(a, up), id(b, up)));
        }
    }
    Graph::new(g.n() * nh, edges).expect("product of simple graphs is simple")
}

/// Length of a shortest cycle, `None` for forests.
pub fn girth(g: &Graph) -> Option<usize> {
    let n = g.n();
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[root] = 0;
        parent[root] = usize::MAX;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            if best.is_some_and(|b| 2 * dist[v] >= b) {
                break;
            }
            for &w in g.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                } else if parent[v] != w {
                    let len = dist[v] + dist[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ShortCycles {
    pub has3: bool,
    pub has4: bool,
}

pub fn has_short_cycles(g: &Graph) -> ShortCycles {
    let mut has3 = false;
    let mut has4 = false;
    // Number of common neighbours per unordered pair; a 4-cycle is exactly a
    // pair with two of them.
    let mut common: HashMap<(usize, usize), u32> = HashMap::new();
    for x in 0..g.n() {
        let nb = g.neighbors(x);
        for (i, &u) in nb.iter().enumerate() {
            for &v in &nb[i + 1..] {
                if g.has_edge(u, v) {
                    has3 = true;
                }
                let c = common.entry((u, v)).or_insert(0);
                *c += 1;
                if *c >= 2 {
                    has4 = true;
                }
            }
        }
    }
    ShortCycles { has3, has4 }
}

/// Same vertex set; `u -- v` whenever `u != v` share a neighbour in `g`.
pub fn square_graph(g: &Graph) -> Graph {
    let mut edges = Vec::new();
    for x in 0..g.n() {
        let nb = g.neighbors(x);
        for (i, &u) in nb.iter().enumerate() {
            for &v in &nb[i + 1..] {
                edges.push((u, v));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Graph::new(g.n(), edges).expect("deduplicated pairs")
}

/// A graph with a nonnegative rational weight on every edge, indexed like
/// [`Graph::edges`].
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedGraph {
    base: Graph,
    weights: Vec<BigRational>,
}

impl WeightedGraph {
    pub fn new(base: Graph, weights: Vec<BigRational>) -> Result<WeightedGraph> {
        if weights.len() != base.m() {
            return param(format!(
                "{} weights for {} edges",
                weights.len(),
                base.m()
            ));
        }
        if weights.iter().any(Signed::is_negative) {
            return param("edge weights must be nonnegative");
        }
        Ok(WeightedGraph { base, weights })
    }

    pub fn unit(base: Graph) -> WeightedGraph {
        let weights = vec![BigRational::from_integer(1.into()); base.m()];
        WeightedGraph { base, weights }
    }

    pub fn graph(&self) -> &Graph {
        &self.base
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    pub fn weight(&self, u: usize, v: usize) -> BigRational {
        self.base
            .edge_index(u, v)
            .map_or_else(BigRational::zero, |i| self.weights[i].clone())
    }

    /// `d_w(v)`, the sum of incident weights.
    pub fn weighted_degree(&self, v: usize) -> BigRational {
        self.base
            .neighbors(v)
            .iter()
            .map(|&u| self.weight(u, v))
            .sum()
    }

    /// `d_{w,2}(v)`, the sum of squared incident weights.
    pub fn weighted_degree2(&self, v: usize) -> BigRational {
        self.base
            .neighbors(v)
            .iter()
            .map(|&u| {
                let w = self.weight(u, v);
                &w * &w
            })
            .sum()
    }
}

/// Canonical interchange form: 1-based vertices, edges sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            n: g.n(),
            edges: g.edges().iter().map(|&(u, v)| [u + 1, v + 1]).collect(),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Graph> {
        let mut edges = Vec::with_capacity(j.edges.len());
        for [u, v] in j.edges {
            if u == 0 || v == 0 {
                return param("graph JSON vertices are 1-based");
            }
            edges.push((u - 1, v - 1));
        }
        Graph::new(j.n, edges)
    }
}

impl Graph {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson::from(self)).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<Graph> {
        let j: GraphJson = serde_json::from_str(s)?;
        Graph::try_from(j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classic(k: Classic) -> Graph {
        make_classic(k).unwrap()
    }

    fn handshake(g: &Graph) -> bool {
        g.degrees().iter().sum::<usize>() == 2 * g.m()
    }

    #[test]
    fn classic_shapes() {
        let k4 = classic(Classic::Complete(4));
        assert_eq!((k4.n(), k4.m(), k4.regular_degree()), (4, 6, Some(3)));

        let o = classic(Classic::Octahedron);
        assert_eq!((o.n(), o.m(), o.regular_degree()), (6, 12, Some(4)));

        let c5 = classic(Classic::Cycle(5));
        assert_eq!((girth(&c5), c5.regular_degree()), (Some(5), Some(2)));

        let d = classic(Classic::Dodecahedron);
        assert_eq!((d.n(), d.m(), d.regular_degree()), (20, 30, Some(3)));

        for g in [k4, o, c5, d, classic(Classic::Star(5)), classic(Classic::Path(7))] {
            assert!(handshake(&g));
        }
    }

    #[test]
    fn invalid_sizes_rejected() {
        assert!(make_classic(Classic::Cycle(2)).is_err());
        assert!(make_classic(Classic::Complete(0)).is_err());
        assert!(make_classic(Classic::CompleteBipartite(0)).is_err());
        assert!(Graph::new(3, [(0, 0)]).is_err());
        assert!(Graph::new(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(3, [(0, 3)]).is_err());
    }

    #[test]
    fn products() {
        let c4 = classic(Classic::Cycle(4));
        let k2 = classic(Classic::Complete(2));
        let k4 = classic(Classic::Complete(4));

        let prism = cartesian_product(&c4, &k2);
        assert_eq!((prism.n(), prism.m(), prism.regular_degree()), (8, 12, Some(3)));
        assert_eq!(prism, classic(Classic::Prism(4)));

        let k4k2 = cartesian_product(&k4, &k2);
        assert_eq!((k4k2.n(), k4k2.m(), k4k2.regular_degree()), (8, 16, Some(4)));

        let k1 = classic(Classic::Complete(1));
        assert_eq!(cartesian_product(&k1, &k4), k4);
    }

    #[test]
    fn girths() {
        assert_eq!(girth(&classic(Classic::Complete(4))), Some(3));
        assert_eq!(girth(&classic(Classic::Cycle(7))), Some(7));
        assert_eq!(girth(&classic(Classic::Path(5))), None);
        assert_eq!(girth(&classic(Classic::Dodecahedron)), Some(5));
        assert_eq!(girth(&classic(Classic::Prism(4))), Some(4));
        assert_eq!(girth(&classic(Classic::CompleteBipartite(3))), Some(4));
    }

    #[test]
    fn short_cycles() {
        let sc = |k| has_short_cycles(&classic(k));
        assert_eq!(sc(Classic::Octahedron), ShortCycles { has3: true, has4: true });
        assert_eq!(sc(Classic::Prism(4)), ShortCycles { has3: false, has4: true });
        assert_eq!(sc(Classic::Dodecahedron), ShortCycles { has3: false, has4: false });
        assert_eq!(sc(Classic::Complete(3)), ShortCycles { has3: true, has4: false });
    }

    #[test]
    fn squares() {
        let sq = square_graph(&classic(Classic::Cycle(4)));
        assert_eq!(sq.edges(), &[(0, 2), (1, 3)]);

        // C_6: distance-2 pairs are {0,2,4} and {1,3,5}.
        let sq = square_graph(&classic(Classic::Cycle(6)));
        assert_eq!(sq.edges(), &[(0, 2), (0, 4), (1, 3), (1, 5), (2, 4), (3, 5)]);

        let k4 = classic(Classic::Complete(4));
        assert_eq!(square_graph(&k4), k4);
    }

    #[test]
    fn json_is_one_based_and_sorted() {
        let g = classic(Classic::Cycle(3));
        assert_eq!(g.to_json(), r#"{"n":3,"edges":[[1,2],[1,3],[2,3]]}"#);
        assert_eq!(Graph::from_json(&g.to_json()).unwrap(), g);
        assert!(Graph::from_json(r#"{"n":2,"edges":[[0,1]]}"#).is_err());
    }

    #[test]
    fn weighted_degrees() {
        let g = classic(Classic::Path(3));
        let w = |a: i64| BigRational::from_integer(a.into());
        let wg = WeightedGraph::new(g, vec![w(2), w(3)]).unwrap();
        assert_eq!(wg.weighted_degree(1), w(5));
        assert_eq!(wg.weighted_degree2(1), w(13));
        assert!(WeightedGraph::new(classic(Classic::Path(2)), vec![w(-1)]).is_err());
    }
}
