//! Combinatorial planar embeddings given as rotation systems.
//!
//! `rotation[v]` lists the neighbours of `v` in clockwise order. Faces are
//! traced with the rule `next(u -> v) = (v -> w)` where `w` follows `u` in the
//! rotation at `v`; with clockwise rotations this keeps the face on the left,
//! so bounded faces run counterclockwise and the outer face clockwise.
//!
//! A face is keyed by its lexicographically smallest dart, and its walk is
//! stored starting at that dart.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};
use crate::graph::{Graph, GraphJson};

/// A directed edge `(tail, head)`.
pub type Dart = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    walk: Vec<Dart>,
}

impl Face {
    pub fn key(&self) -> Dart {
        self.walk[0]
    }

    pub fn len(&self) -> usize {
        self.walk.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walk.is_empty()
    }

    pub fn darts(&self) -> &[Dart] {
        &self.walk
    }

    /// Vertices in walk order (with repeats for non-simple boundaries).
    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.walk.iter().map(|&(u, _)| u)
    }

    /// True when the boundary walk visits no vertex twice.
    pub fn is_simple_cycle(&self) -> bool {
        let set: BTreeSet<usize> = self.vertices().collect();
        set.len() == self.walk.len() && self.walk.len() >= 3
    }
}

#[derive(Clone, Debug)]
pub struct PlanarEmbedding {
    graph: Graph,
    rotation: Vec<Vec<usize>>,
    /// `pos[d]` is the index of the dart's tail inside the rotation at its head,
    /// with darts numbered `2e` for `lo -> hi` and `2e + 1` for `hi -> lo`.
    pos_at_head: Vec<usize>,
    faces: Vec<Face>,
    face_of: Vec<usize>,
    outer: Option<usize>,
}

impl PartialEq for PlanarEmbedding {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph
            && self.rotation == other.rotation
            && self.outer_key() == other.outer_key()
    }
}

impl PlanarEmbedding {
    /// Validates the rotation system and marks the face containing
    /// `outer_dart` as the outer face. Graphs without edges have no faces and
    /// take `None`.
    pub fn new(graph: Graph, rotation: Vec<Vec<usize>>, outer_dart: Option<Dart>) -> Result<Self> {
        if rotation.len() != graph.n() {
            return Err(Error::Embedding(format!(
                "rotation has {} entries for {} vertices",
                rotation.len(),
                graph.n()
            )));
        }
        for (v, rot) in rotation.iter().enumerate() {
            let mut sorted = rot.clone();
            sorted.sort_unstable();
            if sorted != graph.neighbors(v) {
                return Err(Error::Embedding(format!(
                    "rotation at vertex {v} is not a permutation of its neighbours"
                )));
            }
        }
        let mut pos_at_head = vec![0; 2 * graph.m()];
        for (e, &(lo, hi)) in graph.edges().iter().enumerate() {
            pos_at_head[2 * e] = rotation[hi].iter().position(|&x| x == lo).unwrap();
            pos_at_head[2 * e + 1] = rotation[lo].iter().position(|&x| x == hi).unwrap();
        }
        let mut emb = PlanarEmbedding {
            graph,
            rotation,
            pos_at_head,
            faces: Vec::new(),
            face_of: Vec::new(),
            outer: None,
        };
        emb.trace_faces();
        emb.check_euler()?;
        emb.outer = match outer_dart {
            Some(d) => {
                let id = emb
                    .dart_id(d)
                    .ok_or_else(|| Error::Embedding(format!("outer dart {d:?} is not an edge")))?;
                Some(emb.face_of[id])
            }
            None if emb.graph.m() == 0 => None,
            None => return Err(Error::Embedding("outer face not given".into())),
        };
        Ok(emb)
    }

    /// Rotations from a straight-line drawing (angles sorted clockwise); the
    /// outer face is the one with the most negative signed area.
    pub fn from_coordinates(graph: Graph, coords: &[(f64, f64)]) -> Result<Self> {
        if coords.len() != graph.n() {
            return param("one coordinate per vertex required");
        }
        let rotation: Vec<Vec<usize>> = (0..graph.n())
            .map(|v| {
                let (x, y) = coords[v];
                let mut nb = graph.neighbors(v).to_vec();
                nb.sort_by(|&a, &b| {
                    let ta = (coords[a].1 - y).atan2(coords[a].0 - x);
                    let tb = (coords[b].1 - y).atan2(coords[b].0 - x);
                    tb.total_cmp(&ta)
                });
                nb
            })
            .collect();
        let first = graph.edges().first().copied();
        let mut emb = PlanarEmbedding::new(graph, rotation, first)?;
        if emb.graph.m() > 0 {
            let area = |f: &Face| -> f64 {
                f.darts()
                    .iter()
                    .map(|&(u, v)| coords[u].0 * coords[v].1 - coords[v].0 * coords[u].1)
                    .sum::<f64>()
            };
            let outer = (0..emb.faces.len())
                .min_by(|&a, &b| area(&emb.faces[a]).total_cmp(&area(&emb.faces[b])))
                .unwrap();
            emb.outer = Some(outer);
        }
        Ok(emb)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn outer_index(&self) -> Option<usize> {
        self.outer
    }

    pub fn outer_face(&self) -> Option<&Face> {
        self.outer.map(|i| &self.faces[i])
    }

    pub fn outer_key(&self) -> Option<Dart> {
        self.outer_face().map(Face::key)
    }

    /// Index into [`PlanarEmbedding::faces`] of the face containing `d`.
    pub fn face_of(&self, d: Dart) -> Option<usize> {
        self.dart_id(d).map(|id| self.face_of[id])
    }

    /// Makes the face containing `d` the outer one.
    pub fn with_outer(mut self, d: Dart) -> Result<Self> {
        let f = self
            .face_of(d)
            .ok_or_else(|| Error::Embedding(format!("dart {d:?} is not an edge")))?;
        self.outer = Some(f);
        Ok(self)
    }

    /// The face whose boundary visits exactly `set` (each vertex once), other
    /// than `exclude`.
    pub fn face_with_vertices(&self, set: &BTreeSet<usize>, exclude: Option<usize>) -> Option<usize> {
        (0..self.faces.len()).find(|&i| {
            Some(i) != exclude
                && self.faces[i].len() == set.len()
                && self.faces[i].vertices().collect::<BTreeSet<_>>() == *set
        })
    }

    pub(crate) fn dart_id(&self, (u, v): Dart) -> Option<usize> {
        let e = self.graph.edge_index(u, v)?;
        Some(if u < v { 2 * e } else { 2 * e + 1 })
    }

    fn dart_of(&self, id: usize) -> Dart {
        let (lo, hi) = self.graph.edges()[id / 2];
        if id % 2 == 0 {
            (lo, hi)
        } else {
            (hi, lo)
        }
    }

    /// The dart following `d` on its face.
    pub fn next(&self, d: Dart) -> Dart {
        let id = self.dart_id(d).expect("dart of this graph");
        let (_, v) = d;
        let rot = &self.rotation[v];
        (v, rot[(self.pos_at_head[id] + 1) % rot.len()])
    }

    /// The dart preceding `d` on its face.
    pub fn prev(&self, (u, v): Dart) -> Dart {
        let rot = &self.rotation[u];
        let i = rot.iter().position(|&x| x == v).expect("dart of this graph");
        (rot[(i + rot.len() - 1) % rot.len()], u)
    }

    fn trace_faces(&mut self) {
        let darts = 2 * self.graph.m();
        let mut face_of = vec![usize::MAX; darts];
        let mut faces = Vec::new();
        for start in 0..darts {
            if face_of[start] != usize::MAX {
                continue;
            }
            let mut walk = Vec::new();
            let mut id = start;
            while face_of[id] == usize::MAX {
                face_of[id] = faces.len();
                let d = self.dart_of(id);
                walk.push(d);
                id = self.dart_id(self.next(d)).unwrap();
            }
            let min = (0..walk.len()).min_by_key(|&i| walk[i]).unwrap();
            walk.rotate_left(min);
            faces.push(Face { walk });
        }
        // canonical order: by key
        let mut order: Vec<usize> = (0..faces.len()).collect();
        order.sort_by_key(|&i| faces[i].key());
        let mut rank = vec![0; faces.len()];
        for (r, &i) in order.iter().enumerate() {
            rank[i] = r;
        }
        self.face_of = face_of.into_iter().map(|f| rank[f]).collect();
        let mut sorted: Vec<Option<Face>> = faces.into_iter().map(Some).collect();
        self.faces = order.iter().map(|&i| sorted[i].take().unwrap()).collect();
    }

    /// Each component with an edge must satisfy `f - m + n = 2`.
    fn check_euler(&self) -> Result<()> {
        let (count, label) = self.graph.components();
        let mut n = vec![0i64; count];
        let mut m = vec![0i64; count];
        let mut f = vec![0i64; count];
        for v in 0..self.graph.n() {
            n[label[v]] += 1;
        }
        for &(u, _) in self.graph.edges() {
            m[label[u]] += 1;
        }
        for face in &self.faces {
            f[label[face.key().0]] += 1;
        }
        for c in 0..count {
            if m[c] > 0 && f[c] - m[c] + n[c] != 2 {
                return Err(Error::Embedding(format!(
                    "Euler check failed: f={} m={} n={} (rotation system is not planar)",
                    f[c], m[c], n[c]
                )));
            }
        }
        Ok(())
    }

    /// Minimum face length of this embedding; `None` for forests.
    pub fn embedding_girth(&self) -> Option<usize> {
        let (c, _) = self.graph.components();
        if self.graph.m() + c == self.graph.n() {
            return None;
        }
        self.faces.iter().map(Face::len).min()
    }

    /// `m <= g(n-2)/(g-2)` for the embedding girth `g`, evaluated exactly.
    pub fn check_edge_bound(&self) -> Option<EdgeBound> {
        let g = self.embedding_girth()?;
        let n = self.graph.n() as i64;
        let rhs = BigRational::new(BigInt::from(g as i64 * (n - 2)), BigInt::from(g as i64 - 2));
        let lhs = BigRational::from_integer(BigInt::from(self.graph.m()));
        Some(EdgeBound {
            m: self.graph.m(),
            girth: g,
            holds: lhs <= rhs,
            equality: lhs == rhs,
            rhs,
        })
    }

    /// An edge is a bridge iff both of its darts lie on the same face.
    pub fn bridges(&self) -> Vec<(usize, usize)> {
        self.graph
            .edges()
            .iter()
            .enumerate()
            .filter(|&(e, _)| self.face_of[2 * e] == self.face_of[2 * e + 1])
            .map(|(_, &uv)| uv)
            .collect()
    }

    /// Leapfrog: stellate every face (outer included) and take the dual.
    ///
    /// Each triangle of the stellation is spanned by one dart `d` of the
    /// original map and the centre of the face `d` bounds, so the new vertex
    /// set is the dart set. Vertices are numbered face by face in key order,
    /// then along each walk. Triangle `t(d)` borders `t(rev d)`, `t(next d)`
    /// and `t(prev d)`. The outer face of the result is the one around the
    /// old outer face centre.
    pub fn leapfrog(&self) -> Result<PlanarEmbedding> {
        if !self.graph.is_connected() {
            return Err(Error::Disconnected);
        }
        if let Some(b) = self.bridges().first() {
            return Err(Error::Precondition(format!("leapfrog needs a bridgeless graph, {b:?} is a bridge")));
        }
        let darts: Vec<Dart> = self.faces.iter().flat_map(|f| f.walk.iter().copied()).collect();
        let mut index = vec![0; darts.len()];
        for (i, &d) in darts.iter().enumerate() {
            index[self.dart_id(d).unwrap()] = i;
        }
        let t = |d: Dart| index[self.dart_id(d).unwrap()];
        let mut edges = Vec::with_capacity(3 * darts.len() / 2);
        let mut rotation = Vec::with_capacity(darts.len());
        for (i, &d) in darts.iter().enumerate() {
            let nb = [t((d.1, d.0)), t(self.prev(d)), t(self.next(d))];
            for &j in &nb {
                if i < j {
                    edges.push((i, j));
                }
            }
            rotation.push(nb.to_vec());
        }
        let graph = Graph::new(darts.len(), edges)?;
        let outer = self.outer_face().ok_or_else(|| Error::Embedding("no outer face".into()))?;
        let ring: BTreeSet<usize> = outer.walk.iter().map(|&d| t(d)).collect();
        let d0 = outer.walk[0];
        let emb = PlanarEmbedding::new(graph, rotation, Some((t(d0), t(self.next(d0)))))?;
        let f = emb
            .face_with_vertices(&ring, None)
            .ok_or_else(|| Error::Embedding("leapfrog lost the outer face".into()))?;
        let key = emb.faces[f].key();
        emb.with_outer(key)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&EmbeddingJson::from(self)).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<PlanarEmbedding> {
        let j: EmbeddingJson = serde_json::from_str(s)?;
        PlanarEmbedding::try_from(j)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeBound {
    pub m: usize,
    pub girth: usize,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub rhs: BigRational,
    pub holds: bool,
    pub equality: bool,
}

/// `{"graph": {...}, "rotation": {"1": [..], ...}, "outer": [u, v]}`, all
/// 1-based. `outer` names any dart of the outer face; on output it is the
/// face key.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingJson {
    pub graph: GraphJson,
    pub rotation: BTreeMap<String, Vec<usize>>,
    pub outer: Option<[usize; 2]>,
}

impl From<&PlanarEmbedding> for EmbeddingJson {
    fn from(e: &PlanarEmbedding) -> Self {
        EmbeddingJson {
            graph: GraphJson::from(e.graph()),
            rotation: e
                .rotation
                .iter()
                .enumerate()
                .map(|(v, r)| ((v + 1).to_string(), r.iter().map(|x| x + 1).collect()))
                .collect(),
            outer: e.outer_key().map(|(u, v)| [u + 1, v + 1]),
        }
    }
}

impl TryFrom<EmbeddingJson> for PlanarEmbedding {
    type Error = Error;

    fn try_from(j: EmbeddingJson) -> Result<PlanarEmbedding> {
        let graph = Graph::try_from(j.graph)?;
        let mut rotation = vec![Vec::new(); graph.n()];
        for (k, list) in j.rotation {
            let v: usize = k
                .parse()
                .map_err(|_| Error::Embedding(format!("rotation key {k:?} is not a vertex")))?;
            if v == 0 || v > graph.n() {
                return Err(Error::Embedding(format!("rotation key {v} out of range")));
            }
            if list.contains(&0) {
                return Err(Error::Embedding("rotation entries are 1-based".into()));
            }
            rotation[v - 1] = list.into_iter().map(|x| x - 1).collect();
        }
        let outer = match j.outer {
            Some([u, v]) if u >= 1 && v >= 1 => Some((u - 1, v - 1)),
            Some(_) => return Err(Error::Embedding("outer dart is 1-based".into())),
            None => None,
        };
        PlanarEmbedding::new(graph, rotation, outer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classic::embedded;
    use crate::graph::Classic;

    fn face_lengths(e: &PlanarEmbedding) -> Vec<usize> {
        let mut v: Vec<usize> = e.faces().iter().map(Face::len).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn classic_faces() {
        let k4 = embedded(Classic::Complete(4)).unwrap();
        assert_eq!(face_lengths(&k4), vec![3, 3, 3, 3]);

        let d = embedded(Classic::Dodecahedron).unwrap();
        assert_eq!(face_lengths(&d), vec![5; 12]);

        let c6 = embedded(Classic::Cycle(6)).unwrap();
        assert_eq!(face_lengths(&c6), vec![6, 6]);

        for e in [k4, d, c6] {
            let total: usize = e.faces().iter().map(Face::len).sum();
            assert_eq!(total, 2 * e.graph().m());
        }
    }

    #[test]
    fn outer_face_runs_clockwise() {
        // Unit square: the outer walk visits the corners in clockwise order.
        let c4 = embedded(Classic::Cycle(4)).unwrap();
        let outer = c4.outer_face().unwrap();
        let inner = c4.faces().iter().find(|f| f.key() != outer.key()).unwrap();
        assert_eq!(outer.darts()[0].0, inner.darts()[0].0);
        assert_ne!(outer.darts()[0].1, inner.darts()[0].1);
    }

    #[test]
    fn girth_of_embeddings() {
        assert_eq!(embedded(Classic::Dodecahedron).unwrap().embedding_girth(), Some(5));
        assert_eq!(embedded(Classic::Prism(4)).unwrap().embedding_girth(), Some(4));
        assert_eq!(embedded(Classic::Complete(4)).unwrap().embedding_girth(), Some(3));
        assert_eq!(embedded(Classic::Path(4)).unwrap().embedding_girth(), None);
        assert_eq!(embedded(Classic::Star(3)).unwrap().embedding_girth(), None);
    }

    #[test]
    fn edge_bound_equality_cases() {
        let r = |a: i64| BigRational::from_integer(a.into());
        for (kind, rhs) in [
            (Classic::Dodecahedron, r(30)),
            (Classic::Complete(4), r(6)),
            (Classic::Cycle(6), r(6)),
        ] {
            let b = embedded(kind).unwrap().check_edge_bound().unwrap();
            assert!(b.holds && b.equality, "{kind:?}");
            assert_eq!(b.rhs, rhs);
        }
        // prism: m = 12 < 4 * 6 / 2 = 12? equality too: every face is a square.
        let b = embedded(Classic::Prism(4)).unwrap().check_edge_bound().unwrap();
        assert!(b.equality);
        let b = embedded(Classic::Octahedron).unwrap().check_edge_bound().unwrap();
        assert!(b.equality);
        let b = embedded(Classic::Prism(5)).unwrap().check_edge_bound().unwrap();
        assert!(b.holds && !b.equality);
    }

    #[test]
    fn non_planar_rotation_rejected() {
        // K4 with one vertex's rotation reversed gives a torus-like map.
        let k4 = embedded(Classic::Complete(4)).unwrap();
        let mut rot = k4.rotations().to_vec();
        rot[0].reverse();
        let err = PlanarEmbedding::new(k4.graph().clone(), rot, Some((0, 1)));
        assert!(matches!(err, Err(Error::Embedding(_))));

        let mut rot = k4.rotations().to_vec();
        rot[1] = vec![0, 2];
        assert!(PlanarEmbedding::new(k4.graph().clone(), rot, Some((0, 1))).is_err());
    }

    #[test]
    fn bridges_and_leapfrog_precondition() {
        let p = embedded(Classic::Path(3)).unwrap();
        assert_eq!(p.bridges().len(), 2);
        assert!(matches!(p.leapfrog(), Err(Error::Precondition(_))));
        assert!(embedded(Classic::Cycle(5)).unwrap().bridges().is_empty());
    }

    #[test]
    fn leapfrog_of_dodecahedron() {
        let d = embedded(Classic::Dodecahedron).unwrap();
        let le = d.leapfrog().unwrap();
        assert_eq!(le.graph().n(), 60);
        assert_eq!(le.graph().regular_degree(), Some(3));
        let lens = face_lengths(&le);
        assert_eq!(lens.iter().filter(|&&l| l == 5).count(), 12);
        assert_eq!(lens.iter().filter(|&&l| l == 6).count(), 20);
        assert_eq!(le.outer_face().unwrap().len(), 5);
    }

    #[test]
    fn leapfrog_of_tetrahedron_is_truncated() {
        let le = embedded(Classic::Complete(4)).unwrap().leapfrog().unwrap();
        assert_eq!(le.graph().n(), 12);
        assert_eq!(face_lengths(&le), vec![3, 3, 3, 3, 6, 6, 6, 6]);
    }

    #[test]
    fn json_round_trip() {
        let e = embedded(Classic::Octahedron).unwrap();
        let back = PlanarEmbedding::from_json(&e.to_json()).unwrap();
        assert_eq!(back, e);
        assert_eq!(back.faces(), e.faces());
    }
}
