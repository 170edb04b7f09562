//! Semi-circular structure: nested induced ring cycles around an inner set.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::embedding::{Dart, PlanarEmbedding};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Rings `U_1` (innermost) to `U_k`, each listed in cyclic order, plus the
/// inner vertex set `V_0` enclosed by `U_1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CircularDecomposition {
    pub inner: Vec<usize>,
    pub rings: Vec<Vec<usize>>,
}

impl CircularDecomposition {
    pub fn ring_sizes(&self) -> Vec<usize> {
        self.rings.iter().map(Vec::len).collect()
    }

    pub fn is_circular(&self) -> bool {
        self.inner.is_empty()
    }

    /// `V_1 = U_1 ∪ V_0`, sorted.
    pub fn first_block(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.rings[0].iter().chain(&self.inner).copied().collect();
        v.sort_unstable();
        v
    }

    /// Checks every structural invariant against `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let bad = |m: String| Err(Error::Precondition(m));
        if self.rings.is_empty() {
            return bad("no rings".into());
        }
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        let mut layer = vec![usize::MAX; g.n()];
        for &v in &self.inner {
            if v >= g.n() || layer[v] != usize::MAX {
                return bad(format!("vertex {v} repeated or out of range"));
            }
            layer[v] = 0;
        }
        for (j, ring) in self.rings.iter().enumerate() {
            if ring.len() < 3 {
                return bad(format!("ring {} has {} vertices", j + 1, ring.len()));
            }
            for &v in ring {
                if v >= g.n() || layer[v] != usize::MAX {
                    return bad(format!("vertex {v} repeated or out of range"));
                }
                layer[v] = j + 1;
            }
            for i in 0..ring.len() {
                let (a, b) = (ring[i], ring[(i + 1) % ring.len()]);
                if !g.has_edge(a, b) {
                    return bad(format!("ring {} misses edge {a}-{b}", j + 1));
                }
            }
        }
        if layer.contains(&usize::MAX) {
            return bad("rings and inner set do not cover the graph".into());
        }
        for &(u, v) in g.edges() {
            let (a, b) = (layer[u].min(layer[v]), layer[u].max(layer[v]));
            if a == b && a > 0 {
                // must be a ring edge, i.e. the ring induces a cycle
                let ring = &self.rings[a - 1];
                let pu = ring.iter().position(|&x| x == u).unwrap();
                let pv = ring.iter().position(|&x| x == v).unwrap();
                let d = pu.abs_diff(pv);
                if d != 1 && d != ring.len() - 1 {
                    return bad(format!("ring {a} has chord {u}-{v}"));
                }
            } else if b > a + 1 {
                return bad(format!("edge {u}-{v} skips a ring"));
            }
        }
        Ok(())
    }
}

/// Greedy outer peeling. The outer boundary must be an induced cycle; it
/// becomes the outermost ring and is removed, and the process repeats on the
/// rest. When the remainder is empty the graph is circular; when its outer
/// boundary is not an induced cycle (or it falls apart) the remainder is
/// `V_0`. A hint is validated instead of peeling.
///
/// `None` means "not detected": the definition quantifies over all
/// realizations and this only examines the given one.
pub fn detect_semicircular(
    e: &PlanarEmbedding,
    hint: Option<&CircularDecomposition>,
) -> Option<CircularDecomposition> {
    let g = e.graph();
    if let Some(h) = hint {
        return h.validate(g).is_ok().then(|| h.clone());
    }
    if !g.is_connected() || g.m() == 0 {
        return None;
    }
    let mut alive = vec![true; g.n()];
    // current sub-embedding, with map back to original labels
    let mut cur = e.clone();
    let mut labels: Vec<usize> = (0..g.n()).collect();
    let mut peeled: Vec<Vec<usize>> = Vec::new();
    loop {
        let ring = cur.outer_face().and_then(|f| induced_cycle(&cur, f.darts()));
        let Some(ring) = ring else {
            if peeled.is_empty() {
                return None;
            }
            break;
        };
        let ring: Vec<usize> = ring.into_iter().map(|v| labels[v]).collect();
        for &v in &ring {
            alive[v] = false;
        }
        // A cross edge locates the new outer face: at the inner endpoint, the
        // first surviving neighbour after the removed one.
        let cross = ring
            .iter()
            .flat_map(|&x| g.neighbors(x).iter().map(move |&y| (x, y)))
            .find(|&(_, y)| alive[y]);
        peeled.push(ring);
        let Some((x, y)) = cross else {
            break;
        };
        let rot = e.rotation(y);
        let at = rot.iter().position(|&w| w == x).unwrap();
        let next = (1..rot.len()).map(|i| rot[(at + i) % rot.len()]).find(|&w| alive[w]);
        let Some(b) = next else {
            break;
        };
        match restrict(e, &alive, (y, b)) {
            Some((sub, map)) => {
                cur = sub;
                labels = map;
            }
            None => break,
        }
    }
    peeled.reverse();
    Some(CircularDecomposition {
        inner: (0..g.n()).filter(|&v| alive[v]).collect(),
        rings: peeled,
    })
}

/// Vertices of the walk if it is a simple cycle inducing no chords.
fn induced_cycle(e: &PlanarEmbedding, walk: &[Dart]) -> Option<Vec<usize>> {
    let verts: Vec<usize> = walk.iter().map(|&(u, _)| u).collect();
    let set: BTreeSet<usize> = verts.iter().copied().collect();
    if set.len() != verts.len() || verts.len() < 3 {
        return None;
    }
    let g = e.graph();
    let inside = verts
        .iter()
        .map(|&u| g.neighbors(u).iter().filter(|w| set.contains(w)).count())
        .sum::<usize>()
        / 2;
    (inside == verts.len()).then_some(verts)
}

/// Sub-embedding induced on `alive`, with the face containing `outer` as its
/// outer face. `None` when the rest is disconnected.
fn restrict(e: &PlanarEmbedding, alive: &[bool], outer: Dart) -> Option<(PlanarEmbedding, Vec<usize>)> {
    let (sub, old) = e.graph().induced(alive);
    if !sub.is_connected() || sub.m() == 0 {
        return None;
    }
    let mut new_of = vec![usize::MAX; alive.len()];
    for (i, &v) in old.iter().enumerate() {
        new_of[v] = i;
    }
    let rotation = old
        .iter()
        .map(|&v| {
            e.rotation(v)
                .iter()
                .filter(|&&w| alive[w])
                .map(|&w| new_of[w])
                .collect()
        })
        .collect();
    let dart = (new_of[outer.0], new_of[outer.1]);
    let emb = PlanarEmbedding::new(sub, rotation, Some(dart)).ok()?;
    Some((emb, old))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classic::embedded;
    use crate::graph::Classic;

    #[test]
    fn dodecahedron_peels_into_cap_rings() {
        let e = embedded(Classic::Dodecahedron).unwrap();
        let cd = detect_semicircular(&e, None).unwrap();
        assert!(cd.is_circular());
        assert_eq!(cd.ring_sizes(), vec![5, 10, 5]);
        cd.validate(e.graph()).unwrap();
    }

    #[test]
    fn k4_leaves_centre_inside() {
        let e = embedded(Classic::Complete(4)).unwrap();
        let cd = detect_semicircular(&e, None).unwrap();
        assert_eq!(cd.ring_sizes(), vec![3]);
        assert_eq!(cd.inner, vec![3]);
        cd.validate(e.graph()).unwrap();
    }

    #[test]
    fn cycle_is_one_ring() {
        let e = embedded(Classic::Cycle(7)).unwrap();
        let cd = detect_semicircular(&e, None).unwrap();
        assert_eq!(cd.ring_sizes(), vec![7]);
        assert!(cd.is_circular());
    }

    #[test]
    fn prism_is_two_rings() {
        let e = embedded(Classic::Prism(6)).unwrap();
        let cd = detect_semicircular(&e, None).unwrap();
        assert_eq!(cd.ring_sizes(), vec![6, 6]);
    }

    #[test]
    fn trees_are_not_detected() {
        let e = embedded(Classic::Path(4)).unwrap();
        assert!(detect_semicircular(&e, None).is_none());
    }

    #[test]
    fn hints_are_validated() {
        let e = embedded(Classic::Prism(4)).unwrap();
        let good = CircularDecomposition {
            inner: vec![],
            rings: vec![vec![1, 3, 5, 7], vec![0, 2, 4, 6]],
        };
        assert_eq!(detect_semicircular(&e, Some(&good)), Some(good.clone()));
        let chord = CircularDecomposition {
            inner: vec![],
            rings: vec![vec![1, 3, 5, 7], vec![0, 6, 4, 2]],
        };
        assert!(detect_semicircular(&e, Some(&chord)).is_some());
        let scrambled = CircularDecomposition {
            inner: vec![],
            rings: vec![vec![1, 5, 3, 7], vec![0, 2, 4, 6]],
        };
        assert!(detect_semicircular(&e, Some(&scrambled)).is_none());
        let partial = CircularDecomposition {
            inner: vec![],
            rings: vec![vec![0, 2, 4, 6]],
        };
        assert!(detect_semicircular(&e, Some(&partial)).is_none());
    }
}
