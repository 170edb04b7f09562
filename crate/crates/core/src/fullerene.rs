//! Circular fullerene families (pentacap, hexacap), the cap extension and
//! the fullerene validity check.
//!
//! A cap graph with end ring `C_k` and `layers` middle rings `C_{2k}` is
//! numbered ring-major from the innermost ring outwards, positions running
//! clockwise:
//!
//! * ring 0 (`C_k`, vertices `a_i`) is joined to the first middle ring by
//!   `a_i -- r_1[2i]`;
//! * consecutive middle rings are joined by `r_j[2i+1] -- r_{j+1}[2i]`,
//!   which closes a hexagon between them;
//! * the last middle ring meets the outer `C_k` by `r_l[2i+1] -- c_i`.
//!
//! The layer next to each end ring consists of `k` pentagons.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use serde::Serialize;

use crate::circular::{detect_semicircular, CircularDecomposition};
use crate::embedding::{Face, PlanarEmbedding};
use crate::error::{param, Error, Result};
use crate::graph::Graph;

fn ring_layout(k: usize, layers: usize) -> Vec<Vec<usize>> {
    let mut rings = Vec::with_capacity(layers + 2);
    let mut next = 0;
    for size in std::iter::once(k)
        .chain(std::iter::repeat_n(2 * k, layers))
        .chain(std::iter::once(k))
    {
        rings.push((next..next + size).collect());
        next += size;
    }
    rings
}

pub(crate) fn cap_edges(k: usize, layers: usize) -> Vec<(usize, usize)> {
    let rings = ring_layout(k, layers);
    let mut edges = Vec::new();
    for ring in &rings {
        for i in 0..ring.len() {
            edges.push((ring[i], ring[(i + 1) % ring.len()]));
        }
    }
    let (first, last) = (&rings[0], &rings[layers + 1]);
    for i in 0..k {
        edges.push((first[i], rings[1][2 * i]));
        for j in 1..layers {
            edges.push((rings[j][2 * i + 1], rings[j + 1][2 * i]));
        }
        edges.push((rings[layers][2 * i + 1], last[i]));
    }
    edges
}

fn cap_coordinates(k: usize, layers: usize) -> Vec<(f64, f64)> {
    let step = PI / k as f64;
    let mut coords = Vec::new();
    let mut offset = 0.0;
    for (j, ring) in ring_layout(k, layers).iter().enumerate() {
        let radius = 2f64.powi(j as i32);
        let spacing = if ring.len() == k { 2.0 * step } else { step };
        if j == layers + 1 {
            offset -= step;
        }
        for p in 0..ring.len() {
            let a = offset - spacing * p as f64;
            coords.push((radius * a.cos(), radius * a.sin()));
        }
        if j >= 1 && j < layers {
            offset -= step;
        }
    }
    coords
}

pub(crate) fn cap_embedding(k: usize, layers: usize) -> Result<PlanarEmbedding> {
    let g = Graph::new(2 * k * (layers + 1), cap_edges(k, layers))?;
    PlanarEmbedding::from_coordinates(g, &cap_coordinates(k, layers))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Pentacap,
    Hexacap,
}

impl Family {
    pub fn k(self) -> usize {
        match self {
            Family::Pentacap => 5,
            Family::Hexacap => 6,
        }
    }
}

/// A generated cap fullerene: `n = 2k(layers + 1)`.
#[derive(Clone, Debug)]
pub struct CapFullerene {
    pub family: Family,
    pub layers: usize,
    pub embedding: PlanarEmbedding,
    pub decomposition: CircularDecomposition,
}

impl CapFullerene {
    pub fn graph(&self) -> &Graph {
        self.embedding.graph()
    }
}

pub fn cap(family: Family, layers: usize) -> Result<CapFullerene> {
    if layers < 1 {
        return param("cap fullerenes need at least one middle ring");
    }
    let k = family.k();
    Ok(CapFullerene {
        family,
        layers,
        embedding: cap_embedding(k, layers)?,
        decomposition: CircularDecomposition {
            inner: Vec::new(),
            rings: ring_layout(k, layers),
        },
    })
}

pub fn pentacap(layers: usize) -> Result<CapFullerene> {
    cap(Family::Pentacap, layers)
}

pub fn hexacap(layers: usize) -> Result<CapFullerene> {
    cap(Family::Hexacap, layers)
}

/// Grows a circular fullerene whose two innermost rings are `C_k`, `C_{2k}`
/// (`k` in {5, 6}): every edge of the inner ring is subdivided by a new `u_i`,
/// a new inner ring `w_0..w_{k-1}` is added and `u_i -- w_i` joined. The
/// result has `2k` more vertices; the old inner pentagon layer becomes
/// hexagons and the new ring is surrounded by pentagons.
pub fn extend_cap(
    e: &PlanarEmbedding,
    cd: &CircularDecomposition,
) -> Result<(PlanarEmbedding, CircularDecomposition)> {
    let g = e.graph();
    cd.validate(g)?;
    let sizes = cd.ring_sizes();
    let k = sizes[0];
    if !cd.is_circular() || !(k == 5 || k == 6) || sizes.get(1) != Some(&(2 * k)) {
        return Err(Error::Precondition(format!(
            "extend_cap needs a circular graph starting with rings C_k, C_2k, k in {{5,6}}; got {sizes:?}"
        )));
    }
    let first: BTreeSet<usize> = cd.rings[0].iter().copied().collect();
    let inner_face = e
        .face_with_vertices(&first, e.outer_index())
        .ok_or_else(|| Error::Precondition("inner ring does not bound a face".into()))?;
    // walk order of the inner face
    let walk: Vec<usize> = e.faces()[inner_face].vertices().collect();

    let n = g.n();
    let u = |i: usize| n + i;
    let w = |i: usize| n + k + i;
    let mut rotation: Vec<Vec<usize>> = e.rotations().to_vec();
    rotation.resize(n + 2 * k, Vec::new());
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(a, b)| !(first.contains(&a) && first.contains(&b)))
        .collect();
    for i in 0..k {
        let (a, b) = (walk[i], walk[(i + 1) % k]);
        for x in rotation[a].iter_mut() {
            if *x == b {
                *x = u(i);
            }
        }
        for x in rotation[b].iter_mut() {
            if *x == a {
                *x = u(i);
            }
        }
        // the inner face ran a -> b, so w_i sits in the corner after a
        rotation[u(i)] = vec![a, w(i), b];
        rotation[w(i)] = vec![u(i), w((i + k - 1) % k), w((i + 1) % k)];
        edges.extend([(a, u(i)), (u(i), b), (u(i), w(i)), (w(i), w((i + 1) % k))]);
    }
    let graph = Graph::new(n + 2 * k, edges)?;
    let outer = e.outer_key();
    let emb = PlanarEmbedding::new(graph, rotation, outer)?;

    let mut second = Vec::with_capacity(2 * k);
    for (i, &a) in walk.iter().enumerate() {
        second.push(a);
        second.push(u(i));
    }
    let mut rings = vec![(0..k).map(w).collect::<Vec<_>>(), second];
    rings.extend(cd.rings[1..].iter().cloned());
    let decomposition = CircularDecomposition {
        inner: Vec::new(),
        rings,
    };
    decomposition.validate(emb.graph())?;
    Ok((emb, decomposition))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FullereneCheck {
    pub is_fullerene: bool,
    pub pentagons: usize,
    pub hexagons: usize,
    pub reasons: Vec<String>,
}

/// Cubic, connected, every face a pentagon or hexagon, `p = 12`,
/// `n = 2h + 20` and `m = 3h + 30`.
pub fn validate_fullerene(e: &PlanarEmbedding) -> FullereneCheck {
    let g = e.graph();
    let mut reasons = Vec::new();
    if g.regular_degree() != Some(3) {
        reasons.push("not cubic".to_string());
    }
    if !g.is_connected() {
        reasons.push("not connected".to_string());
    }
    let lens: Vec<usize> = e.faces().iter().map(Face::len).collect();
    let pentagons = lens.iter().filter(|&&l| l == 5).count();
    let hexagons = lens.iter().filter(|&&l| l == 6).count();
    if pentagons + hexagons != lens.len() {
        reasons.push("face of length other than 5 or 6".to_string());
    }
    if pentagons != 12 {
        reasons.push(format!("{pentagons} pentagons"));
    }
    if g.n() != 2 * hexagons + 20 {
        reasons.push(format!("n = {} but 2h + 20 = {}", g.n(), 2 * hexagons + 20));
    }
    if g.m() != 3 * hexagons + 30 {
        reasons.push(format!("m = {} but 3h + 30 = {}", g.m(), 3 * hexagons + 30));
    }
    FullereneCheck {
        is_fullerene: reasons.is_empty(),
        pentagons,
        hexagons,
        reasons,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeapfrogStructure {
    pub n: usize,
    pub detected: bool,
    pub circular: bool,
    /// Ring sizes innermost first.
    pub ring_profile: Vec<usize>,
    pub inner_size: usize,
    /// Odd layer counts: `[k, 3k, 4k x (3l-1)/2, 3k, k]`. Even: `None`.
    pub predicted_profile: Option<Vec<usize>>,
    pub is_fullerene: bool,
}

/// Builds `Le(F)` for a cap fullerene and peels it from the face around the
/// old outer centre.
pub fn verify_leapfrog_structure(family: Family, layers: usize) -> Result<LeapfrogStructure> {
    let f = cap(family, layers)?;
    let le = f.embedding.leapfrog()?;
    let k = family.k();
    let cd = detect_semicircular(&le, None);
    let predicted = (layers % 2 == 1).then(|| {
        let mut p = vec![k, 3 * k];
        p.extend(std::iter::repeat_n(4 * k, (3 * layers - 1) / 2));
        p.extend([3 * k, k]);
        p
    });
    Ok(LeapfrogStructure {
        n: le.graph().n(),
        detected: cd.is_some(),
        circular: cd.as_ref().is_some_and(CircularDecomposition::is_circular),
        ring_profile: cd.as_ref().map(CircularDecomposition::ring_sizes).unwrap_or_default(),
        inner_size: cd.as_ref().map_or(0, |c| c.inner.len()),
        predicted_profile: predicted,
        is_fullerene: validate_fullerene(&le).is_fullerene,
    })
}
