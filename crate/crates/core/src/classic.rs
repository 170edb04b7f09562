//! Planar embeddings for the classic families, built from straight-line
//! drawings.

use std::f64::consts::PI;

use crate::embedding::PlanarEmbedding;
use crate::error::{param, Result};
use crate::graph::{make_classic, Classic};

fn polygon(n: usize, radius: f64, offset: f64) -> impl Iterator<Item = (f64, f64)> {
    (0..n).map(move |i| {
        let a = offset + 2.0 * PI * i as f64 / n as f64;
        (radius * a.cos(), radius * a.sin())
    })
}

/// The classic graph with its standard drawing. Fails for families that are
/// not planar (`K_n` with `n >= 5`, `K_{r,r}` with `r >= 3`).
pub fn embedded(kind: Classic) -> Result<PlanarEmbedding> {
    let g = make_classic(kind)?;
    let coords: Vec<(f64, f64)> = match kind {
        Classic::Complete(n) if n <= 3 => polygon(n, 1.0, PI / 2.0).collect(),
        Classic::Complete(4) => polygon(3, 1.0, PI / 2.0).chain([(0.0, 0.0)]).collect(),
        Classic::Complete(_) => return param("K_n is not planar for n >= 5"),
        Classic::Cycle(n) => polygon(n, 1.0, 0.0).collect(),
        Classic::Path(n) => (0..n).map(|i| (i as f64, 0.0)).collect(),
        Classic::Star(k) => std::iter::once((0.0, 0.0)).chain(polygon(k, 1.0, 0.0)).collect(),
        Classic::CompleteBipartite(1) => vec![(0.0, 0.0), (1.0, 0.0)],
        Classic::CompleteBipartite(2) => vec![(0.0, 0.0), (1.0, 1.0), (1.0, 0.0), (0.0, 1.0)],
        Classic::CompleteBipartite(_) => return param("K_{r,r} is not planar for r >= 3"),
        Classic::Octahedron => {
            // outer triangle 0,2,4; inner vertex 2i+1 sits opposite 2i
            let deg = |d: f64| d.to_radians();
            let at = |r: f64, d: f64| (r * deg(d).cos(), r * deg(d).sin());
            vec![
                at(10.0, 90.0),
                at(2.0, 270.0),
                at(10.0, 210.0),
                at(2.0, 30.0),
                at(10.0, 330.0),
                at(2.0, 150.0),
            ]
        }
        Classic::Dodecahedron => return crate::fullerene::cap_embedding(5, 1),
        Classic::Prism(n) => polygon(n, 2.0, 0.0)
            .zip(polygon(n, 1.0, 0.0))
            .flat_map(|(a, b)| [a, b])
            .collect(),
    };
    PlanarEmbedding::from_coordinates(g, &coords)
}
