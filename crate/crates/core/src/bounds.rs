//! Upper bounds on the number of perfect matchings, and the one lower
//! envelope for pentacaps.
//!
//! Values are `log2` of the bound. Where a bound is a fourth root of an
//! integer, the integer is exposed too so equality with a count can be
//! decided exactly by comparing `count^4` against it.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Signed, Zero};
use serde::Serialize;

use crate::circulant::{ring_block_det, RingBlock, Sign};
use crate::circular::CircularDecomposition;
use crate::embedding::PlanarEmbedding;
use crate::error::{param, Error, Result};
use crate::graph::{has_short_cycles, square_graph, Graph, WeightedGraph};
use crate::linalg::log2_big;
use crate::matching::Matching;
use crate::pfaffian::GramMatrix;

pub(crate) fn log2_int(x: &BigInt) -> f64 {
    if x.is_negative() {
        f64::NAN
    } else {
        log2_big(x.magnitude())
    }
}

fn log2_rational(x: &num_rational::BigRational) -> f64 {
    log2_int(x.numer()) - log2_int(x.denom())
}

/// `(1/4) sum log2 d(v)`; `-inf` as soon as some vertex is isolated.
pub fn hadamard_bound(g: &Graph) -> f64 {
    g.degrees().iter().map(|&d| (d as f64).log2()).sum::<f64>() / 4.0
}

/// `prod d(v)`, the fourth power of the Hadamard bound.
pub fn hadamard_fourth_power(g: &Graph) -> BigUint {
    g.degrees().iter().map(|&d| BigUint::from(d)).product()
}

/// `(1/4) sum log2 d_{w,2}(v)`.
pub fn weighted_hadamard_bound(w: &WeightedGraph) -> f64 {
    (0..w.graph().n())
        .map(|v| log2_rational(&w.weighted_degree2(v)))
        .sum::<f64>()
        / 4.0
}

fn log2_factorial(d: usize) -> f64 {
    (2..=d).map(|k| (k as f64).log2()).sum()
}

/// `(1/2) sum log2(d(v)!) / d(v)`.
pub fn bregman_bound(g: &Graph) -> f64 {
    g.degrees()
        .iter()
        .map(|&d| {
            if d == 0 {
                f64::NEG_INFINITY
            } else {
                log2_factorial(d) / d as f64
            }
        })
        .sum::<f64>()
        / 2.0
}

/// Compares the per-vertex factors `(d!)^{1/(2d)}` and `d^{1/4}` exactly,
/// via `(d!)^2` against `d^d`.
pub fn bregman_vs_hadamard_factor(d: u32) -> Ordering {
    let fact: BigUint = (1..=d).map(BigUint::from).product();
    (&fact * &fact).cmp(&Pow::pow(&BigUint::from(d), d))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GirthBound {
    pub girth: usize,
    /// `(n/4) log2(2g(n-2) / ((g-2)n))`.
    pub log2: f64,
    /// `(n/4) log2(2g / (g-2))`.
    pub simplified_log2: f64,
    /// For `g >= 4`, the bound is below `2^{n/2}`.
    pub below_half_power: Option<bool>,
}

pub fn girth_bound(e: &PlanarEmbedding) -> Option<GirthBound> {
    let g = e.embedding_girth()?;
    if g < 3 {
        return None;
    }
    let n = e.graph().n() as f64;
    let gf = g as f64;
    let log2 = n / 4.0 * (2.0 * gf * (n - 2.0) / ((gf - 2.0) * n)).log2();
    Some(GirthBound {
        girth: g,
        log2,
        simplified_log2: n / 4.0 * (2.0 * gf / (gf - 2.0)).log2(),
        below_half_power: (g >= 4).then(|| log2 < n / 2.0),
    })
}

fn check_square_matching(g: &Graph, m: &Matching) -> Result<()> {
    if !g.is_connected() {
        return Err(Error::Precondition("graph is not connected".into()));
    }
    if has_short_cycles(g).has4 {
        return Err(Error::Precondition("graph has a 4-cycle".into()));
    }
    if !m.is_matching_in(&square_graph(g)) {
        return param("M' is not a matching in the square graph");
    }
    Ok(())
}

/// Fourth power of the square-graph bound: `prod_{M'} (d(u)d(v) - 1)`
/// times `prod d(v)` over uncovered vertices.
pub fn hf_square_fourth_power(g: &Graph, m: &Matching) -> Result<BigUint> {
    check_square_matching(g, m)?;
    let covered = m.covered();
    let pairs: BigUint = m
        .pairs()
        .iter()
        .map(|&(u, v)| BigUint::from(g.degree(u) * g.degree(v) - 1))
        .product();
    let rest: BigUint = (0..g.n())
        .filter(|v| !covered.contains(v))
        .map(|v| BigUint::from(g.degree(v)))
        .product();
    Ok(pairs * rest)
}

pub fn hf_square_bound(g: &Graph, m: &Matching) -> Result<f64> {
    Ok(log2_big(&hf_square_fourth_power(g, m)?) / 4.0)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NamedValue {
    pub name: String,
    pub log2: f64,
}

/// The closed forms for fullerenes on `n` vertices. The hamiltonian cases
/// are only emitted when a hamiltonian cycle is known.
pub fn fullerene_hamiltonian_bounds(n: usize, hamiltonian: bool) -> Result<Vec<NamedValue>> {
    if n % 2 == 1 || n < 20 {
        return param("fullerenes have an even number n >= 20 of vertices");
    }
    let (l3, l8) = (3f64.log2(), 3.0);
    let mut out = Vec::new();
    if hamiltonian {
        if n % 4 == 0 {
            out.push(NamedValue {
                name: "fullerene_hamiltonian".into(),
                log2: l8 * n as f64 / 8.0,
            });
        } else {
            out.push(NamedValue {
                name: "fullerene_hamiltonian".into(),
                log2: l8 * (n - 2) as f64 / 8.0 + l3 / 2.0,
            });
        }
    }
    let k = (5 * n - 4) / 12;
    out.push(NamedValue {
        name: "fullerene_long_cycle".into(),
        log2: l8 * k as f64 / 4.0 + l3 * (n - 2 * k) as f64 / 4.0,
    });
    Ok(out)
}

/// `8^{n/12} 3^{n/12} = 24^{n/12}`.
pub fn cubic_no4_bound(n: usize) -> f64 {
    n as f64 / 12.0 * 24f64.log2()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockBound {
    pub log2: f64,
    /// `det B[V_1]`, then `det B[U_j]` for the outer rings.
    #[serde(serialize_with = "crate::report::ser_display_vec")]
    pub block_dets: Vec<BigInt>,
}

impl BlockBound {
    /// Product of the block determinants, the fourth power of the bound.
    pub fn fourth_power(&self) -> BigInt {
        self.block_dets.iter().product()
    }
}

/// Blocks `V_1 = U_1 ∪ V_0`, `U_2`, ..., `U_k` of `B = -S^2` for a pfaffian
/// orientation.
pub fn hf_block_bound(cd: &CircularDecomposition, gram: &GramMatrix) -> Result<BlockBound> {
    if cd.rings.is_empty() {
        return param("decomposition has no rings");
    }
    let mut blocks = vec![cd.first_block()];
    blocks.extend(cd.rings[1..].iter().cloned());
    let block_dets: Vec<BigInt> = blocks.iter().map(|b| gram.block_det(b)).collect();
    let log2 = block_dets.iter().map(log2_int).sum::<f64>() / 4.0;
    Ok(BlockBound { log2, block_dets })
}

/// Structural hypotheses of the ring-refined bound, `Err` naming the first
/// that fails.
pub fn ring_conditions(g: &Graph, cd: &CircularDecomposition) -> Result<()> {
    cd.validate(g)?;
    let short = has_short_cycles(g);
    if short.has3 || short.has4 {
        return Err(Error::Precondition("graph has a 3- or 4-cycle".into()));
    }
    let mut ring_of = vec![usize::MAX; g.n()];
    for (j, ring) in cd.rings.iter().enumerate() {
        for &v in ring {
            ring_of[v] = j;
        }
    }
    for (j, ring) in cd.rings.iter().enumerate() {
        for &v in ring {
            let below = j.checked_sub(1);
            let above = (j + 1 < cd.rings.len()).then_some(j + 1);
            for dir in [below, above].into_iter().flatten() {
                let c = g.neighbors(v).iter().filter(|&&w| ring_of[w] == dir).count();
                if c > 1 {
                    return Err(Error::Precondition(format!(
                        "vertex {v} of ring {} has {c} neighbours in ring {}",
                        j + 1,
                        dir + 1
                    )));
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RingRefined {
    pub log2: f64,
    /// Bound used for `det B[V_1]`.
    #[serde(serialize_with = "crate::report::ser_display")]
    pub inner: BigInt,
    /// `max_± det(D_c - 2I - T_±^2)` per ring, innermost first; the first
    /// ring is included only for circular graphs.
    #[serde(serialize_with = "crate::report::ser_display_vec")]
    pub ring_dets: Vec<BigInt>,
}

fn max_ring_det(g: &Graph, ring: &[usize]) -> Result<BigInt> {
    let degrees: Vec<u64> = ring.iter().map(|&v| g.degree(v) as u64).collect();
    let mut best: Option<BigInt> = None;
    for s in Sign::BOTH {
        let d = ring_block_det(&RingBlock::new(s, degrees.clone())?);
        if best.as_ref().is_none_or(|b| d > *b) {
            best = Some(d);
        }
    }
    Ok(best.expect("two signs"))
}

/// Ring blocks replaced by their circulant closed forms. `det B[V_1]` comes
/// from `gram` when supplied, otherwise from the Hadamard product of the
/// degrees in `V_1`. For a circular graph `V_1 = U_1` is a ring block too.
pub fn ring_refined_bound(
    g: &Graph,
    cd: &CircularDecomposition,
    gram: Option<&GramMatrix>,
) -> Result<RingRefined> {
    ring_conditions(g, cd)?;
    let (inner, skip) = if cd.is_circular() {
        (BigInt::one(), 0)
    } else {
        let v1 = cd.first_block();
        let det = match gram {
            Some(b) => b.block_det(&v1),
            None => v1.iter().map(|&v| BigInt::from(g.degree(v))).product(),
        };
        (det, 1)
    };
    let ring_dets = cd.rings[skip..]
        .iter()
        .map(|r| max_ring_det(g, r))
        .collect::<Result<Vec<_>>>()?;
    let log2 = (log2_int(&inner) + ring_dets.iter().map(log2_int).sum::<f64>()) / 4.0;
    Ok(RingRefined { log2, inner, ring_dets })
}

/// `20^{n/12}` for circular cubic graphs, `20^{(n-n_1)/12} 3^{n_1/4}`
/// otherwise, `n_1 = |V_1|`.
pub fn semicircular_cubic_bound(g: &Graph, cd: &CircularDecomposition) -> Result<f64> {
    if g.regular_degree() != Some(3) {
        return Err(Error::Precondition("graph is not cubic".into()));
    }
    ring_conditions(g, cd)?;
    let n = g.n() as f64;
    let l20 = 20f64.log2();
    if cd.is_circular() {
        return Ok(n / 12.0 * l20);
    }
    let n1 = cd.first_block().len() as f64;
    Ok((n - n1) / 12.0 * l20 + n1 / 4.0 * 3f64.log2())
}

/// `(n - 20)/10 · log2 5`, a lower envelope.
pub fn pentacap_lower_bound(n: usize) -> Result<f64> {
    if n < 20 {
        return param("lower envelope needs n >= 20");
    }
    Ok((n - 20) as f64 / 10.0 * 5f64.log2())
}

/// `count >= 5^{(n-20)/10}` decided as `count^10 >= 5^{n-20}`.
pub fn lower_envelope_holds(count: &BigUint, n: usize) -> Result<bool> {
    if n < 20 {
        return param("lower envelope needs n >= 20");
    }
    Ok(Pow::pow(count, 10u32) >= Pow::pow(&BigUint::from(5u32), (n - 20) as u32))
}

/// `count^4 == fourth` with `fourth` the exact fourth power of a bound.
pub fn is_tight(count: &BigUint, fourth: &BigUint) -> bool {
    !fourth.is_zero() && Pow::pow(count, 4u32) == *fourth
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classic::embedded;
    use crate::fullerene::pentacap;
    use crate::graph::{make_classic, Classic};
    use crate::matching::greedy_maximal_matching;
    use crate::pfaffian::{gram_matrix, kasteleyn_orient};

    const EPS: f64 = 1e-9;

    fn g(kind: Classic) -> Graph {
        make_classic(kind).unwrap()
    }

    #[test]
    fn hadamard_values() {
        assert!((hadamard_bound(&g(Classic::Complete(4))) - 3f64.log2()).abs() < EPS);
        assert!((hadamard_bound(&g(Classic::Octahedron)) - 3.0).abs() < EPS);
        assert!((hadamard_bound(&g(Classic::Prism(4))) - 9f64.log2()).abs() < EPS);
        assert_eq!(hadamard_fourth_power(&g(Classic::Complete(4))), BigUint::from(81u32));
        assert!(is_tight(&BigUint::from(3u32), &BigUint::from(81u32)));
        assert_eq!(hadamard_bound(&Graph::empty(2)), f64::NEG_INFINITY);
        let w = WeightedGraph::unit(g(Classic::Octahedron));
        assert!((weighted_hadamard_bound(&w) - 3.0).abs() < EPS);
    }

    #[test]
    fn bregman_values() {
        assert!((bregman_bound(&g(Classic::CompleteBipartite(3))) - 6f64.log2()).abs() < EPS);
        let k4 = g(Classic::Complete(4));
        assert!((bregman_bound(&k4) - 4.0 / 6.0 * 6f64.log2()).abs() < EPS);
        assert!(bregman_bound(&k4) > hadamard_bound(&k4));
        assert_eq!(bregman_vs_hadamard_factor(1), Ordering::Equal);
        assert_eq!(bregman_vs_hadamard_factor(2), Ordering::Equal);
        for d in 3..20 {
            assert_eq!(bregman_vs_hadamard_factor(d), Ordering::Greater);
        }
    }

    #[test]
    fn girth_values() {
        let d = girth_bound(&embedded(Classic::Dodecahedron).unwrap()).unwrap();
        assert_eq!(d.girth, 5);
        assert!((d.log2 - 5.0 * 3f64.log2()).abs() < EPS);
        let c6 = girth_bound(&embedded(Classic::Cycle(6)).unwrap()).unwrap();
        assert!((c6.log2 - 1.5).abs() < EPS);
        let p = girth_bound(&embedded(Classic::Prism(6)).unwrap()).unwrap();
        assert_eq!(p.below_half_power, Some(true));
        assert!(girth_bound(&embedded(Classic::Path(4)).unwrap()).is_none());
    }

    #[test]
    fn square_bounds() {
        let d = g(Classic::Dodecahedron);
        let empty = Matching::new([]).unwrap();
        assert!((hf_square_bound(&d, &empty).unwrap() - hadamard_bound(&d)).abs() < EPS);
        let m = greedy_maximal_matching(&square_graph(&d), None);
        assert!(hf_square_bound(&d, &m).unwrap() < hadamard_bound(&d));
        assert!(matches!(
            hf_square_bound(&g(Classic::Prism(4)), &empty),
            Err(Error::Precondition(_))
        ));
        let bad = Matching::new([(0, 1)]).unwrap();
        assert!(matches!(hf_square_bound(&d, &bad), Err(Error::Parameter(_))));
    }

    #[test]
    fn fullerene_closed_forms() {
        let b = fullerene_hamiltonian_bounds(60, true).unwrap();
        assert!((b[0].log2 - 22.5).abs() < EPS);
        let b = fullerene_hamiltonian_bounds(26, true).unwrap();
        assert!((b[0].log2 - (9.0 + 3f64.log2() / 2.0)).abs() < EPS);
        let b = fullerene_hamiltonian_bounds(20, false).unwrap();
        assert_eq!(b.len(), 1);
        assert!((b[0].log2 - 192f64.log2()).abs() < EPS);
        assert!(fullerene_hamiltonian_bounds(19, false).is_err());
        assert!((cubic_no4_bound(12) - 24f64.log2()).abs() < EPS);
    }

    #[test]
    fn ring_bounds_on_the_dodecahedron() {
        let f = pentacap(1).unwrap();
        let gr = f.graph();
        let refined = ring_refined_bound(gr, &f.decomposition, None).unwrap();
        let want: Vec<BigInt> = [121, 15625, 121].map(BigInt::from).to_vec();
        assert_eq!(refined.ring_dets, want);
        let closed = semicircular_cubic_bound(gr, &f.decomposition).unwrap();
        assert!((closed - 20.0 / 12.0 * 20f64.log2()).abs() < EPS);
        assert!(refined.log2 <= closed + EPS);
        assert!(36f64.log2() <= refined.log2);

        let b = gram_matrix(&kasteleyn_orient(&f.embedding).unwrap());
        let block = hf_block_bound(&f.decomposition, &b).unwrap();
        assert!(36f64.log2() <= block.log2 + EPS);
        assert!(block.log2 <= hadamard_bound(gr) + EPS);
    }

    #[test]
    fn ring_conditions_reject_short_cycles() {
        let e = embedded(Classic::Prism(6)).unwrap();
        let cd = crate::circular::detect_semicircular(&e, None).unwrap();
        assert!(ring_refined_bound(e.graph(), &cd, None).is_err());
    }

    #[test]
    fn lower_envelope() {
        assert_eq!(pentacap_lower_bound(20).unwrap(), 0.0);
        assert!((pentacap_lower_bound(30).unwrap() - 5f64.log2()).abs() < EPS);
        assert!(lower_envelope_holds(&BigUint::from(5u32), 30).unwrap());
        assert!(!lower_envelope_holds(&BigUint::from(4u32), 30).unwrap());
        assert!(lower_envelope_holds(&BigUint::from(25u32), 40).unwrap());
    }
}
