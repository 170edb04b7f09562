use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use perfmat::bounds::bregman_bound;
use perfmat::circulant::{gauge_reduce, lucas_det, square_identity_holds, t_matrix, Sign};
use perfmat::embedding::PlanarEmbedding;
use perfmat::fullerene::{cap, validate_fullerene, Family};
use perfmat::graph::{make_classic, Classic, Graph};
use perfmat::linalg::{exact_sqrt, log2_big, Matrix};
use perfmat::matching::{enumerate_perfect_matchings, hafnian};
use perfmat::pfaffian::{
    count_by_pfaffian, gram_matrix, is_kasteleyn, kasteleyn_orient, Orientation, SkewMatrix,
};

fn skew(n: usize, entries: &[i64]) -> Matrix {
    let mut m = Matrix::zeros(n);
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            m[(i, j)] = BigInt::from(entries[k]);
            m[(j, i)] = BigInt::from(-entries[k]);
            k += 1;
        }
    }
    m
}

fn skew_strategy(orders: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Matrix> {
    orders.prop_flat_map(|n| {
        prop::collection::vec(-3i64..=3, n * (n - 1) / 2).prop_map(move |e| skew(n, &e))
    })
}

/// A graph on `n` vertices keeping each pair of `K_n` where the mask bit is set.
fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |keep| {
            let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
            let edges: Vec<_> = pairs.zip(keep).filter(|(_, k)| *k).map(|(p, _)| p).collect();
            Graph::new(n, edges).unwrap()
        })
    })
}

/// Random subgraph of a `w x h` grid with one diagonal per cell, drawn with
/// straight lines so the coordinates give a planar embedding.
fn grid_strategy() -> impl Strategy<Value = PlanarEmbedding> {
    (2usize..=4, 2usize..=4)
        .prop_flat_map(|(w, h)| {
            let mut candidates = Vec::new();
            for y in 0..h {
                for x in 0..w {
                    let v = y * w + x;
                    if x + 1 < w {
                        candidates.push((v, v + 1));
                    }
                    if y + 1 < h {
                        candidates.push((v, v + w));
                    }
                    if x + 1 < w && y + 1 < h {
                        candidates.push((v, v + w + 1));
                    }
                }
            }
            let k = candidates.len();
            (Just((w, h, candidates)), prop::collection::vec(prop::bool::weighted(0.8), k))
        })
        .prop_map(|((w, h, candidates), keep)| {
            let edges: Vec<_> = candidates.into_iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| e).collect();
            let g = Graph::new(w * h, edges).unwrap();
            let coords: Vec<(f64, f64)> = (0..w * h).map(|v| ((v % w) as f64, (v / w) as f64)).collect();
            PlanarEmbedding::from_coordinates(g, &coords).unwrap()
        })
}

proptest! {
    #[test]
    fn square_identity_on_random_skew(m in skew_strategy(1..=6), a in -3i64..=3) {
        let s = SkewMatrix::try_from_matrix(m).unwrap();
        prop_assert!(square_identity_holds(&s, a));
    }

    #[test]
    fn odd_skew_determinant_vanishes(m in skew_strategy(1..=7).prop_filter("odd", |m| m.order() % 2 == 1)) {
        prop_assert!(m.determinant().is_zero());
    }

    #[test]
    fn even_skew_determinant_is_a_square(m in skew_strategy(2..=8)) {
        prop_assert!(exact_sqrt(&m.determinant()).is_some());
    }

    #[test]
    fn hafnian_matches_enumeration(g in graph_strategy(12).prop_filter("even order", |g| g.n() % 2 == 0)) {
        let n = g.n();
        let mut w = vec![vec![BigRational::zero(); n]; n];
        for &(u, v) in g.edges() {
            w[u][v] = BigRational::one();
            w[v][u] = BigRational::one();
        }
        let h = hafnian(&w, 40).unwrap();
        let count = enumerate_perfect_matchings(&g, 40).unwrap();
        prop_assert_eq!(h, BigRational::from_integer(BigInt::from(count)));
    }

    #[test]
    fn gram_minors_nonnegative(g in graph_strategy(9), mask in any::<u64>()) {
        let o = Orientation::from_mask(g, mask);
        prop_assert!(gram_matrix(&o).leading_minors_nonnegative());
    }

    #[test]
    fn pfaffian_never_exceeds_count(g in graph_strategy(8), mask in any::<u64>()) {
        let count = enumerate_perfect_matchings(&g, 40).unwrap();
        let det = Orientation::from_mask(g, mask).skew_matrix().determinant();
        prop_assert!(det <= BigInt::from(&count * &count));
    }

    #[test]
    fn bregman_bounds_count(g in graph_strategy(10)) {
        let count = enumerate_perfect_matchings(&g, 40).unwrap();
        if !count.is_zero() {
            prop_assert!(log2_big(&count) <= bregman_bound(&g) + 1e-9);
        }
    }

    #[test]
    fn kasteleyn_matches_oracle_on_grids(e in grid_strategy()) {
        prop_assume!(e.graph().is_connected());
        let o = kasteleyn_orient(&e).unwrap();
        prop_assert!(is_kasteleyn(&e, &o));
        let oracle = enumerate_perfect_matchings(e.graph(), 40).unwrap();
        prop_assert_eq!(count_by_pfaffian(&e).unwrap(), oracle);
    }

    #[test]
    fn cap_families_are_fullerenes(layers in 1usize..=5, hexa in any::<bool>()) {
        let family = if hexa { Family::Hexacap } else { Family::Pentacap };
        let f = cap(family, layers).unwrap();
        let k = family.k();
        prop_assert_eq!(f.embedding.graph().n(), 2 * k * (layers + 1));
        let check = validate_fullerene(&f.embedding);
        prop_assert!(check.is_fullerene, "{:?}", check.reasons);
        prop_assert_eq!(check.pentagons, 12);
        f.decomposition.validate(f.embedding.graph()).unwrap();
        prop_assert!(f.decomposition.is_circular());
    }
}

#[test]
fn every_orientation_of_c8_gauges_to_a_circulant() {
    let g = make_classic(Classic::Cycle(8)).unwrap();
    let mut seen = [0usize; 2];
    for mask in 0..1u64 << 8 {
        let o = Orientation::from_mask(g.clone(), mask);
        let gauge = gauge_reduce(&o).unwrap();
        let det = o.skew_matrix().determinant();
        let t = t_matrix(8, gauge.sign).unwrap();
        assert_eq!(det, t.determinant());
        let i_minus_s2 = Matrix::identity(8).add(&o.skew_matrix().matrix().mul(o.skew_matrix().matrix()).neg());
        assert_eq!(i_minus_s2.determinant(), lucas_det(8, gauge.sign).unwrap());
        seen[(gauge.sign == Sign::Plus) as usize] += 1;
    }
    assert_eq!(seen, [128, 128]);
}

#[test]
fn c8_pfaffian_orientations_reach_two_matchings() {
    let t = t_matrix(8, Sign::Plus).unwrap();
    assert_eq!(t.determinant(), BigInt::from(4));
    assert_eq!(exact_sqrt(&t.determinant()), Some(BigUint::from(2u32)));
    assert!(t_matrix(8, Sign::Minus).unwrap().determinant().is_zero());
}
