//! Ground-truth matching machinery: exhaustive perfect-matching counts,
//! hafnians, matching polynomials and the small matchings used by the
//! square-graph bound.
//!
//! Everything here is exact integer arithmetic. The exhaustive routines are
//! the oracle the determinant-based counts are checked against, so they
//! share no code with `pfaffian`.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{param, Error, Result};
use crate::graph::Graph;

/// Default vertex limit for the exhaustive routines.
pub const DEFAULT_ORACLE_LIMIT: usize = 40;

fn guard(n: usize, limit: usize) -> Result<()> {
    // masks are u64
    if n > limit || n > 64 {
        return Err(Error::OracleTooLarge { n, limit: limit.min(64) });
    }
    Ok(())
}

fn neighbor_masks(g: &Graph) -> Vec<u64> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u))
        .collect()
}

/// Number of perfect matchings by branching on the lowest uncovered vertex,
/// memoised on the set of uncovered vertices. Odd `n` gives 0.
pub fn enumerate_perfect_matchings(g: &Graph, limit: usize) -> Result<BigUint> {
    guard(g.n(), limit)?;
    if g.n() % 2 == 1 {
        return Ok(BigUint::zero());
    }
    let nb = neighbor_masks(g);
    let full = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    let mut memo = HashMap::new();
    Ok(count_rec(full, &nb, &mut memo))
}

fn count_rec(free: u64, nb: &[u64], memo: &mut HashMap<u64, BigUint>) -> BigUint {
    if free == 0 {
        return BigUint::one();
    }
    if let Some(c) = memo.get(&free) {
        return c.clone();
    }
    let v = free.trailing_zeros() as usize;
    let rest = free & !(1 << v);
    let mut cand = nb[v] & rest;
    let mut total = BigUint::zero();
    while cand != 0 {
        let u = cand.trailing_zeros();
        cand &= cand - 1;
        total += count_rec(rest & !(1 << u), nb, memo);
    }
    memo.insert(free, total.clone());
    total
}

/// All perfect matchings, each as sorted `(lo, hi)` pairs in the order the
/// lowest-vertex recursion produces them.
pub fn list_perfect_matchings(g: &Graph, limit: usize) -> Result<Vec<Vec<(usize, usize)>>> {
    guard(g.n(), limit)?;
    let mut out = Vec::new();
    if g.n() % 2 == 0 {
        let full = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
        list_rec(full, &neighbor_masks(g), &mut Vec::new(), &mut out);
    }
    Ok(out)
}

fn list_rec(free: u64, nb: &[u64], cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
    if free == 0 {
        out.push(cur.clone());
        return;
    }
    let v = free.trailing_zeros() as usize;
    let rest = free & !(1 << v);
    let mut cand = nb[v] & rest;
    while cand != 0 {
        let u = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        cur.push((v, u));
        list_rec(rest & !(1 << u), nb, cur, out);
        cur.pop();
    }
}

/// Hafnian of a symmetric matrix with zero diagonal and nonnegative entries.
pub fn hafnian(w: &[Vec<BigRational>], limit: usize) -> Result<BigRational> {
    let n = w.len();
    if w.iter().any(|r| r.len() != n) {
        return param("hafnian needs a square matrix");
    }
    if n % 2 == 1 {
        return param("hafnian needs even dimension");
    }
    for i in 0..n {
        if !w[i][i].is_zero() {
            return param("hafnian needs a zero diagonal");
        }
        for j in 0..i {
            if w[i][j] != w[j][i] {
                return param(format!("entries ({i},{j}) and ({j},{i}) differ"));
            }
            if w[i][j] < BigRational::zero() {
                return param(format!("negative entry at ({i},{j})"));
            }
        }
    }
    guard(n, limit)?;
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut memo = HashMap::new();
    Ok(haf_rec(full, w, &mut memo))
}

fn haf_rec(free: u64, w: &[Vec<BigRational>], memo: &mut HashMap<u64, BigRational>) -> BigRational {
    if free == 0 {
        return BigRational::one();
    }
    if let Some(c) = memo.get(&free) {
        return c.clone();
    }
    let v = free.trailing_zeros() as usize;
    let rest = free & !(1 << v);
    let mut total = BigRational::zero();
    let mut cand = rest;
    while cand != 0 {
        let u = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        if !w[v][u].is_zero() {
            total += &w[v][u] * haf_rec(rest & !(1 << u), w, memo);
        }
    }
    memo.insert(free, total.clone());
    total
}

/// `[phi(0,G), phi(1,G), ..., phi(floor(n/2),G)]`, where `phi(j,G)` counts
/// matchings with `j` edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchPolynomial {
    #[serde(serialize_with = "crate::report::ser_biguint_vec")]
    pub coeffs: Vec<BigUint>,
}

impl MatchPolynomial {
    pub fn coeff(&self, j: usize) -> BigUint {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    /// Number of matchings of all sizes, the value at `t = 1`.
    pub fn total(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    fn padded(mut coeffs: Vec<BigUint>, len: usize) -> MatchPolynomial {
        coeffs.resize(len, BigUint::zero());
        MatchPolynomial { coeffs }
    }
}

/// Vertex recursion `phi(G) = phi(G - v) + sum_u t phi(G - v - u)` over the
/// lowest remaining vertex, memoised on the remaining set.
pub fn matching_polynomial(g: &Graph, limit: usize) -> Result<MatchPolynomial> {
    guard(g.n(), limit)?;
    let nb = neighbor_masks(g);
    let full = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    let mut memo = HashMap::new();
    let c = poly_rec(full, &nb, &mut memo);
    Ok(MatchPolynomial::padded(c, g.n() / 2 + 1))
}

fn poly_rec(alive: u64, nb: &[u64], memo: &mut HashMap<u64, Vec<BigUint>>) -> Vec<BigUint> {
    if alive == 0 {
        return vec![BigUint::one()];
    }
    if let Some(c) = memo.get(&alive) {
        return c.clone();
    }
    let v = alive.trailing_zeros() as usize;
    let rest = alive & !(1 << v);
    let mut out = poly_rec(rest, nb, memo);
    let mut cand = nb[v] & rest;
    while cand != 0 {
        let u = cand.trailing_zeros();
        cand &= cand - 1;
        let sub = poly_rec(rest & !(1 << u), nb, memo);
        if out.len() < sub.len() + 1 {
            out.resize(sub.len() + 1, BigUint::zero());
        }
        for (j, c) in sub.into_iter().enumerate() {
            out[j + 1] += c;
        }
    }
    memo.insert(alive, out.clone());
    out
}

fn shift_add(a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
    // a + t * b
    let mut out = a.to_vec();
    out.resize(a.len().max(b.len() + 1), BigUint::zero());
    for (j, c) in b.iter().enumerate() {
        out[j + 1] += c;
    }
    out
}

/// Path on `n` vertices: `P_n = P_{n-1} + t P_{n-2}`, `P_0 = P_1 = 1`.
pub fn path_matching_poly(n: usize) -> MatchPolynomial {
    let mut prev = vec![BigUint::one()];
    let mut cur = vec![BigUint::one()];
    for _ in 2..=n {
        let next = shift_add(&cur, &prev);
        prev = std::mem::replace(&mut cur, next);
    }
    MatchPolynomial::padded(cur, n / 2 + 1)
}

/// `C_n = P_n + t P_{n-2}` for `n >= 3`.
pub fn cycle_matching_poly(n: usize) -> Result<MatchPolynomial> {
    if n < 3 {
        return param("C_n needs n >= 3");
    }
    let c = shift_add(&path_matching_poly(n).coeffs, &path_matching_poly(n - 2).coeffs);
    Ok(MatchPolynomial::padded(c, n / 2 + 1))
}

/// A set of pairwise disjoint pairs, stored as sorted `(lo, hi)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Matching {
    pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn new(pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Matching> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (u, v) in pairs {
            if u == v || !seen.insert(u) || !seen.insert(v) {
                return param(format!("pair ({u},{v}) is not disjoint from the others"));
            }
            out.push((u.min(v), u.max(v)));
        }
        out.sort_unstable();
        Ok(Matching { pairs: out })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn covered(&self) -> BTreeSet<usize> {
        self.pairs.iter().flat_map(|&(u, v)| [u, v]).collect()
    }

    pub fn is_perfect(&self, n: usize) -> bool {
        2 * self.pairs.len() == n
    }

    pub fn is_matching_in(&self, g: &Graph) -> bool {
        self.pairs.iter().all(|&(u, v)| v < g.n() && g.has_edge(u, v))
    }
}

/// Greedy maximal matching: vertices in `order` (default `0..n`) take their
/// lowest free neighbour.
pub fn greedy_maximal_matching(g: &Graph, order: Option<&[usize]>) -> Matching {
    let default: Vec<usize> = (0..g.n()).collect();
    let order = order.unwrap_or(&default);
    let mut used = vec![false; g.n()];
    let mut pairs = Vec::new();
    for &v in order {
        if used[v] {
            continue;
        }
        if let Some(&u) = g.neighbors(v).iter().find(|&&u| !used[u]) {
            used[u] = true;
            used[v] = true;
            pairs.push((v, u));
        }
    }
    Matching::new(pairs).expect("greedy pairs are disjoint")
}

/// Matching in the square graph built from a path of `l >= 3` vertices.
/// Each block of four consecutive vertices `p_i..p_{i+3}` contributes the
/// pairs `(p_i, p_{i+2})`, `(p_{i+1}, p_{i+3})`; a leftover block of three
/// contributes `(p_i, p_{i+2})`. Size `2 floor(l/4)` for even `l`,
/// `floor(l/2)` for odd `l`.
pub fn matching_from_path(g: &Graph, path: &[usize]) -> Result<Matching> {
    let l = path.len();
    if l < 3 {
        return param("path needs at least 3 vertices");
    }
    if path.iter().any(|&v| v >= g.n()) || path.iter().collect::<BTreeSet<_>>().len() != l {
        return param("path repeats a vertex or leaves the graph");
    }
    if let Some(w) = path.windows(2).find(|w| !g.has_edge(w[0], w[1])) {
        return param(format!("{}-{} is not an edge", w[0], w[1]));
    }
    let mut pairs = Vec::new();
    let mut i = 0;
    while i + 4 <= l {
        pairs.push((path[i], path[i + 2]));
        pairs.push((path[i + 1], path[i + 3]));
        i += 4;
    }
    if l - i == 3 {
        pairs.push((path[i], path[i + 2]));
    }
    Matching::new(pairs)
}
