//! The skew circulants `T_{n,+}`, `T_{n,-}` of an oriented cycle, the `±1`
//! gauge that reduces any cycle orientation to one of them, the Lucas closed
//! forms of `det(I - T^2)` and the ring blocks `D_c - 2I - T^2`.
//!
//! `T_{n,+}`: arcs `0 -> 1 -> ... -> n-1` and `0 -> n-1`.
//! `T_{n,-}`: the directed cycle `0 -> 1 -> ... -> n-1 -> 0`.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Zero};
use serde::Serialize;

use crate::error::{param, Error, Result};
use crate::graph::{make_classic, Classic};
use crate::linalg::{poly_determinant, Matrix, Poly};
use crate::matching::{cycle_matching_poly, matching_polynomial, path_matching_poly};
use crate::pfaffian::{Orientation, SkewMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];
}

pub fn t_matrix(n: usize, sign: Sign) -> Result<SkewMatrix> {
    if n < 3 {
        return param("T_n needs n >= 3");
    }
    let mut m = Matrix::zeros(n);
    for i in 0..n - 1 {
        m[(i, i + 1)] = BigInt::one();
        m[(i + 1, i)] = -BigInt::one();
    }
    let s = match sign {
        Sign::Plus => BigInt::one(),
        Sign::Minus => -BigInt::one(),
    };
    m[(0, n - 1)] = s.clone();
    m[(n - 1, 0)] = -s;
    SkewMatrix::try_from_matrix(m)
}

/// `D P S P^T D = T_{n,sign}`, where `P` lists the vertices in `order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Gauge {
    pub order: Vec<usize>,
    pub sign: Sign,
    pub diagonal: Vec<i8>,
}

/// Reduces an orientation of a cycle to `T_{n,+}` or `T_{n,-}`. The cycle
/// is read from vertex 0 towards its smaller neighbour; the diagonal starts
/// at `+1` and is chosen so every consecutive arc points forward.
pub fn gauge_reduce(o: &Orientation) -> Result<Gauge> {
    let g = o.graph();
    let n = g.n();
    if n < 3 || g.regular_degree() != Some(2) || !g.is_connected() {
        return Err(Error::Precondition("gauge_reduce needs a single cycle".into()));
    }
    let mut order = vec![0, g.neighbors(0)[0]];
    while order.len() < n {
        let (p, c) = (order[order.len() - 2], order[order.len() - 1]);
        let next = g.neighbors(c).iter().copied().find(|&x| x != p).unwrap();
        order.push(next);
    }
    let mut diagonal = vec![1i8; n];
    for i in 0..n - 1 {
        diagonal[i + 1] = diagonal[i] * o.sign(order[i], order[i + 1]) as i8;
    }
    let closing = diagonal[0] as i32 * diagonal[n - 1] as i32 * o.sign(order[0], order[n - 1]);
    let sign = if closing > 0 { Sign::Plus } else { Sign::Minus };

    let s = o.skew_matrix();
    let p = s.matrix().principal(&order);
    let d = Matrix::diagonal(diagonal.iter().map(|&x| BigInt::from(x)));
    let reduced = d.mul(&p).mul(&d);
    if &reduced != t_matrix(n, sign)?.matrix() {
        return Err(Error::Precondition("gauge verification failed".into()));
    }
    Ok(Gauge { order, sign, diagonal })
}

/// `L_1 = 1`, `L_2 = 3`, `L_n = L_{n-1} + L_{n-2}`.
pub fn lucas(n: usize) -> BigInt {
    let (mut a, mut b) = (BigInt::from(2), BigInt::one());
    for _ in 0..n {
        let c = &a + &b;
        a = std::mem::replace(&mut b, c);
    }
    a
}

/// Closed form of `det(I_n - T_{n,sign}^2)`: `L_n^2` for odd `n`,
/// `(L_n + 2)^2` and `(L_n - 2)^2` for even `n` and sign `+`, `-`.
pub fn lucas_det(n: usize, sign: Sign) -> Result<BigInt> {
    if n < 3 {
        return param("lucas_det needs n >= 3");
    }
    let l = lucas(n);
    let base = match (n % 2, sign) {
        (1, _) => l,
        (_, Sign::Plus) => l + 2,
        (_, Sign::Minus) => l - 2,
    };
    Ok(&base * &base)
}

/// `D_c - 2I - T_{n,sign}^2` where `D_c` holds the degrees of the ring
/// vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingBlock {
    n: usize,
    sign: Sign,
    degrees: Vec<u64>,
}

impl RingBlock {
    pub fn new(sign: Sign, degrees: Vec<u64>) -> Result<RingBlock> {
        if degrees.len() < 3 {
            return param("a ring has at least 3 vertices");
        }
        if degrees.iter().any(|&d| d < 2) {
            return param("ring vertices have degree >= 2");
        }
        Ok(RingBlock { n: degrees.len(), sign, degrees })
    }

    /// All degrees 3.
    pub fn cubic(n: usize, sign: Sign) -> Result<RingBlock> {
        RingBlock::new(sign, vec![3; n])
    }

    pub fn matrix(&self) -> Matrix {
        let t = t_matrix(self.n, self.sign).expect("n >= 3");
        let t2 = t.matrix().mul(t.matrix());
        let d = Matrix::diagonal(self.degrees.iter().map(|&d| BigInt::from(d) - 2));
        d.add(&t2.neg())
    }
}

pub fn ring_block_det(rb: &RingBlock) -> BigInt {
    rb.matrix().determinant()
}

fn sub_t(n: usize, sign: Sign, t_power: usize, identity_sign: i64, scale: i64) -> Result<Matrix> {
    // identity_sign * I + scale * T^t_power
    let t = t_matrix(n, sign)?;
    let mut m = t.matrix().clone();
    for _ in 1..t_power {
        m = m.mul(t.matrix());
    }
    Ok(Matrix::identity(n).scale(&BigInt::from(identity_sign)).add(&m.scale(&BigInt::from(scale))))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub n: usize,
    /// `det(I + t T_{n,-}) = phi(t, C_n) - 2 t^n` (even) or `phi(t, C_n)` (odd).
    pub minus_poly: bool,
    /// `det(I + t T_{n,+}) = phi(t, C_n) + 2 t^n` (even) or `phi(t, C_n)` (odd).
    pub plus_poly: bool,
    /// Cycle recursion agrees with the vertex recursion on `C_n`.
    pub recursion: bool,
    /// `phi(1, C_n) = L_n`.
    pub total_is_lucas: bool,
    /// `det(I - T^2) = det(I + T)^2`, both signs.
    pub square_identity: bool,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.minus_poly && self.plus_poly && self.recursion && self.total_is_lucas && self.square_identity
    }
}

/// `sum_j phi(j, C_n) t^{2j}` as a polynomial in `t`.
fn phi_in_t(n: usize) -> Result<Poly> {
    let phi = cycle_matching_poly(n)?;
    let mut coeffs = vec![BigInt::zero(); n + 1];
    for (j, c) in phi.coeffs.iter().enumerate() {
        coeffs[2 * j] = BigInt::from(c.clone());
    }
    Ok(Poly::new(coeffs))
}

fn det_i_plus_t(n: usize, sign: Sign) -> Result<Poly> {
    let t = t_matrix(n, sign)?;
    let rows: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let id = if i == j { Poly::constant(1) } else { Poly::constant(0) };
                    id.add(&Poly::monomial(t.matrix()[(i, j)].clone(), 1))
                })
                .collect()
        })
        .collect();
    Ok(poly_determinant(&rows))
}

/// Symbolic determinant identities for `C_n`, `3 <= n <= 16`.
pub fn matching_poly_identity_check(n: usize) -> Result<IdentityCheck> {
    if !(3..=16).contains(&n) {
        return param("identity check runs for 3 <= n <= 16");
    }
    let phi = phi_in_t(n)?;
    let top = Poly::monomial(2, n);
    let (want_minus, want_plus) = if n % 2 == 0 {
        (phi.sub(&top), phi.add(&top))
    } else {
        (phi.clone(), phi.clone())
    };
    let cycle = make_classic(Classic::Cycle(n))?;
    let general = matching_polynomial(&cycle, 16)?;
    let recursion = general == cycle_matching_poly(n)?
        && path_matching_poly(n) == matching_polynomial(&make_classic(Classic::Path(n))?, 16)?;
    let total_is_lucas = BigInt::from(general.total()) == lucas(n);
    let mut square_identity = true;
    for sign in Sign::BOTH {
        let lhs = sub_t(n, sign, 2, 1, -1)?.determinant();
        let rhs = sub_t(n, sign, 1, 1, 1)?.determinant();
        square_identity &= lhs == &rhs * &rhs;
    }
    Ok(IdentityCheck {
        n,
        minus_poly: det_i_plus_t(n, Sign::Minus)? == want_minus,
        plus_poly: det_i_plus_t(n, Sign::Plus)? == want_plus,
        recursion,
        total_is_lucas,
        square_identity,
    })
}

/// `det(a^2 I - S^2) = det(aI + S)^2` for a skew `S`.
pub fn square_identity_holds(s: &SkewMatrix, a: i64) -> bool {
    let n = s.order();
    let a = BigInt::from(a);
    let lhs = Matrix::identity(n).scale(&(&a * &a)).add(&s.matrix().mul(s.matrix()).neg());
    let plus = Matrix::identity(n).scale(&a).add(s.matrix());
    let d = plus.determinant();
    lhs.determinant() == &d * &d
}

/// `a_p` vs `a_q` where `a_k = det_k^{1/k}`, by comparing `det_p^q` with
/// `det_q^p`.
pub fn compare_roots(det_p: &BigUint, p: usize, det_q: &BigUint, q: usize) -> Ordering {
    Pow::pow(det_p, q as u32).cmp(&Pow::pow(det_q, p as u32))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Monotonicity {
    pub n_max: usize,
    pub odd_increasing: bool,
    pub even_decreasing: bool,
    pub within_a3_a4: bool,
    /// `a_n <= 20^{1/3}` for all `n >= 5`, with equality only at `n = 6`.
    pub max_at_six: bool,
    /// `a_{n_max}` in floating point, for display only.
    pub last_value: f64,
}

impl Monotonicity {
    pub fn passed(&self) -> bool {
        self.odd_increasing && self.even_decreasing && self.within_a3_a4 && self.max_at_six
    }
}

/// Monotonicity of `a_n = det(I_n - T_{n,+}^2)^{1/n}` up to `n_max`, all on
/// exact integers.
pub fn sequence_monotonicity_check(n_max: usize) -> Result<Monotonicity> {
    if n_max < 8 {
        return param("monotonicity check needs n_max >= 8");
    }
    let dets: Vec<BigUint> = (0..=n_max)
        .map(|n| {
            if n < 3 {
                BigUint::zero()
            } else {
                lucas_det(n, Sign::Plus).unwrap().to_biguint().expect("square")
            }
        })
        .collect();
    let cmp = |p: usize, q: usize| compare_roots(&dets[p], p, &dets[q], q);
    let step = |start: usize, want: Ordering| {
        (start..=n_max).step_by(2).skip(1).all(|n| cmp(n - 2, n) == want)
    };
    let odd_increasing = step(3, Ordering::Less);
    let even_decreasing = step(4, Ordering::Greater);
    let within_a3_a4 = (3..=n_max).all(|n| cmp(3, n) != Ordering::Greater && cmp(n, 4) != Ordering::Greater);
    let twenty = BigUint::from(20u32);
    let max_at_six = (5..=n_max).all(|n| {
        // a_n^{3n} = det_n^3 against 20^n
        match Pow::pow(&dets[n], 3u32).cmp(&Pow::pow(&twenty, n as u32)) {
            Ordering::Less => n != 6,
            Ordering::Equal => n == 6,
            Ordering::Greater => false,
        }
    });
    let last = &dets[n_max];
    let last_value = (crate::linalg::log2_big(last) / n_max as f64).exp2();
    Ok(Monotonicity {
        n_max,
        odd_increasing,
        even_decreasing,
        within_a3_a4,
        max_at_six,
        last_value,
    })
}
