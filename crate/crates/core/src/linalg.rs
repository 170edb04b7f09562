//! Exact dense linear algebra over the integers.
//!
//! Determinants use fraction-free (Bareiss) elimination so every
//! intermediate value stays an integer; there is no floating point anywhere
//! in this module.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Square matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    data: Vec<BigInt>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Matrix {
        Matrix {
            n,
            data: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        Matrix::diagonal((0..n).map(|_| BigInt::one()))
    }

    pub fn diagonal<I: IntoIterator<Item = BigInt>>(diag: I) -> Matrix {
        let diag: Vec<BigInt> = diag.into_iter().collect();
        let mut m = Matrix::zeros(diag.len());
        for (i, d) in diag.into_iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_rows<R, T>(rows: R) -> Matrix
    where
        R: IntoIterator,
        R::Item: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let rows: Vec<Vec<BigInt>> = rows
            .into_iter()
            .map(|r| r.into_iter().map(Into::into).collect())
            .collect();
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Matrix {
            n,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n);
        Matrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Matrix {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&BigInt::from(-1))
    }

    /// Principal submatrix on the given indices, in the given order.
    pub fn principal(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                m[(a, b)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_skew_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..=i).all(|j| self[(i, j)] == -&self[(j, i)]))
    }

    /// Exact determinant by Bareiss elimination with row pivoting.
    pub fn determinant(&self) -> BigInt {
        bareiss(self.data.clone(), self.n)
    }

    /// All leading principal minors `det M[0..k]`, `k = 1..=n`.
    pub fn leading_minors(&self) -> Vec<BigInt> {
        (1..=self.n)
            .map(|k| self.principal(&(0..k).collect::<Vec<_>>()).determinant())
            .collect()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.n + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.n).map(|i| self.row(i).iter().map(ToString::to_string).collect::<Vec<_>>()))
            .finish()
    }
}

fn bareiss(mut a: Vec<BigInt>, n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut sign_flip = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            sign_flip = !sign_flip;
        }
        let pivot = a[k * n + k].clone();
        for i in k + 1..n {
            let aik = a[i * n + k].clone();
            for j in k + 1..n {
                // a_ij <- (a_kk a_ij - a_ik a_kj) / prev, exact division.
                let num = &pivot * &a[i * n + j] - &aik * &a[k * n + j];
                a[i * n + j] = if prev.is_one() { num } else { num / &prev };
            }
            a[i * n + k] = BigInt::zero();
        }
        prev = pivot;
    }
    let det = a[n * n - 1].clone();
    if sign_flip {
        -det
    } else {
        det
    }
}

/// Determinant of a rational matrix: clear denominators row by row, take the
/// integer determinant, divide back.
pub fn rational_determinant(rows: &[Vec<BigRational>]) -> BigRational {
    let n = rows.len();
    let mut scale = BigInt::one();
    let mut int_rows = Vec::with_capacity(n);
    for row in rows {
        let l = row
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        int_rows.push(
            row.iter()
                .map(|x| x.numer() * (&l / x.denom()))
                .collect::<Vec<_>>(),
        );
        scale *= l;
    }
    let det = Matrix::from_rows(int_rows).determinant();
    BigRational::new(det, scale)
}

/// `Some(r)` with `r * r == x` when `x` is a perfect square.
pub fn exact_sqrt(x: &BigInt) -> Option<BigUint> {
    if x.sign() == Sign::Minus {
        return None;
    }
    let u = x.magnitude();
    let r = u.sqrt();
    (&r * &r == *u).then_some(r)
}

/// `Some(r)` with `r^4 == x`.
pub fn exact_fourth_root(x: &BigUint) -> Option<BigUint> {
    let r = x.nth_root(4);
    (r.pow(4) == *x).then_some(r)
}

/// Floating log2 of an arbitrarily large nonnegative integer; `-inf` at 0.
pub fn log2_big(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        let f: f64 = num_traits::ToPrimitive::to_f64(x).expect("fits");
        return f.log2();
    }
    let shift = bits - 64;
    let top: f64 = num_traits::ToPrimitive::to_f64(&(x >> shift)).expect("64 bits");
    top.log2() + shift as f64
}

/// Dense integer polynomial, `coeffs[i]` is the coefficient of `t^i`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn new<I, T>(coeffs: I) -> Poly
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut p = Poly {
            coeffs: coeffs.into_iter().map(Into::into).collect(),
        };
        p.trim();
        p
    }

    pub fn constant(c: impl Into<BigInt>) -> Poly {
        Poly::new([c.into()])
    }

    /// `c * t^k`.
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Poly {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c.into();
        Poly::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..len).map(|i| self.coeff(i) + other.coeff(i)))
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..len).map(|i| self.coeff(i) - other.coeff(i)))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c))
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }
}

/// Determinant of a square matrix of polynomials by cofactor expansion along
/// rows, memoized over the set of columns already used. Only nonzero partial
/// sums are stored, so sparse (banded or circulant) inputs stay cheap.
pub fn poly_determinant(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    assert!(n <= 63, "column masks are u64");
    assert!(m.iter().all(|r| r.len() == n), "matrix must be square");
    let mut states: HashMap<u64, Poly> = HashMap::from([(0, Poly::constant(1))]);
    for row in m {
        let mut next: HashMap<u64, Poly> = HashMap::new();
        for (mask, acc) in &states {
            for (c, entry) in row.iter().enumerate() {
                if entry.is_zero() || mask & (1 << c) != 0 {
                    continue;
                }
                // Inversions added by placing column c after the used ones.
                let above = (mask >> (c + 1)).count_ones();
                let mut term = acc.mul(entry);
                if above % 2 == 1 {
                    term = term.neg();
                }
                let slot = next.entry(mask | (1 << c)).or_default();
                *slot = slot.add(&term);
            }
        }
        next.retain(|_, p| !p.is_zero());
        states = next;
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    states.remove(&full).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().copied()))
    }

    /// Leibniz expansion, independent of elimination.
    fn leibniz(a: &Matrix) -> BigInt {
        fn rec(a: &Matrix, row: usize, used: &mut Vec<bool>, sign: i64) -> BigInt {
            let n = a.order();
            if row == n {
                return BigInt::from(sign);
            }
            let mut total = BigInt::zero();
            for c in 0..n {
                if used[c] || a[(row, c)].is_zero() {
                    continue;
                }
                let inv = (c + 1..n).filter(|&j| used[j]).count();
                let s = if inv % 2 == 1 { -sign } else { sign };
                used[c] = true;
                total += &a[(row, c)] * rec(a, row + 1, used, s);
                used[c] = false;
            }
            total
        }
        rec(a, 0, &mut vec![false; a.order()], 1)
    }

    #[test]
    fn small_determinants() {
        assert_eq!(Matrix::identity(5).determinant(), BigInt::one());
        assert_eq!(Matrix::zeros(0).determinant(), BigInt::one());
        assert_eq!(m(&[&[0, 1], &[-1, 0]]).determinant(), BigInt::one());
        assert_eq!(m(&[&[2, 3], &[4, 5]]).determinant(), BigInt::from(-2));
        // needs a pivot swap at the first step
        let a = m(&[&[0, 2, 1], &[1, 0, 0], &[0, 1, 3]]);
        assert_eq!(a.determinant(), leibniz(&a));
        assert_eq!(a.determinant(), BigInt::from(-5));
        let singular = m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert!(singular.determinant().is_zero());
    }

    #[test]
    fn bareiss_matches_leibniz_on_fixed_grid() {
        // deterministic pseudo-random 6x6 matrices with small entries
        let mut state = 12345u64;
        for _ in 0..40 {
            let rows: Vec<Vec<i64>> = (0..6)
                .map(|_| {
                    (0..6)
                        .map(|_| {
                            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                            ((state >> 33) % 7) as i64 - 3
                        })
                        .collect()
                })
                .collect();
            let a = Matrix::from_rows(rows);
            assert_eq!(a.determinant(), leibniz(&a));
        }
    }

    #[test]
    fn rational_det_clears_denominators() {
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        let rows = vec![vec![r(1, 2), r(1, 3)], vec![r(1, 4), r(1, 5)]];
        // 1/10 - 1/12 = 1/60
        assert_eq!(rational_determinant(&rows), r(1, 60));
    }

    #[test]
    fn roots() {
        assert_eq!(exact_sqrt(&BigInt::from(1296)), Some(BigUint::from(36u32)));
        assert_eq!(exact_sqrt(&BigInt::from(35)), None);
        assert_eq!(exact_sqrt(&BigInt::from(-4)), None);
        assert_eq!(exact_fourth_root(&BigUint::from(81u32)), Some(BigUint::from(3u32)));
        assert_eq!(exact_fourth_root(&BigUint::from(80u32)), None);
    }

    #[test]
    fn log2_of_large_values() {
        assert_eq!(log2_big(&BigUint::from(8u32)), 3.0);
        assert_eq!(log2_big(&BigUint::zero()), f64::NEG_INFINITY);
        let big = BigUint::one() << 5000u32;
        assert!((log2_big(&big) - 5000.0).abs() < 1e-9);
    }

    #[test]
    fn poly_det_agrees_with_evaluation() {
        // [[1, t], [-t, 1]] has determinant 1 + t^2
        let t = Poly::monomial(1, 1);
        let one = Poly::constant(1);
        let mat = vec![vec![one.clone(), t.clone()], vec![t.neg(), one.clone()]];
        assert_eq!(poly_determinant(&mat), Poly::new([1, 0, 1]));

        // 3x3 dense: evaluate at several integers and compare with Bareiss
        let p = |c: &[i64]| Poly::new(c.iter().copied());
        let mat = vec![
            vec![p(&[1, 2]), p(&[0, 1]), p(&[3])],
            vec![p(&[-1]), p(&[2, 0, 1]), p(&[0, -1])],
            vec![p(&[0, 0, 2]), p(&[1]), p(&[1, 1])],
        ];
        let det = poly_determinant(&mat);
        for x in -3i64..=3 {
            let xb = BigInt::from(x);
            let ev = Matrix::from_rows(mat.iter().map(|r| r.iter().map(|e| e.eval(&xb)).collect::<Vec<_>>()));
            assert_eq!(det.eval(&xb), ev.determinant());
        }
    }
}
