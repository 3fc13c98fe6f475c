//! Dense exact linear algebra over the rationals and over prime fields.
//!
//! Elements do not carry their field; every routine takes the field
//! descriptor explicitly. `Rationals` is a zero-sized marker, `PrimeField`
//! carries its modulus.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Uniform sample: nonzero integers in `[-bound, bound]` over Q, all of F_p
    /// otherwise.
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> Self::Elem;

    fn descriptor(&self) -> FieldKind;
}

/// Serializable description of a coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldKind {
    Rational,
    Prime(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> BigRational {
        self.from_i64(sample_nonzero(rng, bound))
    }
    fn descriptor(&self) -> FieldKind {
        FieldKind::Rational
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// `p` must be prime and below 2^32 so products fit in a `u64`.
    pub fn new(p: u64) -> Self {
        assert!((2..(1 << 32)).contains(&p), "modulus {p} out of range");
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }

    /// Reduce a rational number; `None` when `p` divides the denominator.
    pub fn reduce(&self, q: &BigRational) -> Option<u64> {
        let p = BigInt::from(self.p);
        let den = q.denom().mod_floor_big(&p);
        if den.is_zero() {
            return None;
        }
        let num = q.numer().mod_floor_big(&p).to_u64().unwrap();
        let den = den.to_u64().unwrap();
        Some(num * self.pow(den, self.p - 2) % self.p)
    }
}

trait ModFloor {
    fn mod_floor_big(&self, m: &BigInt) -> BigInt;
}

impl ModFloor for BigInt {
    fn mod_floor_big(&self, m: &BigInt) -> BigInt {
        let r = self % m;
        if r.is_negative() {
            r + m
        } else {
            r
        }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, _bound: i64) -> u64 {
        rng.random_range(0..self.p)
    }
    fn descriptor(&self) -> FieldKind {
        FieldKind::Prime(self.p)
    }
}

/// Uniform over the nonzero integers in `[-bound, bound]`; zero when `bound < 1`.
/// Zero coefficients are excluded because small presentations have so few
/// entries that a single zero already makes a sample degenerate.
pub fn sample_nonzero<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> i64 {
    if bound < 1 {
        return 0;
    }
    let k = rng.random_range(1..=bound);
    if rng.random_bool(0.5) {
        k
    } else {
        -k
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Matrix { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |r, c| {
            self.get(rows[r], cols[c]).clone()
        })
    }

    pub fn from_columns(rows: usize, columns: &[Vec<E>], zero: E) -> Self {
        let mut m = Matrix::filled(rows, columns.len(), zero);
        for (c, col) in columns.iter().enumerate() {
            for (r, v) in col.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn map<T: Clone>(&self, f: impl FnMut(&E) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<T: Clone>(&self, f: impl FnMut(&E) -> Option<T>) -> Option<Matrix<T>> {
        let data: Option<Vec<T>> = self.data.iter().map(f).collect();
        Some(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: data?,
        })
    }
}

pub fn identity<F: Field>(field: &F, n: usize) -> Matrix<F::Elem> {
    Matrix::from_fn(n, n, |r, c| if r == c { field.one() } else { field.zero() })
}

pub fn zeros<F: Field>(field: &F, rows: usize, cols: usize) -> Matrix<F::Elem> {
    Matrix::filled(rows, cols, field.zero())
}

pub fn mat_mul<F: Field>(field: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols, b.rows, "matrix shapes do not compose");
    let mut out = zeros(field, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.get(i, k);
            if field.is_zero(aik) {
                continue;
            }
            for j in 0..b.cols {
                let bkj = b.get(k, j);
                if field.is_zero(bkj) {
                    continue;
                }
                let v = field.add(out.get(i, j), &field.mul(aik, bkj));
                out.set(i, j, v);
            }
        }
    }
    out
}

pub fn mat_vec<F: Field>(field: &F, a: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    assert_eq!(a.cols, v.len());
    (0..a.rows)
        .map(|i| {
            let mut acc = field.zero();
            for (k, x) in v.iter().enumerate() {
                if !field.is_zero(x) {
                    acc = field.add(&acc, &field.mul(a.get(i, k), x));
                }
            }
            acc
        })
        .collect()
}

pub fn mat_add<F: Field>(field: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Matrix::from_fn(a.rows, a.cols, |r, c| field.add(a.get(r, c), b.get(r, c)))
}

pub fn mat_scale<F: Field>(field: &F, a: &Matrix<F::Elem>, s: &F::Elem) -> Matrix<F::Elem> {
    a.map(|x| field.mul(x, s))
}

pub fn is_zero_matrix<F: Field>(field: &F, a: &Matrix<F::Elem>) -> bool {
    a.data.iter().all(|x| field.is_zero(x))
}

/// In-place reduced row echelon form; returns the pivot columns.
pub fn rref<F: Field>(field: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(p) = (row..m.rows).find(|&r| !field.is_zero(m.get(r, col))) else {
            continue;
        };
        if p != row {
            for c in 0..m.cols {
                m.data.swap(p * m.cols + c, row * m.cols + c);
            }
        }
        let inv = field.inv(m.get(row, col)).unwrap();
        for c in col..m.cols {
            let v = field.mul(m.get(row, c), &inv);
            m.set(row, c, v);
        }
        for r in 0..m.rows {
            if r == row || field.is_zero(m.get(r, col)) {
                continue;
            }
            let factor = m.get(r, col).clone();
            for c in col..m.cols {
                if field.is_zero(m.get(row, c)) {
                    continue;
                }
                let v = field.sub(m.get(r, c), &field.mul(&factor, m.get(row, c)));
                m.set(r, c, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    let mut m = m.clone();
    rref(field, &mut m).len()
}

/// Basis of `{x : m x = 0}` as column vectors.
pub fn nullspace<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut r = m.clone();
    let pivots = rref(field, &mut r);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); m.cols];
        v[free] = field.one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = field.neg(r.get(i, free));
        }
        basis.push(v);
    }
    basis
}

/// Basis of the column space, taken from the original pivot columns.
pub fn column_space<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut r = m.clone();
    rref(field, &mut r).into_iter().map(|c| m.column(c)).collect()
}

pub fn inverse<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    if m.rows != m.cols {
        return None;
    }
    let n = m.rows;
    if n == 0 {
        return Some(m.clone());
    }
    let mut aug = Matrix::from_fn(n, 2 * n, |r, c| {
        if c < n {
            m.get(r, c).clone()
        } else if c - n == r {
            field.one()
        } else {
            field.zero()
        }
    });
    let pivots = rref(field, &mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    let cols: Vec<usize> = (n..2 * n).collect();
    let rows: Vec<usize> = (0..n).collect();
    Some(aug.submatrix(&rows, &cols))
}

/// Solve `a x = b` for one particular solution.
pub fn solve<F: Field>(field: &F, a: &Matrix<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    assert_eq!(a.rows, b.len());
    let mut aug = Matrix::from_fn(a.rows, a.cols + 1, |r, c| {
        if c < a.cols {
            a.get(r, c).clone()
        } else {
            b[r].clone()
        }
    });
    let pivots = rref(field, &mut aug);
    if pivots.last() == Some(&a.cols) {
        return None;
    }
    let mut x = vec![field.zero(); a.cols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = aug.get(i, a.cols).clone();
    }
    Some(x)
}

/// Complement of a subspace spanned by `basis` inside `k^dim`, chosen among
/// standard unit vectors. Returns the indices of those unit vectors.
pub fn unit_complement<F: Field>(field: &F, dim: usize, basis: &[Vec<F::Elem>]) -> Vec<usize> {
    // Pivot columns of the row-reduced basis (as rows) are covered by the span.
    let mut m = Matrix::from_fn(basis.len(), dim, |r, c| basis[r][c].clone());
    let pivots = rref(field, &mut m);
    (0..dim).filter(|c| !pivots.contains(c)).collect()
}

/// Integer matrix helpers for small combinatorial matrices (Euler, Coxeter).
pub mod int {
    /// Row-major square integer matrix.
    #[derive(Debug, Clone, PartialEq, Eq)]
    pub struct IntMatrix {
        pub n: usize,
        pub data: Vec<i64>,
    }

    impl IntMatrix {
        pub fn identity(n: usize) -> Self {
            let mut data = vec![0; n * n];
            for i in 0..n {
                data[i * n + i] = 1;
            }
            IntMatrix { n, data }
        }

        pub fn get(&self, r: usize, c: usize) -> i64 {
            self.data[r * self.n + c]
        }

        pub fn set(&mut self, r: usize, c: usize, v: i64) {
            self.data[r * self.n + c] = v;
        }

        pub fn transpose(&self) -> Self {
            let mut t = self.clone();
            for r in 0..self.n {
                for c in 0..self.n {
                    t.set(c, r, self.get(r, c));
                }
            }
            t
        }

        pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
            let n = self.n;
            let mut out = IntMatrix { n, data: vec![0; n * n] };
            for i in 0..n {
                for k in 0..n {
                    let a = self.get(i, k);
                    if a == 0 {
                        continue;
                    }
                    for j in 0..n {
                        out.data[i * n + j] += a * other.get(k, j);
                    }
                }
            }
            out
        }

        pub fn neg(&self) -> IntMatrix {
            IntMatrix {
                n: self.n,
                data: self.data.iter().map(|x| -x).collect(),
            }
        }

        pub fn apply(&self, v: &[i64]) -> Vec<i64> {
            (0..self.n)
                .map(|r| (0..self.n).map(|c| self.get(r, c) * v[c]).sum())
                .collect()
        }

        pub fn rows(&self) -> Vec<Vec<i64>> {
            self.data.chunks(self.n).map(|r| r.to_vec()).collect()
        }

        /// Exact determinant by fraction-free (Bareiss) elimination.
        pub fn det(&self) -> i128 {
            let n = self.n;
            if n == 0 {
                return 1;
            }
            let mut a: Vec<i128> = self.data.iter().map(|&x| x as i128).collect();
            let mut sign = 1;
            let mut prev = 1i128;
            for k in 0..n - 1 {
                if a[k * n + k] == 0 {
                    let Some(swap) = (k + 1..n).find(|&r| a[r * n + k] != 0) else {
                        return 0;
                    };
                    for c in 0..n {
                        a.swap(k * n + c, swap * n + c);
                    }
                    sign = -sign;
                }
                for i in k + 1..n {
                    for j in k + 1..n {
                        a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
                    }
                }
                prev = a[k * n + k];
            }
            sign * a[n * n - 1]
        }

        /// Inverse when it exists over the integers (determinant ±1).
        pub fn unimodular_inverse(&self) -> Option<IntMatrix> {
            let n = self.n;
            // Gauss-Jordan with i128 rationals kept integral by unimodularity
            // is fragile; work over exact rationals instead.
            use num_rational::Ratio;
            let mut aug: Vec<Ratio<i128>> = Vec::with_capacity(2 * n * n);
            for r in 0..n {
                for c in 0..2 * n {
                    let v = if c < n {
                        self.get(r, c) as i128
                    } else if c - n == r {
                        1
                    } else {
                        0
                    };
                    aug.push(Ratio::from_integer(v));
                }
            }
            let w = 2 * n;
            for col in 0..n {
                let p = (col..n).find(|&r| aug[r * w + col] != Ratio::from_integer(0))?;
                for c in 0..w {
                    aug.swap(p * w + c, col * w + c);
                }
                let inv = aug[col * w + col].recip();
                for c in 0..w {
                    aug[col * w + c] *= inv;
                }
                for r in 0..n {
                    if r != col {
                        let f = aug[r * w + col];
                        if f != Ratio::from_integer(0) {
                            for c in 0..w {
                                let t = aug[col * w + c];
                                aug[r * w + c] -= f * t;
                            }
                        }
                    }
                }
            }
            let mut out = IntMatrix::identity(n);
            for r in 0..n {
                for c in 0..n {
                    let v = aug[r * w + n + c];
                    if !v.is_integer() {
                        return None;
                    }
                    out.set(r, c, v.to_integer() as i64);
                }
            }
            Some(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> BigRational {
        Rationals.from_i64(v)
    }

    #[test]
    fn rank_and_nullspace_over_q() {
        let m = Matrix::from_rows(2, 3, vec![q(1), q(2), q(3), q(2), q(4), q(6)]);
        assert_eq!(rank(&Rationals, &m), 1);
        let ns = nullspace(&Rationals, &m);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(mat_vec(&Rationals, &m, v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn inverse_over_fp() {
        let f = PrimeField::new(7);
        let m = Matrix::from_rows(2, 2, vec![1, 2, 3, 4]);
        let inv = inverse(&f, &m).unwrap();
        assert_eq!(mat_mul(&f, &m, &inv), identity(&f, 2));
        let singular = Matrix::from_rows(2, 2, vec![1, 2, 2, 4]);
        assert!(inverse(&f, &singular).is_none());
    }

    #[test]
    fn reduce_rationals_mod_p() {
        let f = PrimeField::new(5);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(f.reduce(&half), Some(3));
        let fifth = BigRational::new(BigInt::from(1), BigInt::from(5));
        assert_eq!(f.reduce(&fifth), None);
        assert_eq!(f.reduce(&q(-1)), Some(4));
    }

    #[test]
    fn solve_and_complement() {
        let m = Matrix::from_rows(2, 2, vec![q(1), q(1), q(0), q(1)]);
        let x = solve(&Rationals, &m, &[q(3), q(1)]).unwrap();
        assert_eq!(x, vec![q(2), q(1)]);
        let comp = unit_complement(&Rationals, 3, &[vec![q(0), q(1), q(1)]]);
        assert_eq!(comp, vec![0, 2]);
    }

    #[test]
    fn int_det_and_inverse() {
        let mut e = int::IntMatrix::identity(3);
        e.set(0, 1, -1);
        e.set(1, 2, -1);
        assert_eq!(e.det(), 1);
        let inv = e.unimodular_inverse().unwrap();
        assert_eq!(e.mul(&inv), int::IntMatrix::identity(3));
    }
}
