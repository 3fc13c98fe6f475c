//! Quiver Grassmannians: point counts over F_p and Euler characteristics.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::decompose::{splits_completely_mod, DecomposeOptions};
use super::{hom_dim, FpRep, QRep};
use crate::error::{Error, Result};
use crate::linalg::{is_prime, mat_vec, rref, Field, Matrix, PrimeField};

/// Primes below this bound form the reduction pool.
pub const PRIME_POOL_LIMIT: u64 = 1000;

/// Number of k-dimensional subspaces of F_q^n.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let overflow = || Error::CapExceeded { cost: u128::MAX, cap: u64::MAX };
    let q = q as u128;
    let mut out: u128 = 1;
    for i in 0..k {
        let num = q.checked_pow((n - i) as u32).ok_or_else(overflow)? - 1;
        let den = q.checked_pow((i + 1) as u32).ok_or_else(overflow)? - 1;
        out = out.checked_mul(num).ok_or_else(overflow)? / den;
    }
    Ok(out)
}

/// A subspace in reduced row echelon form.
#[derive(Debug, Clone)]
struct Subspace {
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    fn contains(&self, f: &PrimeField, v: &[u64]) -> bool {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                for (x, y) in v.iter_mut().zip(row) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }
}

/// All k-dimensional subspaces of F_p^n, one RREF representative each.
fn all_subspaces(f: &PrimeField, n: usize, k: usize) -> Vec<Subspace> {
    let p = f.modulus();
    let mut out = Vec::new();
    let mut pivots = Vec::with_capacity(k);
    fn choose(n: usize, k: usize, start: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == k {
            out.push(acc.clone());
            return;
        }
        for c in start..n {
            acc.push(c);
            choose(n, k, c + 1, acc, out);
            acc.pop();
        }
    }
    let mut pivot_sets = Vec::new();
    choose(n, k, 0, &mut pivots, &mut pivot_sets);
    for piv in pivot_sets {
        // Free slots: (row, col) with col > pivot of that row and col not a pivot.
        let free: Vec<(usize, usize)> = piv
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| ((pc + 1)..n).filter(|c| !piv.contains(c)).map(move |c| (r, c)))
            .collect();
        let total = (p as u128).pow(free.len() as u32);
        let mut counter = vec![0u64; free.len()];
        for _ in 0..total {
            let mut rows = vec![vec![0u64; n]; k];
            for (r, &pc) in piv.iter().enumerate() {
                rows[r][pc] = 1;
            }
            for (&(r, c), &v) in free.iter().zip(&counter) {
                rows[r][c] = v;
            }
            out.push(Subspace { rows, pivots: piv.clone() });
            for digit in counter.iter_mut() {
                *digit += 1;
                if *digit < p {
                    break;
                }
                *digit = 0;
            }
        }
    }
    out
}

fn check_subdimension(m: &[usize], e: &[i64]) -> Result<()> {
    if e.len() != m.len() {
        return Err(Error::DimensionMismatch { expected: m.len(), found: e.len() });
    }
    if e.iter().zip(m).any(|(&x, &d)| x < 0 || x as usize > d) {
        return Err(Error::SubdimensionOutOfRange);
    }
    Ok(())
}

/// Number of F_p-rational points of the quiver Grassmannian Gr_e(M).
///
/// Non-sink vertices are enumerated over echelon representatives in
/// topological order; sinks only need the span of incoming images, after
/// which the count is a Gaussian binomial. `cap` bounds the number of
/// enumerated tuples.
pub fn count_subreps(m: &FpRep, e: &[i64], cap: u64) -> Result<u128> {
    check_subdimension(m.dims(), e)?;
    let f = *m.field();
    let p = f.modulus();
    let q = m.quiver().clone();
    let e: Vec<usize> = e.iter().map(|&x| x as usize).collect();
    let order: Vec<usize> = q
        .topological_order()
        .iter()
        .copied()
        .filter(|&v| !q.is_sink(v))
        .collect();
    let mut cost: u128 = 1;
    for &v in &order {
        cost = cost.saturating_mul(gaussian_binomial(m.dims()[v], e[v], p)?);
    }
    if cost > cap as u128 {
        return Err(Error::CapExceeded { cost, cap });
    }
    let spaces: Vec<Vec<Subspace>> = order
        .iter()
        .map(|&v| all_subspaces(&f, m.dims()[v], e[v]))
        .collect();
    let sinks: Vec<usize> = (0..q.vertex_count()).filter(|&v| q.is_sink(v)).collect();
    let mut chosen: Vec<Option<&Subspace>> = vec![None; q.vertex_count()];
    let mut total: u128 = 0;
    dfs(m, &f, &order, &spaces, &sinks, &e, 0, &mut chosen, &mut total)?;
    Ok(total)
}

#[allow(clippy::too_many_arguments)]
fn dfs<'a>(
    m: &FpRep,
    f: &PrimeField,
    order: &[usize],
    spaces: &'a [Vec<Subspace>],
    sinks: &[usize],
    e: &[usize],
    depth: usize,
    chosen: &mut Vec<Option<&'a Subspace>>,
    total: &mut u128,
) -> Result<()> {
    let q = m.quiver();
    if depth == order.len() {
        let mut prod: u128 = 1;
        for &t in sinks {
            let mut images: Vec<Vec<u64>> = Vec::new();
            for (a, &(s, tt)) in q.arrows().iter().enumerate() {
                if tt != t {
                    continue;
                }
                for u in &chosen[s].expect("sources are non-sinks").rows {
                    images.push(mat_vec(f, m.map(a), u));
                }
            }
            let d = m.dims()[t];
            let w = if images.is_empty() {
                0
            } else {
                let mut mat = Matrix::from_fn(images.len(), d, |r, c| images[r][c]);
                rref(f, &mut mat).len()
            };
            if e[t] < w {
                return Ok(());
            }
            prod = prod.saturating_mul(gaussian_binomial(d - w, e[t] - w, f.modulus())?);
        }
        *total = total.saturating_add(prod);
        return Ok(());
    }
    let v = order[depth];
    'candidates: for cand in &spaces[depth] {
        for (a, &(s, t)) in q.arrows().iter().enumerate() {
            if t != v {
                continue;
            }
            for u in &chosen[s].expect("topological order").rows {
                if !cand.contains(f, &mat_vec(f, m.map(a), u)) {
                    continue 'candidates;
                }
            }
        }
        chosen[v] = Some(cand);
        dfs(m, f, order, spaces, sinks, e, depth + 1, chosen, total)?;
        chosen[v] = None;
    }
    Ok(())
}

/// Point counts of Gr_e(M) and the Euler characteristic recovered from them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrassmannianCount {
    pub e: Vec<i64>,
    /// prime -> number of F_p-points
    pub counts: BTreeMap<u64, u128>,
    /// Counting polynomial, coefficients low to high.
    pub polynomial: Vec<i64>,
    pub euler: i64,
}

/// Which primes count as good reductions.
#[derive(Debug, Clone, Copy)]
enum PrimeFilter {
    /// dim End is preserved.
    EndDim,
    /// The module splits into this many local pieces of equal dimension.
    Splits(usize, DecomposeOptions),
}

/// Computes Euler characteristics of all quiver Grassmannians of one
/// rational representation, reusing its reductions modulo good primes.
pub struct GrassmannianCounter {
    rep: QRep,
    end_dim: usize,
    filter: PrimeFilter,
    cap: u64,
    next_prime: u64,
    good: Vec<FpRep>,
}

impl GrassmannianCounter {
    pub fn new(rep: &QRep, cap: u64) -> Result<Self> {
        Ok(GrassmannianCounter {
            end_dim: hom_dim(rep, rep)?,
            rep: rep.clone(),
            filter: PrimeFilter::EndDim,
            cap,
            next_prime: 2,
            good: Vec::new(),
        })
    }

    /// Restrict to primes modulo which `rep` splits into `pieces` absolutely
    /// indecomposable summands.
    pub fn splitting(rep: &QRep, pieces: usize, cap: u64, opts: DecomposeOptions) -> Result<Self> {
        let mut c = Self::new(rep, cap)?;
        if pieces > 1 {
            c.filter = PrimeFilter::Splits(pieces, opts);
        }
        Ok(c)
    }

    fn ensure_primes(&mut self, k: usize) -> Result<()> {
        while self.good.len() < k {
            let p = self.next_prime;
            if p >= PRIME_POOL_LIMIT {
                return Err(Error::BadReduction);
            }
            self.next_prime += 1;
            if !is_prime(p) {
                continue;
            }
            let Some(red) = self.rep.reduce_mod(p) else {
                continue;
            };
            if hom_dim(&red, &red)? != self.end_dim {
                continue;
            }
            if let PrimeFilter::Splits(r, opts) = self.filter {
                if !splits_completely_mod(&self.rep, r, p, opts)? {
                    continue;
                }
            }
            self.good.push(red);
        }
        Ok(())
    }

    pub fn euler(&mut self, e: &[i64]) -> Result<GrassmannianCount> {
        check_subdimension(self.rep.dims(), e)?;
        let degree: i64 = e
            .iter()
            .zip(self.rep.dims())
            .map(|(&x, &d)| x * (d as i64 - x))
            .sum();
        let needed = degree as usize + 2;
        self.ensure_primes(needed)?;
        let mut counts = BTreeMap::new();
        let mut points = Vec::with_capacity(needed);
        for red in &self.good[..needed] {
            let p = red.field().modulus();
            let c = count_subreps(red, e, self.cap)?;
            counts.insert(p, c);
            points.push((p, c));
        }
        let poly = interpolate(&points[..needed - 1]).ok_or(Error::NotPolynomialCount)?;
        let (xp, xc) = points[needed - 1];
        if eval_int(&poly, &BigInt::from(xp)) != BigInt::from(xc) {
            return Err(Error::NotPolynomialCount);
        }
        let euler = eval_int(&poly, &BigInt::one())
            .to_i64()
            .ok_or(Error::NotPolynomialCount)?;
        let polynomial = poly
            .iter()
            .map(|c| c.to_i64().ok_or(Error::NotPolynomialCount))
            .collect::<Result<Vec<_>>>()?;
        Ok(GrassmannianCount { e: e.to_vec(), counts, polynomial, euler })
    }
}

/// Euler characteristic of Gr_e(M) for a rational representation.
pub fn grassmannian_euler(m: &QRep, e: &[i64], cap: u64) -> Result<GrassmannianCount> {
    GrassmannianCounter::new(m, cap)?.euler(e)
}

/// Lagrange interpolation through the points; `None` unless every
/// coefficient is an integer.
fn interpolate(points: &[(u64, u128)]) -> Option<Vec<BigInt>> {
    let n = points.len();
    let mut coeffs = vec![BigRational::zero(); n];
    for (i, &(xi, yi)) in points.iter().enumerate() {
        // basis polynomial prod_{j != i} (x - xj) / (xi - xj)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, &(xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let xj = BigRational::from_integer(BigInt::from(xj));
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * &xj;
            }
            basis = next;
            denom *= BigRational::from_integer(BigInt::from(xi)) - xj;
        }
        let scale = BigRational::from_integer(BigInt::from(yi)) / denom;
        for (c, b) in coeffs.iter_mut().zip(&basis) {
            *c += b * &scale;
        }
    }
    coeffs
        .into_iter()
        .map(|c| c.is_integer().then(|| c.to_integer()))
        .collect()
}

fn eval_int(poly: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in poly.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::linalg::Rationals;
    use crate::quiver::Quiver;
    use crate::rep::Representation;

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(4, 2, 2).unwrap(), 35);
        assert_eq!(gaussian_binomial(3, 1, 3).unwrap(), 13);
        assert_eq!(gaussian_binomial(5, 0, 7).unwrap(), 1);
        assert_eq!(gaussian_binomial(2, 3, 7).unwrap(), 0);
        let f = PrimeField::new(3);
        assert_eq!(all_subspaces(&f, 4, 2).len(), gaussian_binomial(4, 2, 3).unwrap() as usize);
    }

    #[test]
    fn a2_projective_subreps() {
        let q = Arc::new(Quiver::linear_a(2));
        let p1 = Representation::projective(q.clone(), Rationals, 0);
        let red = p1.reduce_mod(5).unwrap();
        assert_eq!(count_subreps(&red, &[0, 1], 100).unwrap(), 1);
        assert_eq!(count_subreps(&red, &[1, 0], 100).unwrap(), 0);
        assert_eq!(count_subreps(&red, &[1, 1], 100).unwrap(), 1);
        assert_eq!(count_subreps(&red, &[2, 1], 100), Err(Error::SubdimensionOutOfRange));
        let g = grassmannian_euler(&p1, &[0, 1], 100).unwrap();
        assert_eq!(g.euler, 1);
    }

    #[test]
    fn kronecker_regular_point_count() {
        // P1 has dimension (1,2); its (0,1)-dimensional subrepresentations
        // form a projective line.
        let k = Arc::new(Quiver::kronecker());
        let p1 = Representation::projective(k, Rationals, 0);
        let g = grassmannian_euler(&p1, &[0, 1], 1000).unwrap();
        assert_eq!(g.polynomial, vec![1, 1]);
        assert_eq!(g.euler, 2);
    }

    #[test]
    fn cap_is_enforced() {
        let q = Arc::new(Quiver::linear_a(2));
        let m = Representation::random(q, PrimeField::new(7), &[4, 4], 1, 0);
        assert!(matches!(count_subreps(&m, &[2, 2], 10), Err(Error::CapExceeded { .. })));
    }
}
