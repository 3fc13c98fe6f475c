//! Krull-Schmidt decomposition by Fitting splits of endomorphisms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::hom::{hom_space, Morphism};
use super::{derive_seed, Representation};
use crate::error::{Error, Result};
use crate::linalg::{
    column_space, inverse, is_zero_matrix, mat_mul, nullspace, rank, Field, Matrix, PrimeField,
    Rationals,
};

#[derive(Debug, Clone, Copy)]
pub struct DecomposeOptions {
    pub seed: u64,
    /// Rounds of random endomorphisms tried before giving up.
    pub attempts: usize,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions {
            seed: 0xDEC0_4405,
            attempts: 24,
        }
    }
}

/// Fields over which eigenvalues of small matrices can be found exactly.
pub trait SplitField: Field {
    /// All eigenvalues lying in the field itself (without multiplicity).
    fn eigenvalues(&self, m: &Matrix<Self::Elem>) -> Vec<Self::Elem>;

    /// Trace-form arguments need characteristic 0 or larger than the dimension.
    fn check_large_enough(&self, total_dim: usize) -> Result<()>;
}

impl SplitField for Rationals {
    fn eigenvalues(&self, m: &Matrix<BigRational>) -> Vec<BigRational> {
        let n = m.rows();
        if n == 0 {
            return Vec::new();
        }
        let mut l = BigInt::one();
        for x in m.entries() {
            l = l.lcm(x.denom());
        }
        let a: Vec<Vec<BigInt>> = (0..n)
            .map(|r| m.row(r).iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect())
            .collect();
        let gersh = a
            .iter()
            .map(|row| row.iter().map(|x| x.abs()).sum::<BigInt>())
            .max()
            .unwrap_or_default();
        integer_roots(&charpoly_int(&a), &gersh)
            .into_iter()
            .map(|r| BigRational::new(r, l.clone()))
            .collect()
    }

    fn check_large_enough(&self, _total_dim: usize) -> Result<()> {
        Ok(())
    }
}

impl SplitField for PrimeField {
    fn eigenvalues(&self, m: &Matrix<u64>) -> Vec<u64> {
        let p = self.modulus();
        let poly = charpoly_mod(self, m);
        if p <= 1 << 20 {
            (0..p).filter(|&x| eval_mod(self, &poly, x) == 0).collect()
        } else {
            roots_cantor_zassenhaus(self, &poly)
        }
    }

    fn check_large_enough(&self, total_dim: usize) -> Result<()> {
        if (self.modulus() as usize) <= total_dim {
            return Err(Error::FieldTooSmall(self.modulus()));
        }
        Ok(())
    }
}

/// Characteristic polynomial det(xI - A) of an integer matrix, coefficients
/// low to high, by Faddeev-LeVerrier.
fn charpoly_int(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = a.len();
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    let mut mk: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = BigInt::zero();
                for t in 0..n {
                    if !a[i][t].is_zero() && !mk[t][j].is_zero() {
                        s += &a[i][t] * &mk[t][j];
                    }
                }
                if i == j {
                    s += &c[n - k + 1];
                }
                next[i][j] = s;
            }
        }
        mk = next;
        let mut tr = BigInt::zero();
        for i in 0..n {
            for t in 0..n {
                tr += &a[i][t] * &mk[t][i];
            }
        }
        c[n - k] = -(tr / BigInt::from(k));
    }
    c
}

const FILTER_PRIME: u128 = (1 << 61) - 1;

fn integer_roots(poly: &[BigInt], gersh: &BigInt) -> Vec<BigInt> {
    let shift = poly.iter().position(|c| !c.is_zero()).unwrap_or(0);
    let mut roots = Vec::new();
    if shift > 0 {
        roots.push(BigInt::zero());
    }
    let f = &poly[shift..];
    if f.len() <= 1 {
        return roots;
    }
    let c0 = f[0].abs();
    let bound = if &c0 < gersh { c0.clone() } else { gersh.clone() };
    let is_root = |x: &BigInt| {
        let mut acc = BigInt::zero();
        for c in f.iter().rev() {
            acc = acc * x + c;
        }
        acc.is_zero()
    };
    if let Some(b) = bound.to_i64().filter(|&b| b <= 1 << 22) {
        let reduced: Vec<u128> = f
            .iter()
            .map(|c| {
                let r = c % BigInt::from(FILTER_PRIME);
                let r = if r.is_negative() { r + BigInt::from(FILTER_PRIME) } else { r };
                r.to_u128().expect("reduced coefficient fits")
            })
            .collect();
        for x in -b..=b {
            if x == 0 {
                continue;
            }
            let xm = (x.rem_euclid(FILTER_PRIME as i64)) as u128;
            let mut acc: u128 = 0;
            for c in reduced.iter().rev() {
                acc = (acc * xm % FILTER_PRIME + c) % FILTER_PRIME;
            }
            if acc == 0 && is_root(&BigInt::from(x)) {
                roots.push(BigInt::from(x));
            }
        }
    } else if let Some(c) = c0.to_u64().filter(|&c| c <= 1_000_000_000_000) {
        let mut d = 1u64;
        while d * d <= c {
            if c % d == 0 {
                for cand in [d, c / d] {
                    for s in [BigInt::from(cand), -BigInt::from(cand)] {
                        if is_root(&s) && !roots.contains(&s) {
                            roots.push(s);
                        }
                    }
                }
            }
            d += 1;
        }
    }
    roots
}

fn charpoly_mod(f: &PrimeField, m: &Matrix<u64>) -> Vec<u64> {
    let n = m.rows();
    let mut c = vec![0u64; n + 1];
    c[n] = 1;
    let mut mk = Matrix::filled(n, n, 0u64);
    for k in 1..=n {
        let mut next = mat_mul(f, m, &mk);
        for i in 0..n {
            let v = f.add(next.get(i, i), &c[n - k + 1]);
            next.set(i, i, v);
        }
        mk = next;
        let am = mat_mul(f, m, &mk);
        let mut tr = 0;
        for i in 0..n {
            tr = f.add(&tr, am.get(i, i));
        }
        let kinv = f.inv(&f.from_i64(k as i64)).expect("k is invertible when p > n");
        c[n - k] = f.neg(&f.mul(&tr, &kinv));
    }
    c
}

fn eval_mod(f: &PrimeField, poly: &[u64], x: u64) -> u64 {
    let mut acc = 0;
    for c in poly.iter().rev() {
        acc = f.add(&f.mul(&acc, &x), c);
    }
    acc
}

mod fp_poly {
    //! Dense polynomials over F_p, coefficients low to high, trimmed.
    use crate::linalg::{Field, PrimeField};

    pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn sub(f: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| f.sub(a.get(i).unwrap_or(&0), b.get(i).unwrap_or(&0)))
                .collect(),
        )
    }

    pub fn mul(f: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(x, y));
            }
        }
        trim(out)
    }

    /// (quotient, remainder); `b` must be nonzero.
    pub fn divrem(f: &PrimeField, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
        let mut r = trim(a.to_vec());
        let db = b.len() - 1;
        let lead_inv = f.inv(&b[db]).expect("nonzero leading coefficient");
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let mut q = vec![0; r.len() - db];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = f.mul(r.last().unwrap(), &lead_inv);
            q[shift] = c;
            for (i, y) in b.iter().enumerate() {
                r[shift + i] = f.sub(&r[shift + i], &f.mul(&c, y));
            }
            r = trim(r);
        }
        (trim(q), r)
    }

    pub fn gcd(f: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let (_, r) = divrem(f, &a, &b);
            a = b;
            b = r;
        }
        if let Some(&l) = a.last() {
            let inv = f.inv(&l).unwrap();
            a = a.iter().map(|x| f.mul(x, &inv)).collect();
        }
        a
    }

    /// base^e mod m.
    pub fn powmod(f: &PrimeField, base: &[u64], mut e: u64, m: &[u64]) -> Vec<u64> {
        let mut result = vec![1u64];
        let mut b = divrem(f, base, m).1;
        while e > 0 {
            if e & 1 == 1 {
                result = divrem(f, &mul(f, &result, &b), m).1;
            }
            b = divrem(f, &mul(f, &b, &b), m).1;
            e >>= 1;
        }
        divrem(f, &result, m).1
    }
}

/// Roots in F_p via gcd with x^p - x and equal-degree splitting.
fn roots_cantor_zassenhaus(f: &PrimeField, poly: &[u64]) -> Vec<u64> {
    let p = f.modulus();
    let poly = fp_poly::trim(poly.to_vec());
    if poly.len() <= 1 {
        return Vec::new();
    }
    let xp = fp_poly::powmod(f, &[0, 1], p, &poly);
    let g = fp_poly::gcd(f, &poly, &fp_poly::sub(f, &xp, &[0, 1]));
    let mut rng = ChaCha8Rng::seed_from_u64(p);
    let mut out = Vec::new();
    let mut stack = vec![g];
    while let Some(g) = stack.pop() {
        match g.len() {
            0 | 1 => {}
            2 => out.push(f.neg(&f.mul(&g[0], &f.inv(&g[1]).unwrap()))),
            _ => loop {
                let a = rng.random_range(0..p);
                let h = fp_poly::powmod(f, &[a, 1], (p - 1) / 2, &g);
                let d = fp_poly::gcd(f, &g, &fp_poly::sub(f, &h, &[1]));
                if d.len() > 1 && d.len() < g.len() {
                    let (q, _) = fp_poly::divrem(f, &g, &d);
                    stack.push(d);
                    stack.push(q);
                    break;
                }
            },
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// dim End(M) / rad End(M), read off from the rank of the trace form
/// (u, v) -> sum_v tr(u_v v_v) on End(M).
pub fn radical_codimension<F: SplitField>(m: &Representation<F>) -> Result<usize> {
    m.field().check_large_enough(m.total_dim())?;
    let basis = hom_space(m, m)?;
    Ok(trace_form_rank(m.field(), &basis))
}

fn trace_form_rank<F: Field>(field: &F, basis: &[Morphism<F::Elem>]) -> usize {
    let k = basis.len();
    let gram = Matrix::from_fn(k, k, |a, b| {
        let mut acc = field.zero();
        for (x, y) in basis[a].components.iter().zip(&basis[b].components) {
            let n = x.rows();
            for i in 0..n {
                for j in 0..n {
                    acc = field.add(&acc, &field.mul(x.get(i, j), y.get(j, i)));
                }
            }
        }
        acc
    });
    rank(field, &gram)
}

fn combine<F: Field>(field: &F, basis: &[Morphism<F::Elem>], coeffs: &[F::Elem]) -> Morphism<F::Elem> {
    let comps = basis[0]
        .components
        .iter()
        .enumerate()
        .map(|(v, c0)| {
            Matrix::from_fn(c0.rows(), c0.cols(), |r, c| {
                let mut acc = field.zero();
                for (b, k) in basis.iter().zip(coeffs) {
                    if !field.is_zero(k) {
                        acc = field.add(&acc, &field.mul(k, b.components[v].get(r, c)));
                    }
                }
                acc
            })
        })
        .collect();
    Morphism { components: comps }
}

/// Splits M = ker psi^N (+) im psi^N when both parts are nonzero.
fn fitting_split<F: Field>(
    m: &Representation<F>,
    psi: &Morphism<F::Elem>,
) -> Option<(Representation<F>, Representation<F>)> {
    let field = m.field();
    let mut kernels = Vec::new();
    let mut images = Vec::new();
    for (v, &d) in m.dims.iter().enumerate() {
        let mut pw = psi.components[v].clone();
        for _ in 1..d {
            pw = mat_mul(field, &pw, &psi.components[v]);
        }
        kernels.push(nullspace(field, &pw));
        images.push(column_space(field, &pw));
    }
    let kdim: usize = kernels.iter().map(Vec::len).sum();
    if kdim == 0 || kdim == m.total_dim() {
        return None;
    }
    let bases: Vec<Matrix<F::Elem>> = m
        .dims
        .iter()
        .enumerate()
        .map(|(v, &d)| {
            let cols: Vec<Vec<F::Elem>> = kernels[v].iter().chain(&images[v]).cloned().collect();
            Matrix::from_columns(d, &cols, field.zero())
        })
        .collect();
    let new = m.change_basis(&bases);
    let kr: Vec<_> = kernels.iter().map(|k| 0..k.len()).collect();
    let ir: Vec<_> = kernels
        .iter()
        .zip(&m.dims)
        .map(|(k, &d)| k.len()..d)
        .collect();
    // Both parts are subrepresentations, so off-diagonal blocks vanish.
    for (a, &(s, t)) in m.quiver().arrows().iter().enumerate() {
        let rows: Vec<usize> = kr[t].clone().collect();
        let cols: Vec<usize> = ir[s].clone().collect();
        let rows2: Vec<usize> = ir[t].clone().collect();
        let cols2: Vec<usize> = kr[s].clone().collect();
        if !is_zero_matrix(field, &new.maps[a].submatrix(&rows, &cols))
            || !is_zero_matrix(field, &new.maps[a].submatrix(&rows2, &cols2))
        {
            return None;
        }
    }
    Some((new.block(&kr), new.block(&ir)))
}

fn scaled<F: Field>(field: &F, phi: &Morphism<F::Elem>, lambda: &F::Elem) -> Morphism<F::Elem> {
    Morphism {
        components: phi
            .components
            .iter()
            .map(|c| {
                let mut c = c.clone();
                for i in 0..c.rows() {
                    let v = field.sub(c.get(i, i), lambda);
                    c.set(i, i, v);
                }
                c
            })
            .collect(),
    }
}

enum SplitOutcome<F: Field> {
    Split(Representation<F>, Representation<F>),
    Local,
    /// No split found although End/rad has the given dimension > 1.
    Stuck(usize),
}

fn try_split<F: SplitField>(m: &Representation<F>, rng: &mut ChaCha8Rng, attempts: usize) -> Result<SplitOutcome<F>> {
    let field = m.field();
    if m.total_dim() <= 1 {
        return Ok(SplitOutcome::Local);
    }
    let basis = hom_space(m, m)?;
    if basis.len() == 1 {
        return Ok(SplitOutcome::Local);
    }
    let r = trace_form_rank(field, &basis);
    if r == 1 {
        return Ok(SplitOutcome::Local);
    }
    let k = basis.len();
    for _ in 0..attempts {
        let mut candidates = Vec::new();
        let coeffs: Vec<F::Elem> = (0..k).map(|_| field.sample(rng, 3)).collect();
        candidates.push(combine(field, &basis, &coeffs));
        // Endomorphisms killing a random vector at one vertex: these have a
        // nontrivial kernel, which splits isotypic blocks.
        for (v, &d) in m.dims.iter().enumerate() {
            if d == 0 {
                continue;
            }
            let w: Vec<F::Elem> = (0..d).map(|_| field.sample(rng, 3)).collect();
            let cols: Vec<Vec<F::Elem>> = basis
                .iter()
                .map(|b| crate::linalg::mat_vec(field, &b.components[v], &w))
                .collect();
            let sys = Matrix::from_columns(d, &cols, field.zero());
            let ann = nullspace(field, &sys);
            if ann.is_empty() {
                continue;
            }
            let mut c = vec![field.zero(); k];
            for a in &ann {
                let s = field.sample(rng, 3);
                for (ci, ai) in c.iter_mut().zip(a) {
                    *ci = field.add(ci, &field.mul(&s, ai));
                }
            }
            candidates.push(combine(field, &basis, &c));
        }
        for phi in &candidates {
            let mut lambdas: Vec<F::Elem> = Vec::new();
            for comp in &phi.components {
                for l in field.eigenvalues(comp) {
                    if !lambdas.contains(&l) {
                        lambdas.push(l);
                    }
                }
            }
            for l in &lambdas {
                if let Some((a, b)) = fitting_split(m, &scaled(field, phi, l)) {
                    return Ok(SplitOutcome::Split(a, b));
                }
            }
        }
    }
    Ok(SplitOutcome::Stuck(r))
}

fn sort_summands<F: Field>(parts: &mut [Representation<F>]) {
    parts.sort_by(|a, b| a.dims().cmp(b.dims()));
}

/// Indecomposable direct summands of M, certified by the trace-form test
/// (each summand has a local endomorphism ring). Sorted by dimension vector.
pub fn decompose<F: SplitField>(m: &Representation<F>, opts: DecomposeOptions) -> Result<Vec<Representation<F>>> {
    m.field().check_large_enough(m.total_dim())?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut out = Vec::new();
    let mut stack = vec![m.clone()];
    while let Some(x) = stack.pop() {
        if x.is_zero() {
            continue;
        }
        match try_split(&x, &mut rng, opts.attempts)? {
            SplitOutcome::Split(a, b) => {
                stack.push(a);
                stack.push(b);
            }
            SplitOutcome::Local => out.push(x),
            SplitOutcome::Stuck(_) => return Err(Error::DecompositionUncertified),
        }
    }
    sort_summands(&mut out);
    Ok(out)
}

/// A rational indecomposable together with the number of absolutely
/// indecomposable Galois-conjugate summands it breaks into over an algebraic
/// closure (1 when it is absolutely indecomposable).
#[derive(Debug, Clone, PartialEq)]
pub struct RationalPiece {
    pub rep: Representation<Rationals>,
    pub conjugates: usize,
}

/// Like [`decompose`], but accepts summands whose endomorphism ring modulo
/// its radical is a number field of degree r > 1. Such a summand is accepted
/// once a prime is found modulo which it splits into r local pieces of equal
/// dimension vectors.
pub fn decompose_geometric(m: &Representation<Rationals>, opts: DecomposeOptions) -> Result<Vec<RationalPiece>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut out = Vec::new();
    let mut stack = vec![m.clone()];
    while let Some(x) = stack.pop() {
        if x.is_zero() {
            continue;
        }
        match try_split(&x, &mut rng, opts.attempts)? {
            SplitOutcome::Split(a, b) => {
                stack.push(a);
                stack.push(b);
            }
            SplitOutcome::Local => out.push(RationalPiece { rep: x, conjugates: 1 }),
            SplitOutcome::Stuck(r) => {
                if split_prime(&x, r, opts)?.is_none() {
                    return Err(Error::DecompositionUncertified);
                }
                out.push(RationalPiece { rep: x, conjugates: r });
            }
        }
    }
    out.sort_by(|a, b| a.rep.dims().cmp(b.rep.dims()));
    Ok(out)
}

/// True when M mod p decomposes into exactly `r` local summands with equal
/// dimension vectors.
pub(crate) fn splits_completely_mod(
    m: &Representation<Rationals>,
    r: usize,
    p: u64,
    opts: DecomposeOptions,
) -> Result<bool> {
    if (p as usize) <= m.total_dim() {
        return Ok(false);
    }
    let Some(red) = m.reduce_mod(p) else {
        return Ok(false);
    };
    match decompose(&red, DecomposeOptions { seed: derive_seed(opts.seed, p), ..opts }) {
        Ok(parts) => Ok(parts.len() == r && parts.windows(2).all(|w| w[0].dims() == w[1].dims())),
        Err(Error::DecompositionUncertified) => Ok(false),
        Err(e) => Err(e),
    }
}

fn split_prime(m: &Representation<Rationals>, r: usize, opts: DecomposeOptions) -> Result<Option<u64>> {
    for p in (2..super::PRIME_POOL_LIMIT).filter(|&p| crate::linalg::is_prime(p)) {
        if splits_completely_mod(m, r, p, opts)? {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// Isomorphism test: a random element of Hom(A, B) is invertible at every
/// vertex. Reliable for indecomposables; a `false` is wrong with
/// probability at most about 3^-tries otherwise.
pub fn is_isomorphic<F: Field>(a: &Representation<F>, b: &Representation<F>, seed: u64) -> Result<bool> {
    a.check_compatible(b)?;
    if a.dims() != b.dims() {
        return Ok(false);
    }
    if a.is_zero() {
        return Ok(true);
    }
    let field = a.field();
    let basis = hom_space(a, b)?;
    if basis.is_empty() {
        return Ok(false);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..6 {
        let coeffs: Vec<F::Elem> = (0..basis.len()).map(|_| field.sample(&mut rng, 7)).collect();
        let f = combine(field, &basis, &coeffs);
        if f.components.iter().all(|c| inverse(field, c).is_some()) {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::quiver::Quiver;
    use crate::rep::hom::hom_dim;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn integer_eigenvalues() {
        let m = Matrix::from_rows(2, 2, vec![q(2), q(1), q(0), q(-3)]);
        let mut ev = Rationals.eigenvalues(&m);
        ev.sort();
        assert_eq!(ev, vec![q(-3), q(2)]);
        let rot = Matrix::from_rows(2, 2, vec![q(0), q(-1), q(1), q(0)]);
        assert!(Rationals.eigenvalues(&rot).is_empty());
        let half = Matrix::from_rows(1, 1, vec![BigRational::new(1.into(), 2.into())]);
        assert_eq!(Rationals.eigenvalues(&half), vec![BigRational::new(1.into(), 2.into())]);
    }

    #[test]
    fn prime_field_roots() {
        let f = PrimeField::new(1_000_003);
        // (x - 5)(x - 7)(x^2 + 1): 1_000_003 = 3 mod 4, so x^2 + 1 has no roots.
        let m = Matrix::from_rows(
            4,
            4,
            vec![5, 0, 0, 0, 0, 7, 0, 0, 0, 0, 0, f.neg(&1), 0, 0, 1, 0],
        );
        assert_eq!(f.eigenvalues(&m), vec![5, 7]);
        let small = PrimeField::new(13);
        let m = Matrix::from_rows(2, 2, vec![0, 12, 1, 0]);
        // x^2 + 1 over F_13 has roots 5 and 8.
        assert_eq!(small.eigenvalues(&m), vec![5, 8]);
    }

    #[test]
    fn decompose_projective_sum() {
        let qv = Arc::new(Quiver::linear_a(3));
        let p = Representation::projective_sum(qv.clone(), Rationals, &[1, 2, 1]);
        let rnd = Representation::random(qv.clone(), Rationals, &[3, 3, 3], 4, 10);
        // Unitriangular changes of basis are always invertible.
        let bases: Vec<_> = (0..3)
            .map(|v| {
                let d = p.dims()[v];
                Matrix::from_fn(d, d, |r, c| match r.cmp(&c) {
                    std::cmp::Ordering::Equal => q(1),
                    std::cmp::Ordering::Greater => q((3 * r + 5 * c + v) as i64 % 7 - 3),
                    std::cmp::Ordering::Less => q(0),
                })
            })
            .collect();
        let scrambled = p.change_basis(&bases);
        let parts = decompose(&scrambled, DecomposeOptions::default()).unwrap();
        let dims: Vec<_> = parts.iter().map(|x| x.dims().to_vec()).collect();
        assert_eq!(dims, vec![vec![0, 0, 1], vec![0, 1, 1], vec![0, 1, 1], vec![1, 1, 1]]);
        for x in &parts {
            assert_eq!(hom_dim(x, x).unwrap(), 1);
        }
        let parts = decompose(&rnd, DecomposeOptions::default()).unwrap();
        assert_eq!(parts.iter().map(|x| x.total_dim()).sum::<usize>(), 9);
    }

    #[test]
    fn kronecker_non_split_regular() {
        // Pencil with eigenvalues +-sqrt(2): indecomposable over Q, two
        // conjugate regular summands over the algebraic closure.
        let k = Arc::new(Quiver::kronecker());
        let a = Matrix::from_rows(2, 2, vec![q(1), q(0), q(0), q(1)]);
        let b = Matrix::from_rows(2, 2, vec![q(0), q(2), q(1), q(0)]);
        let m = Representation::new(k, Rationals, vec![2, 2], vec![a, b]).unwrap();
        assert_eq!(radical_codimension(&m).unwrap(), 2);
        assert_eq!(decompose(&m, DecomposeOptions::default()), Err(Error::DecompositionUncertified));
        let pieces = decompose_geometric(&m, DecomposeOptions::default()).unwrap();
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].conjugates, 2);
    }

    #[test]
    fn isomorphism_checks() {
        let qv = Arc::new(Quiver::linear_a(2));
        let p1 = Representation::projective(qv.clone(), Rationals, 0);
        let r = Representation::new(
            qv.clone(),
            Rationals,
            vec![1, 1],
            vec![Matrix::from_rows(1, 1, vec![q(5)])],
        )
        .unwrap();
        assert!(is_isomorphic(&p1, &r, 1).unwrap());
        let s = Representation::random(qv.clone(), Rationals, &[1, 1], 0, 0);
        assert!(!is_isomorphic(&p1, &s, 1).unwrap());
        let too_small = Representation::random(qv, PrimeField::new(2), &[2, 1], 0, 0);
        assert_eq!(decompose(&too_small, DecomposeOptions::default()), Err(Error::FieldTooSmall(2)));
    }
}
