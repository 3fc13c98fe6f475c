//! Generic morphisms between projectives, their cones, generic characters
//! and generic decompositions.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cache::cache_key;
use crate::characters::ClusterObject;
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::linalg::{column_space, mat_vec, rank, sample_nonzero, solve, unit_complement, zeros, Field, Matrix, Rationals};
use crate::quiver::Quiver;
use crate::rep::{
    decompose_geometric, ext_dim, indecomposable_for_root, projective_basis, QRep, Representation,
};

/// A pair of projective multiplicity vectors: the map goes P(gamma1) -> P(gamma0).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProjDecomposition {
    pub gamma0: Vec<i64>,
    pub gamma1: Vec<i64>,
}

impl ProjDecomposition {
    pub fn index(&self) -> Vec<i64> {
        self.gamma0.iter().zip(&self.gamma1).map(|(a, b)| a - b).collect()
    }

    /// Adds `pad` to both sides.
    pub fn padded(&self, pad: &[i64]) -> Self {
        ProjDecomposition {
            gamma0: self.gamma0.iter().zip(pad).map(|(a, p)| a + p).collect(),
            gamma1: self.gamma1.iter().zip(pad).map(|(a, p)| a + p).collect(),
        }
    }
}

/// Positive and negative parts of an index.
pub fn min_proj_decomposition(gamma: &[i64]) -> ProjDecomposition {
    ProjDecomposition {
        gamma0: gamma.iter().map(|&g| g.max(0)).collect(),
        gamma1: gamma.iter().map(|&g| (-g).max(0)).collect(),
    }
}

/// A morphism P(gamma1) -> P(gamma0) given by path coefficients. The block
/// for (i, j) holds, for each copy r of P_i in the target and copy c of P_j
/// in the source, one coefficient per path from i to j.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveMap {
    quiver: Arc<Quiver>,
    gamma1: Vec<usize>,
    gamma0: Vec<usize>,
    blocks: BTreeMap<(usize, usize), Vec<BigRational>>,
}

fn to_counts(v: &[i64]) -> Vec<usize> {
    v.iter().map(|&x| x.max(0) as usize).collect()
}

impl ProjectiveMap {
    pub fn zero(quiver: Arc<Quiver>, dec: &ProjDecomposition) -> Self {
        ProjectiveMap {
            quiver,
            gamma1: to_counts(&dec.gamma1),
            gamma0: to_counts(&dec.gamma0),
            blocks: BTreeMap::new(),
        }
    }

    /// The identity of P(gamma).
    pub fn identity(quiver: Arc<Quiver>, gamma: &[i64]) -> Self {
        let g = to_counts(gamma);
        let mut blocks = BTreeMap::new();
        for (i, &m) in g.iter().enumerate() {
            if m == 0 {
                continue;
            }
            // The only path from i to i is the trivial one.
            let block = (0..m * m)
                .map(|k| BigRational::from_integer(BigInt::from(i64::from(k / m == k % m))))
                .collect();
            blocks.insert((i, i), block);
        }
        ProjectiveMap { quiver, gamma1: g.clone(), gamma0: g, blocks }
    }

    pub fn gamma0(&self) -> &[usize] {
        &self.gamma0
    }

    pub fn gamma1(&self) -> &[usize] {
        &self.gamma1
    }

    /// Coefficient of `path_index` in block (i, j) at (target copy r, source copy c).
    pub fn coefficient(&self, i: usize, j: usize, r: usize, c: usize, path_index: usize) -> BigRational {
        let np = self.quiver.paths(i, j).len();
        self.blocks
            .get(&(i, j))
            .map(|b| b[(r * self.gamma1[j] + c) * np + path_index].clone())
            .unwrap_or_default()
    }

    /// Vertexwise matrices P(gamma1)_v -> P(gamma0)_v, with the bases of
    /// [`Representation::projective_sum`].
    pub fn evaluate(&self) -> Vec<Matrix<BigRational>> {
        let q = &self.quiver;
        let src = projective_basis(q, &self.gamma1);
        let dst = projective_basis(q, &self.gamma0);
        let index: Vec<HashMap<BasisLabel, usize>> = dst
            .iter()
            .map(|b| b.iter().cloned().enumerate().map(|(k, x)| (x, k)).collect())
            .collect();
        (0..q.vertex_count())
            .map(|v| {
                let mut m = zeros(&Rationals, dst[v].len(), src[v].len());
                for (col, (j, c, p)) in src[v].iter().enumerate() {
                    for (&(i, jj), block) in &self.blocks {
                        if jj != *j {
                            continue;
                        }
                        let paths = q.paths(i, jj);
                        for r in 0..self.gamma0[i] {
                            for (pi, qpath) in paths.iter().enumerate() {
                                let coef = &block[(r * self.gamma1[jj] + c) * paths.len() + pi];
                                if *coef == BigRational::default() {
                                    continue;
                                }
                                let mut full = qpath.clone();
                                full.extend_from_slice(p);
                                let row = index[v][&(i, r, full)];
                                let cur = m.get(row, col).clone();
                                m.set(row, col, cur + coef);
                            }
                        }
                    }
                }
                m
            })
            .collect()
    }
}

/// (source vertex, copy, path) labelling a basis vector of a projective.
type BasisLabel = (usize, usize, Vec<usize>);

/// Each path coefficient uniform over the nonzero integers in [-bound, bound].
pub fn sample_generic_proj_map(quiver: &Arc<Quiver>, dec: &ProjDecomposition, seed: u64, bound: i64) -> ProjectiveMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f = ProjectiveMap::zero(quiver.clone(), dec);
    let n = quiver.vertex_count();
    for i in 0..n {
        for j in 0..n {
            let np = quiver.paths(i, j).len();
            let size = f.gamma0[i] * f.gamma1[j] * np;
            if size == 0 {
                continue;
            }
            let block = (0..size)
                .map(|_| BigRational::from_integer(BigInt::from(sample_nonzero(&mut rng, bound))))
                .collect();
            f.blocks.insert((i, j), block);
        }
    }
    f
}

/// Coker(f) (+) Ker(f)[1], the kernel being identified as a sum of
/// projectives through its dimension vector.
pub fn cone_of_proj_map(f: &ProjectiveMap) -> Result<ClusterObject> {
    let q = f.quiver.clone();
    let n = q.vertex_count();
    let target = Representation::projective_sum(q.clone(), Rationals, &f.gamma0);
    let source_dims: Vec<usize> = projective_basis(&q, &f.gamma1).iter().map(Vec::len).collect();
    let maps = f.evaluate();
    let field = Rationals;

    let images: Vec<Vec<Vec<BigRational>>> = maps.iter().map(|m| column_space(&field, m)).collect();
    let complements: Vec<Vec<usize>> = (0..n)
        .map(|v| unit_complement(&field, target.dims()[v], &images[v]))
        .collect();
    let coker_dims: Vec<usize> = complements.iter().map(Vec::len).collect();
    let mut coker_maps = Vec::new();
    for (a, &(s, t)) in q.arrows().iter().enumerate() {
        // Express the image of each complement vector at s in the basis
        // (complement units at t, image basis at t) and keep the first part.
        let dt = target.dims()[t];
        let mut cols: Vec<Vec<BigRational>> = complements[t]
            .iter()
            .map(|&u| {
                let mut e = vec![field.zero(); dt];
                e[u] = field.one();
                e
            })
            .collect();
        cols.extend(images[t].iter().cloned());
        let basis = Matrix::from_columns(dt, &cols, field.zero());
        let mut m = zeros(&field, coker_dims[t], coker_dims[s]);
        for (c, &u) in complements[s].iter().enumerate() {
            let mut e = vec![field.zero(); target.dims()[s]];
            e[u] = field.one();
            let w = mat_vec(&field, target.map(a), &e);
            let x = solve(&field, &basis, &w).expect("complement and image span the space");
            for (r, value) in x.iter().take(coker_dims[t]).enumerate() {
                m.set(r, c, value.clone());
            }
        }
        coker_maps.push(m);
    }
    let coker = Representation::new(q.clone(), Rationals, coker_dims, coker_maps)?;

    let kernel_dims: Vec<i64> = (0..n)
        .map(|v| (source_dims[v] - rank(&field, &maps[v])) as i64)
        .collect();
    let mult = q.euler_data().et.apply(&kernel_dims);
    if mult.iter().any(|&m| m < 0) {
        return Err(Error::KernelNotProjectiveShape(kernel_dims));
    }
    ClusterObject::new(coker, mult)
}

/// Both sides of the multiplicativity identity for one alpha.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MultiplicativityReport {
    pub alpha: Vec<i64>,
    pub betas: Vec<Vec<i64>>,
    pub gamma: Vec<i64>,
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilityReport {
    pub gamma: Vec<i64>,
    pub pad: Vec<i64>,
    pub minimal: LaurentPoly,
    pub padded: LaurentPoly,
    pub equal: bool,
}

/// Generic cones for one index together with their common character.
#[derive(Debug, Clone)]
pub struct CertifiedCones {
    pub cones: Vec<ClusterObject>,
    pub character: LaurentPoly,
}

/// Dimension vectors of the summands over an algebraic closure.
fn geometric_summand_dims(m: &QRep, engine: &Engine, stream: u64) -> Result<Vec<Vec<i64>>> {
    let pieces = decompose_geometric(m, engine.decompose_options(stream))?;
    let mut out = Vec::new();
    for p in pieces {
        let r = p.conjugates as i64;
        let d: Vec<i64> = p.rep.dim_vector().iter().map(|x| x / r).collect();
        for _ in 0..r {
            out.push(d.clone());
        }
    }
    out.sort();
    Ok(out)
}

impl Engine {
    /// Samples generic maps for `dec` with `certify_runs` seeds per round
    /// until all their cone characters agree.
    pub fn certified_cones(&self, dec: &ProjDecomposition) -> Result<CertifiedCones> {
        let n = self.quiver.vertex_count();
        if dec.gamma0.len() != n || dec.gamma1.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: dec.gamma0.len().min(dec.gamma1.len()) });
        }
        let key: Vec<i64> = dec.gamma0.iter().chain(&dec.gamma1).copied().collect();
        if let Some(c) = self.cones.lock().expect("cone lock").get(&key) {
            return Ok(c.clone());
        }
        let runs = self.settings.certify_runs as u64;
        for round in 0..self.settings.retries as u64 {
            let mut cones = Vec::new();
            let mut chars: Vec<LaurentPoly> = Vec::new();
            for k in 0..runs {
                let seed = self.seed_for(&key, round * runs + k);
                let f = sample_generic_proj_map(&self.quiver, dec, seed, self.settings.sample_bound);
                let cone = cone_of_proj_map(&f)?;
                chars.push(self.cc_object(&cone)?);
                cones.push(cone);
            }
            if chars.windows(2).all(|w| w[0] == w[1]) {
                let certified = CertifiedCones { cones, character: chars.swap_remove(0) };
                self.cones.lock().expect("cone lock").insert(key, certified.clone());
                return Ok(certified);
            }
        }
        Err(Error::GenericityUncertified)
    }

    /// The generic character X(gamma), certified and cached.
    pub fn generic_character(&self, gamma: &[i64]) -> Result<LaurentPoly> {
        self.quiver.check_len(gamma)?;
        if let Some(p) = self.characters.lock().expect("character lock").get(gamma) {
            return Ok(p.clone());
        }
        if let Some(p) = self.cache.as_ref().and_then(|c| c.get(&self.quiver, gamma)) {
            self.characters.lock().expect("character lock").insert(gamma.to_vec(), p.clone());
            return Ok(p);
        }
        let value = self.certified_cones(&min_proj_decomposition(gamma))?.character;
        self.characters
            .lock()
            .expect("character lock")
            .insert(gamma.to_vec(), value.clone());
        if let Some(c) = &self.cache {
            c.insert(&self.quiver, gamma, &value);
        }
        Ok(value)
    }

    /// Whether X(gamma) is already known without computing it.
    pub fn is_cached(&self, gamma: &[i64]) -> bool {
        self.characters.lock().expect("character lock").contains_key(gamma)
            || self.cache.as_ref().is_some_and(|c| c.get(&self.quiver, gamma).is_some())
    }

    pub fn cache_key(&self, gamma: &[i64]) -> String {
        cache_key(&self.quiver, gamma)
    }

    /// Generic decomposition of a dimension vector: the root search for
    /// Dynkin quivers, the randomized oracle otherwise.
    pub fn generic_decomposition(&self, d: &[i64]) -> Result<Vec<Vec<i64>>> {
        self.quiver.check_len(d)?;
        if d.iter().any(|&x| x < 0) {
            return Err(Error::SubdimensionOutOfRange);
        }
        if self.quiver.is_dynkin() {
            self.generic_decomposition_dynkin(d)
        } else {
            self.generic_decomposition_randomized(d)
        }
    }

    /// Exhaustive search over multisets of positive roots summing to `d`
    /// with pairwise vanishing Ext in both directions.
    pub fn generic_decomposition_dynkin(&self, d: &[i64]) -> Result<Vec<Vec<i64>>> {
        let roots: Vec<Vec<i64>> = self
            .quiver
            .positive_roots()?
            .into_iter()
            .filter(|r| r.iter().zip(d).all(|(a, b)| a <= b))
            .collect();
        let reps: Vec<QRep> = roots
            .iter()
            .map(|r| indecomposable_for_root(&self.quiver, r))
            .collect::<Result<_>>()?;
        let k = roots.len();
        let mut ext = vec![vec![0usize; k]; k];
        for a in 0..k {
            for b in 0..k {
                ext[a][b] = ext_dim(&reps[a], &reps[b])?;
            }
        }
        let mut chosen = Vec::new();
        let mut rest = d.to_vec();
        if search_roots(&roots, &ext, 0, &mut rest, &mut chosen) {
            let mut out: Vec<Vec<i64>> = chosen.iter().map(|&i| roots[i].clone()).collect();
            out.sort();
            Ok(out)
        } else {
            Err(Error::NoValidDecomposition)
        }
    }

    /// Summand dimension vectors of random representations of dimension
    /// `d`, certified by agreement across seeds.
    pub fn generic_decomposition_randomized(&self, d: &[i64]) -> Result<Vec<Vec<i64>>> {
        let dims: Vec<usize> = d.iter().map(|&x| x as usize).collect();
        let runs = self.settings.certify_runs as u64;
        for round in 0..self.settings.retries as u64 {
            let mut results = Vec::new();
            for k in 0..runs {
                let seed = self.seed_for(d, 0xDEC0_0000 + round * runs + k);
                let rep = Representation::random(self.quiver.clone(), Rationals, &dims, seed, self.settings.sample_bound);
                results.push(geometric_summand_dims(&rep, self, seed)?);
            }
            if results.windows(2).all(|w| w[0] == w[1]) {
                return Ok(results.swap_remove(0));
            }
        }
        Err(Error::GenericityUncertified)
    }

    /// (betas, gamma) with alpha = sum betas - E^{-t} gamma, read off from
    /// the certified generic cones of index E^t alpha.
    pub fn virtual_generic_decomposition(&self, alpha: &[i64]) -> Result<(Vec<Vec<i64>>, Vec<i64>)> {
        self.quiver.check_len(alpha)?;
        let index = self.euler.et.apply(alpha);
        let certified = self.certified_cones(&min_proj_decomposition(&index))?;
        let mut found: Option<(Vec<Vec<i64>>, Vec<i64>)> = None;
        for (k, cone) in certified.cones.iter().enumerate() {
            let betas = geometric_summand_dims(&cone.module, self, k as u64)?;
            let gamma = cone.shifted.clone();
            let candidate = (betas, gamma);
            match &found {
                None => found = Some(candidate),
                Some(prev) if *prev != candidate => return Err(Error::GenericityUncertified),
                _ => {}
            }
        }
        let (betas, gamma) = found.expect("at least one certified cone");
        let proj = self.euler.et_inv.apply(&gamma);
        let n = alpha.len();
        let mut sum = vec![0i64; n];
        for b in &betas {
            for i in 0..n {
                sum[i] += b[i];
            }
        }
        let rebuilt: Vec<i64> = (0..n).map(|i| sum[i] - proj[i]).collect();
        if rebuilt != alpha {
            return Err(Error::KernelNotProjectiveShape(rebuilt));
        }
        let disjoint = betas
            .iter()
            .all(|b| b.iter().zip(&gamma).all(|(x, g)| *x == 0 || *g == 0));
        if !disjoint {
            return Err(Error::SupportNotDisjoint);
        }
        Ok((betas, gamma))
    }

    /// X(E^t alpha) against X(E^t beta_1) ... X(E^t beta_k) X(-gamma).
    pub fn check_multiplicativity(&self, alpha: &[i64]) -> Result<MultiplicativityReport> {
        let lhs = self.generic_character(&self.euler.et.apply(alpha))?;
        let (betas, gamma) = self.virtual_generic_decomposition(alpha)?;
        let n = alpha.len();
        let mut rhs = LaurentPoly::one(n);
        for b in &betas {
            rhs = rhs.checked_mul(&self.generic_character(&self.euler.et.apply(b))?)?;
        }
        let neg: Vec<i64> = gamma.iter().map(|g| -g).collect();
        rhs = rhs.checked_mul(&self.generic_character(&neg)?)?;
        Ok(MultiplicativityReport {
            alpha: alpha.to_vec(),
            betas,
            gamma,
            equal: lhs == rhs,
            lhs,
            rhs,
        })
    }

    /// Character of a generic map in Hom(P(gamma1 + pad), P(gamma0 + pad))
    /// against X(gamma).
    pub fn stability_check(&self, gamma: &[i64], pad: &[i64]) -> Result<StabilityReport> {
        self.quiver.check_len(gamma)?;
        self.quiver.check_len(pad)?;
        if pad.iter().any(|&p| p < 0) {
            return Err(Error::SubdimensionOutOfRange);
        }
        let minimal = self.generic_character(gamma)?;
        let padded = self
            .certified_cones(&min_proj_decomposition(gamma).padded(pad))?
            .character;
        Ok(StabilityReport {
            gamma: gamma.to_vec(),
            pad: pad.to_vec(),
            equal: minimal == padded,
            minimal,
            padded,
        })
    }
}

fn search_roots(
    roots: &[Vec<i64>],
    ext: &[Vec<usize>],
    start: usize,
    rest: &mut [i64],
    chosen: &mut Vec<usize>,
) -> bool {
    if rest.iter().all(|&x| x == 0) {
        return true;
    }
    for r in start..roots.len() {
        if roots[r].iter().zip(rest.iter()).any(|(a, b)| a > b) {
            continue;
        }
        if chosen.iter().any(|&c| ext[c][r] != 0 || ext[r][c] != 0) || ext[r][r] != 0 {
            continue;
        }
        for (x, a) in rest.iter_mut().zip(&roots[r]) {
            *x -= a;
        }
        chosen.push(r);
        if search_roots(roots, ext, r, rest, chosen) {
            return true;
        }
        chosen.pop();
        for (x, a) in rest.iter_mut().zip(&roots[r]) {
            *x += a;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::index_of;
    use crate::engine::Settings;
    use crate::rep::{decompose, is_isomorphic, DecomposeOptions};

    fn engine(q: Quiver) -> Engine {
        Engine::new(q, Settings::default())
    }

    #[test]
    fn min_decomposition_examples() {
        let d = min_proj_decomposition(&[2, -3, 0]);
        assert_eq!((d.gamma0.clone(), d.gamma1.clone()), (vec![2, 0, 0], vec![0, 3, 0]));
        assert_eq!(d.index(), vec![2, -3, 0]);
        let z = min_proj_decomposition(&[0, 0]);
        assert_eq!((z.gamma0, z.gamma1), (vec![0, 0], vec![0, 0]));
        let d = min_proj_decomposition(&[-1, 1]);
        assert_eq!((d.gamma0, d.gamma1), (vec![0, 1], vec![1, 0]));
    }

    #[test]
    fn sampling_and_cones() {
        let q = Arc::new(Quiver::linear_a(3));
        let dec = ProjDecomposition { gamma0: vec![1, 0, 0], gamma1: vec![0, 0, 1] };
        let f = sample_generic_proj_map(&q, &dec, 3, 10);
        assert_eq!(f, sample_generic_proj_map(&q, &dec, 3, 10));
        assert_eq!(q.paths(0, 2).len(), 1);
        let ev = f.evaluate();
        assert_eq!((ev[2].rows(), ev[2].cols()), (1, 1));
        assert_eq!(*ev[2].get(0, 0), f.coefficient(0, 2, 0, 0, 0));

        let id = ProjectiveMap::identity(q.clone(), &[1, 2, 0]);
        assert!(cone_of_proj_map(&id).unwrap().is_zero());
        let zero = ProjectiveMap::zero(q.clone(), &ProjDecomposition { gamma0: vec![1, 0, 0], gamma1: vec![0, 1, 0] });
        let c = cone_of_proj_map(&zero).unwrap();
        assert_eq!(c.module.dims(), &[1, 1, 1]);
        assert_eq!(c.shifted, vec![0, 1, 0]);

        // Generic P3 -> P1 has cokernel I2 and no kernel.
        let mut found = false;
        for seed in 0..5 {
            let f = sample_generic_proj_map(&q, &dec, seed, 10);
            if f.coefficient(0, 2, 0, 0, 0) == BigRational::default() {
                continue;
            }
            let cone = cone_of_proj_map(&f).unwrap();
            let i2 = Representation::injective(q.clone(), Rationals, 1);
            assert!(is_isomorphic(&cone.module, &i2, 1).unwrap());
            assert_eq!(cone.shifted, vec![0, 0, 0]);
            assert_eq!(index_of(&q.euler_data(), &cone), dec.index());
            found = true;
        }
        assert!(found);
    }

    #[test]
    fn generic_character_examples() {
        let e = engine(Quiver::linear_a(2));
        assert_eq!(e.generic_character(&[0, -1]).unwrap().to_string(), "x2");
        assert_eq!(e.generic_character(&[-1, 0]).unwrap().to_string(), "x1");
        assert_eq!(e.generic_character(&[1, -1]).unwrap().to_string(), "(1+x2)/x1");
        assert_eq!(e.generic_character(&[1, 0]).unwrap(), "(x1+1+x2)/(x1*x2)".parse().unwrap());
        assert!(e.is_cached(&[1, 0]));
    }

    #[test]
    fn generic_decomposition_examples() {
        let e = engine(Quiver::linear_a(2));
        assert_eq!(e.generic_decomposition(&[2, 1]).unwrap(), vec![vec![1, 0], vec![1, 1]]);
        assert_eq!(e.generic_decomposition(&[0, 0]).unwrap(), Vec::<Vec<i64>>::new());
        assert_eq!(e.generic_decomposition(&[1, 1]).unwrap(), vec![vec![1, 1]]);
        assert_eq!(e.generic_decomposition_randomized(&[2, 1]).unwrap(), vec![vec![1, 0], vec![1, 1]]);
        let k = engine(Quiver::kronecker());
        assert_eq!(k.generic_decomposition(&[2, 2]).unwrap(), vec![vec![1, 1], vec![1, 1]]);
        assert_eq!(k.generic_decomposition(&[1, 2]).unwrap(), vec![vec![1, 2]]);
    }

    #[test]
    fn virtual_decomposition_and_multiplicativity() {
        let e = engine(Quiver::linear_a(2));
        assert_eq!(e.virtual_generic_decomposition(&[-1, 0]).unwrap(), (vec![vec![0, 1]], vec![1, 0]));
        // alpha = -E^{-t} alpha_2 = -(0,1)
        assert_eq!(e.virtual_generic_decomposition(&[0, -1]).unwrap(), (vec![], vec![0, 1]));
        let r = e.check_multiplicativity(&[-1, 0]).unwrap();
        assert!(r.equal);
        assert_eq!(r.rhs, "(x1+x1^2)/x2".parse().unwrap());
        assert!(e.check_multiplicativity(&[0, 0]).unwrap().equal);
        let r = e.check_multiplicativity(&[2, 1]).unwrap();
        assert_eq!(r.betas, vec![vec![1, 0], vec![1, 1]]);
        assert!(r.equal);
    }

    #[test]
    fn stability_examples() {
        let e = engine(Quiver::linear_a(2));
        let r = e.stability_check(&[1, -1], &[1, 0]).unwrap();
        assert!(r.equal);
        assert_eq!(r.padded.to_string(), "(1+x2)/x1");
        assert!(e.stability_check(&[1, -1], &[0, 0]).unwrap().equal);
        let e3 = engine(Quiver::linear_a(3));
        assert!(e3.stability_check(&[1, 0, -1], &[0, 1, 0]).unwrap().equal);
    }

    #[test]
    fn random_a2_module_decomposes_generically() {
        let q = Arc::new(Quiver::linear_a(2));
        let m = Representation::random(q, Rationals, &[2, 1], 5, 10);
        let dims: Vec<_> = decompose(&m, DecomposeOptions::default())
            .unwrap()
            .iter()
            .map(|x| x.dims().to_vec())
            .collect();
        assert_eq!(dims, vec![vec![1, 0], vec![1, 1]]);
    }
}
