//! Quiver representations with exact matrices.

mod decompose;
mod grassmannian;
mod hom;

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use decompose::{
    decompose, decompose_geometric, is_isomorphic, radical_codimension, DecomposeOptions,
    RationalPiece, SplitField,
};
pub use grassmannian::{
    count_subreps, gaussian_binomial, grassmannian_euler, GrassmannianCount, GrassmannianCounter,
    PRIME_POOL_LIMIT,
};
pub use hom::{ext_dim, hom_dim, hom_space, is_morphism, Morphism};

use crate::error::{Error, Result};
use crate::linalg::{
    identity, inverse, is_prime, mat_mul, zeros, Field, FieldKind, Matrix, PrimeField, Rationals,
};
use crate::quiver::{Quiver, QuiverSpec};

/// A representation: one vector space per vertex (given by its dimension)
/// and one matrix of shape `dims[target] x dims[source]` per arrow.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation<F: Field> {
    quiver: Arc<Quiver>,
    field: F,
    dims: Vec<usize>,
    maps: Vec<Matrix<F::Elem>>,
}

pub type QRep = Representation<Rationals>;
pub type FpRep = Representation<PrimeField>;

impl<F: Field> Representation<F> {
    pub fn new(
        quiver: Arc<Quiver>,
        field: F,
        dims: Vec<usize>,
        maps: Vec<Matrix<F::Elem>>,
    ) -> Result<Self> {
        if dims.len() != quiver.vertex_count() {
            return Err(Error::DimensionMismatch {
                expected: quiver.vertex_count(),
                found: dims.len(),
            });
        }
        if maps.len() != quiver.arrows().len() {
            return Err(Error::MalformedRepresentation(format!(
                "{} matrices for {} arrows",
                maps.len(),
                quiver.arrows().len()
            )));
        }
        for (k, (&(s, t), m)) in quiver.arrows().iter().zip(&maps).enumerate() {
            if m.rows() != dims[t] || m.cols() != dims[s] {
                return Err(Error::MalformedRepresentation(format!(
                    "arrow {} has a {}x{} matrix, expected {}x{}",
                    k + 1,
                    m.rows(),
                    m.cols(),
                    dims[t],
                    dims[s]
                )));
            }
        }
        Ok(Representation {
            quiver,
            field,
            dims,
            maps,
        })
    }

    pub fn zero(quiver: Arc<Quiver>, field: F) -> Self {
        let n = quiver.vertex_count();
        Self::zero_with_dims(quiver, field, vec![0; n])
    }

    fn zero_with_dims(quiver: Arc<Quiver>, field: F, dims: Vec<usize>) -> Self {
        let maps = quiver
            .arrows()
            .iter()
            .map(|&(s, t)| zeros(&field, dims[t], dims[s]))
            .collect();
        Representation {
            quiver,
            field,
            dims,
            maps,
        }
    }

    /// Uniformly random matrices; see [`Field::sample`] for the entry law.
    pub fn random(quiver: Arc<Quiver>, field: F, dims: &[usize], seed: u64, bound: i64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let maps = quiver
            .arrows()
            .iter()
            .map(|&(s, t)| Matrix::from_fn(dims[t], dims[s], |_, _| field.sample(&mut rng, bound)))
            .collect();
        Representation {
            quiver,
            field,
            dims: dims.to_vec(),
            maps,
        }
    }

    /// The simple representation at vertex `i` (0-based).
    pub fn simple(quiver: Arc<Quiver>, field: F, i: usize) -> Self {
        let mut dims = vec![0; quiver.vertex_count()];
        dims[i] = 1;
        Self::zero_with_dims(quiver, field, dims)
    }

    /// Direct sum of indecomposable projectives, `gamma[i]` copies of P_i,
    /// with basis at vertex v ordered by (i, copy, path from i to v).
    pub fn projective_sum(quiver: Arc<Quiver>, field: F, gamma: &[usize]) -> Self {
        let n = quiver.vertex_count();
        let basis = projective_basis(&quiver, gamma);
        let dims: Vec<usize> = (0..n).map(|v| basis[v].len()).collect();
        let maps = quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(idx, &(s, t))| {
                let mut m = zeros(&field, dims[t], dims[s]);
                for (c, &(i, copy, ref path)) in basis[s].iter().enumerate() {
                    let mut ext = path.clone();
                    ext.push(idx);
                    let r = basis[t]
                        .iter()
                        .position(|(i2, c2, p2)| *i2 == i && *c2 == copy && *p2 == ext)
                        .expect("path extension stays in the projective");
                    m.set(r, c, field.one());
                }
                m
            })
            .collect();
        Representation {
            quiver,
            field,
            dims,
            maps,
        }
    }

    pub fn projective(quiver: Arc<Quiver>, field: F, i: usize) -> Self {
        let mut gamma = vec![0; quiver.vertex_count()];
        gamma[i] = 1;
        Self::projective_sum(quiver, field, &gamma)
    }

    /// The indecomposable injective I_i: dual of the right projective; basis at
    /// v is the set of paths v -> i, arrows act by removing their first arrow.
    pub fn injective(quiver: Arc<Quiver>, field: F, i: usize) -> Self {
        let n = quiver.vertex_count();
        let dims: Vec<usize> = (0..n).map(|v| quiver.paths(v, i).len()).collect();
        let maps = quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(idx, &(s, t))| {
                let mut m = zeros(&field, dims[t], dims[s]);
                for (c, path) in quiver.paths(s, i).iter().enumerate() {
                    if path.first() == Some(&idx) {
                        let rest = &path[1..];
                        let r = quiver.path_index(t, i, rest).expect("suffix is a path");
                        m.set(r, c, field.one());
                    }
                }
                m
            })
            .collect();
        Representation {
            quiver,
            field,
            dims,
            maps,
        }
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_vector(&self) -> Vec<i64> {
        self.dims.iter().map(|&d| d as i64).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn maps(&self) -> &[Matrix<F::Elem>] {
        &self.maps
    }

    pub fn map(&self, arrow: usize) -> &Matrix<F::Elem> {
        &self.maps[arrow]
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let f = &self.field;
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| {
                Matrix::from_fn(a.rows() + b.rows(), a.cols() + b.cols(), |r, c| {
                    if r < a.rows() && c < a.cols() {
                        a.get(r, c).clone()
                    } else if r >= a.rows() && c >= a.cols() {
                        b.get(r - a.rows(), c - a.cols()).clone()
                    } else {
                        f.zero()
                    }
                })
            })
            .collect();
        Ok(Representation {
            quiver: self.quiver.clone(),
            field: self.field.clone(),
            dims,
            maps,
        })
    }

    pub fn direct_sum_all<'a>(quiver: Arc<Quiver>, field: F, parts: impl IntoIterator<Item = &'a Self>) -> Result<Self>
    where
        F: 'a,
    {
        let mut acc = Self::zero(quiver, field);
        for p in parts {
            acc = acc.direct_sum(p)?;
        }
        Ok(acc)
    }

    /// Change basis vertexwise: the new basis at v is given by the columns of
    /// `bases[v]` (must be invertible).
    pub fn change_basis(&self, bases: &[Matrix<F::Elem>]) -> Self {
        let f = &self.field;
        let invs: Vec<_> = bases
            .iter()
            .map(|b| inverse(f, b).expect("change of basis must be invertible"))
            .collect();
        let maps = self
            .quiver
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(&(s, t), m)| mat_mul(f, &mat_mul(f, &invs[t], m), &bases[s]))
            .collect();
        Representation {
            quiver: self.quiver.clone(),
            field: self.field.clone(),
            dims: self.dims.clone(),
            maps,
        }
    }

    /// Sub-block given by index ranges per vertex (the caller guarantees
    /// that the block is a direct summand in the current basis).
    pub(crate) fn block(&self, ranges: &[std::ops::Range<usize>]) -> Self {
        let dims: Vec<usize> = ranges.iter().map(|r| r.len()).collect();
        let maps = self
            .quiver
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(&(s, t), m)| {
                let rows: Vec<usize> = ranges[t].clone().collect();
                let cols: Vec<usize> = ranges[s].clone().collect();
                m.submatrix(&rows, &cols)
            })
            .collect();
        Representation {
            quiver: self.quiver.clone(),
            field: self.field.clone(),
            dims,
            maps,
        }
    }

    pub(crate) fn check_compatible<G: Field>(&self, other: &Representation<G>) -> Result<()> {
        if self.quiver != other.quiver && *self.quiver != *other.quiver {
            return Err(Error::QuiverMismatch);
        }
        if self.field.descriptor() != other.field.descriptor() {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn identity_endomorphism(&self) -> Morphism<F::Elem> {
        Morphism {
            components: self.dims.iter().map(|&d| identity(&self.field, d)).collect(),
        }
    }
}

/// Basis labels (source vertex, copy, path) of P(gamma) at each vertex.
pub(crate) fn projective_basis(quiver: &Quiver, gamma: &[usize]) -> Vec<Vec<(usize, usize, Vec<usize>)>> {
    let n = quiver.vertex_count();
    (0..n)
        .map(|v| {
            let mut b = Vec::new();
            for (i, &g) in gamma.iter().enumerate() {
                for copy in 0..g {
                    for p in quiver.paths(i, v) {
                        b.push((i, copy, p.clone()));
                    }
                }
            }
            b
        })
        .collect()
}

impl QRep {
    /// Reduce modulo p; `None` if p divides a denominator.
    pub fn reduce_mod(&self, p: u64) -> Option<FpRep> {
        let fp = PrimeField::new(p);
        let maps: Option<Vec<_>> = self.maps.iter().map(|m| m.try_map(|x| fp.reduce(x))).collect();
        Some(Representation {
            quiver: self.quiver.clone(),
            field: fp,
            dims: self.dims.clone(),
            maps: maps?,
        })
    }

    pub fn has_integer_entries(&self) -> bool {
        self.maps
            .iter()
            .all(|m| m.entries().iter().all(|x| x.is_integer()))
    }
}

impl FpRep {
    /// Lift to the integers with symmetric representatives in (-p/2, p/2].
    pub fn lift_to_rationals(&self) -> QRep {
        let p = self.field.modulus() as i64;
        let maps = self
            .maps
            .iter()
            .map(|m| {
                m.map(|&x| {
                    let x = x as i64;
                    let v = if x > p / 2 { x - p } else { x };
                    BigRational::from_integer(BigInt::from(v))
                })
            })
            .collect();
        Representation {
            quiver: self.quiver.clone(),
            field: Rationals,
            dims: self.dims.clone(),
            maps,
        }
    }
}

/// A representation over either supported field, as read from JSON.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyRep {
    Rational(QRep),
    Prime(FpRep),
}

impl AnyRep {
    pub fn dims(&self) -> &[usize] {
        match self {
            AnyRep::Rational(r) => r.dims(),
            AnyRep::Prime(r) => r.dims(),
        }
    }

    /// Rational form; prime-field entries are lifted to symmetric integers.
    pub fn into_rational(self) -> QRep {
        match self {
            AnyRep::Rational(r) => r,
            AnyRep::Prime(r) => r.lift_to_rationals(),
        }
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let raw: RepJson =
            serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let quiver = Arc::new(Quiver::from_spec(&raw.quiver)?);
        let field = match &raw.field {
            Value::String(s) if s == "Q" => FieldKind::Rational,
            Value::Object(o) => {
                let p = o
                    .get("p")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| Error::Parse("field object needs integer `p`".into()))?;
                if !is_prime(p) || p >= 1 << 32 {
                    return Err(Error::Parse(format!("{p} is not a supported prime")));
                }
                FieldKind::Prime(p)
            }
            other => return Err(Error::Parse(format!("unknown field {other}"))),
        };
        let arrows = quiver.arrows().to_vec();
        if raw.maps.len() != arrows.len() {
            return Err(Error::MalformedRepresentation(format!(
                "{} matrices for {} arrows",
                raw.maps.len(),
                arrows.len()
            )));
        }
        let mut qmaps = Vec::new();
        for (k, (rows, &(s, t))) in raw.maps.iter().zip(&arrows).enumerate() {
            // A matrix with zero rows carries no column count; trust dims.
            let (nr, nc) = (raw.dims[t], raw.dims[s]);
            if rows.len() != nr || rows.iter().any(|r| r.len() != nc) {
                return Err(Error::MalformedRepresentation(format!(
                    "arrow {} matrix shape does not match dims",
                    k + 1
                )));
            }
            let mut entries = Vec::with_capacity(nr * nc);
            for row in rows {
                for v in row {
                    entries.push(parse_rational(v)?);
                }
            }
            qmaps.push(Matrix::from_rows(nr, nc, entries));
        }
        match field {
            FieldKind::Rational => Ok(AnyRep::Rational(Representation::new(
                quiver, Rationals, raw.dims, qmaps,
            )?)),
            FieldKind::Prime(p) => {
                let fp = PrimeField::new(p);
                let maps = qmaps
                    .iter()
                    .map(|m| m.try_map(|x| fp.reduce(x)))
                    .collect::<Option<Vec<_>>>()
                    .ok_or(Error::BadReduction)?;
                Ok(AnyRep::Prime(Representation::new(quiver, fp, raw.dims, maps)?))
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            AnyRep::Rational(r) => rep_to_json(r, Value::String("Q".into()), rational_to_json),
            AnyRep::Prime(r) => rep_to_json(
                r,
                serde_json::json!({ "p": r.field().modulus() }),
                |x| Value::from(*x),
            ),
        }
    }
}

#[derive(Deserialize, Serialize)]
struct RepJson {
    quiver: QuiverSpec,
    field: Value,
    dims: Vec<usize>,
    maps: Vec<Vec<Vec<Value>>>,
}

fn rep_to_json<F: Field>(r: &Representation<F>, field: Value, f: impl Fn(&F::Elem) -> Value) -> Value {
    let maps: Vec<Vec<Vec<Value>>> = r
        .maps
        .iter()
        .map(|m| (0..m.rows()).map(|i| m.row(i).iter().map(&f).collect()).collect())
        .collect();
    serde_json::to_value(RepJson {
        quiver: r.quiver.to_spec(),
        field,
        dims: r.dims.clone(),
        maps,
    })
    .expect("representation serializes")
}

fn rational_to_json(x: &BigRational) -> Value {
    if x.is_integer() {
        if let Some(v) = x.numer().to_i64() {
            return Value::from(v);
        }
    }
    Value::String(x.to_string())
}

fn parse_rational(v: &Value) -> Result<BigRational> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| BigRational::from_integer(BigInt::from(i)))
            .ok_or_else(|| Error::Parse(format!("matrix entry {n} is not an integer"))),
        Value::String(s) => {
            let parsed = if let Some((a, b)) = s.split_once('/') {
                let a: BigInt = a.trim().parse().map_err(|_| Error::Parse(s.clone()))?;
                let b: BigInt = b.trim().parse().map_err(|_| Error::Parse(s.clone()))?;
                if b.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in {s}")));
                }
                BigRational::new(a, b)
            } else {
                BigRational::from_integer(s.trim().parse().map_err(|_| Error::Parse(s.clone()))?)
            };
            Ok(parsed)
        }
        other => Err(Error::Parse(format!("bad matrix entry {other}"))),
    }
}

/// Deterministic seed derivation used wherever a computation is repeated
/// with fresh randomness (splitmix64 finalizer).
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed
        .wrapping_add(stream.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Canonical rigid brick of dimension `beta`: the first deterministic random
/// representation with entries in {-1,0,1} (then wider ranges) whose
/// endomorphism ring is the field. For a real Schur root this is the unique
/// indecomposable of that dimension up to isomorphism.
pub fn rigid_brick(quiver: &Arc<Quiver>, beta: &[i64]) -> Result<QRep> {
    quiver.check_len(beta)?;
    if beta.iter().any(|&b| b < 0) || beta.iter().all(|&b| b == 0) {
        return Err(Error::NotARoot(beta.to_vec()));
    }
    if quiver.euler_form_unchecked(beta, beta) != 1 {
        return Err(Error::NotARoot(beta.to_vec()));
    }
    let dims: Vec<usize> = beta.iter().map(|&b| b as usize).collect();
    // Thin supports: all-ones maps are the natural candidate.
    let ones = Representation::new(
        quiver.clone(),
        Rationals,
        dims.clone(),
        quiver
            .arrows()
            .iter()
            .map(|&(s, t)| {
                Matrix::from_fn(dims[t], dims[s], |r, c| {
                    Rationals.from_i64(i64::from(r == c))
                })
            })
            .collect(),
    )?;
    if hom_dim(&ones, &ones)? == 1 {
        return Ok(ones);
    }
    for bound in 1..=3i64 {
        for attempt in 0..200u64 {
            let cand = Representation::random(
                quiver.clone(),
                Rationals,
                &dims,
                derive_seed(0x5EED_B51C, attempt + 1000 * bound as u64),
                bound,
            );
            if hom_dim(&cand, &cand)? == 1 {
                return Ok(cand);
            }
        }
    }
    Err(Error::NotARoot(beta.to_vec()))
}

/// The unique indecomposable of a Dynkin quiver with dimension vector `beta`.
pub fn indecomposable_for_root(quiver: &Arc<Quiver>, beta: &[i64]) -> Result<QRep> {
    let roots = quiver.positive_roots()?;
    if !roots.iter().any(|r| r == beta) {
        return Err(Error::NotARoot(beta.to_vec()));
    }
    rigid_brick(quiver, beta)
}

/// True if every entry of the representation is an integer of absolute value
/// at most `bound`.
pub fn entries_bounded(rep: &QRep, bound: i64) -> bool {
    let b = BigInt::from(bound);
    rep.maps()
        .iter()
        .all(|m| m.entries().iter().all(|x| x.is_integer() && x.numer().abs() <= b))
}
