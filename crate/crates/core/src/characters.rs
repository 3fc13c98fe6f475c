//! Objects of the cluster category, the Caldero-Chapoton map, index,
//! coindex and g-vectors.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::engine::{Engine, MemoPiece};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::linalg::Rationals;
use crate::quiver::{EulerData, Quiver};
use crate::rep::{
    decompose_geometric, is_isomorphic, AnyRep, DecomposeOptions, GrassmannianCounter, QRep,
    RationalPiece, Representation,
};

/// A module plus shifted projectives: `module (+) sum_i shifted[i] P_i[1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterObject {
    pub module: QRep,
    pub shifted: Vec<i64>,
}

impl ClusterObject {
    pub fn new(module: QRep, shifted: Vec<i64>) -> Result<Self> {
        module.quiver().check_len(&shifted)?;
        if shifted.iter().any(|&s| s < 0) {
            return Err(Error::Parse("shifted multiplicities must be nonnegative".into()));
        }
        Ok(ClusterObject { module, shifted })
    }

    pub fn zero(quiver: Arc<Quiver>) -> Self {
        let n = quiver.vertex_count();
        ClusterObject {
            module: Representation::zero(quiver, Rationals),
            shifted: vec![0; n],
        }
    }

    pub fn shifted_projective(quiver: Arc<Quiver>, i: usize) -> Self {
        let mut obj = Self::zero(quiver);
        obj.shifted[i] = 1;
        obj
    }

    pub fn from_module(module: QRep) -> Self {
        let n = module.quiver().vertex_count();
        ClusterObject { module, shifted: vec![0; n] }
    }

    pub fn is_zero(&self) -> bool {
        self.module.is_zero() && self.shifted.iter().all(|&s| s == 0)
    }

    pub fn has_shifted_part(&self) -> bool {
        self.shifted.iter().any(|&s| s != 0)
    }

    /// dim(module) - E^{-t} shifted.
    pub fn dim_vector(&self, euler: &EulerData) -> Vec<i64> {
        let proj = euler.et_inv.apply(&self.shifted);
        self.module
            .dim_vector()
            .iter()
            .zip(proj)
            .map(|(d, p)| d - p)
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "module": AnyRep::Rational(self.module.clone()).to_json(),
            "shifted": self.shifted,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let module = AnyRep::from_json(v.get("module").ok_or_else(|| Error::Parse("missing `module`".into()))?)?
            .into_rational();
        let shifted: Vec<i64> = serde_json::from_value(
            v.get("shifted").cloned().ok_or_else(|| Error::Parse("missing `shifted`".into()))?,
        )
        .map_err(|e| Error::Parse(e.to_string()))?;
        Self::new(module, shifted)
    }
}

/// E^t dim(module) - shifted.
pub fn index_of(euler: &EulerData, x: &ClusterObject) -> Vec<i64> {
    let v = euler.et.apply(&x.module.dim_vector());
    v.iter().zip(&x.shifted).map(|(a, s)| a - s).collect()
}

/// E dim(module) - shifted.
pub fn coindex_of(euler: &EulerData, x: &ClusterObject) -> Vec<i64> {
    let v = euler.e.apply(&x.module.dim_vector());
    v.iter().zip(&x.shifted).map(|(a, s)| a - s).collect()
}

/// The g-vector of an object, -coindex.
pub fn g_vector(euler: &EulerData, x: &ClusterObject) -> Vec<i64> {
    coindex_of(euler, x).iter().map(|v| -v).collect()
}

/// C^{-1} gamma; the g-vector of X(gamma) when the generic cone of index
/// gamma is a module.
pub fn g_vector_of_index(quiver: &Quiver, gamma: &[i64]) -> Result<Vec<i64>> {
    quiver.check_len(gamma)?;
    Ok(quiver.euler_data().coxeter_inv.apply(gamma))
}

/// Exponent vector of the term for subdimension `e` of a module of
/// dimension `d`: antisym(i, e) - <alpha_i, d> at each vertex i.
fn term_exponent(quiver: &Quiver, euler: &EulerData, d: &[i64], e: &[i64]) -> Vec<i64> {
    let ed = euler.e.apply(d);
    (0..quiver.vertex_count())
        .map(|i| quiver.antisym_form_simple(i, e).expect("valid vertex") - ed[i])
        .collect()
}

fn sum_over_subdimensions(
    quiver: &Quiver,
    euler: &EulerData,
    dims: &[usize],
    counter: &mut GrassmannianCounter,
) -> Result<LaurentPoly> {
    let n = quiver.vertex_count();
    let d: Vec<i64> = dims.iter().map(|&x| x as i64).collect();
    let mut terms = Vec::new();
    let mut e = vec![0i64; n];
    loop {
        let chi = counter.euler(&e)?.euler;
        if chi != 0 {
            terms.push((term_exponent(quiver, euler, &d, &e), chi.into()));
        }
        // odometer over 0 <= e <= d
        let mut i = 0;
        loop {
            if i == n {
                return Ok(LaurentPoly::from_terms(n, terms));
            }
            if e[i] < d[i] {
                e[i] += 1;
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}

/// The Caldero-Chapoton sum over all subdimension vectors of M itself,
/// without splitting M into summands first.
pub fn cc_module_direct(m: &QRep, cap: u64) -> Result<LaurentPoly> {
    let q = m.quiver();
    let euler = q.euler_data();
    let mut counter = GrassmannianCounter::new(m, cap)?;
    sum_over_subdimensions(q, &euler, m.dims(), &mut counter)
}

fn cc_piece(piece: &RationalPiece, cap: u64, opts: DecomposeOptions) -> Result<LaurentPoly> {
    let q = piece.rep.quiver();
    let euler = q.euler_data();
    let mut counter = GrassmannianCounter::splitting(&piece.rep, piece.conjugates, cap, opts)?;
    sum_over_subdimensions(q, &euler, piece.rep.dims(), &mut counter)
}

impl Engine {
    fn check_quiver(&self, m: &QRep) -> Result<()> {
        if **m.quiver() != *self.quiver {
            return Err(Error::QuiverMismatch);
        }
        Ok(())
    }

    /// CC(M), computed summand by summand (the map is multiplicative on
    /// direct sums); characters of indecomposables are memoized up to
    /// isomorphism.
    pub fn cc_module(&self, m: &QRep) -> Result<LaurentPoly> {
        self.check_quiver(m)?;
        let n = self.quiver.vertex_count();
        if m.is_zero() {
            return Ok(LaurentPoly::one(n));
        }
        let opts = self.decompose_options(0xCC);
        let pieces = decompose_geometric(m, opts)?;
        let mut out = LaurentPoly::one(n);
        for piece in &pieces {
            out = out.checked_mul(&self.cc_indecomposable(piece, opts)?)?;
        }
        Ok(out)
    }

    fn cc_indecomposable(&self, piece: &RationalPiece, opts: DecomposeOptions) -> Result<LaurentPoly> {
        let key = piece.rep.dims().to_vec();
        let known: Vec<(QRep, LaurentPoly)> = {
            let memo = self.pieces.lock().expect("memo lock");
            memo.get(&key)
                .map(|v| {
                    v.iter()
                        .filter(|p| p.conjugates == piece.conjugates)
                        .map(|p| (p.rep.clone(), p.cc.clone()))
                        .collect()
                })
                .unwrap_or_default()
        };
        for (rep, cc) in known {
            if is_isomorphic(&rep, &piece.rep, opts.seed)? {
                return Ok(cc);
            }
        }
        let cc = cc_piece(piece, self.settings.enumeration_cap, opts)?;
        self.pieces
            .lock()
            .expect("memo lock")
            .entry(key)
            .or_default()
            .push(MemoPiece { rep: piece.rep.clone(), conjugates: piece.conjugates, cc: cc.clone() });
        Ok(cc)
    }

    /// cc_module(module) * x^shifted.
    pub fn cc_object(&self, x: &ClusterObject) -> Result<LaurentPoly> {
        self.quiver.check_len(&x.shifted)?;
        Ok(self.cc_module(&x.module)?.shift(&x.shifted))
    }

    /// CC of the generic representation of `alpha`: random representations
    /// for several seeds whose characters must agree.
    pub fn cc_generic(&self, alpha: &[i64]) -> Result<LaurentPoly> {
        self.quiver.check_len(alpha)?;
        if alpha.iter().any(|&a| a < 0) {
            return Err(Error::SubdimensionOutOfRange);
        }
        let dims: Vec<usize> = alpha.iter().map(|&a| a as usize).collect();
        let runs = self.settings.certify_runs as u64;
        for round in 0..self.settings.retries as u64 {
            let mut values = Vec::new();
            for k in 0..runs {
                let seed = self.seed_for(alpha, 0x5A3B_0000 + round * runs + k);
                let rep = Representation::random(
                    self.quiver.clone(),
                    Rationals,
                    &dims,
                    seed,
                    self.settings.sample_bound,
                );
                values.push(self.cc_module(&rep)?);
            }
            if values.windows(2).all(|w| w[0] == w[1]) {
                return Ok(values.swap_remove(0));
            }
        }
        Err(Error::GenericityUncertified)
    }
}
