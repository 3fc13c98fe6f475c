use crate::error::{Error, Result};
use crate::linalg::{mat_mul, nullspace, rank, Field, Matrix};

use super::Representation;

/// A morphism of representations, one matrix `N_v x M_v` per vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct Morphism<E> {
    pub components: Vec<Matrix<E>>,
}

impl<E: Clone> Morphism<E> {
    pub fn component(&self, v: usize) -> &Matrix<E> {
        &self.components[v]
    }
}

/// Linear system whose solutions are the morphisms M -> N. Unknowns are the
/// entries of each f_v (row-major), vertex blocks concatenated.
fn hom_system<F: Field>(m: &Representation<F>, n: &Representation<F>) -> (Matrix<F::Elem>, Vec<usize>) {
    let field = m.field();
    let q = m.quiver();
    let mut offsets = Vec::with_capacity(m.dims.len() + 1);
    let mut total = 0;
    for v in 0..m.dims.len() {
        offsets.push(total);
        total += n.dims[v] * m.dims[v];
    }
    offsets.push(total);
    let eq_count: usize = q.arrows().iter().map(|&(s, t)| n.dims[t] * m.dims[s]).sum();
    let mut sys = Matrix::filled(eq_count, total, field.zero());
    let mut row = 0;
    for (a, &(s, t)) in q.arrows().iter().enumerate() {
        let ma = &m.maps[a];
        let na = &n.maps[a];
        // (f_t M_a - N_a f_s)[r, c] = 0
        for r in 0..n.dims[t] {
            for c in 0..m.dims[s] {
                for k in 0..m.dims[t] {
                    let x = ma.get(k, c);
                    if !field.is_zero(x) {
                        let col = offsets[t] + r * m.dims[t] + k;
                        let cur = sys.get(row, col).clone();
                        sys.set(row, col, field.add(&cur, x));
                    }
                }
                for k in 0..n.dims[s] {
                    let x = na.get(r, k);
                    if !field.is_zero(x) {
                        let col = offsets[s] + k * m.dims[s] + c;
                        let cur = sys.get(row, col).clone();
                        sys.set(row, col, field.sub(&cur, x));
                    }
                }
                row += 1;
            }
        }
    }
    (sys, offsets)
}

pub fn hom_dim<F: Field>(m: &Representation<F>, n: &Representation<F>) -> Result<usize> {
    m.check_compatible(n)?;
    let (sys, offsets) = hom_system(m, n);
    Ok(offsets[offsets.len() - 1] - rank(m.field(), &sys))
}

/// A basis of Hom(M, N).
pub fn hom_space<F: Field>(m: &Representation<F>, n: &Representation<F>) -> Result<Vec<Morphism<F::Elem>>> {
    m.check_compatible(n)?;
    let (sys, offsets) = hom_system(m, n);
    let basis = nullspace(m.field(), &sys);
    Ok(basis
        .into_iter()
        .map(|x| Morphism {
            components: (0..m.dims.len())
                .map(|v| Matrix::from_rows(n.dims[v], m.dims[v], x[offsets[v]..offsets[v + 1]].to_vec()))
                .collect(),
        })
        .collect())
}

/// dim Ext^1(M, N) = dim Hom(M, N) - <dim M, dim N>.
pub fn ext_dim<F: Field>(m: &Representation<F>, n: &Representation<F>) -> Result<usize> {
    let h = hom_dim(m, n)? as i64;
    let chi = m.quiver().euler_form_unchecked(&m.dim_vector(), &n.dim_vector());
    let e = h - chi;
    if e < 0 {
        return Err(Error::NegativeExt(e));
    }
    Ok(e as usize)
}

/// Checks that each component commutes with the arrow maps.
pub fn is_morphism<F: Field>(
    m: &Representation<F>,
    n: &Representation<F>,
    f: &Morphism<F::Elem>,
) -> bool {
    let field = m.field();
    m.quiver().arrows().iter().enumerate().all(|(a, &(s, t))| {
        mat_mul(field, &f.components[t], &m.maps[a]) == mat_mul(field, &n.maps[a], &f.components[s])
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::linalg::{PrimeField, Rationals};
    use crate::quiver::Quiver;

    #[test]
    fn hom_and_ext_on_a2() {
        let q = Arc::new(Quiver::linear_a(2));
        let s1 = Representation::simple(q.clone(), Rationals, 0);
        let s2 = Representation::simple(q.clone(), Rationals, 1);
        let p1 = Representation::projective(q.clone(), Rationals, 0);
        assert_eq!(hom_dim(&s1, &s1).unwrap(), 1);
        assert_eq!(hom_dim(&s1, &s2).unwrap(), 0);
        assert_eq!(ext_dim(&s1, &s2).unwrap(), 1);
        assert_eq!(ext_dim(&s2, &s1).unwrap(), 0);
        assert_eq!(hom_dim(&p1, &s1).unwrap(), 1);
        assert_eq!(hom_dim(&s2, &p1).unwrap(), 1);
        for f in hom_space(&s2, &p1).unwrap() {
            assert!(is_morphism(&s2, &p1, &f));
        }
    }

    #[test]
    fn hom_of_projectives_counts_paths() {
        let k = Arc::new(Quiver::kronecker());
        let p1 = Representation::projective(k.clone(), Rationals, 0);
        let p2 = Representation::projective(k.clone(), Rationals, 1);
        assert_eq!(hom_dim(&p2, &p1).unwrap(), 2);
        assert_eq!(hom_dim(&p1, &p2).unwrap(), 0);
    }

    #[test]
    fn mismatched_inputs() {
        let q = Arc::new(Quiver::linear_a(2));
        let k = Arc::new(Quiver::kronecker());
        let a = Representation::simple(q.clone(), Rationals, 0);
        let b = Representation::simple(k, Rationals, 0);
        assert_eq!(hom_dim(&a, &b), Err(Error::QuiverMismatch));
        let c = Representation::simple(q.clone(), PrimeField::new(3), 0);
        let d = Representation::simple(q, PrimeField::new(5), 0);
        assert_eq!(hom_dim(&c, &d), Err(Error::FieldMismatch));
    }
}
