//! Seeds, mutation and finite-type enumeration of cluster variables and
//! cluster monomials.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::quiver::Quiver;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seed {
    pub b: Vec<Vec<i64>>,
    pub cluster: Vec<LaurentPoly>,
}

impl Seed {
    /// B_ij = #(i -> j) - #(j -> i), cluster x_1, ..., x_n.
    pub fn initial(quiver: &Quiver) -> Self {
        let n = quiver.vertex_count();
        let mut b = vec![vec![0i64; n]; n];
        for &(s, t) in quiver.arrows() {
            b[s][t] += 1;
            b[t][s] -= 1;
        }
        Seed {
            b,
            cluster: (0..n).map(|i| LaurentPoly::var(n, i)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.cluster.len()
    }

    /// Mutation at vertex `k` (0-based).
    pub fn mutate(&self, k: usize) -> Result<Seed> {
        let n = self.rank();
        if k >= n {
            return Err(Error::BadVertex(k + 1));
        }
        let mut plus = LaurentPoly::one(n);
        let mut minus = LaurentPoly::one(n);
        for i in 0..n {
            let bik = self.b[i][k];
            if bik > 0 {
                plus = plus.checked_mul(&self.cluster[i].pow(bik as u32))?;
            } else if bik < 0 {
                minus = minus.checked_mul(&self.cluster[i].pow((-bik) as u32))?;
            }
        }
        let new_var = plus.checked_add(&minus)?.div_exact(&self.cluster[k])?;
        if !new_var.has_monomial_denominator() {
            return Err(Error::NonExactDivision);
        }
        let mut cluster = self.cluster.clone();
        cluster[k] = new_var;
        Ok(Seed { b: mutate_matrix(&self.b, k), cluster })
    }

    /// Canonical key: sorted canonical texts of the cluster variables.
    pub fn cluster_key(&self) -> Vec<String> {
        let mut keys: Vec<String> = self.cluster.iter().map(|p| p.to_string()).collect();
        keys.sort();
        keys
    }
}

/// Matrix mutation at k.
pub fn mutate_matrix(b: &[Vec<i64>], k: usize) -> Vec<Vec<i64>> {
    let n = b.len();
    let mut out = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = if i == k || j == k {
                -b[i][j]
            } else {
                b[i][j] + b[i][k].max(0) * b[k][j].max(0) - (-b[i][k]).max(0) * (-b[k][j]).max(0)
            };
        }
    }
    out
}

/// Result of a breadth-first mutation closure.
#[derive(Debug, Clone)]
pub struct Enumeration {
    pub seeds: Vec<Seed>,
    /// Mutation sequence (0-based vertices) reaching each seed.
    pub paths: Vec<Vec<usize>>,
    /// Cluster variables, each with the first mutation sequence producing it.
    pub variables: BTreeMap<LaurentPoly, Vec<usize>>,
    pub closed: bool,
}

/// Breadth-first closure under mutation, deduplicating seeds as unordered
/// clusters; stops early once `limit` seeds are known.
pub fn enumerate_seeds(quiver: &Quiver, limit: usize) -> Result<Enumeration> {
    let start = Seed::initial(quiver);
    let mut seen = BTreeSet::new();
    seen.insert(start.cluster_key());
    let mut variables = BTreeMap::new();
    for v in &start.cluster {
        variables.insert(v.clone(), Vec::new());
    }
    let mut seeds = vec![start];
    let mut paths = vec![Vec::new()];
    let mut queue = VecDeque::from([0usize]);
    let mut closed = true;
    'bfs: while let Some(idx) = queue.pop_front() {
        for k in 0..quiver.vertex_count() {
            let next = seeds[idx].mutate(k)?;
            if !seen.insert(next.cluster_key()) {
                continue;
            }
            if seeds.len() >= limit {
                closed = false;
                break 'bfs;
            }
            let mut path = paths[idx].clone();
            path.push(k);
            variables.entry(next.cluster[k].clone()).or_insert_with(|| path.clone());
            queue.push_back(seeds.len());
            seeds.push(next);
            paths.push(path);
        }
    }
    Ok(Enumeration { seeds, paths, variables, closed })
}

impl Enumeration {
    pub fn cluster_count(&self) -> usize {
        self.seeds.len()
    }

    pub fn variable_count(&self) -> usize {
        self.variables.len()
    }

    /// {"clusters", "variables", "closed", "variables_list"}; the list is in
    /// canonical text order.
    pub fn report_json(&self) -> Value {
        let mut vars: Vec<&LaurentPoly> = self.variables.keys().collect();
        vars.sort_by_key(|p| p.to_string());
        json!({
            "clusters": self.cluster_count(),
            "variables": self.variable_count(),
            "closed": self.closed,
            "variables_list": vars.iter().map(|p| p.to_json_value()).collect::<Vec<_>>(),
        })
    }

    /// All monomials of total degree at most `degree_bound` in the variables
    /// of a single cluster.
    pub fn cluster_monomials(&self, degree_bound: u32) -> Result<BTreeSet<LaurentPoly>> {
        if !self.closed {
            return Err(Error::NotFiniteType);
        }
        let mut out = BTreeSet::new();
        for seed in &self.seeds {
            let mut frontier = vec![(LaurentPoly::one(seed.rank()), 0usize)];
            out.insert(LaurentPoly::one(seed.rank()));
            for _ in 0..degree_bound {
                let mut next = Vec::new();
                for (m, last) in &frontier {
                    // Nondecreasing variable index avoids repeated products.
                    for i in *last..seed.rank() {
                        let p = m.checked_mul(&seed.cluster[i])?;
                        out.insert(p.clone());
                        next.push((p, i));
                    }
                }
                frontier = next;
            }
        }
        Ok(out)
    }
}

/// Default number of seeds explored before declaring a quiver infinite.
pub const DEFAULT_SEED_LIMIT: usize = 5000;

pub fn cluster_monomials_up_to(quiver: &Quiver, degree_bound: u32) -> Result<BTreeSet<LaurentPoly>> {
    if !quiver.is_dynkin() {
        return Err(Error::NotFiniteType);
    }
    enumerate_seeds(quiver, DEFAULT_SEED_LIMIT)?.cluster_monomials(degree_bound)
}

pub fn is_cluster_monomial(quiver: &Quiver, p: &LaurentPoly, degree_bound: u32) -> Result<bool> {
    Ok(cluster_monomials_up_to(quiver, degree_bound)?.contains(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn a2_mutations() {
        let q = Quiver::linear_a(2);
        let s = Seed::initial(&q);
        assert_eq!(s.b, vec![vec![0, 1], vec![-1, 0]]);
        let m1 = s.mutate(0).unwrap();
        assert_eq!(m1.cluster[0], lp("(1+x2)/x1"));
        assert_eq!(m1.mutate(0).unwrap(), s);
        let mut cur = s.clone();
        for k in [0, 1, 0, 1, 0] {
            cur = cur.mutate(k).unwrap();
        }
        assert_eq!(cur.cluster_key(), s.cluster_key());
        assert_eq!(s.mutate(2), Err(Error::BadVertex(3)));
    }

    #[test]
    fn finite_type_counts() {
        for (q, clusters, vars) in [
            (Quiver::linear_a(1), 2, 2),
            (Quiver::linear_a(2), 5, 5),
            (Quiver::linear_a(3), 14, 9),
        ] {
            let e = enumerate_seeds(&q, 1000).unwrap();
            assert!(e.closed);
            assert_eq!((e.cluster_count(), e.variable_count()), (clusters, vars));
        }
        let a1 = enumerate_seeds(&Quiver::linear_a(1), 10).unwrap();
        assert!(a1.variables.contains_key(&lp("2/x1")));
        let k = enumerate_seeds(&Quiver::kronecker(), 20).unwrap();
        assert!(!k.closed);
        assert_eq!(k.cluster_monomials(1), Err(Error::NotFiniteType));
    }

    #[test]
    fn monomials_and_membership() {
        let q = Quiver::linear_a(2);
        assert_eq!(cluster_monomials_up_to(&q, 0).unwrap().len(), 1);
        assert_eq!(cluster_monomials_up_to(&q, 1).unwrap().len(), 6);
        // each cluster adds 3 degree-2 monomials; the 5 squares are shared
        // between adjacent clusters.
        assert_eq!(cluster_monomials_up_to(&q, 2).unwrap().len(), 6 + 5 + 5);
        assert!(is_cluster_monomial(&q, &lp("(1+x2)/x1"), 1).unwrap());
        assert!(is_cluster_monomial(&q, &lp("x1*x2"), 2).unwrap());
        assert!(!is_cluster_monomial(&q, &lp("(1+x1)/x1"), 3).unwrap());
    }

    #[test]
    fn kronecker_first_mutation() {
        let q = Quiver::kronecker();
        let s = Seed::initial(&q).mutate(0).unwrap();
        assert_eq!(s.cluster[0], lp("(1+x2^2)/x1"));
    }
}
