//! Acyclic quivers, their Euler form, Coxeter matrix and positive roots.
//!
//! Vertices are 1-based at every external boundary (text, JSON, errors) and
//! 0-based inside the library.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::linalg::int::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    n: usize,
    /// (source, target), 0-based, in input order.
    arrows: Vec<(usize, usize)>,
    topo: Vec<usize>,
    /// `paths[i][j]`: paths from i to j as arrow-index sequences in traversal
    /// order, lexicographically ordered; the trivial path is empty.
    paths: Vec<Vec<Vec<Vec<usize>>>>,
}

/// The structured-object form `{"n": int, "arrows": [[i,j],...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverSpec {
    pub n: usize,
    pub arrows: Vec<[i64; 2]>,
}

impl Quiver {
    /// Validate a raw quiver given with 1-based vertex indices.
    pub fn new(n: usize, arrows: &[(i64, i64)]) -> Result<Self> {
        let mut arr = Vec::with_capacity(arrows.len());
        for &(s, t) in arrows {
            for v in [s, t] {
                if v < 1 || v as usize > n {
                    return Err(Error::BadVertexIndex { index: v, n });
                }
            }
            if s == t {
                return Err(Error::LoopFound(s as usize));
            }
            arr.push((s as usize - 1, t as usize - 1));
        }
        for &(s, t) in &arr {
            if arr.contains(&(t, s)) {
                return Err(Error::TwoCycleFound(s + 1, t + 1));
            }
        }
        let topo = topological_order(n, &arr).ok_or(Error::CycleFound)?;
        let mut q = Quiver {
            n,
            arrows: arr,
            topo,
            paths: Vec::new(),
        };
        q.paths = (0..n).map(|i| q.enumerate_paths_from(i)).collect();
        Ok(q)
    }

    /// Linearly oriented A_n: 1 -> 2 -> ... -> n.
    pub fn linear_a(n: usize) -> Self {
        let arrows: Vec<(i64, i64)> = (1..n as i64).map(|i| (i, i + 1)).collect();
        Quiver::new(n, &arrows).expect("linear A_n is valid")
    }

    /// Two arrows 1 -> 2.
    pub fn kronecker() -> Self {
        Quiver::new(2, &[(1, 2), (1, 2)]).expect("Kronecker quiver is valid")
    }

    pub fn from_spec(spec: &QuiverSpec) -> Result<Self> {
        let arrows: Vec<(i64, i64)> = spec.arrows.iter().map(|a| (a[0], a[1])).collect();
        Quiver::new(spec.n, &arrows)
    }

    pub fn to_spec(&self) -> QuiverSpec {
        QuiverSpec {
            n: self.n,
            arrows: self
                .arrows
                .iter()
                .map(|&(s, t)| [s as i64 + 1, t as i64 + 1])
                .collect(),
        }
    }

    /// Parse either the text form (`n` then one `i j` line per arrow) or the
    /// JSON object form.
    pub fn parse(input: &str) -> Result<Self> {
        let trimmed = input.trim_start();
        if trimmed.starts_with('{') {
            let spec: QuiverSpec =
                serde_json::from_str(trimmed).map_err(|e| Error::Parse(e.to_string()))?;
            return Quiver::from_spec(&spec);
        }
        let mut lines = input
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("empty quiver description".into()))?
            .parse()
            .map_err(|_| Error::Parse("first line must be the vertex count".into()))?;
        let mut arrows = Vec::new();
        for line in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 2 {
                return Err(Error::Parse(format!("bad arrow line `{line}`")));
            }
            let parse = |s: &str| {
                s.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad vertex `{s}`")))
            };
            arrows.push((parse(parts[0])?, parse(parts[1])?));
        }
        Quiver::new(n, &arrows)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for &(a, b) in &self.arrows {
            s.push_str(&format!("{} {}\n", a + 1, b + 1));
        }
        s
    }

    /// Short stable digest of the text form, used as a cache key prefix.
    pub fn hash_hex(&self) -> String {
        let digest = Sha256::digest(self.to_text().as_bytes());
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    /// Number of arrows i -> j (0-based).
    pub fn arrow_count(&self, i: usize, j: usize) -> usize {
        self.arrows.iter().filter(|&&a| a == (i, j)).count()
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.arrows.iter().all(|&(s, _)| s != v)
    }

    pub fn paths(&self, from: usize, to: usize) -> &[Vec<usize>] {
        &self.paths[from][to]
    }

    /// Position of `path` in `paths(from, to)`.
    pub fn path_index(&self, from: usize, to: usize, path: &[usize]) -> Option<usize> {
        self.paths[from][to].iter().position(|p| p == path)
    }

    /// Dimension vector of the indecomposable projective P_i: number of paths
    /// from i to each vertex.
    pub fn projective_dims(&self, i: usize) -> Vec<i64> {
        (0..self.n).map(|j| self.paths[i][j].len() as i64).collect()
    }

    /// Dimension vector of the indecomposable injective I_i.
    pub fn injective_dims(&self, i: usize) -> Vec<i64> {
        (0..self.n).map(|j| self.paths[j][i].len() as i64).collect()
    }

    fn enumerate_paths_from(&self, start: usize) -> Vec<Vec<Vec<usize>>> {
        let mut out = vec![Vec::new(); self.n];
        let mut stack = vec![(start, Vec::new())];
        // Preorder DFS visiting arrows in index order yields lexicographic order.
        while let Some((v, path)) = stack.pop() {
            out[v].push(path.clone());
            for (idx, &(s, t)) in self.arrows.iter().enumerate().rev() {
                if s == v {
                    let mut p = path.clone();
                    p.push(idx);
                    stack.push((t, p));
                }
            }
        }
        out
    }

    pub fn check_len(&self, v: &[i64]) -> Result<()> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Euler matrix E = I - A with A_ij = #arrows i -> j.
    pub fn euler_matrix(&self) -> IntMatrix {
        let mut e = IntMatrix::identity(self.n);
        for &(s, t) in &self.arrows {
            e.set(s, t, e.get(s, t) - 1);
        }
        e
    }

    pub fn euler_data(&self) -> EulerData {
        EulerData::new(self)
    }

    /// `<d, e> = d^t E e`.
    pub fn euler_form(&self, d: &[i64], e: &[i64]) -> Result<i64> {
        self.check_len(d)?;
        self.check_len(e)?;
        Ok(self.euler_form_unchecked(d, e))
    }

    pub(crate) fn euler_form_unchecked(&self, d: &[i64], e: &[i64]) -> i64 {
        let diag: i64 = d.iter().zip(e).map(|(a, b)| a * b).sum();
        let off: i64 = self.arrows.iter().map(|&(s, t)| d[s] * e[t]).sum();
        diag - off
    }

    /// `<S_i, e> - <e, S_i>` for a 0-based vertex i.
    pub fn antisym_form_simple(&self, i: usize, e: &[i64]) -> Result<i64> {
        if i >= self.n {
            return Err(Error::BadVertex(i + 1));
        }
        self.check_len(e)?;
        let mut unit = vec![0; self.n];
        unit[i] = 1;
        Ok(self.euler_form_unchecked(&unit, e) - self.euler_form_unchecked(e, &unit))
    }

    /// Symmetrized form `(d, e) = <d, e> + <e, d>`.
    pub fn symmetric_form(&self, d: &[i64], e: &[i64]) -> i64 {
        self.euler_form_unchecked(d, e) + self.euler_form_unchecked(e, d)
    }

    /// True when the symmetrized Euler form is positive definite, i.e. every
    /// connected component of the underlying graph is an ADE diagram.
    pub fn is_dynkin(&self) -> bool {
        let e = self.euler_matrix();
        let s = IntMatrix {
            n: self.n,
            data: e
                .data
                .iter()
                .zip(&e.transpose().data)
                .map(|(a, b)| a + b)
                .collect(),
        };
        (1..=self.n).all(|k| {
            let mut minor = IntMatrix::identity(k);
            for r in 0..k {
                for c in 0..k {
                    minor.set(r, c, s.get(r, c));
                }
            }
            minor.det() > 0
        })
    }

    /// All positive roots of a Dynkin quiver, in lexicographic order.
    pub fn positive_roots(&self) -> Result<Vec<Vec<i64>>> {
        if !self.is_dynkin() {
            return Err(Error::NotDynkin);
        }
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        for i in 0..self.n {
            let mut unit = vec![0i64; self.n];
            unit[i] = 1;
            seen.insert(unit.clone());
            queue.push_back(unit);
        }
        while let Some(beta) = queue.pop_front() {
            for i in 0..self.n {
                let mut unit = vec![0i64; self.n];
                unit[i] = 1;
                let pairing = self.symmetric_form(&beta, &unit);
                let mut reflected = beta.clone();
                reflected[i] -= pairing;
                if reflected.iter().all(|&x| x >= 0)
                    && reflected.iter().any(|&x| x > 0)
                    && seen.insert(reflected.clone())
                {
                    queue.push_back(reflected);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quiver(n={}, arrows=[", self.n)?;
        for (k, &(s, t)) in self.arrows.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}->{}", s + 1, t + 1)?;
        }
        write!(f, "])")
    }
}

fn topological_order(n: usize, arrows: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; n];
    for &(_, t) in arrows {
        indeg[t] += 1;
    }
    // Smallest available vertex first keeps the order deterministic.
    let mut ready: BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop_first() {
        order.push(v);
        for &(s, t) in arrows {
            if s == v {
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    ready.insert(t);
                }
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// Euler matrix, Coxeter matrix and the exact inverses used throughout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerData {
    pub e: IntMatrix,
    pub e_inv: IntMatrix,
    pub et: IntMatrix,
    pub et_inv: IntMatrix,
    /// C = -E^t E^{-1}.
    pub coxeter: IntMatrix,
    pub coxeter_inv: IntMatrix,
}

impl EulerData {
    pub fn new(q: &Quiver) -> Self {
        let e = q.euler_matrix();
        let e_inv = e
            .unimodular_inverse()
            .expect("Euler matrix of an acyclic quiver is unitriangular");
        let et = e.transpose();
        let et_inv = e_inv.transpose();
        let coxeter = et.mul(&e_inv).neg();
        // C^{-1} = -E E^{-t}
        let coxeter_inv = e.mul(&et_inv).neg();
        EulerData {
            e,
            e_inv,
            et,
            et_inv,
            coxeter,
            coxeter_inv,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_errors() {
        assert!(Quiver::new(2, &[(1, 2)]).is_ok());
        assert_eq!(Quiver::new(1, &[(1, 1)]), Err(Error::LoopFound(1)));
        assert_eq!(
            Quiver::new(3, &[(1, 2), (2, 3), (3, 1)]),
            Err(Error::CycleFound)
        );
        assert_eq!(
            Quiver::new(2, &[(1, 2), (2, 1)]),
            Err(Error::TwoCycleFound(1, 2))
        );
        assert_eq!(
            Quiver::new(2, &[(1, 3)]),
            Err(Error::BadVertexIndex { index: 3, n: 2 })
        );
    }

    #[test]
    fn euler_matrices() {
        let a2 = Quiver::linear_a(2);
        assert_eq!(a2.euler_matrix().rows(), vec![vec![1, -1], vec![0, 1]]);
        let a3 = Quiver::linear_a(3);
        assert_eq!(
            a3.euler_matrix().rows(),
            vec![vec![1, -1, 0], vec![0, 1, -1], vec![0, 0, 1]]
        );
        let empty = Quiver::new(3, &[]).unwrap();
        assert_eq!(empty.euler_matrix(), IntMatrix::identity(3));
    }

    #[test]
    fn euler_form_examples() {
        let a2 = Quiver::linear_a(2);
        assert_eq!(a2.euler_form(&[1, 0], &[1, 1]), Ok(0));
        assert_eq!(a2.euler_form(&[3, 7], &[0, 0]), Ok(0));
        let k = Quiver::kronecker();
        assert_eq!(k.euler_form(&[1, 1], &[1, 1]), Ok(0));
        assert!(matches!(
            a2.euler_form(&[1], &[1, 1]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn antisymmetric_form_examples() {
        let a2 = Quiver::linear_a(2);
        assert_eq!(a2.antisym_form_simple(0, &[1, 0]), Ok(0));
        assert_eq!(a2.antisym_form_simple(1, &[1, 0]), Ok(1));
        assert_eq!(a2.antisym_form_simple(0, &[0, 1]), Ok(-1));
    }

    #[test]
    fn coxeter_identities() {
        for q in [Quiver::linear_a(3), Quiver::kronecker()] {
            let ed = q.euler_data();
            assert_eq!(ed.e.mul(&ed.e_inv), IntMatrix::identity(q.vertex_count()));
            assert_eq!(
                ed.coxeter.mul(&ed.coxeter_inv),
                IntMatrix::identity(q.vertex_count())
            );
            // In index coordinates C sends ind P_i = e_i to -ind I_i.
            for i in 0..q.vertex_count() {
                let mut unit = vec![0; q.vertex_count()];
                unit[i] = 1;
                assert_eq!(ed.et.apply(&q.projective_dims(i)), unit);
                let inj: Vec<i64> = ed.et.apply(&q.injective_dims(i)).iter().map(|x| -x).collect();
                assert_eq!(ed.coxeter.apply(&unit), inj);
            }
        }
    }

    #[test]
    fn positive_root_examples() {
        assert_eq!(Quiver::linear_a(1).positive_roots().unwrap(), vec![vec![1]]);
        assert_eq!(
            Quiver::linear_a(2).positive_roots().unwrap(),
            vec![vec![0, 1], vec![1, 0], vec![1, 1]]
        );
        let a3 = Quiver::linear_a(3).positive_roots().unwrap();
        assert_eq!(a3.len(), 6);
        assert!(a3.contains(&vec![1, 1, 1]));
        assert!(!a3.contains(&vec![1, 0, 1]));
        assert_eq!(Quiver::kronecker().positive_roots(), Err(Error::NotDynkin));
        let d4 = Quiver::new(4, &[(1, 4), (2, 4), (3, 4)]).unwrap();
        assert_eq!(d4.positive_roots().unwrap().len(), 12);
    }

    #[test]
    fn paths_and_projectives() {
        let a3 = Quiver::linear_a(3);
        assert_eq!(a3.paths(0, 2), &[vec![0, 1]]);
        assert_eq!(a3.projective_dims(0), vec![1, 1, 1]);
        assert_eq!(a3.projective_dims(2), vec![0, 0, 1]);
        let k = Quiver::kronecker();
        assert_eq!(k.paths(0, 1).len(), 2);
        assert_eq!(k.projective_dims(0), vec![1, 2]);
    }

    #[test]
    fn text_and_json_forms() {
        let q = Quiver::parse("3\n1 2\n2 3\n").unwrap();
        assert_eq!(q, Quiver::linear_a(3));
        let j = Quiver::parse(r#"{"n": 2, "arrows": [[1,2],[1,2]]}"#).unwrap();
        assert_eq!(j, Quiver::kronecker());
        assert_eq!(Quiver::parse(&q.to_text()).unwrap(), q);
    }
}
