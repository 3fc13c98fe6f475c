//! Verification suites: each runs a family of cases and reports one verdict
//! per case.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::characters::{coindex_of, g_vector_of_index, index_of, ClusterObject};
use crate::cluster::{enumerate_seeds, DEFAULT_SEED_LIMIT};
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::generic::min_proj_decomposition;
use crate::laurent::LaurentPoly;
use crate::linalg::Rationals;
use crate::quiver::Quiver;
use crate::rep::{decompose, derive_seed, is_isomorphic, rigid_brick, Representation};

pub const SUITE_NAMES: [&str; 8] = [
    "monomial-containment",
    "finite-type-equality",
    "multiplicativity",
    "cc-agreement",
    "denominators",
    "gvectors",
    "stability",
    "cone-table-a3",
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseResult {
    pub label: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport { suite: suite.to_string(), cases: Vec::new() }
    }

    fn push(&mut self, label: String, pass: bool, detail: String) {
        self.cases.push(CaseResult { label, pass, detail });
    }

    /// Records an error as a failed case.
    fn push_result(&mut self, label: String, outcome: Result<(bool, String)>) {
        match outcome {
            Ok((pass, detail)) => self.push(label, pass, detail),
            Err(e) => self.push(label, false, format!("error {}: {e}", e.name())),
        }
    }

    pub fn passed(&self) -> usize {
        self.cases.iter().filter(|c| c.pass).count()
    }

    pub fn all_pass(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    /// `PASS k/k` or `FAIL j/k`.
    pub fn summary(&self) -> String {
        let verdict = if self.all_pass() { "PASS" } else { "FAIL" };
        format!("{verdict} {}/{}", self.passed(), self.cases.len())
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "cases": self.cases,
            "passed": self.passed(),
            "total": self.cases.len(),
            "verdict": if self.all_pass() { "PASS" } else { "FAIL" },
        })
    }
}

/// Knobs shared by the suites; defaults reproduce the standard runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteParams {
    /// Indices range over [-radius, radius]^n.
    pub radius: i64,
    /// Dimension vectors range over [0, max_dim]^n.
    pub max_dim: i64,
    pub degree_bound: u32,
    /// Degree up to which every cluster monomial must be realized.
    pub converse_degree: u32,
    pub samples: usize,
    /// Random alphas are drawn from [-alpha_range, alpha_range]^n.
    pub alpha_range: i64,
    pub seed_limit: usize,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            radius: 2,
            max_dim: 2,
            degree_bound: 4,
            converse_degree: 2,
            samples: 50,
            alpha_range: 3,
            seed_limit: 24,
        }
    }
}

pub fn run_suite(engine: &Engine, name: &str, params: &SuiteParams) -> Result<SuiteReport> {
    match name {
        "monomial-containment" => monomial_containment(engine, params),
        "finite-type-equality" => finite_type_equality(engine, params),
        "multiplicativity" => multiplicativity(engine, params),
        "cc-agreement" => cc_agreement(engine, params),
        "denominators" => denominators(engine, params),
        "gvectors" => gvectors(engine, params),
        "stability" => stability(engine, params),
        "cone-table-a3" => cone_table_a3(engine),
        other => Err(Error::Parse(format!("unknown suite `{other}`"))),
    }
}

/// All integer vectors in [lo, hi]^n in lexicographic order.
pub fn integer_box(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (lo..=hi).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn fmt_vec(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

fn fmt_path(path: &[usize]) -> String {
    if path.is_empty() {
        return "initial seed".into();
    }
    let parts: Vec<String> = path.iter().map(|k| (k + 1).to_string()).collect();
    format!("mutations {}", parts.join(","))
}

fn suite_rng(engine: &Engine, tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(engine.settings().rng_seed, tag))
}

/// Every X(gamma) over the index box is a cluster monomial of bounded
/// degree, gamma -> X(gamma) is injective, and every cluster monomial of low
/// degree occurs.
pub fn finite_type_equality(engine: &Engine, params: &SuiteParams) -> Result<SuiteReport> {
    let q = engine.quiver();
    if !q.is_dynkin() {
        return Err(Error::NotFiniteType);
    }
    let enumeration = enumerate_seeds(q, DEFAULT_SEED_LIMIT)?;
    let monomials = enumeration.cluster_monomials(params.degree_bound)?;
    let mut report = SuiteReport::new("finite-type-equality");
    let mut values: BTreeMap<LaurentPoly, Vec<Vec<i64>>> = BTreeMap::new();
    for gamma in integer_box(q.vertex_count(), -params.radius, params.radius) {
        let outcome = engine.generic_character(&gamma).map(|x| {
            let member = monomials.contains(&x);
            let detail = format!("X = {x}{}", if member { "" } else { " is not a cluster monomial of bounded degree" });
            values.entry(x).or_default().push(gamma.clone());
            (member, detail)
        });
        report.push_result(format!("gamma={}", fmt_vec(&gamma)), outcome);
    }
    let collisions: Vec<String> = values
        .iter()
        .filter(|(_, gs)| gs.len() > 1)
        .map(|(x, gs)| format!("{x} <- {}", gs.iter().map(|g| fmt_vec(g)).collect::<Vec<_>>().join(" ")))
        .collect();
    report.push(
        "injective".into(),
        collisions.is_empty(),
        if collisions.is_empty() { format!("{} distinct values", values.len()) } else { collisions.join("; ") },
    );
    let low = enumeration.cluster_monomials(params.converse_degree)?;
    let missing: Vec<String> = low.iter().filter(|m| !values.contains_key(*m)).map(|m| m.to_string()).collect();
    report.push(
        format!("monomials of degree <= {} realized", params.converse_degree),
        missing.is_empty(),
        if missing.is_empty() { format!("{} monomials", low.len()) } else { format!("missing {}", missing.join(", ")) },
    );
    Ok(report)
}

/// Rigid indecomposables (real Schur roots in the dimension box) and shifted
/// projectives have characters equal to cluster variables reached by
/// explicit mutation sequences.
pub fn monomial_containment(engine: &Engine, params: &SuiteParams) -> Result<SuiteReport> {
    let q = engine.quiver();
    let n = q.vertex_count();
    let enumeration = enumerate_seeds(q, params.seed_limit)?;
    let mut report = SuiteReport::new("monomial-containment");
    let mut objects: Vec<(String, ClusterObject)> = Vec::new();
    for beta in integer_box(n, 0, params.max_dim.max(3)) {
        if beta.iter().all(|&b| b == 0) || q.euler_form(&beta, &beta)? != 1 {
            continue;
        }
        // Real roots without a brick representation are not Schur.
        if let Ok(brick) = rigid_brick(q, &beta) {
            objects.push((format!("ind {}", fmt_vec(&beta)), ClusterObject::from_module(brick)));
        }
    }
    for i in 0..n {
        objects.push((format!("P{}[1]", i + 1), ClusterObject::shifted_projective(q.clone(), i)));
    }
    for (label, obj) in objects {
        let outcome = engine.cc_object(&obj).map(|x| match enumeration.variables.get(&x) {
            Some(path) => (true, format!("X = {x} via {}", fmt_path(path))),
            None => (false, format!("X = {x} not reached within {} seeds", params.seed_limit)),
        });
        report.push_result(label, outcome);
    }
    Ok(report)
}

/// X(E^t alpha) against CC of the certified generic representation of alpha.
pub fn cc_agreement(engine: &Engine, params: &SuiteParams) -> Result<SuiteReport> {
    let et = &engine.euler().et;
    let mut report = SuiteReport::new("cc-agreement");
    for alpha in integer_box(engine.quiver().vertex_count(), 0, params.max_dim) {
        let outcome = (|| {
            let lhs = engine.generic_character(&et.apply(&alpha))?;
            let rhs = engine.cc_generic(&alpha)?;
            let detail = if lhs == rhs { format!("{lhs}") } else { format!("cone {lhs} vs sampled {rhs}") };
            Ok((lhs == rhs, detail))
        })();
        report.push_result(format!("alpha={}", fmt_vec(&alpha)), outcome);
    }
    Ok(report)
}

pub fn multiplicativity(engine: &Engine, params: &SuiteParams) -> Result<SuiteReport> {
    let n = engine.quiver().vertex_count();
    let mut rng = suite_rng(engine, 0x3017);
    let mut report = SuiteReport::new("multiplicativity");
    for _ in 0..params.samples {
        let alpha: Vec<i64> = (0..n).map(|_| rng.random_range(-params.alpha_range..=params.alpha_range)).collect();
        let outcome = engine.check_multiplicativity(&alpha).map(|r| {
            let betas: Vec<String> = r.betas.iter().map(|b| fmt_vec(b)).collect();
            let detail = format!(
                "betas [{}] gamma {}: {} {} {}",
                betas.join(" "),
                fmt_vec(&r.gamma),
                r.lhs,
                if r.equal { "=" } else { "!=" },
                r.rhs
            );
            (r.equal, detail)
        });
        report.push_result(format!("alpha={}", fmt_vec(&alpha)), outcome);
    }
    Ok(report)
}

pub fn denominators(engine: &Engine, params: &SuiteParams) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("denominators");
    for alpha in integer_box(engine.quiver().vertex_count(), 0, params.max_dim) {
        let outcome = (|| {
            let cc = engine.cc_generic(&alpha)?;
            let d = cc.denominator_vector()?;
            Ok((d == alpha, format!("denominator {} of {cc}", fmt_vec(&d))))
        })();
        report.push_result(format!("alpha={}", fmt_vec(&alpha)), outcome);
    }
    Ok(report)
}

/// Index and g-vector identities on every certified cone for the index box
/// and for the indices E^t alpha of the dimension box.
pub fn gvectors(engine: &Engine, params: &SuiteParams) -> Result<SuiteReport> {
    let q = engine.quiver();
    let ed = engine.euler();
    let n = q.vertex_count();
    let mut indices: BTreeSet<Vec<i64>> = integer_box(n, -params.radius, params.radius).into_iter().collect();
    for alpha in integer_box(n, 0, params.max_dim) {
        indices.insert(ed.et.apply(&alpha));
    }
    let mut report = SuiteReport::new("gvectors");
    for gamma in indices {
        let outcome = (|| {
            let certified = engine.certified_cones(&min_proj_decomposition(&gamma))?;
            let mut modules = 0;
            for cone in &certified.cones {
                let index = index_of(ed, cone);
                if index != gamma {
                    return Ok((false, format!("index {} of a cone", fmt_vec(&index))));
                }
                if cone.has_shifted_part() {
                    continue;
                }
                modules += 1;
                let coindex = coindex_of(ed, cone);
                let g: Vec<i64> = coindex.iter().map(|x| -x).collect();
                if ed.et.apply(&cone.module.dim_vector()) != index {
                    return Ok((false, "index differs from E^t dim".into()));
                }
                if ed.coxeter.apply(&g) != index {
                    return Ok((false, format!("C g = {} for g = {}", fmt_vec(&ed.coxeter.apply(&g)), fmt_vec(&g))));
                }
                if g_vector_of_index(q, &gamma)? != g {
                    return Ok((false, "C^-1 gamma differs from -coindex".into()));
                }
            }
            let kind = if modules > 0 { "module cone" } else { "cone with shifted part, index only" };
            Ok((true, kind.to_string()))
        })();
        report.push_result(format!("gamma={}", fmt_vec(&gamma)), outcome);
    }
    Ok(report)
}

pub fn stability(engine: &Engine, params: &SuiteParams) -> Result<SuiteReport> {
    let n = engine.quiver().vertex_count();
    let mut rng = suite_rng(engine, 0x57AB);
    let mut report = SuiteReport::new("stability");
    for _ in 0..params.samples {
        let gamma: Vec<i64> = (0..n).map(|_| rng.random_range(-params.radius..=params.radius)).collect();
        let mut pad: Vec<i64> = (0..n).map(|_| rng.random_range(0..=1)).collect();
        if pad.iter().all(|&p| p == 0) {
            pad[rng.random_range(0..n)] = 1;
        }
        let outcome = engine.stability_check(&gamma, &pad).map(|r| {
            let detail = if r.equal { format!("{}", r.minimal) } else { format!("{} vs padded {}", r.minimal, r.padded) };
            (r.equal, detail)
        });
        report.push_result(format!("gamma={} pad={}", fmt_vec(&gamma), fmt_vec(&pad)), outcome);
    }
    Ok(report)
}

/// For A3 (1 -> 2 -> 3) and 1 <= a, c <= 3: the generic cone of P3^a -> P1^c
/// is I2^a (+) P1^(c-a) when a <= c and I2^c (+) P3^(a-c)[1] when c <= a.
pub fn cone_table_a3(engine: &Engine) -> Result<SuiteReport> {
    let q = engine.quiver();
    if **q != Quiver::linear_a(3) {
        return Err(Error::QuiverMismatch);
    }
    let i2 = Representation::injective(q.clone(), Rationals, 1);
    let p1 = Representation::projective(q.clone(), Rationals, 0);
    let mut report = SuiteReport::new("cone-table-a3");
    for a in 1..=3i64 {
        for c in 1..=3i64 {
            let outcome = (|| {
                let dec = crate::generic::ProjDecomposition { gamma0: vec![c, 0, 0], gamma1: vec![0, 0, a] };
                let certified = engine.certified_cones(&dec)?;
                let mut expected = vec![i2.clone(); a.min(c) as usize];
                expected.extend(std::iter::repeat_n(p1.clone(), (c - a).max(0) as usize));
                let shifted = vec![0, 0, (a - c).max(0)];
                for (k, cone) in certified.cones.iter().enumerate() {
                    if cone.shifted != shifted {
                        return Ok((false, format!("shifted part {}", fmt_vec(&cone.shifted))));
                    }
                    let parts = decompose(&cone.module, engine.decompose_options(k as u64))?;
                    if !matches_up_to_iso(&parts, &expected)? {
                        let dims: Vec<String> = parts.iter().map(|p| fmt_vec(&p.dim_vector())).collect();
                        return Ok((false, format!("summands {}", dims.join(" "))));
                    }
                }
                let want = if a <= c {
                    format!("I2^{a} + P1^{}", c - a)
                } else {
                    format!("I2^{c} + P3[1]^{}", a - c)
                };
                Ok((true, format!("{} cones are {want}", certified.cones.len())))
            })();
            report.push_result(format!("a={a} c={c}"), outcome);
        }
    }
    Ok(report)
}

fn matches_up_to_iso(parts: &[Representation<Rationals>], expected: &[Representation<Rationals>]) -> Result<bool> {
    if parts.len() != expected.len() {
        return Ok(false);
    }
    let mut used = vec![false; expected.len()];
    for p in parts {
        let mut hit = false;
        for (k, e) in expected.iter().enumerate() {
            if !used[k] && is_isomorphic(p, e, 7)? {
                used[k] = true;
                hit = true;
                break;
            }
        }
        if !hit {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Settings;

    #[test]
    fn boxes() {
        assert_eq!(integer_box(2, -1, 1).len(), 9);
        assert_eq!(integer_box(0, 0, 3), vec![Vec::<i64>::new()]);
        assert_eq!(integer_box(2, 0, 1), vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn a2_finite_type_equality() {
        let e = Engine::new(Quiver::linear_a(2), Settings::default());
        let r = finite_type_equality(&e, &SuiteParams::default()).unwrap();
        assert_eq!(r.cases.len(), 27);
        assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
        assert_eq!(r.summary(), "PASS 27/27");
    }

    #[test]
    fn unknown_suite() {
        let e = Engine::new(Quiver::linear_a(2), Settings::default());
        assert!(run_suite(&e, "nope", &SuiteParams::default()).is_err());
        assert_eq!(cone_table_a3(&e).unwrap_err(), Error::QuiverMismatch);
    }
}
