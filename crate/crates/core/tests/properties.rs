use std::sync::Arc;

use clusterchar::rep::{ext_dim, gaussian_binomial, grassmannian_euler, hom_dim};
use clusterchar::{Engine, LaurentPoly, Quiver, Rationals, Representation, Seed, Settings};
use num_bigint::BigInt;
use proptest::prelude::*;

fn laurent(nvars: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(-3i64..=3, nvars), -5i64..=5), 0..5).prop_map(move |terms| {
        LaurentPoly::from_terms(nvars, terms.into_iter().map(|(e, c)| (e, BigInt::from(c))))
    })
}

fn small_quiver() -> impl Strategy<Value = Quiver> {
    prop_oneof![
        Just(Quiver::linear_a(2)),
        Just(Quiver::linear_a(3)),
        Just(Quiver::kronecker()),
        Just(Quiver::new(3, &[(1, 2), (3, 2)]).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in laurent(3), b in laurent(3), c in laurent(3)) {
        let ab = a.checked_mul(&b).unwrap();
        prop_assert_eq!(&ab, &b.checked_mul(&a).unwrap());
        prop_assert_eq!(
            ab.checked_mul(&c).unwrap(),
            a.checked_mul(&b.checked_mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.checked_mul(&b.checked_add(&c).unwrap()).unwrap(),
            ab.checked_add(&a.checked_mul(&c).unwrap()).unwrap()
        );
        prop_assert!(a.checked_sub(&a).unwrap().is_zero());
        prop_assert_eq!(a.checked_mul(&LaurentPoly::one(3)).unwrap(), a.clone());
    }

    #[test]
    fn exact_division_inverts_multiplication(a in laurent(2), b in laurent(2)) {
        prop_assume!(!b.is_zero());
        let product = a.checked_mul(&b).unwrap();
        prop_assert_eq!(product.div_exact(&b).unwrap(), a);
    }

    #[test]
    fn text_round_trip(a in laurent(3)) {
        let text = a.to_string();
        prop_assert_eq!(LaurentPoly::parse(3, &text).unwrap(), a.clone());
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<LaurentPoly>(&json).unwrap(), a);
    }

    #[test]
    fn mutation_is_involution(q in small_quiver(), path in prop::collection::vec(0usize..3, 0..6), k in 0usize..3) {
        let n = q.vertex_count();
        let mut seed = Seed::initial(&q);
        for v in path {
            seed = seed.mutate(v % n).unwrap();
            prop_assert!(seed.cluster.iter().all(|x| x.has_monomial_denominator()));
        }
        let k = k % n;
        prop_assert_eq!(seed.mutate(k).unwrap().mutate(k).unwrap(), seed);
    }

    #[test]
    fn euler_form_identity(
        q in small_quiver(),
        d in prop::collection::vec(0usize..=2, 3),
        e in prop::collection::vec(0usize..=2, 3),
        s in any::<u64>(),
    ) {
        let n = q.vertex_count();
        let q = Arc::new(q);
        let m = Representation::random(q.clone(), Rationals, &d[..n], s, 3);
        let k = Representation::random(q.clone(), Rationals, &e[..n], s ^ 0xABCD, 3);
        let lhs = hom_dim(&m, &k).unwrap() as i64 - ext_dim(&m, &k).unwrap() as i64;
        prop_assert_eq!(lhs, q.euler_form(&m.dim_vector(), &k.dim_vector()).unwrap());
    }
}

#[test]
fn single_vertex_grassmannians_are_binomials() {
    let point = Arc::new(Quiver::linear_a(1));
    for d in 0..=5usize {
        let m = Representation::zero(point.clone(), Rationals);
        let m = if d == 0 { m } else { Representation::random(point.clone(), Rationals, &[d], 1, 1) };
        for e in 0..=d {
            let count = grassmannian_euler(&m, &[e as i64], 1_000_000).unwrap();
            let pascal = (0..e).fold(1i64, |acc, i| acc * (d - i) as i64 / (i as i64 + 1));
            assert_eq!(count.euler, pascal, "d={d} e={e}");
            for (&p, &points) in &count.counts {
                assert_eq!(points, gaussian_binomial(d, e, p).unwrap());
            }
        }
    }
}

#[test]
fn generic_characters_are_seed_independent() {
    let q = Quiver::new(3, &[(1, 2), (3, 2)]).unwrap();
    let a = Engine::new(q.clone(), Settings::default());
    let b = Engine::new(q, Settings { rng_seed: 77, ..Settings::default() });
    for gamma in clusterchar::suites::integer_box(3, -1, 1) {
        assert_eq!(a.generic_character(&gamma).unwrap(), b.generic_character(&gamma).unwrap(), "{gamma:?}");
    }
}

#[test]
fn cache_file_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str| {
        let path = dir.path().join(name);
        let e = Engine::new(Quiver::kronecker(), Settings::default()).with_cache_file(&path).unwrap();
        for gamma in clusterchar::suites::integer_box(2, -2, 2) {
            e.generic_character(&gamma).unwrap();
        }
        e.flush_cache().unwrap();
        std::fs::read(path).unwrap()
    };
    assert_eq!(write("a.json"), write("b.json"));
}

#[test]
fn corrupt_cache_entries_are_dropped() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    std::fs::write(&path, "not json at all").unwrap();
    let e = Engine::new(Quiver::linear_a(2), Settings::default()).with_cache_file(&path).unwrap();
    assert_eq!(e.cache().unwrap().dropped(), 1);
    assert_eq!(e.generic_character(&[0, -1]).unwrap().to_string(), "x2");
    e.flush_cache().unwrap();
    let again = Engine::new(Quiver::linear_a(2), Settings::default()).with_cache_file(&path).unwrap();
    assert!(again.is_cached(&[0, -1]));
}

#[test]
fn dynkin_cluster_variables_are_characters_of_indecomposables() {
    use clusterchar::rep::indecomposable_for_root;
    use clusterchar::ClusterObject;
    for q in [Quiver::linear_a(2), Quiver::linear_a(3), Quiver::new(3, &[(2, 1), (2, 3)]).unwrap()] {
        let engine = Engine::new(q.clone(), Settings::default());
        let arc = engine.quiver().clone();
        let mut characters = std::collections::BTreeSet::new();
        for root in q.positive_roots().unwrap() {
            let m = indecomposable_for_root(&arc, &root).unwrap();
            characters.insert(engine.cc_object(&ClusterObject::from_module(m)).unwrap());
        }
        for i in 0..q.vertex_count() {
            characters.insert(engine.cc_object(&ClusterObject::shifted_projective(arc.clone(), i)).unwrap());
        }
        let variables: std::collections::BTreeSet<_> =
            clusterchar::enumerate_seeds(&q, 1000).unwrap().variables.into_keys().collect();
        assert_eq!(characters, variables);
    }
}
