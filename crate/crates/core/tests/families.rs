use num_integer::Integer;
use proptest::prelude::*;

use stable_index_core::oracle::enumerate_walks;
use stable_index_core::verify::glasses_shapes;
use stable_index_core::{
    build_glasses, circulant, extremal_census, extremal_pair, g_as_coprime_max, g_of, glasses_matrix, is_isomorphic,
    recognize_glasses, stable_index, theta, witness_walks, Digraph, HorizonPolicy, Permutation,
};

/// θ(g(p,2,q)) = pq for coprime p, q ≥ 2.
#[test]
fn glasses_theta_is_product() {
    for p in 2..=22usize {
        for q in 2..=(24 - p) {
            if p.gcd(&q) != 1 {
                continue;
            }
            let a = glasses_matrix(p, 2, q).unwrap();
            let got = stable_index(&a, HorizonPolicy::ExplicitCap { cap: p * q + 1 }).unwrap().theta();
            assert_eq!(got, Some(p * q), "g({p},{q})");
        }
    }
}

/// θ(g(p,k,q)) ≤ lcm(p,q) + k − 2.
#[test]
fn glasses_lcm_bound() {
    for p in 2..=8usize {
        for q in 2..=8usize {
            for k in 2..=5 {
                let a = glasses_matrix(p, k, q).unwrap();
                let cap = p.lcm(&q) + k - 2;
                let t = stable_index(&a, HorizonPolicy::ExplicitCap { cap }).unwrap().theta();
                assert!(t.is_some(), "g({p},{k},{q}) exceeds {cap}");
            }
        }
    }
}

#[test]
fn extremal_pairs_are_coprime_maximizers() {
    for n in 7..=200 {
        let (p, q) = extremal_pair(n).unwrap();
        assert_eq!(p + q, n);
        assert_eq!(p.gcd(&q), 1);
        let (best, _) = g_as_coprime_max(n).unwrap();
        assert_eq!(best as i64, g_of(n), "n = {n}");
        assert_eq!((p * q) as i64, g_of(n));
    }
}

#[test]
fn census_members_attain_g() {
    for n in 7..=24 {
        let census = extremal_census(n).unwrap();
        for a in census.matrices() {
            assert_eq!(theta(&a), Some(census.g_value), "n = {n}");
        }
    }
}

#[test]
fn census_beats_every_other_glasses_shape() {
    for n in 7..=16 {
        let census = extremal_census(n).unwrap();
        for (p, k, q) in glasses_shapes(n) {
            let t = theta(&glasses_matrix(p, k, q).unwrap());
            let member = census.contains_shape((p, k, q));
            assert_eq!(t == Some(census.g_value), member, "g({p},{k},{q}) at n = {n}");
        }
    }
}

#[test]
fn witness_walks_appear_in_enumeration() {
    let a = glasses_matrix(2, 2, 3).unwrap();
    for i in 0..5 {
        for j in 0..5 {
            let all = enumerate_walks(&a, i, j, 7);
            match witness_walks(&a, i, j, 7) {
                Ok((lo, hi)) => {
                    assert_eq!(all.len(), 2);
                    assert_eq!(&lo, all.first().unwrap());
                    assert_eq!(&hi, all.last().unwrap());
                }
                Err(_) => assert!(all.len() < 2),
            }
        }
    }
}

#[test]
fn circulants_are_infinite() {
    for n in 2..=12 {
        let c = circulant(n);
        assert_eq!(theta(&c), None);
        assert!(stable_index(&c, HorizonPolicy::CycleDetect).unwrap().theta().is_none());
    }
}

fn arb_glasses() -> impl Strategy<Value = (usize, usize, usize)> {
    (1usize..=5, 2usize..=4, 1usize..=5)
}

fn arb_perm_of(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Permutation::new(v).unwrap())
}

fn relabel(d: &Digraph, p: &Permutation) -> Digraph {
    Digraph::new(d.n(), d.arcs().map(|(u, v)| (p.apply(u), p.apply(v)))).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn recognition_survives_relabeling(
        (shape, perm) in arb_glasses().prop_flat_map(|(p, k, q)| (Just((p, k, q)), arb_perm_of(p + k - 2 + q)))
    ) {
        let (d, spec) = build_glasses(shape.0, shape.1, shape.2).unwrap();
        let h = relabel(&d, &perm);
        let found = recognize_glasses(&h).expect("relabeled glasses are recognized");
        prop_assert_eq!(found.shape(), spec.shape());
        prop_assert!(is_isomorphic(&d, &h).unwrap());
        prop_assert_eq!(theta(&d.to_matrix()), theta(&h.to_matrix()));
    }

    #[test]
    fn isomorphism_is_an_equivalence(
        (shape, p1, p2) in arb_glasses().prop_flat_map(|(p, k, q)| {
            let n = p + k - 2 + q;
            (Just((p, k, q)), arb_perm_of(n), arb_perm_of(n))
        })
    ) {
        let (d, _) = build_glasses(shape.0, shape.1, shape.2).unwrap();
        let x = relabel(&d, &p1);
        let y = relabel(&x, &p2);
        prop_assert!(is_isomorphic(&d, &d).unwrap());
        prop_assert_eq!(is_isomorphic(&d, &x).unwrap(), is_isomorphic(&x, &d).unwrap());
        prop_assert!(is_isomorphic(&d, &y).unwrap());
        // a different shape on the same vertex count is never isomorphic
        let (p, k, q) = shape;
        if p != q {
            let (swapped, _) = build_glasses(q, k, p).unwrap();
            prop_assert!(!is_isomorphic(&d, &swapped).unwrap());
        }
    }
}
