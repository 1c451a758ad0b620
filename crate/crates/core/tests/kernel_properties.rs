use num_bigint::BigUint;
use proptest::prelude::*;

use stable_index_core::oracle::{enumerate_walks, reachable_from};
use stable_index_core::{
    exact_walk_count, glasses_matrix, theta, BoolMatrix, CappedMatrix, DenseMatrix, Permutation, ZeroOneProduct,
};

fn naive_product(a: &BoolMatrix, b: &BoolMatrix) -> Vec<Vec<u64>> {
    let n = a.n();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).filter(|&k| a.get(i, k) && b.get(k, j)).count() as u64).collect())
        .collect()
}

fn arb_matrix(max_n: usize) -> impl Strategy<Value = BoolMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| BoolMatrix::from_fn(n, |i, j| bits[i * n + j]))
    })
}

fn arb_pair(max_n: usize) -> impl Strategy<Value = (BoolMatrix, BoolMatrix)> {
    (1..=max_n).prop_flat_map(|n| {
        let m = move |bits: Vec<bool>| BoolMatrix::from_fn(n, |i, j| bits[i * n + j]);
        (
            proptest::collection::vec(any::<bool>(), n * n).prop_map(m),
            proptest::collection::vec(any::<bool>(), n * n).prop_map(m),
        )
    })
}

fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn check_products(a: &BoolMatrix, b: &BoolMatrix) {
    let exact = naive_product(a, b);
    let n = a.n();
    let capped = a.to_capped().capped_product(&b.to_capped()).unwrap();
    let boolean = a.bool_product(b).unwrap();
    for i in 0..n {
        for j in 0..n {
            assert_eq!(capped.get(i, j) as u64, exact[i][j].min(2));
            assert_eq!(boolean.get(i, j), exact[i][j] >= 1);
        }
    }
    let first = (0..n * n).map(|p| (p / n, p % n)).find(|&(i, j)| exact[i][j] >= 2);
    match a.zero_one_product(b).unwrap() {
        ZeroOneProduct::Overflow { first: f } => assert_eq!(Some(f), first),
        ZeroOneProduct::ZeroOne(m) => {
            assert_eq!(first, None);
            assert_eq!(m, boolean);
        }
    }
}

#[test]
fn capped_product_exhaustive_up_to_three() {
    for n in 1..=3usize {
        let total = 1u64 << (n * n);
        for x in 0..total {
            let a = BoolMatrix::from_code(n, x);
            for y in 0..total {
                check_products(&a, &BoolMatrix::from_code(n, y));
            }
        }
    }
}

#[test]
fn capped_with_twos_stays_saturated() {
    let a = CappedMatrix::from_fn(3, |i, j| ((i + 2 * j) % 3) as u64);
    let b = CappedMatrix::from_fn(3, |i, j| ((i * j + 1) % 3) as u64);
    let c = a.capped_product(&b).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            let exact: u64 = (0..3).map(|k| a.get(i, k) as u64 * b.get(k, j) as u64).sum();
            assert_eq!(c.get(i, j) as u64, exact.min(2));
        }
    }
}

/// DERIVED: A² for g(2,3) has no entry ≥ 2, checked by counting 2-walks.
#[test]
fn glasses_two_three_squared_is_zero_one() {
    let g = glasses_matrix(2, 2, 3).unwrap();
    let sq = g.to_capped().capped_product(&g.to_capped()).unwrap();
    assert!(!sq.has_overflow());
    for i in 0..5 {
        for j in 0..5 {
            assert!(enumerate_walks(&g, i, j, 2).len() <= 1);
        }
    }
    assert!(theta(&g).unwrap() >= 2);
}

/// DERIVED: in g(2,3) some pair has two 7-walks while every shorter length
/// has at most one walk per pair; counts come from DFS enumeration.
#[test]
fn glasses_two_three_walk_counts() {
    let g = glasses_matrix(2, 2, 3).unwrap();
    for k in 0..=6 {
        for i in 0..5 {
            for j in 0..5 {
                let brute = enumerate_walks(&g, i, j, k).len();
                assert!(brute <= 1);
                assert_eq!(exact_walk_count(&g, k, i, j).unwrap(), BigUint::from(brute));
            }
        }
    }
    let doubled: Vec<(usize, usize)> = (0..5)
        .flat_map(|i| (0..5).map(move |j| (i, j)))
        .filter(|&(i, j)| enumerate_walks(&g, i, j, 7).len() == 2)
        .collect();
    assert!(!doubled.is_empty());
    for (i, j) in doubled {
        assert_eq!(exact_walk_count(&g, 7, i, j).unwrap(), BigUint::from(2u8));
    }
}

fn transitive_closure(a: &BoolMatrix) -> Vec<Vec<bool>> {
    (0..a.n()).map(|v| reachable_from(a, v)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn capped_product_matches_exact((a, b) in arb_pair(5)) {
        check_products(&a, &b);
    }

    #[test]
    fn walk_count_matches_integer_power(a in arb_matrix(5), k in 0usize..=12, i in 0usize..5, j in 0usize..5) {
        let n = a.n();
        let (i, j) = (i % n, j % n);
        let power = DenseMatrix::<BigUint>::from_bool(&a).pow(k).unwrap();
        prop_assert_eq!(&exact_walk_count(&a, k, i, j).unwrap(), power.get(i, j));
    }

    #[test]
    fn condensation_is_a_topological_partition(a in arb_matrix(7)) {
        let n = a.n();
        let blocks = a.condensation();
        let mut block_of = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            for &v in &block.vertices {
                prop_assert_eq!(block_of[v], usize::MAX);
                block_of[v] = b;
            }
        }
        prop_assert!(block_of.iter().all(|&b| b != usize::MAX));
        for (u, v) in a.ones_positions() {
            prop_assert!(block_of[u] <= block_of[v]);
        }
        // blocks are exactly the mutual-reachability classes
        let reach = transitive_closure(&a);
        for u in 0..n {
            for v in 0..n {
                prop_assert_eq!(block_of[u] == block_of[v], reach[u][v] && reach[v][u]);
            }
        }
        prop_assert_eq!(a.is_irreducible(), if n == 1 { a.get(0, 0) } else { blocks.len() == 1 });
    }

    #[test]
    fn permutation_preserves_invariants((a, p) in arb_matrix(5).prop_flat_map(|a| { let n = a.n(); (Just(a), arb_perm(n)) })) {
        let b = a.permute(&p).unwrap();
        prop_assert_eq!(theta(&a), theta(&b));
        prop_assert_eq!(a.is_irreducible(), b.is_irreducible());
        let shape = |m: &BoolMatrix| {
            let mut s: Vec<_> = m.condensation().iter().map(|blk| (blk.len(), blk.kind)).collect();
            s.sort();
            s
        };
        prop_assert_eq!(shape(&a), shape(&b));
        prop_assert_eq!(b.permute(&p.inverse()).unwrap(), a);
    }
}
