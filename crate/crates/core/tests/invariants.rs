mod common;

use common::invariants::violations;
use common::{all_vectors, library_set, symp_dual, to_symp, OField};
use proptest::prelude::*;
use subcodes::AdditiveCode;

const FIELDS: [(u32, u32); 6] = [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2), (2, 3)];

fn code_strategy() -> impl Strategy<Value = (u32, u32, usize, bool, Vec<Vec<u32>>)> {
    prop::sample::select(&FIELDS[..])
        .prop_flat_map(|(p, m)| (Just(p), Just(m), 1usize..=3, any::<bool>()))
        .prop_flat_map(|(p, m, n, linear)| {
            let q = p.pow(m);
            (
                Just(p),
                Just(m),
                Just(n),
                Just(linear),
                prop::collection::vec(prop::collection::vec(0..q, 2 * n), 0..=2 * n + 1),
            )
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn random_codes_satisfy_invariants((p, m, n, linear, gens) in code_strategy()) {
        let o = OField::new(p, m);
        let t = if linear { m } else { 1 };
        let sv: Vec<_> = gens.iter().map(|g| to_symp(&o, g)).collect();
        let c = AdditiveCode::from_generators(&o.spec(), n, t, &sv).unwrap();
        let v = violations(&c);
        prop_assert!(v.is_empty(), "{:?}", v);
    }
}

/// Every binary code of length ≤ 2 generated by at most four vectors.
#[test]
fn small_binary_codes_exhaustively() {
    let o = OField::new(2, 1);
    let f = o.spec();
    let mut count = 0;
    for n in 1..=2 {
        let vecs: Vec<_> = all_vectors(2, 2 * n).filter(|v| v.iter().any(|&x| x != 0)).collect();
        let total = vecs.len();
        for mask in 0u32..(1 << total) {
            if mask.count_ones() > 4 {
                continue;
            }
            let gens: Vec<_> = (0..total).filter(|i| mask >> i & 1 == 1).map(|i| to_symp(&o, &vecs[i])).collect();
            let c = AdditiveCode::from_generators(&f, n, 1, &gens).unwrap();
            let v = violations(&c);
            assert!(v.is_empty(), "{gens:?}: {v:?}");
            let set = library_set(&c, &o);
            assert_eq!(library_set(&c.dual_symp(), &o), symp_dual(&o, &set, n));
            count += 1;
        }
    }
    assert!(count > 1000);
}
