mod common;

use std::collections::BTreeSet;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subcodes::codes::{io, min_swt, trace_symp};
use subcodes::gf::conway_polynomial;
use subcodes::subsystem::Purity;
use subcodes::{AdditiveCode, AnalysisConfig, SubsystemCode};

const FIELDS: [(u32, u32); 8] = [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2)];

#[test]
fn field_arithmetic_matches_oracle() {
    for (p, m) in FIELDS {
        let o = OField::new(p, m);
        let f = o.spec();
        if m > 1 {
            assert_eq!(conway_polynomial(p, m).unwrap(), o.modulus, "modulus {p}^{m}");
        }
        for a in 0..o.q() {
            assert_eq!(f.trace(a), o.trace(a));
            for b in 0..o.q() {
                assert_eq!(f.add(a, b), o.add(a, b), "{a}+{b} in {p}^{m}");
                assert_eq!(f.mul(a, b), o.mul(a, b), "{a}*{b} in {p}^{m}");
            }
            if a != 0 {
                assert_eq!(f.inv(a).ok(), o.inv(a));
            }
        }
    }
}

#[test]
fn prime_field_moduli_match() {
    // for m = 1 the oracle does plain modular arithmetic; check the library
    // modulus defines a primitive root
    for p in [2u32, 3, 5, 7] {
        let c = conway_polynomial(p, 1).unwrap();
        let g = (p - c[0] % p) % p;
        let order = (1..p).find(|&k| (g as u64).pow(k) % p as u64 == 1).unwrap();
        assert!(p == 2 || order == p - 1);
    }
}

#[test]
fn trace_symplectic_form_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (p, m) in FIELDS {
        let o = OField::new(p, m);
        for _ in 0..50 {
            let n = rng.gen_range(1..4);
            let u = random_vector(&mut rng, o.q(), 2 * n);
            let v = random_vector(&mut rng, o.q(), 2 * n);
            assert_eq!(trace_symp(&to_symp(&o, &u), &to_symp(&o, &v)).unwrap(), symp(&o, &u, &v));
        }
    }
}

fn random_code(rng: &mut ChaCha8Rng, o: &OField, n: usize, t: u32) -> (AdditiveCode, Vec<Vector>) {
    let k = rng.gen_range(1..=2 * n);
    let gens: Vec<Vector> = (0..k).map(|_| random_vector(rng, o.q(), 2 * n)).collect();
    let sv: Vec<_> = gens.iter().map(|g| to_symp(o, g)).collect();
    (AdditiveCode::from_generators(&o.spec(), n, t, &sv).unwrap(), gens)
}

#[test]
fn duals_and_distances_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let cfg = AnalysisConfig::default();
    let mut checked = 0;
    for (p, m, nmax) in [(2, 1, 4), (3, 1, 3), (2, 2, 2), (3, 2, 1)] {
        let o = OField::new(p, m);
        for _ in 0..40 {
            let n = rng.gen_range(1..=nmax);
            let t = if m > 1 && rng.gen_bool(0.5) { m } else { 1 };
            let (code, _) = random_code(&mut rng, &o, n, t);
            let set = library_set(&code, &o);
            assert_eq!(log_p(p, set.len()), code.log_p_size());
            let dual = library_set(&code.dual_symp().with_coeff_degree(1).unwrap(), &o);
            assert_eq!(dual, symp_dual(&o, &set, n), "dual of {code:?}");
            if set.len() > 1 {
                let brute = set.iter().map(|v| swt(v)).filter(|&w| w > 0).min().unwrap();
                assert_eq!(min_swt(&code, &cfg).unwrap(), brute);
            }
            if code.is_zero() {
                continue;
            }
            let derived = SubsystemCode::derive(&code, &cfg).unwrap();
            let b = brute_params(&o, &set, n);
            assert_eq!((derived.k_exp(), derived.r_exp()), (b.k_exp, b.r_exp), "{code:?}");
            assert_eq!(derived.distance().unwrap().value, b.d, "{code:?}");
            let pure = b.swt_c.is_none_or(|w| w >= b.d);
            match derived.purity() {
                Purity::Pure => assert!(pure),
                Purity::Impure { swt_c } => assert_eq!(Some(swt_c), b.swt_c),
                other => panic!("purity {other:?} on an enumerable code"),
            }
            checked += 1;
        }
    }
    assert!(checked >= 100);
}

fn data_file(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/codes").join(name)
}

#[test]
fn bundled_codes_match_brute_force() {
    let o = OField::new(2, 1);
    let cfg = AnalysisConfig::default();
    for (name, want) in [("five_qubit.json", (1, 0, 3, Some(4))), ("bacon_shor.json", (1, 4, 3, Some(2)))] {
        let code = io::read_additive(data_file(name)).unwrap();
        let set = library_set(&code, &o);
        let b = brute_params(&o, &set, code.n());
        assert_eq!((b.k_exp, b.r_exp, b.d, b.swt_c), want, "{name}");
        let derived = SubsystemCode::derive(&code, &cfg).unwrap();
        assert_eq!((derived.k_exp(), derived.r_exp(), derived.distance().unwrap().value), (b.k_exp, b.r_exp, b.d));
    }
}

#[test]
fn hermitian_expansion_matches_oracle() {
    use subcodes::rules::hermitian_to_symplectic;
    use subcodes::{ClassicalCode, Tower};
    // X = span{(1,1)} over F_4 expands to {00|00, 11|00, 00|11, 11|11}
    let tower = Tower::conway(2, 1).unwrap();
    let x = ClassicalCode::from_generators(tower.ext(), 2, vec![vec![1, 1]]).unwrap();
    let c = hermitian_to_symplectic(&x, &tower).unwrap();
    let o = OField::new(2, 1);
    let got = library_set(&c.with_coeff_degree(1).unwrap(), &o);
    let want: BTreeSet<Vector> =
        [vec![0, 0, 0, 0], vec![1, 1, 0, 0], vec![0, 0, 1, 1], vec![1, 1, 1, 1]].into_iter().collect();
    assert_eq!(got, want);

    // X = span{(1,0)}: ⟨x|x⟩_h = 1
    let bad = ClassicalCode::from_generators(tower.ext(), 2, vec![vec![1, 0]]).unwrap();
    assert!(hermitian_to_symplectic(&bad, &tower).is_err());
    let oe = OField::new(2, 2);
    assert_eq!(hermitian(&oe, &[1, 0], &[1, 0]), 1);
}
