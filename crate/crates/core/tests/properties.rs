use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Zero};
use proptest::prelude::*;
use qchrom_core::oracle::brute_spectrum;
use qchrom_core::spectrum::enumerator::{dual_code, duality_check, macwilliams_transform, span, WeightEnumerator};
use qchrom_core::spectrum::{eigenvalue_of_type, full_spectrum_with};
use qchrom_core::{
    binomial, enumerate_types, families, full_spectrum, krawtchouk, multinomial, type_of, Budget, CayleySpec, Strategy as Exec,
    TypeVector,
};

/// A type vector of length `p` summing to `n`.
fn type_vector(p: u32, n: u32) -> impl Strategy<Value = TypeVector> {
    prop::collection::vec(0..=n, (p - 1) as usize).prop_filter_map("overfull", move |head| {
        let used: u32 = head.iter().sum();
        (used <= n).then(|| {
            let mut counts = vec![n - used];
            counts.extend(head);
            TypeVector::new(counts).unwrap()
        })
    })
}

/// `t` with every symbol multiplied by `c`.
fn scaled(t: &TypeVector, c: u32) -> TypeVector {
    let p = t.p();
    let mut counts = vec![0; p as usize];
    for (a, &k) in t.counts().iter().enumerate() {
        counts[(a as u32 * c % p) as usize] += k;
    }
    TypeVector::new(counts).unwrap()
}

/// Small Cayley graphs the oracle can enumerate. Generator sets are closed
/// under all nonzero scalings so that every eigenvalue is an integer.
fn small_spec() -> impl Strategy<Value = CayleySpec> {
    prop_oneof![(Just(2u32), 2u32..=8), (Just(3u32), 2u32..=5), (Just(5u32), 1u32..=3)]
        .prop_flat_map(|(p, n)| {
            prop::collection::vec(type_vector(p, n), 1..=3).prop_filter_map("only the zero type", move |gens| {
                let gens: Vec<_> = gens
                    .iter()
                    .filter(|t| !t.is_zero())
                    .flat_map(|t| (1..p).map(move |c| scaled(t, c)))
                    .collect();
                (!gens.is_empty()).then(|| CayleySpec::new(p, n, gens).unwrap())
            })
        })
}

fn ternary_code() -> impl Strategy<Value = (u32, Vec<Vec<u32>>)> {
    (1u32..=6).prop_flat_map(|n| {
        (
            Just(n),
            prop::collection::vec(prop::collection::vec(0u32..3, n as usize), 1..=3),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn engine_matches_oracle(spec in small_spec()) {
        let budget = Budget::default();
        let engine = full_spectrum(&spec, &budget).unwrap();
        let brute = brute_spectrum(&spec, &budget).unwrap();
        prop_assert_eq!(engine.entries(), brute.entries());
    }

    #[test]
    fn trace_identities_hold(spec in small_spec()) {
        let report = full_spectrum(&spec, &Budget::default()).unwrap();
        prop_assert!(report.verify_trace_identities().is_ok());
        prop_assert_eq!(&report.lambda_max().value, &BigInt::from(spec.degree()));
    }

    #[test]
    fn spectrum_is_negation_symmetric(spec in small_spec()) {
        for t in enumerate_types(spec.p(), spec.n(), false).unwrap() {
            prop_assert_eq!(
                eigenvalue_of_type(&spec, &t).unwrap(),
                eigenvalue_of_type(&spec, &t.negated()).unwrap()
            );
        }
    }

    #[test]
    fn strategies_agree(spec in small_spec()) {
        let budget = Budget::default();
        prop_assert_eq!(
            full_spectrum_with(&spec, &budget, Exec::Sequential).unwrap(),
            full_spectrum_with(&spec, &budget, Exec::Parallel).unwrap()
        );
    }

    #[test]
    fn type_is_permutation_invariant(v in prop::collection::vec(0u32..5, 1..12), seed in any::<u64>()) {
        let mut w = v.clone();
        let len = w.len();
        for i in (1..len).rev() {
            w.swap(i, (seed as usize).wrapping_mul(i + 7) % (i + 1));
        }
        prop_assert_eq!(type_of(&v, 5).unwrap(), type_of(&w, 5).unwrap());
    }

    #[test]
    fn hamming_eigenvalues_are_krawtchouk(n in 1u32..=24, r in 1u32..=24) {
        prop_assume!(r <= n);
        let spec = families::hamming(n, r).unwrap();
        for w in 0..=n {
            let t = TypeVector::new(vec![n - w, w]).unwrap();
            prop_assert_eq!(eigenvalue_of_type(&spec, &t).unwrap(), krawtchouk(n, r, w).unwrap());
        }
    }

    #[test]
    fn krawtchouk_orthogonality(n in 1u32..=20, r in 0u32..=20, s in 0u32..=20) {
        prop_assume!(r <= n && s <= n);
        let mut sum = BigInt::zero();
        for w in 0..=n {
            sum += BigInt::from(binomial(n as u64, w as u64))
                * krawtchouk(n, r, w).unwrap()
                * krawtchouk(n, s, w).unwrap();
        }
        let expected = if r == s {
            BigInt::from(binomial(n as u64, r as u64)) << n
        } else {
            BigInt::zero()
        };
        prop_assert_eq!(sum, expected);
    }

    #[test]
    fn multinomials_sum_to_group_order(p in prop::sample::select(vec![2u32, 3, 5, 7]), n in 0u32..=9) {
        let total: BigUint = enumerate_types(p, n, false)
            .unwrap()
            .map(|t| multinomial(n, &t).unwrap())
            .sum();
        prop_assert_eq!(total, BigUint::from(p).pow(n));
    }

    #[test]
    fn duality_identity(s in type_vector(3, 7), t in type_vector(3, 7)) {
        let (a, b) = duality_check(&s, &t).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn macwilliams_biduality((n, gens) in ternary_code()) {
        let code = span(3, n, &gens).unwrap();
        let a = WeightEnumerator::of_words(3, n, &code).unwrap();
        let dual = macwilliams_transform(&a, &BigUint::from(code.len())).unwrap();
        let enumerated = WeightEnumerator::of_words(3, n, &dual_code(3, n, &code)).unwrap();
        prop_assert_eq!(&dual, &enumerated);
        prop_assert_eq!(dual.size() * BigUint::from(code.len()), BigUint::from(3u32).pow(n));
        prop_assert_eq!(macwilliams_transform(&dual, &dual.size()).unwrap(), a);
    }
}

#[test]
fn trivial_code_transforms_to_whole_space() {
    let n = 4;
    let zero = WeightEnumerator::of_words(3, n, &[vec![0; n as usize]]).unwrap();
    let whole = macwilliams_transform(&zero, &BigUint::one()).unwrap();
    assert_eq!(whole.size(), BigUint::from(81u32));
}
