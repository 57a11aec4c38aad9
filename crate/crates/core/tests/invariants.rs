//! Property-based invariants across the library.

use proptest::prelude::*;

use match_ybo::classify::{classify, no_minus_rep};
use match_ybo::diagrams::{configuration_perm, enumerate_transversal, flip_configuration};
use match_ybo::matchcat::{act_flip, act_perm, x_equivalent, x_normalize};
use match_ybo::oracle::Fp;
use match_ybo::perm::Permutation;
use match_ybo::recipe::{generic_point, rec, Germ};
use match_ybo::scalar::{format_scalar, parse_scalar, ratio};
use match_ybo::signature::{signature_check, signature_formula};
use match_ybo::ybe::{constraint_residuals, is_solution, is_solution_by_subsets, ybe_residual_direct};
use match_ybo::{EdgeBlock, MatchMatrix2, Scalar};

fn small_scalar() -> impl Strategy<Value = Scalar> {
    (-3i64..=3, 1i64..=2).prop_map(|(n, d)| ratio(n, d))
}

fn small_matrix(n: usize) -> impl Strategy<Value = MatchMatrix2> {
    let edges = n * (n - 1) / 2;
    (
        prop::collection::vec(small_scalar(), n),
        prop::collection::vec(prop::array::uniform4(small_scalar()), edges),
    )
        .prop_map(|(v, e)| {
            let blocks = e.into_iter().map(|[a, b, c, d]| EdgeBlock::new(a, b, c, d)).collect();
            MatchMatrix2::new(v, blocks).unwrap()
        })
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(images).unwrap())
}

/// A transversal element on `n` vertices, a relabelling and a seed.
fn germ_case(max_n: usize) -> impl Strategy<Value = (usize, usize, Permutation, u64)> {
    (1..=max_n).prop_flat_map(|n| {
        let count = enumerate_transversal(n).len();
        (Just(n), 0..count, permutation(n), any::<u64>())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_text_round_trip(n in -1000i64..1000, d in 1i64..1000) {
        let x = ratio(n, d);
        prop_assert_eq!(parse_scalar(&format_scalar(&x)).unwrap(), x);
    }

    #[test]
    fn three_methods_agree(m in (3usize..=4).prop_flat_map(small_matrix)) {
        let d = ybe_residual_direct(&m).zero;
        prop_assert_eq!(constraint_residuals(&m).zero, d);
        prop_assert_eq!(is_solution_by_subsets(&m).zero, d);
    }

    #[test]
    fn matrix_symmetries(m in small_matrix(4), omega in permutation(4), sigma in permutation(4)) {
        prop_assert_eq!(act_flip(&act_flip(&m)), m.clone());
        let xn = x_normalize(&m);
        prop_assert_eq!(x_normalize(&xn), xn.clone());
        let composed = act_perm(&act_perm(&m, &omega), &sigma);
        prop_assert_eq!(composed, act_perm(&m, &omega.then(&sigma)));
        prop_assert_eq!(act_perm(&act_perm(&m, &omega), &omega.inverse()), m.clone());
        prop_assert_eq!(act_flip(&act_perm(&m, &omega)), act_perm(&act_flip(&m), &omega));
        prop_assert_eq!(ybe_residual_direct(&act_perm(&m, &omega)).zero, ybe_residual_direct(&m).zero);
    }

    #[test]
    fn rec_solves_and_classifies((n, k, omega, seed) in germ_case(4)) {
        let c = configuration_perm(&enumerate_transversal(n)[k], &omega).normalized();
        let g = Germ::new(c.clone(), generic_point(&c, seed)).unwrap();
        let m = rec(&g);
        prop_assert!(is_solution(&m));
        prop_assert!(is_solution(&act_flip(&m)));
        let (c2, p2) = classify(&m).unwrap();
        prop_assert_eq!(&c2, &c);
        prop_assert!(x_equivalent(&rec(&Germ::new(c2, p2).unwrap()), &m));
        prop_assert!(signature_check(&g).unwrap().agrees());
    }

    #[test]
    fn configuration_invariants((n, k, omega, _seed) in germ_case(5)) {
        let c = enumerate_transversal(n)[k].clone();
        let image = configuration_perm(&c, &omega);
        prop_assert_eq!(signature_formula(&image), signature_formula(&c));
        prop_assert_eq!(signature_formula(&flip_configuration(&c)), signature_formula(&c));
        prop_assert_eq!(flip_configuration(&flip_configuration(&image)), image.clone());
        let (d, _) = no_minus_rep(&image);
        prop_assert_eq!(d.multiset(), c.multiset());
    }

    #[test]
    fn field_arithmetic(a in 1i64..11, b in -50i64..50) {
        let (x, y) = (Fp::new(a, 11), Fp::new(b, 11));
        prop_assert_eq!(x * x.inverse().unwrap(), Fp::new(1, 11));
        prop_assert_eq!((x + y) - y, x);
        prop_assert_eq!(x.pow(10), Fp::new(1, 11));
    }
}
