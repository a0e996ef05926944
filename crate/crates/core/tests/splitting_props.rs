use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use splitloci::splitting::{type_from_hilbert, TypeEnumerator};
use splitloci::theta::ThetaPoly;
use splitloci::{balanced, Execution, SplittingType};

fn splitting_type(max_rank: usize) -> impl Strategy<Value = SplittingType> {
    prop::collection::vec(-15i64..=15, 1..=max_rank).prop_map(|p| SplittingType::new(p).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn hilbert_roundtrip(e in splitting_type(8)) {
        prop_assert_eq!(type_from_hilbert(&e.hilbert_profile(), e.rank()).unwrap(), e);
    }

    #[test]
    fn twisted_sections_are_convex(e in splitting_type(6), m in -20i64..=20) {
        let (a, b, c) = (e.h0_twist(m - 1) as i64, e.h0_twist(m) as i64, e.h0_twist(m + 1) as i64);
        prop_assert!(a - 2 * b + c >= 0);
    }

    #[test]
    fn balanced_is_the_top(e in splitting_type(6)) {
        let top = balanced(e.rank(), e.degree()).unwrap();
        prop_assert!(e.dominance_leq(&top).unwrap());
        prop_assert_eq!(top.u(), 0);
        prop_assert_eq!(e.is_balanced(), e == top);
        prop_assert_eq!(e.u() == 0, e == top);
    }

    #[test]
    fn serre_dual_laws(e in splitting_type(7), f in splitting_type(7)) {
        let d = e.serre_dual();
        prop_assert_eq!(d.serre_dual(), e.clone());
        prop_assert_eq!(d.u(), e.u());
        prop_assert_eq!(d.degree(), -e.degree() - 2 * e.rank() as i64);
        if e.rank() == f.rank() && e.degree() == f.degree() {
            prop_assert_eq!(e.dominance_leq(&f).unwrap(), d.dominance_leq(&f.serre_dual()).unwrap());
        }
    }

    #[test]
    fn endomorphisms_count_u(e in splitting_type(8)) {
        let k = e.rank() as u64;
        prop_assert_eq!(e.h0_end() - k * k, e.u());
    }

    #[test]
    fn display_parses_back(e in splitting_type(8)) {
        prop_assert_eq!(e.to_string().parse::<SplittingType>().unwrap(), e);
    }

    #[test]
    fn series_division_inverts_multiplication(
        a in prop::collection::vec(-9i64..=9, 1..8),
        mut b in prop::collection::vec(-9i64..=9, 1..8),
    ) {
        b[0] = if b[0] == 0 { 1 } else { b[0] };
        let trunc = 8;
        let (pa, pb) = (ThetaPoly::from_integers(&a, trunc), ThetaPoly::from_integers(&b, trunc));
        let back = pa.mul(&pb).div(&pb).unwrap();
        for i in 0..trunc {
            prop_assert_eq!(back.coeff(i), pa.coeff(i));
        }
        let zero = BigRational::from_integer(BigInt::from(0));
        prop_assert!(back.coeffs().iter().skip(trunc).all(|c| *c == zero));
    }
}

#[test]
fn enumerator_counts_match_partitions() {
    // Types of rank r and degree 0 with parts in [-2, 2], counted by hand.
    let count = |rank| TypeEnumerator::new(rank, 0, -2, 2).collect(Execution::Sequential).unwrap().len();
    assert_eq!(count(1), 1);
    assert_eq!(count(2), 3);
    assert_eq!(count(3), 5);
}

#[test]
fn enumerator_modes_agree() {
    let e = TypeEnumerator::new(5, -7, -9, 6).max_u(12);
    assert_eq!(e.collect(Execution::Sequential).unwrap(), e.collect(Execution::Parallel).unwrap());
}
