//! Property tests for the algebraic core.

use num_bigint::BigInt;
use proptest::prelude::*;

use monotri::arith::{self, Effort, Ternary};
use monotri::monogenic::{family_criterion, CriterionOutcome, FamilyKind};
use monotri::polymod::{poly_gcd, PolyModP};
use monotri::trinomial::{d_value, discriminant_swan, Trinomial};

proptest! {
    #[test]
    fn factorize_recomposes(n in 2u64..=u64::MAX) {
        let f = arith::factorize(&BigInt::from(n), &Effort::default());
        prop_assert_eq!(f.recompose(), n.into());
        prop_assert!(f.complete);
        for w in f.factors.windows(2) {
            prop_assert!(w[0].0 < w[1].0);
        }
        for (p, e) in &f.factors {
            prop_assert!(*e >= 1);
            prop_assert!(arith::is_prime(p).is_prime());
        }
    }

    #[test]
    fn squarefree_agrees_with_naive(n in 2u64..=1_000_000_000_000u64) {
        fn naive(mut rest: u64) -> bool {
            let mut p = 2u64;
            while p * p <= rest {
                if rest.is_multiple_of(p) {
                    rest /= p;
                    if rest.is_multiple_of(p) {
                        return false;
                    }
                }
                p += 1;
            }
            true
        }
        let got = arith::is_squarefree(&BigInt::from(n), &Effort::default());
        prop_assert_eq!(got, Ternary::from_bool(naive(n)));
    }

    #[test]
    fn kernel_is_squarefree_divisor(m in 1u64..=10_000_000u64) {
        let k = arith::squarefree_kernel(m);
        prop_assert_eq!(m % k, 0);
        prop_assert_eq!(arith::squarefree_kernel(k), k);
    }

    #[test]
    fn poly_gcd_divides_and_commutes(
        p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 101]),
        f in prop::collection::vec(0u64..1000, 1..8),
        g in prop::collection::vec(0u64..1000, 1..8),
    ) {
        let f = PolyModP::new(p, f);
        let g = PolyModP::new(p, g);
        prop_assume!(!(f.is_zero() && g.is_zero()));
        let d = poly_gcd(&f, &g).unwrap();
        prop_assert_eq!(&d, &poly_gcd(&g, &f).unwrap());
        if !d.is_zero() {
            if !f.is_zero() {
                prop_assert!(f.rem(&d).is_zero());
            }
            if !g.is_zero() {
                prop_assert!(g.rem(&d).is_zero());
            }
        }
    }

    #[test]
    fn d_value_division_is_always_exact(
        t in 2u32..=6,
        m in 1u32..=4,
        a in -200i64..=200,
        b in -200i64..=200,
    ) {
        prop_assume!(a != 0 && b != 0);
        let tri = Trinomial::from_i64(t * m, m, a, b).unwrap();
        // gcd(A,B)^{t-1} divides the numerator termwise, so this never errors.
        prop_assert!(d_value(&tri).is_ok());
    }
}

/// First/second-type members with m >= 2 always have non-squarefree
/// discriminant.
#[test]
fn family_members_have_nonsquarefree_disc() {
    let effort = Effort::default();
    let mut seen = 0;
    for (kind, n, m) in [
        (FamilyKind::FirstType, 8u32, 4u32),
        (FamilyKind::FirstType, 12, 3),
        (FamilyKind::SecondType, 8, 4),
        (FamilyKind::SecondType, 12, 3),
    ] {
        for a in 2i64..=400 {
            let ab = BigInt::from(a);
            if family_criterion(kind, n, m, &ab, &ab, false, &effort) != CriterionOutcome::Holds {
                continue;
            }
            let tri = Trinomial::new(n, m, ab.clone(), ab).unwrap();
            let disc = discriminant_swan(&tri);
            assert!(
                arith::is_squarefree(&disc, &effort).is_false(),
                "({n},{m}) A={a}: member discriminant is squarefree"
            );
            seen += 1;
        }
    }
    assert!(seen > 100, "sweep produced too few members ({seen})");
}
