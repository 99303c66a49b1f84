use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use sparse_galois::{smith_normal_form, Index, IntMatrix, Sublattice};

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=5, 1usize..=6).prop_flat_map(|(r, c)| {
        prop::collection::vec(-12i64..=12, r * c).prop_map(move |e| IntMatrix::from_i64(r, c, &e))
    })
}

/// Product of elementary row operations with small multipliers.
fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..n, 0..n, -2i64..=2), 0..8).prop_map(move |ops| {
        let mut m = IntMatrix::identity(n);
        for (i, j, k) in ops {
            if i == j {
                continue;
            }
            for c in 0..n {
                let add = &m[(j, c)] * k;
                m[(i, c)] += add;
            }
        }
        m
    })
}

fn is_identity(m: &IntMatrix) -> bool {
    (0..m.rows()).all(|i| (0..m.cols()).all(|j| m[(i, j)] == if i == j { BigInt::one() } else { BigInt::zero() }))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_round_trip(a in matrix()) {
        let snf = smith_normal_form(&a);
        let s = snf.u.mul(&a).mul(&snf.v);
        prop_assert_eq!(&s, &snf.s);
        prop_assert!(is_identity(&snf.u.mul(&snf.u_inv)));
        prop_assert!(is_identity(&snf.v.mul(&snf.v_inv)));
        for i in 0..s.rows() {
            for j in 0..s.cols() {
                if i != j {
                    prop_assert!(s[(i, j)].is_zero());
                }
            }
        }
        let d = snf.diagonal();
        for w in d.windows(2) {
            prop_assert!(w[0] >= BigInt::zero());
            if !w[0].is_zero() {
                prop_assert!((&w[1] % &w[0]).is_zero());
            } else {
                prop_assert!(w[1].is_zero());
            }
        }
    }

    #[test]
    fn index_is_invariant_under_change_of_basis(
        (a, u) in matrix().prop_flat_map(|a| { let n = a.rows(); (Just(a), unimodular(n)) })
    ) {
        let n = a.rows();
        let before = Sublattice::new(n, a.clone()).index();
        let after = Sublattice::new(n, u.mul(&a)).index();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn saturation_is_idempotent(a in matrix()) {
        let l = Sublattice::new(a.rows(), a);
        let s = l.saturation();
        prop_assert_eq!(s.saturation(), s.clone());
        prop_assert_eq!(s.index_in_saturation(), BigInt::one());
        prop_assert_eq!(s.rank(), l.rank());
        for c in 0..l.generators().cols() {
            prop_assert!(s.contains(&l.generators().column(c)));
        }
    }

    #[test]
    fn generators_belong_to_their_lattice(a in matrix()) {
        let l = Sublattice::new(a.rows(), a.clone());
        for c in 0..a.cols() {
            prop_assert!(l.contains(&a.column(c)));
        }
        if let Index::Finite(i) = l.index() {
            prop_assert_eq!(i, l.saturation().index_in_saturation() * l.index_in_saturation());
        }
    }
}
