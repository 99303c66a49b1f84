use proptest::prelude::*;
use sparse_galois::{
    criterion, essential_vectors, is_analogous, is_irreducible, is_reduced, polytope::mixed_volume_of_sets, Error,
    SupportSet, SupportTuple,
};

fn tuple(dim: usize, sets: &[&[&[i64]]]) -> SupportTuple {
    SupportTuple::from_points(dim, sets.iter().map(|s| s.iter().map(|p| p.to_vec()).collect()).collect()).unwrap()
}

const Q: &[&[i64]] = &[&[0, 0], &[2, 0], &[0, 2], &[2, 2], &[1, 1]];
const SQUARE: &[&[i64]] = &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]];
const SIMPLEX: &[&[i64]] = &[&[0, 0], &[1, 0], &[0, 1]];

#[test]
fn known_mixed_volumes() {
    assert_eq!(tuple(2, &[SIMPLEX, SIMPLEX]).mixed_volume().unwrap(), 1);
    assert_eq!(tuple(2, &[SQUARE, SQUARE]).mixed_volume().unwrap(), 2);
    assert_eq!(tuple(2, &[Q, Q]).mixed_volume().unwrap(), 8);
    assert_eq!(tuple(2, &[SIMPLEX, SQUARE]).mixed_volume().unwrap(), 2);
}

/// A unimodular matrix and its inverse, built from elementary operations.
fn unimodular(n: usize) -> impl Strategy<Value = (Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    prop::collection::vec((0..n, 0..n, -2i64..=2, any::<bool>()), 1..6).prop_map(move |ops| {
        let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
        let mut inv = m.clone();
        for (i, j, k, swap) in ops {
            if i == j {
                continue;
            }
            if swap {
                m.swap(i, j);
                for row in inv.iter_mut() {
                    row.swap(i, j);
                }
            } else {
                // row_i += k row_j on m; column_j -= k column_i on the inverse
                for c in 0..n {
                    m[i][c] += k * m[j][c];
                }
                for row in inv.iter_mut() {
                    row[j] -= k * row[i];
                }
            }
        }
        (m, inv)
    })
}

fn points(n: usize, max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(0i64..=3, n), 2..=max)
}

fn planar_tuple() -> impl Strategy<Value = SupportTuple> {
    (points(2, 5), points(2, 5)).prop_filter_map("degenerate", |(a, b)| SupportTuple::from_points(2, vec![a, b]).ok())
}

fn transform(t: &SupportTuple, m: &[Vec<i64>], shifts: &[Vec<i64>]) -> SupportTuple {
    t.transform(m).unwrap().translate(shifts).unwrap()
}

fn mat_vec_t(inv: &[Vec<i64>], g: &[i64]) -> Vec<i64> {
    // γ' = M^{-T} γ
    (0..g.len()).map(|i| (0..g.len()).map(|k| inv[k][i] * g[k]).sum()).collect()
}

fn same_error_kind(a: &Error, b: &Error) -> bool {
    std::mem::discriminant(a) == std::mem::discriminant(b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn mixed_volume_is_symmetric_and_invariant(
        t in planar_tuple(),
        (m, _) in unimodular(2),
        shifts in prop::collection::vec(prop::collection::vec(-3i64..=3, 2), 2),
    ) {
        let mv = t.mixed_volume().unwrap();
        let swapped = SupportTuple::new(vec![t.set(1).clone(), t.set(0).clone()]).unwrap();
        prop_assert_eq!(swapped.mixed_volume().unwrap(), mv);
        prop_assert_eq!(transform(&t, &m, &shifts).mixed_volume().unwrap(), mv);
    }

    #[test]
    fn mixed_volume_is_additive(a in points(2, 4), b in points(2, 4), c in points(2, 4)) {
        let s = |p: Vec<Vec<i64>>| SupportSet::new(2, p).unwrap();
        let (a, b, c) = (s(a), s(b), s(c));
        let ab = sparse_galois::minkowski_sum(&a, &b).unwrap();
        let lhs = mixed_volume_of_sets(&[ab, c.clone()]).unwrap();
        let rhs = mixed_volume_of_sets(&[a, c.clone()]).unwrap() + mixed_volume_of_sets(&[b, c]).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn predicates_and_multiplicities_are_invariant(
        t in planar_tuple(),
        (m, inv) in unimodular(2),
        shifts in prop::collection::vec(prop::collection::vec(-3i64..=3, 2), 2),
    ) {
        let u = transform(&t, &m, &shifts);
        prop_assert_eq!(is_reduced(&t), is_reduced(&u));
        prop_assert_eq!(is_irreducible(&t), is_irreducible(&u));
        prop_assert_eq!(is_analogous(&t).unwrap(), is_analogous(&u).unwrap());
        let (et, eu) = (essential_vectors(&t).unwrap(), essential_vectors(&u).unwrap());
        prop_assert_eq!(et.records.len(), eu.records.len());
        prop_assert_eq!(et.tuples.len(), eu.tuples.len());
        for r in &et.records {
            let g = mat_vec_t(&inv, &r.gamma);
            let s = eu.record(&g);
            prop_assert!(s.is_some(), "covector {:?} has no image {:?}", r.gamma, g);
            let s = s.unwrap();
            prop_assert_eq!((r.d_prime, r.d_double_prime, r.d, r.in_e0), (s.d_prime, s.d_double_prime, s.d, s.in_e0));
        }
        match (criterion(&t), criterion(&u)) {
            (Ok(a), Ok(b)) => {
                prop_assert_eq!(a.name(), b.name());
                prop_assert_eq!(a.group(), b.group());
            }
            (Err(a), Err(b)) => prop_assert!(same_error_kind(&a, &b), "{:?} vs {:?}", a, b),
            (a, b) => prop_assert!(false, "{:?} vs {:?}", a, b),
        }
    }

    #[test]
    fn spatial_mixed_volume_is_invariant(
        sets in prop::collection::vec(points(3, 5), 3),
        (m, _) in unimodular(3),
    ) {
        let Ok(t) = SupportTuple::from_points(3, sets) else { return Ok(()) };
        let zero = vec![vec![0; 3]; 3];
        prop_assert_eq!(t.mixed_volume().unwrap(), transform(&t, &m, &zero).mixed_volume().unwrap());
    }
}
