//! Support tuples and their combinatorics: normalization, reduction to the
//! lattice the supports generate, reducedness and irreducibility, analogous
//! and ample tuples, essential covectors and resultant multiplicities.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::lattice::{generates_with, smith_normal_form, IntMatrix, Sublattice};
use crate::polytope::{
    convex_hull, dot, minkowski_hull, mixed_volume_of_sets, refined_cone_representatives, support_face, SupportSet,
    MAX_DIM, MAX_FAN_DIM,
};

/// `n` finite sets in `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SupportTuple {
    dim: usize,
    sets: Vec<SupportSet>,
}

impl SupportTuple {
    pub fn new(sets: Vec<SupportSet>) -> Result<Self> {
        let dim = sets.len();
        if dim == 0 {
            return Err(Error::Malformed("a tuple needs at least one set".into()));
        }
        if let Some((i, s)) = sets.iter().enumerate().find(|(_, s)| s.dim() != dim) {
            return Err(Error::Malformed(format!(
                "set {i} lives in dimension {} but the tuple has {dim} sets",
                s.dim()
            )));
        }
        Ok(Self { dim, sets })
    }

    /// Builds a tuple from raw point lists, reporting the first empty set.
    pub fn from_points(dim: usize, sets: Vec<Vec<Vec<i64>>>) -> Result<Self> {
        if sets.len() != dim {
            return Err(Error::Malformed(format!("expected {dim} sets, got {}", sets.len())));
        }
        let sets = sets
            .into_iter()
            .enumerate()
            .map(|(index, pts)| {
                if pts.is_empty() {
                    Err(Error::EmptySupport { index })
                } else {
                    SupportSet::new(dim, pts)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(sets)
    }

    /// The same set repeated `n` times.
    pub fn repeated(set: SupportSet) -> Self {
        let n = set.dim();
        Self { dim: n, sets: vec![set; n] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn sets(&self) -> &[SupportSet] {
        &self.sets
    }

    pub fn set(&self, i: usize) -> &SupportSet {
        &self.sets[i]
    }

    /// Applies the integer matrix `m` (rows act on columns of points).
    pub fn transform(&self, m: &[Vec<i64>]) -> Result<SupportTuple> {
        let sets = self
            .sets
            .iter()
            .map(|s| {
                let pts = s
                    .points()
                    .iter()
                    .map(|p| m.iter().map(|row| dot(row, p).to_i64().ok_or(Error::Overflow)).collect())
                    .collect::<Result<Vec<Vec<i64>>>>()?;
                SupportSet::new(self.dim, pts)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(sets)
    }

    /// Translates set `i` by `shifts[i]`.
    pub fn translate(&self, shifts: &[Vec<i64>]) -> Result<SupportTuple> {
        let sets = self
            .sets
            .iter()
            .zip(shifts)
            .map(|(s, v)| s.translate(v))
            .collect::<Result<Vec<_>>>()?;
        Self::new(sets)
    }

    /// Lattice mixed volume of the convex hulls.
    pub fn mixed_volume(&self) -> Result<u64> {
        mixed_volume_of_sets(&self.sets)
    }

    fn faces(&self, gamma: &[i64]) -> Vec<SupportSet> {
        self.sets.iter().map(|s| support_face(s, gamma)).collect()
    }
}

/// Shifts every set so that its lexicographically smallest point is 0.
pub fn normalize(t: &SupportTuple) -> SupportTuple {
    let sets = t
        .sets
        .iter()
        .map(|s| {
            let shift: Vec<i64> = s.points()[0].iter().map(|x| -x).collect();
            s.translate(&shift).expect("translating by an existing point cannot overflow")
        })
        .collect();
    SupportTuple { dim: t.dim, sets }
}

/// Generators of the lattice spanned by the differences of points of each set.
fn difference_generators(sets: &[&SupportSet]) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for s in sets {
        let base = &s.points()[0];
        for p in &s.points()[1..] {
            out.push(p.iter().zip(base).map(|(a, b)| a - b).collect());
        }
    }
    out
}

fn difference_lattice(dim: usize, sets: &[&SupportSet]) -> Sublattice {
    Sublattice::from_vectors(dim, &difference_generators(sets))
}

/// Data of the reduction of a normalized tuple `Ã` to the lattice `Λ` it
/// generates: `Ã = L(A)` for the reduced tuple `A`.
#[derive(Clone, Debug)]
pub struct ReductionData {
    /// The normalized input tuple.
    pub normalized: SupportTuple,
    pub lambda: Sublattice,
    /// Columns form the chosen basis of `Λ`.
    pub embedding: IntMatrix,
    /// Transpose of `embedding`; its columns span `im(L*)`.
    pub dual: IntMatrix,
    pub index: BigInt,
    /// Invariant factors of `Ñ/Λ` greater than 1.
    pub quotient_invariants: Vec<BigInt>,
    pub reduced: SupportTuple,
}

impl ReductionData {
    pub fn dual_image(&self) -> Sublattice {
        Sublattice::new(self.dual.rows(), self.dual.clone())
    }

    /// Maps a reduced point back to original coordinates.
    pub fn embed(&self, p: &[i64]) -> Vec<BigInt> {
        let v: Vec<BigInt> = p.iter().map(|&x| BigInt::from(x)).collect();
        self.embedding.mul_vec(&v)
    }

    pub fn index_u64(&self) -> Result<u64> {
        self.index.to_u64().ok_or(Error::Overflow)
    }
}

/// Reduction of `normalize(t)`; the basis of `Λ` comes from the Smith form of
/// the stacked point matrix, so the result is deterministic.
pub fn reduction(t: &SupportTuple) -> Result<ReductionData> {
    let normalized = normalize(t);
    let n = t.dim;
    let all: Vec<Vec<i64>> = normalized.sets.iter().flat_map(|s| s.points().iter().cloned()).collect();
    let pm = IntMatrix::from_columns(&all, n);
    let snf = smith_normal_form(&pm);
    let rank = snf.rank();
    if rank < n {
        return Err(Error::RankDeficient { rank, dim: n });
    }
    let diag = snf.diagonal();
    let mut embedding = snf.u_inv.clone();
    for j in 0..n {
        for i in 0..n {
            let x = &embedding[(i, j)] * &diag[j];
            embedding[(i, j)] = x;
        }
    }
    // reduced coordinates: diag(s)^-1 * U * p
    let reduced_sets = normalized
        .sets
        .iter()
        .map(|s| {
            let pts = s
                .points()
                .iter()
                .map(|p| {
                    let w = snf.u.mul_vec(&crate::lattice::to_big(p));
                    w.iter()
                        .zip(&diag)
                        .map(|(x, s)| {
                            debug_assert!((x % s) == BigInt::from(0));
                            (x / s).to_i64().ok_or(Error::Overflow)
                        })
                        .collect::<Result<Vec<i64>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            SupportSet::new(n, pts)
        })
        .collect::<Result<Vec<_>>>()?;
    let index: BigInt = diag.iter().product();
    let quotient_invariants = diag.iter().filter(|x| !x.is_one()).cloned().collect();
    Ok(ReductionData {
        lambda: Sublattice::new(n, pm),
        dual: embedding.transpose(),
        embedding,
        index,
        quotient_invariants,
        reduced: SupportTuple { dim: n, sets: reduced_sets },
        normalized,
    })
}

/// The sets cannot be shifted into one proper sublattice.
pub fn is_reduced(t: &SupportTuple) -> bool {
    let refs: Vec<&SupportSet> = t.sets.iter().collect();
    difference_lattice(t.dim, &refs).index() == crate::lattice::Index::Finite(BigInt::one())
}

/// A subset `K`, `1 <= |K| < n`, whose sets shift into a sublattice of rank
/// at most `|K|`, together with that rank; `None` for irreducible tuples.
pub fn reducibility_witness(t: &SupportTuple) -> Option<(Vec<usize>, usize)> {
    let n = t.dim;
    for size in 1..n {
        for k in subsets_of_size(n, size) {
            let refs: Vec<&SupportSet> = k.iter().map(|&i| &t.sets[i]).collect();
            let rank = difference_lattice(n, &refs).rank();
            if rank <= size {
                return Some((k, rank));
            }
        }
    }
    None
}

pub fn is_irreducible(t: &SupportTuple) -> bool {
    reducibility_witness(t).is_none()
}

/// All `size`-element subsets of `0..n` in lexicographic order.
pub(crate) fn subsets_of_size(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    rec(0, n, size, &mut cur, &mut out);
    out
}

fn same_direction(n: usize, faces: &[SupportSet]) -> bool {
    let sats: Vec<Sublattice> = faces.iter().map(|f| difference_lattice(n, &[f]).saturation()).collect();
    sats.windows(2).all(|w| w[0] == w[1])
}

/// Whether the convex hulls share one normal fan.
pub fn is_analogous(t: &SupportTuple) -> Result<bool> {
    let n = t.dim;
    if n > MAX_FAN_DIM {
        return Err(Error::DimensionUnsupported { dim: n, max: MAX_FAN_DIM });
    }
    if !same_direction(n, &t.sets) {
        return Ok(false);
    }
    let hulls = t.sets.iter().map(convex_hull).collect::<Result<Vec<_>>>()?;
    for gamma in refined_cone_representatives(&hulls)? {
        if !same_direction(n, &t.faces(&gamma)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Resultant multiplicity `d = d' * d''` of an essential covector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Multiplicity {
    pub d_prime: u64,
    pub d_double_prime: u64,
    pub d: u64,
}

/// One essential covector and its resultant data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EssentialRecord {
    pub gamma: Vec<i64>,
    /// The minimal index set `K_γ` (0-based).
    pub k_gamma: Vec<usize>,
    /// Generators of `L_γ`.
    pub l_gamma: Vec<Vec<i64>>,
    pub d_prime: u64,
    pub d_double_prime: u64,
    pub d: u64,
    /// Index into [`EssentialData::tuples`].
    pub tuple_id: usize,
    pub in_e0: bool,
}

impl EssentialRecord {
    pub fn l_gamma_lattice(&self) -> Sublattice {
        Sublattice::from_vectors(self.gamma.len(), &self.l_gamma)
    }
}

/// An essential tuple `(E_1, ..., E_n)`; `None` stands for an empty `E_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EssentialTuple {
    pub faces: Vec<Option<SupportSet>>,
    /// Indices into [`EssentialData::records`] of the covectors defining it.
    pub members: Vec<usize>,
    pub in_e0: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EssentialData {
    pub records: Vec<EssentialRecord>,
    pub tuples: Vec<EssentialTuple>,
}

impl EssentialData {
    pub fn record(&self, gamma: &[i64]) -> Option<&EssentialRecord> {
        self.records.iter().find(|r| r.gamma == gamma)
    }

    /// `Σ_{γ ∈ 𝒢_B} d_γ·γ` for every essential tuple `B`.
    pub fn grouped_sums(&self) -> Vec<Vec<i64>> {
        self.tuples
            .iter()
            .map(|b| {
                let n = self.records[b.members[0]].gamma.len();
                let mut v = vec![0i64; n];
                for &r in &b.members {
                    let rec = &self.records[r];
                    for (x, g) in v.iter_mut().zip(&rec.gamma) {
                        *x += rec.d as i64 * g;
                    }
                }
                v
            })
            .collect()
    }

    /// `d_{γ_B}·γ_B` for every `B ∈ ℰ₀`.
    pub fn e0_vectors(&self) -> Vec<Vec<i64>> {
        self.tuples
            .iter()
            .filter(|b| b.in_e0)
            .map(|b| {
                let rec = &self.records[b.members[0]];
                rec.gamma.iter().map(|g| rec.d as i64 * g).collect()
            })
            .collect()
    }
}

enum Essentiality {
    Essential { k_gamma: Vec<usize>, l_gamma: Sublattice },
    NotEssential,
}

fn classify(t: &SupportTuple, gamma: &[i64]) -> Result<Essentiality> {
    let n = t.dim;
    let faces = t.faces(gamma);
    let rank_of = |k: &[usize]| {
        let refs: Vec<&SupportSet> = k.iter().map(|&i| &faces[i]).collect();
        difference_lattice(n, &refs).rank()
    };
    let mut members = Vec::new();
    for size in 1..=n {
        for k in subsets_of_size(n, size) {
            let r = rank_of(&k);
            if size >= 2 && r + 2 <= size {
                return Ok(Essentiality::NotEssential);
            }
            if r < size {
                members.push(k);
            }
        }
    }
    let minimal: Vec<&Vec<usize>> = members
        .iter()
        .filter(|k| !members.iter().any(|o| o.len() < k.len() && o.iter().all(|i| k.contains(i))))
        .collect();
    if minimal.len() != 1 {
        return Err(Error::NotEssential(gamma.to_vec()));
    }
    let k_gamma = minimal[0].clone();
    let refs: Vec<&SupportSet> = k_gamma.iter().map(|&i| &faces[i]).collect();
    Ok(Essentiality::Essential { l_gamma: difference_lattice(n, &refs), k_gamma })
}

fn is_primitive(v: &[i64]) -> bool {
    let g = v.iter().fold(0i64, |g, &x| num_integer::Integer::gcd(&g, &x));
    g == 1
}

fn multiplicity_of(t: &SupportTuple, gamma: &[i64], k_gamma: &[usize], l_gamma: &Sublattice) -> Result<Multiplicity> {
    let n = t.dim;
    let d_prime = l_gamma.index_in_saturation().to_u64().ok_or(Error::Overflow)?;
    let rest: Vec<usize> = (0..n).filter(|i| !k_gamma.contains(i)).collect();
    let d_double_prime = if rest.is_empty() {
        1
    } else {
        let q = quotient_map(gamma, l_gamma)?;
        let m = q.len();
        debug_assert_eq!(m, rest.len());
        let images = rest
            .iter()
            .map(|&i| {
                let face = support_face(&t.sets[i], gamma);
                let base = face.points()[0].clone();
                let pts = face
                    .points()
                    .iter()
                    .map(|p| {
                        let diff: Vec<i64> = p.iter().zip(&base).map(|(a, b)| a - b).collect();
                        q.iter().map(|row| dot(row, &diff).to_i64().ok_or(Error::Overflow)).collect()
                    })
                    .collect::<Result<Vec<Vec<i64>>>>()?;
                SupportSet::new(m, pts)
            })
            .collect::<Result<Vec<_>>>()?;
        mixed_volume_of_sets(&images)?
    };
    Ok(Multiplicity { d_prime, d_double_prime, d: d_prime * d_double_prime })
}

/// Rows of a map `Z^n -> Z^(n-1-rank L)` that kills `L` and identifies
/// `ker γ / L̄` with the target.
fn quotient_map(gamma: &[i64], l: &Sublattice) -> Result<Vec<Vec<i64>>> {
    let n = gamma.len();
    let g = smith_normal_form(&IntMatrix::from_rows(&[gamma.to_vec()], n));
    // coordinates on ker γ: rows 1.. of V^-1
    let ker_coords = g.v_inv.select_rows(1..n);
    let l_in_ker = ker_coords.mul(l.generators());
    let s = smith_normal_form(&l_in_ker);
    let r = s.rank();
    let q = s.u.select_rows(r..n - 1).mul(&ker_coords);
    q.rows_i64().ok_or(Error::Overflow)
}

/// Essential covectors of `t` (computed on `t` as given; pass the reduced
/// tuple to get the data the criterion uses), grouped by essential tuple.
pub fn essential_vectors(t: &SupportTuple) -> Result<EssentialData> {
    let n = t.dim;
    if n > MAX_DIM {
        return Err(Error::DimensionUnsupported { dim: n, max: MAX_DIM });
    }
    let hulls = t.sets.iter().map(convex_hull).collect::<Result<Vec<_>>>()?;
    let refs: Vec<_> = hulls.iter().collect();
    let sum = minkowski_hull(&refs)?;
    let mut candidates: Vec<Vec<i64>> = sum.facets().iter().map(|f| f.normal.clone()).collect();
    candidates.sort();

    let mut records = Vec::new();
    let mut by_tuple: BTreeMap<Vec<Option<SupportSet>>, usize> = BTreeMap::new();
    let mut tuples: Vec<EssentialTuple> = Vec::new();
    for gamma in candidates {
        let Essentiality::Essential { k_gamma, l_gamma } = classify(t, &gamma)? else { continue };
        let m = multiplicity_of(t, &gamma, &k_gamma, &l_gamma)?;
        let faces: Vec<Option<SupportSet>> = (0..n)
            .map(|i| k_gamma.contains(&i).then(|| support_face(&t.sets[i], &gamma)))
            .collect();
        let in_e0 = k_gamma.len() == n && faces.iter().flatten().all(|f| f.affine_dim() + 1 == n);
        let next = tuples.len();
        let tuple_id = *by_tuple.entry(faces.clone()).or_insert(next);
        if tuple_id == next {
            tuples.push(EssentialTuple { faces, members: vec![], in_e0 });
        }
        tuples[tuple_id].members.push(records.len());
        records.push(EssentialRecord {
            l_gamma: l_gamma.generators().columns_i64().ok_or(Error::Overflow)?,
            gamma,
            k_gamma,
            d_prime: m.d_prime,
            d_double_prime: m.d_double_prime,
            d: m.d,
            tuple_id,
            in_e0,
        });
    }
    Ok(EssentialData { records, tuples })
}

/// `(d'_γ, d''_γ, d_γ)` for an essential covector of `t`.
pub fn resultant_multiplicity(t: &SupportTuple, gamma: &[i64]) -> Result<Multiplicity> {
    if gamma.len() != t.dim {
        return Err(Error::Malformed(format!("covector length {} in dimension {}", gamma.len(), t.dim)));
    }
    if !is_primitive(gamma) {
        return Err(Error::NotEssential(gamma.to_vec()));
    }
    match classify(t, gamma)? {
        Essentiality::Essential { k_gamma, l_gamma } => multiplicity_of(t, gamma, &k_gamma, &l_gamma),
        Essentiality::NotEssential => Err(Error::NotEssential(gamma.to_vec())),
    }
}

/// Whether the vectors `d_γ·γ` of the reduction together with `im(L*)`
/// generate the dual lattice.
pub fn is_ample(t: &SupportTuple) -> Result<bool> {
    if !is_analogous(t)? {
        return Err(Error::NotAnalogous);
    }
    let red = reduction(t)?;
    let ess = essential_vectors(&red.reduced)?;
    for r in &ess.records {
        // For analogous tuples d_γ is also the index of L_γ in V_γ ∩ Z^n.
        let alt = r.l_gamma_lattice().index_in_saturation();
        if r.k_gamma.len() != t.dim || BigInt::from(r.d) != alt {
            return Err(Error::Malformed(format!(
                "multiplicity of {:?} disagrees with the analogous-tuple index",
                r.gamma
            )));
        }
    }
    let vectors: Vec<Vec<i64>> = ess
        .records
        .iter()
        .map(|r| r.gamma.iter().map(|g| r.d as i64 * g).collect())
        .collect();
    Ok(generates_with(&vectors, &red.dual_image()))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn tuple(sets: &[&[&[i64]]]) -> SupportTuple {
        let n = sets.len();
        SupportTuple::from_points(n, sets.iter().map(|s| s.iter().map(|p| p.to_vec()).collect()).collect()).unwrap()
    }

    const Q: &[&[i64]] = &[&[0, 0], &[2, 0], &[0, 2], &[2, 2], &[1, 1]];
    const P: &[&[i64]] = &[&[0, 0], &[1, 1], &[1, -1], &[2, 0], &[1, 0]];
    const SQUARE: &[&[i64]] = &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]];
    const TRIANGLE: &[&[i64]] = &[&[0, 0], &[1, 0], &[0, 1]];

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(&tuple(&[&[&[4], &[8], &[12]]])), tuple(&[&[&[0], &[4], &[8]]]));
        let t = tuple(&[&[&[0], &[2], &[3]]]);
        assert_eq!(normalize(&t), t);
        let t = tuple(&[&[&[1, 1], &[3, 1], &[1, 3]], TRIANGLE]);
        assert_eq!(normalize(&t).set(0), tuple(&[&[&[0, 0], &[2, 0], &[0, 2]], TRIANGLE]).set(0));
    }

    #[test]
    fn empty_support_is_rejected() {
        assert_eq!(
            SupportTuple::from_points(2, vec![vec![vec![0, 0]], vec![]]),
            Err(Error::EmptySupport { index: 1 })
        );
    }

    #[test]
    fn reduction_univariate() {
        let r = reduction(&tuple(&[&[&[0], &[4], &[8]]])).unwrap();
        assert_eq!(r.index, BigInt::from(4));
        assert_eq!(r.reduced, tuple(&[&[&[0], &[1], &[2]]]));
    }

    #[test]
    fn reduction_of_q() {
        let r = reduction(&tuple(&[Q, Q])).unwrap();
        assert_eq!(r.index, BigInt::from(2));
        assert!(is_reduced(&r.reduced));
        for (red, orig) in r.reduced.sets().iter().zip(r.normalized.sets()) {
            let back: Vec<Vec<BigInt>> = red.points().iter().map(|p| r.embed(p)).collect();
            for p in orig.points() {
                assert!(back.contains(&crate::lattice::to_big(p)));
            }
        }
        assert_eq!(r.reduced.mixed_volume().unwrap(), 4);
    }

    #[test]
    fn reduction_of_reduced_is_identity() {
        let r = reduction(&tuple(&[SQUARE, TRIANGLE])).unwrap();
        assert_eq!(r.index, BigInt::one());
        assert_eq!(r.embedding, IntMatrix::identity(2));
    }

    #[test]
    fn rank_deficient() {
        let err = reduction(&tuple(&[&[&[0, 0], &[1, 0]], &[&[0, 0], &[2, 0]]])).unwrap_err();
        assert_eq!(err, Error::RankDeficient { rank: 1, dim: 2 });
    }

    #[test]
    fn reducedness_and_irreducibility() {
        assert!(!is_reduced(&tuple(&[&[&[0], &[4], &[8]]])));
        assert!(is_reduced(&tuple(&[&[&[0], &[2], &[3]]])));
        let t = tuple(&[&[&[0, 0], &[1, 0], &[3, 0]], SQUARE]);
        assert!(!is_irreducible(&t));
        assert_eq!(reducibility_witness(&t), Some((vec![0], 1)));
        assert!(is_irreducible(&tuple(&[SQUARE, TRIANGLE])));
    }

    #[test]
    fn analogous_examples() {
        assert!(is_analogous(&tuple(&[Q, Q])).unwrap());
        let big: &[&[i64]] = &[&[0, 0], &[2, 0], &[0, 2]];
        assert!(is_analogous(&tuple(&[TRIANGLE, big])).unwrap());
        assert!(!is_analogous(&tuple(&[SQUARE, TRIANGLE])).unwrap());
    }

    #[test]
    fn essential_univariate() {
        let e = essential_vectors(&tuple(&[&[&[0], &[2], &[3]]])).unwrap();
        let gs: Vec<Vec<i64>> = e.records.iter().map(|r| r.gamma.clone()).collect();
        assert_eq!(gs, vec![vec![-1], vec![1]]);
        assert!(e.records.iter().all(|r| r.in_e0 && r.d == 1));
    }

    #[test]
    fn essential_diamond() {
        let e = essential_vectors(&tuple(&[P, P])).unwrap();
        let gs: Vec<Vec<i64>> = e.records.iter().map(|r| r.gamma.clone()).collect();
        assert_eq!(gs, vec![vec![-1, -1], vec![-1, 1], vec![1, -1], vec![1, 1]]);
        assert!(e.records.iter().all(|r| r.in_e0 && r.d == 1 && r.k_gamma == vec![0, 1]));
        assert_eq!(e.tuples.len(), 4);
    }

    #[test]
    fn essential_tuples_can_merge() {
        // (-1,0) and (0,-1) both see edges of the square and the single
        // corner of the second set.
        let a1 = SQUARE;
        let a2: &[&[i64]] = &[&[0, 0], &[2, 1], &[1, 2]];
        let e = essential_vectors(&tuple(&[a1, a2])).unwrap();
        let rec_x = e.record(&[-1, 0]).unwrap();
        let rec_y = e.record(&[0, -1]).unwrap();
        assert_eq!(rec_x.k_gamma, vec![1]);
        assert_eq!(rec_x.tuple_id, rec_y.tuple_id);
        assert!(!e.tuples[rec_x.tuple_id].in_e0);
        assert_eq!(e.tuples[rec_x.tuple_id].members.len(), 2);
    }

    #[test]
    fn multiplicities() {
        let m = resultant_multiplicity(&tuple(&[&[&[0], &[2], &[3]]]), &[1]).unwrap();
        assert_eq!((m.d_prime, m.d_double_prime, m.d), (1, 1, 1));
        let m = resultant_multiplicity(&tuple(&[Q, Q]), &[0, -1]).unwrap();
        assert_eq!((m.d_prime, m.d_double_prime, m.d), (2, 1, 2));
        for g in [[1, 1], [1, -1], [-1, 1], [-1, -1]] {
            assert_eq!(resultant_multiplicity(&tuple(&[P, P]), &g).unwrap().d, 1);
        }
        assert_eq!(
            resultant_multiplicity(&tuple(&[P, P]), &[2, 2]),
            Err(Error::NotEssential(vec![2, 2]))
        );
    }

    #[test]
    fn double_prime_counts_quotient_volume() {
        // At γ = (0,-1) the first face is a vertex, so K = {0}; the second
        // face is a segment of length 3 in the quotient.
        let a1: &[&[i64]] = &[&[1, 0], &[0, 1], &[2, 1]];
        let a2: &[&[i64]] = &[&[0, 0], &[3, 0], &[0, 1]];
        let m = resultant_multiplicity(&tuple(&[a1, a2]), &[0, -1]).unwrap();
        assert_eq!((m.d_prime, m.d_double_prime), (1, 3));
    }

    #[test]
    fn ample_examples() {
        assert!(is_ample(&tuple(&[P, P])).unwrap());
        assert!(!is_ample(&tuple(&[Q, Q])).unwrap());
        let sq2: &[&[i64]] = &[&[0, 0], &[2, 0], &[0, 2], &[2, 2]];
        assert!(is_ample(&tuple(&[sq2, sq2])).unwrap());
        assert_eq!(is_ample(&tuple(&[SQUARE, TRIANGLE])), Err(Error::NotAnalogous));
    }
}
