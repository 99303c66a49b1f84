//! Deciding whether the monodromy group is the expected wreath product.
//!
//! Works on the reduced tuple `A` with `L = im(L*)` inside `H = Z^n`:
//!
//! 1. the vectors `d_γ·γ` over essential tuples in `ℰ₀` together with `L`
//!    generate `H`: expected wreath product;
//! 2. the reduced sets fit a standard simplex configuration: expected;
//! 3. the grouped sums `Σ_{γ ∈ 𝒢_B} d_γ·γ` together with `L` miss a
//!    sublattice: strictly smaller, with a divisibility witness;
//! 4. otherwise, the explicit solution-lattice vectors of facet loops around
//!    every essential tuple are closed under the symmetric group and tested.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{generates_with, smith_normal_form, surjects_onto, AbelianPresentation, Index, IntMatrix, Sublattice};
use crate::polytope::{dot, SupportSet, MAX_FAN_DIM};
use crate::tuples::{essential_vectors, normalize, reducibility_witness, reduction, EssentialData, SupportTuple};

/// Largest `d` for which the explicit class-(b) test runs.
pub const CLASS_B_MAX_DEGREE: u64 = 12;

/// The expected group `(Ñ/Λ) ≀ S_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupDescriptor {
    /// Invariant factors of `Ñ/Λ` greater than 1.
    pub quotient_invariants: Vec<u64>,
    /// `|Ñ/Λ|`.
    pub m: u64,
    /// Mixed volume of the reduced tuple.
    pub d: u64,
    /// Mixed volume of the original tuple, `m·d`.
    pub total_roots: u64,
    /// `m^d · d!`.
    pub expected_order: BigInt,
}

impl GroupDescriptor {
    fn new(quotient_invariants: Vec<u64>, m: u64, d: u64) -> Self {
        let factorial: BigInt = (1..=d).map(BigInt::from).product();
        let expected_order = BigInt::from(m).pow(d as u32) * factorial;
        Self { quotient_invariants, m, d, total_roots: m * d, expected_order }
    }
}

/// Which sufficient condition established the expected group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SufficientCondition {
    /// The vectors `d_γ·γ` over `ℰ₀` together with `L` generate `H`.
    FacetVectors,
    /// The reduced sets sit in the nonnegative orthant and contain the
    /// vertices of the standard simplex, after a common unimodular change of
    /// coordinates and individual shifts.
    StandardSimplex,
    /// The symmetric-group closure of the facet-loop vectors generates.
    ClassB,
}

/// `p > 1` divides `b·v` for every grouped sum `v` and every generator of `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub b: Vec<i64>,
    pub p: u64,
    /// Whether `p` also divides `d_γ·(γ·b)` for every single `γ ∈ 𝒢`.
    pub divides_each_covector: bool,
}

/// Two sublattices of `H` left between the sufficient and the necessary
/// condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gap {
    /// `{d_γ·γ : ℰ₀} ∪ L`.
    pub facet_lattice: Vec<Vec<i64>>,
    pub facet_index: Index,
    /// `{Σ_{𝒢_B} d_γ·γ : ℰ} ∪ L`.
    pub grouped_lattice: Vec<Vec<i64>>,
    pub grouped_index: Index,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    ExpectedWreath { group: GroupDescriptor, condition: SufficientCondition },
    StrictlySmaller { group: GroupDescriptor, witness: Witness },
    Inconclusive { group: GroupDescriptor, gap: Gap },
}

impl Verdict {
    pub fn group(&self) -> &GroupDescriptor {
        match self {
            Verdict::ExpectedWreath { group, .. }
            | Verdict::StrictlySmaller { group, .. }
            | Verdict::Inconclusive { group, .. } => group,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Verdict::ExpectedWreath { .. } => "ExpectedWreath",
            Verdict::StrictlySmaller { .. } => "StrictlySmaller",
            Verdict::Inconclusive { .. } => "Inconclusive",
        }
    }
}

fn to_u64(x: &BigInt) -> Result<u64> {
    x.to_u64().ok_or(Error::Overflow)
}

/// Descriptor of `(Ñ/Λ) ≀ S_d` for a tuple with full-rank `Λ`.
pub fn expected_group(t: &SupportTuple) -> Result<GroupDescriptor> {
    let red = reduction(t)?;
    let total = red.normalized.mixed_volume()?;
    let d = red.reduced.mixed_volume()?;
    let m = red.index_u64()?;
    if m * d != total {
        return Err(Error::Malformed(format!(
            "mixed volume {total} is not index {m} times reduced mixed volume {d}"
        )));
    }
    let inv = red.quotient_invariants.iter().map(to_u64).collect::<Result<_>>()?;
    Ok(GroupDescriptor::new(inv, m, d))
}

/// The univariate group `(Z/m) ≀ S_{a/m}` of a set of exponents.
pub fn univariate_group(a_set: &SupportSet) -> Result<GroupDescriptor> {
    if a_set.dim() != 1 || a_set.len() < 2 {
        return Err(Error::Malformed("a univariate support needs at least two exponents".into()));
    }
    let lo = a_set.points()[0][0];
    let shifted: Vec<i64> = a_set.points().iter().map(|p| p[0] - lo).collect();
    let m = shifted.iter().fold(0i64, |g, x| g.gcd(x)) as u64;
    let a = *shifted.last().unwrap() as u64;
    let inv = if m > 1 { vec![m] } else { vec![] };
    Ok(GroupDescriptor::new(inv, m, a / m))
}

/// The combinatorial verdict for a tuple in dimension at most 3.
pub fn criterion(t: &SupportTuple) -> Result<Verdict> {
    let n = t.dim();
    if n > MAX_FAN_DIM {
        return Err(Error::DimensionUnsupported { dim: n, max: MAX_FAN_DIM });
    }
    let red = reduction(&normalize(t))?;
    if let Some((subset, rank)) = reducibility_witness(&red.reduced) {
        return Err(Error::Reducible { subset, rank });
    }
    let group = expected_group(t)?;
    let ess = essential_vectors(&red.reduced)?;
    let l = red.dual_image();
    let l_gens = l.generators().columns_i64().ok_or(Error::Overflow)?;

    let e0 = ess.e0_vectors();
    if generates_with(&e0, &l) {
        return Ok(Verdict::ExpectedWreath { group, condition: SufficientCondition::FacetVectors });
    }
    if standard_simplex_condition(&red.reduced)? {
        return Ok(Verdict::ExpectedWreath { group, condition: SufficientCondition::StandardSimplex });
    }
    let grouped = ess.grouped_sums();
    if !generates_with(&grouped, &l) {
        let witness = extract_witness(&grouped, &l_gens, &ess, n)?;
        return Ok(Verdict::StrictlySmaller { group, witness });
    }

    let stack = |vs: &[Vec<i64>]| {
        let mut all = vs.to_vec();
        all.extend(l_gens.iter().cloned());
        let s = Sublattice::from_vectors(n, &all);
        (all, s.index())
    };
    let (facet_lattice, facet_index) = stack(&e0);
    let (grouped_lattice, grouped_index) = stack(&grouped);
    let mut gap = Gap { facet_lattice, facet_index, grouped_lattice, grouped_index, note: None };
    if group.d > CLASS_B_MAX_DEGREE {
        gap.note = Some(format!("class-(b) test skipped: d = {} exceeds {CLASS_B_MAX_DEGREE}", group.d));
        return Ok(Verdict::Inconclusive { group, gap });
    }
    if class_b_generates(&red.reduced, &ess, &l_gens, group.d as usize)? {
        return Ok(Verdict::ExpectedWreath { group, condition: SufficientCondition::ClassB });
    }
    Ok(Verdict::Inconclusive { group, gap })
}

fn smallest_prime_factor(s: u64) -> u64 {
    if s == 0 {
        return 2;
    }
    (2..).find(|p| s.is_multiple_of(*p) || p * p > s).map(|p| if s.is_multiple_of(p) { p } else { s }).unwrap()
}

fn extract_witness(vectors: &[Vec<i64>], l_gens: &[Vec<i64>], ess: &EssentialData, n: usize) -> Result<Witness> {
    let mut cols = vectors.to_vec();
    cols.extend(l_gens.iter().cloned());
    let snf = smith_normal_form(&IntMatrix::from_columns(&cols, n));
    let diag = snf.diagonal();
    let i = (0..n)
        .find(|&i| diag.get(i).is_none_or(|s| !s.is_one()))
        .expect("stacked vectors fail to generate, so some invariant factor differs from 1");
    let s = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
    let p = smallest_prime_factor(to_u64(&s)?);
    let b: Vec<i64> = snf.u.row(i).iter().map(|x| x.to_i64().ok_or(Error::Overflow)).collect::<Result<_>>()?;
    let divides = |v: &[i64]| dot(&b, v).rem_euclid(p as i128) == 0;
    if !cols.iter().all(|v| divides(v)) {
        return Err(Error::Malformed("divisibility witness failed its own check".into()));
    }
    let divides_each_covector = ess
        .records
        .iter()
        .all(|r| (r.d as i128 * dot(&r.gamma, &b)).rem_euclid(p as i128) == 0);
    Ok(Witness { b, p, divides_each_covector })
}

/// Is there a unimodular `T` and shifts `t_i` with `T(A_i) + t_i` inside the
/// nonnegative orthant and containing `0, e_1, ..., e_n` for every `i`?
pub fn standard_simplex_condition(t: &SupportTuple) -> Result<bool> {
    let n = t.dim();
    let first = t.set(0).points();
    if first.len() < n + 1 {
        return Ok(false);
    }
    for (i0, p0) in first.iter().enumerate() {
        let others: Vec<usize> = (0..first.len()).filter(|&i| i != i0).collect();
        for choice in crate::tuples::subsets_of_size(others.len(), n) {
            let cols: Vec<Vec<i64>> = choice
                .iter()
                .map(|&c| first[others[c]].iter().zip(p0).map(|(a, b)| a - b).collect())
                .collect();
            let d = IntMatrix::from_columns(&cols, n);
            let det = d.determinant();
            if det != BigInt::one() && det != -BigInt::one() {
                continue;
            }
            let snf = smith_normal_form(&d);
            let inv = snf.v.mul(&snf.u).rows_i64().ok_or(Error::Overflow)?;
            if fits_standard_simplex(t, &inv)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn fits_standard_simplex(t: &SupportTuple, m: &[Vec<i64>]) -> Result<bool> {
    let n = t.dim();
    let moved = t.transform(m)?;
    for s in moved.sets() {
        let min: Vec<i64> = (0..n).map(|k| s.points().iter().map(|p| p[k]).min().unwrap()).collect();
        let shifted = s.translate(&min.iter().map(|x| -x).collect::<Vec<_>>())?;
        if !shifted.contains(&vec![0; n]) {
            return Ok(false);
        }
        for k in 0..n {
            let mut e = vec![0; n];
            e[k] = 1;
            if !shifted.contains(&e) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Facet-loop vectors `γ̃_B ∈ H^{⊕d}`: for each `γ ∈ 𝒢_B`, `d_γ` cycles of
/// length `h_γ`, every root in them carrying `(M/h_γ)·γ` after `M = lcm h_γ`
/// turns. `None` when the construction does not apply to `B`.
pub(crate) fn facet_loop_vector(t: &SupportTuple, ess: &EssentialData, b: usize, d: usize) -> Option<Vec<Vec<i64>>> {
    let n = t.dim();
    let tuple = &ess.tuples[b];
    let mut h = Vec::new();
    for &r in &tuple.members {
        let gamma = &ess.records[r].gamma;
        let mut best: Option<i128> = None;
        for (i, face) in tuple.faces.iter().enumerate() {
            let Some(face) = face else { continue };
            let rest: Vec<&Vec<i64>> = t.set(i).points().iter().filter(|p| !face.contains(p)).collect();
            let top = t.set(i).max_value(gamma);
            let next = rest.iter().map(|p| dot(gamma, p)).max()?;
            best = Some(best.map_or(top - next, |x: i128| x.max(top - next)));
        }
        h.push(best? as i64);
    }
    let lcm = h.iter().fold(1i64, |a, x| a.lcm(x));
    let mut entries = Vec::new();
    for (&r, &hg) in tuple.members.iter().zip(&h) {
        let rec = &ess.records[r];
        let value: Vec<i64> = rec.gamma.iter().map(|g| g * (lcm / hg)).collect();
        for _ in 0..rec.d as i64 * hg {
            entries.push(value.clone());
        }
    }
    if entries.len() > d {
        return None;
    }
    entries.resize(d, vec![0; n]);
    Some(entries)
}

/// Generators of the span of the `S_d`-orbit of `v ∈ H^{⊕d}`.
pub(crate) fn orbit_span(v: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let d = v.len();
    let n = v[0].len();
    let flat = |blocks: &[Vec<i64>]| blocks.concat();
    let mut out = vec![flat(v)];
    let mut values: Vec<&Vec<i64>> = v.iter().collect();
    values.sort();
    values.dedup();
    for a in &values {
        for b in &values {
            if a >= b {
                continue;
            }
            let diff: Vec<i64> = a.iter().zip(b.iter()).map(|(x, y)| x - y).collect();
            for l in 1..d {
                let mut blocks = vec![vec![0; n]; d];
                blocks[0] = diff.clone();
                blocks[l] = diff.iter().map(|x| -x).collect();
                out.push(flat(&blocks));
            }
        }
    }
    out
}

fn class_b_generates(t: &SupportTuple, ess: &EssentialData, l_gens: &[Vec<i64>], d: usize) -> Result<bool> {
    let n = t.dim();
    let mut vectors = Vec::new();
    for b in 0..ess.tuples.len() {
        if let Some(v) = facet_loop_vector(t, ess, b, d) {
            vectors.extend(orbit_span(&v));
        }
    }
    let mut l_big = Vec::new();
    for k in 0..d {
        for g in l_gens {
            let mut v = vec![0; n * d];
            v[k * n..(k + 1) * n].copy_from_slice(g);
            l_big.push(v);
        }
    }
    Ok(generates_with(&vectors, &Sublattice::from_vectors(n * d, &l_big)))
}

/// One homogeneous element of `H^{⊕d}`: `support_size` entries equal `gamma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousGenerator {
    pub gamma: Vec<i64>,
    pub support_size: usize,
    pub has_zero_entry: bool,
}

/// Does the `S_d`-closure of homogeneous elements, together with `L^{⊕d}`,
/// generate `H^{⊕d}`? Part I of the homogeneous-generation lemma answers
/// "no" when the sums fail; part II answers "yes" when every nonzero entry
/// value also occurs in an element with a zero entry.
pub fn homogeneous_generation(
    h_rank: usize,
    d: usize,
    gens: &[HomogeneousGenerator],
    l: &Sublattice,
) -> Result<bool> {
    assert_eq!(h_rank, l.ambient_rank(), "L must live in H");
    for g in gens {
        assert!(g.support_size <= d, "support size exceeds d");
        assert_eq!(g.gamma.len(), h_rank);
    }
    let sums: Vec<Vec<i64>> = gens.iter().map(|g| g.gamma.iter().map(|x| x * g.support_size as i64).collect()).collect();
    if !generates_with(&sums, l) {
        return Ok(false);
    }
    let condition_one = gens
        .iter()
        .filter(|g| g.support_size > 0 && g.gamma.iter().any(|&x| x != 0))
        .all(|g| gens.iter().any(|o| o.gamma == g.gamma && o.has_zero_entry));
    if condition_one {
        Ok(true)
    } else {
        Err(Error::Condition1Unverifiable)
    }
}

/// Whether `j_* H₁(V) + π_* H₁(X)` is all of `H₁(Y)`.
pub fn inductive_connectivity(
    image_of_cover: &IntMatrix,
    image_of_subset: &IntMatrix,
    ambient: &AbelianPresentation,
) -> bool {
    surjects_onto(&image_of_cover.hstack(image_of_subset), ambient)
}
