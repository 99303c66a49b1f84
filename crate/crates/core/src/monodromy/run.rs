//! The monodromy driver: base system, loop schedule and accumulation.

use num_bigint::BigInt;
use num_complex::Complex64 as C;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::loops::{
    coefficient_circle, facet_resultant_loop, random_loop, trinomial_loop, LoopKind, MonodromyLoop, FACET_EPSILON,
    FACET_T0, TRINOMIAL_EPSILON,
};
use super::perm::{Perm, PermutationGroup};
use crate::criterion::{criterion, Verdict};
use crate::error::{Error, Result};
use crate::lattice::{Index, IntMatrix, Sublattice};
use crate::numerics::{solve_system_2d, solve_univariate, Root, SparseSystem, TrackedPath, TrackerSettings};
use crate::polytope::{dot, support_face};
use crate::tuples::{essential_vectors, normalize, reduction, ReductionData, SupportTuple};

/// Largest number of roots a run accepts.
pub const MAX_ROOTS: u64 = 20;
/// Relative agreement of `L*`-coordinates for roots in one block.
pub const BLOCK_TOL: f64 = 1e-6;
const INTEGRALITY_TOL: f64 = 1e-6;
const BATCH: usize = 8;

/// Which loop families the schedule may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LoopKinds {
    pub random: bool,
    pub circles: bool,
    pub trinomial: bool,
    pub facet: bool,
}

impl LoopKinds {
    pub const ALL: LoopKinds = LoopKinds { random: true, circles: true, trinomial: true, facet: true };
}

#[derive(Clone, Debug, PartialEq)]
pub struct MonodromyConfig {
    /// Maximum number of loops attempted.
    pub budget: usize,
    pub seed: u64,
    /// Consecutive accepted loops without growth of the group before stopping.
    pub stable_loops: usize,
    /// Matching threshold in log coordinates.
    pub match_tol: f64,
    pub tracker: TrackerSettings,
    pub trinomial_epsilon: f64,
    pub facet_epsilon: f64,
    pub facet_t0: f64,
    pub kinds: LoopKinds,
}

impl Default for MonodromyConfig {
    fn default() -> Self {
        Self {
            budget: 400,
            seed: 0,
            stable_loops: 25,
            match_tol: 1e-4,
            tracker: TrackerSettings::default(),
            trinomial_epsilon: TRINOMIAL_EPSILON,
            facet_epsilon: FACET_EPSILON,
            facet_t0: FACET_T0,
            kinds: LoopKinds::ALL,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LoopOutcome {
    Accepted {
        permutation: Perm,
        /// Row `i`: net turns of each coordinate of root `i` along the loop.
        winding: Vec<Vec<f64>>,
        steps: usize,
        max_residual: f64,
        enlarged_group: bool,
    },
    Rejected {
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct LoopRecord {
    pub index: usize,
    pub kind: LoopKind,
    pub outcome: LoopOutcome,
}

impl LoopRecord {
    pub fn permutation(&self) -> Option<&Perm> {
        match &self.outcome {
            LoopOutcome::Accepted { permutation, .. } => Some(permutation),
            LoopOutcome::Rejected { .. } => None,
        }
    }
}

/// Integer winding matrix of a loop (or loop power) acting trivially on the roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedWinding {
    pub loop_index: usize,
    /// How many times the loop was repeated.
    pub power: usize,
    /// Row `i` is the winding vector of root `i`.
    pub winding: Vec<Vec<i64>>,
}

impl ClosedWinding {
    /// The element of `Z^{n·d̃}` (root-major).
    pub fn flattened(&self) -> Vec<i64> {
        self.winding.iter().flatten().copied().collect()
    }
}

#[derive(Clone, Debug)]
pub struct MonodromyRun {
    /// The normalized tuple the run works on.
    pub tuple: SupportTuple,
    pub reduction: ReductionData,
    pub verdict: Option<Verdict>,
    pub base: SparseSystem,
    /// Roots of the base system; their order is the ranking.
    pub roots: Vec<Root>,
    pub config: MonodromyConfig,
    pub loops: Vec<LoopRecord>,
    pub group: PermutationGroup,
    /// Group order after each loop.
    pub order_history: Vec<BigInt>,
    /// Necklaces: roots with equal image under the reduction covering.
    pub blocks: Vec<Vec<usize>>,
    /// Loops and loop powers with identity permutation.
    pub closed_windings: Vec<ClosedWinding>,
    /// The solution lattice of the reduced problem in `Z^{n·d}` (block-major).
    pub solution_lattice: Sublattice,
    /// Whether the solution lattice and `L^{⊕d}` generate everything.
    pub inductively_connected: bool,
    /// The solution lattice is full; or `m > 1` and the run is inductively
    /// connected; or connectivity is excluded by a `StrictlySmaller` verdict.
    pub lattice_decided: bool,
    pub budget_exhausted: bool,
    /// Consecutive accepted loops at the end without growth of the group.
    pub stable_loops: usize,
}

impl MonodromyRun {
    pub fn order(&self) -> BigInt {
        self.group.order()
    }

    pub fn accepted(&self) -> usize {
        self.loops.iter().filter(|l| l.permutation().is_some()).count()
    }

    pub fn rejected(&self) -> usize {
        self.loops.len() - self.accepted()
    }

    /// Invariant factors of the solution lattice alone.
    pub fn solution_lattice_invariants(&self) -> Vec<BigInt> {
        self.solution_lattice.invariant_factors()
    }

    /// Whether the solution lattice alone is all of `Z^{n·d}`.
    pub fn solution_lattice_is_full(&self) -> bool {
        self.solution_lattice.index() == Index::Finite(BigInt::from(1))
    }

    fn l_sum(&self) -> Sublattice {
        block_diagonal(&self.reduction.dual, self.blocks.len())
    }
}

fn block_diagonal(m: &IntMatrix, copies: usize) -> Sublattice {
    let (r, c) = (m.rows(), m.cols());
    let mut big = IntMatrix::zeros(r * copies, c * copies);
    for k in 0..copies {
        for i in 0..r {
            for j in 0..c {
                big[(k * r + i, k * c + j)] = m[(i, j)].clone();
            }
        }
    }
    Sublattice::new(r * copies, big)
}

/// Distance in log coordinates: `max_k |log(a_k / b_k)|`.
pub fn log_distance(a: &[C], b: &[C]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x / y).ln().norm()).fold(0.0, f64::max)
}

/// The permutation sending start `i` to the start nearest to the end of
/// path `i`. Each match must be closer than `tol`, with every other start at
/// least `10·tol` away.
pub fn match_permutation(starts: &[Vec<C>], ends: &[Vec<C>], tol: f64) -> std::result::Result<Perm, String> {
    let mut images = Vec::with_capacity(ends.len());
    for (i, e) in ends.iter().enumerate() {
        let mut d: Vec<(f64, usize)> = starts.iter().enumerate().map(|(k, s)| (log_distance(e, s), k)).collect();
        d.sort_by(|a, b| a.0.total_cmp(&b.0));
        if d[0].0 >= tol {
            return Err(format!("end of path {} is {:.2e} from the nearest root", i + 1, d[0].0));
        }
        if d.len() > 1 && d[1].0 < 10.0 * tol {
            return Err(format!("end of path {} is ambiguous", i + 1));
        }
        images.push(d[0].1);
    }
    Perm::from_images(images).ok_or_else(|| "end points do not form a permutation".to_string())
}

/// Image of a point of the original torus in the reduced torus:
/// coordinate `k` is the monomial with exponent column `k` of `L`.
pub fn reduced_coordinates(red: &ReductionData, x: &[C]) -> Result<Vec<C>> {
    let cols = red.embedding.columns_i64().ok_or(Error::Overflow)?;
    Ok(cols
        .iter()
        .map(|col| x.iter().zip(col).fold(C::new(1.0, 0.0), |acc, (z, &e)| acc * z.powi(e as i32)))
        .collect())
}

fn close(a: &[C], b: &[C], tol: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol * y.norm().max(x.norm()))
}

/// Groups roots whose reduced coordinates agree; blocks are ordered by
/// their smallest root index.
pub fn necklaces(red: &ReductionData, roots: &[Vec<C>]) -> Result<Vec<Vec<usize>>> {
    let images = roots.iter().map(|x| reduced_coordinates(red, x)).collect::<Result<Vec<_>>>()?;
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for (i, y) in images.iter().enumerate() {
        match blocks.iter_mut().find(|b| close(y, &images[b[0]], BLOCK_TOL)) {
            Some(b) => b.push(i),
            None => blocks.push(vec![i]),
        }
    }
    Ok(blocks)
}

/// The permutation of blocks induced by `p`, if `p` maps blocks onto blocks
/// commuting with the deck action (checked through coordinate ratios).
pub fn block_action(p: &Perm, blocks: &[Vec<usize>], roots: &[Vec<C>]) -> std::result::Result<Perm, String> {
    let mut owner = vec![0; p.degree()];
    for (b, members) in blocks.iter().enumerate() {
        for &i in members {
            owner[i] = b;
        }
    }
    let mut images = Vec::with_capacity(blocks.len());
    for (b, members) in blocks.iter().enumerate() {
        let target = owner[p.apply(members[0])];
        if members.iter().any(|&i| owner[p.apply(i)] != target) {
            return Err(format!("block {} is split", b + 1));
        }
        let x0 = &roots[members[0]];
        let y0 = &roots[p.apply(members[0])];
        for &i in &members[1..] {
            let before: Vec<C> = roots[i].iter().zip(x0).map(|(a, b)| a / b).collect();
            let after: Vec<C> = roots[p.apply(i)].iter().zip(y0).map(|(a, b)| a / b).collect();
            if !close(&after, &before, BLOCK_TOL) {
                return Err(format!("block {} is not moved by a deck transformation", b + 1));
            }
        }
        images.push(target);
    }
    Perm::from_images(images).ok_or_else(|| "blocks are not permuted".to_string())
}

fn solve_base(tuple: &SupportTuple, rng: &mut ChaCha8Rng) -> Result<(SparseSystem, Vec<Root>)> {
    let mut last = Error::ConvergenceFailure;
    for _ in 0..20 {
        let sys = SparseSystem::random(tuple.clone(), rng);
        let roots = match tuple.dim() {
            1 => solve_univariate(&sys),
            2 => solve_system_2d(&sys),
            n => return Err(Error::DimensionUnsupported { dim: n, max: 2 }),
        };
        match roots {
            Ok(r) => return Ok((sys, r)),
            Err(e) => last = e,
        }
    }
    Err(last)
}

#[derive(Clone, Debug)]
enum Structured {
    Trinomial { j: usize, turns: i64 },
    Facet { gamma: Vec<i64>, d: u64, j: usize, a: Vec<i64>, turns: i64 },
}

fn structured_loops(t: &SupportTuple, kinds: LoopKinds) -> Result<Vec<Structured>> {
    let mut out = Vec::new();
    if t.dim() == 1 && kinds.trinomial {
        let pts = t.set(0).points();
        for j in 1..pts.len() {
            out.push(Structured::Trinomial { j, turns: pts[j][0] - pts[0][0] });
        }
    }
    if t.dim() == 2 && kinds.facet {
        let ess = essential_vectors(t)?;
        for b in ess.tuples.iter().filter(|b| b.in_e0) {
            let rec = &ess.records[b.members[0]];
            for (j, set) in t.sets().iter().enumerate() {
                let face = support_face(set, &rec.gamma);
                let top = set.max_value(&rec.gamma);
                for a in set.points().iter().filter(|p| !face.contains(p)) {
                    out.push(Structured::Facet {
                        gamma: rec.gamma.clone(),
                        d: rec.d,
                        j,
                        a: a.clone(),
                        turns: (top - dot(&rec.gamma, a)) as i64,
                    });
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Slot {
    Random,
    Structured,
    Circle,
}

/// Loop family at position `k`: two random loops, one structured loop and
/// one coefficient circle in every four, falling back on what is available.
fn slot(k: usize, kinds: LoopKinds, structured: usize, circles: usize) -> Slot {
    let preferred = match k % 4 {
        1 => 1,
        3 => 2,
        _ => 0,
    };
    for offset in 0..3 {
        match (preferred + offset) % 3 {
            0 if kinds.random => return Slot::Random,
            1 if structured > 0 => return Slot::Structured,
            2 if kinds.circles && circles > 0 => return Slot::Circle,
            _ => {}
        }
    }
    Slot::Random
}

fn loop_rng(seed: u64, k: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k as u64 + 1);
    rng
}

struct Planner {
    structured: Vec<Structured>,
    circles: Vec<(usize, usize)>,
}

impl Planner {
    fn build(&self, run: &MonodromyRun, k: usize) -> Result<MonodromyLoop> {
        let cfg = &run.config;
        let mut rng = loop_rng(cfg.seed, k);
        let kind = |i| slot(i, cfg.kinds, self.structured.len(), self.circles.len());
        let here = kind(k);
        let earlier = (0..k).filter(|&i| kind(i) == here).count();
        match here {
            Slot::Random => Ok(random_loop(&run.base, &mut rng)),
            Slot::Circle => {
                let (set, index) = self.circles[earlier % self.circles.len()];
                Ok(coefficient_circle(&run.base, set, index, 1))
            }
            Slot::Structured => match &self.structured[earlier % self.structured.len()] {
                Structured::Trinomial { j, turns } => {
                    trinomial_loop(&run.base, *j, *turns, cfg.trinomial_epsilon, &mut rng)
                }
                Structured::Facet { gamma, d, j, a, turns } => facet_resultant_loop(
                    &run.base,
                    gamma,
                    *d,
                    *j,
                    a,
                    *turns,
                    cfg.facet_epsilon,
                    cfg.facet_t0,
                    &mut rng,
                ),
            },
        }
    }
}

/// Tracks every base root once around `l`.
pub fn execute_loop(run: &MonodromyRun, l: &MonodromyLoop) -> Vec<Result<TrackedPath>> {
    let starts: Vec<Vec<C>> = run.roots.iter().map(|r| r.x.clone()).collect();
    l.path.track_all(&run.tuple, &starts, &run.config.tracker)
}

fn rounded(v: &[f64]) -> Option<Vec<i64>> {
    v.iter()
        .map(|&x| ((x - x.round()).abs() < INTEGRALITY_TOL).then(|| x.round() as i64))
        .collect()
}

/// Sum of the rows of `w` along the orbit of `start` under `k` steps of `p`.
fn orbit_sum(w: &[Vec<f64>], p: &Perm, start: usize, k: usize) -> Vec<f64> {
    let mut acc = vec![0.0; w[0].len()];
    let mut i = start;
    for _ in 0..k {
        for (a, b) in acc.iter_mut().zip(&w[i]) {
            *a += b;
        }
        i = p.apply(i);
    }
    acc
}

struct Absorbed {
    outcome: LoopOutcome,
    closed: Option<ClosedWinding>,
    reduced: Option<Vec<i64>>,
}

fn analyse(run: &MonodromyRun, index: usize, l: &MonodromyLoop, results: Vec<Result<TrackedPath>>) -> Absorbed {
    let reject = |reason: String| Absorbed { outcome: LoopOutcome::Rejected { reason }, closed: None, reduced: None };
    let mut paths = Vec::with_capacity(results.len());
    for r in results {
        match r {
            Ok(p) => paths.push(p),
            Err(e) => return reject(e.to_string()),
        }
    }
    let starts: Vec<Vec<C>> = run.roots.iter().map(|r| r.x.clone()).collect();
    let ends: Vec<Vec<C>> = paths.iter().map(|p| p.end.clone()).collect();
    let perm = match match_permutation(&starts, &ends, run.config.match_tol) {
        Ok(p) => p,
        Err(e) => return reject(e),
    };
    let winding: Vec<Vec<f64>> = paths.iter().map(|p| p.winding.clone()).collect();
    let block_perm = match block_action(&perm, &run.blocks, &starts) {
        Ok(b) => b,
        Err(e) => return reject(Error::BlockStructureViolated(e).to_string()),
    };

    let k = perm.order();
    let closed_rows: Option<Vec<Vec<i64>>> = (0..winding.len()).map(|i| rounded(&orbit_sum(&winding, &perm, i, k))).collect();
    let Some(closed_rows) = closed_rows else {
        return reject("winding of a closed loop is not integral".into());
    };
    if let Some(sig) = &l.signature {
        let hits = closed_rows.iter().filter(|w| **w == sig.vector).count();
        let zeros = closed_rows.iter().filter(|w| w.iter().all(|&x| x == 0)).count();
        if !perm.is_identity() || hits != sig.count || hits + zeros != closed_rows.len() {
            let e = Error::SignatureMismatch(format!(
                "expected identity with {} windings {:?}, got permutation {perm} with {hits} matching and {} other nonzero",
                sig.count,
                sig.vector,
                closed_rows.len() - hits - zeros
            ));
            return reject(e.to_string());
        }
    }

    let kb = block_perm.order();
    let dual = run.reduction.dual.rows_i64().expect("reduction entries fit in i64");
    let mut reduced = Vec::new();
    for b in &run.blocks {
        let w = orbit_sum(&winding, &perm, b[0], kb);
        let image: Vec<f64> = dual.iter().map(|row| row.iter().zip(&w).map(|(&a, x)| a as f64 * x).sum()).collect();
        match rounded(&image) {
            Some(v) => reduced.extend(v),
            None => return reject("reduced winding is not integral".into()),
        }
    }

    Absorbed {
        outcome: LoopOutcome::Accepted {
            permutation: perm,
            winding,
            steps: paths.iter().map(|p| p.steps).sum(),
            max_residual: paths.iter().map(|p| p.max_residual).fold(0.0, f64::max),
            enlarged_group: false,
        },
        closed: Some(ClosedWinding { loop_index: index, power: k, winding: closed_rows }),
        reduced: Some(reduced),
    }
}

/// Numerical monodromy of a tuple with `n ≤ 2` and at most [`MAX_ROOTS`] roots.
pub fn run_monodromy(t: &SupportTuple, config: &MonodromyConfig) -> Result<MonodromyRun> {
    let tuple = normalize(t);
    let n = tuple.dim();
    if n > 2 {
        return Err(Error::DimensionUnsupported { dim: n, max: 2 });
    }
    let total = tuple.mixed_volume()?;
    if total > MAX_ROOTS {
        return Err(Error::Malformed(format!("{total} roots exceed the limit of {MAX_ROOTS}")));
    }
    let red = reduction(&tuple)?;
    let m = red.index_u64()?;
    let verdict = criterion(&tuple).ok();
    let mut base_rng = ChaCha8Rng::seed_from_u64(config.seed);
    let (base, roots) = solve_base(&tuple, &mut base_rng)?;
    let xs: Vec<Vec<C>> = roots.iter().map(|r| r.x.clone()).collect();
    let blocks = necklaces(&red, &xs)?;
    if blocks.iter().any(|b| b.len() as u64 != m) || (blocks.len() as u64) * m != total {
        return Err(Error::BlockStructureViolated(format!(
            "{} roots fall into blocks of sizes {:?}, expected blocks of {m}",
            total,
            blocks.iter().map(Vec::len).collect::<Vec<_>>()
        )));
    }
    let d = blocks.len();
    let mut run = MonodromyRun {
        tuple: tuple.clone(),
        reduction: red,
        verdict,
        base,
        roots,
        config: config.clone(),
        loops: vec![],
        group: PermutationGroup::trivial(total as usize),
        order_history: vec![],
        blocks,
        closed_windings: vec![],
        solution_lattice: Sublattice::zero(n * d),
        inductively_connected: false,
        lattice_decided: false,
        budget_exhausted: false,
        stable_loops: 0,
    };
    let l_sum = run.l_sum();
    let strictly_smaller = matches!(run.verdict, Some(Verdict::StrictlySmaller { .. }));
    let update_status = |run: &mut MonodromyRun| {
        let joined = run.solution_lattice.join(&l_sum);
        run.inductively_connected = joined.index() == Index::Finite(BigInt::from(1));
        run.lattice_decided =
            run.solution_lattice_is_full() || (m > 1 && run.inductively_connected) || strictly_smaller;
    };
    update_status(&mut run);

    let planner = Planner {
        structured: structured_loops(&tuple, config.kinds)?,
        circles: tuple.sets().iter().enumerate().flat_map(|(i, s)| (0..s.len()).map(move |k| (i, k))).collect(),
    };
    let mut k = 0;
    'outer: while k < config.budget {
        let batch: Vec<usize> = (k..(k + BATCH).min(config.budget)).collect();
        let built = batch.iter().map(|&i| planner.build(&run, i)).collect::<Result<Vec<_>>>()?;
        let tracked: Vec<_> = built.par_iter().map(|l| execute_loop(&run, l)).collect();
        for ((i, l), results) in batch.into_iter().zip(built).zip(tracked) {
            k = i + 1;
            let mut a = analyse(&run, i, &l, results);
            if let LoopOutcome::Accepted { permutation, enlarged_group, .. } = &mut a.outcome {
                *enlarged_group = run.group.add_generator(permutation.clone());
                run.stable_loops = if *enlarged_group { 0 } else { run.stable_loops + 1 };
            }
            if let Some(c) = a.closed {
                run.closed_windings.push(c);
            }
            if let Some(v) = a.reduced {
                let added = Sublattice::from_vectors(n * d, &[v]);
                let joined = run.solution_lattice.join(&added);
                run.solution_lattice = Sublattice::new(n * d, joined.basis());
                update_status(&mut run);
            }
            run.loops.push(LoopRecord { index: i, kind: l.kind, outcome: a.outcome });
            run.order_history.push(run.group.order());
            if run.stable_loops >= config.stable_loops && run.lattice_decided {
                break 'outer;
            }
        }
    }
    run.budget_exhausted = !(run.stable_loops >= config.stable_loops && run.lattice_decided);
    Ok(run)
}
