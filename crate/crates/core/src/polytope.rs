//! Exact lattice polytopes in dimension at most 4.
//!
//! Hulls are found by brute-force facet enumeration over affinely independent
//! point subsets, which is plenty at the sizes we care about. All arithmetic
//! is exact (`i64` coordinates, checked `i128` intermediates); overflow is an
//! error, never a wrap.

use std::collections::{BTreeSet, HashSet};

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::lattice::{smith_normal_form, IntMatrix};

/// Largest ambient dimension for hulls and volumes.
pub const MAX_DIM: usize = 4;
/// Largest ambient dimension for normal-fan computations.
pub const MAX_FAN_DIM: usize = 3;

pub type LatticePoint = Vec<i64>;

/// A finite, nonempty set of lattice points, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SupportSet {
    dim: usize,
    points: Vec<LatticePoint>,
}

impl SupportSet {
    pub fn new(dim: usize, mut points: Vec<LatticePoint>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptySupport { index: 0 });
        }
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::Malformed(format!(
                "point {p:?} has length {} in dimension {dim}",
                p.len()
            )));
        }
        points.sort();
        points.dedup();
        Ok(Self { dim, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.points.binary_search_by(|q| q.as_slice().cmp(p)).is_ok()
    }

    pub fn translate(&self, v: &[i64]) -> Result<SupportSet> {
        let pts = self
            .points
            .iter()
            .map(|p| add(p, v))
            .collect::<Result<Vec<_>>>()?;
        SupportSet::new(self.dim, pts)
    }

    /// Maximum of `gamma` over the set.
    pub fn max_value(&self, gamma: &[i64]) -> i128 {
        self.points.iter().map(|p| dot(gamma, p)).max().expect("nonempty")
    }

    /// Dimension of the affine span.
    pub fn affine_dim(&self) -> usize {
        affine_frame(&self.points).map(|f| f.dim).unwrap_or(0)
    }
}

/// Facet inequality `normal . x <= offset` with a primitive normal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

/// Convex hull of a lattice point set. `facets` lists the facets of a
/// full-dimensional hull; a lower-dimensional hull has none.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    dim: usize,
    affine_dim: usize,
    vertices: Vec<LatticePoint>,
    facets: Vec<Facet>,
}

impl Polytope {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == self.dim
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn vertex_set(&self) -> SupportSet {
        SupportSet { dim: self.dim, points: self.vertices.clone() }
    }

    /// Vertices on the facet `f`.
    pub fn facet_vertices(&self, f: &Facet) -> Vec<LatticePoint> {
        self.vertices
            .iter()
            .filter(|v| dot(&f.normal, v) == f.offset as i128)
            .cloned()
            .collect()
    }

    /// Volume in units of unimodular simplices of the ambient lattice
    /// (`dim!` times the Euclidean volume); zero unless full-dimensional.
    pub fn normalized_volume(&self) -> Result<i128> {
        if !self.is_full_dimensional() {
            return Ok(0);
        }
        full_dim_volume(self)
    }

    /// Volume in units of unimodular simplices of the lattice points of the
    /// affine hull.
    pub fn relative_volume(&self) -> Result<i128> {
        let frame = affine_frame(&self.vertices)?;
        let projected = frame.project_all(&self.vertices)?;
        let hull = full_dim_hull(frame.dim, projected)?;
        full_dim_volume(&hull)
    }
}

pub fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

fn add(a: &[i64], b: &[i64]) -> Result<Vec<i64>> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_add(*y).ok_or(Error::Overflow))
        .collect()
}

fn sub(a: &[i64], b: &[i64]) -> Result<Vec<i64>> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_sub(*y).ok_or(Error::Overflow))
        .collect()
}

fn check_dim(dim: usize, max: usize) -> Result<()> {
    if dim > max {
        Err(Error::DimensionUnsupported { dim, max })
    } else {
        Ok(())
    }
}

/// Lattice coordinates on the affine hull of a point set: an origin and a
/// unimodular map from the saturated direction lattice onto `Z^dim`.
#[derive(Clone, Debug)]
pub(crate) struct AffineFrame {
    pub dim: usize,
    pub origin: Vec<i64>,
    /// `dim x n`: rows are covectors giving the coordinates.
    pub forward: Vec<Vec<i64>>,
    /// `n x dim`: columns are a basis of the direction lattice.
    pub back: Vec<Vec<i64>>,
}

impl AffineFrame {
    pub fn project(&self, p: &[i64]) -> Result<Vec<i64>> {
        let d = sub(p, &self.origin)?;
        self.forward
            .iter()
            .map(|row| dot(row, &d).to_i64().ok_or(Error::Overflow))
            .collect()
    }

    pub fn project_all(&self, pts: &[LatticePoint]) -> Result<Vec<LatticePoint>> {
        pts.iter().map(|p| self.project(p)).collect()
    }

    /// Ambient covector restricting to `y` on the affine hull coordinates.
    pub fn pull_back_covector(&self, y: &[i64]) -> Result<Vec<i64>> {
        let n = self.origin.len();
        (0..n)
            .map(|j| {
                let s: i128 = (0..self.dim).map(|i| y[i] as i128 * self.forward[i][j] as i128).sum();
                s.to_i64().ok_or(Error::Overflow)
            })
            .collect()
    }
}

pub(crate) fn affine_frame(pts: &[LatticePoint]) -> Result<AffineFrame> {
    let origin = pts[0].clone();
    let n = origin.len();
    let diffs = pts[1..].iter().map(|p| sub(p, &origin)).collect::<Result<Vec<_>>>()?;
    let snf = smith_normal_form(&IntMatrix::from_columns(&diffs, n));
    let dim = snf.rank();
    let forward = snf.u.select_rows(0..dim).rows_i64().ok_or(Error::Overflow)?;
    let back_cols = snf.u_inv.select_columns(0..dim).columns_i64().ok_or(Error::Overflow)?;
    let back = (0..n).map(|i| back_cols.iter().map(|c| c[i]).collect()).collect();
    Ok(AffineFrame { dim, origin, forward, back })
}

fn det_i128(m: &[Vec<i128>]) -> Result<i128> {
    let n = m.len();
    match n {
        0 => Ok(1),
        1 => Ok(m[0][0]),
        2 => m[0][0]
            .checked_mul(m[1][1])
            .and_then(|a| m[0][1].checked_mul(m[1][0]).and_then(|b| a.checked_sub(b)))
            .ok_or(Error::Overflow),
        _ => {
            let mut total: i128 = 0;
            for j in 0..n {
                if m[0][j] == 0 {
                    continue;
                }
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let term = m[0][j].checked_mul(det_i128(&minor)?).ok_or(Error::Overflow)?;
                total = if j % 2 == 0 { total.checked_add(term) } else { total.checked_sub(term) }
                    .ok_or(Error::Overflow)?;
            }
            Ok(total)
        }
    }
}

/// Integer normal to `k - 1` vectors in `Z^k` (generalized cross product).
fn cross(vectors: &[Vec<i64>], k: usize) -> Result<Vec<i128>> {
    (0..k)
        .map(|j| {
            let minor: Vec<Vec<i128>> = vectors
                .iter()
                .map(|v| (0..k).filter(|&c| c != j).map(|c| v[c] as i128).collect())
                .collect();
            let d = det_i128(&minor)?;
            Ok(if j % 2 == 0 { d } else { -d })
        })
        .collect()
}

fn primitive_i128(v: &[i128]) -> Result<Vec<i64>> {
    let g = v.iter().fold(0i128, |g, x| g.gcd(x));
    v.iter()
        .map(|x| (if g == 0 { *x } else { x / g }).to_i64().ok_or(Error::Overflow))
        .collect()
}

/// Hull of a full-dimensional, deduplicated point set in `Z^k`.
fn full_dim_hull(k: usize, mut pts: Vec<LatticePoint>) -> Result<Polytope> {
    pts.sort();
    pts.dedup();
    if k == 0 {
        return Ok(Polytope { dim: 0, affine_dim: 0, vertices: vec![pts[0].clone()], facets: vec![] });
    }
    if k == 1 {
        let lo = pts.first().unwrap()[0];
        let hi = pts.last().unwrap()[0];
        return Ok(Polytope {
            dim: 1,
            affine_dim: 1,
            vertices: vec![vec![lo], vec![hi]],
            facets: vec![
                Facet { normal: vec![-1], offset: -lo },
                Facet { normal: vec![1], offset: hi },
            ],
        });
    }

    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut facets = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    let n = pts.len();
    'subsets: loop {
        let base = &pts[idx[0]];
        let diffs = idx[1..].iter().map(|&i| sub(&pts[i], base)).collect::<Result<Vec<_>>>()?;
        let normal = cross(&diffs, k)?;
        if normal.iter().any(|&x| x != 0) {
            let gamma = primitive_i128(&normal)?;
            let c = dot(&gamma, base);
            let (mut pos, mut neg) = (false, false);
            for p in &pts {
                let s = dot(&gamma, p) - c;
                pos |= s > 0;
                neg |= s < 0;
                if pos && neg {
                    break;
                }
            }
            if !(pos && neg) {
                let (normal, offset) = if pos {
                    (gamma.iter().map(|x| -x).collect::<Vec<_>>(), -c)
                } else {
                    (gamma, c)
                };
                if seen.insert(normal.clone()) {
                    facets.push(Facet { normal, offset: offset.to_i64().ok_or(Error::Overflow)? });
                }
            }
        }
        // next k-combination of 0..n
        let mut i = k;
        loop {
            if i == 0 {
                break 'subsets;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                break 'subsets;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    facets.sort();

    // A point is a vertex iff the facets through it cut out nothing else.
    let on: Vec<Vec<bool>> = facets
        .iter()
        .map(|f| pts.iter().map(|p| dot(&f.normal, p) == f.offset as i128).collect())
        .collect();
    let vertices = (0..pts.len())
        .filter(|&a| {
            (0..pts.len()).all(|b| b == a || facets.iter().enumerate().any(|(fi, _)| on[fi][a] && !on[fi][b]))
        })
        .map(|a| pts[a].clone())
        .collect();
    Ok(Polytope { dim: k, affine_dim: k, vertices, facets })
}

fn full_dim_volume(p: &Polytope) -> Result<i128> {
    let k = p.dim;
    match k {
        0 => return Ok(1),
        1 => return Ok((p.vertices[1][0] - p.vertices[0][0]) as i128),
        _ => {}
    }
    let v0 = &p.vertices[0];
    let mut total: i128 = 0;
    for f in &p.facets {
        let h = f.offset as i128 - dot(&f.normal, v0);
        if h == 0 {
            continue;
        }
        let fv = p.facet_vertices(f);
        let frame = affine_frame(&fv)?;
        let sub_hull = full_dim_hull(frame.dim, frame.project_all(&fv)?)?;
        let term = h.checked_mul(full_dim_volume(&sub_hull)?).ok_or(Error::Overflow)?;
        total = total.checked_add(term).ok_or(Error::Overflow)?;
    }
    Ok(total)
}

fn hull_of_points(dim: usize, pts: &[LatticePoint]) -> Result<Polytope> {
    check_dim(dim, MAX_DIM)?;
    let frame = affine_frame(pts)?;
    if frame.dim == dim {
        return full_dim_hull(dim, pts.to_vec());
    }
    let hull = full_dim_hull(frame.dim, frame.project_all(pts)?)?;
    let mut vertices: Vec<LatticePoint> = hull
        .vertices
        .iter()
        .map(|y| {
            (0..dim)
                .map(|i| {
                    let s: i128 = frame.origin[i] as i128
                        + (0..frame.dim).map(|j| frame.back[i][j] as i128 * y[j] as i128).sum::<i128>();
                    s.to_i64().ok_or(Error::Overflow)
                })
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<_>>()?;
    vertices.sort();
    Ok(Polytope { dim, affine_dim: frame.dim, vertices, facets: vec![] })
}

/// Convex hull with minimal vertex set and primitive outward facet normals.
pub fn convex_hull(s: &SupportSet) -> Result<Polytope> {
    hull_of_points(s.dim, &s.points)
}

/// Points of `s` where `gamma` attains its maximum.
pub fn support_face(s: &SupportSet, gamma: &[i64]) -> SupportSet {
    assert_eq!(gamma.len(), s.dim, "covector dimension mismatch");
    let m = s.max_value(gamma);
    SupportSet {
        dim: s.dim,
        points: s.points.iter().filter(|p| dot(gamma, p) == m).cloned().collect(),
    }
}

/// All pairwise sums, deduplicated.
pub fn minkowski_sum(a: &SupportSet, b: &SupportSet) -> Result<SupportSet> {
    assert_eq!(a.dim, b.dim, "dimension mismatch in Minkowski sum");
    let mut out = BTreeSet::new();
    for p in &a.points {
        for q in &b.points {
            out.insert(add(p, q)?);
        }
    }
    Ok(SupportSet { dim: a.dim, points: out.into_iter().collect() })
}

/// Hull of a Minkowski sum, built from vertex sums one summand at a time.
pub fn minkowski_hull(ps: &[&Polytope]) -> Result<Polytope> {
    let dim = ps[0].dim;
    let mut acc = ps[0].clone();
    for p in &ps[1..] {
        let sum = minkowski_sum(&acc.vertex_set(), &p.vertex_set())?;
        acc = hull_of_points(dim, &sum.points)?;
    }
    Ok(acc)
}

fn factorial(n: usize) -> i128 {
    (1..=n as i128).product()
}

/// Normalized mixed volume: `MV(unit simplex, ..., unit simplex) = 1`.
pub fn lattice_mixed_volume(ps: &[Polytope]) -> Result<u64> {
    let n = ps.len();
    if n == 0 {
        return Ok(1);
    }
    for p in ps {
        check_dim(p.dim, MAX_DIM)?;
        if p.dim != n {
            return Err(Error::Malformed(format!(
                "mixed volume needs {n} polytopes in dimension {n}, got dimension {}",
                p.dim
            )));
        }
    }
    let mut numerator: i128 = 0;
    for mask in 1u32..(1 << n) {
        let members: Vec<&Polytope> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| &ps[i]).collect();
        let vol = minkowski_hull(&members)?.normalized_volume()?;
        let sign = if (n - members.len()).is_multiple_of(2) { 1 } else { -1 };
        numerator = numerator.checked_add(sign * vol).ok_or(Error::Overflow)?;
    }
    let denominator = factorial(n);
    if numerator < 0 || numerator % denominator != 0 {
        return Err(Error::NonIntegralVolume { numerator, denominator });
    }
    (numerator / denominator).to_u64().ok_or(Error::Overflow)
}

/// Mixed volume of support sets (convenience wrapper).
pub fn mixed_volume_of_sets(sets: &[SupportSet]) -> Result<u64> {
    let hulls = sets.iter().map(convex_hull).collect::<Result<Vec<_>>>()?;
    lattice_mixed_volume(&hulls)
}

/// Faces of a full-dimensional polytope other than itself, as sorted
/// vertex-index sets, each with the facets containing it.
fn proper_faces(p: &Polytope) -> Vec<(Vec<usize>, Vec<usize>)> {
    let facet_sets: Vec<BTreeSet<usize>> = p
        .facets
        .iter()
        .map(|f| {
            (0..p.vertices.len())
                .filter(|&i| dot(&f.normal, &p.vertices[i]) == f.offset as i128)
                .collect()
        })
        .collect();
    let mut faces: BTreeSet<BTreeSet<usize>> = facet_sets.iter().cloned().collect();
    loop {
        let current: Vec<BTreeSet<usize>> = faces.iter().cloned().collect();
        let mut grew = false;
        for a in 0..current.len() {
            for b in a + 1..current.len() {
                let inter: BTreeSet<usize> = current[a].intersection(&current[b]).cloned().collect();
                if !inter.is_empty() && faces.insert(inter) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    faces
        .into_iter()
        .map(|f| {
            let containing = (0..facet_sets.len()).filter(|&i| f.is_subset(&facet_sets[i])).collect();
            (f.into_iter().collect(), containing)
        })
        .collect()
}

fn fan_representatives_full(p: &Polytope) -> Result<Vec<Vec<i64>>> {
    let mut reps = BTreeSet::new();
    for (_, containing) in proper_faces(p) {
        let mut sum = vec![0i128; p.dim];
        for &fi in &containing {
            for (s, &x) in sum.iter_mut().zip(&p.facets[fi].normal) {
                *s += x as i128;
            }
        }
        reps.insert(primitive_i128(&sum)?);
    }
    Ok(reps.into_iter().collect())
}

/// One primitive covector in the relative interior of every nonzero cone of
/// the common refinement of the normal fans, i.e. of the normal fan of the
/// Minkowski sum. Sorted, so the output is deterministic.
pub fn refined_cone_representatives(ps: &[Polytope]) -> Result<Vec<Vec<i64>>> {
    let Some(first) = ps.first() else { return Ok(vec![]) };
    check_dim(first.dim, MAX_FAN_DIM)?;
    let refs: Vec<&Polytope> = ps.iter().collect();
    let sum = minkowski_hull(&refs)?;
    if sum.is_full_dimensional() {
        return fan_representatives_full(&sum);
    }
    let frame = affine_frame(&sum.vertices)?;
    if frame.dim == 0 {
        return Ok(vec![]);
    }
    let projected = full_dim_hull(frame.dim, frame.project_all(&sum.vertices)?)?;
    let mut reps = BTreeSet::new();
    for y in fan_representatives_full(&projected)? {
        let g = frame.pull_back_covector(&y)?;
        let g128: Vec<i128> = g.iter().map(|&x| x as i128).collect();
        reps.insert(primitive_i128(&g128)?);
    }
    Ok(reps.into_iter().collect())
}
