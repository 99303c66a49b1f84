//! Closed loops in coefficient space, based at a fixed system.

use num_complex::Complex64 as C;
use rand::Rng;

use crate::error::{Error, Result};
use crate::numerics::{random_coefficients, random_complex, Loop, Piece, SparseSystem};
use crate::polytope::{dot, support_face};

/// Radius of the constant-coefficient circle in trinomial loops.
pub const TRINOMIAL_EPSILON: f64 = 1e-3;
/// Radius of the edge-coefficient circle in facet-resultant loops.
pub const FACET_EPSILON: f64 = 1e-2;
/// Scale of the off-edge terms of the central system.
pub const FACET_T0: f64 = 1e-5;

#[derive(Clone, Debug, PartialEq)]
pub enum LoopKind {
    /// Base, two random systems, base, along segments.
    RandomTriangle,
    /// Coefficient `(set, point)` multiplied by `e^{2πi·turns·s}`.
    CoefficientCircle { set: usize, point: Vec<i64>, turns: i64 },
    /// `ε e^{2πi·turns·s} + x^{a_j} + x^a`, reached through a random system.
    Trinomial { exponent: i64, turns: i64, epsilon: f64 },
    /// A small circle around the facet resultant of `gamma`, near the central
    /// system built from the extra monomial `a` in equation `j`.
    FacetResultant { gamma: Vec<i64>, j: usize, a: Vec<i64>, turns: i64, epsilon: f64, t0: f64 },
}

impl LoopKind {
    pub fn name(&self) -> &'static str {
        match self {
            LoopKind::RandomTriangle => "random-triangle",
            LoopKind::CoefficientCircle { .. } => "coefficient-circle",
            LoopKind::Trinomial { .. } => "trinomial",
            LoopKind::FacetResultant { .. } => "facet-resultant",
        }
    }
}

/// Winding pattern a loop must produce: the identity permutation, `count`
/// roots with winding `vector`, all others 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    pub vector: Vec<i64>,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MonodromyLoop {
    pub kind: LoopKind,
    pub path: Loop,
    pub signature: Option<Signature>,
}

fn segment(from: &[Vec<C>], to: &[Vec<C>]) -> Piece {
    Piece::Segment { from: from.to_vec(), to: to.to_vec() }
}

/// `base → w₁ → w₂ → base` for random systems `w₁`, `w₂`.
pub fn random_loop<R: Rng + ?Sized>(base: &SparseSystem, rng: &mut R) -> MonodromyLoop {
    let b = base.coefficients();
    let w1 = random_coefficients(base.tuple(), rng);
    let w2 = random_coefficients(base.tuple(), rng);
    MonodromyLoop {
        kind: LoopKind::RandomTriangle,
        path: Loop::new(vec![segment(b, &w1), segment(&w1, &w2), segment(&w2, b)]),
        signature: None,
    }
}

/// Rotates one coefficient of the base system `turns` times around 0.
pub fn coefficient_circle(base: &SparseSystem, set: usize, index: usize, turns: i64) -> MonodromyLoop {
    let c = base.coefficients()[set][index];
    MonodromyLoop {
        kind: LoopKind::CoefficientCircle { set, point: base.tuple().set(set).points()[index].clone(), turns },
        path: Loop::new(vec![Piece::Circle {
            base: base.coefficients().to_vec(),
            set,
            index,
            center: C::new(0.0, 0.0),
            radius: c.norm(),
            turns,
            phase0: c.arg(),
        }]),
        signature: None,
    }
}

/// Conjugates a circle by `base → random system → circle start`.
fn conjugated<R: Rng + ?Sized>(base: &SparseSystem, circle: Piece, rng: &mut R) -> Loop {
    let w = random_coefficients(base.tuple(), rng);
    let start = circle.start();
    let path = [segment(base.coefficients(), &w), segment(&w, &start)];
    Loop::conjugate(&path, &Loop::new(vec![circle]))
}

/// Trinomial loop of a univariate support on the point with index `j`
/// (`j ≥ 1`). The lowest coefficient runs `turns` times around a circle of
/// radius `epsilon` about 0 while the coefficients of `a_j` and of the top
/// exponent are 1 and all others vanish. With `turns = a_j - a_0` the
/// signature is `a_j - a_0` roots winding once.
pub fn trinomial_loop<R: Rng + ?Sized>(
    base: &SparseSystem,
    j: usize,
    turns: i64,
    epsilon: f64,
    rng: &mut R,
) -> Result<MonodromyLoop> {
    let t = base.tuple();
    if t.dim() != 1 {
        return Err(Error::DimensionUnsupported { dim: t.dim(), max: 1 });
    }
    let pts = t.set(0).points();
    let top = pts.len() - 1;
    if j == 0 || j > top {
        return Err(Error::Malformed(format!("trinomial index {j} must lie in 1..={top}")));
    }
    let mut c = vec![vec![C::new(0.0, 0.0); pts.len()]];
    c[0][j] = C::new(1.0, 0.0);
    c[0][top] = C::new(1.0, 0.0);
    let circle = Piece::Circle { base: c, set: 0, index: 0, center: C::new(0.0, 0.0), radius: epsilon, turns, phase0: 0.0 };
    let small = pts[j][0] - pts[0][0];
    let signature = (turns == small).then(|| Signature { vector: vec![1], count: small as usize });
    Ok(MonodromyLoop {
        kind: LoopKind::Trinomial { exponent: pts[j][0], turns, epsilon },
        path: conjugated(base, circle, rng),
        signature,
    })
}

/// Facet-resultant loop for a planar tuple. The faces `B_i` of the sets in
/// direction `gamma` must all be edges. The central system puts edge
/// polynomials with a common root on the edge torus, coefficient 1 on `a` in
/// equation `j`, and random terms of size `t0` elsewhere; the constant edge
/// coefficient of equation `j` then circles `turns` times clockwise with
/// radius `epsilon` (counterclockwise circles give winding `-γ`). `d_gamma` is the resultant multiplicity and sets the expected
/// signature when `turns` equals `h_a = γ(B_j) - γ(a)`.
#[allow(clippy::too_many_arguments)]
pub fn facet_resultant_loop<R: Rng + ?Sized>(
    base: &SparseSystem,
    gamma: &[i64],
    d_gamma: u64,
    j: usize,
    a: &[i64],
    turns: i64,
    epsilon: f64,
    t0: f64,
    rng: &mut R,
) -> Result<MonodromyLoop> {
    let t = base.tuple();
    if t.dim() != 2 {
        return Err(Error::DimensionUnsupported { dim: t.dim(), max: 2 });
    }
    let faces: Vec<_> = t.sets().iter().map(|s| support_face(s, gamma)).collect();
    if faces.iter().any(|f| f.affine_dim() != 1) {
        return Err(Error::Malformed(format!("faces in direction {gamma:?} are not all edges")));
    }
    let aj = t.set(j).points().iter().position(|p| p == a);
    let Some(a_index) = aj.filter(|_| !faces[j].contains(a)) else {
        return Err(Error::Malformed(format!("{a:?} is not a point of set {j} off the face")));
    };
    let h_a = (t.set(j).max_value(gamma) - dot(gamma, a)) as i64;

    let e = [-gamma[1], gamma[0]];
    let e_norm = (e[0] * e[0] + e[1] * e[1]) as i128;
    let u0 = C::from_polar(rng.random_range(0.5..2.0), rng.random_range(0.0..std::f64::consts::TAU));
    let mut coeffs: Vec<Vec<C>> = Vec::with_capacity(2);
    for (i, set) in t.sets().iter().enumerate() {
        let origin = faces[i].points()[0].clone();
        let mut row = Vec::with_capacity(set.len());
        let mut balance = C::new(0.0, 0.0);
        let mut origin_index = 0;
        for (k, p) in set.points().iter().enumerate() {
            let c = if faces[i].contains(p) {
                if *p == origin {
                    origin_index = k;
                    C::new(0.0, 0.0)
                } else {
                    let diff = [p[0] - origin[0], p[1] - origin[1]];
                    let step = (dot(&diff, &e) / e_norm) as i32;
                    let c = random_complex(rng);
                    balance += c * u0.powi(step);
                    c
                }
            } else if i == j && k == a_index {
                C::new(1.0, 0.0)
            } else {
                random_complex(rng) * t0
            };
            row.push(c);
        }
        row[origin_index] = -balance;
        coeffs.push(row);
    }
    let origin_j = t.set(j).points().iter().position(|p| *p == faces[j].points()[0]).unwrap();
    let center = coeffs[j][origin_j];
    let circle = Piece::Circle { base: coeffs, set: j, index: origin_j, center, radius: epsilon, turns: -turns, phase0: 0.0 };
    let signature = (turns == h_a).then(|| Signature { vector: gamma.to_vec(), count: (d_gamma * h_a as u64) as usize });
    Ok(MonodromyLoop {
        kind: LoopKind::FacetResultant { gamma: gamma.to_vec(), j, a: a.to_vec(), turns, epsilon, t0 },
        path: conjugated(base, circle, rng),
        signature,
    })
}
