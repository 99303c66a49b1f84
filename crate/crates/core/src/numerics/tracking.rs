//! Predictor–corrector continuation of roots along coefficient paths.

use num_complex::Complex64 as C;
use rayon::prelude::*;
use std::f64::consts::{FRAC_PI_2, TAU};

use super::linalg;
use super::system::{evaluate, jacobian, newton, relative_step, scaled_residual};
use crate::error::{Error, Result};
use crate::tuples::SupportTuple;

/// A family of coefficient vectors `c(s)`, `s ∈ [0, 1]`, on a fixed support.
pub trait CoefficientPath: Sync {
    fn tuple(&self) -> &SupportTuple;
    fn coefficients(&self, s: f64) -> Vec<Vec<C>>;
    fn derivative(&self, s: f64) -> Vec<Vec<C>>;
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrackerSettings {
    pub initial_step: f64,
    pub max_step: f64,
    pub min_step: f64,
    /// Relative size the first corrector step may have before the step is rejected.
    pub first_correction: f64,
    /// Relative correction at which the corrector has converged.
    pub corrector_tol: f64,
    pub corrector_iters: usize,
    /// Scaled residual required at the end point.
    pub endpoint_tol: f64,
}

impl Default for TrackerSettings {
    fn default() -> Self {
        Self {
            initial_step: 0.01,
            max_step: 0.05,
            min_step: 1e-12,
            first_correction: 1e-3,
            corrector_tol: 1e-10,
            corrector_iters: 4,
            endpoint_tol: 1e-12,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrackedPath {
    pub start: Vec<C>,
    pub end: Vec<C>,
    /// Net number of turns of each coordinate around 0.
    pub winding: Vec<f64>,
    pub steps: usize,
    pub max_residual: f64,
}

impl TrackedPath {
    /// Winding numbers rounded to integers; only meaningful for closed paths.
    pub fn integer_winding(&self) -> Vec<i64> {
        self.winding.iter().map(|w| w.round() as i64).collect()
    }
}

fn velocity(path: &dyn CoefficientPath, s: f64, x: &[C]) -> Result<Vec<C>> {
    let t = path.tuple();
    let c = path.coefficients(s);
    let ds = evaluate(t, &path.derivative(s), x)?;
    let j = jacobian(t, &c, x)?;
    let rhs: Vec<C> = ds.iter().map(|v| -v).collect();
    linalg::solve(&j, &rhs)
}

fn axpy(x: &[C], h: f64, k: &[C]) -> Vec<C> {
    x.iter().zip(k).map(|(a, b)| a + b * h).collect()
}

fn rk4(path: &dyn CoefficientPath, s: f64, x: &[C], h: f64) -> Result<Vec<C>> {
    let k1 = velocity(path, s, x)?;
    let k2 = velocity(path, s + h / 2.0, &axpy(x, h / 2.0, &k1))?;
    let k3 = velocity(path, s + h / 2.0, &axpy(x, h / 2.0, &k2))?;
    let k4 = velocity(path, s + h, &axpy(x, h, &k3))?;
    Ok(x.iter()
        .enumerate()
        .map(|(i, a)| a + (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (h / 6.0))
        .collect())
}

fn correct(path: &dyn CoefficientPath, s: f64, x0: Vec<C>, set: &TrackerSettings) -> Option<Vec<C>> {
    let t = path.tuple();
    let c = path.coefficients(s);
    let mut x = x0;
    for it in 0..set.corrector_iters {
        let f = evaluate(t, &c, &x).ok()?;
        let j = jacobian(t, &c, &x).ok()?;
        let neg: Vec<C> = f.iter().map(|v| -v).collect();
        let dx = linalg::solve(&j, &neg).ok()?;
        let size = relative_step(&dx, &x);
        if it == 0 && size > set.first_correction {
            return None;
        }
        for (z, d) in x.iter_mut().zip(&dx) {
            *z += d;
        }
        if x.iter().any(|z| !z.is_finite() || z.norm() == 0.0) {
            return None;
        }
        if size < set.corrector_tol {
            return Some(x);
        }
    }
    None
}

/// Continues the root `start` of `c(0)` to a root of `c(1)`.
pub fn track_path(path: &dyn CoefficientPath, start: &[C], set: &TrackerSettings) -> Result<TrackedPath> {
    let t = path.tuple();
    let mut x = start.to_vec();
    let mut winding = vec![0.0; x.len()];
    let mut s = 0.0;
    let mut h = set.initial_step.min(set.max_step);
    let mut streak = 0;
    let mut steps = 0;
    let mut max_residual = scaled_residual(t, &path.coefficients(0.0), &x)?;
    while s < 1.0 {
        let step = h.min(1.0 - s);
        let target = if s + step >= 1.0 - 1e-15 { 1.0 } else { s + step };
        let accepted = rk4(path, s, &x, target - s).ok().and_then(|p| correct(path, target, p, set));
        let turn = accepted.as_ref().map(|y| {
            y.iter().zip(&x).map(|(a, b)| (a / b).arg()).collect::<Vec<f64>>()
        });
        match (accepted, turn) {
            (Some(y), Some(turn)) if turn.iter().all(|a| a.abs() < FRAC_PI_2) => {
                for (w, a) in winding.iter_mut().zip(&turn) {
                    *w += a / TAU;
                }
                x = y;
                s = target;
                steps += 1;
                max_residual = max_residual.max(scaled_residual(t, &path.coefficients(s), &x)?);
                streak += 1;
                if streak >= 5 {
                    h = (h * 2.0).min(set.max_step);
                    streak = 0;
                }
            }
            _ => {
                h /= 2.0;
                streak = 0;
                if h < set.min_step {
                    return Err(Error::StepUnderflow { s });
                }
            }
        }
    }
    let c1 = path.coefficients(1.0);
    let (end, _) = newton(t, &c1, &x, 1e-14, 20).unwrap_or_else(|_| (x.clone(), 0));
    let r = scaled_residual(t, &c1, &end)?;
    if r >= set.endpoint_tol {
        return Err(Error::TrackingFailure(format!("end point residual {r:.3e}")));
    }
    for (w, (a, b)) in winding.iter_mut().zip(end.iter().zip(&x)) {
        *w += (a / b).arg() / TAU;
    }
    Ok(TrackedPath { start: start.to_vec(), end, winding, steps, max_residual: max_residual.max(r) })
}

/// One piece of a closed loop in coefficient space.
#[derive(Clone, Debug, PartialEq)]
pub enum Piece {
    /// Straight segment between two coefficient vectors.
    Segment { from: Vec<Vec<C>>, to: Vec<Vec<C>> },
    /// The coefficient `(set, index)` runs `turns` times around `center + radius e^{iθ}`
    /// starting at `θ = phase0`; all other coefficients stay at `base`.
    Circle { base: Vec<Vec<C>>, set: usize, index: usize, center: C, radius: f64, turns: i64, phase0: f64 },
}

impl Piece {
    pub fn start(&self) -> Vec<Vec<C>> {
        match self {
            Piece::Segment { from, .. } => from.clone(),
            Piece::Circle { .. } => self.coefficients_at(0.0),
        }
    }

    pub fn end(&self) -> Vec<Vec<C>> {
        match self {
            Piece::Segment { to, .. } => to.clone(),
            Piece::Circle { .. } => self.coefficients_at(1.0),
        }
    }

    pub fn reversed(&self) -> Piece {
        match self {
            Piece::Segment { from, to } => Piece::Segment { from: to.clone(), to: from.clone() },
            Piece::Circle { base, set, index, center, radius, turns, phase0 } => Piece::Circle {
                base: base.clone(),
                set: *set,
                index: *index,
                center: *center,
                radius: *radius,
                turns: -turns,
                phase0: *phase0,
            },
        }
    }

    fn phase(turns: i64, phase0: f64, s: f64) -> f64 {
        phase0 + TAU * (turns as f64 * s).rem_euclid(1.0)
    }

    fn coefficients_at(&self, s: f64) -> Vec<Vec<C>> {
        match self {
            Piece::Segment { from, to } => from
                .iter()
                .zip(to)
                .map(|(a, b)| a.iter().zip(b).map(|(p, q)| p * (1.0 - s) + q * s).collect())
                .collect(),
            Piece::Circle { base, set, index, center, radius, turns, phase0 } => {
                let mut c = base.clone();
                c[*set][*index] = center + C::from_polar(*radius, Self::phase(*turns, *phase0, s));
                c
            }
        }
    }

    fn derivative_at(&self, s: f64) -> Vec<Vec<C>> {
        match self {
            Piece::Segment { from, to } => from
                .iter()
                .zip(to)
                .map(|(a, b)| a.iter().zip(b).map(|(p, q)| q - p).collect())
                .collect(),
            Piece::Circle { base, set, index, radius, turns, phase0, .. } => {
                let mut d: Vec<Vec<C>> = base.iter().map(|r| vec![C::new(0.0, 0.0); r.len()]).collect();
                let th = Self::phase(*turns, *phase0, s);
                d[*set][*index] = C::new(0.0, TAU * *turns as f64) * C::from_polar(*radius, th);
                d
            }
        }
    }
}

struct PieceOn<'a> {
    tuple: &'a SupportTuple,
    piece: &'a Piece,
}

impl CoefficientPath for PieceOn<'_> {
    fn tuple(&self) -> &SupportTuple {
        self.tuple
    }
    fn coefficients(&self, s: f64) -> Vec<Vec<C>> {
        self.piece.coefficients_at(s)
    }
    fn derivative(&self, s: f64) -> Vec<Vec<C>> {
        self.piece.derivative_at(s)
    }
}

/// A closed path of coefficient vectors made of consecutive pieces.
#[derive(Clone, Debug, PartialEq)]
pub struct Loop {
    pub pieces: Vec<Piece>,
}

impl Loop {
    pub fn new(pieces: Vec<Piece>) -> Self {
        Self { pieces }
    }

    /// `path · inner · path⁻¹`.
    pub fn conjugate(path: &[Piece], inner: &Loop) -> Self {
        let mut pieces = path.to_vec();
        pieces.extend(inner.pieces.iter().cloned());
        pieces.extend(path.iter().rev().map(Piece::reversed));
        Self { pieces }
    }

    pub fn reversed(&self) -> Self {
        Self { pieces: self.pieces.iter().rev().map(Piece::reversed).collect() }
    }

    pub fn base(&self) -> Vec<Vec<C>> {
        self.pieces[0].start()
    }

    /// Whether consecutive pieces meet and the loop closes, up to `tol`.
    pub fn is_closed(&self, tol: f64) -> bool {
        let close = |a: &[Vec<C>], b: &[Vec<C>]| {
            a.iter().flatten().zip(b.iter().flatten()).all(|(p, q)| (p - q).norm() <= tol * (1.0 + q.norm()))
        };
        let n = self.pieces.len();
        (0..n).all(|k| close(&self.pieces[k].end(), &self.pieces[(k + 1) % n].start()))
    }

    /// Tracks one root once around the loop.
    pub fn track(&self, tuple: &SupportTuple, start: &[C], set: &TrackerSettings) -> Result<TrackedPath> {
        let mut x = start.to_vec();
        let mut winding = vec![0.0; x.len()];
        let mut steps = 0;
        let mut max_residual: f64 = 0.0;
        for piece in &self.pieces {
            let p = track_path(&PieceOn { tuple, piece }, &x, set)?;
            for (w, v) in winding.iter_mut().zip(&p.winding) {
                *w += v;
            }
            steps += p.steps;
            max_residual = max_residual.max(p.max_residual);
            x = p.end;
        }
        Ok(TrackedPath { start: start.to_vec(), end: x, winding, steps, max_residual })
    }

    /// Tracks every root in parallel; results keep the input order.
    pub fn track_all(&self, tuple: &SupportTuple, starts: &[Vec<C>], set: &TrackerSettings) -> Vec<Result<TrackedPath>> {
        starts.par_iter().map(|x| self.track(tuple, x, set)).collect()
    }
}

/// Straight-line path between two coefficient vectors.
pub struct Linear<'a> {
    pub tuple: &'a SupportTuple,
    pub from: &'a [Vec<C>],
    pub to: &'a [Vec<C>],
}

impl CoefficientPath for Linear<'_> {
    fn tuple(&self) -> &SupportTuple {
        self.tuple
    }
    fn coefficients(&self, s: f64) -> Vec<Vec<C>> {
        self.from
            .iter()
            .zip(self.to)
            .map(|(a, b)| a.iter().zip(b).map(|(p, q)| p * (1.0 - s) + q * s).collect())
            .collect()
    }
    fn derivative(&self, _s: f64) -> Vec<Vec<C>> {
        self.from.iter().zip(self.to).map(|(a, b)| a.iter().zip(b).map(|(p, q)| q - p).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;
    use crate::numerics::solve2d::solve_system_2d;
    use crate::numerics::system::SparseSystem;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> C {
        C::new(re, 0.0)
    }

    fn univariate(exps: &[i64]) -> SupportTuple {
        SupportTuple::from_points(1, vec![exps.iter().map(|&e| vec![e]).collect()]).unwrap()
    }

    #[test]
    fn square_root_swaps_around_zero() {
        // x^2 - a with a circling 0 once: the two square roots are exchanged.
        let t = univariate(&[0, 2]);
        let base = vec![vec![c(-1.0), c(1.0)]];
        let l = Loop::new(vec![Piece::Circle { base, set: 0, index: 0, center: c(0.0), radius: 1.0, turns: 1, phase0: PI }]);
        assert!(l.is_closed(1e-12));
        let p = l.track(&t, &[c(1.0)], &TrackerSettings::default()).unwrap();
        assert!((p.end[0] - c(-1.0)).norm() < 1e-10);
        assert!((p.winding[0] - 0.5).abs() < 1e-9);
        let q = l.track(&t, &[c(1.0)], &TrackerSettings::default()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn two_turns_return_with_unit_winding() {
        let t = univariate(&[0, 2]);
        let base = vec![vec![c(-1.0), c(1.0)]];
        let l = Loop::new(vec![Piece::Circle { base, set: 0, index: 0, center: c(0.0), radius: 1.0, turns: 2, phase0: PI }]);
        let p = l.track(&t, &[c(1.0)], &TrackerSettings::default()).unwrap();
        assert!((p.end[0] - c(1.0)).norm() < 1e-10);
        assert_eq!(p.integer_winding(), vec![1]);
    }

    #[test]
    fn reversed_loop_inverts() {
        let t = univariate(&[0, 1, 3]);
        let base = vec![vec![c(1.0), c(-0.5), c(2.0)]];
        let l = Loop::new(vec![Piece::Circle { base, set: 0, index: 1, center: c(0.3), radius: 3.0, turns: 1, phase0: 0.7 }]);
        let set = TrackerSettings::default();
        let starts = crate::numerics::univariate::solve_univariate(&SparseSystem::new(t.clone(), l.base()).unwrap()).unwrap();
        for r in starts {
            let there = l.track(&t, &r.x, &set).unwrap();
            let back = l.reversed().track(&t, &there.end, &set).unwrap();
            assert!(relative_step(&back.end.iter().zip(&r.x).map(|(a, b)| a - b).collect::<Vec<_>>(), &r.x) < 1e-9);
            for (a, b) in there.winding.iter().zip(&back.winding) {
                assert!((a + b).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn homotopy_in_two_variables_matches_direct_solve() {
        let t = SupportTuple::from_points(2, vec![
            vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]],
            vec![vec![0, 0], vec![2, 0], vec![0, 2], vec![1, 1]],
        ])
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = SparseSystem::random(t.clone(), &mut rng);
        let b = SparseSystem::random(t.clone(), &mut rng);
        let ra = solve_system_2d(&a).unwrap();
        let rb = solve_system_2d(&b).unwrap();
        let path = Linear { tuple: &t, from: a.coefficients(), to: b.coefficients() };
        let set = TrackerSettings::default();
        let mut hit = vec![false; rb.len()];
        for r in &ra {
            let p = track_path(&path, &r.x, &set).unwrap();
            let k = rb
                .iter()
                .position(|z| relative_step(&p.end.iter().zip(&z.x).map(|(u, v)| u - v).collect::<Vec<_>>(), &z.x) < 1e-8)
                .expect("end point is a root of the target");
            hit[k] = true;
        }
        assert!(hit.iter().all(|&h| h));
    }
}
