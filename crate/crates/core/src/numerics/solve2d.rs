//! Start systems in two variables by the hidden-variable resultant.

use num_complex::Complex64 as C;

use super::linalg;
use super::system::{newton, relative_step, Root, SparseSystem};
use super::univariate::polynomial_roots;
use crate::error::{Error, Result};

/// Distance below which two roots are the same root.
pub const DEDUP_TOL: f64 = 1e-8;
const TRIM: f64 = 1e-11;
const CANDIDATE_RESIDUAL: f64 = 1e-4;

/// `p[k][j]` is the coefficient of `u^j v^k`, where `u` is the hidden variable.
type Bivariate = Vec<Vec<C>>;

fn to_bivariate(sys: &SparseSystem, i: usize, hidden: usize) -> Bivariate {
    let other = 1 - hidden;
    let pts = sys.tuple().set(i).points();
    let min_u = pts.iter().map(|p| p[hidden]).min().unwrap();
    let min_v = pts.iter().map(|p| p[other]).min().unwrap();
    let du = pts.iter().map(|p| p[hidden] - min_u).max().unwrap() as usize;
    let dv = pts.iter().map(|p| p[other] - min_v).max().unwrap() as usize;
    let mut b = vec![vec![C::new(0.0, 0.0); du + 1]; dv + 1];
    for (p, c) in pts.iter().zip(&sys.coefficients()[i]) {
        b[(p[other] - min_v) as usize][(p[hidden] - min_u) as usize] += c;
    }
    b
}

fn eval_in_hidden(b: &Bivariate, u: C) -> Vec<C> {
    b.iter()
        .map(|row| row.iter().rev().fold(C::new(0.0, 0.0), |acc, c| acc * u + c))
        .collect()
}

fn sylvester(p: &[C], q: &[C]) -> Vec<Vec<C>> {
    let (dp, dq) = (p.len() - 1, q.len() - 1);
    let size = dp + dq;
    let mut m = vec![vec![C::new(0.0, 0.0); size]; size];
    for r in 0..dq {
        for (k, c) in p.iter().enumerate() {
            m[r][r + k] = *c;
        }
    }
    for r in 0..dp {
        for (k, c) in q.iter().enumerate() {
            m[dq + r][r + k] = *c;
        }
    }
    m
}

/// Drops negligible coefficients at both ends; returns the kept slice.
fn trim(c: &[C], rel: f64) -> &[C] {
    let max = c.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let small = |z: &C| z.norm() <= rel * max;
    let lo = c.iter().position(|z| !small(z)).unwrap_or(c.len());
    let hi = c.iter().rposition(|z| !small(z)).map_or(lo, |h| h + 1);
    &c[lo..hi.max(lo)]
}

fn resultant_coefficients(f: &Bivariate, g: &Bivariate) -> Vec<C> {
    let (df, dg) = (f.len() - 1, g.len() - 1);
    let ef = f[0].len() - 1;
    let eg = g[0].len() - 1;
    let n = dg * ef + df * eg + 1;
    let samples: Vec<C> = (0..n)
        .map(|t| {
            let u = C::from_polar(1.0, 2.0 * std::f64::consts::PI * t as f64 / n as f64);
            linalg::determinant(&sylvester(&eval_in_hidden(f, u), &eval_in_hidden(g, u)))
        })
        .collect();
    (0..n)
        .map(|j| {
            let s: C = samples
                .iter()
                .enumerate()
                .map(|(t, v)| v * C::from_polar(1.0, -2.0 * std::f64::consts::PI * (j * t % n) as f64 / n as f64))
                .sum();
            s / n as f64
        })
        .collect()
}

fn candidates(sys: &SparseSystem, hidden: usize) -> Result<Vec<Vec<C>>> {
    let f = to_bivariate(sys, 0, hidden);
    let g = to_bivariate(sys, 1, hidden);
    if f.len() < 2 || g.len() < 2 {
        return Err(Error::DegenerateResultant);
    }
    let res = resultant_coefficients(&f, &g);
    let trimmed = trim(&res, TRIM);
    if trimmed.is_empty() {
        return Err(Error::DegenerateResultant);
    }
    let mut out = Vec::new();
    for u in polynomial_roots(trimmed)? {
        if !(1e-8..=1e8).contains(&u.norm()) {
            continue;
        }
        let fv = eval_in_hidden(&f, u);
        let fv = trim(&fv, 1e-14);
        if fv.len() < 2 {
            continue;
        }
        for v in polynomial_roots(fv)? {
            if !(1e-8..=1e8).contains(&v.norm()) {
                continue;
            }
            let mut x = vec![C::new(0.0, 0.0); 2];
            x[hidden] = u;
            x[1 - hidden] = v;
            if sys.scaled_residual(&x)? < CANDIDATE_RESIDUAL {
                out.push(x);
            }
        }
    }
    Ok(out)
}

fn refine_and_dedup(sys: &SparseSystem, cands: Vec<Vec<C>>) -> Vec<Vec<C>> {
    let mut roots: Vec<Vec<C>> = Vec::new();
    for x in cands {
        let Ok((y, _)) = newton(sys.tuple(), sys.coefficients(), &x, 1e-14, 40) else { continue };
        if !sys.scaled_residual(&y).is_ok_and(|r| r < 1e-10) {
            continue;
        }
        if roots.iter().any(|z| {
            let d: Vec<C> = y.iter().zip(z).map(|(a, b)| a - b).collect();
            relative_step(&d, z) < DEDUP_TOL
        }) {
            continue;
        }
        roots.push(y);
    }
    roots
}

/// All roots in `(C*)²` of a generic system in two variables. The count is
/// checked against the mixed volume; both elimination orders are tried.
pub fn solve_system_2d(sys: &SparseSystem) -> Result<Vec<Root>> {
    if sys.dim() != 2 {
        return Err(Error::DimensionUnsupported { dim: sys.dim(), max: 2 });
    }
    let expected = sys.tuple().mixed_volume()? as usize;
    let mut last = Err(Error::DegenerateResultant);
    for hidden in [0, 1] {
        let roots = match candidates(sys, hidden) {
            Ok(c) => refine_and_dedup(sys, c),
            Err(e) => {
                last = Err(e);
                continue;
            }
        };
        if roots.len() == expected {
            let mut roots = roots
                .into_iter()
                .map(|x| Root::certify(sys, x))
                .collect::<Result<Vec<_>>>()?;
            sort_roots(&mut roots);
            return Ok(roots);
        }
        last = Err(Error::CountMismatch { found: roots.len(), expected });
    }
    last
}

/// Deterministic order: lexicographic on (re, im) of the coordinates.
pub fn sort_roots(roots: &mut [Root]) {
    roots.sort_by(|a, b| {
        let ka: Vec<f64> = a.x.iter().flat_map(|z| [z.re, z.im]).collect();
        let kb: Vec<f64> = b.x.iter().flat_map(|z| [z.re, z.im]).collect();
        ka.partial_cmp(&kb).unwrap()
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tuples::SupportTuple;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tuple(sets: &[&[&[i64]]]) -> SupportTuple {
        SupportTuple::from_points(2, sets.iter().map(|s| s.iter().map(|p| p.to_vec()).collect()).collect()).unwrap()
    }

    const SQUARE: &[&[i64]] = &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]];
    const Q: &[&[i64]] = &[&[0, 0], &[2, 0], &[0, 2], &[2, 2], &[1, 1]];
    const P: &[&[i64]] = &[&[0, 0], &[1, 1], &[1, -1], &[2, 0], &[1, 0]];

    fn check(t: SupportTuple, expected: usize, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sys = SparseSystem::random(t, &mut rng);
        let roots = solve_system_2d(&sys).unwrap();
        assert_eq!(roots.len(), expected);
        for r in roots {
            assert!(r.residual < 1e-12, "residual {}", r.residual);
        }
    }

    #[test]
    fn squares() {
        check(tuple(&[SQUARE, SQUARE]), 2, 3);
    }

    #[test]
    fn q_pair() {
        check(tuple(&[Q, Q]), 8, 5);
    }

    #[test]
    fn diamond_with_negative_exponents() {
        check(tuple(&[P, P]), 4, 7);
    }

    #[test]
    fn doubled_square() {
        let sq2: &[&[i64]] = &[&[0, 0], &[2, 0], &[0, 2], &[2, 2]];
        check(tuple(&[sq2, sq2]), 8, 11);
    }

    #[test]
    fn shared_edge_root_is_flagged() {
        // f1 = x + y - 1, f2 = 3x + 2y + xy - 2: one of the two roots sits at x = 0.
        let t = tuple(&[&[&[0, 0], &[1, 0], &[0, 1]], &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]]);
        let c = |v: &[f64]| v.iter().map(|&x| C::new(x, 0.0)).collect::<Vec<_>>();
        let sys = SparseSystem::new(t, vec![c(&[-1.0, 1.0, 1.0]), c(&[-2.0, 3.0, 2.0, 1.0])]).unwrap();
        assert!(matches!(solve_system_2d(&sys), Err(Error::CountMismatch { .. })));
    }
}
