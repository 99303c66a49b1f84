//! Roots of univariate polynomials by Aberth–Ehrlich simultaneous iteration.

use num_complex::Complex64 as C;

use super::system::{newton, Root, SparseSystem};
use crate::error::{Error, Result};

const MAX_ITER: usize = 2000;

fn horner(c: &[C], z: C) -> (C, C) {
    let mut p = C::new(0.0, 0.0);
    let mut dp = C::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// All roots of `Σ c_k z^k` (`c[0]` and the last entry nonzero).
pub fn polynomial_roots(c: &[C]) -> Result<Vec<C>> {
    let deg = c.len().saturating_sub(1);
    if deg == 0 {
        return Ok(vec![]);
    }
    if c[0].norm() == 0.0 || c[deg].norm() == 0.0 {
        return Err(Error::DegenerateLeadingCoefficient);
    }
    let lead = c[deg];
    let monic: Vec<C> = c.iter().map(|a| a / lead).collect();
    let r = monic[0].norm().powf(1.0 / deg as f64);
    let mut z: Vec<C> = (0..deg)
        .map(|k| C::from_polar(r, 2.0 * std::f64::consts::PI * k as f64 / deg as f64 + 0.4))
        .collect();
    let mut done = vec![false; deg];
    for _ in 0..MAX_ITER {
        let mut moved = false;
        for k in 0..deg {
            if done[k] {
                continue;
            }
            let (p, dp) = horner(&monic, z[k]);
            if p.norm() == 0.0 {
                done[k] = true;
                continue;
            }
            let ratio = p / dp;
            let s: C = (0..deg).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let w = ratio / (C::new(1.0, 0.0) - ratio * s);
            if !w.is_finite() {
                continue;
            }
            z[k] -= w;
            if w.norm() <= 1e-15 * z[k].norm() {
                done[k] = true;
            } else {
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    // Polish with plain Newton; keep the Aberth value if Newton wanders.
    for zk in z.iter_mut() {
        let mut x = *zk;
        for _ in 0..8 {
            let (p, dp) = horner(&monic, x);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            x -= step;
            if step.norm() <= 1e-16 * x.norm() {
                break;
            }
        }
        if x.is_finite() && (x - *zk).norm() <= 1e-6 * zk.norm().max(1e-300) {
            *zk = x;
        }
    }
    if z.iter().any(|v| !v.is_finite()) {
        return Err(Error::ConvergenceFailure);
    }
    Ok(z)
}

/// All roots in `C*` of a univariate sparse system, Newton-refined to scaled
/// residual below `1e-12`.
pub fn solve_univariate(sys: &SparseSystem) -> Result<Vec<Root>> {
    if sys.dim() != 1 {
        return Err(Error::DimensionUnsupported { dim: sys.dim(), max: 1 });
    }
    let pts = sys.tuple().set(0).points();
    let lo = pts[0][0];
    let hi = pts[pts.len() - 1][0];
    let mut dense = vec![C::new(0.0, 0.0); (hi - lo) as usize + 1];
    for (p, c) in pts.iter().zip(&sys.coefficients()[0]) {
        dense[(p[0] - lo) as usize] = *c;
    }
    let roots = polynomial_roots(&dense)?;
    roots
        .into_iter()
        .map(|z| {
            let x = match newton(sys.tuple(), sys.coefficients(), &[z], 1e-15, 20) {
                Ok((x, _)) => x,
                Err(_) => vec![z],
            };
            let root = Root::certify(sys, x)?;
            if root.residual < 1e-12 {
                Ok(root)
            } else {
                Err(Error::ConvergenceFailure)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tuples::SupportTuple;

    fn sys(exps: &[i64], coeffs: &[f64]) -> SparseSystem {
        let t = SupportTuple::from_points(1, vec![exps.iter().map(|&e| vec![e]).collect()]).unwrap();
        SparseSystem::new(t, vec![coeffs.iter().map(|&c| C::new(c, 0.0)).collect()]).unwrap()
    }

    fn sorted(mut v: Vec<C>) -> Vec<C> {
        v.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
        v
    }

    #[test]
    fn x_squared_plus_one() {
        let r = sorted(solve_univariate(&sys(&[0, 2], &[1.0, 1.0])).unwrap().into_iter().map(|r| r.x[0]).collect());
        assert!((r[0] - C::new(0.0, -1.0)).norm() < 1e-14);
        assert!((r[1] - C::new(0.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn cube_roots_of_unity() {
        let r = solve_univariate(&sys(&[0, 1, 2], &[1.0, 1.0, 1.0])).unwrap();
        assert_eq!(r.len(), 2);
        for root in r {
            let z = root.x[0];
            assert!((z.powi(3) - C::new(1.0, 0.0)).norm() < 1e-13);
            assert!((z - C::new(1.0, 0.0)).norm() > 0.5);
        }
    }

    #[test]
    fn small_roots_of_perturbed_trinomial() {
        let eps = 1e-6;
        let r = solve_univariate(&sys(&[0, 2, 3], &[eps, 1.0, 1.0])).unwrap();
        let mut mods: Vec<f64> = r.iter().map(|r| r.x[0].norm()).collect();
        mods.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((mods[0] / eps.sqrt() - 1.0).abs() < 1e-2);
        assert!((mods[1] / eps.sqrt() - 1.0).abs() < 1e-2);
        assert!((mods[2] - 1.0).abs() < 1e-2);
    }

    #[test]
    fn degenerate_constant() {
        assert_eq!(
            polynomial_roots(&[C::new(0.0, 0.0), C::new(1.0, 0.0)]),
            Err(Error::DegenerateLeadingCoefficient)
        );
    }
}
