//! Sparse Laurent systems with complex coefficients.

use num_complex::Complex64 as C;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use super::linalg;
use crate::error::{Error, Result};
use crate::tuples::SupportTuple;

/// Coordinates this close to 0 are rejected.
pub const ZERO_COORDINATE: f64 = 1e-10;

/// A system `f_i = Σ_{a ∈ A_i} c_{i,a} x^a`; `coefficients[i][k]` belongs to
/// the `k`-th point of set `i` in its canonical order.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseSystem {
    tuple: SupportTuple,
    coefficients: Vec<Vec<C>>,
}

impl SparseSystem {
    pub fn new(tuple: SupportTuple, coefficients: Vec<Vec<C>>) -> Result<Self> {
        if coefficients.len() != tuple.dim()
            || coefficients.iter().zip(tuple.sets()).any(|(c, s)| c.len() != s.len())
        {
            return Err(Error::Malformed("coefficient shape does not match the supports".into()));
        }
        Ok(Self { tuple, coefficients })
    }

    /// Independent complex Gaussian coefficients.
    pub fn random<R: Rng + ?Sized>(tuple: SupportTuple, rng: &mut R) -> Self {
        let coefficients = random_coefficients(&tuple, rng);
        Self { tuple, coefficients }
    }

    pub fn tuple(&self) -> &SupportTuple {
        &self.tuple
    }

    pub fn dim(&self) -> usize {
        self.tuple.dim()
    }

    pub fn coefficients(&self) -> &[Vec<C>] {
        &self.coefficients
    }

    pub fn with_coefficients(&self, coefficients: Vec<Vec<C>>) -> Self {
        Self::new(self.tuple.clone(), coefficients).expect("same shape")
    }

    pub fn evaluate(&self, x: &[C]) -> Result<Vec<C>> {
        evaluate(&self.tuple, &self.coefficients, x)
    }

    pub fn jacobian(&self, x: &[C]) -> Result<Vec<Vec<C>>> {
        jacobian(&self.tuple, &self.coefficients, x)
    }

    /// `max_i |f_i(x)| / Σ_a |c_{i,a} x^a|`.
    pub fn scaled_residual(&self, x: &[C]) -> Result<f64> {
        scaled_residual(&self.tuple, &self.coefficients, x)
    }
}

pub fn random_coefficients<R: Rng + ?Sized>(tuple: &SupportTuple, rng: &mut R) -> Vec<Vec<C>> {
    tuple
        .sets()
        .iter()
        .map(|s| (0..s.len()).map(|_| random_complex(rng)).collect())
        .collect()
}

/// Standard complex Gaussian sample.
pub fn random_complex<R: Rng + ?Sized>(rng: &mut R) -> C {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    C::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// A point of the torus with its certificate data.
#[derive(Clone, Debug, PartialEq)]
pub struct Root {
    pub x: Vec<C>,
    pub residual: f64,
    pub condition: f64,
}

impl Root {
    pub fn certify(sys: &SparseSystem, x: Vec<C>) -> Result<Root> {
        let residual = sys.scaled_residual(&x)?;
        let condition = linalg::condition_number(&sys.jacobian(&x)?);
        Ok(Root { x, residual, condition })
    }
}

fn check_torus(x: &[C]) -> Result<()> {
    if x.iter().any(|z| z.norm() < ZERO_COORDINATE || !z.is_finite()) {
        Err(Error::ZeroCoordinate)
    } else {
        Ok(())
    }
}

pub(crate) fn monomial(x: &[C], a: &[i64]) -> C {
    x.iter().zip(a).fold(C::new(1.0, 0.0), |acc, (z, &e)| acc * z.powi(e as i32))
}

pub fn evaluate(tuple: &SupportTuple, coeffs: &[Vec<C>], x: &[C]) -> Result<Vec<C>> {
    check_torus(x)?;
    Ok(tuple
        .sets()
        .iter()
        .zip(coeffs)
        .map(|(s, c)| s.points().iter().zip(c).map(|(a, ca)| ca * monomial(x, a)).sum())
        .collect())
}

pub fn jacobian(tuple: &SupportTuple, coeffs: &[Vec<C>], x: &[C]) -> Result<Vec<Vec<C>>> {
    check_torus(x)?;
    let n = x.len();
    Ok(tuple
        .sets()
        .iter()
        .zip(coeffs)
        .map(|(s, c)| {
            let mut row = vec![C::new(0.0, 0.0); n];
            for (a, ca) in s.points().iter().zip(c) {
                let m = ca * monomial(x, a);
                for k in 0..n {
                    if a[k] != 0 {
                        row[k] += m * a[k] as f64 / x[k];
                    }
                }
            }
            row
        })
        .collect())
}

pub fn scaled_residual(tuple: &SupportTuple, coeffs: &[Vec<C>], x: &[C]) -> Result<f64> {
    check_torus(x)?;
    let mut worst: f64 = 0.0;
    for (s, c) in tuple.sets().iter().zip(coeffs) {
        let mut value = C::new(0.0, 0.0);
        let mut size = 0.0;
        for (a, ca) in s.points().iter().zip(c) {
            let t = ca * monomial(x, a);
            value += t;
            size += t.norm();
        }
        if size > 0.0 {
            worst = worst.max(value.norm() / size);
        }
    }
    Ok(worst)
}

/// Relative size of a correction: `max_k |dx_k| / |x_k|`.
pub(crate) fn relative_step(dx: &[C], x: &[C]) -> f64 {
    dx.iter().zip(x).map(|(d, z)| d.norm() / z.norm().max(f64::MIN_POSITIVE)).fold(0.0, f64::max)
}

/// Newton's method until the relative correction drops below `tol`.
/// Returns the refined point and the number of iterations used.
pub fn newton(
    tuple: &SupportTuple,
    coeffs: &[Vec<C>],
    x0: &[C],
    tol: f64,
    max_iter: usize,
) -> Result<(Vec<C>, usize)> {
    let mut x = x0.to_vec();
    for it in 0..max_iter {
        let f = evaluate(tuple, coeffs, &x)?;
        let j = jacobian(tuple, coeffs, &x)?;
        let neg: Vec<C> = f.iter().map(|v| -v).collect();
        let dx = linalg::solve(&j, &neg)?;
        for (z, d) in x.iter_mut().zip(&dx) {
            *z += d;
        }
        check_torus(&x)?;
        if relative_step(&dx, &x) < tol {
            return Ok((x, it + 1));
        }
    }
    Err(Error::ConvergenceFailure)
}
