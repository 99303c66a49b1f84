//! Small dense complex linear algebra (LU with partial pivoting).

use num_complex::Complex64 as C;

use crate::error::{Error, Result};

/// Pivots below this (relative to the largest entry) count as singular.
const SINGULAR: f64 = 1e-14;

fn max_abs(a: &[Vec<C>]) -> f64 {
    a.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Solves `a x = b`.
pub fn solve(a: &[Vec<C>], b: &[C]) -> Result<Vec<C>> {
    let n = a.len();
    let scale = max_abs(a);
    if scale == 0.0 {
        return Err(Error::SingularJacobian);
    }
    let mut m: Vec<Vec<C>> = a.to_vec();
    let mut x: Vec<C> = b.to_vec();
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| m[i][k].norm().partial_cmp(&m[j][k].norm()).unwrap())
            .unwrap();
        if m[p][k].norm() <= SINGULAR * scale {
            return Err(Error::SingularJacobian);
        }
        m.swap(k, p);
        x.swap(k, p);
        for i in k + 1..n {
            let f = m[i][k] / m[k][k];
            if f == C::new(0.0, 0.0) {
                continue;
            }
            for j in k..n {
                let v = m[k][j];
                m[i][j] -= f * v;
            }
            let v = x[k];
            x[i] -= f * v;
        }
    }
    for k in (0..n).rev() {
        let mut s = x[k];
        for j in k + 1..n {
            s -= m[k][j] * x[j];
        }
        x[k] = s / m[k][k];
    }
    Ok(x)
}

/// Determinant by Gaussian elimination.
pub fn determinant(a: &[Vec<C>]) -> C {
    let n = a.len();
    let mut m: Vec<Vec<C>> = a.to_vec();
    let mut det = C::new(1.0, 0.0);
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| m[i][k].norm().partial_cmp(&m[j][k].norm()).unwrap())
            .unwrap();
        if m[p][k].norm() == 0.0 {
            return C::new(0.0, 0.0);
        }
        if p != k {
            m.swap(k, p);
            det = -det;
        }
        det *= m[k][k];
        for i in k + 1..n {
            let f = m[i][k] / m[k][k];
            for j in k..n {
                let v = m[k][j];
                m[i][j] -= f * v;
            }
        }
    }
    det
}

fn inf_norm(a: &[Vec<C>]) -> f64 {
    a.iter().map(|r| r.iter().map(|z| z.norm()).sum::<f64>()).fold(0.0, f64::max)
}

/// `‖a‖∞ · ‖a⁻¹‖∞`; infinite for singular matrices.
pub fn condition_number(a: &[Vec<C>]) -> f64 {
    let n = a.len();
    let mut inv = vec![vec![C::new(0.0, 0.0); n]; n];
    for j in 0..n {
        let mut e = vec![C::new(0.0, 0.0); n];
        e[j] = C::new(1.0, 0.0);
        match solve(a, &e) {
            Ok(col) => {
                for i in 0..n {
                    inv[i][j] = col[i];
                }
            }
            Err(_) => return f64::INFINITY,
        }
    }
    inf_norm(a) * inf_norm(&inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn solves_two_by_two() {
        let a = vec![vec![c(2.0, 0.0), c(1.0, 1.0)], vec![c(0.0, 1.0), c(3.0, 0.0)]];
        let x = vec![c(1.0, -1.0), c(0.5, 2.0)];
        let b: Vec<C> = a.iter().map(|r| r[0] * x[0] + r[1] * x[1]).collect();
        let y = solve(&a, &b).unwrap();
        assert!((y[0] - x[0]).norm() < 1e-14 && (y[1] - x[1]).norm() < 1e-14);
    }

    #[test]
    fn singular_is_reported() {
        let a = vec![vec![c(1.0, 0.0), c(2.0, 0.0)], vec![c(2.0, 0.0), c(4.0, 0.0)]];
        assert_eq!(solve(&a, &[c(1.0, 0.0), c(1.0, 0.0)]), Err(Error::SingularJacobian));
        assert_eq!(determinant(&a), c(0.0, 0.0));
    }

    #[test]
    fn determinant_of_permutation() {
        let a = vec![vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]];
        assert!((determinant(&a) - c(-1.0, 0.0)).norm() < 1e-15);
    }
}
