//! Exact integer linear algebra.
//!
//! Everything here works over arbitrary-precision integers: Smith normal form
//! with unimodular transforms, sublattice index and saturation, and
//! generation tests for finitely generated abelian groups given by
//! generators and relations.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Dense integer matrix in row-major order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows * cols");
        Self { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![BigInt::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        Self::new(rows, cols, entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Builds a matrix whose rows are the given vectors.
    pub fn from_rows(rows: &[Vec<i64>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, &x) in r.iter().enumerate() {
                m[(i, j)] = BigInt::from(x);
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<i64>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, &x) in c.iter().enumerate() {
                m[(i, j)] = BigInt::from(x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns_i64(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self[(i, j)].to_i64()).collect())
            .collect()
    }

    pub fn rows_i64(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].to_i64()).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    pub fn select_columns(&self, cols: impl IntoIterator<Item = usize>) -> IntMatrix {
        let cols: Vec<usize> = cols.into_iter().collect();
        let mut out = Self::zeros(self.rows, cols.len());
        for (jj, &j) in cols.iter().enumerate() {
            for i in 0..self.rows {
                out[(i, jj)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn select_rows(&self, rows: impl IntoIterator<Item = usize>) -> IntMatrix {
        let rows: Vec<usize> = rows.into_iter().collect();
        let mut out = Self::zeros(rows.len(), self.cols);
        for (ii, &i) in rows.iter().enumerate() {
            for j in 0..self.cols {
                out[(ii, j)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = q * &self[(src, j)];
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += q * col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = q * &self[(i, src)];
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self[(r, j)];
            self[(r, j)] = v;
        }
    }

    fn negate_col(&mut self, c: usize) {
        for i in 0..self.rows {
            let v = -&self[(i, c)];
            self[(i, c)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}

/// `u * m * v == s` with `u`, `v` unimodular and `s` diagonal with a
/// nonnegative divisibility chain. The inverses of `u` and `v` are kept as
/// well since saturation and coordinate changes need them.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal of `s` (length `min(rows, cols)`), zeros included.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)].clone())
            .collect()
    }

    /// Nonzero invariant factors `s_1 | s_2 | ...`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Smith normal form with smallest-absolute-value pivoting. Ties between
/// equal pivots are broken in row-major order, so the output is a
/// deterministic function of the input.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut u_inv = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut v_inv = IntMatrix::identity(cols);

    // Row operation E applied to `a`: u <- E u, u_inv <- u_inv E^{-1}.
    // Column operation E applied to `a`: v <- v E, v_inv <- E^{-1} v_inv.
    let swap_rows = |a: &mut IntMatrix, u: &mut IntMatrix, ui: &mut IntMatrix, i, j| {
        a.swap_rows(i, j);
        u.swap_rows(i, j);
        ui.swap_cols(i, j);
    };
    let swap_cols = |a: &mut IntMatrix, v: &mut IntMatrix, vi: &mut IntMatrix, i, j| {
        a.swap_cols(i, j);
        v.swap_cols(i, j);
        vi.swap_rows(i, j);
    };
    let add_row = |a: &mut IntMatrix, u: &mut IntMatrix, ui: &mut IntMatrix, dst, src, q: &BigInt| {
        a.add_row(dst, src, q);
        u.add_row(dst, src, q);
        ui.add_col(src, dst, &-q);
    };
    let add_col = |a: &mut IntMatrix, v: &mut IntMatrix, vi: &mut IntMatrix, dst, src, q: &BigInt| {
        a.add_col(dst, src, q);
        v.add_col(dst, src, q);
        vi.add_row(src, dst, &-q);
    };

    let steps = rows.min(cols);
    't: for t in 0..steps {
        loop {
            // Smallest nonzero entry of the trailing block, row-major ties.
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = &a[(i, j)];
                    if x.is_zero() {
                        continue;
                    }
                    match pivot {
                        Some((pi, pj)) if a[(pi, pj)].abs() <= x.abs() => {}
                        _ => pivot = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break 't };
            swap_rows(&mut a, &mut u, &mut u_inv, t, pi);
            swap_cols(&mut a, &mut v, &mut v_inv, t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = &a[(i, t)] / &a[(t, t)];
                if !q.is_zero() {
                    add_row(&mut a, &mut u, &mut u_inv, i, t, &-q);
                }
                if !a[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = &a[(t, j)] / &a[(t, t)];
                if !q.is_zero() {
                    add_col(&mut a, &mut v, &mut v_inv, j, t, &-q);
                }
                if !a[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: fold an offending row into the pivot row.
            let p = a[(t, t)].clone();
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&p)));
            match offender {
                Some(i) => add_row(&mut a, &mut u, &mut u_inv, t, i, &BigInt::one()),
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
    }

    SmithDecomposition { u, s: a, v, u_inv, v_inv }
}

/// Index of a sublattice in its ambient lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Index {
    Finite(BigInt),
    Infinite,
}

impl Index {
    pub fn is_finite(&self) -> bool {
        matches!(self, Index::Finite(_))
    }

    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            Index::Finite(x) => Some(x),
            Index::Infinite => None,
        }
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Finite(x) => write!(f, "{x}"),
            Index::Infinite => write!(f, "infinite"),
        }
    }
}

/// Sublattice of `Z^r` spanned by the columns of a generator matrix.
#[derive(Clone, Debug)]
pub struct Sublattice {
    ambient_rank: usize,
    generators: IntMatrix,
    snf: SmithDecomposition,
}

impl Sublattice {
    pub fn new(ambient_rank: usize, generators: IntMatrix) -> Self {
        assert_eq!(generators.rows(), ambient_rank, "generators must have ambient_rank rows");
        let snf = smith_normal_form(&generators);
        Self { ambient_rank, generators, snf }
    }

    pub fn from_vectors(ambient_rank: usize, vectors: &[Vec<i64>]) -> Self {
        Self::new(ambient_rank, IntMatrix::from_columns(vectors, ambient_rank))
    }

    pub fn zero(ambient_rank: usize) -> Self {
        Self::new(ambient_rank, IntMatrix::zeros(ambient_rank, 0))
    }

    pub fn full(ambient_rank: usize) -> Self {
        Self::new(ambient_rank, IntMatrix::identity(ambient_rank))
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn generators(&self) -> &IntMatrix {
        &self.generators
    }

    pub fn smith(&self) -> &SmithDecomposition {
        &self.snf
    }

    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.snf.invariant_factors()
    }

    pub fn rank(&self) -> usize {
        self.snf.rank()
    }

    /// Index in the ambient lattice.
    pub fn index(&self) -> Index {
        if self.rank() < self.ambient_rank {
            return Index::Infinite;
        }
        Index::Finite(self.invariant_factors().iter().product())
    }

    /// Index inside the saturation; 1 for the zero lattice.
    pub fn index_in_saturation(&self) -> BigInt {
        self.invariant_factors().iter().product()
    }

    /// Smallest sublattice containing `self` with torsion-free quotient.
    pub fn saturation(&self) -> Sublattice {
        let rho = self.rank();
        Sublattice::new(self.ambient_rank, self.snf.u_inv.select_columns(0..rho))
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.ambient_rank);
        let w = self.snf.u.mul_vec(v);
        let diag = self.snf.diagonal();
        w.iter().enumerate().all(|(i, x)| match diag.get(i) {
            Some(s) if !s.is_zero() => x.is_multiple_of(s),
            _ => x.is_zero(),
        })
    }

    pub fn contains_i64(&self, v: &[i64]) -> bool {
        let v: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        self.contains(&v)
    }

    /// Sum with another sublattice of the same ambient lattice.
    pub fn join(&self, other: &Sublattice) -> Sublattice {
        assert_eq!(self.ambient_rank, other.ambient_rank);
        Sublattice::new(self.ambient_rank, self.generators.hstack(&other.generators))
    }

    /// A basis (columns) of the lattice: `u_inv * diag(s)`.
    pub fn basis(&self) -> IntMatrix {
        let rho = self.rank();
        let mut b = self.snf.u_inv.select_columns(0..rho);
        let diag = self.snf.diagonal();
        for j in 0..rho {
            for i in 0..self.ambient_rank {
                let x = &b[(i, j)] * &diag[j];
                b[(i, j)] = x;
            }
        }
        b
    }
}

impl PartialEq for Sublattice {
    fn eq(&self, other: &Self) -> bool {
        if self.ambient_rank != other.ambient_rank || self.rank() != other.rank() {
            return false;
        }
        let contains_all = |a: &Sublattice, b: &Sublattice| {
            (0..b.generators.cols()).all(|j| a.contains(&b.generators.column(j)))
        };
        contains_all(self, other) && contains_all(other, self)
    }
}

pub fn sublattice_index(s: &Sublattice) -> Index {
    s.index()
}

pub fn saturation(s: &Sublattice) -> Sublattice {
    s.saturation()
}

/// Do `vectors` together with the generators of `l` generate `Z^r`?
pub fn generates_with(vectors: &[Vec<i64>], l: &Sublattice) -> bool {
    let r = l.ambient_rank();
    for v in vectors {
        assert_eq!(v.len(), r, "vector length must equal the ambient rank");
    }
    let stacked = IntMatrix::from_columns(vectors, r).hstack(l.generators());
    all_unit_invariants(&stacked, r)
}

/// Same as [`generates_with`] for big-integer vectors.
pub fn generates_with_big(vectors: &[Vec<BigInt>], l: &Sublattice) -> bool {
    let r = l.ambient_rank();
    let mut m = IntMatrix::zeros(r, vectors.len());
    for (j, v) in vectors.iter().enumerate() {
        assert_eq!(v.len(), r);
        for (i, x) in v.iter().enumerate() {
            m[(i, j)] = x.clone();
        }
    }
    all_unit_invariants(&m.hstack(l.generators()), r)
}

fn all_unit_invariants(m: &IntMatrix, r: usize) -> bool {
    if r == 0 {
        return true;
    }
    let d = smith_normal_form(m).diagonal();
    d.len() >= r && d[..r].iter().all(|x| x.is_one())
}

/// Finitely generated abelian group `Z^k / <relations>`.
#[derive(Clone, Debug)]
pub struct AbelianPresentation {
    generator_count: usize,
    relations: IntMatrix,
}

impl AbelianPresentation {
    pub fn new(generator_count: usize, relations: IntMatrix) -> Self {
        assert_eq!(relations.rows(), generator_count, "relation matrix must have generator_count rows");
        Self { generator_count, relations }
    }

    pub fn free(generator_count: usize) -> Self {
        Self::new(generator_count, IntMatrix::zeros(generator_count, 0))
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    /// Torsion coefficients (> 1) and free rank.
    pub fn structure(&self) -> (Vec<BigInt>, usize) {
        let snf = smith_normal_form(&self.relations);
        let diag = snf.diagonal();
        let torsion = diag.iter().filter(|x| !x.is_zero() && !x.is_one()).cloned().collect();
        (torsion, self.generator_count - snf.rank())
    }
}

/// Do the columns of `sub_generators` generate the presented group?
pub fn surjects_onto(sub_generators: &IntMatrix, ambient: &AbelianPresentation) -> bool {
    assert_eq!(sub_generators.rows(), ambient.generator_count());
    all_unit_invariants(&sub_generators.hstack(ambient.relations()), ambient.generator_count())
}

/// Primitive part of an integer vector (divided by the gcd of its entries).
pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        return v.to_vec();
    }
    v.iter().map(|x| x / g).collect()
}

pub fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, cols: usize, e: &[i64]) -> IntMatrix {
        IntMatrix::from_i64(rows, cols, e)
    }

    fn check(a: &IntMatrix) -> SmithDecomposition {
        let d = smith_normal_form(a);
        assert_eq!(d.u.mul(a).mul(&d.v), d.s);
        assert!(d.u.mul(&d.u_inv) == IntMatrix::identity(a.rows()));
        assert!(d.v.mul(&d.v_inv) == IntMatrix::identity(a.cols()));
        d
    }

    #[test]
    fn snf_of_diag_2_3() {
        let d = check(&m(2, 2, &[2, 0, 0, 3]));
        assert_eq!(d.diagonal(), to_big(&[1, 6]));
    }

    #[test]
    fn snf_of_zero() {
        let d = check(&m(1, 1, &[0]));
        assert_eq!(d.s, m(1, 1, &[0]));
    }

    #[test]
    fn snf_of_upper_triangular_fours() {
        let d = check(&m(2, 2, &[4, 4, 0, 4]));
        assert_eq!(d.diagonal(), to_big(&[4, 4]));
    }

    #[test]
    fn snf_empty() {
        let d = smith_normal_form(&IntMatrix::zeros(3, 0));
        assert!(d.diagonal().is_empty());
        assert_eq!(d.u, IntMatrix::identity(3));
    }

    #[test]
    fn snf_is_deterministic() {
        let a = m(3, 3, &[6, 4, 2, 3, 9, -3, 12, 0, 5]);
        let x = smith_normal_form(&a);
        let y = smith_normal_form(&a);
        assert_eq!(x.u, y.u);
        assert_eq!(x.v, y.v);
    }

    #[test]
    fn index_examples() {
        let s = Sublattice::from_vectors(2, &[vec![2, 0], vec![0, 2]]);
        assert_eq!(s.index(), Index::Finite(4.into()));
        let s = Sublattice::from_vectors(2, &[vec![1, 1], vec![1, -1]]);
        assert_eq!(s.index(), Index::Finite(2.into()));
        let s = Sublattice::from_vectors(2, &[vec![1, 0]]);
        assert_eq!(s.index(), Index::Infinite);
        assert_eq!(Sublattice::zero(0).index(), Index::Finite(1.into()));
    }

    #[test]
    fn saturation_examples() {
        let sat = Sublattice::from_vectors(2, &[vec![2, 0]]).saturation();
        assert_eq!(sat, Sublattice::from_vectors(2, &[vec![1, 0]]));
        let sat = Sublattice::from_vectors(2, &[vec![2, 2]]).saturation();
        assert_eq!(sat, Sublattice::from_vectors(2, &[vec![1, 1]]));
        let sat = Sublattice::from_vectors(2, &[vec![2, 0], vec![0, 2]]).saturation();
        assert_eq!(sat, Sublattice::full(2));
        assert_eq!(
            Sublattice::from_vectors(2, &[vec![2, 2]]).index_in_saturation(),
            BigInt::from(2)
        );
        assert_eq!(Sublattice::zero(2).index_in_saturation(), BigInt::one());
    }

    #[test]
    fn generates_with_examples() {
        let even = Sublattice::from_vectors(2, &[vec![1, 1], vec![1, -1]]);
        assert!(!generates_with(&[vec![1, 1], vec![1, -1]], &even));
        assert!(generates_with(&[vec![1, 0], vec![0, 1]], &Sublattice::zero(2)));
        assert!(generates_with(&[], &Sublattice::full(2)));
    }

    #[test]
    fn surjects_examples() {
        assert!(surjects_onto(&IntMatrix::identity(2), &AbelianPresentation::free(2)));
        assert!(!surjects_onto(&m(1, 1, &[2]), &AbelianPresentation::free(1)));
        let z3 = AbelianPresentation::new(1, m(1, 1, &[3]));
        assert!(surjects_onto(&m(1, 1, &[2]), &z3));
    }

    #[test]
    fn determinant_matches_hand_value() {
        assert_eq!(m(3, 3, &[2, 0, 1, 1, 3, 2, 1, 1, 2]).determinant(), BigInt::from(6));
        assert_eq!(m(2, 2, &[4, 4, 0, 4]).determinant(), BigInt::from(16));
    }

    #[test]
    fn presentation_structure() {
        let p = AbelianPresentation::new(2, m(2, 1, &[2, 0]));
        assert_eq!(p.structure(), (to_big(&[2]), 1));
    }
}
