//! Smith normal form over the integers, used as an independent oracle for
//! the Gröbner route and to obtain torsion-free ranks.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::pbasis::GroupType;
use crate::scalar::{factorize, Scalar};

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> IntMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if r == 0 || c == 0 {
            return Err(Error::InvalidPresentation("matrix dimensions must be at least 1".into()));
        }
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::LengthMismatch { expected: c, found: row.len() });
            }
            data.extend(row);
        }
        Ok(Self { rows: r, cols: c, data })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&e| T::of_i64(e)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::LengthMismatch { expected: self.cols, found: other.rows });
        }
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
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += k · row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &T) {
        for j in 0..self.cols {
            let s = self[(src, j)].clone();
            if !s.is_zero() {
                self[(dst, j)] = self[(dst, j)].clone() + s * k.clone();
            }
        }
    }

    /// col[dst] += k · col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &T) {
        for i in 0..self.rows {
            let s = self[(i, src)].clone();
            if !s.is_zero() {
                self[(i, dst)] = self[(i, dst)].clone() + s * k.clone();
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = -self[(i, j)].clone();
        }
    }

    /// Fraction-free (Bareiss) determinant of a square matrix.
    pub fn determinant(&self) -> Result<T> {
        if self.rows != self.cols {
            return Err(Error::LengthMismatch { expected: self.rows, found: self.cols });
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut sign = T::one();
        let mut prev = T::one();
        for k in 0..n {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Ok(T::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = m[(i, j)].clone() * m[(k, k)].clone() - m[(i, k)].clone() * m[(k, j)].clone();
                    m[(i, j)] = v / prev.clone();
                }
            }
            prev = m[(k, k)].clone();
        }
        Ok(sign * m[(n - 1, n - 1)].clone())
    }
}

impl<T> Index<(usize, usize)> for IntMatrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for IntMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> fmt::Display for IntMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `U · A · V = D` with `U`, `V` unimodular and `d_1 | d_2 | ⋯` on the diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult<T> {
    pub u: IntMatrix<T>,
    pub v: IntMatrix<T>,
    pub d: IntMatrix<T>,
}

impl<T: Scalar> SnfResult<T> {
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }

    /// Diagonal entries greater than one.
    pub fn nontrivial_divisors(&self) -> Vec<T> {
        self.diagonal().into_iter().filter(|d| *d > T::one()).collect()
    }

    /// Re-verifies `U·A·V = D`, the divisor chain, and unimodularity.
    pub fn verify(&self, a: &IntMatrix<T>) -> Result<()> {
        if self.u.mul(a)?.mul(&self.v)? != self.d {
            return Err(Error::Internal("U·A·V ≠ D".into()));
        }
        for i in 0..self.d.rows {
            for j in 0..self.d.cols {
                if i != j && !self.d[(i, j)].is_zero() {
                    return Err(Error::Internal("D is not diagonal".into()));
                }
            }
        }
        let diag = self.diagonal();
        for w in diag.windows(2) {
            let ok = if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(&w[0]) };
            if w[0].is_negative() || !ok {
                return Err(Error::Internal(format!("divisor chain broken at {} | {}", w[0], w[1])));
            }
        }
        for m in [&self.u, &self.v] {
            if m.determinant()?.abs() != T::one() {
                return Err(Error::Internal("transform is not unimodular".into()));
            }
        }
        Ok(())
    }
}

/// Exact SNF. At every stage the pivot is the smallest nonzero absolute value
/// of the remaining block, ties broken by row-major position.
pub fn smith_normal_form<T: Scalar>(a: &IntMatrix<T>) -> SnfResult<T> {
    let (r, c) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    'stages: for t in 0..r.min(c) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    let x = &d[(i, j)];
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break 'stages };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut dirty = false;
            for i in t + 1..r {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let k = -(d[(i, t)].clone() / d[(t, t)].clone());
                d.add_row(i, t, &k);
                u.add_row(i, t, &k);
                dirty |= !d[(i, t)].is_zero();
            }
            for j in t + 1..c {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let k = -(d[(t, j)].clone() / d[(t, t)].clone());
                d.add_col(j, t, &k);
                v.add_col(j, t, &k);
                dirty |= !d[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }
            let pivot = d[(t, t)].clone();
            let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    d.add_row(t, i, &T::one());
                    u.add_row(t, i, &T::one());
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SnfResult { u, v, d }
}

/// Full invariants of `Z^q / rowspace(A)`, all primes at once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedType<T> {
    pub free_rank: usize,
    pub divisors: Vec<T>,
    /// prime → (exponent → multiplicity)
    pub primary: BTreeMap<T, BTreeMap<u32, usize>>,
}

impl<T: Scalar + Ord> MixedType<T> {
    /// Type restricted to the p-primary component (plus the free rank).
    pub fn for_prime(&self, p: &T) -> GroupType {
        GroupType::new(self.free_rank, self.primary.get(p).cloned().unwrap_or_default())
    }

    pub fn is_p_group(&self, p: &T) -> bool {
        self.primary.keys().all(|k| k == p)
    }
}

/// `q` generators, relation rows `A` (possibly empty).
pub fn type_from_relations<T: Scalar + Ord>(relations: &[Vec<T>], q: usize) -> Result<MixedType<T>> {
    if relations.is_empty() {
        return Ok(MixedType { free_rank: q, divisors: vec![], primary: BTreeMap::new() });
    }
    let a = IntMatrix::from_rows(relations.to_vec())?;
    type_from_relation_matrix(&a, q)
}

pub fn type_from_relation_matrix<T: Scalar + Ord>(a: &IntMatrix<T>, q: usize) -> Result<MixedType<T>> {
    if a.cols != q {
        return Err(Error::LengthMismatch { expected: q, found: a.cols });
    }
    let snf = smith_normal_form(a);
    snf.verify(a)?;
    let divisors = snf.nontrivial_divisors();
    let mut primary: BTreeMap<T, BTreeMap<u32, usize>> = BTreeMap::new();
    for d in &divisors {
        for (p, k) in factorize(d) {
            *primary.entry(p).or_default().entry(k).or_default() += 1;
        }
    }
    Ok(MixedType { free_rank: q - snf.rank(), divisors, primary })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn diag_2_3() {
        let a = IntMatrix::<i64>::from_i64_rows(&[&[2, 0], &[0, 3]]).unwrap();
        let s = smith_normal_form(&a);
        // gcd(2,3) = 1 and 2·3 = 6 by the Euclidean reduction
        assert_eq!(s.diagonal(), vec![1, 6]);
        s.verify(&a).unwrap();
    }

    #[test]
    fn identity_is_fixed() {
        let a = IntMatrix::<BigInt>::identity(4);
        let s = smith_normal_form(&a);
        assert_eq!(s.d, a);
        s.verify(&a).unwrap();
    }

    #[test]
    fn rectangular_and_rank_deficient() {
        let a = IntMatrix::<i64>::from_i64_rows(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]).unwrap();
        let s = smith_normal_form(&a);
        s.verify(&a).unwrap();
        assert_eq!(s.diagonal(), vec![2, 6, 12]);
        let a = IntMatrix::<i64>::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6]]).unwrap();
        let s = smith_normal_form(&a);
        s.verify(&a).unwrap();
        assert_eq!(s.diagonal(), vec![1, 0]);
        assert_eq!(s.rank(), 1);
    }

    #[test]
    fn determinants() {
        let a = IntMatrix::<i64>::from_i64_rows(&[&[0, 2, 1], &[1, 0, 3], &[4, 1, 0]]).unwrap();
        // cofactor expansion: 0·(0-3) - 2·(0-12) + 1·(1-0) = 25
        assert_eq!(a.determinant().unwrap(), 25);
        let a = IntMatrix::<i64>::from_i64_rows(&[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(a.determinant().unwrap(), 0);
    }

    #[test]
    fn rank_eight_divisors() {
        let rows: &[&[i64]] = &[
            &[5, 0, 0, 0, -4, -2, -3, -1],
            &[0, 5, 0, 0, 0, -4, -2, 0],
            &[0, 0, 5, 0, 0, 0, -4, 0],
            &[0, 0, 0, 5, 0, 0, 0, 0],
            &[0, 0, 0, 0, 5, 0, 0, 0],
            &[0, 0, 0, 0, 0, 5, 0, 0],
            &[0, 0, 0, 0, 0, 0, 5, 0],
            &[0, 0, 0, 0, 0, 0, 0, 5],
        ];
        let a = IntMatrix::<BigInt>::from_i64_rows(rows).unwrap();
        let t = type_from_relation_matrix(&a, 8).unwrap();
        assert_eq!(t.divisors, [5, 5, 25, 25, 25].map(BigInt::from));
        assert_eq!(t.free_rank, 0);
        assert_eq!(t.for_prime(&BigInt::from(5)).to_vector(), vec![0, 2, 3]);
    }

    #[test]
    fn empty_relations_are_free() {
        let t = type_from_relations::<i64>(&[], 3).unwrap();
        assert_eq!(t.free_rank, 3);
        assert!(t.divisors.is_empty());
    }

    #[test]
    fn mixed_primes() {
        let a = IntMatrix::<i64>::from_i64_rows(&[&[12, 0], &[0, 0]]).unwrap();
        let t = type_from_relation_matrix(&a, 2).unwrap();
        assert_eq!(t.free_rank, 1);
        assert_eq!(t.primary[&2], BTreeMap::from([(2, 1)]));
        assert_eq!(t.primary[&3], BTreeMap::from([(1, 1)]));
        assert!(!t.is_p_group(&2));
    }
}
