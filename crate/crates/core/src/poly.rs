//! Dense univariate integer polynomials.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

/// Coefficients in ascending degree, without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly<T>(Vec<T>);

impl<T: Scalar> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self(coeffs)
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| T::of_i64(c)).collect())
    }

    pub fn zero() -> Self {
        Self(Vec::new())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c·x^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        let mut v = vec![T::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> T {
        self.0.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.0.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(T::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `self(inner)`.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.0.iter().rev() {
            acc = &(&acc * inner) + &Self::constant(c.clone());
        }
        acc
    }

    /// Remainder modulo `x^n - 1`.
    pub fn reduce_cyclic(&self, n: usize) -> Self {
        let mut v = vec![T::zero(); n];
        for (k, c) in self.0.iter().enumerate() {
            v[k % n] = v[k % n].clone() + c.clone();
        }
        Self::new(v)
    }

    /// Coefficients reduced into `[0, m)`.
    pub fn reduce_coeffs(&self, m: &T) -> Self {
        Self::new(self.0.iter().map(|c| c.rem_floor(m)).collect())
    }
}

impl<T: Scalar> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: Self) -> Poly<T> {
        let n = self.0.len().max(rhs.0.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<T: Scalar> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: Self) -> Poly<T> {
        let n = self.0.len().max(rhs.0.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.0.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Scalar> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: Self) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![T::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(v)
    }
}

impl<T: Scalar> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let a = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (k, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "y")?,
                (1, false) => write!(f, "{a}y")?,
                (_, true) => write!(f, "y^{k}")?,
                (_, false) => write!(f, "{a}y^{k}")?,
            }
        }
        Ok(())
    }
}

pub fn binomial_coefficient<T: Scalar>(n: u32, k: u32) -> T {
    let mut acc = T::one();
    for i in 0..k {
        acc = acc * T::of_u64((n - i) as u64) / T::of_u64((i + 1) as u64);
    }
    acc
}

/// Whether a monic `f` over `F_p` is a power of one irreducible polynomial.
/// `None` when the search space exceeds `limit` candidates.
pub fn is_primary_mod_p(f: &[i64], p: i64, limit: u64) -> Option<bool> {
    let f = trim_mod(f, p);
    let l = f.len().checked_sub(1)?;
    if l == 0 || f[l] != 1 {
        return Some(false);
    }
    if (p as u64).checked_pow(l as u32).is_none_or(|n| n > limit) {
        return None;
    }
    for d in 1..=l {
        if l % d != 0 {
            continue;
        }
        for g in monic_polys(d, p) {
            if is_irreducible_mod_p(&g, p) && poly_pow_mod(&g, (l / d) as u32, p) == f {
                return Some(true);
            }
        }
    }
    Some(false)
}

fn trim_mod(f: &[i64], p: i64) -> Vec<i64> {
    let mut v: Vec<i64> = f.iter().map(|c| c.rem_euclid(p)).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn monic_polys(d: usize, p: i64) -> Vec<Vec<i64>> {
    let total = (p as u64).pow(d as u32);
    (0..total)
        .map(|mut n| {
            let mut v: Vec<i64> = (0..d)
                .map(|_| {
                    let c = (n % p as u64) as i64;
                    n /= p as u64;
                    c
                })
                .collect();
            v.push(1);
            v
        })
        .collect()
}

fn poly_mul_mod(a: &[i64], b: &[i64], p: i64) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            v[i + j] = (v[i + j] + x * y).rem_euclid(p);
        }
    }
    trim_mod(&v, p)
}

fn poly_pow_mod(g: &[i64], e: u32, p: i64) -> Vec<i64> {
    (0..e).fold(vec![1], |acc, _| poly_mul_mod(&acc, g, p))
}

fn poly_rem_mod(a: &[i64], b: &[i64], p: i64) -> Vec<i64> {
    let mut r = trim_mod(a, p);
    let db = b.len() - 1;
    let inv = mod_inverse(b[db], p);
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = (r[r.len() - 1] * inv).rem_euclid(p);
        for (i, y) in b.iter().enumerate() {
            r[k + i] = (r[k + i] - c * y).rem_euclid(p);
        }
        r = trim_mod(&r, p);
    }
    r
}

fn mod_inverse(a: i64, p: i64) -> i64 {
    (1..p).find(|x| (a * x).rem_euclid(p) == 1).unwrap_or(0)
}

fn is_irreducible_mod_p(g: &[i64], p: i64) -> bool {
    let d = g.len() - 1;
    (1..=d / 2).all(|k| monic_polys(k, p).iter().all(|h| !poly_rem_mod(g, h, p).is_empty()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = Poly::<i64>::from_i64s(&[1, 1]);
        assert_eq!(a.pow(3), Poly::from_i64s(&[1, 3, 3, 1]));
        assert_eq!(&a - &a, Poly::zero());
        assert_eq!(a.pow(3).reduce_cyclic(2), Poly::from_i64s(&[4, 4]));
        let y = Poly::<i64>::from_i64s(&[-1, 1]);
        assert_eq!(Poly::from_i64s(&[0, 0, 1]).compose(&y), Poly::from_i64s(&[1, -2, 1]));
        assert_eq!(Poly::<i64>::from_i64s(&[2, 0, -1, 1]).to_string(), "2 - y^2 + y^3");
        assert_eq!(binomial_coefficient::<i64>(5, 2), 10);
    }

    #[test]
    fn primary_polynomials() {
        assert_eq!(is_primary_mod_p(&[-2, 1], 3, 1000), Some(true));
        assert_eq!(is_primary_mod_p(&[1, 0, 1], 3, 1000), Some(true));
        assert_eq!(is_primary_mod_p(&[1, 2, 1], 3, 1000), Some(true));
        assert_eq!(is_primary_mod_p(&[2, 0, 1], 3, 1000), Some(false));
        assert_eq!(is_primary_mod_p(&[1, 1, 1], 2, 1000), Some(true));
        assert_eq!(is_primary_mod_p(&[0, 1, 1], 2, 1000), Some(false));
        assert_eq!(is_primary_mod_p(&[1, 1, 1], 101, 10), None);
    }
}
