//! Monomials, lattice binomials and permuted lexicographic term orders.
//!
//! A binomial `x^{v+} - x^{v-}` is stored as the single signed vector `v`,
//! so the two sides always have disjoint support and common monomial
//! factors are stripped for free. This is sound because every ideal we work
//! with is saturated: each variable is a unit modulo the ideal.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentVector<T>(Vec<T>);

impl<T: Scalar> ExponentVector<T> {
    pub fn new(entries: Vec<T>) -> Result<Self> {
        if entries.iter().any(|e| e.is_negative()) {
            return Err(Error::NegativeExponent);
        }
        Ok(Self(entries))
    }

    pub fn one(len: usize) -> Self {
        Self(vec![T::zero(); len])
    }

    pub fn variable(len: usize, j: usize, exp: T) -> Self {
        let mut v = vec![T::zero(); len];
        v[j] = exp;
        Self(v)
    }

    pub fn from_i64s(entries: &[i64]) -> Result<Self> {
        Self::new(entries.iter().map(|&e| T::of_i64(e)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[T] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<T> {
        self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|e| e.is_zero())
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn scaled(&self, k: &T) -> Self {
        Self(self.0.iter().map(|e| e.clone() * k.clone()).collect())
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a.clone().max(b.clone())).collect())
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a.is_zero() || b.is_zero())
    }

    /// The single variable carrying a nonzero exponent, if there is exactly one.
    pub fn pure_power(&self) -> Option<(usize, &T)> {
        let mut found = None;
        for (j, e) in self.0.iter().enumerate() {
            if !e.is_zero() {
                if found.is_some() {
                    return None;
                }
                found = Some((j, e));
            }
        }
        found
    }
}

impl<T: Scalar> fmt::Display for ExponentVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_monomial(f, self.0.iter().cloned())
    }
}

fn write_monomial<T: Scalar>(f: &mut fmt::Formatter<'_>, exps: impl Iterator<Item = T>) -> fmt::Result {
    let mut wrote = false;
    for (j, e) in exps.enumerate() {
        if e.is_zero() {
            continue;
        }
        if e.is_one() {
            write!(f, "x{}", j + 1)?;
        } else {
            write!(f, "x{}^{}", j + 1, e)?;
        }
        wrote = true;
    }
    if !wrote {
        write!(f, "1")?;
    }
    Ok(())
}

/// Lexicographic order on monomials after permuting the variables.
///
/// `rank[j]` is the precedence of variable `j`; the variable of rank `q-1`
/// is the largest and is compared first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TermOrder {
    rank: Vec<usize>,
    // variables sorted by descending rank
    scan: Vec<usize>,
}

impl TermOrder {
    /// `x_1 ≺ x_2 ≺ ⋯ ≺ x_q`.
    pub fn identity(q: usize) -> Self {
        Self::from_ranks((0..q).collect()).unwrap()
    }

    pub fn from_ranks(rank: Vec<usize>) -> Result<Self> {
        let q = rank.len();
        let mut scan = vec![usize::MAX; q];
        for (j, &r) in rank.iter().enumerate() {
            if r >= q || scan[q - 1 - r] != usize::MAX {
                return Err(Error::InvalidOrder(format!("ranks {rank:?} are not a permutation")));
            }
            scan[q - 1 - r] = j;
        }
        Ok(Self { rank, scan })
    }

    /// Order in which `ascending[0]` is the smallest variable.
    pub fn from_ascending(ascending: &[usize]) -> Result<Self> {
        let q = ascending.len();
        let mut rank = vec![usize::MAX; q];
        for (r, &j) in ascending.iter().enumerate() {
            if j >= q || rank[j] != usize::MAX {
                return Err(Error::InvalidOrder(format!("{ascending:?} is not a permutation")));
            }
            rank[j] = r;
        }
        Self::from_ranks(rank)
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    pub fn rank(&self, j: usize) -> usize {
        self.rank[j]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    /// Variables from smallest to largest.
    pub fn ascending(&self) -> Vec<usize> {
        self.scan.iter().rev().copied().collect()
    }

    /// Variables from largest to smallest.
    pub fn descending(&self) -> &[usize] {
        &self.scan
    }

    pub fn swapped(&self, i: usize, j: usize) -> Self {
        let mut rank = self.rank.clone();
        rank.swap(i, j);
        Self::from_ranks(rank).unwrap()
    }

    /// Same order with one extra variable appended as the new largest.
    pub fn with_top_variable(&self) -> Self {
        let mut rank = self.rank.clone();
        rank.push(self.rank.len());
        Self::from_ranks(rank).unwrap()
    }

    pub fn compare_raw<T: Scalar>(&self, a: &[T], b: &[T]) -> Ordering {
        for &j in &self.scan {
            match a[j].cmp(&b[j]) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

pub fn compare_monomials<T: Scalar>(
    order: &TermOrder,
    m1: &ExponentVector<T>,
    m2: &ExponentVector<T>,
) -> Result<Ordering> {
    check_len(order.len(), m1.len())?;
    check_len(order.len(), m2.len())?;
    Ok(order.compare_raw(m1.entries(), m2.entries()))
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, found })
    }
}

/// `x^{v+} - x^{v-}` for a signed vector `v`; `v = 0` is the zero sentinel.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeBinomial<T> {
    v: Vec<T>,
}

impl<T: Scalar> LatticeBinomial<T> {
    pub fn from_vector(v: Vec<T>) -> Self {
        Self { v }
    }

    pub fn from_i64s(v: &[i64]) -> Self {
        Self { v: v.iter().map(|&e| T::of_i64(e)).collect() }
    }

    pub fn zero(len: usize) -> Self {
        Self { v: vec![T::zero(); len] }
    }

    pub fn len(&self) -> usize {
        self.v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.v.is_empty()
    }

    pub fn vector(&self) -> &[T] {
        &self.v
    }

    pub fn into_vector(self) -> Vec<T> {
        self.v
    }

    pub fn is_zero(&self) -> bool {
        self.v.iter().all(|e| e.is_zero())
    }

    pub fn positive(&self) -> ExponentVector<T> {
        ExponentVector(self.v.iter().map(|e| if e.is_positive() { e.clone() } else { T::zero() }).collect())
    }

    pub fn negative(&self) -> ExponentVector<T> {
        ExponentVector(self.v.iter().map(|e| if e.is_negative() { -e.clone() } else { T::zero() }).collect())
    }

    pub fn negated(&self) -> Self {
        Self { v: self.v.iter().map(|e| -e.clone()).collect() }
    }

    /// Whether `x^{v+}` is the leading side under `order`.
    pub fn is_oriented(&self, order: &TermOrder) -> bool {
        for &j in order.descending() {
            if !self.v[j].is_zero() {
                return self.v[j].is_positive();
            }
        }
        false
    }

    /// Is `x^{v+}` (the leading monomial of an oriented binomial) divisible by
    /// `x^{lead}`, and with what maximal multiplicity.
    pub(crate) fn positive_multiplicity(&self, lead: &[T]) -> Option<T> {
        side_multiplicity(&self.v, lead, true)
    }

    pub(crate) fn negative_multiplicity(&self, lead: &[T]) -> Option<T> {
        side_multiplicity(&self.v, lead, false)
    }

    pub(crate) fn sub_scaled(&mut self, g: &[T], m: &T) {
        for (a, b) in self.v.iter_mut().zip(g) {
            if !b.is_zero() {
                *a = a.clone() - b.clone() * m.clone();
            }
        }
    }

    pub(crate) fn add_scaled(&mut self, g: &[T], m: &T) {
        for (a, b) in self.v.iter_mut().zip(g) {
            if !b.is_zero() {
                *a = a.clone() + b.clone() * m.clone();
            }
        }
    }
}

/// Max `m` with `m·lead ≤ side` componentwise, where `side` is `v+` or `v-`
/// and `lead` is nonnegative on its support. `None` if `lead` does not divide.
pub(crate) fn side_multiplicity<T: Scalar>(v: &[T], lead: &[T], positive: bool) -> Option<T> {
    let mut m: Option<T> = None;
    for (a, l) in v.iter().zip(lead) {
        if !l.is_positive() {
            continue;
        }
        let side = if positive == a.is_positive() && !a.is_zero() { a.abs() } else { return None };
        if side < *l {
            return None;
        }
        let k = side / l.clone();
        m = Some(match m {
            Some(prev) if prev < k => prev,
            _ => k,
        });
    }
    m
}

impl<T: Scalar> fmt::Display for LatticeBinomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_monomial(f, self.positive().into_entries().into_iter())?;
        write!(f, " - ")?;
        write_monomial(f, self.negative().into_entries().into_iter())
    }
}

/// The binomial `x^u - x^w` with common factors stripped.
pub fn normalize<T: Scalar>(u: &ExponentVector<T>, w: &ExponentVector<T>) -> Result<LatticeBinomial<T>> {
    check_len(u.len(), w.len())?;
    Ok(LatticeBinomial { v: u.0.iter().zip(&w.0).map(|(a, b)| a.clone() - b.clone()).collect() })
}

pub fn orient<T: Scalar>(order: &TermOrder, b: &LatticeBinomial<T>) -> Result<LatticeBinomial<T>> {
    check_len(order.len(), b.len())?;
    if b.is_zero() {
        return Err(Error::ZeroBinomial);
    }
    Ok(if b.is_oriented(order) { b.clone() } else { b.negated() })
}

/// Oriented `v1 - v2`, which is the S-binomial of `b1` and `b2`; the zero
/// sentinel when they coincide.
pub fn spair_vector<T: Scalar>(
    b1: &LatticeBinomial<T>,
    b2: &LatticeBinomial<T>,
    order: &TermOrder,
) -> Result<LatticeBinomial<T>> {
    check_len(b1.len(), b2.len())?;
    let v = LatticeBinomial { v: b1.v.iter().zip(&b2.v).map(|(a, b)| a.clone() - b.clone()).collect() };
    if v.is_zero() {
        Ok(v)
    } else {
        orient(order, &v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Subtract the largest multiple of a reducer that fits in one step.
    MaxMultiplicity,
    /// Textbook division, one multiple at a time.
    SingleStep,
}

pub const DEFAULT_REDUCTION_CAP: usize = 1_000_000;

/// Fully reduces `b` (leading side first, then the trailing side) modulo
/// the oriented binomials `reducers`.
pub fn reduce_binomial<T: Scalar>(
    b: &LatticeBinomial<T>,
    reducers: &[LatticeBinomial<T>],
    order: &TermOrder,
) -> Result<LatticeBinomial<T>> {
    reduce_binomial_with(b, reducers, order, Strategy::MaxMultiplicity, DEFAULT_REDUCTION_CAP)
}

pub fn reduce_binomial_with<T: Scalar>(
    b: &LatticeBinomial<T>,
    reducers: &[LatticeBinomial<T>],
    order: &TermOrder,
    strategy: Strategy,
    cap: usize,
) -> Result<LatticeBinomial<T>> {
    check_len(order.len(), b.len())?;
    let leads: Vec<Vec<T>> = reducers
        .iter()
        .map(|g| {
            check_len(order.len(), g.len())?;
            Ok(g.positive().into_entries())
        })
        .collect::<Result<_>>()?;
    let mut cur = b.clone();
    let mut steps = 0usize;
    loop {
        if cur.is_zero() {
            return Ok(cur);
        }
        if !cur.is_oriented(order) {
            cur = cur.negated();
        }
        steps += 1;
        if steps > cap {
            return Err(Error::StepCapExceeded { what: "binomial reduction", cap });
        }
        let step = |m: T| match strategy {
            Strategy::MaxMultiplicity => m,
            Strategy::SingleStep => T::one(),
        };
        if let Some((i, m)) = leads.iter().enumerate().find_map(|(i, l)| cur.positive_multiplicity(l).map(|m| (i, m))) {
            cur.sub_scaled(&reducers[i].v, &step(m));
            continue;
        }
        if let Some((i, m)) = leads.iter().enumerate().find_map(|(i, l)| cur.negative_multiplicity(l).map(|m| (i, m))) {
            cur.add_scaled(&reducers[i].v, &step(m));
            continue;
        }
        return Ok(cur);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type B = LatticeBinomial<i64>;
    type M = ExponentVector<i64>;

    fn mono(e: &[i64]) -> M {
        M::from_i64s(e).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let b = normalize(&mono(&[5, 1]), &mono(&[2, 0])).unwrap();
        assert_eq!(b.vector(), &[3, 1]);
        assert_eq!(b.to_string(), "x1^3x2 - 1");
        assert!(normalize(&mono(&[4, 4]), &mono(&[4, 4])).unwrap().is_zero());
        let b = normalize(&mono(&[3, 0, 0, 0, 0]), &mono(&[0, 0, 1, 2, 0])).unwrap();
        assert_eq!(b.vector(), &[3, 0, -1, -2, 0]);
        assert_eq!(b.to_string(), "x1^3 - x3x4^2");
        assert_eq!(normalize(&mono(&[1]), &mono(&[1, 2])), Err(Error::LengthMismatch { expected: 1, found: 2 }));
    }

    #[test]
    fn negative_exponent_rejected() {
        assert_eq!(M::from_i64s(&[1, -1]), Err(Error::NegativeExponent));
    }

    #[test]
    fn compare_examples() {
        let id = TermOrder::identity(3);
        assert_eq!(compare_monomials(&id, &mono(&[0, 0, 1]), &mono(&[3, 3, 0])).unwrap(), Ordering::Greater);
        assert_eq!(compare_monomials(&id, &mono(&[1, 2, 3]), &mono(&[1, 2, 3])).unwrap(), Ordering::Equal);
        assert_eq!(compare_monomials(&id, &mono(&[2, 0, 0]), &mono(&[3, 0, 0])).unwrap(), Ordering::Less);
        let rev = TermOrder::from_ascending(&[2, 1, 0]).unwrap();
        assert_eq!(compare_monomials(&rev, &mono(&[0, 0, 1]), &mono(&[3, 3, 0])).unwrap(), Ordering::Less);
        assert!(compare_monomials(&id, &mono(&[1]), &mono(&[1, 0, 0])).is_err());
    }

    #[test]
    fn term_order_constructors() {
        let o = TermOrder::from_ascending(&[2, 0, 1]).unwrap();
        assert_eq!(o.ranks(), &[1, 2, 0]);
        assert_eq!(o.ascending(), vec![2, 0, 1]);
        assert_eq!(o.descending(), &[1, 0, 2]);
        assert!(TermOrder::from_ranks(vec![0, 0]).is_err());
        assert!(TermOrder::from_ascending(&[0, 3, 1]).is_err());
        assert_eq!(o.swapped(0, 1).ranks(), &[2, 1, 0]);
    }

    #[test]
    fn orient_examples() {
        let id = TermOrder::identity(5);
        // x3^8 x1^3 - x4  ->  x4 - x3^8 x1^3
        let b = B::from_i64s(&[3, 0, 8, -1, 0]);
        assert_eq!(orient(&id, &b).unwrap().vector(), &[-3, 0, -8, 1, 0]);
        let b = B::from_i64s(&[9, 0, 0, 0, -1]);
        let o = orient(&id, &b).unwrap();
        assert_eq!(o.to_string(), "x5 - x1^9");
        assert_eq!(orient(&id, &o).unwrap(), o);
        assert_eq!(orient(&id, &B::zero(5)), Err(Error::ZeroBinomial));
    }

    #[test]
    fn spair_examples() {
        // x1 is the largest variable here
        let rev = TermOrder::from_ascending(&[4, 3, 2, 1, 0]).unwrap();
        let b1 = orient(&rev, &B::from_i64s(&[3, 0, -1, -2, 0])).unwrap();
        let b2 = B::from_i64s(&[27, 0, 0, 0, 0]);
        let s = spair_vector(&b1, &b2, &rev).unwrap();
        // Derived by expanding x1^24·(x1^3 - x3x4^2) - (x1^27 - 1) = 1 - x1^24 x3 x4^2.
        assert_eq!(s.vector(), &[24, 0, 1, 2, 0]);
        assert_eq!(s.to_string(), "x1^24x3x4^2 - 1");
        assert!(spair_vector(&b1, &b1, &rev).unwrap().is_zero());

        let b1 = orient(&rev, &B::from_i64s(&[0, 3, 0, -1, 0])).unwrap();
        let b2 = orient(&rev, &B::from_i64s(&[0, 0, 0, 3, 0])).unwrap();
        let s = spair_vector(&b1, &b2, &rev).unwrap();
        assert_eq!(s.vector(), &[0, 3, 0, -4, 0]);
        let r = reduce_binomial(&s, &[b1, b2], &rev).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn reduce_examples() {
        let rev = TermOrder::from_ascending(&[4, 3, 2, 1, 0]).unwrap();
        let g: Vec<B> = [[3, 0, -1, -2, 0], [0, 0, 0, 3, 0], [0, 0, 3, 0, -1]]
            .iter()
            .map(|v| orient(&rev, &B::from_i64s(v)).unwrap())
            .collect();
        let b = orient(&rev, &B::from_i64s(&[9, 0, 0, 0, -1])).unwrap();
        assert!(reduce_binomial(&b, &g, &rev).unwrap().is_zero());

        let b = B::from_i64s(&[0, 0, 1, 0, -1]);
        assert_eq!(reduce_binomial(&b, &[], &rev).unwrap(), orient(&rev, &b).unwrap());

        let g: Vec<B> =
            [[0, 3, 0, -1, 0], [0, 0, 0, 3, 0]].iter().map(|v| orient(&rev, &B::from_i64s(v)).unwrap()).collect();
        let b = B::from_i64s(&[0, 9, 0, 0, 0]);
        assert!(reduce_binomial(&b, &g, &rev).unwrap().is_zero());
    }

    #[test]
    fn reduction_cap_fires() {
        let id = TermOrder::identity(1);
        let g = vec![B::from_i64s(&[1])];
        let b = B::from_i64s(&[50]);
        let r = reduce_binomial_with(&b, &g, &id, Strategy::SingleStep, 10);
        assert!(matches!(r, Err(Error::StepCapExceeded { .. })));
        assert!(reduce_binomial_with(&b, &g, &id, Strategy::MaxMultiplicity, 10).unwrap().is_zero());
    }

    #[test]
    fn bigint_instantiation() {
        let id = TermOrder::identity(2);
        let b = LatticeBinomial::<BigInt>::from_i64s(&[-81, 1]);
        assert_eq!(orient(&id, &b).unwrap().to_string(), "x2 - x1^81");
    }

    #[test]
    fn multiplicity() {
        let v = [7i64, -2, 4];
        assert_eq!(side_multiplicity(&v, &[2, 0, 1], true), Some(3));
        assert_eq!(side_multiplicity(&v, &[0, 1, 0], true), None);
        assert_eq!(side_multiplicity(&v, &[0, 1, 0], false), Some(2));
        assert_eq!(side_multiplicity(&v, &[8, 0, 0], true), None);
    }
}
