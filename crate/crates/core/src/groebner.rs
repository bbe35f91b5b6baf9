//! Reduced Gröbner bases of lattice binomial ideals.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{
    orient, reduce_binomial_with, side_multiplicity, spair_vector, ExponentVector, LatticeBinomial, Strategy,
    TermOrder, DEFAULT_REDUCTION_CAP,
};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    /// Hermite form for full-rank lattices, Buchberger otherwise.
    #[default]
    Auto,
    Buchberger,
    /// Lex bases of full-rank lattices only.
    Hermite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroebnerOptions {
    pub engine: Engine,
    /// Maximum number of critical pairs processed.
    pub pair_cap: usize,
    /// Maximum rewriting steps in a single reduction.
    pub reduction_cap: usize,
}

impl Default for GroebnerOptions {
    fn default() -> Self {
        Self { engine: Engine::Auto, pair_cap: 1_000_000, reduction_cap: DEFAULT_REDUCTION_CAP }
    }
}

pub const DEFAULT_ORDER_CAP: u32 = 64;
pub const DEFAULT_COUNT_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis<T> {
    elements: Vec<LatticeBinomial<T>>,
    order: TermOrder,
    reduced: bool,
}

impl<T: Scalar> GroebnerBasis<T> {
    /// Wraps already oriented binomials without checking the Gröbner property.
    pub fn from_parts(elements: Vec<LatticeBinomial<T>>, order: TermOrder, reduced: bool) -> Result<Self> {
        for g in &elements {
            if g.len() != order.len() {
                return Err(Error::LengthMismatch { expected: order.len(), found: g.len() });
            }
            if !g.is_oriented(&order) {
                return Err(Error::Internal(format!("element {g} is not oriented")));
            }
        }
        Ok(Self { elements, order, reduced })
    }

    pub fn elements(&self) -> &[LatticeBinomial<T>] {
        &self.elements
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn num_variables(&self) -> usize {
        self.order.len()
    }

    pub fn leading_monomials(&self) -> Vec<ExponentVector<T>> {
        self.elements.iter().map(|g| g.positive()).collect()
    }

    /// The element whose leading monomial is a pure power of `x_j`.
    pub fn pivot_element(&self, j: usize) -> Option<&LatticeBinomial<T>> {
        self.elements.iter().find(|g| matches!(g.positive().pure_power(), Some((v, _)) if v == j))
    }
}

impl<T: Scalar> fmt::Display for GroebnerBasis<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, g) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "}}")
    }
}

/// Reduced Gröbner basis of the lattice ideal of the span of `generators`,
/// computed by the engine selected in `opts`.
pub fn reduced_basis<T: Scalar>(
    generators: &[LatticeBinomial<T>],
    order: &TermOrder,
    opts: GroebnerOptions,
) -> Result<GroebnerBasis<T>> {
    match opts.engine {
        Engine::Buchberger => buchberger_reduced_with(generators, order, opts),
        Engine::Hermite => hermite_reduced(generators, order),
        Engine::Auto => match hermite_reduced(generators, order) {
            Err(Error::NotZeroDimensional { .. }) => buchberger_reduced_with(generators, order, opts),
            r => r,
        },
    }
}

/// Reduced lex basis of a full-rank lattice read off its triangular
/// Hermite form: one element `u^e - m` per variable, with `m` standard.
pub fn hermite_reduced<T: Scalar>(generators: &[LatticeBinomial<T>], order: &TermOrder) -> Result<GroebnerBasis<T>> {
    let q = order.len();
    for g in generators {
        if g.len() != q {
            return Err(Error::LengthMismatch { expected: q, found: g.len() });
        }
    }
    // column c holds the variable of rank c, so smaller columns are smaller variables
    let asc = order.ascending();
    let mut rows: Vec<Vec<T>> = generators
        .iter()
        .map(|g| asc.iter().map(|&j| g.vector()[j].clone()).collect())
        .filter(|r: &Vec<T>| r.iter().any(|e| !e.is_zero()))
        .collect();
    let mut pivots: Vec<Option<Vec<T>>> = vec![None; q];
    for c in (0..q).rev() {
        loop {
            let best = rows
                .iter()
                .enumerate()
                .filter(|(_, r)| !r[c].is_zero())
                .min_by(|a, b| a.1[c].abs().cmp(&b.1[c].abs()))
                .map(|(i, _)| i);
            let Some(i) = best else {
                return Err(Error::NotZeroDimensional { variable: asc[c] });
            };
            let pivot = rows[i].clone();
            let mut done = true;
            for (k, r) in rows.iter_mut().enumerate() {
                if k != i && !r[c].is_zero() {
                    let f = r[c].clone() / pivot[c].clone();
                    axpy(r, &pivot, &f);
                    done &= r[c].is_zero();
                }
            }
            if done {
                let mut pivot = rows.swap_remove(i);
                if pivot[c].is_negative() {
                    pivot.iter_mut().for_each(|e| *e = -e.clone());
                }
                rows.retain(|r| r.iter().any(|e| !e.is_zero()));
                pivots[c] = Some(pivot);
                break;
            }
        }
    }
    let mut pivots: Vec<Vec<T>> = pivots.into_iter().map(|r| r.expect("every column has a pivot")).collect();
    for c in 0..q {
        for t in (0..c).rev() {
            // tail exponents land in [0, e_t)
            let x = pivots[c][t].clone();
            let e = pivots[t][t].clone();
            let r = x.rem_floor(&e);
            let target = if r.is_zero() { r } else { r - e.clone() };
            let f = (x - target) / e;
            if !f.is_zero() {
                let (lo, hi) = pivots.split_at_mut(c);
                axpy(&mut hi[0], &lo[t], &f);
            }
        }
    }
    let elements = pivots
        .into_iter()
        .map(|w| {
            let mut v = vec![T::zero(); q];
            for (c, e) in w.into_iter().enumerate() {
                v[asc[c]] = e;
            }
            LatticeBinomial::from_vector(v)
        })
        .collect();
    GroebnerBasis::from_parts(elements, order.clone(), true)
}

/// `r -= f·s`.
fn axpy<T: Scalar>(r: &mut [T], s: &[T], f: &T) {
    for (a, b) in r.iter_mut().zip(s) {
        *a = a.clone() - f.clone() * b.clone();
    }
}

pub fn buchberger_reduced<T: Scalar>(generators: &[LatticeBinomial<T>], order: &TermOrder) -> Result<GroebnerBasis<T>> {
    buchberger_reduced_with(generators, order, GroebnerOptions::default())
}

pub fn buchberger_reduced_with<T: Scalar>(
    generators: &[LatticeBinomial<T>],
    order: &TermOrder,
    opts: GroebnerOptions,
) -> Result<GroebnerBasis<T>> {
    let q = order.len();
    for g in generators {
        if g.len() != q {
            return Err(Error::LengthMismatch { expected: q, found: g.len() });
        }
    }
    let nonunits = non_unit_variables(generators);
    if nonunits.is_empty() {
        let elements = buchberger_core(generators, order, opts)?;
        return Ok(GroebnerBasis { elements, order: order.clone(), reduced: true });
    }
    // Saturate: adjoin t with t·∏x_j = 1 for the variables not already known
    // to be units, take t largest, and keep the t-free part.
    let ext_order = order.with_top_variable();
    let mut ext: Vec<LatticeBinomial<T>> = generators
        .iter()
        .map(|g| {
            let mut v = g.vector().to_vec();
            v.push(T::zero());
            LatticeBinomial::from_vector(v)
        })
        .collect();
    let mut sat = vec![T::zero(); q + 1];
    for j in nonunits {
        sat[j] = T::one();
    }
    sat[q] = T::one();
    ext.push(LatticeBinomial::from_vector(sat));
    let elements = buchberger_core(&ext, &ext_order, opts)?
        .into_iter()
        .filter(|g| g.vector()[q].is_zero())
        .map(|g| {
            let mut v = g.into_vector();
            v.pop();
            LatticeBinomial::from_vector(v)
        })
        .collect();
    Ok(GroebnerBasis { elements, order: order.clone(), reduced: true })
}

/// Variables not provably invertible modulo the ideal: `x^u - x^w` with all of
/// `supp(w)` invertible makes all of `supp(u)` invertible, and symmetrically.
fn non_unit_variables<T: Scalar>(generators: &[LatticeBinomial<T>]) -> Vec<usize> {
    let q = generators.first().map_or(0, |g| g.len());
    let mut unit = vec![false; q];
    loop {
        let mut changed = false;
        for g in generators {
            let v = g.vector();
            let pos_units = v.iter().enumerate().all(|(j, e)| !e.is_positive() || unit[j]);
            let neg_units = v.iter().enumerate().all(|(j, e)| !e.is_negative() || unit[j]);
            if pos_units || neg_units {
                for (j, e) in v.iter().enumerate() {
                    if !e.is_zero() && !unit[j] {
                        unit[j] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    (0..q).filter(|&j| !unit[j]).collect()
}

struct Pair<T> {
    i: usize,
    j: usize,
    lcm: Vec<T>,
}

fn buchberger_core<T: Scalar>(
    generators: &[LatticeBinomial<T>],
    order: &TermOrder,
    opts: GroebnerOptions,
) -> Result<Vec<LatticeBinomial<T>>> {
    let reduce = |b: &LatticeBinomial<T>, g: &[LatticeBinomial<T>]| {
        reduce_binomial_with(b, g, order, Strategy::MaxMultiplicity, opts.reduction_cap)
    };
    let mut basis: Vec<LatticeBinomial<T>> = Vec::new();
    let mut leads: Vec<Vec<T>> = Vec::new();
    let mut pairs: Vec<Pair<T>> = Vec::new();

    let insert = |b: LatticeBinomial<T>,
                  basis: &mut Vec<LatticeBinomial<T>>,
                  leads: &mut Vec<Vec<T>>,
                  pairs: &mut Vec<Pair<T>>| {
        let lead = b.positive().into_entries();
        let j = basis.len();
        for (i, li) in leads.iter().enumerate() {
            // coprime leading terms: the S-binomial reduces to zero
            if li.iter().zip(&lead).all(|(a, b)| a.is_zero() || b.is_zero()) {
                continue;
            }
            let lcm = li.iter().zip(&lead).map(|(a, b)| a.clone().max(b.clone())).collect();
            pairs.push(Pair { i, j, lcm });
        }
        basis.push(b);
        leads.push(lead);
    };

    for g in generators {
        if g.is_zero() {
            continue;
        }
        let r = reduce(g, &basis)?;
        if !r.is_zero() {
            insert(r, &mut basis, &mut leads, &mut pairs);
        }
    }

    let mut processed = 0usize;
    while !pairs.is_empty() {
        processed += 1;
        if processed > opts.pair_cap {
            return Err(Error::StepCapExceeded { what: "Buchberger pairs", cap: opts.pair_cap });
        }
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                order
                    .compare_raw(&pairs[a].lcm, &pairs[b].lcm)
                    .then((pairs[a].i, pairs[a].j).cmp(&(pairs[b].i, pairs[b].j)))
            })
            .unwrap();
        let pair = pairs.swap_remove(best);
        if chain_criterion(&pair, &leads, &pairs) {
            continue;
        }
        let s = spair_vector(&basis[pair.i], &basis[pair.j], order)?;
        if s.is_zero() {
            continue;
        }
        let r = reduce(&s, &basis)?;
        if !r.is_zero() {
            insert(r, &mut basis, &mut leads, &mut pairs);
        }
    }

    interreduce(basis, order, opts)
}

/// Gebauer–Möller style test: the pair (i, j) is redundant if some k has
/// lead(k) | lcm(i, j) and both (i, k) and (j, k) are already resolved.
fn chain_criterion<T: Scalar>(pair: &Pair<T>, leads: &[Vec<T>], pending: &[Pair<T>]) -> bool {
    let is_pending = |a: usize, b: usize| {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        pending.iter().any(|p| p.i == a && p.j == b)
    };
    for (k, lk) in leads.iter().enumerate() {
        if k == pair.i || k == pair.j {
            continue;
        }
        if !lk.iter().zip(&pair.lcm).all(|(a, b)| a <= b) {
            continue;
        }
        // the lcm of (i, k) and (j, k) must be strictly smaller than lcm(i, j)
        let strict = |o: &[T]| lk.iter().zip(o).zip(&pair.lcm).any(|((a, b), l)| a.clone().max(b.clone()) != *l);
        if strict(&leads[pair.i]) && strict(&leads[pair.j]) && !is_pending(pair.i, k) && !is_pending(pair.j, k) {
            return true;
        }
    }
    false
}

fn interreduce<T: Scalar>(
    basis: Vec<LatticeBinomial<T>>,
    order: &TermOrder,
    opts: GroebnerOptions,
) -> Result<Vec<LatticeBinomial<T>>> {
    let leads: Vec<ExponentVector<T>> = basis.iter().map(|g| g.positive()).collect();
    let minimal: Vec<LatticeBinomial<T>> = basis
        .iter()
        .enumerate()
        .filter(|(i, _)| {
            !leads.iter().enumerate().any(|(k, lk)| k != *i && lk.divides(&leads[*i]) && (lk != &leads[*i] || k < *i))
        })
        .map(|(_, g)| g.clone())
        .collect();
    let mut out = Vec::with_capacity(minimal.len());
    for (i, g) in minimal.iter().enumerate() {
        let others: Vec<LatticeBinomial<T>> =
            minimal.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, h)| h.clone()).collect();
        let r = reduce_binomial_with(g, &others, order, Strategy::MaxMultiplicity, opts.reduction_cap)?;
        if r.positive() != g.positive() {
            return Err(Error::Internal(format!("tail reduction changed the leading term of {g}")));
        }
        out.push(r);
    }
    out.sort_by(|a, b| order.compare_raw(&a.positive().into_entries(), &b.positive().into_entries()));
    Ok(out)
}

/// Unique standard monomial congruent to `m`.
pub fn normal_form_monomial<T: Scalar>(m: &ExponentVector<T>, gb: &GroebnerBasis<T>) -> Result<ExponentVector<T>> {
    if m.len() != gb.num_variables() {
        return Err(Error::LengthMismatch { expected: gb.num_variables(), found: m.len() });
    }
    let leads: Vec<Vec<T>> = gb.elements.iter().map(|g| g.positive().into_entries()).collect();
    // a nonnegative vector is the "+" side of itself
    let mut cur = LatticeBinomial::from_vector(m.entries().to_vec());
    let mut steps = 0usize;
    loop {
        let hit = leads.iter().enumerate().find_map(|(i, l)| side_multiplicity(cur.vector(), l, true).map(|k| (i, k)));
        match hit {
            None => break,
            Some((i, k)) => {
                cur.sub_scaled(gb.elements[i].vector(), &k);
                steps += 1;
                if steps > DEFAULT_REDUCTION_CAP {
                    return Err(Error::StepCapExceeded { what: "monomial normal form", cap: DEFAULT_REDUCTION_CAP });
                }
            }
        }
    }
    ExponentVector::new(cur.into_vector())
}

pub fn contains_binomial<T: Scalar>(b: &LatticeBinomial<T>, gb: &GroebnerBasis<T>) -> Result<bool> {
    if b.is_zero() {
        return Ok(true);
    }
    let r = reduce_binomial_with(b, &gb.elements, &gb.order, Strategy::MaxMultiplicity, DEFAULT_REDUCTION_CAP)?;
    Ok(r.is_zero())
}

/// Smallest `p^k` (k ≤ cap) with `x_j^{p^k} ≡ 1`.
pub fn element_order<T: Scalar>(j: usize, gb: &GroebnerBasis<T>, p: &T, cap: u32) -> Result<T> {
    let q = gb.num_variables();
    let mut m = normal_form_monomial(&ExponentVector::variable(q, j, T::one()), gb)?;
    let mut order = T::one();
    for _ in 0..=cap {
        if m.is_one() {
            return Ok(order);
        }
        m = normal_form_monomial(&m.scaled(p), gb)?;
        order = order * p.clone();
    }
    Err(Error::OrderCapExceeded { variable: j, cap })
}

/// Number of monomials divisible by no leading term.
pub fn standard_monomial_count<T: Scalar>(gb: &GroebnerBasis<T>, cap: u64) -> Result<u64> {
    let q = gb.num_variables();
    let leads = gb.leading_monomials();
    let mut bounds: Vec<Option<T>> = vec![None; q];
    let mut all_pure = true;
    for l in &leads {
        match l.pure_power() {
            Some((j, e)) => {
                if bounds[j].as_ref().is_none_or(|b| e < b) {
                    bounds[j] = Some(e.clone());
                }
            }
            None => all_pure = false,
        }
    }
    let bounds: Vec<T> = bounds
        .into_iter()
        .enumerate()
        .map(|(j, b)| b.ok_or(Error::NotZeroDimensional { variable: j }))
        .collect::<Result<_>>()?;
    if all_pure {
        let mut total: u64 = 1;
        for b in &bounds {
            let b = b.to_u64().ok_or(Error::CountCapExceeded { cap })?;
            total = total.checked_mul(b).filter(|t| *t <= cap).ok_or(Error::CountCapExceeded { cap })?;
        }
        return Ok(total);
    }
    let leads: Vec<Vec<T>> = leads.into_iter().map(|l| l.into_entries()).collect();
    let mut cur = vec![T::zero(); q];
    let mut count = 0u64;
    enumerate_staircase(0, &mut cur, &bounds, &leads, &mut count, cap)?;
    Ok(count)
}

fn enumerate_staircase<T: Scalar>(
    j: usize,
    cur: &mut Vec<T>,
    bounds: &[T],
    leads: &[Vec<T>],
    count: &mut u64,
    cap: u64,
) -> Result<()> {
    if j == cur.len() {
        *count += 1;
        if *count > cap {
            return Err(Error::CountCapExceeded { cap });
        }
        return Ok(());
    }
    let mut e = T::zero();
    while e < bounds[j] {
        cur[j] = e.clone();
        if leads.iter().any(|l| l.iter().zip(cur.iter()).all(|(a, b)| a <= b)) {
            break;
        }
        enumerate_staircase(j + 1, cur, bounds, leads, count, cap)?;
        e = e + T::one();
    }
    cur[j] = T::zero();
    Ok(())
}

/// Checks the Buchberger criterion directly: every S-binomial reduces to zero.
pub fn is_groebner_basis<T: Scalar>(gb: &GroebnerBasis<T>) -> Result<bool> {
    for (i, a) in gb.elements.iter().enumerate() {
        for b in &gb.elements[i + 1..] {
            let s = spair_vector(a, b, &gb.order)?;
            if !contains_binomial(&s, gb)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether the leading terms are pairwise non-dividing and every trailing
/// monomial is standard.
pub fn is_reduced_basis<T: Scalar>(gb: &GroebnerBasis<T>) -> bool {
    let leads = gb.leading_monomials();
    gb.elements.iter().enumerate().all(|(i, g)| {
        let tail = g.negative();
        !g.is_zero()
            && g.is_oriented(&gb.order)
            && leads.iter().enumerate().all(|(k, l)| (k == i || !l.divides(&leads[i])) && !l.divides(&tail))
    })
}

/// Orients and sorts an arbitrary binomial list by leading monomial.
pub fn sorted_oriented<T: Scalar>(items: &[LatticeBinomial<T>], order: &TermOrder) -> Result<Vec<LatticeBinomial<T>>> {
    let mut out = items.iter().map(|b| orient(order, b)).collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| {
        let o = order.compare_raw(&a.positive().into_entries(), &b.positive().into_entries());
        if o == Ordering::Equal {
            order.compare_raw(&a.negative().into_entries(), &b.negative().into_entries())
        } else {
            o
        }
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type B = LatticeBinomial<BigInt>;

    fn bins(vs: &[&[i64]]) -> Vec<B> {
        vs.iter().map(|v| B::from_i64s(v)).collect()
    }

    fn gap() -> Vec<B> {
        bins(&[&[3, 0, -1, -2, 0], &[0, 0, 3, 0, -1], &[0, 0, 0, 0, 3], &[0, 3, 0, -1, 0], &[0, 0, 0, 3, 0]])
    }

    fn gap_gb() -> GroebnerBasis<BigInt> {
        buchberger_reduced(&gap(), &TermOrder::identity(5)).unwrap()
    }

    #[test]
    fn gap_basis() {
        let gb = gap_gb();
        let expected = sorted_oriented(
            &bins(&[&[27, 0, 0, 0, 0], &[0, 9, 0, 0, 0], &[-3, -3, 1, 0, 0], &[0, -3, 0, 1, 0], &[-9, 0, 0, 0, 1]]),
            gb.order(),
        )
        .unwrap();
        assert_eq!(gb.elements(), &expected[..]);
        assert_eq!(gb.to_string(), "{x1^27 - 1, x2^9 - 1, x3 - x1^3x2^3, x4 - x2^3, x5 - x1^9}");
        assert!(is_reduced_basis(&gb));
        assert!(is_groebner_basis(&gb).unwrap());
    }

    #[test]
    fn single_generator() {
        let g = bins(&[&[5]]);
        let gb = buchberger_reduced(&g, &TermOrder::identity(1)).unwrap();
        assert_eq!(gb.elements(), &g[..]);
        let g = bins(&[&[-5]]);
        let gb = buchberger_reduced(&g, &TermOrder::identity(1)).unwrap();
        assert_eq!(gb.elements(), &bins(&[&[5]])[..]);
    }

    #[test]
    fn normal_forms() {
        let gb = gap_gb();
        let nf = |e: &[i64]| normal_form_monomial(&ExponentVector::from_i64s(e).unwrap(), &gb).unwrap();
        assert_eq!(
            nf(&[0, 0, 0, 0, 1]).entries(),
            ExponentVector::<BigInt>::from_i64s(&[9, 0, 0, 0, 0]).unwrap().entries()
        );
        assert!(nf(&[27, 0, 0, 0, 0]).is_one());
        assert!(nf(&[0, 0, 0, 0, 0]).is_one());
    }

    #[test]
    fn membership() {
        let gb = gap_gb();
        assert!(contains_binomial(&B::from_i64s(&[-9, 0, 0, 0, 1]), &gb).unwrap());
        assert!(contains_binomial(&B::zero(5), &gb).unwrap());
        assert!(!contains_binomial(&B::from_i64s(&[1, 0, 0, 0, 0]), &gb).unwrap());
        for g in gap() {
            assert!(contains_binomial(&g, &gb).unwrap());
        }
    }

    #[test]
    fn orders_and_counts() {
        let gb = gap_gb();
        let p = BigInt::from(3);
        let orders: Vec<BigInt> = (0..5).map(|j| element_order(j, &gb, &p, DEFAULT_ORDER_CAP).unwrap()).collect();
        assert_eq!(orders, [27, 9, 9, 3, 3].map(BigInt::from));
        assert_eq!(standard_monomial_count(&gb, DEFAULT_COUNT_CAP).unwrap(), 243);

        let g = bins(&[&[3]]);
        let gb1 = buchberger_reduced(&g, &TermOrder::identity(1)).unwrap();
        assert_eq!(element_order(0, &gb1, &p, 4).unwrap(), BigInt::from(3));

        let trivial = bins(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let gbt = buchberger_reduced(&trivial, &TermOrder::identity(3)).unwrap();
        assert_eq!(standard_monomial_count(&gbt, 10).unwrap(), 1);
    }

    #[test]
    fn order_cap_and_dimension_errors() {
        // 2c = 0 with p = 3 never reaches 1
        let g = bins(&[&[2]]);
        let gb = buchberger_reduced(&g, &TermOrder::identity(1)).unwrap();
        assert!(matches!(element_order(0, &gb, &BigInt::from(3), 5), Err(Error::OrderCapExceeded { .. })));
        let g = bins(&[&[3, 0]]);
        let gb = buchberger_reduced(&g, &TermOrder::identity(2)).unwrap();
        assert_eq!(standard_monomial_count(&gb, 100), Err(Error::NotZeroDimensional { variable: 1 }));
        let g = bins(&[&[100, 0], &[0, 100]]);
        let gb = buchberger_reduced(&g, &TermOrder::identity(2)).unwrap();
        assert_eq!(standard_monomial_count(&gb, 1000), Err(Error::CountCapExceeded { cap: 1000 }));
    }

    #[test]
    fn saturation_is_applied() {
        // x1^2 = x2, x2^2 = x1: the lattice ideal contains x1^3 - 1
        let g = bins(&[&[2, -1], &[-1, 2]]);
        assert_eq!(non_unit_variables(&g), vec![0, 1]);
        let gb = buchberger_reduced(&g, &TermOrder::identity(2)).unwrap();
        assert_eq!(gb.to_string(), "{x1^3 - 1, x2 - x1^2}");
        assert_eq!(standard_monomial_count(&gb, 100).unwrap(), 3);
    }

    #[test]
    fn staircase_enumeration() {
        // leads {x1^3, x1x2, x2^3}: standard monomials 1, x1, x1^2, x2, x2^2
        let gb = GroebnerBasis::from_parts(bins(&[&[3, 0], &[1, 1], &[0, 3]]), TermOrder::identity(2), false).unwrap();
        assert_eq!(standard_monomial_count(&gb, 1000).unwrap(), 5);
        assert_eq!(standard_monomial_count(&gb, 4), Err(Error::CountCapExceeded { cap: 4 }));
    }

    #[test]
    fn hermite_matches_buchberger() {
        let cases = [
            gap(),
            bins(&[&[2, -1], &[-1, 2]]),
            bins(&[&[4, -2, 0], &[0, 6, 3], &[1, 1, 1]]),
            bins(&[&[9, 0, 0, 0], &[-3, 3, 0, 0], &[1, 0, -3, 0], &[0, 2, 1, 3], &[0, 0, 9, 0]]),
        ];
        for g in &cases {
            let q = g[0].len();
            let all: Vec<usize> = (0..q).collect();
            for asc in [all.clone(), all.iter().rev().copied().collect()] {
                let order = TermOrder::from_ascending(&asc).unwrap();
                let h = hermite_reduced(g, &order).unwrap();
                assert_eq!(h, buchberger_reduced(g, &order).unwrap());
                assert!(is_groebner_basis(&h).unwrap());
            }
        }
        let g = bins(&[&[3, 0]]);
        assert_eq!(hermite_reduced(&g, &TermOrder::identity(2)), Err(Error::NotZeroDimensional { variable: 1 }));
        let auto = reduced_basis(&g, &TermOrder::identity(2), GroebnerOptions::default()).unwrap();
        assert_eq!(auto, buchberger_reduced(&g, &TermOrder::identity(2)).unwrap());
    }
}
