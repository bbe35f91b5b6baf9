//! From a presentation to a p-basis and Ulm invariants.
//!
//! The relations become lattice binomials; generator orders are read off
//! normal forms of `x_j^{p^k}`; a variable order is searched for whose
//! reduced lex Gröbner basis has the triangular p-basis shape
//!
//! ```text
//! x_j^{p^{r_j}} - ∏_{t ≺ x_j} x_t^{a_{jt} p^{r_j}}
//! ```
//!
//! and every element with `r_j ≥ 1` contributes `b_j = c_j - Σ a_{jt} c_t`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::groebner::{
    element_order, normal_form_monomial, reduced_basis, GroebnerBasis, GroebnerOptions, DEFAULT_COUNT_CAP,
    DEFAULT_ORDER_CAP,
};
use crate::lattice::{normalize, ExponentVector, LatticeBinomial, TermOrder};
use crate::scalar::{is_prime, Scalar};

/// `⟨c_1, …, c_q | Σ_j a_{ij} c_j = 0⟩` for a prime `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation<T> {
    prime: T,
    generators: Vec<String>,
    relations: Vec<Vec<T>>,
}

impl<T: Scalar> Presentation<T> {
    pub fn new(prime: T, generators: Vec<String>, relations: Vec<Vec<T>>) -> Result<Self> {
        if !is_prime(&prime) {
            return Err(Error::InvalidPresentation(format!("{prime} is not prime")));
        }
        if generators.is_empty() {
            return Err(Error::InvalidPresentation("at least one generator is required".into()));
        }
        let q = generators.len();
        for (i, r) in relations.iter().enumerate() {
            if r.len() != q {
                return Err(Error::InvalidPresentation(format!(
                    "relation {} has {} entries, expected {q}",
                    i + 1,
                    r.len()
                )));
            }
            if r.iter().all(|a| a.is_zero()) {
                return Err(Error::InvalidPresentation(format!("relation {} is zero", i + 1)));
            }
        }
        Ok(Self { prime, generators, relations })
    }

    /// Generators named `c1, …, cq`.
    pub fn with_default_names(prime: T, q: usize, relations: Vec<Vec<T>>) -> Result<Self> {
        Self::new(prime, (1..=q).map(|j| format!("c{j}")).collect(), relations)
    }

    pub fn from_i64s(prime: i64, relations: &[&[i64]]) -> Result<Self> {
        let q = relations.first().map_or(0, |r| r.len());
        Self::with_default_names(
            T::of_i64(prime),
            q,
            relations.iter().map(|r| r.iter().map(|&a| T::of_i64(a)).collect()).collect(),
        )
    }

    pub fn prime(&self) -> &T {
        &self.prime
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relations(&self) -> &[Vec<T>] {
        &self.relations
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }
}

/// Each relation `a` becomes `x^{a+} - x^{a-}`, in input order.
pub fn relations_to_binomials<T: Scalar>(pres: &Presentation<T>) -> Vec<LatticeBinomial<T>> {
    pres.relations
        .iter()
        .map(|a| {
            let pos = a.iter().map(|e| if e.is_positive() { e.clone() } else { T::zero() }).collect();
            let neg = a.iter().map(|e| if e.is_negative() { -e.clone() } else { T::zero() }).collect();
            normalize(&ExponentVector::new(pos).unwrap(), &ExponentVector::new(neg).unwrap()).unwrap()
        })
        .collect()
}

/// `t(M) = (s_0, s_1, …, s_n)`: free rank followed by Ulm multiplicities.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct GroupType {
    free_rank: usize,
    ulm: BTreeMap<u32, usize>,
}

impl GroupType {
    pub fn new(free_rank: usize, ulm: BTreeMap<u32, usize>) -> Self {
        let ulm = ulm.into_iter().filter(|&(r, s)| r > 0 && s > 0).collect();
        Self { free_rank, ulm }
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    /// Parses `(s_0, s_1, …, s_n)`.
    pub fn from_vector(v: &[usize]) -> Self {
        let free_rank = v.first().copied().unwrap_or(0);
        let ulm = v.iter().enumerate().skip(1).map(|(r, &s)| (r as u32, s)).collect();
        Self::new(free_rank, ulm)
    }

    /// From the exponents `r` of the cyclic summands `Z/p^r`.
    pub fn from_exponents(free_rank: usize, exponents: impl IntoIterator<Item = u32>) -> Self {
        let mut ulm = BTreeMap::new();
        for r in exponents {
            *ulm.entry(r).or_default() += 1;
        }
        Self::new(free_rank, ulm)
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn ulm(&self) -> &BTreeMap<u32, usize> {
        &self.ulm
    }

    pub fn multiplicity(&self, r: u32) -> usize {
        self.ulm.get(&r).copied().unwrap_or(0)
    }

    /// Largest `n` with `s_n ≥ 1`, zero for a torsion-free group.
    pub fn exponent(&self) -> u32 {
        self.ulm.keys().next_back().copied().unwrap_or(0)
    }

    /// `log_p` of the torsion order.
    pub fn log_order(&self) -> u64 {
        self.ulm.iter().map(|(&r, &s)| r as u64 * s as u64).sum()
    }

    pub fn torsion_rank(&self) -> usize {
        self.ulm.values().sum()
    }

    pub fn to_vector(&self) -> Vec<usize> {
        let n = self.exponent();
        std::iter::once(self.free_rank).chain((1..=n).map(|r| self.multiplicity(r))).collect()
    }

    /// Exponents of the cyclic summands in ascending order.
    pub fn exponents(&self) -> Vec<u32> {
        self.ulm.iter().flat_map(|(&r, &s)| std::iter::repeat_n(r, s)).collect()
    }

    pub fn torsion_part(&self) -> Self {
        Self { free_rank: 0, ulm: self.ulm.clone() }
    }

    pub fn with_free_rank(&self, free_rank: usize) -> Self {
        Self { free_rank, ulm: self.ulm.clone() }
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut ulm = self.ulm.clone();
        for (&r, &s) in &other.ulm {
            *ulm.entry(r).or_default() += s;
        }
        Self::new(self.free_rank + other.free_rank, ulm)
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.to_vector().iter().map(|s| s.to_string()).collect();
        write!(f, "({})", v.join(","))
    }
}

/// `b_j = c_j - Σ_t a_{jt} c_t` of order `p^{r_j}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PBasisElement<T> {
    pub pivot: usize,
    pub tail: Vec<(usize, T)>,
    pub exponent: u32,
    pub order: T,
}

impl<T: Scalar> PBasisElement<T> {
    pub fn display(&self, names: &[String]) -> String {
        let mut s = names[self.pivot].clone();
        for (t, a) in &self.tail {
            if a.is_one() {
                s += &format!(" - {}", names[*t]);
            } else {
                s += &format!(" - {}{}", a, names[*t]);
            }
        }
        s
    }

    /// Coefficient vector over the generators.
    pub fn as_vector(&self, q: usize) -> Vec<T> {
        let mut v = vec![T::zero(); q];
        v[self.pivot] = T::one();
        for (t, a) in &self.tail {
            v[*t] = v[*t].clone() - a.clone();
        }
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Height {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Height::Finite(k) => write!(f, "{k}"),
            Height::Infinite => write!(f, "inf"),
        }
    }
}

/// Why a reduced basis is not in p-basis shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShapeViolation {
    /// Leading term mixes several variables; `pivot` is the largest of them.
    MixedLead { pivot: usize, other: usize },
    /// Leading exponent is not a power of p.
    NotPPower { pivot: usize },
    /// No pure-power element for this variable.
    Missing { variable: usize },
    /// Tail exponent on `variable` not divisible by the pivot's exponent.
    TailNotDivisible { pivot: usize, variable: usize },
    /// Tail involves a variable not smaller than the pivot.
    TailNotSmaller { pivot: usize, variable: usize },
}

impl fmt::Display for ShapeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ShapeViolation::MixedLead { pivot, other } => {
                write!(f, "leading term of x{} also involves x{}", pivot + 1, other + 1)
            }
            ShapeViolation::NotPPower { pivot } => write!(f, "exponent of x{} is not a power of p", pivot + 1),
            ShapeViolation::Missing { variable } => write!(f, "no pure-power element for x{}", variable + 1),
            ShapeViolation::TailNotDivisible { pivot, variable } => {
                write!(f, "tail exponent of x{} in the x{} element is not divisible", variable + 1, pivot + 1)
            }
            ShapeViolation::TailNotSmaller { pivot, variable } => {
                write!(f, "tail of the x{} element involves x{}", pivot + 1, variable + 1)
            }
        }
    }
}

impl ShapeViolation {
    /// The `(pivot, offending variable)` pair, if any.
    pub fn culprits(&self) -> Option<(usize, usize)> {
        match *self {
            ShapeViolation::MixedLead { pivot, other } => Some((pivot, other)),
            ShapeViolation::TailNotDivisible { pivot, variable } => Some((pivot, variable)),
            ShapeViolation::TailNotSmaller { pivot, variable } => Some((pivot, variable)),
            _ => None,
        }
    }
}

/// Checks the p-basis shape; returns each variable's leading exponent `r_j`.
pub fn check_shape<T: Scalar>(gb: &GroebnerBasis<T>, p: &T) -> std::result::Result<Vec<u32>, ShapeViolation> {
    let order = gb.order();
    let q = gb.num_variables();
    let mut exps: Vec<Option<u32>> = vec![None; q];
    for g in gb.elements() {
        let lead = g.positive();
        let support: Vec<usize> = (0..q).filter(|&j| !lead.entries()[j].is_zero()).collect();
        let pivot = *support.iter().max_by_key(|&&j| order.rank(j)).unwrap();
        if let Some(&other) = support.iter().filter(|&&j| j != pivot).max_by_key(|&&j| order.rank(j)) {
            return Err(ShapeViolation::MixedLead { pivot, other });
        }
        let e = &lead.entries()[pivot];
        let r = e.log_exact(p).ok_or(ShapeViolation::NotPPower { pivot })?;
        let tail = g.negative();
        for (t, a) in tail.entries().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if order.rank(t) >= order.rank(pivot) {
                return Err(ShapeViolation::TailNotSmaller { pivot, variable: t });
            }
            if !a.is_multiple_of(e) {
                return Err(ShapeViolation::TailNotDivisible { pivot, variable: t });
            }
        }
        exps[pivot] = Some(r);
    }
    exps.into_iter().enumerate().map(|(j, r)| r.ok_or(ShapeViolation::Missing { variable: j })).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineOptions {
    pub groebner: GroebnerOptions,
    /// Bound on `k` when searching for `x_j^{p^k} ≡ 1`.
    pub order_cap: u32,
    pub count_cap: u64,
    /// Use this order instead of searching.
    pub forced_order: Option<TermOrder>,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        Self {
            groebner: GroebnerOptions::default(),
            order_cap: DEFAULT_ORDER_CAP,
            count_cap: DEFAULT_COUNT_CAP,
            forced_order: None,
        }
    }
}

/// Orders of all generators. They do not depend on the term order; the one
/// used makes `c_1` the largest variable, under which a triangular
/// presentation is already a Gröbner basis.
pub fn generator_orders<T: Scalar>(
    pres: &Presentation<T>,
    opts: &PipelineOptions,
) -> Result<(GroebnerBasis<T>, Vec<T>)> {
    let q = pres.num_generators();
    let bins = relations_to_binomials(pres);
    let reversed: Vec<usize> = (0..q).rev().collect();
    let gb = reduced_basis(&bins, &TermOrder::from_ascending(&reversed)?, opts.groebner)?;
    let orders = (0..q).map(|j| element_order(j, &gb, &pres.prime, opts.order_cap)).collect::<Result<Vec<_>>>()?;
    Ok((gb, orders))
}

/// Generators by descending order, ties by index: the smallest variable is
/// the generator of largest order.
pub fn initial_order<T: Scalar>(orders: &[T]) -> TermOrder {
    let mut idx: Vec<usize> = (0..orders.len()).collect();
    idx.sort_by(|&a, &b| orders[b].cmp(&orders[a]).then(a.cmp(&b)));
    TermOrder::from_ascending(&idx).unwrap()
}

/// Every order that sorts generators by descending order, enumerating all
/// permutations inside each block of equal nontrivial order.
pub fn tie_break_orders<T: Scalar>(orders: &[T]) -> Vec<TermOrder> {
    let base = initial_order(orders).ascending();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for &j in &base {
        match blocks.last_mut() {
            Some(b) if orders[b[0]] == orders[j] && !orders[j].is_one() => b.push(j),
            _ => blocks.push(vec![j]),
        }
    }
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for block in blocks {
        let perms = permutations(&block);
        out = out
            .into_iter()
            .flat_map(|prefix| {
                perms.iter().map(move |p| {
                    let mut v = prefix.clone();
                    v.extend(p);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(|asc| TermOrder::from_ascending(&asc).unwrap()).collect()
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

/// How the variable order was found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchMethod {
    /// Caller supplied the order.
    Forced,
    /// Sorting by descending order, after this many tie-break swaps.
    Sorted { swaps: usize },
    /// Sorting failed; generators were chosen one at a time by maximal order
    /// modulo the previously chosen ones. The note says why sorting failed.
    Quotient { note: String },
}

/// Searches a variable order whose reduced lex basis has p-basis shape.
pub fn find_pbasis_permutation<T: Scalar>(pres: &Presentation<T>) -> Result<(TermOrder, GroebnerBasis<T>)> {
    let opts = PipelineOptions::default();
    let (_, orders) = generator_orders(pres, &opts)?;
    search_order(pres, &orders, &opts).map(|(o, gb, _)| (o, gb))
}

fn search_order<T: Scalar>(
    pres: &Presentation<T>,
    orders: &[T],
    opts: &PipelineOptions,
) -> Result<(TermOrder, GroebnerBasis<T>, SearchMethod)> {
    let q = pres.num_generators();
    let p = &pres.prime;
    let bins = relations_to_binomials(pres);

    let mut order = initial_order(orders);
    let mut seen = HashSet::new();
    let mut swaps = 0;
    let note = loop {
        if !seen.insert(order.clone()) {
            break "tie-break swaps revisited an order".to_string();
        }
        let gb = reduced_basis(&bins, &order, opts.groebner)?;
        let violation = match check_shape(&gb, p) {
            Ok(_) => return Ok((order, gb, SearchMethod::Sorted { swaps })),
            Err(v) => v,
        };
        let Some((j, i)) = violation.culprits() else {
            break format!("unexpected shape: {violation}");
        };
        if orders[i] != orders[j] {
            break format!("{violation}; x{} has order {} and x{} has order {}", i + 1, orders[i], j + 1, orders[j]);
        }
        if swaps >= q * q {
            break "tie-break swap budget exhausted".to_string();
        }
        order = order.swapped(i, j);
        swaps += 1;
    };
    let (order, gb) = quotient_order_search(&bins, q, p, opts)?;
    Ok((order, gb, SearchMethod::Quotient { note }))
}

/// Chooses generators from the smallest variable up, each time one of
/// maximal order modulo those already chosen (ties by index). The chosen
/// subgroup stays a direct summand, which forces the p-basis shape.
fn quotient_order_search<T: Scalar>(
    bins: &[LatticeBinomial<T>],
    q: usize,
    p: &T,
    opts: &PipelineOptions,
) -> Result<(TermOrder, GroebnerBasis<T>)> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut in_chosen = vec![false; q];
    while chosen.len() < q {
        let rest: Vec<usize> = (0..q).filter(|&j| !in_chosen[j]).collect();
        let asc: Vec<usize> = chosen.iter().chain(&rest).copied().collect();
        let gb = reduced_basis(bins, &TermOrder::from_ascending(&asc)?, opts.groebner)?;
        let mut best: Option<(u32, usize)> = None;
        for &j in &rest {
            let k = quotient_order(j, &gb, &in_chosen, p, opts.order_cap)?;
            if best.is_none_or(|(b, _)| k > b) {
                best = Some((k, j));
            }
        }
        let (k, j) = best.expect("at least one generator remains");
        if k == 0 {
            chosen.extend(rest);
            break;
        }
        chosen.push(j);
        in_chosen[j] = true;
    }
    let order = TermOrder::from_ascending(&chosen)?;
    let gb = reduced_basis(bins, &order, opts.groebner)?;
    match check_shape(&gb, p) {
        Ok(_) => Ok((order, gb)),
        Err(v) => Err(Error::Internal(format!("quotient order search produced a bad shape: {v}"))),
    }
}

/// Smallest `k` with `x_j^{p^k}` congruent to a monomial in the marked
/// variables. `gb` must order the marked variables below all others.
fn quotient_order<T: Scalar>(j: usize, gb: &GroebnerBasis<T>, marked: &[bool], p: &T, cap: u32) -> Result<u32> {
    let q = gb.num_variables();
    let mut m = normal_form_monomial(&ExponentVector::variable(q, j, T::one()), gb)?;
    for k in 0..=cap {
        if m.entries().iter().enumerate().all(|(t, e)| e.is_zero() || marked[t]) {
            return Ok(k);
        }
        m = normal_form_monomial(&m.scaled(p), gb)?;
    }
    Err(Error::OrderCapExceeded { variable: j, cap })
}

/// Reads the p-basis off a basis in p-basis shape.
pub fn extract_pbasis<T: Scalar>(gb: &GroebnerBasis<T>, orders: &[T], p: &T) -> Result<Vec<PBasisElement<T>>> {
    let exps = check_shape(gb, p).map_err(|v| Error::ShapeViolation(v.to_string()))?;
    let mut basis = Vec::new();
    for j in gb.order().ascending() {
        let r = exps[j];
        if r == 0 {
            continue;
        }
        let g = gb.pivot_element(j).expect("shape check guarantees a pivot element");
        let e = p.pow_u32(r);
        let tail: Vec<(usize, T)> = gb
            .order()
            .descending()
            .iter()
            .filter_map(|&t| {
                let a = &g.vector()[t];
                (a.is_negative()).then(|| (t, ((-a.clone()) / e.clone()).rem_floor(&orders[t])))
            })
            .filter(|(_, a)| !a.is_zero())
            .collect();
        basis.push(PBasisElement { pivot: j, tail, exponent: r, order: e });
    }
    Ok(basis)
}

pub fn ulm_type<T: Scalar>(basis: &[PBasisElement<T>]) -> GroupType {
    GroupType::from_exponents(0, basis.iter().map(|b| b.exponent))
}

/// Largest `k` with the element in `p^k M`, given its p-basis coordinates.
pub fn p_height<T: Scalar>(coords: &[T], basis: &[PBasisElement<T>], p: &T) -> Height {
    let mut h: Option<u32> = None;
    for (c, b) in coords.iter().zip(basis) {
        let c = c.rem_floor(&b.order);
        if let Some(v) = c.valuation(p) {
            h = Some(h.map_or(v, |h| h.min(v)));
        }
    }
    h.map_or(Height::Infinite, Height::Finite)
}

/// Everything the pipeline produces for one presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Structure<T> {
    pub prime: T,
    pub generators: Vec<String>,
    pub generator_orders: Vec<T>,
    pub order: TermOrder,
    pub gb: GroebnerBasis<T>,
    pub basis: Vec<PBasisElement<T>>,
    pub group_type: GroupType,
    pub search: SearchMethod,
}

impl<T: Scalar> Structure<T> {
    /// p-basis coordinates of `Σ e_j c_j`.
    pub fn coordinates(&self, element: &[T]) -> Result<Vec<T>> {
        let q = self.generators.len();
        if element.len() != q {
            return Err(Error::LengthMismatch { expected: q, found: element.len() });
        }
        let exps: Vec<T> = element.iter().zip(&self.generator_orders).map(|(e, o)| e.rem_floor(o)).collect();
        let nf = normal_form_monomial(&ExponentVector::new(exps)?, &self.gb)?;
        let mut c = nf.into_entries();
        let mut coords = vec![T::zero(); self.basis.len()];
        // c_j = b_j + Σ a_jt c_t with every t ≺ j: peel pivots from the top
        let mut by_rank: Vec<usize> = (0..self.basis.len()).collect();
        by_rank.sort_by_key(|&i| std::cmp::Reverse(self.order.rank(self.basis[i].pivot)));
        for i in by_rank {
            let b = &self.basis[i];
            let k = std::mem::replace(&mut c[b.pivot], T::zero());
            if k.is_zero() {
                continue;
            }
            for (t, a) in &b.tail {
                c[*t] = c[*t].clone() + k.clone() * a.clone();
            }
            coords[i] = k.rem_floor(&b.order);
        }
        if c.iter().any(|e| !e.is_zero()) {
            return Err(Error::Internal("normal form involves a non-basis generator".into()));
        }
        Ok(coords)
    }

    pub fn height_of(&self, element: &[T]) -> Result<Height> {
        Ok(p_height(&self.coordinates(element)?, &self.basis, &self.prime))
    }

    pub fn basis_display(&self) -> Vec<String> {
        self.basis.iter().map(|b| b.display(&self.generators)).collect()
    }
}

pub fn compute_structure<T: Scalar>(pres: &Presentation<T>) -> Result<Structure<T>> {
    compute_structure_with(pres, &PipelineOptions::default())
}

pub fn compute_structure_with<T: Scalar>(pres: &Presentation<T>, opts: &PipelineOptions) -> Result<Structure<T>> {
    let (_, orders) = generator_orders(pres, opts)?;
    let (order, gb, search) = match &opts.forced_order {
        Some(o) => {
            if o.len() != pres.num_generators() {
                return Err(Error::LengthMismatch { expected: pres.num_generators(), found: o.len() });
            }
            let gb = reduced_basis(&relations_to_binomials(pres), o, opts.groebner)?;
            (o.clone(), gb, SearchMethod::Forced)
        }
        None => search_order(pres, &orders, opts)?,
    };
    let basis = extract_pbasis(&gb, &orders, &pres.prime)?;
    let group_type = ulm_type(&basis);
    Ok(Structure {
        prime: pres.prime.clone(),
        generators: pres.generators.clone(),
        generator_orders: orders,
        order,
        gb,
        basis,
        group_type,
        search,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = Presentation<BigInt>;

    fn rank_eight() -> P {
        P::from_i64s(
            5,
            &[
                &[5, 0, 0, 0, -4, -2, -3, -1],
                &[0, 5, 0, 0, 0, -4, -2, 0],
                &[0, 0, 5, 0, 0, 0, -4, 0],
                &[0, 0, 0, 5, 0, 0, 0, 0],
                &[0, 0, 0, 0, 5, 0, 0, 0],
                &[0, 0, 0, 0, 0, 5, 0, 0],
                &[0, 0, 0, 0, 0, 0, 5, 0],
                &[0, 0, 0, 0, 0, 0, 0, 5],
            ],
        )
        .unwrap()
    }

    #[test]
    fn presentation_validation() {
        assert!(P::from_i64s(4, &[&[4]]).is_err());
        assert!(P::from_i64s(3, &[&[0, 0]]).is_err());
        assert!(P::with_default_names(BigInt::from(3), 2, vec![vec![BigInt::from(3)]]).is_err());
        assert!(P::with_default_names(BigInt::from(3), 0, vec![]).is_err());
    }

    #[test]
    fn binomials_from_relations() {
        let bins = relations_to_binomials(&rank_eight());
        assert_eq!(bins[0].to_string(), "x1^5 - x5^4x6^2x7^3x8");
        assert_eq!(bins[7].to_string(), "x8^5 - 1");
        let pres = P::from_i64s(3, &[&[0, 0, 0, 0, 0, 0, 0, -2, 1, 0]]).unwrap();
        assert_eq!(relations_to_binomials(&pres)[0].to_string(), "x9 - x8^2");
    }

    #[test]
    fn rank_eight_structure() {
        let s = compute_structure(&rank_eight()).unwrap();
        assert_eq!(s.order, TermOrder::identity(8));
        assert_eq!(s.group_type.to_vector(), vec![0, 2, 3]);
        assert_eq!(s.basis_display(), vec!["c1", "c2", "c3", "c4", "c5"]);
    }

    #[test]
    fn group_type_algebra() {
        let t = GroupType::from_vector(&[0, 1, 1, 2]);
        assert_eq!(t.exponent(), 3);
        assert_eq!(t.log_order(), 1 + 2 + 6);
        assert_eq!(t.to_string(), "(0,1,1,2)");
        assert_eq!(t.exponents(), vec![1, 2, 3, 3]);
        assert_eq!(GroupType::trivial().to_vector(), vec![0]);
        let s = t.sum(&GroupType::from_vector(&[1, 0, 0, 0, 1]));
        assert_eq!(s.to_vector(), vec![1, 1, 1, 2, 1]);
        assert_eq!(GroupType::from_vector(&[0, 0, 0]), GroupType::trivial());
    }

    #[test]
    fn heights() {
        let p = BigInt::from(3);
        let b = |r: u32| PBasisElement { pivot: 0, tail: vec![], exponent: r, order: p.pow_u32(r) };
        let one = [b(3)];
        assert_eq!(p_height(&[BigInt::from(9)], &one, &p), Height::Finite(2));
        assert_eq!(p_height(&[BigInt::from(0)], &one, &p), Height::Infinite);
        assert_eq!(p_height(&[BigInt::from(27)], &one, &p), Height::Infinite);
        let two = [b(3), b(3)];
        assert_eq!(p_height(&[BigInt::from(3), BigInt::from(9)], &two, &p), Height::Finite(1));
    }

    #[test]
    fn heights_match_brute_force() {
        // Z_27 ⊕ Z_27, p = 3: scan p^k M explicitly
        let p = BigInt::from(3);
        let b = |r: u32| PBasisElement { pivot: 0, tail: vec![], exponent: r, order: p.pow_u32(r) };
        let basis = [b(3), b(2)];
        for x in 0..27i64 {
            for y in 0..9i64 {
                let mut expected = Height::Infinite;
                if x != 0 || y != 0 {
                    let mut k = 0;
                    loop {
                        let m = 3i64.pow(k + 1);
                        // (x, y) ∈ 3^{k+1} M iff some (u, v) has 3^{k+1}(u, v) = (x, y)
                        let inside = (0..27).any(|u| (m * u - x).rem_euclid(27) == 0)
                            && (0..9).any(|v| (m * v - y).rem_euclid(9) == 0);
                        if !inside {
                            break;
                        }
                        k += 1;
                    }
                    expected = Height::Finite(k);
                }
                let got = p_height(&[BigInt::from(x), BigInt::from(y)], &basis, &p);
                assert_eq!(got, expected, "({x}, {y})");
            }
        }
    }

    #[test]
    fn tie_breaks() {
        let orders = [9, 3, 9, 1, 3].map(BigInt::from);
        assert_eq!(initial_order(&orders).ascending(), vec![0, 2, 1, 4, 3]);
        let all = tie_break_orders(&orders);
        assert_eq!(all.len(), 4);
        assert!(all.iter().all(|o| o.ascending()[4] == 3));
    }

    #[test]
    fn single_cyclic() {
        let s = compute_structure(&P::from_i64s(7, &[&[7]]).unwrap()).unwrap();
        assert_eq!(s.basis_display(), vec!["c1"]);
        assert_eq!(s.basis[0].order, BigInt::from(7));
        let s = compute_structure(&P::from_i64s(7, &[&[1]]).unwrap()).unwrap();
        assert!(s.basis.is_empty());
        assert_eq!(s.group_type, GroupType::trivial());
    }

    #[test]
    fn non_p_group_rejected() {
        let r = compute_structure(&P::from_i64s(3, &[&[2]]).unwrap());
        assert!(matches!(r, Err(Error::OrderCapExceeded { .. })));
        let r = compute_structure(&P::from_i64s(3, &[&[3, 0]]).unwrap());
        assert!(matches!(r, Err(Error::OrderCapExceeded { variable: 1, .. })));
    }
}
