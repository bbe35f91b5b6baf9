//! Presentations of modules over `ZC_p` and the p-pullback of `Z ⊕ Z`.
//!
//! A basic building block `⟨a⟩` with lengths `d1, d2` is generated over `Z`
//! by `a`, `p1^k a` (`k < d1`) and `p2^k a` (`k < d2`). Multiplication by
//! `p` is expanded through the ring identity, truncated by `p1^{d1} a = 0`,
//! `p2^{d2} a = 0` and `p1 p2 = 0`. Cycles glue blocks along their socle
//! elements.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::pbasis::{compute_structure_with, GroupType, Height, PipelineOptions, Presentation, Structure};
use crate::poly::{binomial_coefficient, is_primary_mod_p, Poly};
use crate::scalar::{is_prime, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingKind {
    /// Integral group ring of the cyclic group of order p.
    Zcp,
    /// `{Z → Z_p ← Z}`.
    Pullback,
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RingKind::Zcp => "zcp",
            RingKind::Pullback => "pullback",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingModel<T> {
    kind: RingKind,
    prime: T,
    sigma: Poly<T>,
}

impl<T: Scalar> RingModel<T> {
    pub fn new(kind: RingKind, prime: T) -> Result<Self> {
        match kind {
            RingKind::Zcp => Self::zcp(prime),
            RingKind::Pullback => Self::pullback(prime),
        }
    }

    pub fn zcp(prime: T) -> Result<Self> {
        if !is_prime(&prime) {
            return Err(Error::InvalidSpec(format!("{prime} is not prime")));
        }
        let sigma = sigma_decomposition(&prime)?;
        let ring = Self { kind: RingKind::Zcp, prime, sigma };
        if !ring.verify_identity() {
            return Err(Error::Internal("ring identity does not hold".into()));
        }
        Ok(ring)
    }

    pub fn pullback(prime: T) -> Result<Self> {
        if !is_prime(&prime) {
            return Err(Error::InvalidSpec(format!("{prime} is not prime")));
        }
        Ok(Self { kind: RingKind::Pullback, prime, sigma: Poly::zero() })
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    pub fn prime(&self) -> &T {
        &self.prime
    }

    /// `σ` as a polynomial in `p2`; zero for the pullback.
    pub fn sigma(&self) -> &Poly<T> {
        &self.sigma
    }

    fn p(&self) -> usize {
        self.prime.to_usize().expect("prime fits in usize")
    }

    /// `p1 + p2^{p-1} σ(p2) = p` and `p1 p2 = 0` in `Z[x]/(x^p - 1)`.
    pub fn verify_identity(&self) -> bool {
        if self.kind == RingKind::Pullback {
            return true;
        }
        let p = self.p();
        let x_minus_1 = Poly::new(vec![-T::one(), T::one()]);
        let p1 = Poly::new(vec![T::one(); p]);
        let p2 = x_minus_1.clone();
        let lhs = &p1 + &(&p2.pow(p as u32 - 1) * &self.sigma.compose(&x_minus_1));
        lhs.reduce_cyclic(p) == Poly::constant(self.prime.clone()) && (&p1 * &p2).reduce_cyclic(p).is_zero()
    }

    /// `p·g` for a block generator, truncated at the block lengths.
    fn p_action(&self, g: Gen, d1: u32, d2: u32) -> Vec<(Gen, T)> {
        let mut out: Vec<(Gen, T)> = Vec::new();
        let mut push = |g: Gen, c: T| {
            let inside = match g {
                Gen::A => true,
                Gen::P1(k) => k < d1,
                Gen::P2(k) => k < d2,
            };
            if inside && !c.is_zero() {
                out.push((g, c));
            }
        };
        let p2_shift = |push: &mut dyn FnMut(Gen, T), base: u32| match self.kind {
            RingKind::Zcp => {
                let p = self.p() as u32;
                for (k, s) in self.sigma.coeffs().iter().enumerate() {
                    push(Gen::P2(p - 1 + base + k as u32), s.clone());
                }
            }
            RingKind::Pullback => push(Gen::P2(base + 1), T::one()),
        };
        match g {
            Gen::A => {
                push(Gen::P1(1), T::one());
                p2_shift(&mut push, 0);
            }
            Gen::P1(i) => push(Gen::P1(i + 1), T::one()),
            Gen::P2(i) => p2_shift(&mut push, i),
        }
        out
    }
}

/// `σ` with `p = p1 + p2^{p-1} σ(p2)` in `ZC_p`, of degree at most `p - 2`.
///
/// With `y = p2 = x - 1`, `p1 = ((1 + y)^p - 1)/y` and `y·p1 = 0`; finds `h`
/// with `p - p1 + h·y·p1 ≡ 0 mod y^{p-1}` and divides.
pub fn sigma_decomposition<T: Scalar>(p: &T) -> Result<Poly<T>> {
    if !is_prime(p) {
        return Err(Error::InvalidSpec(format!("{p} is not prime")));
    }
    let n = p.to_u32().ok_or_else(|| Error::InvalidSpec("prime too large".into()))?;
    let p1 = Poly::new((1..=n).map(|k| binomial_coefficient::<T>(n, k)).collect());
    // p - p1 = -y·q
    let q = Poly::new((2..=n).map(|k| binomial_coefficient::<T>(n, k)).collect());
    let m = (n - 2) as usize;
    let mut h: Vec<T> = Vec::with_capacity(m);
    for k in 0..m {
        let mut r = q.coeff(k);
        for (i, hi) in h.iter().enumerate() {
            r = r - hi.clone() * p1.coeff(k - i);
        }
        let (d, rem) = r.div_rem(&p1.coeff(0));
        if !rem.is_zero() {
            return Err(Error::Internal("sigma division failed".into()));
        }
        h.push(d);
    }
    let t = &(&Poly::new(h) * &p1) - &q;
    if t.coeffs().iter().take(m).any(|c| !c.is_zero()) {
        return Err(Error::Internal("sigma division failed".into()));
    }
    Ok(Poly::new(t.coeffs().iter().skip(m).cloned().collect()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Length {
    Finite(u32),
    Infinite,
}

impl Length {
    pub fn finite(self) -> Option<u32> {
        match self {
            Length::Finite(d) => Some(d),
            Length::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Length::Infinite
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(d) => write!(f, "{d}"),
            Length::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BlockSpec {
    pub d1: Length,
    pub d2: Length,
}

impl BlockSpec {
    pub fn new(d1: Length, d2: Length) -> Self {
        Self { d1, d2 }
    }

    pub fn finite(d1: u32, d2: u32) -> Self {
        Self::new(Length::Finite(d1), Length::Finite(d2))
    }

    fn lengths(&self) -> Option<(u32, u32)> {
        Some((self.d1.finite()?, self.d2.finite()?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CycleKind {
    Deleted,
    Block,
}

impl fmt::Display for CycleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CycleKind::Deleted => "deleted",
            CycleKind::Block => "block",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleSpec<T> {
    pub ring: RingModel<T>,
    pub cycle: CycleKind,
    pub blocks: Vec<BlockSpec>,
    /// `λ_0, …, λ_{l-1}` of `f(z) = λ_0 + ⋯ + z^l`; block cycles only.
    pub lambda: Vec<T>,
    /// `c_i` in `p1^{d(1,i+1)-1} a_{i+1} = c_i p2^{d(2,i)-1} a_i`; empty means all `-1`.
    pub connectors: Vec<T>,
}

impl<T: Scalar> ModuleSpec<T> {
    pub fn deleted(ring: RingModel<T>, blocks: Vec<BlockSpec>) -> Self {
        Self { ring, cycle: CycleKind::Deleted, blocks, lambda: Vec::new(), connectors: Vec::new() }
    }

    pub fn block(ring: RingModel<T>, blocks: Vec<BlockSpec>, lambda: Vec<T>) -> Self {
        Self { ring, cycle: CycleKind::Block, blocks, lambda, connectors: Vec::new() }
    }

    pub fn single(ring: RingModel<T>, block: BlockSpec) -> Self {
        Self::deleted(ring, vec![block])
    }

    pub fn with_connectors(mut self, connectors: Vec<T>) -> Self {
        self.connectors = connectors;
        self
    }

    pub fn m(&self) -> usize {
        self.blocks.len()
    }

    /// Smallest `m̲` with `S^{(i)} ≅ S^{(i+m̲)}`.
    pub fn period(&self) -> usize {
        let m = self.m();
        (1..=m)
            .find(|&t| m.is_multiple_of(t) && (0..m).all(|i| self.blocks[i] == self.blocks[(i + t) % m]))
            .unwrap_or(m)
    }

    pub fn is_finite(&self) -> bool {
        self.blocks.iter().all(|b| b.lengths().is_some())
    }

    pub fn validate(&self) -> Result<()> {
        let m = self.m();
        if m == 0 {
            return Err(Error::InvalidSpec("at least one block is required".into()));
        }
        for (i, b) in self.blocks.iter().enumerate() {
            for d in [b.d1, b.d2] {
                if d == Length::Finite(0) {
                    return Err(Error::InvalidSpec(format!("block {} has a zero length", i + 1)));
                }
            }
        }
        let glued = |len: Length, what: &str, i: usize| -> Result<()> {
            match len {
                Length::Infinite => Err(Error::InvalidSpec(format!("d({what},{}) must be finite", i + 1))),
                Length::Finite(d) if d < 2 => {
                    Err(Error::InvalidSpec(format!("glued length d({what},{}) must be at least 2", i + 1)))
                }
                _ => Ok(()),
            }
        };
        match self.cycle {
            CycleKind::Deleted => {
                if !self.lambda.is_empty() {
                    return Err(Error::InvalidSpec("deleted cycles take no f(z)".into()));
                }
                for i in 0..m.saturating_sub(1) {
                    glued(self.blocks[i].d2, "2", i)?;
                    glued(self.blocks[i + 1].d1, "1", i + 1)?;
                }
            }
            CycleKind::Block => {
                for (i, b) in self.blocks.iter().enumerate() {
                    glued(b.d1, "1", i)?;
                    glued(b.d2, "2", i)?;
                }
                let l = m / self.period();
                if self.lambda.len() != l {
                    return Err(Error::InvalidSpec(format!(
                        "f(z) needs {l} coefficients for {m} blocks of period {}, found {}",
                        self.period(),
                        self.lambda.len()
                    )));
                }
            }
        }
        if !self.connectors.is_empty() {
            if self.connectors.len() != m - 1 {
                return Err(Error::InvalidSpec(format!(
                    "expected {} connector coefficients, found {}",
                    m - 1,
                    self.connectors.len()
                )));
            }
            if self.connectors.iter().any(|c| c.is_multiple_of(self.ring.prime())) {
                return Err(Error::InvalidSpec("connector coefficients must be units mod p".into()));
            }
        }
        Ok(())
    }

    /// Whether `f(z)` is a power of an irreducible over `F_p`; `None` if not
    /// a block cycle or too expensive to decide.
    pub fn lambda_is_primary(&self) -> Option<bool> {
        if self.cycle != CycleKind::Block {
            return None;
        }
        let p = self.ring.prime().to_i64()?;
        let mut f: Vec<i64> =
            self.lambda.iter().map(|c| c.rem_floor(self.ring.prime()).to_i64()).collect::<Option<_>>()?;
        f.push(1);
        is_primary_mod_p(&f, p, 1_000_000)
    }

    fn connector(&self, i: usize) -> T {
        self.connectors.get(i).cloned().unwrap_or_else(|| -T::one())
    }

    /// Every infinite length replaced by `sentinel`.
    pub fn with_sentinel(&self, sentinel: u32) -> Self {
        let fix = |d: Length| if d.is_infinite() { Length::Finite(sentinel) } else { d };
        let mut s = self.clone();
        for b in &mut s.blocks {
            *b = BlockSpec::new(fix(b.d1), fix(b.d2));
        }
        s
    }

    /// Basis elements of sentinel order that stand for infinite order.
    pub fn infinite_rank(&self) -> usize {
        let p = self.ring.p();
        self.blocks
            .iter()
            .map(|b| {
                let one = usize::from(b.d1.is_infinite());
                let two = usize::from(b.d2.is_infinite());
                match self.ring.kind {
                    RingKind::Zcp => one + two * (p - 1),
                    RingKind::Pullback => one + two,
                }
            })
            .sum()
    }

    /// `S'`: lengths reduced by one, except at `(1,1)` and `(2,m)` for deleted cycles.
    pub fn reduced_blocks(&self) -> Vec<BlockSpec> {
        let m = self.m();
        let dec = |d: Length| match d {
            Length::Finite(d) => Length::Finite(d - 1),
            Length::Infinite => Length::Infinite,
        };
        self.blocks
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let exempt1 = self.cycle == CycleKind::Deleted && i == 0;
                let exempt2 = self.cycle == CycleKind::Deleted && i == m - 1;
                BlockSpec::new(if exempt1 { b.d1 } else { dec(b.d1) }, if exempt2 { b.d2 } else { dec(b.d2) })
            })
            .collect()
    }
}

/// A block generator: `a`, `p1^k a` or `p2^k a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    A,
    P1(u32),
    P2(u32),
}

/// A built presentation with its generator bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuiltModule<T> {
    pub presentation: Presentation<T>,
    /// `(block, generator)` for each column.
    pub generators: Vec<(usize, Gen)>,
    /// Connector `d_i` and its column, for each defined `i ∈ 0..=m`.
    pub connectors: Vec<(usize, usize)>,
}

impl<T: Scalar> BuiltModule<T> {
    pub fn index_of(&self, block: usize, g: Gen) -> Option<usize> {
        self.generators.iter().position(|&x| x == (block, g))
    }

    pub fn connector_column(&self, i: usize) -> Option<usize> {
        self.connectors.iter().find(|c| c.0 == i).map(|c| c.1)
    }
}

fn generator_name(block: usize, g: Gen, m: usize) -> String {
    let a = if m == 1 { "a".to_string() } else { format!("a{}", block + 1) };
    let pw = |j: u32, k: u32| if k == 1 { format!("p{j}") } else { format!("p{j}^{k}") };
    match g {
        Gen::A => a,
        Gen::P1(k) => format!("{}{a}", pw(1, k)),
        Gen::P2(k) => format!("{}{a}", pw(2, k)),
    }
}

/// Presentation of one finite basic building block.
pub fn build_block_presentation<T: Scalar>(ring: &RingModel<T>, block: BlockSpec) -> Result<Presentation<T>> {
    Ok(build_cycle_presentation(&ModuleSpec::single(ring.clone(), block))?.presentation)
}

pub fn build_cycle_presentation<T: Scalar>(spec: &ModuleSpec<T>) -> Result<BuiltModule<T>> {
    spec.validate()?;
    let p = spec.ring.prime().clone();
    let m = spec.m();
    let lens: Vec<(u32, u32)> =
        spec.blocks.iter().map(|b| b.lengths().ok_or(Error::UnresolvedInfiniteLength)).collect::<Result<_>>()?;

    let top = lens.iter().map(|&(a, b)| a.max(b)).max().unwrap_or(1);
    let mut generators: Vec<(usize, Gen)> = (0..m).map(|i| (i, Gen::A)).collect();
    for k in 1..top {
        for (i, &(d1, d2)) in lens.iter().enumerate() {
            if k < d1 {
                generators.push((i, Gen::P1(k)));
            }
            if k < d2 {
                generators.push((i, Gen::P2(k)));
            }
        }
    }
    let q = generators.len();
    let index: BTreeMap<(usize, Gen), usize> = generators.iter().enumerate().map(|(j, &g)| (g, j)).collect();

    let mut relations = Vec::new();
    for &(i, g) in &generators {
        let (d1, d2) = lens[i];
        let mut r = vec![T::zero(); q];
        r[index[&(i, g)]] = p.clone();
        for (h, c) in spec.ring.p_action(g, d1, d2) {
            let j = index[&(i, h)];
            r[j] = r[j].clone() - c;
        }
        relations.push(r);
    }

    let socle1 = |i: usize| index[&(i, Gen::P1(lens[i].0 - 1))];
    let socle2 = |i: usize| index[&(i, Gen::P2(lens[i].1 - 1))];
    for i in 0..m - 1 {
        let terms = vec![(socle1(i + 1), T::one()), (socle2(i), -spec.connector(i))];
        relations.push(gluing_relation(&terms, &p, q)?);
    }
    if spec.cycle == CycleKind::Block {
        let period = spec.period();
        let mut terms: Vec<(usize, T)> =
            spec.lambda.iter().enumerate().map(|(j, l)| (socle1(j * period), l.clone())).collect();
        terms.push((socle2(m - 1), T::one()));
        relations.push(gluing_relation(&terms, &p, q)?);
    }

    let mut connectors = Vec::new();
    if lens[0].0 >= 2 {
        connectors.push((0, socle1(0)));
    }
    for i in 0..m - 1 {
        connectors.push((i + 1, socle2(i)));
    }
    if lens[m - 1].1 >= 2 {
        connectors.push((m, socle2(m - 1)));
    }

    let names = generators.iter().map(|&(i, g)| generator_name(i, g, m)).collect();
    Ok(BuiltModule { presentation: Presentation::new(p, names, relations)?, generators, connectors })
}

/// `Σ c_k e_k = 0` among socle elements, scaled so the first unit
/// coefficient is one: `e_pivot - Σ ((-c_k) mod p) e_k`.
fn gluing_relation<T: Scalar>(terms: &[(usize, T)], p: &T, q: usize) -> Result<Vec<T>> {
    let terms: Vec<(usize, T)> =
        terms.iter().map(|(j, c)| (*j, c.rem_floor(p))).filter(|(_, c)| !c.is_zero()).collect();
    let (pivot, c) = terms.first().ok_or_else(|| Error::InvalidSpec("gluing relation vanishes mod p".into()))?;
    let inv = c.extended_gcd(p).x.rem_floor(p);
    let mut r = vec![T::zero(); q];
    r[*pivot] = T::one();
    for (j, c) in terms.iter().skip(1) {
        r[*j] = -(-(c.clone() * inv.clone())).rem_floor(p);
    }
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResolveOptions {
    /// First sentinel tried; `None` starts just above the finite lengths.
    pub start: Option<u32>,
    pub max_iterations: usize,
}

impl Default for ResolveOptions {
    fn default() -> Self {
        Self { start: None, max_iterations: 40 }
    }
}

/// Outcome of handling infinite lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolution<T> {
    /// Sentinel at which the torsion type stabilized; `None` if no run was needed.
    pub sentinel: Option<u32>,
    pub finite_spec: Option<ModuleSpec<T>>,
    /// Structure computed at the sentinel.
    pub structure: Option<Structure<T>>,
    /// Basis entries of sentinel order reclassified as infinite.
    pub reclassified: Vec<usize>,
    /// Names of free generators, when no computation was needed.
    pub free_basis: Vec<String>,
    pub group_type: GroupType,
}

pub fn resolve_infinite_lengths<T: Scalar>(spec: &ModuleSpec<T>, opts: ResolveOptions) -> Result<Resolution<T>> {
    resolve_infinite_lengths_with(spec, opts, &PipelineOptions::default())
}

pub fn resolve_infinite_lengths_with<T: Scalar>(
    spec: &ModuleSpec<T>,
    opts: ResolveOptions,
    pipeline: &PipelineOptions,
) -> Result<Resolution<T>> {
    spec.validate()?;
    let k = spec.infinite_rank();
    if spec.m() == 1 && spec.blocks[0].d1.is_infinite() && spec.blocks[0].d2.is_infinite() {
        let free_basis = match spec.ring.kind {
            RingKind::Zcp => (0..spec.ring.p() as u32)
                .map(|j| if j == 0 { generator_name(0, Gen::A, 1) } else { generator_name(0, Gen::P2(j), 1) })
                .collect(),
            RingKind::Pullback => vec![generator_name(0, Gen::A, 1), generator_name(0, Gen::P1(1), 1)],
        };
        let rank = free_basis.len();
        return Ok(Resolution {
            sentinel: None,
            finite_spec: None,
            structure: None,
            reclassified: Vec::new(),
            free_basis,
            group_type: GroupType::new(rank, BTreeMap::new()),
        });
    }
    if k == 0 {
        let s = compute_structure_with(&build_cycle_presentation(spec)?.presentation, pipeline)?;
        return Ok(Resolution {
            sentinel: None,
            finite_spec: Some(spec.clone()),
            group_type: s.group_type.clone(),
            structure: Some(s),
            reclassified: Vec::new(),
            free_basis: Vec::new(),
        });
    }

    let finite_max = spec.blocks.iter().flat_map(|b| [b.d1.finite(), b.d2.finite()]).flatten().max().unwrap_or(1);
    let first = opts.start.unwrap_or(finite_max + 2).max(2);
    let mut previous: Option<GroupType> = None;
    for sentinel in (first..).take(opts.max_iterations) {
        let finite = spec.with_sentinel(sentinel);
        let s = compute_structure_with(&build_cycle_presentation(&finite)?.presentation, pipeline)?;
        let mut idx: Vec<usize> = (0..s.basis.len()).collect();
        idx.sort_by(|&a, &b| s.basis[b].exponent.cmp(&s.basis[a].exponent).then(a.cmp(&b)));
        let separated = idx.len() >= k
            && idx[k..].iter().all(|&j| idx[..k].iter().all(|&t| s.basis[t].exponent > s.basis[j].exponent));
        let torsion = separated.then(|| GroupType::from_exponents(0, idx[k..].iter().map(|&j| s.basis[j].exponent)));
        if let (Some(t), Some(prev)) = (&torsion, &previous) {
            if t == prev {
                let mut reclassified = idx[..k].to_vec();
                reclassified.sort_unstable();
                return Ok(Resolution {
                    sentinel: Some(sentinel),
                    finite_spec: Some(finite),
                    group_type: t.with_free_rank(k),
                    free_basis: reclassified.iter().map(|&j| s.basis[j].display(&s.generators)).collect(),
                    reclassified,
                    structure: Some(s),
                });
            }
        }
        previous = torsion;
    }
    Err(Error::StabilizationFailed(opts.max_iterations))
}

/// p-heights of connectors in `t(M)` and the tally `ℓ_α = #{h = α - 1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectorHeights {
    /// `(i, h_p(d_i))` for each tallied connector.
    pub heights: Vec<(usize, u32)>,
    pub tally: BTreeMap<u32, usize>,
    pub exponent: u32,
}

impl ConnectorHeights {
    pub fn ell(&self, alpha: u32) -> usize {
        self.tally.get(&alpha).copied().unwrap_or(0)
    }

    /// `(0, ℓ_1 - ℓ_2, …, ℓ_{n-1} - ℓ_n, ℓ_n)`.
    pub fn correction(&self) -> Vec<i64> {
        let n = self.exponent;
        std::iter::once(0).chain((1..=n).map(|a| self.ell(a) as i64 - self.ell(a + 1) as i64)).collect()
    }
}

/// Connectors entering the tally: `d_1, …, d_{m-1}`, preceded by `d_0` for
/// block cycles.
pub fn tallied_connectors<T: Scalar>(spec: &ModuleSpec<T>) -> Vec<usize> {
    let m = spec.m();
    let start = if spec.cycle == CycleKind::Block { 0 } else { 1 };
    (start..m).collect()
}

fn unit_vector<T: Scalar>(q: usize, col: usize) -> Vec<T> {
    let mut e = vec![T::zero(); q];
    e[col] = T::one();
    e
}

fn column_of<T: Scalar>(built: &BuiltModule<T>, i: usize) -> Result<usize> {
    built.connector_column(i).ok_or_else(|| Error::Internal(format!("connector d_{i} is not defined")))
}

fn tally(heights: &[(usize, u32)], exponent: u32) -> ConnectorHeights {
    let mut t = BTreeMap::new();
    for &(_, h) in heights {
        *t.entry(h + 1).or_default() += 1;
    }
    ConnectorHeights { heights: heights.to_vec(), tally: t, exponent }
}

/// Heights of the chosen connectors in `M` itself.
pub fn connector_heights<T: Scalar>(
    built: &BuiltModule<T>,
    structure: &Structure<T>,
    which: &[usize],
) -> Result<ConnectorHeights> {
    let q = built.generators.len();
    let mut heights = Vec::new();
    for &i in which {
        match structure.height_of(&unit_vector(q, column_of(built, i)?))? {
            Height::Finite(h) => heights.push((i, h)),
            Height::Infinite => return Err(Error::Internal(format!("connector d_{i} is zero"))),
        }
    }
    Ok(tally(&heights, structure.group_type.exponent()))
}

/// Height of each connector in the quotient by the connectors before it.
pub fn sequential_connector_heights<T: Scalar>(
    built: &BuiltModule<T>,
    which: &[usize],
    opts: &PipelineOptions,
) -> Result<ConnectorHeights> {
    let pres = &built.presentation;
    let q = pres.num_generators();
    let mut relations = pres.relations().to_vec();
    let mut heights = Vec::new();
    let mut exponent = None;
    for &i in which {
        let e = unit_vector(q, column_of(built, i)?);
        let quotient = Presentation::new(pres.prime().clone(), pres.generators().to_vec(), relations.clone())?;
        let s = compute_structure_with(&quotient, opts)?;
        exponent.get_or_insert(s.group_type.exponent());
        match s.height_of(&e)? {
            Height::Finite(h) => heights.push((i, h)),
            Height::Infinite => return Err(Error::Internal(format!("connector d_{i} vanishes in the quotient"))),
        }
        relations.push(e);
    }
    let n = heights.iter().map(|&(_, h)| h + 1).max().unwrap_or(0).max(exponent.unwrap_or(0));
    Ok(tally(&heights, n))
}

/// Both sides of the type formula for a finite spec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaReport {
    /// `t(S'^{(i)})` for each reduced block.
    pub parts: Vec<GroupType>,
    /// Connector heights in `M`.
    pub heights: ConnectorHeights,
    /// `Σ t(S'^{(i)}) + (0, ℓ_1 - ℓ_2, …, ℓ_n)` with heights in `M`;
    /// `None` when some multiplicity comes out negative.
    pub formula: Option<GroupType>,
    /// Connector heights in successive quotients `M/⟨d_0, …, d_{i-1}⟩`.
    pub sequential_heights: ConnectorHeights,
    /// The same sum with the sequential heights.
    pub sequential: Option<GroupType>,
    /// Type of the glued presentation, computed directly.
    pub direct: GroupType,
}

impl FormulaReport {
    pub fn agrees(&self) -> bool {
        self.formula.as_ref() == Some(&self.direct)
    }

    pub fn sequential_agrees(&self) -> bool {
        self.sequential.as_ref() == Some(&self.direct)
    }
}

/// `Σ t_i + correction`; `None` if some multiplicity goes negative.
fn assemble(parts: &[GroupType], heights: &ConnectorHeights) -> Option<GroupType> {
    let mut total: Vec<i64> = heights.correction();
    for t in parts {
        let v = t.to_vector();
        if v.len() > total.len() {
            total.resize(v.len(), 0);
        }
        for (a, s) in total.iter_mut().zip(v) {
            *a += s as i64;
        }
    }
    let v: Option<Vec<usize>> = total.iter().map(|&s| usize::try_from(s).ok()).collect();
    Some(GroupType::from_vector(&v?))
}

pub fn type_via_formula<T: Scalar>(spec: &ModuleSpec<T>) -> Result<FormulaReport> {
    type_via_formula_with(spec, &PipelineOptions::default())
}

pub fn type_via_formula_with<T: Scalar>(spec: &ModuleSpec<T>, opts: &PipelineOptions) -> Result<FormulaReport> {
    if !spec.is_finite() {
        return Err(Error::UnresolvedInfiniteLength);
    }
    let built = build_cycle_presentation(spec)?;
    let structure = compute_structure_with(&built.presentation, opts)?;
    let which = tallied_connectors(spec);
    let heights = connector_heights(&built, &structure, &which)?;
    let sequential_heights = sequential_connector_heights(&built, &which, opts)?;
    let parts = spec
        .reduced_blocks()
        .into_iter()
        .map(|b| Ok(compute_structure_with(&build_block_presentation(&spec.ring, b)?, opts)?.group_type))
        .collect::<Result<Vec<_>>>()?;
    let formula = assemble(&parts, &heights);
    let sequential = assemble(&parts, &sequential_heights);
    Ok(FormulaReport { parts, heights, formula, sequential_heights, sequential, direct: structure.group_type })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticeBinomial;
    use crate::pbasis::{compute_structure, relations_to_binomials};
    use num_bigint::BigInt;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn sigma_small_primes() {
        assert_eq!(sigma_decomposition(&big(2)).unwrap(), Poly::from_i64s(&[-1]));
        assert_eq!(sigma_decomposition(&big(3)).unwrap(), Poly::from_i64s(&[2, 1]));
        for p in [2, 3, 5, 7, 11, 13] {
            let ring = RingModel::zcp(big(p)).unwrap();
            assert!(ring.verify_identity());
            assert!(ring.sigma().degree().unwrap_or(0) <= p as usize - 2);
        }
    }

    #[test]
    fn block_presentation_generators() {
        let ring = RingModel::zcp(big(3)).unwrap();
        let pres = build_block_presentation(&ring, BlockSpec::finite(3, 3)).unwrap();
        let mut names = pres.generators().to_vec();
        names.sort();
        assert_eq!(names, vec!["a", "p1^2a", "p1a", "p2^2a", "p2a"]);
    }

    #[test]
    fn pullback_unit_block() {
        let ring = RingModel::pullback(big(5)).unwrap();
        let pres = build_block_presentation(&ring, BlockSpec::finite(1, 1)).unwrap();
        assert_eq!(pres.relations(), &[vec![big(5)]]);
        assert_eq!(compute_structure(&pres).unwrap().group_type.to_vector(), vec![0, 1]);
    }

    #[test]
    fn pullback_pair_relations() {
        let ring = RingModel::pullback(big(3)).unwrap();
        let spec = ModuleSpec::deleted(ring, vec![BlockSpec::finite(3, 3); 2]).with_connectors(vec![big(-4)]);
        let built = build_cycle_presentation(&spec).unwrap();
        assert_eq!(
            built.presentation.generators(),
            &["a1", "a2", "p1a1", "p2a1", "p1a2", "p2a2", "p1^2a1", "p2^2a1", "p1^2a2", "p2^2a2"]
        );
        let bins: Vec<String> = relations_to_binomials(&built.presentation).iter().map(|b| b.to_string()).collect();
        for b in ["x1^3 - x3x4", "x3^3 - x7", "x4^3 - x8", "x7^3 - 1", "x9 - x8^2", "x10^3 - 1"] {
            assert!(bins.contains(&b.to_string()), "{b} missing from {bins:?}");
        }
        let s = compute_structure(&built.presentation).unwrap();
        assert_eq!(s.group_type.to_vector(), vec![0, 1, 1, 2]);
    }

    #[test]
    fn block_closing_relation() {
        let ring = RingModel::zcp(big(3)).unwrap();
        let spec = ModuleSpec::block(ring, vec![BlockSpec::finite(4, 4)], vec![big(-2)]);
        let built = build_cycle_presentation(&spec).unwrap();
        let x6 = built.index_of(0, Gen::P1(3)).unwrap();
        let x7 = built.index_of(0, Gen::P2(3)).unwrap();
        let mut v = vec![big(0); built.generators.len()];
        v[x6] = big(1);
        v[x7] = big(-2);
        assert_eq!(built.presentation.relations().last(), Some(&v));
        assert_eq!(x6 + 1, 6);
        assert_eq!(x7 + 1, 7);
        let last = LatticeBinomial::from_vector(v);
        assert_eq!(last.to_string(), "x6 - x7^2");
    }

    #[test]
    fn single_block_has_no_gluing() {
        let ring = RingModel::zcp(big(3)).unwrap();
        let built = build_cycle_presentation(&ModuleSpec::single(ring, BlockSpec::finite(2, 3))).unwrap();
        assert_eq!(built.presentation.relations().len(), built.generators.len());
        assert!(tallied_connectors(&ModuleSpec::single(RingModel::zcp(big(3)).unwrap(), BlockSpec::finite(2, 3)))
            .is_empty());
    }

    #[test]
    fn spec_validation() {
        let ring = RingModel::pullback(big(3)).unwrap();
        let bad = ModuleSpec::deleted(ring.clone(), vec![BlockSpec::new(Length::Finite(2), Length::Infinite); 2]);
        assert!(bad.validate().is_err());
        let short = ModuleSpec::deleted(ring.clone(), vec![BlockSpec::finite(2, 1), BlockSpec::finite(2, 2)]);
        assert!(short.validate().is_err());
        let lam = ModuleSpec::block(ring.clone(), vec![BlockSpec::finite(2, 2); 2], vec![big(1)]);
        assert_eq!(lam.period(), 1);
        assert!(lam.validate().is_err());
        let lam = ModuleSpec::block(ring.clone(), vec![BlockSpec::finite(2, 2); 2], vec![big(1), big(1)]);
        assert!(lam.validate().is_ok());
        // z^2 + z + 1 = (z - 1)^2 over F_3; z^2 - 1 splits
        assert_eq!(lam.lambda_is_primary(), Some(true));
        let lam = ModuleSpec::block(ring, vec![BlockSpec::finite(2, 2); 2], vec![big(-1), big(0)]);
        assert_eq!(lam.lambda_is_primary(), Some(false));
    }

    #[test]
    fn both_infinite_blocks() {
        let inf = BlockSpec::new(Length::Infinite, Length::Infinite);
        let r = resolve_infinite_lengths(&ModuleSpec::single(RingModel::zcp(big(5)).unwrap(), inf), Default::default())
            .unwrap();
        assert_eq!(r.group_type.to_vector(), vec![5]);
        let r = resolve_infinite_lengths(
            &ModuleSpec::single(RingModel::pullback(big(3)).unwrap(), inf),
            Default::default(),
        )
        .unwrap();
        assert_eq!(r.group_type.to_vector(), vec![2]);
        assert_eq!(r.free_basis, vec!["a", "p1a"]);
    }
}
