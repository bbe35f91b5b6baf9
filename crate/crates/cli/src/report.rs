//! Serializable reports.

use std::collections::BTreeMap;

use abst_core::groebner::GroebnerBasis;
use abst_core::lattice::TermOrder;
use abst_core::pbasis::{GroupType, SearchMethod, Structure};
use abst_core::BigInt;
use serde::Serialize;

use crate::format::{ints, Int, SpecFile};

#[derive(Debug, Clone, Serialize)]
pub struct GbEntry {
    pub lead: Vec<Int>,
    pub tail: Vec<Int>,
    pub text: String,
}

pub fn gb_entries(gb: &GroebnerBasis<BigInt>) -> Vec<GbEntry> {
    gb.elements()
        .iter()
        .map(|g| GbEntry {
            lead: ints(g.positive().entries()),
            tail: ints(g.negative().entries()),
            text: g.to_string(),
        })
        .collect()
}

/// Generator names from the smallest variable to the largest.
pub fn order_names(order: &TermOrder, names: &[String]) -> Vec<String> {
    order.ascending().into_iter().map(|j| names[j].clone()).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct BasisEntry {
    pub element: String,
    pub vector: Vec<Int>,
    pub order: Int,
}

#[derive(Debug, Clone, Serialize)]
pub struct StructureReport {
    pub command: &'static str,
    pub input_sha256: String,
    pub prime: Int,
    pub generators: Vec<String>,
    pub variable_order: Vec<String>,
    pub search: String,
    pub generator_orders: Vec<Int>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub groebner_basis: Option<Vec<GbEntry>>,
    pub basis: Vec<BasisEntry>,
    #[serde(rename = "type")]
    pub group_type: Vec<usize>,
    pub decomposition: String,
    pub snf_divisors: Vec<Int>,
    pub snf_free_rank: usize,
    pub agree: bool,
}

impl StructureReport {
    pub fn new(
        digest: String,
        s: &Structure<BigInt>,
        with_gb: bool,
        snf_divisors: &[BigInt],
        snf_type: &GroupType,
    ) -> Self {
        let q = s.generators.len();
        Self {
            command: "pbasis",
            input_sha256: digest,
            prime: Int::from(&s.prime),
            generators: s.generators.clone(),
            variable_order: order_names(&s.order, &s.generators),
            search: search_text(&s.search),
            generator_orders: ints(&s.generator_orders),
            groebner_basis: with_gb.then(|| gb_entries(&s.gb)),
            basis: s
                .basis
                .iter()
                .map(|b| BasisEntry {
                    element: b.display(&s.generators),
                    vector: ints(&b.as_vector(q)),
                    order: Int::from(&b.order),
                })
                .collect(),
            group_type: s.group_type.to_vector(),
            decomposition: decomposition(&s.group_type, &s.prime),
            snf_divisors: ints(snf_divisors),
            snf_free_rank: snf_type.free_rank(),
            agree: s.group_type == *snf_type,
        }
    }
}

pub fn search_text(m: &SearchMethod) -> String {
    match m {
        SearchMethod::Forced => "forced".into(),
        SearchMethod::Sorted { swaps } => format!("sorted, {swaps} swaps"),
        SearchMethod::Quotient { note } => format!("quotient-greedy ({note})"),
    }
}

/// `Z^r + Z_{p^k}^s + …`, or `0` for the trivial group.
pub fn decomposition(t: &GroupType, p: &BigInt) -> String {
    let mut parts = Vec::new();
    match t.free_rank() {
        0 => {}
        1 => parts.push("Z".to_string()),
        r => parts.push(format!("Z^{r}")),
    }
    for (&k, &s) in t.ulm() {
        let n = num_traits::pow(p.clone(), k as usize);
        parts.push(if s == 1 { format!("Z_{n}") } else { format!("Z_{n}^{s}") });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SnfReport {
    pub command: &'static str,
    pub input_sha256: String,
    pub prime: Int,
    pub divisors: Vec<Int>,
    pub free_rank: usize,
    pub p_group: bool,
    /// Type of the free part plus the `p`-primary part.
    #[serde(rename = "type")]
    pub group_type: Vec<usize>,
    /// Primary components for every prime dividing the torsion.
    pub primary: BTreeMap<String, Vec<usize>>,
    pub decomposition: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct GbReport {
    pub command: &'static str,
    pub input_sha256: String,
    pub variable_order: Vec<String>,
    pub engine: String,
    pub groebner_basis: Vec<GbEntry>,
    pub reduced: bool,
    pub standard_monomials: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyChecks {
    pub gb_is_groebner: bool,
    pub gb_is_reduced: bool,
    pub relations_in_ideal: bool,
    /// Standard monomial count equals the product of the divisors; `None`
    /// when the count was not evaluated.
    pub conservation: Option<bool>,
    pub basis_orders_match: bool,
    pub type_equal: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub command: &'static str,
    pub input_sha256: String,
    pub pipeline_type: Option<Vec<usize>>,
    pub snf_type: Vec<usize>,
    pub snf_divisors: Vec<Int>,
    pub checks: VerifyChecks,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub agree: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConnectorEntry {
    pub connector: String,
    pub generator: String,
    pub height: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct TypeFormulaReport {
    pub command: &'static str,
    pub input_sha256: String,
    pub spec: SpecFile,
    pub parts: Vec<Vec<usize>>,
    pub heights: Vec<ConnectorEntry>,
    pub correction: Vec<i64>,
    /// `None` when the formula produces a negative multiplicity.
    pub formula: Option<Vec<usize>>,
    pub sequential_heights: Vec<ConnectorEntry>,
    pub sequential: Option<Vec<usize>>,
    pub direct: Vec<usize>,
    pub agree: bool,
    pub sequential_agree: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Sidecar {
    pub input_sha256: String,
    pub spec: SpecFile,
    /// Length substituted for every infinite length; `None` when no
    /// computation was needed.
    pub sentinel: Option<u32>,
    pub resolved_spec: Option<SpecFile>,
    /// Basis elements of the resolved presentation reclassified as free.
    pub free_basis: Vec<String>,
    #[serde(rename = "type")]
    pub group_type: Vec<usize>,
    pub torsion_type: Vec<usize>,
    pub decomposition: String,
}
