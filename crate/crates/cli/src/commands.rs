//! One function per subcommand. Each takes the raw input bytes and returns
//! the report text together with the process exit code.

use std::collections::BTreeMap;

use abst_core::dedekind::{
    build_cycle_presentation, resolve_infinite_lengths_with, tallied_connectors, type_via_formula_with,
    ConnectorHeights, ModuleSpec, ResolveOptions,
};
use abst_core::groebner::{
    contains_binomial, element_order, is_groebner_basis, is_reduced_basis, reduced_basis, standard_monomial_count,
    Engine, GroebnerBasis, DEFAULT_COUNT_CAP,
};
use abst_core::lattice::{LatticeBinomial, TermOrder};
use abst_core::pbasis::{
    check_shape, compute_structure_with, extract_pbasis, relations_to_binomials, ulm_type, GroupType, PipelineOptions,
    Presentation,
};
use abst_core::snf::{type_from_relations, MixedType};
use abst_core::BigInt;
use serde::Serialize;
use serde_json::Value;

use crate::format::{ints, parse_presentation, parse_spec, PresentationFile, SpecFile};
use crate::report::{
    decomposition, gb_entries, order_names, ConnectorEntry, GbReport, Sidecar, SnfReport, StructureReport,
    TypeFormulaReport, VerifyChecks, VerifyReport,
};
use crate::{digest, CliError, EXIT_MISMATCH, EXIT_OK};

/// Standard monomials are counted only up to this many.
pub const CONSERVATION_CAP: u64 = 100_000;

#[derive(Debug, Clone, Default)]
pub struct Flags {
    /// Include the Gröbner basis in the report.
    pub gb: bool,
    /// Forced variable order, 1-based, smallest variable first.
    pub perm: Option<Vec<usize>>,
    /// Maximum `k` considered for generator orders `p^k`.
    pub cap: Option<u32>,
    pub engine: Engine,
    /// Corrupt the Gröbner basis before `verify` checks it.
    pub inject_fault: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub report: String,
    /// Bookkeeping written next to the main output, if any.
    pub sidecar: Option<String>,
    pub exit_code: i32,
}

impl Outcome {
    fn ok(report: String) -> Self {
        Self { report, sidecar: None, exit_code: EXIT_OK }
    }
}

/// Indented JSON with arrays of scalars kept on one line.
pub fn to_json<S: Serialize>(value: &S) -> String {
    let value = serde_json::to_value(value).expect("reports serialize");
    let mut out = String::new();
    write_value(&value, 0, &mut out);
    out.push('\n');
    out
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            let parts: Vec<String> = items.iter().map(Value::to_string).collect();
            out.push_str(&format!("[{}]", parts.join(", ")));
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&format!("{}{}: ", pad(indent + 1), Value::String(k.clone())));
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

fn text(input: &[u8]) -> Result<&str, CliError> {
    std::str::from_utf8(input).map_err(|e| CliError::Parse(format!("input is not UTF-8: {e}")))
}

fn forced_order(perm: &[usize], q: usize) -> Result<TermOrder, CliError> {
    if perm.len() != q || perm.iter().any(|&j| j == 0 || j > q) {
        return Err(CliError::Semantic(format!("--perm must list each of 1..={q} exactly once")));
    }
    let asc: Vec<usize> = perm.iter().map(|j| j - 1).collect();
    TermOrder::from_ascending(&asc).map_err(|e| CliError::Semantic(format!("--perm: {e}")))
}

fn pipeline_options(flags: &Flags, q: usize) -> Result<PipelineOptions, CliError> {
    let mut opts = PipelineOptions::default();
    opts.groebner.engine = flags.engine;
    if let Some(cap) = flags.cap {
        opts.order_cap = cap;
    }
    if let Some(perm) = &flags.perm {
        opts.forced_order = Some(forced_order(perm, q)?);
    }
    Ok(opts)
}

fn snf_of(pres: &Presentation<BigInt>) -> Result<MixedType<BigInt>, CliError> {
    Ok(type_from_relations(pres.relations(), pres.num_generators())?)
}

fn require_finite_p_group(pres: &Presentation<BigInt>, snf: &MixedType<BigInt>) -> Result<(), CliError> {
    if snf.free_rank > 0 {
        return Err(CliError::Semantic(format!(
            "the group is not finite: free rank {} (use `snf` for groups with a free part)",
            snf.free_rank
        )));
    }
    if !snf.is_p_group(pres.prime()) {
        let others: Vec<String> = snf.primary.keys().filter(|k| *k != pres.prime()).map(|k| k.to_string()).collect();
        return Err(CliError::Semantic(format!(
            "the group is not a {}-group: torsion at {}",
            pres.prime(),
            others.join(", ")
        )));
    }
    Ok(())
}

pub fn run_pbasis(input: &[u8], flags: &Flags) -> Result<Outcome, CliError> {
    let pres = parse_presentation(text(input)?)?;
    let opts = pipeline_options(flags, pres.num_generators())?;
    let (structure, snf) = std::thread::scope(|s| {
        let snf = s.spawn(|| snf_of(&pres));
        let structure = compute_structure_with(&pres, &opts);
        (structure, snf.join().expect("snf thread"))
    });
    let snf = snf?;
    let structure = match structure {
        Ok(s) => s,
        Err(e) => {
            require_finite_p_group(&pres, &snf)?;
            return Err(e.into());
        }
    };
    let snf_type = snf.for_prime(pres.prime());
    let report = StructureReport::new(digest(input), &structure, flags.gb, &snf.divisors, &snf_type);
    let exit_code = if report.agree { EXIT_OK } else { EXIT_MISMATCH };
    Ok(Outcome { exit_code, ..Outcome::ok(to_json(&report)) })
}

pub fn run_snf(input: &[u8]) -> Result<Outcome, CliError> {
    let pres = parse_presentation(text(input)?)?;
    let snf = snf_of(&pres)?;
    let t = snf.for_prime(pres.prime());
    let primary: BTreeMap<String, Vec<usize>> =
        snf.primary.keys().map(|p| (p.to_string(), snf.for_prime(p).torsion_part().to_vector())).collect();
    let mut decomp = decomposition(&t, pres.prime());
    for (p, parts) in &snf.primary {
        if p != pres.prime() {
            let d = decomposition(&GroupType::new(0, parts.clone()), p);
            decomp = if decomp == "0" { d } else { format!("{decomp} + {d}") };
        }
    }
    let report = SnfReport {
        command: "snf",
        input_sha256: digest(input),
        prime: pres.prime().into(),
        divisors: ints(&snf.divisors),
        free_rank: snf.free_rank,
        p_group: snf.is_p_group(pres.prime()),
        group_type: t.to_vector(),
        primary,
        decomposition: decomp,
    };
    Ok(Outcome::ok(to_json(&report)))
}

pub fn run_gb(input: &[u8], flags: &Flags) -> Result<Outcome, CliError> {
    let pres = parse_presentation(text(input)?)?;
    let q = pres.num_generators();
    let order = match &flags.perm {
        Some(perm) => forced_order(perm, q)?,
        None => TermOrder::identity(q),
    };
    let mut opts = PipelineOptions::default().groebner;
    opts.engine = flags.engine;
    let gb = reduced_basis(&relations_to_binomials(&pres), &order, opts)?;
    let report = GbReport {
        command: "gb",
        input_sha256: digest(input),
        variable_order: order_names(&order, pres.generators()),
        engine: format!("{:?}", flags.engine).to_lowercase(),
        groebner_basis: gb_entries(&gb),
        reduced: is_reduced_basis(&gb),
        standard_monomials: standard_monomial_count(&gb, DEFAULT_COUNT_CAP).ok(),
    };
    Ok(Outcome::ok(to_json(&report)))
}

/// `u^e - m` becomes `u^{pe} - m^p`: still oriented and reduced, but a
/// basis of a strictly smaller lattice.
fn corrupt(gb: &GroebnerBasis<BigInt>, p: &BigInt) -> Result<GroebnerBasis<BigInt>, CliError> {
    let mut elements = gb.elements().to_vec();
    if let Some(g) = elements.first_mut() {
        *g = LatticeBinomial::from_vector(g.vector().iter().map(|e| e * p).collect());
    }
    Ok(GroebnerBasis::from_parts(elements, gb.order().clone(), gb.is_reduced())?)
}

/// Re-derives the type from `gb` alone.
fn type_from_gb(gb: &GroebnerBasis<BigInt>, p: &BigInt, cap: u32) -> Result<(GroupType, Vec<BigInt>), CliError> {
    let orders = (0..gb.num_variables()).map(|j| element_order(j, gb, p, cap)).collect::<Result<Vec<_>, _>>()?;
    check_shape(gb, p).map_err(|v| CliError::Semantic(v.to_string()))?;
    let basis = extract_pbasis(gb, &orders, p)?;
    Ok((ulm_type(&basis), basis.into_iter().map(|b| b.order).collect()))
}

pub fn run_verify(input: &[u8], flags: &Flags) -> Result<Outcome, CliError> {
    let pres = parse_presentation(text(input)?)?;
    let opts = pipeline_options(flags, pres.num_generators())?;
    let (structure, snf) = std::thread::scope(|s| {
        let snf = s.spawn(|| snf_of(&pres));
        let structure = compute_structure_with(&pres, &opts);
        (structure, snf.join().expect("snf thread"))
    });
    let snf = snf?;
    require_finite_p_group(&pres, &snf)?;
    let snf_type = snf.for_prime(pres.prime());
    let p = pres.prime();
    let order_product: BigInt = snf.divisors.iter().product();

    let mut checks = VerifyChecks {
        gb_is_groebner: false,
        gb_is_reduced: false,
        relations_in_ideal: false,
        conservation: None,
        basis_orders_match: false,
        type_equal: false,
    };
    let mut pipeline_type = None;
    let mut error = None;
    match structure {
        Err(e) => error = Some(e.to_string()),
        Ok(s) => {
            let gb = if flags.inject_fault { corrupt(&s.gb, p)? } else { s.gb.clone() };
            checks.gb_is_groebner = is_groebner_basis(&gb).unwrap_or(false);
            checks.gb_is_reduced = is_reduced_basis(&gb);
            checks.relations_in_ideal =
                relations_to_binomials(&pres).iter().all(|r| contains_binomial(r, &gb).unwrap_or(false));
            checks.conservation =
                standard_monomial_count(&gb, CONSERVATION_CAP).ok().map(|n| BigInt::from(n) == order_product);
            match type_from_gb(&gb, p, opts.order_cap) {
                Ok((t, orders)) => {
                    checks.basis_orders_match = orders.iter().product::<BigInt>() == order_product;
                    checks.type_equal = t == snf_type;
                    pipeline_type = Some(t.to_vector());
                }
                Err(e) => error = Some(e.to_string()),
            }
        }
    }
    let agree = checks.gb_is_groebner
        && checks.gb_is_reduced
        && checks.relations_in_ideal
        && checks.conservation != Some(false)
        && checks.basis_orders_match
        && checks.type_equal;
    let report = VerifyReport {
        command: "verify",
        input_sha256: digest(input),
        pipeline_type,
        snf_type: snf_type.to_vector(),
        snf_divisors: ints(&snf.divisors),
        checks,
        error,
        agree,
    };
    Ok(Outcome { exit_code: if agree { EXIT_OK } else { EXIT_MISMATCH }, ..Outcome::ok(to_json(&report)) })
}

/// Generator names of the connector columns of the built presentation.
fn connector_entries(spec: &ModuleSpec<BigInt>, h: &ConnectorHeights) -> Result<Vec<ConnectorEntry>, CliError> {
    let built = build_cycle_presentation(spec)?;
    h.heights
        .iter()
        .map(|&(i, height)| {
            let col = built
                .connector_column(i)
                .ok_or_else(|| CliError::Semantic(format!("connector d_{i} has no generator")))?;
            Ok(ConnectorEntry {
                connector: format!("d{i}"),
                generator: built.presentation.generators()[col].clone(),
                height,
            })
        })
        .collect()
}

pub fn run_type_formula(input: &[u8], flags: &Flags) -> Result<Outcome, CliError> {
    let spec = parse_spec(text(input)?)?;
    let mut opts = PipelineOptions::default();
    opts.groebner.engine = flags.engine;
    if let Some(cap) = flags.cap {
        opts.order_cap = cap;
    }
    let r = type_via_formula_with(&spec, &opts)?;
    debug_assert_eq!(r.heights.heights.len(), tallied_connectors(&spec).len());
    let report = TypeFormulaReport {
        command: "type-formula",
        input_sha256: digest(input),
        spec: SpecFile::from_spec(&spec),
        parts: r.parts.iter().map(GroupType::to_vector).collect(),
        heights: connector_entries(&spec, &r.heights)?,
        correction: r.heights.correction(),
        formula: r.formula.as_ref().map(GroupType::to_vector),
        sequential_heights: connector_entries(&spec, &r.sequential_heights)?,
        sequential: r.sequential.as_ref().map(GroupType::to_vector),
        direct: r.direct.to_vector(),
        agree: r.agrees(),
        sequential_agree: r.sequential_agrees(),
    };
    let exit_code = if report.agree { EXIT_OK } else { EXIT_MISMATCH };
    Ok(Outcome { exit_code, ..Outcome::ok(to_json(&report)) })
}

/// The presentation of the module; when the spec has infinite lengths, the
/// presentation at the stabilized sentinel plus a sidecar recording which
/// basis elements stand for free summands.
pub fn run_build(input: &[u8], flags: &Flags) -> Result<Outcome, CliError> {
    let spec = parse_spec(text(input)?)?;
    if spec.is_finite() {
        let built = build_cycle_presentation(&spec)?;
        let file = PresentationFile::from_presentation(&built.presentation, None);
        return Ok(Outcome::ok(to_json(&file)));
    }
    let mut opts = PipelineOptions::default();
    opts.groebner.engine = flags.engine;
    if let Some(cap) = flags.cap {
        opts.order_cap = cap;
    }
    let r = resolve_infinite_lengths_with(&spec, ResolveOptions::default(), &opts)?;
    let pres = match &r.finite_spec {
        Some(finite) => build_cycle_presentation(finite)?.presentation,
        // both lengths infinite: a free module, no relations
        None => Presentation::new(spec.ring.prime().clone(), r.free_basis.clone(), Vec::new())?,
    };
    let sidecar = Sidecar {
        input_sha256: digest(input),
        spec: SpecFile::from_spec(&spec),
        sentinel: r.sentinel,
        resolved_spec: r.finite_spec.as_ref().map(SpecFile::from_spec),
        free_basis: r.free_basis.clone(),
        group_type: r.group_type.to_vector(),
        torsion_type: r.group_type.torsion_part().to_vector(),
        decomposition: decomposition(&r.group_type, spec.ring.prime()),
    };
    Ok(Outcome {
        report: to_json(&PresentationFile::from_presentation(&pres, None)),
        sidecar: Some(to_json(&sidecar)),
        exit_code: EXIT_OK,
    })
}
