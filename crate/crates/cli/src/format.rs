//! JSON encodings of presentations and module specs.

use abst_core::dedekind::{BlockSpec, CycleKind, Length, ModuleSpec, RingKind, RingModel};
use abst_core::pbasis::Presentation;
use abst_core::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

/// An integer that is written as a JSON number when it fits in `i64` and as
/// a decimal string otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Int {
    Small(i64),
    Big(String),
}

impl Int {
    pub fn to_bigint(&self) -> Result<BigInt, CliError> {
        match self {
            Int::Small(n) => Ok(BigInt::from(*n)),
            Int::Big(s) => s.trim().parse().map_err(|_| CliError::Parse(format!("not an integer: {s:?}"))),
        }
    }
}

impl From<&BigInt> for Int {
    fn from(n: &BigInt) -> Self {
        n.to_i64().map_or_else(|| Int::Big(n.to_string()), Int::Small)
    }
}

pub fn ints(v: &[BigInt]) -> Vec<Int> {
    v.iter().map(Int::from).collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    pub prime: Int,
    pub generators: Vec<String>,
    pub relations: Vec<Vec<Int>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Value>,
}

impl PresentationFile {
    pub fn from_presentation(pres: &Presentation<BigInt>, names: Option<Value>) -> Self {
        Self {
            prime: Int::from(pres.prime()),
            generators: pres.generators().to_vec(),
            relations: pres.relations().iter().map(|r| ints(r)).collect(),
            names,
        }
    }

    pub fn to_presentation(&self) -> Result<Presentation<BigInt>, CliError> {
        let q = self.generators.len();
        let mut relations = Vec::with_capacity(self.relations.len());
        for (i, row) in self.relations.iter().enumerate() {
            if row.len() != q {
                return Err(CliError::Parse(format!(
                    "relation {} has {} entries but there are {q} generators",
                    i + 1,
                    row.len()
                )));
            }
            relations.push(row.iter().map(Int::to_bigint).collect::<Result<Vec<_>, _>>()?);
        }
        Ok(Presentation::new(self.prime.to_bigint()?, self.generators.clone(), relations)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RingKindFile {
    Zcp,
    Pullback,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingFile {
    pub kind: RingKindFile,
    pub p: Int,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CycleFile {
    Deleted,
    Block,
}

/// A length: a positive integer or the string `"inf"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LengthFile {
    Finite(u32),
    Word(String),
}

impl LengthFile {
    fn to_length(&self) -> Result<Length, CliError> {
        match self {
            LengthFile::Finite(d) => Ok(Length::Finite(*d)),
            LengthFile::Word(w) if matches!(w.as_str(), "inf" | "infinity" | "∞") => Ok(Length::Infinite),
            LengthFile::Word(w) => Err(CliError::Parse(format!("length must be an integer or \"inf\", got {w:?}"))),
        }
    }

    fn from_length(l: Length) -> Self {
        match l {
            Length::Finite(d) => LengthFile::Finite(d),
            Length::Infinite => LengthFile::Word("inf".into()),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockFile {
    pub d1: LengthFile,
    pub d2: LengthFile,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub ring: RingFile,
    pub cycle: CycleFile,
    pub blocks: Vec<BlockFile>,
    /// Closing-relation coefficients, block cycles only.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub f: Vec<Int>,
    /// Unit coefficients `c_i` of the gluing relations; all -1 when absent.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub connectors: Vec<Int>,
}

impl SpecFile {
    pub fn to_spec(&self) -> Result<ModuleSpec<BigInt>, CliError> {
        let p = self.ring.p.to_bigint()?;
        let ring = match self.ring.kind {
            RingKindFile::Zcp => RingModel::zcp(p)?,
            RingKindFile::Pullback => RingModel::pullback(p)?,
        };
        let blocks = self
            .blocks
            .iter()
            .map(|b| Ok(BlockSpec::new(b.d1.to_length()?, b.d2.to_length()?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        let lambda = self.f.iter().map(Int::to_bigint).collect::<Result<Vec<_>, _>>()?;
        let connectors = self.connectors.iter().map(Int::to_bigint).collect::<Result<Vec<_>, _>>()?;
        let spec = match self.cycle {
            CycleFile::Deleted => {
                if !lambda.is_empty() {
                    return Err(CliError::Parse("\"f\" is only meaningful for block cycles".into()));
                }
                ModuleSpec::deleted(ring, blocks)
            }
            CycleFile::Block => ModuleSpec::block(ring, blocks, lambda),
        };
        let spec = if connectors.is_empty() { spec } else { spec.with_connectors(connectors) };
        spec.validate()?;
        Ok(spec)
    }

    pub fn from_spec(spec: &ModuleSpec<BigInt>) -> Self {
        Self {
            ring: RingFile {
                kind: match spec.ring.kind() {
                    RingKind::Zcp => RingKindFile::Zcp,
                    RingKind::Pullback => RingKindFile::Pullback,
                },
                p: Int::from(spec.ring.prime()),
            },
            cycle: match spec.cycle {
                CycleKind::Deleted => CycleFile::Deleted,
                CycleKind::Block => CycleFile::Block,
            },
            blocks: spec
                .blocks
                .iter()
                .map(|b| BlockFile { d1: LengthFile::from_length(b.d1), d2: LengthFile::from_length(b.d2) })
                .collect(),
            f: ints(&spec.lambda),
            connectors: ints(&spec.connectors),
        }
    }
}

pub fn parse_presentation(text: &str) -> Result<Presentation<BigInt>, CliError> {
    let file: PresentationFile = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    file.to_presentation()
}

pub fn parse_spec(text: &str) -> Result<ModuleSpec<BigInt>, CliError> {
    let file: SpecFile = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    file.to_spec()
}
