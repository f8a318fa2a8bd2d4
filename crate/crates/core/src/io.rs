//! JSON file formats.
//!
//! Sets are lists of 1-based elements in increasing order and rationals are
//! canonical strings (`"3"`, `"-7/2"`); integers are also accepted on input.
//!
//! ```text
//! instance      {"m": 3, "elements": [{"set": [1, 2], "weight": "3/2"}, ...]}
//! table         {"m": 3, "values": [{"set": [], "value": "0"}, ...]}      all 2^m sets
//! coefficients  {"m": 3, "coefficients": [{"set": [1], "value": "2"}, ...]}  all 2^m − 1
//! log           {"m": 3, "entries": [{"set": [1], "value": "2"}, ...]}
//! oracle        {"backend": "fstar", "m": 4, "k": 1, "N": "25"}
//!               {"backend": "instance", ...instance}  {"backend": "table", ...table}
//! ```
//!
//! A plain instance or table file is accepted wherever an oracle is expected.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::adversarial::FStarParams;
use crate::completion::QueryLog;
use crate::error::{Error, Result};
use crate::function::DenseSetFunction;
use crate::instance::CoverageInstance;
use crate::oracle::{CountingOracle, PartialTable};
use crate::rational::{format_rational, parse_rational, serde_str};
use crate::subset::{check_ground, SubsetMask};
use crate::wtransform::WCoefficients;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetValue {
    pub set: Vec<usize>,
    #[serde(with = "serde_str")]
    pub value: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub set: Vec<usize>,
    #[serde(with = "serde_str")]
    pub weight: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceJson {
    pub m: usize,
    pub elements: Vec<ElementJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableJson {
    pub m: usize,
    pub values: Vec<SetValue>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientsJson {
    pub m: usize,
    pub coefficients: Vec<SetValue>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LogJson {
    pub m: usize,
    #[serde(alias = "values")]
    pub entries: Vec<SetValue>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "backend", rename_all = "lowercase", deny_unknown_fields)]
pub enum OracleSpec {
    Fstar {
        m: usize,
        k: usize,
        /// Defaults to `(2^m)! + 1` when absent.
        #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
        n: Option<String>,
    },
    Instance {
        m: usize,
        elements: Vec<ElementJson>,
    },
    Table {
        m: usize,
        values: Vec<SetValue>,
    },
}

pub fn mask_of(set: &[usize], m: usize) -> Result<SubsetMask> {
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Malformed(format!("repeated element in set {set:?}")));
    }
    SubsetMask::from_elements(set, m)
}

pub fn set_value(t: SubsetMask, v: &BigRational) -> SetValue {
    SetValue {
        set: t.elements(),
        value: v.clone(),
    }
}

pub fn instance_to_json(inst: &CoverageInstance) -> InstanceJson {
    InstanceJson {
        m: inst.m(),
        elements: inst
            .elements()
            .iter()
            .map(|e| ElementJson {
                set: e.membership.elements(),
                weight: e.weight.clone(),
            })
            .collect(),
    }
}

pub fn instance_from_json(j: &InstanceJson) -> Result<CoverageInstance> {
    let mut elements = Vec::with_capacity(j.elements.len());
    for e in &j.elements {
        elements.push((mask_of(&e.set, j.m)?, e.weight.clone()));
    }
    CoverageInstance::new(j.m, elements)
}

pub fn table_to_json(f: &DenseSetFunction) -> TableJson {
    let m = f.m();
    TableJson {
        m,
        values: f
            .values()
            .iter()
            .enumerate()
            .map(|(b, v)| set_value(SubsetMask::new(b as u64, m).expect("index fits m"), v))
            .collect(),
    }
}

fn collect_pairs(m: usize, items: &[SetValue]) -> Result<Vec<(SubsetMask, BigRational)>> {
    check_ground(m)?;
    items
        .iter()
        .map(|sv| Ok((mask_of(&sv.set, m)?, sv.value.clone())))
        .collect()
}

/// Requires every one of the `2^m` sets exactly once.
pub fn table_from_json(j: &TableJson, max_m: usize) -> Result<DenseSetFunction> {
    crate::subset::check_dense(j.m, max_m)?;
    let mut seen = vec![false; 1 << j.m];
    let mut f = DenseSetFunction::zeros(j.m)?;
    for (t, v) in collect_pairs(j.m, &j.values)? {
        if std::mem::replace(&mut seen[t.index()], true) {
            return Err(Error::DuplicateEntry(t));
        }
        f.set(t, v)?;
    }
    if let Some(b) = seen.iter().position(|s| !s) {
        return Err(Error::MissingEntry(SubsetMask::new(b as u64, j.m)?));
    }
    Ok(f)
}

pub fn coefficients_to_json(w: &WCoefficients) -> CoefficientsJson {
    CoefficientsJson {
        m: w.m(),
        coefficients: w.iter().map(|(s, v)| set_value(s, v)).collect(),
    }
}

/// Sets not listed get coefficient zero; the empty set is rejected.
pub fn coefficients_from_json(j: &CoefficientsJson, max_m: usize) -> Result<WCoefficients> {
    crate::subset::check_dense(j.m, max_m)?;
    let mut w = WCoefficients::zeros(j.m)?;
    let mut seen = std::collections::BTreeSet::new();
    for (s, v) in collect_pairs(j.m, &j.coefficients)? {
        if !seen.insert(s) {
            return Err(Error::DuplicateEntry(s));
        }
        w.set(s, v)?;
    }
    Ok(w)
}

pub fn log_from_json(j: &LogJson) -> Result<QueryLog> {
    QueryLog::new(j.m, collect_pairs(j.m, &j.entries)?)
}

pub fn log_to_json(log: &QueryLog) -> LogJson {
    LogJson {
        m: log.m(),
        entries: log.entries().iter().map(|(t, v)| set_value(*t, v)).collect(),
    }
}

/// Parses an oracle spec, also accepting a plain instance or table file.
pub fn parse_oracle_spec(text: &str) -> Result<OracleSpec> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let has = |key: &str| value.get(key).is_some();
    if has("backend") {
        return Ok(serde_json::from_value(value)?);
    }
    if has("elements") {
        let j: InstanceJson = serde_json::from_value(value)?;
        return Ok(OracleSpec::Instance {
            m: j.m,
            elements: j.elements,
        });
    }
    if has("values") {
        let j: TableJson = serde_json::from_value(value)?;
        return Ok(OracleSpec::Table { m: j.m, values: j.values });
    }
    Err(Error::Malformed(
        "expected an oracle spec with \"backend\", an instance or a table".into(),
    ))
}

pub fn fstar_spec(p: &FStarParams) -> OracleSpec {
    OracleSpec::Fstar {
        m: p.m(),
        k: p.k(),
        n: Some(format_rational(p.n())),
    }
}

pub fn oracle_from_spec(spec: &OracleSpec) -> Result<CountingOracle> {
    match spec {
        OracleSpec::Fstar { m, k, n } => {
            let params = match n {
                Some(n) => FStarParams::with_n(*m, *k, parse_rational(n)?)?,
                None => FStarParams::new(*m, *k)?,
            };
            Ok(CountingOracle::new(params))
        }
        OracleSpec::Instance { m, elements } => {
            let inst = instance_from_json(&InstanceJson {
                m: *m,
                elements: elements.clone(),
            })?;
            Ok(CountingOracle::new(inst))
        }
        OracleSpec::Table { m, values } => {
            let pairs = collect_pairs(*m, values)?;
            Ok(CountingOracle::new(PartialTable::new(*m, pairs)?))
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}
