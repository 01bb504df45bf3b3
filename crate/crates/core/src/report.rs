//! Machine-readable results: values, verdicts and (separately) timings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::analysis::{CoinvariantResult, DegreeRow, NoetherResult};
use crate::group::GroupTable;
use crate::rep::Representation;

pub const SCHEMA_VERSION: u32 = 1;
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Statement {
    /// Killing the non-identity coset blocks maps `S(Ind V)^G` onto `S(V)^H`.
    ProjectionIdentity,
    /// The Hilbert ideal of `Ind V` meets `S(V)` inside `S(V)^H_+ S(V)_+`.
    IntersectionContainment,
    /// The previous containment with `H = G`, where it must fail.
    PropernessControl,
    /// `b_k(G, Ind V) >= β_k(H, V)`.
    InducedLowerBound,
    /// `(S(W)^G_+)^k S(W) ∩ S(V)^H ⊆ (S(V)^H_+)^{k+1}`.
    IntersectionPower,
    /// `b_{r+s-1}(G, U ⊕ Ind V) >= b_r(G/N, U) + b_s(N, V)`.
    QuotientLowerBound,
    /// The Hilbert ideal of `U ⊕ Ind V` projects onto the ideal generated by both invariant rings.
    HilbertIdealImage,
    /// `β_k <= b_k + 1`.
    NoetherBridge,
    /// A Noether number known in closed form.
    KnownValue,
    /// Strict growth of Noether numbers along a chain of subgroups.
    SubgroupMonotonicity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail { witness: String },
    Skipped { reason: String },
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremInstance {
    pub statement: Statement,
    pub group: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<String>,
    pub modules: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    pub degree_bound: u32,
    pub prime: u32,
    pub fingerprints: Vec<String>,
    pub values: BTreeMap<String, u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub verdict: Verdict,
}

impl TheoremInstance {
    pub fn new(statement: Statement, group: &GroupTable, prime: u32) -> Self {
        TheoremInstance {
            statement,
            group: group.name().to_string(),
            subgroup: None,
            modules: Vec::new(),
            k: None,
            degree_bound: 0,
            prime,
            fingerprints: Vec::new(),
            values: BTreeMap::new(),
            note: None,
            verdict: Verdict::Skipped { reason: "not evaluated".into() },
        }
    }

    pub fn module(mut self, rep: &Representation) -> Self {
        self.modules.push(rep.label().to_string());
        self.fingerprints.push(rep.fingerprint());
        self
    }

    pub fn value(&mut self, key: &str, v: u32) {
        self.values.insert(key.to_string(), v);
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        let status = match &self.verdict {
            Verdict::Pass => "pass".to_string(),
            Verdict::Fail { witness } => format!("FAIL ({witness})"),
            Verdict::Skipped { reason } => format!("skipped ({reason})"),
        };
        let sub = self.subgroup.as_deref().map(|s| format!(" H={s}")).unwrap_or_default();
        let k = self.k.map(|k| format!(" k={k}")).unwrap_or_default();
        let vals: Vec<String> = self.values.iter().map(|(a, b)| format!("{a}={b}")).collect();
        format!(
            "{:?} G={}{sub} W={}{k} d<={} p={} [{}]: {status}",
            self.statement,
            self.group,
            self.modules.join(" | "),
            self.degree_bound,
            self.prime,
            vals.join(", ")
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupInfo {
    pub name: String,
    pub order: usize,
    pub exponent: u64,
}

impl GroupInfo {
    pub fn of(g: &GroupTable) -> Self {
        GroupInfo { name: g.name().to_string(), order: g.order(), exponent: g.exponent() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleInfo {
    pub label: String,
    pub dim: usize,
    pub fingerprint: String,
}

impl ModuleInfo {
    pub fn of(rep: &Representation) -> Self {
        ModuleInfo { label: rep.label().to_string(), dim: rep.dim(), fingerprint: rep.fingerprint() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "quantity", rename_all = "snake_case")]
pub enum ValueRecord {
    /// `β_k`; `k = 1` is the Noether number itself.
    Beta {
        k: u32,
        value: u32,
        cap: u32,
        cap_rule: String,
        certified: bool,
        table: Vec<DegreeRow>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generator_degrees: Option<Vec<u32>>,
    },
    /// `b_k`, with the Hilbert series of the quotient.
    B {
        k: u32,
        value: u32,
        cap: u32,
        cap_rule: String,
        certified: bool,
        hilbert_series: Vec<usize>,
    },
}

impl From<&NoetherResult> for ValueRecord {
    fn from(r: &NoetherResult) -> Self {
        ValueRecord::Beta {
            k: r.k,
            value: r.value,
            cap: r.cap,
            cap_rule: r.cap_rule.clone(),
            certified: r.certified,
            table: r.table.clone(),
            generator_degrees: r.generator_degrees.clone(),
        }
    }
}

impl From<&CoinvariantResult> for ValueRecord {
    fn from(r: &CoinvariantResult) -> Self {
        // the chain runs until the quotient vanishes, so the value is always exact
        ValueRecord::B {
            k: r.k,
            value: r.value,
            cap: r.value + 1,
            cap_rule: "vanishing degree".into(),
            certified: true,
            hilbert_series: r.hilbert_series.clone(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub total_ms: f64,
    pub steps: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComputationReport {
    pub schema_version: u32,
    pub engine_version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupInfo>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleInfo>,
    pub results: Vec<ValueRecord>,
    pub verdicts: Vec<TheoremInstance>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub timings: Timings,
}

impl Default for ComputationReport {
    fn default() -> Self {
        ComputationReport {
            schema_version: SCHEMA_VERSION,
            engine_version: ENGINE_VERSION.to_string(),
            prime: None,
            group: None,
            module: None,
            results: Vec::new(),
            verdicts: Vec::new(),
            notes: Vec::new(),
            timings: Timings::default(),
        }
    }
}

impl ComputationReport {
    pub fn failures(&self) -> impl Iterator<Item = &TheoremInstance> {
        self.verdicts.iter().filter(|v| v.verdict.is_fail())
    }

    pub fn all_pass(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// The report with its timing section cleared, for byte-wise comparison.
    pub fn without_timings(&self) -> Self {
        ComputationReport { timings: Timings::default(), ..self.clone() }
    }

    /// Plain-text rendering.
    pub fn table(&self) -> String {
        let mut out = String::new();
        if let Some(g) = &self.group {
            out.push_str(&format!("group     {} (order {}, exponent {})\n", g.name, g.order, g.exponent));
        }
        if let Some(p) = self.prime {
            out.push_str(&format!("prime     {p}\n"));
        }
        if let Some(m) = &self.module {
            out.push_str(&format!("module    {} (dim {}, {})\n", m.label, m.dim, m.fingerprint));
        }
        for r in &self.results {
            match r {
                ValueRecord::Beta { k, value, cap, cap_rule, certified, table, generator_degrees } => {
                    let name = if *k == 1 { "beta".to_string() } else { format!("beta_{k}") };
                    let flag = if *certified { "" } else { "  UNCERTIFIED" };
                    out.push_str(&format!("{name} = {value}   (cap {cap}, {cap_rule}){flag}\n"));
                    if let Some(g) = generator_degrees {
                        let s: Vec<String> = g.iter().map(u32::to_string).collect();
                        out.push_str(&format!("  generator degrees {{{}}}\n", s.join(", ")));
                    }
                    out.push_str("  d   dim Inv_d   dim P_d\n");
                    for row in table {
                        out.push_str(&format!("  {:<3} {:<11} {}\n", row.degree, row.invariants, row.decomposable));
                    }
                }
                ValueRecord::B { k, value, hilbert_series, .. } => {
                    let name = if *k == 1 { "b".to_string() } else { format!("b_{k}") };
                    let s: Vec<String> = hilbert_series.iter().map(usize::to_string).collect();
                    out.push_str(&format!("{name} = {value}   (Hilbert series {})\n", s.join(" ")));
                }
            }
        }
        if !self.verdicts.is_empty() {
            let pass = self.verdicts.iter().filter(|v| v.verdict.is_pass()).count();
            out.push_str(&format!("verdicts  {pass}/{} pass\n", self.verdicts.len()));
            for v in &self.verdicts {
                out.push_str(&format!("  {}\n", v.summary()));
            }
        }
        for n in &self.notes {
            out.push_str(&format!("note      {n}\n"));
        }
        out.push_str(&format!("time      {:.1} ms\n", self.timings.total_ms));
        out
    }
}
