//! JSON job descriptions and their execution.
//!
//! A job names a group, a list of modules (their direct sum is the module `W` the task
//! runs on) and a task. Parsing reports every problem it finds, each tagged with the
//! JSON pointer of the offending value.

use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::analysis::{CapPolicy, ModuleAnalysis};
use crate::error::Error;
use crate::field::{choose_splitting_prime, default_floor, is_prime, PrimeField};
use crate::group::{catalog, permutation_group, quotient, subgroup_named, CatalogGroup, GroupTable, QuotientGroup, SubgroupHandle};
use crate::lab::{self, run_paper_suite, Lab, SuiteScale};
use crate::report::{ComputationReport, GroupInfo, ModuleInfo, TheoremInstance, ValueRecord};
use crate::rep::{character_rep, direct_sum, induce, inflate, permutation_rep, regular_rep, trivial_rep, Representation};

/// A problem with a job, located by a JSON pointer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobError {
    pub pointer: String,
    pub message: String,
}

impl JobError {
    fn new(pointer: &str, message: impl Into<String>) -> Self {
        JobError { pointer: if pointer.is_empty() { "/".into() } else { pointer.into() }, message: message.into() }
    }
}

impl fmt::Display for JobError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.pointer, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldSpec {
    Auto,
    Prime(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupSpec {
    Catalog(CatalogGroup),
    /// Generators as 0-based image arrays.
    Permutations { name: Option<String>, generators: Vec<Vec<usize>> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NamedSubgroup {
    /// Generated by the first catalog generator: the rotations of a dihedral group, the
    /// normal factor of a semidirect product, the first factor of an abelian group.
    Normal,
    /// Generated by the second catalog generator.
    Complement,
    Trivial,
    Whole,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubgroupSpec {
    Named(NamedSubgroup),
    /// Element indices of the group table.
    Elements(Vec<u32>),
    /// Words in the group's generators, each listed by position.
    Words(Vec<Vec<usize>>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModuleSpec {
    Character { exponents: Vec<i64> },
    Trivial { dim: usize },
    Regular,
    /// One image array per group generator.
    Permutation { images: Vec<Vec<usize>> },
    /// One matrix (list of rows) per group generator; column `j` is the image of `x_j`.
    Matrices { generators: Vec<Vec<Vec<i64>>> },
    Inflate { normal: SubgroupSpec, inner: Box<ModuleSpec> },
    Induce { subgroup: SubgroupSpec, inner: Box<ModuleSpec> },
    DirectSum { summands: Vec<ModuleSpec> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Op {
    Beta,
    B,
    BetaK,
    BK,
    Verify,
    Suite,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskSpec {
    pub op: Op,
    pub k: Option<u32>,
    pub max_degree: Option<u32>,
    pub scale: Option<SuiteScale>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobSpec {
    pub field: FieldSpec,
    pub group: Option<GroupSpec>,
    pub modules: Vec<ModuleSpec>,
    pub task: TaskSpec,
}

/// Command-line overrides applied on top of a job.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Overrides {
    pub prime: Option<FieldSpec>,
    pub max_degree: Option<u32>,
    pub k: Option<u32>,
    pub scale: Option<SuiteScale>,
}

/// A job expecting no input: the built-in suite at the given scale.
pub fn suite_job(scale: SuiteScale) -> JobSpec {
    JobSpec {
        field: FieldSpec::Auto,
        group: None,
        modules: Vec::new(),
        task: TaskSpec { op: Op::Suite, k: None, max_degree: None, scale: Some(scale) },
    }
}

/// Parses and validates a job. Malformed JSON yields a single error at `/`.
pub fn parse_jobspec(text: &str) -> std::result::Result<JobSpec, Vec<JobError>> {
    let value: Value = serde_json::from_str(text).map_err(|e| vec![JobError::new("", format!("malformed JSON: {e}"))])?;
    let spec = Parser::default().job(&value)?;
    spec.resolve(&Overrides::default())?;
    Ok(spec)
}

#[derive(Default)]
struct Parser {
    errors: Vec<JobError>,
}

fn ptr(base: &str, key: impl fmt::Display) -> String {
    format!("{base}/{key}")
}

impl Parser {
    fn fail(&mut self, pointer: &str, message: impl Into<String>) {
        self.errors.push(JobError::new(pointer, message));
    }

    fn object<'a>(&mut self, v: &'a Value, at: &str) -> Option<&'a Map<String, Value>> {
        let o = v.as_object();
        if o.is_none() {
            self.fail(at, "expected an object");
        }
        o
    }

    fn require<'a>(&mut self, o: &'a Map<String, Value>, key: &str, at: &str) -> Option<&'a Value> {
        let v = o.get(key);
        if v.is_none() {
            self.fail(&ptr(at, key), "required");
        }
        v
    }

    fn uint(&mut self, v: &Value, at: &str) -> Option<u32> {
        let n = v.as_u64().and_then(|n| u32::try_from(n).ok());
        if n.is_none() {
            self.fail(at, "expected a non-negative integer");
        }
        n
    }

    fn positive(&mut self, o: &Map<String, Value>, key: &str, at: &str) -> Option<u32> {
        let v = self.require(o, key, at)?;
        let n = self.uint(v, &ptr(at, key))?;
        if n == 0 {
            self.fail(&ptr(at, key), "must be positive");
            return None;
        }
        Some(n)
    }

    fn list<'a>(&mut self, v: &'a Value, at: &str) -> Option<&'a Vec<Value>> {
        let a = v.as_array();
        if a.is_none() {
            self.fail(at, "expected an array");
        }
        a
    }

    fn uints(&mut self, v: &Value, at: &str) -> Option<Vec<u32>> {
        let a = self.list(v, at)?;
        let out: Vec<Option<u32>> = a.iter().enumerate().map(|(i, x)| self.uint(x, &ptr(at, i))).collect();
        out.into_iter().collect()
    }

    fn indices(&mut self, v: &Value, at: &str) -> Option<Vec<usize>> {
        self.uints(v, at).map(|v| v.into_iter().map(|x| x as usize).collect())
    }

    fn ints(&mut self, v: &Value, at: &str) -> Option<Vec<i64>> {
        let a = self.list(v, at)?;
        let mut out = Vec::with_capacity(a.len());
        let mut ok = true;
        for (i, x) in a.iter().enumerate() {
            match x.as_i64() {
                Some(n) => out.push(n),
                None => {
                    self.fail(&ptr(at, i), "expected an integer");
                    ok = false;
                }
            }
        }
        ok.then_some(out)
    }

    fn job(mut self, v: &Value) -> std::result::Result<JobSpec, Vec<JobError>> {
        let Some(o) = self.object(v, "") else { return Err(self.errors) };
        for key in o.keys() {
            if !["field", "group", "modules", "task"].contains(&key.as_str()) {
                self.fail(&ptr("", key), "unknown key");
            }
        }
        let field = match o.get("field") {
            None => Some(FieldSpec::Auto),
            Some(f) => self.field(f, "/field"),
        };
        let task = match self.require(o, "task", "") {
            Some(t) => self.task(t, "/task"),
            None => None,
        };
        let needs_group = task.as_ref().is_some_and(|t| t.op != Op::Suite);
        let group = match o.get("group") {
            Some(g) => self.group(g, "/group"),
            None => {
                if needs_group {
                    self.fail("/group", "required");
                }
                None
            }
        };
        let modules = match o.get("modules") {
            Some(m) => self.list(m, "/modules").map(|a| {
                a.iter().enumerate().filter_map(|(i, m)| self.module(m, &ptr("/modules", i))).collect::<Vec<_>>()
            }),
            None => Some(Vec::new()),
        };
        if needs_group && o.get("modules").and_then(Value::as_array).is_some_and(Vec::is_empty) {
            self.fail("/modules", "at least one module is required");
        } else if needs_group && group.is_some() && o.get("modules").is_none() {
            self.fail("/modules", "required");
        }
        if !self.errors.is_empty() {
            return Err(self.errors);
        }
        Ok(JobSpec { field: field.unwrap(), group, modules: modules.unwrap(), task: task.unwrap() })
    }

    fn field(&mut self, v: &Value, at: &str) -> Option<FieldSpec> {
        let o = self.object(v, at)?;
        let p = self.require(o, "prime", at)?;
        prime_value(p).map_err(|m| self.fail(&ptr(at, "prime"), m)).ok()
    }

    fn task(&mut self, v: &Value, at: &str) -> Option<TaskSpec> {
        let o = self.object(v, at)?;
        let op = match self.require(o, "op", at)?.as_str() {
            Some("beta") => Op::Beta,
            Some("b") => Op::B,
            Some("beta_k") => Op::BetaK,
            Some("b_k") => Op::BK,
            Some("verify") => Op::Verify,
            Some("suite") => Op::Suite,
            _ => {
                self.fail(&ptr(at, "op"), "expected one of beta, b, beta_k, b_k, verify, suite");
                return None;
            }
        };
        let k = match o.get("k") {
            Some(_) => Some(self.positive(o, "k", at)?),
            None => None,
        };
        let max_degree = match o.get("max_degree") {
            Some(d) => Some(self.uint(d, &ptr(at, "max_degree"))?),
            None => None,
        };
        let scale = match o.get("scale").map(Value::as_str) {
            None => None,
            Some(Some("core")) => Some(SuiteScale::Core),
            Some(Some("stretch")) => Some(SuiteScale::Stretch),
            Some(_) => {
                self.fail(&ptr(at, "scale"), "expected core or stretch");
                return None;
            }
        };
        Some(TaskSpec { op, k, max_degree, scale })
    }

    fn group(&mut self, v: &Value, at: &str) -> Option<GroupSpec> {
        let o = self.object(v, at)?;
        let name = o.get("name").and_then(Value::as_str).map(String::from);
        if let Some(c) = o.get("catalog") {
            let kind = match c.as_str() {
                Some("cyclic") => CatalogGroup::Cyclic(self.positive(o, "n", at)?),
                Some("abelian") => {
                    let f = self.require(o, "factors", at)?;
                    let f = self.uints(f, &ptr(at, "factors"))?;
                    if f.is_empty() || f.contains(&0) {
                        self.fail(&ptr(at, "factors"), "factors must be a non-empty list of positive integers");
                        return None;
                    }
                    CatalogGroup::Abelian(f)
                }
                Some("dihedral") => CatalogGroup::Dihedral(self.positive(o, "n", at)?),
                Some("symmetric") => CatalogGroup::Symmetric(self.positive(o, "n", at)?),
                Some("quaternion8") => CatalogGroup::Quaternion8,
                Some("semidirect") => {
                    let (m, k) = (self.positive(o, "m", at), self.positive(o, "k", at));
                    let a = self.require(o, "a", at).and_then(|a| self.uint(a, &ptr(at, "a")));
                    CatalogGroup::Semidirect { m: m?, k: k?, a: a? }
                }
                _ => {
                    self.fail(&ptr(at, "catalog"), format!("unknown catalog group {c}"));
                    return None;
                }
            };
            return Some(GroupSpec::Catalog(kind));
        }
        if let Some(p) = o.get("permutations") {
            let gens = self.list(p, &ptr(at, "permutations"))?;
            let gens: Vec<Option<Vec<usize>>> =
                gens.iter().enumerate().map(|(i, g)| self.indices(g, &ptr(&ptr(at, "permutations"), i))).collect();
            return Some(GroupSpec::Permutations { name, generators: gens.into_iter().collect::<Option<_>>()? });
        }
        if let Some(c) = o.get("cycles") {
            let degree = self.positive(o, "degree", at)? as usize;
            let gens = self.list(c, &ptr(at, "cycles"))?;
            let mut out = Vec::new();
            for (i, g) in gens.iter().enumerate() {
                let here = ptr(&ptr(at, "cycles"), i);
                let cycles = self.list(g, &here)?;
                let mut perm: Vec<usize> = (0..degree).collect();
                for (j, cyc) in cycles.iter().enumerate() {
                    let cyc = self.indices(cyc, &ptr(&here, j))?;
                    if cyc.iter().any(|&x| x >= degree) {
                        self.fail(&ptr(&here, j), format!("points must lie below the degree {degree}"));
                        return None;
                    }
                    // composing the cycles right to left
                    let mut step: Vec<usize> = (0..degree).collect();
                    for (t, &x) in cyc.iter().enumerate() {
                        step[x] = cyc[(t + 1) % cyc.len()];
                    }
                    perm = perm.iter().map(|&x| step[x]).collect();
                }
                out.push(perm);
            }
            return Some(GroupSpec::Permutations { name, generators: out });
        }
        self.fail(at, "expected a catalog, permutations or cycles descriptor");
        None
    }

    fn subgroup(&mut self, v: &Value, at: &str) -> Option<SubgroupSpec> {
        let o = self.object(v, at)?;
        if let Some(c) = o.get("catalog_sub") {
            let named = match c.as_str() {
                Some("rotations" | "normal") => NamedSubgroup::Normal,
                Some("reflection" | "complement") => NamedSubgroup::Complement,
                Some("trivial") => NamedSubgroup::Trivial,
                Some("whole") => NamedSubgroup::Whole,
                _ => {
                    self.fail(&ptr(at, "catalog_sub"), "expected rotations, reflection, normal, complement, trivial or whole");
                    return None;
                }
            };
            return Some(SubgroupSpec::Named(named));
        }
        if let Some(e) = o.get("elements") {
            return self.uints(e, &ptr(at, "elements")).map(SubgroupSpec::Elements);
        }
        if let Some(w) = o.get("words") {
            let words = self.list(w, &ptr(at, "words"))?;
            let words: Vec<Option<Vec<usize>>> =
                words.iter().enumerate().map(|(i, x)| self.indices(x, &ptr(&ptr(at, "words"), i))).collect();
            return words.into_iter().collect::<Option<_>>().map(SubgroupSpec::Words);
        }
        self.fail(at, "expected catalog_sub, elements or words");
        None
    }

    fn module(&mut self, v: &Value, at: &str) -> Option<ModuleSpec> {
        let o = self.object(v, at)?;
        let ty = self.require(o, "type", at)?;
        let inner = |p: &mut Parser| -> Option<Box<ModuleSpec>> {
            let i = p.require(o, "inner", at)?;
            p.module(i, &ptr(at, "inner")).map(Box::new)
        };
        Some(match ty.as_str() {
            Some("character") => {
                let e = self.require(o, "exponents", at)?;
                ModuleSpec::Character { exponents: self.ints(e, &ptr(at, "exponents"))? }
            }
            Some("trivial") => ModuleSpec::Trivial {
                dim: match o.get("dim") {
                    Some(d) => self.uint(d, &ptr(at, "dim"))? as usize,
                    None => 1,
                },
            },
            Some("regular") => ModuleSpec::Regular,
            Some("permutation") => {
                let imgs = self.require(o, "images", at)?;
                let imgs = self.list(imgs, &ptr(at, "images"))?;
                let imgs: Vec<Option<Vec<usize>>> =
                    imgs.iter().enumerate().map(|(i, x)| self.indices(x, &ptr(&ptr(at, "images"), i))).collect();
                ModuleSpec::Permutation { images: imgs.into_iter().collect::<Option<_>>()? }
            }
            Some("matrices") => {
                let gens = self.require(o, "generators", at)?;
                let here = ptr(at, "generators");
                let gens = self.list(gens, &here)?;
                let mut out = Vec::new();
                for (i, m) in gens.iter().enumerate() {
                    let rows = self.list(m, &ptr(&here, i))?;
                    let rows: Vec<Option<Vec<i64>>> =
                        rows.iter().enumerate().map(|(r, x)| self.ints(x, &ptr(&ptr(&here, i), r))).collect();
                    out.push(rows.into_iter().collect::<Option<Vec<_>>>()?);
                }
                ModuleSpec::Matrices { generators: out }
            }
            Some("inflate") => {
                let n = self.require(o, "normal", at)?;
                let normal = self.subgroup(n, &ptr(at, "normal"));
                ModuleSpec::Inflate { normal: normal?, inner: inner(self)? }
            }
            Some("induce" | "induced") => {
                let s = self.require(o, "subgroup", at)?;
                let subgroup = self.subgroup(s, &ptr(at, "subgroup"));
                ModuleSpec::Induce { subgroup: subgroup?, inner: inner(self)? }
            }
            Some("direct_sum") => {
                let s = self.require(o, "summands", at)?;
                let s = self.list(s, &ptr(at, "summands"))?;
                let parts: Vec<Option<ModuleSpec>> =
                    s.iter().enumerate().map(|(i, m)| self.module(m, &ptr(&ptr(at, "summands"), i))).collect();
                ModuleSpec::DirectSum { summands: parts.into_iter().collect::<Option<_>>()? }
            }
            _ => {
                self.fail(
                    &ptr(at, "type"),
                    "expected character, trivial, regular, permutation, matrices, inflate, induce or direct_sum",
                );
                return None;
            }
        })
    }
}

/// Parses a prime given as an integer, a decimal string or `"auto"`.
pub fn prime_value(v: &Value) -> std::result::Result<FieldSpec, String> {
    match v {
        Value::String(s) if s == "auto" => Ok(FieldSpec::Auto),
        Value::String(s) => s.parse::<u32>().map(FieldSpec::Prime).map_err(|_| format!("expected a prime or \"auto\", got {s:?}")),
        Value::Number(n) => n
            .as_u64()
            .and_then(|n| u32::try_from(n).ok())
            .map(FieldSpec::Prime)
            .ok_or_else(|| format!("expected a prime below 2^32, got {n}")),
        _ => Err("expected a prime or \"auto\"".into()),
    }
}

/// How the module was assembled, when that enables more checks.
#[derive(Debug, Clone)]
pub enum Structure {
    Plain,
    Induced { sub: SubgroupHandle, inner: Representation },
    Quotient { q: QuotientGroup, u: Representation, v: Representation },
}

/// A job with its group, field and module constructed.
#[derive(Debug, Clone)]
pub struct ResolvedJob {
    pub spec: JobSpec,
    pub field: Option<PrimeField>,
    pub group: Option<Arc<GroupTable>>,
    pub module: Option<Representation>,
    pub structure: Structure,
    pub k: u32,
    pub max_degree: Option<u32>,
    pub scale: SuiteScale,
}

/// A group together with the catalog entry it came from, if any.
struct GroupCtx {
    table: Arc<GroupTable>,
    kind: Option<CatalogGroup>,
}

fn engine(at: &str, e: Error) -> Vec<JobError> {
    vec![JobError::new(at, e.to_string())]
}

fn field_for(spec: &FieldSpec, g: &GroupTable) -> std::result::Result<PrimeField, Vec<JobError>> {
    let exp = g.exponent();
    match spec {
        FieldSpec::Auto => choose_splitting_prime(exp, default_floor(g.order())).map_err(|e| engine("/field/prime", e)),
        FieldSpec::Prime(p) => {
            let p = *p as u64;
            if !is_prime(p) {
                return Err(vec![JobError::new("/field/prime", format!("{p} is not prime"))]);
            }
            if p <= g.order() as u64 || (p - 1) % exp != 0 {
                return Err(vec![JobError::new(
                    "/field/prime",
                    format!("{p} must exceed |G| = {} and satisfy p = 1 mod {exp}", g.order()),
                )]);
            }
            PrimeField::new(p as u32).map_err(|e| engine("/field/prime", e))
        }
    }
}

impl JobSpec {
    /// Builds the group, field and module, with overrides applied.
    pub fn resolve(&self, ov: &Overrides) -> std::result::Result<ResolvedJob, Vec<JobError>> {
        let k = ov.k.or(self.task.k).unwrap_or(1);
        let max_degree = ov.max_degree.or(self.task.max_degree);
        let scale = ov.scale.or(self.task.scale).unwrap_or(SuiteScale::Core);
        let mut out = ResolvedJob {
            spec: self.clone(),
            field: None,
            group: None,
            module: None,
            structure: Structure::Plain,
            k,
            max_degree,
            scale,
        };
        if self.task.op == Op::Suite {
            return Ok(out);
        }
        if matches!(self.task.op, Op::BetaK | Op::BK) && ov.k.is_none() && self.task.k.is_none() {
            return Err(vec![JobError::new("/task/k", "required for beta_k and b_k")]);
        }
        let gspec = self.group.as_ref().ok_or_else(|| vec![JobError::new("/group", "required")])?;
        let ctx = match gspec {
            GroupSpec::Catalog(c) => GroupCtx { table: catalog(c).map_err(|e| engine("/group", e))?, kind: Some(c.clone()) },
            GroupSpec::Permutations { name, generators } => {
                let name = name.clone().unwrap_or_else(|| "G".into());
                GroupCtx { table: permutation_group(name, generators).map_err(|e| engine("/group", e))?, kind: None }
            }
        };
        let field = field_for(ov.prime.as_ref().unwrap_or(&self.field), &ctx.table)?;
        let mut errors = Vec::new();
        let mut parts = Vec::new();
        for (i, m) in self.modules.iter().enumerate() {
            match build_module(m, &ctx, field, &ptr("/modules", i)) {
                Ok(r) => parts.push(r),
                Err(mut e) => errors.append(&mut e),
            }
        }
        if !errors.is_empty() {
            return Err(errors);
        }
        let mut module = parts[0].clone();
        for p in &parts[1..] {
            module = direct_sum(&module, p).map_err(|e| engine("/modules", e))?;
        }
        out.structure = structure_of(&self.modules, &ctx, field);
        out.field = Some(field);
        out.group = Some(ctx.table);
        out.module = Some(module);
        Ok(out)
    }
}

fn resolve_subgroup(spec: &SubgroupSpec, ctx: &GroupCtx, at: &str) -> std::result::Result<SubgroupHandle, Vec<JobError>> {
    let g = &ctx.table;
    let gens: Vec<u32> = match spec {
        SubgroupSpec::Named(n) => {
            let catalog_gens = g.generators();
            let by_position = |i: usize| -> std::result::Result<Vec<u32>, Vec<JobError>> {
                let named = matches!(
                    ctx.kind,
                    Some(CatalogGroup::Dihedral(_) | CatalogGroup::Semidirect { .. } | CatalogGroup::Abelian(_) | CatalogGroup::Quaternion8)
                );
                match catalog_gens.get(i) {
                    Some(&x) if named => Ok(vec![x]),
                    _ => Err(vec![JobError::new(&ptr(at, "catalog_sub"), format!("{} has no such catalog subgroup", g.name()))]),
                }
            };
            match n {
                NamedSubgroup::Normal => by_position(0)?,
                NamedSubgroup::Complement => by_position(1)?,
                NamedSubgroup::Trivial => Vec::new(),
                NamedSubgroup::Whole => catalog_gens.to_vec(),
            }
        }
        SubgroupSpec::Elements(es) => {
            for (i, &e) in es.iter().enumerate() {
                if e as usize >= g.order() {
                    return Err(vec![JobError::new(&ptr(&ptr(at, "elements"), i), format!("no element {e} in a group of order {}", g.order()))]);
                }
            }
            es.clone()
        }
        SubgroupSpec::Words(ws) => {
            let mut out = Vec::new();
            for (i, w) in ws.iter().enumerate() {
                out.push(g.word(w).map_err(|e| engine(&ptr(&ptr(at, "words"), i), e))?);
            }
            out
        }
    };
    if let Some(&x) = gens.iter().find(|&&x| x as usize >= g.order()) {
        return Err(vec![JobError::new(at, format!("no element {x} in a group of order {}", g.order()))]);
    }
    let elements = g.closure(&gens);
    let cyclic = elements.iter().any(|&x| g.element_order(x) as usize == elements.len());
    let name = if cyclic { format!("C{}", elements.len()) } else { format!("H{}", elements.len()) };
    subgroup_named(g, &gens, Some(name)).map_err(|e| engine(at, e))
}

fn to_field(field: PrimeField, x: i64) -> u32 {
    x.rem_euclid(field.p() as i64) as u32
}

fn build_module(spec: &ModuleSpec, ctx: &GroupCtx, field: PrimeField, at: &str) -> std::result::Result<Representation, Vec<JobError>> {
    let g = &ctx.table;
    match spec {
        ModuleSpec::Character { exponents } => {
            let basis_len = g.abelian_basis().map(<[_]>::len);
            match basis_len {
                None => Err(vec![JobError::new(&ptr(at, "type"), format!("{} has no abelian basis for characters", g.name()))]),
                Some(n) if n != exponents.len() => Err(vec![JobError::new(
                    &ptr(at, "exponents"),
                    format!("{} exponents given, {} has {n} basis generators", exponents.len(), g.name()),
                )]),
                Some(_) => character_rep(g, field, exponents).map_err(|e| engine(at, e)),
            }
        }
        ModuleSpec::Trivial { dim } => Ok(trivial_rep(g, field, *dim)),
        ModuleSpec::Regular => Ok(regular_rep(g, field)),
        ModuleSpec::Permutation { images } => permutation_rep(g, field, images).map_err(|e| engine(at, e)),
        ModuleSpec::Matrices { generators } => {
            let dim = generators.first().map_or(0, Vec::len);
            let mut images = Vec::with_capacity(generators.len());
            for (i, m) in generators.iter().enumerate() {
                if m.len() != dim || m.iter().any(|r| r.len() != dim) {
                    return Err(vec![JobError::new(&ptr(&ptr(at, "generators"), i), format!("expected a {dim}x{dim} matrix"))]);
                }
                images.push(m.iter().flatten().map(|&x| to_field(field, x)).collect());
            }
            Representation::from_generator_images(g, field, dim, &images, format!("mat{dim}")).map_err(|e| engine(at, e))
        }
        ModuleSpec::Inflate { normal, inner } => {
            let n = resolve_subgroup(normal, ctx, &ptr(at, "normal"))?;
            let q = quotient(g, &n).map_err(|e| engine(&ptr(at, "normal"), e))?;
            let qctx = GroupCtx { table: Arc::clone(q.table()), kind: None };
            let u = build_module(inner, &qctx, field, &ptr(at, "inner"))?;
            inflate(&u, &q).map_err(|e| engine(at, e))
        }
        ModuleSpec::Induce { subgroup, inner } => {
            let sub = resolve_subgroup(subgroup, ctx, &ptr(at, "subgroup"))?;
            let hctx = GroupCtx { table: Arc::clone(sub.table()), kind: None };
            let v = build_module(inner, &hctx, field, &ptr(at, "inner"))?;
            induce(&sub, &v).map_err(|e| engine(at, e))
        }
        ModuleSpec::DirectSum { summands } => {
            let mut parts = Vec::new();
            for (i, s) in summands.iter().enumerate() {
                parts.push(build_module(s, ctx, field, &ptr(&ptr(at, "summands"), i))?);
            }
            let Some(first) = parts.first().cloned() else {
                return Ok(trivial_rep(g, field, 0));
            };
            parts[1..].iter().try_fold(first, |a, b| direct_sum(&a, b)).map_err(|e| engine(at, e))
        }
    }
}

/// Recognizes `Ind_H V` and `Inf U ⊕ Ind_N V` (same `N`) at the top level.
fn structure_of(modules: &[ModuleSpec], ctx: &GroupCtx, field: PrimeField) -> Structure {
    let flat: Vec<&ModuleSpec> = match modules {
        [ModuleSpec::DirectSum { summands }] => summands.iter().collect(),
        _ => modules.iter().collect(),
    };
    let built = || -> Option<Structure> {
        match flat.as_slice() {
            [ModuleSpec::Induce { subgroup, inner }] => {
                let sub = resolve_subgroup(subgroup, ctx, "").ok()?;
                let hctx = GroupCtx { table: Arc::clone(sub.table()), kind: None };
                let inner = build_module(inner, &hctx, field, "").ok()?;
                Some(Structure::Induced { sub, inner })
            }
            [ModuleSpec::Inflate { normal, inner: u }, ModuleSpec::Induce { subgroup, inner: v }] => {
                let n = resolve_subgroup(normal, ctx, "").ok()?;
                let h = resolve_subgroup(subgroup, ctx, "").ok()?;
                if n.elements() != h.elements() {
                    return None;
                }
                let q = quotient(&ctx.table, &n).ok()?;
                let u = build_module(u, &GroupCtx { table: Arc::clone(q.table()), kind: None }, field, "").ok()?;
                let v = build_module(v, &GroupCtx { table: Arc::clone(h.table()), kind: None }, field, "").ok()?;
                Some(Structure::Quotient { q, u, v })
            }
            _ => None,
        }
    };
    built().unwrap_or(Structure::Plain)
}

/// Runs a resolved job. Engine errors (a component too large, an internal consistency
/// failure) are returned as such.
pub fn run(job: &ResolvedJob, verbose: bool) -> crate::Result<ComputationReport> {
    let start = Instant::now();
    let log = |msg: &str| {
        if verbose {
            eprintln!("[{:>9.1} ms] {msg}", start.elapsed().as_secs_f64() * 1e3);
        }
    };
    if job.spec.task.op == Op::Suite {
        log(&format!("running the {:?} suite", job.scale));
        let mut report = run_paper_suite(job.scale)?;
        report.timings.total_ms = start.elapsed().as_secs_f64() * 1e3;
        return Ok(report);
    }
    let (field, group, module) = match (&job.field, &job.group, &job.module) {
        (Some(f), Some(g), Some(m)) => (*f, g, m),
        _ => return Err(Error::Precondition("job is not resolved".into())),
    };
    let mut report = ComputationReport {
        prime: Some(field.p()),
        group: Some(GroupInfo::of(group)),
        module: Some(ModuleInfo::of(module)),
        ..Default::default()
    };
    if module.dim() == 0 {
        report.notes.push("zero module: beta and b are 0 by convention".into());
    }
    let k = job.k;
    let policy = job.max_degree.map_or(CapPolicy::Default, CapPolicy::Explicit);
    let step = |report: &mut ComputationReport, name: String, t0: Instant| {
        report.timings.steps.insert(name, t0.elapsed().as_secs_f64() * 1e3);
    };
    match job.spec.task.op {
        Op::Beta | Op::BetaK => {
            let t0 = Instant::now();
            log(&format!("beta_{k} of {}", module.label()));
            let mut a = ModuleAnalysis::from_rep(module.clone());
            let r = a.noether_number(k, policy)?;
            if !r.certified {
                report.notes.push(format!("beta_{k} search stopped at the explicit cap {}", r.cap));
            }
            report.results.push(ValueRecord::from(&r));
            step(&mut report, format!("beta_{k}"), t0);
        }
        Op::B | Op::BK => {
            let t0 = Instant::now();
            log(&format!("b_{k} of {}", module.label()));
            let r = ModuleAnalysis::from_rep(module.clone()).b_value(k)?;
            report.results.push(ValueRecord::from(&r));
            step(&mut report, format!("b_{k}"), t0);
        }
        Op::Verify => {
            let lab = Lab::new();
            let mut verdicts: Vec<TheoremInstance> = Vec::new();
            let t0 = Instant::now();
            match &job.structure {
                Structure::Induced { sub, inner } => {
                    log("induced module: projection identity, intersections, induced lower bound");
                    verdicts.push(lab::check_projection_identity(&lab, sub, inner, job.max_degree)?);
                    if sub.is_proper() {
                        verdicts.push(lab::check_corollary_intersection(&lab, sub, inner, job.max_degree)?);
                        for j in 1..=k {
                            verdicts.push(lab::check_thm_betab(&lab, sub, inner, j)?);
                            verdicts.push(lab::check_intersection_power(&lab, sub, inner, j)?);
                        }
                    }
                }
                Structure::Quotient { q, u, v } => {
                    log("inflated plus induced module: ideal image and quotient lower bounds");
                    verdicts.push(lab::projected_hilbert_ideal_check(&lab, q, u, v)?);
                    for r in 1..=k {
                        for s in 1..=k {
                            verdicts.push(lab::check_thm_quotient(&lab, q, u, v, r, s)?);
                        }
                    }
                }
                Structure::Plain => {}
            }
            for j in 1..=k {
                log(&format!("bridge inequality for k = {j}"));
                verdicts.push(lab::check_beta_b_bridge(&lab, module, j)?);
            }
            report.verdicts = verdicts;
            step(&mut report, "verify".into(), t0);
        }
        Op::Suite => unreachable!(),
    }
    report.timings.total_ms = start.elapsed().as_secs_f64() * 1e3;
    log("done");
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn errors(text: &str) -> Vec<String> {
        parse_jobspec(text).unwrap_err().into_iter().map(|e| e.pointer).collect()
    }

    #[test]
    fn schema_instances() {
        let a = r#"{"group":{"catalog":"dihedral","n":3},"modules":[{"type":"induced","subgroup":{"catalog_sub":"rotations"},"inner":{"type":"character","exponents":[1]}}],"task":{"op":"beta"}}"#;
        let job = parse_jobspec(a).unwrap();
        let r = job.resolve(&Overrides::default()).unwrap();
        assert_eq!(r.module.as_ref().unwrap().dim(), 2);
        assert!(matches!(r.structure, Structure::Induced { .. }));
        let b = r#"{"group":{"catalog":"cyclic","n":4},"modules":[{"type":"character","exponents":[1]}],"task":{"op":"b_k","k":2}}"#;
        assert_eq!(parse_jobspec(b).unwrap().task.k, Some(2));
    }

    #[test]
    fn pointers() {
        assert_eq!(errors(r#"{"task":{"op":"beta"}}"#), vec!["/group"]);
        assert_eq!(errors("{not json"), vec!["/"]);
        assert_eq!(errors(r#"{"group":{"catalog":"tetrahedral"},"modules":[{"type":"regular"}],"task":{"op":"beta"}}"#), vec!["/group/catalog"]);
        assert_eq!(
            errors(r#"{"group":{"catalog":"cyclic","n":4},"modules":[{"type":"regular"},{"type":"character","exponents":[1,1]}],"task":{"op":"beta"}}"#),
            vec!["/modules/1/exponents"]
        );
        assert_eq!(
            errors(r#"{"group":{"catalog":"symmetric","n":3},"modules":[{"type":"inflate","normal":{"words":[[1]]},"inner":{"type":"trivial"}}],"task":{"op":"beta"}}"#),
            vec!["/modules/0/normal"]
        );
        let many = errors(r#"{"group":{"catalog":"cyclic"},"modules":[{"type":"spin"}],"task":{"op":"beta","k":0}}"#);
        assert_eq!(many, vec!["/task/k", "/group/n", "/modules/0/type"]);
        assert_eq!(errors(r#"{"group":{"catalog":"cyclic","n":4},"modules":[{"type":"regular"}],"task":{"op":"b_k"}}"#), vec!["/task/k"]);
        assert_eq!(
            errors(r#"{"field":{"prime":263},"group":{"catalog":"cyclic","n":4},"modules":[{"type":"regular"}],"task":{"op":"b"}}"#),
            vec!["/field/prime"]
        );
    }

    #[test]
    fn cycles_and_words() {
        let text = r#"{"group":{"cycles":[[[0,1,2]],[[0,1],[2,3]]],"degree":4,"name":"A4"},
            "modules":[{"type":"induce","subgroup":{"words":[[1],[0,1,0,0]]},"inner":{"type":"character","exponents":[1,0]}}],
            "task":{"op":"verify"}}"#;
        let r = parse_jobspec(text).unwrap().resolve(&Overrides::default()).unwrap();
        assert_eq!(r.group.as_ref().unwrap().order(), 12);
        assert_eq!(r.module.as_ref().unwrap().dim(), 3);
    }

    #[test]
    fn beta_of_c5() {
        let text = r#"{"group":{"catalog":"cyclic","n":5},"modules":[{"type":"character","exponents":[1]}],"task":{"op":"beta"}}"#;
        let r = parse_jobspec(text).unwrap().resolve(&Overrides::default()).unwrap();
        let report = run(&r, false).unwrap();
        match &report.results[0] {
            ValueRecord::Beta { value, certified, .. } => assert_eq!((*value, *certified), (5, true)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn quotient_structure_is_recognized() {
        let text = r#"{"group":{"catalog":"symmetric","n":3},"modules":[
            {"type":"inflate","normal":{"words":[[0]]},"inner":{"type":"character","exponents":[1]}},
            {"type":"induce","subgroup":{"words":[[0]]},"inner":{"type":"character","exponents":[1]}}],
            "task":{"op":"verify"}}"#;
        let r = parse_jobspec(text).unwrap().resolve(&Overrides::default()).unwrap();
        assert!(matches!(r.structure, Structure::Quotient { .. }));
        let report = run(&r, false).unwrap();
        assert!(report.all_pass());
        assert_eq!(report.verdicts.len(), 3);
    }
}
