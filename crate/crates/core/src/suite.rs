//! Batch verification driver: a TOML grid per check, one report per run.

use std::collections::HashMap;
use std::sync::Arc;
use std::time::Instant;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::bott_ring::verify_bott_grid;
use crate::characters::{
    character_table, verify_adjoint_is_inverse_adams, verify_adjoint_pairing, verify_character_table, verify_koszul_upto,
    verify_multiplicativity, verify_periodicity, verify_regular_fixed, verify_symplectic_adjoint,
    verify_virtual_sigma_grid, CharacterTable, ClassFunction,
};
use crate::exact::{int_matrix, CommRing, IntMatrix};
use crate::gamma_lattices::{verify_lattice_compatibility, verify_orbit_stabilizer_sweep, GammaLattice, LatticeError};
use crate::groups::{catalog_up_to, conjugacy_classes, parse_group, ConjugacyData, FiniteGroup};
use crate::partitions::{partitions_of, Partition};
use crate::quad_fields::{squarefree_range, verify_different_sequence, verify_graded_layers, QuadraticField};
use crate::report::CheckOutcome;
use crate::schur_modules::{
    module_from_spec, verify_cauchy_dimensions, verify_cauchy_modules, verify_schur_characters, EquivariantModule,
};
use crate::symfunc::{verify_newton_cauchy, verify_q_specialization};

/// Built-in grid matching the acceptance criteria.
pub const DEFAULT_CONFIG: &str = include_str!("../../../configs/acceptance.toml");

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("cannot parse config: {0}")]
    Config(#[from] toml::de::Error),
    #[error("group {spec:?}: {message}")]
    Group { spec: String, message: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// Failed on inputs outside the statement's hypothesis, as intended.
    ExpectedFailure,
    Skip,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub statement: String,
    pub parameters: Value,
    pub status: Status,
    pub witness: Value,
    pub wall_time_ms: f64,
}

impl VerificationReport {
    pub fn from_outcome(o: CheckOutcome, wall_time_ms: f64) -> Self {
        let status = match (o.passed, o.hypothesis_holds) {
            (true, _) => Status::Pass,
            (false, true) => Status::Fail,
            (false, false) => Status::ExpectedFailure,
        };
        VerificationReport {
            check: o.check,
            statement: o.statement,
            parameters: o.parameters,
            status,
            witness: o.witness,
            wall_time_ms,
        }
    }

    pub fn skipped(check: &str, parameters: Value, reason: &str) -> Self {
        VerificationReport {
            check: check.into(),
            statement: String::new(),
            parameters,
            status: Status::Skip,
            witness: json!({ "reason": reason }),
            wall_time_ms: 0.0,
        }
    }

    pub fn failed(check: &str, parameters: Value, error: &str) -> Self {
        VerificationReport {
            check: check.into(),
            statement: String::new(),
            parameters,
            status: Status::Fail,
            witness: json!({ "error": error }),
            wall_time_ms: 0.0,
        }
    }

    /// One line: status, check, parameters, time.
    pub fn text_line(&self) -> String {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::ExpectedFailure => "XFAIL",
            Status::Skip => "SKIP",
        };
        format!("{status:5} {:24} {} ({:.1} ms)", self.check, self.parameters, self.wall_time_ms)
    }
}

/// Exit code contract: success iff no report failed.
pub fn all_passed(reports: &[VerificationReport]) -> bool {
    reports.iter().all(|r| r.status != Status::Fail)
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaxI {
    pub max_i: usize,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaxJ {
    pub max_j: usize,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupsOnly {
    pub groups: Vec<String>,
}

/// `max_k` defaults to twice the group order (regular-fixed) or twice the exponent (the others).
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupsK {
    pub groups: Vec<String>,
    pub max_k: Option<u64>,
    /// Explicit values, run one by one, including values outside the hypothesis.
    pub k: Option<Vec<i64>>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KoszulGrid {
    pub groups: Vec<String>,
    pub max_degree: i64,
    pub max_i: usize,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleCase {
    pub group: String,
    pub modules: Vec<String>,
    pub max_i: Option<usize>,
    pub max_weight: Option<usize>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleGrid {
    pub cases: Vec<ModuleCase>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitGrid {
    pub groups: Vec<String>,
    pub max_rank: usize,
    pub max_total: usize,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeCase {
    pub group: String,
    #[serde(default = "one")]
    pub rank: usize,
    pub betas: Vec<Vec<Vec<i64>>>,
    pub k: Vec<usize>,
    pub p: u64,
}

fn one() -> usize {
    1
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeGrid {
    pub cases: Vec<LatticeCase>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DRange {
    pub d_range: [i64; 2],
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DList {
    pub d: Vec<i64>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BottGrid {
    pub max_m: usize,
    pub max_k: u64,
}

/// Suite configuration: one optional table per check id.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct SuiteConfig {
    pub character_table: Option<GroupsOnly>,
    pub newton_cauchy: Option<MaxI>,
    pub q_specialization: Option<MaxJ>,
    pub regular_fixed: Option<GroupsK>,
    pub adjoint_pairing: Option<GroupsK>,
    pub adjoint_inverse_adams: Option<GroupsK>,
    pub periodicity: Option<GroupsK>,
    pub symplectic_adjoint: Option<GroupsK>,
    pub koszul: Option<KoszulGrid>,
    pub virtual_sigma_paths: Option<KoszulGrid>,
    pub multiplicativity: Option<KoszulGrid>,
    pub cauchy_modules: Option<ModuleGrid>,
    pub schur_character: Option<ModuleGrid>,
    pub orbit_stabilizer: Option<OrbitGrid>,
    pub lattice_compatibility: Option<LatticeGrid>,
    pub different_sequence: Option<DRange>,
    pub graded_layers: Option<DList>,
    pub bott_identities: Option<BottGrid>,
}

impl SuiteConfig {
    pub fn parse(text: &str) -> Result<Self, SuiteError> {
        Ok(toml::from_str(text)?)
    }

    pub fn default_grid() -> Self {
        Self::parse(DEFAULT_CONFIG).expect("built-in config parses")
    }
}

/// A group with its classes and character table.
#[derive(Debug)]
pub struct GroupContext {
    pub classes: Arc<ConjugacyData>,
    pub table: CharacterTable,
}

impl GroupContext {
    pub fn new(group: FiniteGroup) -> Result<Self, String> {
        let classes = Arc::new(conjugacy_classes(&Arc::new(group)));
        let table = character_table(&classes).map_err(|e| e.to_string())?;
        Ok(GroupContext { classes, table })
    }

    pub fn name(&self) -> &str {
        self.classes.group().name()
    }
}

#[derive(Default)]
struct Contexts {
    by_name: HashMap<String, Arc<GroupContext>>,
}

impl Contexts {
    fn get(&mut self, group: FiniteGroup) -> Result<Arc<GroupContext>, SuiteError> {
        let name = group.name().to_string();
        if let Some(c) = self.by_name.get(&name) {
            return Ok(Arc::clone(c));
        }
        let ctx = Arc::new(GroupContext::new(group).map_err(|message| SuiteError::Group { spec: name.clone(), message })?);
        self.by_name.insert(name, Arc::clone(&ctx));
        Ok(ctx)
    }

    /// A spec is a group spec or `catalog:<max order>`.
    fn expand(&mut self, specs: &[String]) -> Result<Vec<Arc<GroupContext>>, SuiteError> {
        let mut out = Vec::new();
        for spec in specs {
            if let Some(max) = spec.strip_prefix("catalog:") {
                let max: usize = max
                    .parse()
                    .map_err(|_| SuiteError::Group { spec: spec.clone(), message: "bad catalog bound".into() })?;
                for g in catalog_up_to(max) {
                    out.push(self.get(g)?);
                }
            } else {
                let g = parse_group(spec).map_err(|e| SuiteError::Group { spec: spec.clone(), message: e.to_string() })?;
                out.push(self.get(g)?);
            }
        }
        Ok(out)
    }
}

type Job = Box<dyn Fn() -> Vec<VerificationReport> + Send + Sync>;

fn timed(f: impl FnOnce() -> Result<CheckOutcome, String>, check: &str, params: Value) -> VerificationReport {
    let start = Instant::now();
    match f() {
        Ok(o) => VerificationReport::from_outcome(o, start.elapsed().as_secs_f64() * 1e3),
        Err(e) => VerificationReport::failed(check, params, &e),
    }
}

/// Folds many outcomes into one, listing at most five failures.
pub fn aggregate(check: &str, statement: &str, parameters: Value, outcomes: Vec<Result<CheckOutcome, String>>) -> CheckOutcome {
    let runs = outcomes.len();
    let mut failures = Vec::new();
    let mut failed = 0;
    for o in outcomes {
        match o {
            Ok(o) if o.passed => {}
            Ok(o) => {
                failed += 1;
                if failures.len() < 5 {
                    failures.push(json!({ "parameters": o.parameters, "witness": o.witness }));
                }
            }
            Err(e) => {
                failed += 1;
                if failures.len() < 5 {
                    failures.push(json!({ "error": e }));
                }
            }
        }
    }
    CheckOutcome::new(check, statement, parameters, failed == 0, json!({ "runs": runs, "failed": failed, "failures": failures }))
}

fn coprime_ks(n: u64, max_k: u64) -> impl Iterator<Item = u64> {
    (1..=max_k).filter(move |k| k.gcd(&n) == 1)
}

fn inverse_mod(k: u64, e: u64) -> u64 {
    (1..=e).find(|&x| (k * x) % e == 1 % e).expect("k is a unit")
}

/// Characters of degree at most `max_degree`: irreducibles and sums of two irreducibles.
fn small_characters(table: &CharacterTable, max_degree: i64) -> Vec<ClassFunction> {
    let degrees = table.degrees();
    let mut out = Vec::new();
    for a in 0..table.len() {
        if degrees[a] <= max_degree {
            out.push(table.row(a).clone());
        }
        for b in a..table.len() {
            if degrees[a] + degrees[b] <= max_degree {
                out.push(table.row(a).add_ref(table.row(b)));
            }
        }
    }
    out
}

fn build_jobs(config: &SuiteConfig) -> Result<Vec<Job>, SuiteError> {
    let mut ctx = Contexts::default();
    let mut jobs: Vec<Job> = Vec::new();

    if let Some(g) = &config.character_table {
        for c in ctx.expand(&g.groups)? {
            jobs.push(Box::new(move || {
                vec![timed(|| Ok(verify_character_table(&c.classes)), "character-table", json!({ "group": c.name() }))]
            }));
        }
    }
    if let Some(g) = config.newton_cauchy.clone() {
        for i in 1..=g.max_i {
            jobs.push(Box::new(move || {
                vec![timed(|| verify_newton_cauchy(i).map_err(|e| e.to_string()), "newton-cauchy", json!({ "i": i }))]
            }));
        }
    }
    if let Some(g) = config.q_specialization.clone() {
        for j in 1..=g.max_j {
            jobs.push(Box::new(move || {
                vec![timed(|| verify_q_specialization(j).map_err(|e| e.to_string()), "q-specialization", json!({ "j": j }))]
            }));
        }
    }
    if let Some(g) = &config.regular_fixed {
        for c in ctx.expand(&g.groups)? {
            let n = c.classes.order() as u64;
            if let Some(ks) = g.k.clone() {
                for k in ks {
                    let c = Arc::clone(&c);
                    jobs.push(Box::new(move || {
                        vec![timed(|| Ok(verify_regular_fixed(&c.classes, k)), "regular-fixed", json!({ "k": k }))]
                    }));
                }
            } else {
                let max_k = g.max_k.unwrap_or(2 * n);
                jobs.push(Box::new(move || {
                    let params = json!({ "group": c.name(), "max_k": max_k, "k": "coprime to order" });
                    vec![timed(
                        || {
                            let outs = coprime_ks(n, max_k).map(|k| Ok(verify_regular_fixed(&c.classes, k as i64))).collect();
                            Ok(aggregate("regular-fixed", "psi^k fixes the regular character for every k prime to |G|", params.clone(), outs))
                        },
                        "regular-fixed",
                        params.clone(),
                    )]
                }));
            }
        }
    }
    if let Some(g) = &config.adjoint_pairing {
        for c in ctx.expand(&g.groups)? {
            let max_k = g.max_k.unwrap_or(2 * c.classes.exponent() as u64);
            jobs.push(Box::new(move || {
                let params = json!({ "group": c.name(), "max_k": max_k });
                vec![timed(
                    || {
                        let outs = (1..=max_k).map(|k| Ok(verify_adjoint_pairing(&c.table, k))).collect();
                        Ok(aggregate("adjoint-pairing", "adjoint psi^k is the pairing adjoint of psi^k for every k", params.clone(), outs))
                    },
                    "adjoint-pairing",
                    params.clone(),
                )]
            }));
        }
    }
    if let Some(g) = &config.adjoint_inverse_adams {
        for c in ctx.expand(&g.groups)? {
            let e = c.classes.exponent() as u64;
            let n = c.classes.order() as u64;
            let max_k = g.max_k.unwrap_or(2 * e);
            jobs.push(Box::new(move || {
                let params = json!({ "group": c.name(), "max_k": max_k });
                vec![timed(
                    || {
                        let outs = coprime_ks(n, max_k)
                            .map(|k| verify_adjoint_is_inverse_adams(&c.table, k, inverse_mod(k, e)).map_err(|x| x.to_string()))
                            .collect();
                        Ok(aggregate(
                            "adjoint-inverse-adams",
                            "adjoint psi^k equals psi^{k'} for every k prime to |G|, kk' = 1 mod e",
                            params.clone(),
                            outs,
                        ))
                    },
                    "adjoint-inverse-adams",
                    params.clone(),
                )]
            }));
        }
    }
    if let Some(g) = &config.periodicity {
        for c in ctx.expand(&g.groups)? {
            let max_k = g.max_k.unwrap_or(2 * c.classes.exponent() as u64);
            jobs.push(Box::new(move || {
                let params = json!({ "group": c.name(), "max_k": max_k });
                vec![timed(
                    || {
                        let outs = (1..=max_k).map(|k| Ok(verify_periodicity(&c.table, k as i64))).collect();
                        Ok(aggregate("periodicity", "psi^k = psi^{k+e} on all irreducibles for every k", params.clone(), outs))
                    },
                    "periodicity",
                    params.clone(),
                )]
            }));
        }
    }
    if let Some(g) = &config.symplectic_adjoint {
        for c in ctx.expand(&g.groups)? {
            let max_k = g.max_k.unwrap_or(2 * c.classes.exponent() as u64);
            jobs.push(Box::new(move || {
                vec![timed(
                    || verify_symplectic_adjoint(&c.table, max_k).map_err(|e| e.to_string()),
                    "symplectic-adjoint",
                    json!({ "group": c.name(), "max_k": max_k }),
                )]
            }));
        }
    }
    if let Some(g) = &config.koszul {
        for c in ctx.expand(&g.groups)? {
            let (max_degree, max_i) = (g.max_degree, g.max_i);
            jobs.push(Box::new(move || {
                let params = json!({ "group": c.name(), "max_degree": max_degree, "max_i": max_i });
                vec![timed(
                    || {
                        let mut outs = Vec::new();
                        for chi in small_characters(&c.table, max_degree) {
                            match verify_koszul_upto(&c.table, &chi, max_i) {
                                Ok(v) => outs.extend(v.into_iter().map(Ok)),
                                Err(e) => outs.push(Err(e.to_string())),
                            }
                        }
                        Ok(aggregate("koszul", "alternating sum of lambda^j sigma^{i-j} vanishes", params.clone(), outs))
                    },
                    "koszul",
                    params.clone(),
                )]
            }));
        }
    }
    if let Some(g) = &config.virtual_sigma_paths {
        for c in ctx.expand(&g.groups)? {
            let (max_degree, max_i) = (g.max_degree, g.max_i);
            jobs.push(Box::new(move || {
                let params = json!({ "group": c.name(), "max_degree": max_degree, "max_i": max_i });
                vec![timed(
                    || {
                        let outs = match verify_virtual_sigma_grid(&c.table, max_degree, max_i) {
                            Ok(v) => v.into_iter().map(Ok).collect(),
                            Err(e) => vec![Err(e.to_string())],
                        };
                        Ok(aggregate("virtual-sigma-paths", "sigma^i of virtual classes agrees along both code paths", params.clone(), outs))
                    },
                    "virtual-sigma-paths",
                    params.clone(),
                )]
            }));
        }
    }
    if let Some(g) = &config.multiplicativity {
        for c in ctx.expand(&g.groups)? {
            let max_i = g.max_i;
            jobs.push(Box::new(move || {
                let params = json!({ "group": c.name(), "max_i": max_i });
                vec![timed(
                    || {
                        let mut outs = Vec::new();
                        for chi in c.table.rows() {
                            for theta in c.table.rows() {
                                for i in 1..=max_i {
                                    outs.push(verify_multiplicativity(chi, theta, i as i64).map_err(|e| e.to_string()));
                                }
                            }
                        }
                        Ok(aggregate("multiplicativity", "psi^i is multiplicative on irreducible pairs", params.clone(), outs))
                    },
                    "multiplicativity",
                    params.clone(),
                )]
            }));
        }
    }
    if let Some(g) = &config.cauchy_modules {
        for case in &g.cases {
            let c = ctx.expand(std::slice::from_ref(&case.group))?.remove(0);
            let case = case.clone();
            jobs.push(Box::new(move || {
                let max_i = case.max_i.unwrap_or(4);
                let params = json!({ "group": c.name(), "modules": case.modules, "max_i": max_i });
                vec![timed(
                    || {
                        let mods = modules(&c, &case.modules)?;
                        let mut outs = Vec::new();
                        for v in &mods {
                            for w in &mods {
                                for i in 1..=max_i {
                                    outs.push(verify_cauchy_modules(v, w, i).map_err(|e| e.to_string()));
                                    outs.push(Ok(verify_cauchy_dimensions(v, w, i)));
                                }
                            }
                        }
                        Ok(aggregate("cauchy-modules", "exterior powers of tensor products follow the Cauchy polynomial", params.clone(), outs))
                    },
                    "cauchy-modules",
                    params.clone(),
                )]
            }));
        }
    }
    if let Some(g) = &config.schur_character {
        for case in &g.cases {
            let c = ctx.expand(std::slice::from_ref(&case.group))?.remove(0);
            let case = case.clone();
            jobs.push(Box::new(move || {
                let max_weight = case.max_weight.unwrap_or(4);
                let params = json!({ "group": c.name(), "modules": case.modules, "max_weight": max_weight });
                vec![timed(
                    || {
                        let mods = modules(&c, &case.modules)?;
                        let shapes: Vec<Partition> = (1..=max_weight).flat_map(partitions_of).collect();
                        let mut outs = Vec::new();
                        for v in &mods {
                            for lambda in &shapes {
                                outs.push(verify_schur_characters(v, lambda).map_err(|e| e.to_string()));
                            }
                        }
                        Ok(aggregate("schur-character", "Schur and coSchur characters are Schur polynomials in exterior characters", params.clone(), outs))
                    },
                    "schur-character",
                    params.clone(),
                )]
            }));
        }
    }
    if let Some(g) = &config.orbit_stabilizer {
        for c in ctx.expand(&g.groups)? {
            let (max_rank, max_total) = (g.max_rank, g.max_total);
            jobs.push(Box::new(move || {
                vec![timed(
                    || verify_orbit_stabilizer_sweep(&c.classes, max_rank, max_total).map_err(|e| e.to_string()),
                    "orbit-stabilizer",
                    json!({ "group": c.name(), "max_rank": max_rank, "max_total": max_total }),
                )]
            }));
        }
    }
    if let Some(g) = &config.lattice_compatibility {
        for case in &g.cases {
            let c = ctx.expand(std::slice::from_ref(&case.group))?.remove(0);
            let case = case.clone();
            jobs.push(Box::new(move || {
                let params = json!({ "group": c.name(), "betas": case.betas, "k": case.k, "p": case.p });
                let f = GammaLattice::free(c.classes.group(), case.rank);
                let betas: Vec<IntMatrix> = case.betas.iter().map(|b| int_matrix(b)).collect();
                let start = Instant::now();
                match verify_lattice_compatibility(&f, &betas, &case.k, case.p) {
                    Ok(o) => vec![VerificationReport::from_outcome(o, start.elapsed().as_secs_f64() * 1e3)],
                    Err(LatticeError::BudgetExceeded { attempted, .. }) => {
                        vec![VerificationReport::skipped("lattice-compatibility", params, &format!("budget: {attempted}"))]
                    }
                    Err(e) => vec![VerificationReport::failed("lattice-compatibility", params, &e.to_string())],
                }
            }));
        }
    }
    if let Some(g) = config.different_sequence.clone() {
        for d in squarefree_range(g.d_range[0], g.d_range[1]) {
            jobs.push(Box::new(move || {
                vec![timed(
                    || QuadraticField::new(d).map(|q| verify_different_sequence(&q)).map_err(|e| e.to_string()),
                    "different-sequence",
                    json!({ "D": d }),
                )]
            }));
        }
    }
    if let Some(g) = config.graded_layers.clone() {
        for d in g.d {
            jobs.push(Box::new(move || {
                vec![timed(
                    || QuadraticField::new(d).map(|q| verify_graded_layers(&q)).map_err(|e| e.to_string()),
                    "graded-layers",
                    json!({ "D": d }),
                )]
            }));
        }
    }
    if let Some(g) = config.bott_identities.clone() {
        jobs.push(Box::new(move || {
            vec![timed(|| Ok(verify_bott_grid(g.max_m, g.max_k)), "bott-identities", json!({ "max_m": g.max_m, "max_k": g.max_k }))]
        }));
    }
    Ok(jobs)
}

fn modules(c: &GroupContext, specs: &[String]) -> Result<Vec<Arc<EquivariantModule>>, String> {
    specs.iter().map(|s| module_from_spec(&c.classes, &c.table, s).map_err(|e| e.to_string())).collect()
}

/// Runs every configured check; reports come back in configuration order.
pub fn run_suite(config: &SuiteConfig) -> Result<Vec<VerificationReport>, SuiteError> {
    let jobs = build_jobs(config)?;
    let reports: Vec<Vec<VerificationReport>> = jobs.par_iter().map(|job| job()).collect();
    Ok(reports.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_runs_nothing() {
        let reports = run_suite(&SuiteConfig::parse("").unwrap()).unwrap();
        assert!(reports.is_empty());
        assert!(all_passed(&reports));
    }

    #[test]
    fn negative_control_is_expected_failure() {
        let cfg = SuiteConfig::parse("[regular-fixed]\ngroups = [\"C4\"]\nk = [2, 3]\n").unwrap();
        let reports = run_suite(&cfg).unwrap();
        assert_eq!(reports[0].status, Status::ExpectedFailure);
        assert_eq!(reports[1].status, Status::Pass);
        assert!(all_passed(&reports));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(SuiteConfig::parse("[regular-fixd]\ngroups = []\n").is_err());
        assert!(SuiteConfig::parse("[koszul]\ngroups = [\"C2\"]\n").is_err());
    }

    #[test]
    fn default_grid_parses() {
        let cfg = SuiteConfig::default_grid();
        assert!(cfg.regular_fixed.is_some());
        assert!(cfg.bott_identities.is_some());
    }

    #[test]
    fn bad_group_is_an_error() {
        let cfg = SuiteConfig::parse("[character-table]\ngroups = [\"X9\"]\n").unwrap();
        assert!(matches!(run_suite(&cfg), Err(SuiteError::Group { .. })));
    }
}
