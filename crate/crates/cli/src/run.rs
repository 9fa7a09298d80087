//! Task planning, parallel execution and report rendering.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde_json::{json, Value as Json};

use hrrcheck_core::algebra::{build_algebra, examples, Algebra};
use hrrcheck_core::homological::EngineOptions;
use hrrcheck_core::verify::{
    inputs_digest, random_operands, verify, verify_closed_forms, verify_corollaries, verify_lemma_suite, Flavor,
    IdentityId, Level, Operands, Value, VerificationReport, Version,
};
use hrrcheck_core::Error;

use crate::schema::{onto_opposite, CheckEntry, EndoEntry, ProblemFile, Suite};

/// How bad an outcome is. The exit code follows the worst one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Pass,
    Fail,
    EngineLimit,
    Input,
}

impl Severity {
    pub fn of_error(e: &Error) -> Severity {
        match e {
            Error::Validation(_) | Error::Dimension(_) => Severity::Input,
            e if e.is_engine_limit() => Severity::EngineLimit,
            _ => Severity::Fail,
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Severity::Pass => 0,
            Severity::Fail => 1,
            Severity::Input => 2,
            Severity::EngineLimit => 3,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub algebra: String,
    pub report: VerificationReport,
    pub severity: Severity,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub suite: Option<Suite>,
    pub level: Option<Level>,
    pub seed: u64,
    pub samples: usize,
    pub cap: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { suite: None, level: None, seed: 0, samples: 10, cap: EngineOptions::default().cap }
    }
}

impl RunConfig {
    fn engine(&self) -> EngineOptions {
        EngineOptions { cap: self.cap, lift_seed: None }
    }
}

#[derive(Debug, Clone)]
enum Task {
    Declared { index: usize },
    Random { algebra: String, label: String, id: IdentityId, seed: u64 },
    Corollaries { algebra: String },
    ClosedForms { algebra: String },
    Lemmas { algebra: String },
}

fn mix(seed: u64, k: u64) -> u64 {
    let mut z = seed ^ k.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn identities(level: Option<Level>, flavor: Option<Flavor>) -> Vec<IdentityId> {
    IdentityId::all()
        .into_iter()
        .filter(|x| level.is_none_or(|l| x.level == l) && flavor.is_none_or(|f| x.flavor == f))
        .collect()
}

fn suite_tasks(suite: Suite, algebra: &str, cfg: &RunConfig, out: &mut Vec<Task>) {
    let flavors: &[Flavor] = match suite {
        Suite::All => &[Flavor::Hrr, Flavor::Lefschetz],
        Suite::Hrr => &[Flavor::Hrr],
        Suite::Lefschetz => &[Flavor::Lefschetz],
        _ => &[],
    };
    for &f in flavors {
        for id in identities(cfg.level, Some(f)) {
            for k in 0..cfg.samples {
                out.push(Task::Random {
                    algebra: algebra.to_string(),
                    label: format!("{id}:random-{k:04}"),
                    id,
                    seed: mix(cfg.seed, k as u64),
                });
            }
        }
    }
    if matches!(suite, Suite::All | Suite::Corollaries) {
        out.push(Task::Corollaries { algebra: algebra.to_string() });
        out.push(Task::ClosedForms { algebra: algebra.to_string() });
    }
    if matches!(suite, Suite::All | Suite::Lemmas) {
        out.push(Task::Lemmas { algebra: algebra.to_string() });
    }
}

fn plan_verify(file: &ProblemFile, cfg: &RunConfig) -> Vec<Task> {
    let mut tasks = Vec::new();
    let declared_ok = |id: &IdentityId| {
        cfg.level.is_none_or(|l| id.level == l)
            && match cfg.suite {
                None | Some(Suite::All) => true,
                Some(Suite::Hrr) => id.flavor == Flavor::Hrr,
                Some(Suite::Lefschetz) => id.flavor == Flavor::Lefschetz,
                Some(_) => false,
            }
    };
    for (index, c) in file.checks.iter().enumerate() {
        match c {
            CheckEntry::Identity { identity, .. } if declared_ok(identity) => tasks.push(Task::Declared { index }),
            CheckEntry::Suite { suite, algebra } if cfg.suite.is_none() => {
                let targets = algebra.clone().map_or_else(|| file.suite_targets(), |a| vec![a]);
                for a in targets {
                    suite_tasks(*suite, &a, cfg, &mut tasks);
                }
            }
            _ => {}
        }
    }
    let has_suite_entry = file.checks.iter().any(|c| matches!(c, CheckEntry::Suite { .. }));
    let suite = match cfg.suite {
        Some(s) => Some(s),
        None if file.checks.is_empty() => Some(Suite::All),
        None => None,
    };
    if let Some(s) = suite {
        if cfg.suite.is_some() || !has_suite_entry {
            for a in file.suite_targets() {
                suite_tasks(s, &a, cfg, &mut tasks);
            }
        }
    }
    tasks
}

fn plan_random(file: &ProblemFile, cfg: &RunConfig) -> Vec<Task> {
    let flavor = match cfg.suite {
        Some(Suite::Hrr) => Some(Flavor::Hrr),
        Some(Suite::Lefschetz) => Some(Flavor::Lefschetz),
        _ => None,
    };
    let ids = identities(cfg.level, flavor);
    let mut tasks = Vec::new();
    if ids.is_empty() {
        return tasks;
    }
    for a in file.suite_targets() {
        for k in 0..cfg.samples {
            let id = ids[k % ids.len()];
            tasks.push(Task::Random {
                algebra: a.clone(),
                label: format!("random-{k:04}:{id}"),
                id,
                seed: mix(cfg.seed, k as u64),
            });
        }
    }
    tasks
}

fn outcome(algebra: &str, r: VerificationReport) -> Outcome {
    let severity = if r.pass { Severity::Pass } else { Severity::Fail };
    Outcome { algebra: algebra.to_string(), report: r, severity }
}

fn error_outcome(algebra: &str, check: String, id: Option<IdentityId>, digest: String, e: &Error) -> Outcome {
    Outcome {
        algebra: algebra.to_string(),
        report: VerificationReport::failed(check, id, digest, e),
        severity: Severity::of_error(e),
    }
}

fn batch(algebra: &str, a: &Arc<Algebra>, res: hrrcheck_core::Result<Vec<VerificationReport>>, what: &str) -> Vec<Outcome> {
    match res {
        Ok(rs) => rs
            .into_iter()
            .map(|mut r| {
                r.check = format!("{algebra}:{}", r.check);
                outcome(algebra, r)
            })
            .collect(),
        Err(e) => {
            let digest = inputs_digest(None, a.presentation(), None);
            vec![error_outcome(algebra, format!("{algebra}:{what}"), None, digest, &e)]
        }
    }
}

fn declared_operands(file: &ProblemFile, c: &CheckEntry, a: &Arc<Algebra>) -> Result<(IdentityId, Operands), Error> {
    let CheckEntry::Identity { identity, operands, endos, .. } = c else {
        unreachable!("declared tasks hold identity checks")
    };
    let endo = |k: usize| endos[k].as_ref().map(|e| &file.endos[e]);
    let map = |k: usize| match endo(k) {
        Some(EndoEntry::Map { morphism, .. }) => Some(morphism.clone()),
        _ => None,
    };
    let chain = |k: usize| match endo(k) {
        Some(EndoEntry::Chain { map, .. }) => Some(map.clone()),
        _ => None,
    };
    let homological = identity.version == Version::Homological;
    let bc = |k: usize| {
        file.complexes[&operands[k]]
            .bimodule_complex(file)
            .ok_or_else(|| Error::Validation(format!("\"{}\" is not a bimodule complex", operands[k])))
    };
    let ops = match (identity.level, identity.version.is_hochschild()) {
        (Level::Module, false) => {
            let m = file.modules[&operands[0]].rep.clone();
            let mut n = file.modules[&operands[1]].rep.clone();
            let mut psi = map(1);
            if homological {
                if let Some(moved) = onto_opposite(&n, a) {
                    psi = psi.map(|p| p.retarget(moved.clone(), moved.clone()));
                    n = moved;
                }
            }
            Operands::Modules { m, n, phi: map(0), psi }
        }
        (Level::Module, true) => Operands::Bimodule { m: file.bimodules[&operands[0]].bimodule.clone(), phi: map(0) },
        (Level::Bimodule, _) => Operands::Bimodules {
            m: file.bimodules[&operands[0]].bimodule.clone(),
            n: file.bimodules[&operands[1]].bimodule.clone(),
            phi: map(0),
            psi: map(1),
        },
        (Level::Complex, false) => Operands::Complexes {
            m: file.complexes[&operands[0]].complex.clone(),
            n: file.complexes[&operands[1]].complex.clone(),
            phi: chain(0),
            psi: chain(1),
        },
        (Level::Complex, true) => Operands::BimoduleComplex { m: bc(0)?, phi: chain(0) },
        (Level::BimoduleComplex, _) => Operands::BimoduleComplexes { m: bc(0)?, n: bc(1)?, phi: chain(0), psi: chain(1) },
    };
    Ok((*identity, ops))
}

fn execute(file: &ProblemFile, task: &Task, cfg: &RunConfig, partner: &Arc<Algebra>) -> Vec<Outcome> {
    let opts = cfg.engine();
    match task {
        Task::Declared { index } => {
            let c = &file.checks[*index];
            let CheckEntry::Identity { name, identity, algebra, .. } = c else { return Vec::new() };
            let a = &file.algebras[algebra].algebra;
            let label = format!("{algebra}:{identity}:{}", name.clone().unwrap_or_else(|| format!("check-{index:03}")));
            let started = Instant::now();
            let res = declared_operands(file, c, a).map_err(|e| (e, None)).and_then(|(id, ops)| {
                let d = inputs_digest(Some(&id), a.presentation(), Some(&ops));
                verify(id, a, &ops, &opts).map_err(|e| (e, Some(d)))
            });
            vec![finish(algebra, label, Some(*identity), res, a, started)]
        }
        Task::Random { algebra, label, id, seed } => {
            let a = &file.algebras[algebra].algebra;
            let started = Instant::now();
            let res = random_operands(id, a, *seed).map_err(|e| (e, None)).and_then(|ops| {
                let d = inputs_digest(Some(id), a.presentation(), Some(&ops));
                verify(*id, a, &ops, &opts).map_err(|e| (e, Some(d)))
            });
            vec![finish(algebra, format!("{algebra}:{label}"), Some(*id), res, a, started)]
        }
        Task::Corollaries { algebra } => {
            let a = &file.algebras[algebra].algebra;
            batch(algebra, a, verify_corollaries(a, &opts), "corollaries")
        }
        Task::ClosedForms { algebra } => {
            let a = &file.algebras[algebra].algebra;
            batch(algebra, a, verify_closed_forms(a, cfg.samples, cfg.seed, &opts), "closed-forms")
        }
        Task::Lemmas { algebra } => {
            let a = &file.algebras[algebra].algebra;
            batch(algebra, a, verify_lemma_suite(a, partner, cfg.samples, cfg.seed, &opts), "lemmas")
        }
    }
}

fn finish(
    algebra: &str,
    label: String,
    id: Option<IdentityId>,
    res: Result<VerificationReport, (Error, Option<String>)>,
    a: &Arc<Algebra>,
    started: Instant,
) -> Outcome {
    match res {
        Ok(mut r) => {
            r.check = label;
            outcome(algebra, r)
        }
        Err((e, digest)) => {
            let digest = digest.unwrap_or_else(|| inputs_digest(id.as_ref(), a.presentation(), None));
            let mut o = error_outcome(algebra, label, id, digest, &e);
            o.report.elapsed = started.elapsed();
            o
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunResult {
    pub outcomes: Vec<Outcome>,
    pub elapsed: Duration,
}

impl RunResult {
    pub fn worst(&self) -> Severity {
        self.outcomes.iter().map(|o| o.severity).max().unwrap_or(Severity::Pass)
    }

    pub fn exit_code(&self) -> i32 {
        self.worst().exit_code()
    }

    pub fn passed(&self) -> usize {
        self.outcomes.iter().filter(|o| o.report.pass).count()
    }
}

fn run_tasks(file: &ProblemFile, tasks: Vec<Task>, cfg: &RunConfig) -> Result<RunResult, Error> {
    let started = Instant::now();
    let partner = Arc::new(build_algebra(&examples::a2(file.field))?);
    let mut outcomes: Vec<Outcome> =
        tasks.par_iter().flat_map_iter(|t| execute(file, t, cfg, &partner)).collect();
    outcomes.sort_by(|x, y| x.report.check.cmp(&y.report.check));
    Ok(RunResult { outcomes, elapsed: started.elapsed() })
}

/// Runs the checks declared in the file and the requested suites.
pub fn run_verify(file: &ProblemFile, cfg: &RunConfig) -> Result<RunResult, Error> {
    run_tasks(file, plan_verify(file, cfg), cfg)
}

/// `samples` seeded reports per algebra, cycling through the selected identities.
pub fn run_random(file: &ProblemFile, cfg: &RunConfig) -> Result<RunResult, Error> {
    run_tasks(file, plan_random(file, cfg), cfg)
}

fn value_json(v: &Option<Value>) -> Json {
    match v {
        None => Json::Null,
        Some(Value::Int(x)) => json!(x.to_string()),
        Some(Value::Scalar(x)) => json!(x.to_string()),
        Some(Value::IntMatrix(m)) => Json::Array(
            (0..m.rows()).map(|i| Json::Array((0..m.cols()).map(|j| json!(m.get(i, j).to_string())).collect())).collect(),
        ),
        Some(Value::Matrix(m)) => Json::Array(
            (0..m.rows()).map(|i| Json::Array((0..m.cols()).map(|j| json!(m.get(i, j).to_string())).collect())).collect(),
        ),
    }
}

fn millis(d: Duration) -> f64 {
    (d.as_secs_f64() * 1e6).round() / 1e3
}

pub fn render_json(r: &RunResult) -> String {
    let reports: Vec<Json> = r
        .outcomes
        .iter()
        .map(|o| {
            let x = &o.report;
            json!({
                "check": x.check,
                "algebra": o.algebra,
                "identity": x.identity.map(|i| i.to_string()),
                "digest": x.digest,
                "pass": x.pass,
                "lhs": value_json(&x.lhs),
                "rhs": value_json(&x.rhs),
                "lhs_provenance": x.lhs_provenance,
                "rhs_provenance": x.rhs_provenance,
                "diagnosis": x.diagnosis,
                "elapsed_ms": millis(x.elapsed),
            })
        })
        .collect();
    let doc = json!({
        "reports": reports,
        "summary": {
            "total": r.outcomes.len(),
            "passed": r.passed(),
            "failed": r.outcomes.len() - r.passed(),
            "exit_code": r.exit_code(),
            "elapsed_ms": millis(r.elapsed),
        }
    });
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

fn oneline(v: &Option<Value>) -> String {
    match v {
        None => "-".into(),
        Some(v) => v.to_string().split_whitespace().collect::<Vec<_>>().join(" "),
    }
}

pub fn render_text(r: &RunResult) -> String {
    let mut s = String::new();
    for o in &r.outcomes {
        let x = &o.report;
        let tag = if x.pass { "PASS" } else { "FAIL" };
        s.push_str(&format!("{tag}  {}  lhs={}  rhs={}", x.check, oneline(&x.lhs), oneline(&x.rhs)));
        if let Some(d) = &x.diagnosis {
            s.push_str(&format!("  ({d})"));
        }
        s.push('\n');
    }
    s.push_str(&format!(
        "{} checks, {} passed, {} failed in {:.2}s\n",
        r.outcomes.len(),
        r.passed(),
        r.outcomes.len() - r.passed(),
        r.elapsed.as_secs_f64()
    ));
    s
}
