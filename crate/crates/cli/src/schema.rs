//! Problem files: JSON parsing with located diagnostics, validation, canonical emission.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use hrrcheck_core::algebra::{build_algebra, opposite_presentation, Algebra};
use hrrcheck_core::bimodule::{bimodule_algebra, Bimodule};
use hrrcheck_core::complex::{BimoduleComplex, ChainMap, Complex};
use hrrcheck_core::linalg::{FieldSpec, Matrix, Rational, Scalar};
use hrrcheck_core::module::{Morphism, Rep, Representation};
use hrrcheck_core::quiver::{Arrow, Presentation, Quiver, Relation};
use hrrcheck_core::verify::IdentityId;
use hrrcheck_core::Error;

/// A malformed or inconsistent problem file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub location: String,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.location.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.location, self.message)
        }
    }
}

impl std::error::Error for InputError {}

static EMPTY_ARRAY: Value = Value::Array(Vec::new());

type Res<T> = std::result::Result<T, InputError>;

fn err<T>(loc: &str, msg: impl Into<String>) -> Res<T> {
    Err(InputError { location: loc.to_string(), message: msg.into() })
}

fn core_err(loc: &str) -> impl Fn(Error) -> InputError + '_ {
    move |e| InputError { location: loc.to_string(), message: e.to_string() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    All,
    Hrr,
    Lefschetz,
    Corollaries,
    Lemmas,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::All, Suite::Hrr, Suite::Lefschetz, Suite::Corollaries, Suite::Lemmas];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Hrr => "hrr",
            Suite::Lefschetz => "lefschetz",
            Suite::Corollaries => "corollaries",
            Suite::Lemmas => "lemmas",
        }
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL.iter().copied().find(|x| x.name() == s).ok_or_else(|| format!("unknown suite '{s}'"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AlgebraSource {
    Presentation(Presentation),
    OppositeOf(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraEntry {
    pub source: AlgebraSource,
    pub algebra: Arc<Algebra>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModuleEntry {
    pub algebra: String,
    pub rep: Rep,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BimoduleEntry {
    pub left: String,
    pub right: String,
    pub bimodule: Bimodule,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Over {
    Algebra(String),
    Bimodule { left: String, right: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexEntry {
    pub over: Over,
    pub terms: Vec<String>,
    pub complex: Arc<Complex>,
}

impl ComplexEntry {
    pub fn bimodule_complex(&self, file: &ProblemFile) -> Option<BimoduleComplex> {
        match &self.over {
            Over::Bimodule { left, right } => BimoduleComplex::new(
                file.algebras[left].algebra.clone(),
                file.algebras[right].algebra.clone(),
                self.complex.clone(),
            )
            .ok(),
            Over::Algebra(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum EndoEntry {
    Map { of: String, morphism: Morphism },
    Chain { of: String, map: ChainMap },
}

impl EndoEntry {
    pub fn of(&self) -> &str {
        match self {
            EndoEntry::Map { of, .. } | EndoEntry::Chain { of, .. } => of,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CheckEntry {
    Identity {
        name: Option<String>,
        identity: IdentityId,
        algebra: String,
        operands: Vec<String>,
        endos: Vec<Option<String>>,
    },
    Suite {
        suite: Suite,
        algebra: Option<String>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProblemFile {
    pub field: FieldSpec,
    pub algebras: BTreeMap<String, AlgebraEntry>,
    pub modules: BTreeMap<String, ModuleEntry>,
    pub bimodules: BTreeMap<String, BimoduleEntry>,
    pub endos: BTreeMap<String, EndoEntry>,
    pub complexes: BTreeMap<String, ComplexEntry>,
    pub checks: Vec<CheckEntry>,
}

fn as_obj<'a>(v: &'a Value, loc: &str) -> Res<&'a Map<String, Value>> {
    v.as_object().map_or_else(|| err(loc, "expected an object"), Ok)
}

fn as_arr<'a>(v: &'a Value, loc: &str) -> Res<&'a Vec<Value>> {
    v.as_array().map_or_else(|| err(loc, "expected an array"), Ok)
}

fn as_str<'a>(v: &'a Value, loc: &str) -> Res<&'a str> {
    v.as_str().map_or_else(|| err(loc, "expected a string"), Ok)
}

fn as_usize(v: &Value, loc: &str) -> Res<usize> {
    v.as_u64().map_or_else(|| err(loc, "expected a non-negative integer"), |x| Ok(x as usize))
}

fn get<'a>(o: &'a Map<String, Value>, key: &str, loc: &str) -> Res<&'a Value> {
    o.get(key).map_or_else(|| err(loc, format!("missing key \"{key}\"")), Ok)
}

fn only_keys(o: &Map<String, Value>, allowed: &[&str], loc: &str) -> Res<()> {
    for k in o.keys() {
        if !allowed.contains(&k.as_str()) {
            return err(loc, format!("unknown key \"{k}\""));
        }
    }
    Ok(())
}

fn parse_field(v: &Value, loc: &str) -> Res<FieldSpec> {
    match v {
        Value::String(s) if s == "Q" => Ok(FieldSpec::Rationals),
        Value::Object(o) if o.len() == 1 && o.contains_key("Fp") => {
            let p = o["Fp"].as_u64().map_or_else(|| err(loc, "\"Fp\" must be a prime integer"), Ok)?;
            FieldSpec::prime(p).map_err(core_err(loc))
        }
        _ => err(loc, "field must be \"Q\" or {\"Fp\": p}"),
    }
}

fn emit_field(f: FieldSpec) -> Value {
    match f {
        FieldSpec::Rationals => json!("Q"),
        FieldSpec::Prime(p) => json!({ "Fp": p }),
    }
}

/// Parses a field given on the command line: `Q`, `F7` or `7`.
pub fn parse_field_flag(s: &str) -> Result<FieldSpec, String> {
    if s == "Q" {
        return Ok(FieldSpec::Rationals);
    }
    let digits = s.strip_prefix('F').unwrap_or(s);
    let p: u64 = digits.parse().map_err(|_| format!("unknown field '{s}'"))?;
    FieldSpec::prime(p).map_err(|e| e.to_string())
}

fn parse_scalar(v: &Value, f: FieldSpec, loc: &str) -> Res<Scalar> {
    let r = match v {
        Value::String(s) => Rational::from_str(s).map_err(|e| InputError { location: loc.into(), message: e.to_string() })?,
        Value::Number(n) if n.is_i64() => Rational::from_i64(n.as_i64().unwrap_or_default()),
        _ => return err(loc, "scalars are \"p/q\" strings or integers"),
    };
    f.from_rational(&r).map_err(core_err(loc))
}

fn parse_matrix(v: &Value, f: FieldSpec, rows: usize, cols: usize, loc: &str) -> Res<Matrix> {
    let rs = as_arr(v, loc)?;
    if rs.len() != rows {
        return err(loc, format!("expected {rows} rows, found {}", rs.len()));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for (i, r) in rs.iter().enumerate() {
        let rloc = format!("{loc}[{i}]");
        let cs = as_arr(r, &rloc)?;
        if cs.len() != cols {
            return err(&rloc, format!("expected {cols} entries, found {}", cs.len()));
        }
        for (j, x) in cs.iter().enumerate() {
            data.push(parse_scalar(x, f, &format!("{rloc}[{j}]"))?);
        }
    }
    Ok(Matrix::from_vec(f, rows, cols, data))
}

fn emit_matrix(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array((0..m.cols()).map(|j| json!(m.get(i, j).to_string())).collect()))
            .collect(),
    )
}

fn parse_presentation(o: &Map<String, Value>, f: FieldSpec, loc: &str) -> Res<Presentation> {
    only_keys(o, &["vertices", "arrows", "relations"], loc)?;
    let n = as_usize(get(o, "vertices", loc)?, &format!("{loc}.vertices"))?;
    let mut arrows = Vec::new();
    let aloc = format!("{loc}.arrows");
    for (k, a) in as_arr(get(o, "arrows", loc).unwrap_or(&EMPTY_ARRAY), &aloc)?.iter().enumerate() {
        let l = format!("{aloc}[{k}]");
        let ao = as_obj(a, &l)?;
        only_keys(ao, &["name", "source", "target"], &l)?;
        let name = as_str(get(ao, "name", &l)?, &format!("{l}.name"))?.to_string();
        let s = as_usize(get(ao, "source", &l)?, &format!("{l}.source"))?;
        let t = as_usize(get(ao, "target", &l)?, &format!("{l}.target"))?;
        if s == 0 || t == 0 || s > n || t > n {
            return err(&l, format!("arrow \"{name}\" endpoints must lie in 1..={n}"));
        }
        arrows.push(Arrow { name, source: s - 1, target: t - 1 });
    }
    let quiver = Quiver::new(n, arrows).map_err(core_err(&aloc))?;
    let rloc = format!("{loc}.relations");
    let mut relations = Vec::new();
    for (k, r) in as_arr(o.get("relations").unwrap_or(&EMPTY_ARRAY), &rloc)?.iter().enumerate() {
        let l = format!("{rloc}[{k}]");
        let mut terms = Vec::new();
        for (t, term) in as_arr(r, &l)?.iter().enumerate() {
            let tl = format!("{l}[{t}]");
            let to = as_obj(term, &tl)?;
            only_keys(to, &["coeff", "path"], &tl)?;
            let c = parse_scalar(get(to, "coeff", &tl)?, f, &format!("{tl}.coeff"))?;
            let names = as_arr(get(to, "path", &tl)?, &format!("{tl}.path"))?
                .iter()
                .map(|x| as_str(x, &format!("{tl}.path")).map(str::to_string))
                .collect::<Res<Vec<_>>>()?;
            let p = quiver.path_from_names(&names).map_err(core_err(&tl))?;
            terms.push((c, p));
        }
        relations.push(Relation::new(terms));
    }
    Presentation::new(f, quiver, relations).map_err(core_err(loc))
}

fn emit_presentation(p: &Presentation) -> Value {
    let arrows: Vec<Value> = p
        .quiver
        .arrows
        .iter()
        .map(|a| json!({ "name": a.name, "source": a.source + 1, "target": a.target + 1 }))
        .collect();
    let relations: Vec<Value> = p
        .relations
        .iter()
        .map(|r| {
            Value::Array(
                r.terms
                    .iter()
                    .map(|(c, path)| json!({ "coeff": c.to_string(), "path": p.quiver.path_names(path) }))
                    .collect(),
            )
        })
        .collect();
    json!({ "vertices": p.quiver.vertices, "arrows": arrows, "relations": relations })
}

fn parse_rep(o: &Map<String, Value>, a: &Arc<Algebra>, loc: &str) -> Res<Rep> {
    let f = a.field();
    let dloc = format!("{loc}.dims");
    let dims = as_arr(get(o, "dims", loc)?, &dloc)?
        .iter()
        .enumerate()
        .map(|(k, d)| as_usize(d, &format!("{dloc}[{k}]")))
        .collect::<Res<Vec<_>>>()?;
    if dims.len() != a.n() {
        return err(&dloc, format!("expected {} dimensions, found {}", a.n(), dims.len()));
    }
    let aloc = format!("{loc}.actions");
    let empty = Map::new();
    let acts = match o.get("actions") {
        Some(v) => as_obj(v, &aloc)?,
        None => &empty,
    };
    for k in acts.keys() {
        if a.quiver().arrow_index(k).is_none() {
            return err(&aloc, format!("unknown arrow \"{k}\""));
        }
    }
    let mut actions = Vec::with_capacity(a.arrow_count());
    for k in 0..a.arrow_count() {
        let ar = a.arrow(k);
        let (r, c) = (dims[ar.source], dims[ar.target]);
        actions.push(match acts.get(&ar.name) {
            Some(v) => parse_matrix(v, f, r, c, &format!("{aloc}.{}", ar.name))?,
            None => Matrix::zeros(f, r, c),
        });
    }
    Representation::new(a.clone(), dims, actions).map_err(core_err(loc))
}

fn emit_rep(m: &Rep) -> Map<String, Value> {
    let a = m.algebra();
    let mut actions = Map::new();
    for k in 0..a.arrow_count() {
        actions.insert(a.arrow(k).name.clone(), emit_matrix(m.action(k)));
    }
    let mut o = Map::new();
    o.insert("dims".into(), json!(m.dims()));
    o.insert("actions".into(), Value::Object(actions));
    o
}

fn parse_vertex_maps(v: &Value, s: &Rep, t: &Rep, loc: &str) -> Res<Morphism> {
    let vs = as_arr(v, loc)?;
    let n = s.algebra().n();
    if vs.len() != n {
        return err(loc, format!("expected one matrix per vertex ({n}), found {}", vs.len()));
    }
    let maps = vs
        .iter()
        .enumerate()
        .map(|(k, x)| parse_matrix(x, s.field(), s.dim_at(k), t.dim_at(k), &format!("{loc}[{k}]")))
        .collect::<Res<Vec<_>>>()?;
    Morphism::new(s.clone(), t.clone(), maps).map_err(core_err(loc))
}

fn emit_vertex_maps(m: &Morphism) -> Value {
    Value::Array(m.maps().iter().map(emit_matrix).collect())
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, name: &str, what: &str, loc: &str) -> Res<&'a T> {
    map.get(name).map_or_else(|| err(loc, format!("unknown {what} \"{name}\"")), Ok)
}

impl ProblemFile {
    /// Parses and validates problem text. `field_override` replaces the declared field.
    pub fn parse(text: &str, field_override: Option<FieldSpec>) -> Res<ProblemFile> {
        let root: Value = serde_json::from_str(text).map_err(|e| InputError {
            location: format!("line {} column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        Self::from_value(&root, field_override)
    }

    pub fn from_value(root: &Value, field_override: Option<FieldSpec>) -> Res<ProblemFile> {
        let o = as_obj(root, "top level")?;
        only_keys(o, &["field", "algebras", "modules", "bimodules", "endos", "complexes", "checks"], "top level")?;
        let field = match field_override {
            Some(f) => f,
            None => parse_field(get(o, "field", "top level")?, "field")?,
        };
        let empty = Map::new();
        let section = |key: &str| -> Res<&Map<String, Value>> {
            match o.get(key) {
                Some(v) => as_obj(v, key),
                None => Ok(&empty),
            }
        };

        let mut algebras = BTreeMap::new();
        let alg_sec = section("algebras")?;
        for (name, v) in alg_sec {
            let loc = format!("algebras.{name}");
            let ao = as_obj(v, &loc)?;
            if ao.contains_key("opposite_of") {
                continue;
            }
            let p = parse_presentation(ao, field, &loc)?;
            let algebra = Arc::new(build_algebra(&p).map_err(core_err(&loc))?);
            algebras.insert(name.clone(), AlgebraEntry { source: AlgebraSource::Presentation(p), algebra });
        }
        for (name, v) in alg_sec {
            let loc = format!("algebras.{name}");
            let ao = as_obj(v, &loc)?;
            let Some(base) = ao.get("opposite_of") else { continue };
            only_keys(ao, &["opposite_of"], &loc)?;
            let base = as_str(base, &format!("{loc}.opposite_of"))?;
            let b = lookup(&algebras, base, "algebra (opposites of opposites are not supported)", &loc)?;
            let op = hrrcheck_core::algebra::opposite_algebra(&b.algebra).map_err(core_err(&loc))?;
            algebras.insert(name.clone(), AlgebraEntry { source: AlgebraSource::OppositeOf(base.to_string()), algebra: op });
        }

        let mut modules = BTreeMap::new();
        for (name, v) in section("modules")? {
            let loc = format!("modules.{name}");
            let mo = as_obj(v, &loc)?;
            only_keys(mo, &["algebra", "dims", "actions"], &loc)?;
            let an = as_str(get(mo, "algebra", &loc)?, &format!("{loc}.algebra"))?;
            let a = lookup(&algebras, an, "algebra", &loc)?;
            let rep = parse_rep(mo, &a.algebra, &loc)?;
            modules.insert(name.clone(), ModuleEntry { algebra: an.to_string(), rep });
        }

        let mut bimodules = BTreeMap::new();
        for (name, v) in section("bimodules")? {
            let loc = format!("bimodules.{name}");
            if modules.contains_key(name) {
                return err(&loc, "name already used by a module");
            }
            let bo = as_obj(v, &loc)?;
            only_keys(bo, &["left_algebra", "right_algebra", "dims", "actions"], &loc)?;
            let ln = as_str(get(bo, "left_algebra", &loc)?, &format!("{loc}.left_algebra"))?;
            let rn = as_str(get(bo, "right_algebra", &loc)?, &format!("{loc}.right_algebra"))?;
            let l = lookup(&algebras, ln, "algebra", &loc)?.algebra.clone();
            let r = lookup(&algebras, rn, "algebra", &loc)?.algebra.clone();
            let env = bimodule_algebra(&l, &r).map_err(core_err(&loc))?;
            let rep = parse_rep(bo, &env, &loc)?;
            let bimodule = Bimodule::new(l, r, rep).map_err(core_err(&loc))?;
            bimodules.insert(name.clone(), BimoduleEntry { left: ln.into(), right: rn.into(), bimodule });
        }

        let mut complexes = BTreeMap::new();
        for (name, v) in section("complexes")? {
            let loc = format!("complexes.{name}");
            if modules.contains_key(name) || bimodules.contains_key(name) {
                return err(&loc, "name already used by a module or bimodule");
            }
            let co = as_obj(v, &loc)?;
            only_keys(co, &["algebra", "left_algebra", "right_algebra", "lo", "terms", "differentials"], &loc)?;
            let lo = get(co, "lo", &loc)?.as_i64().map_or_else(|| err(&format!("{loc}.lo"), "expected an integer"), Ok)?;
            let tloc = format!("{loc}.terms");
            let term_names = as_arr(get(co, "terms", &loc)?, &tloc)?
                .iter()
                .map(|x| as_str(x, &tloc).map(str::to_string))
                .collect::<Res<Vec<_>>>()?;
            if term_names.is_empty() {
                return err(&tloc, "a complex needs at least one term");
            }
            let (over, alg, terms) = if let Some(an) = co.get("algebra") {
                let an = as_str(an, &format!("{loc}.algebra"))?;
                let a = lookup(&algebras, an, "algebra", &loc)?.algebra.clone();
                let terms = term_names
                    .iter()
                    .map(|t| {
                        let m = lookup(&modules, t, "module", &tloc)?;
                        if m.algebra != an && !m.rep.algebra().same_as(&a) {
                            return err(&tloc, format!("module \"{t}\" is not over \"{an}\""));
                        }
                        Ok(m.rep.clone())
                    })
                    .collect::<Res<Vec<_>>>()?;
                (Over::Algebra(an.to_string()), a, terms)
            } else {
                let ln = as_str(get(co, "left_algebra", &loc)?, &format!("{loc}.left_algebra"))?;
                let rn = as_str(get(co, "right_algebra", &loc)?, &format!("{loc}.right_algebra"))?;
                let l = lookup(&algebras, ln, "algebra", &loc)?.algebra.clone();
                let r = lookup(&algebras, rn, "algebra", &loc)?.algebra.clone();
                let env = bimodule_algebra(&l, &r).map_err(core_err(&loc))?;
                let terms = term_names
                    .iter()
                    .map(|t| {
                        let b = lookup(&bimodules, t, "bimodule", &tloc)?;
                        if !b.bimodule.left().same_as(&l) || !b.bimodule.right().same_as(&r) {
                            return err(&tloc, format!("bimodule \"{t}\" is not a {ln}-{rn}-bimodule"));
                        }
                        Ok(b.bimodule.module().clone())
                    })
                    .collect::<Res<Vec<_>>>()?;
                (Over::Bimodule { left: ln.into(), right: rn.into() }, env, terms)
            };
            let dloc = format!("{loc}.differentials");
            let dv = as_arr(co.get("differentials").unwrap_or(&EMPTY_ARRAY), &dloc)?;
            if dv.len() + 1 != terms.len() {
                return err(&dloc, format!("expected {} differentials, found {}", terms.len() - 1, dv.len()));
            }
            let diffs = dv
                .iter()
                .enumerate()
                .map(|(k, x)| parse_vertex_maps(x, &terms[k], &terms[k + 1], &format!("{dloc}[{k}]")))
                .collect::<Res<Vec<_>>>()?;
            let complex = Complex::new(alg, lo, terms, diffs).map_err(core_err(&loc))?;
            complexes.insert(name.clone(), ComplexEntry { over, terms: term_names, complex: Arc::new(complex) });
        }

        let mut endos = BTreeMap::new();
        for (name, v) in section("endos")? {
            let loc = format!("endos.{name}");
            let eo = as_obj(v, &loc)?;
            only_keys(eo, &["of", "maps"], &loc)?;
            let of = as_str(get(eo, "of", &loc)?, &format!("{loc}.of"))?.to_string();
            let mloc = format!("{loc}.maps");
            let maps = get(eo, "maps", &loc)?;
            let entry = if let Some(m) = modules.get(&of) {
                EndoEntry::Map { morphism: parse_vertex_maps(maps, &m.rep, &m.rep, &mloc)?, of }
            } else if let Some(b) = bimodules.get(&of) {
                let r = b.bimodule.module();
                EndoEntry::Map { morphism: parse_vertex_maps(maps, r, r, &mloc)?, of }
            } else if let Some(c) = complexes.get(&of) {
                let c = &c.complex;
                let per_degree = as_arr(maps, &mloc)?;
                let count = c.terms().len();
                if per_degree.len() != count {
                    return err(&mloc, format!("expected maps for {count} degrees, found {}", per_degree.len()));
                }
                let ms = per_degree
                    .iter()
                    .enumerate()
                    .map(|(k, x)| {
                        let t = &c.terms()[k];
                        parse_vertex_maps(x, t, t, &format!("{mloc}[{k}]"))
                    })
                    .collect::<Res<Vec<_>>>()?;
                let map = ChainMap::new(c.clone(), c.clone(), c.lo(), ms).map_err(core_err(&loc))?;
                EndoEntry::Chain { of, map }
            } else {
                return err(&format!("{loc}.of"), format!("unknown module, bimodule or complex \"{of}\""));
            };
            endos.insert(name.clone(), entry);
        }

        let mut file = ProblemFile { field, algebras, modules, bimodules, endos, complexes, checks: Vec::new() };
        if let Some(cs) = o.get("checks") {
            for (k, c) in as_arr(cs, "checks")?.iter().enumerate() {
                let check = file.parse_check(c, &format!("checks[{k}]"))?;
                file.checks.push(check);
            }
        }
        Ok(file)
    }

    fn parse_check(&self, v: &Value, loc: &str) -> Res<CheckEntry> {
        let co = as_obj(v, loc)?;
        if let Some(s) = co.get("suite") {
            only_keys(co, &["suite", "algebra"], loc)?;
            let suite = as_str(s, &format!("{loc}.suite"))?.parse::<Suite>().map_err(|m| InputError {
                location: format!("{loc}.suite"),
                message: m,
            })?;
            let algebra = match co.get("algebra") {
                Some(a) => {
                    let a = as_str(a, &format!("{loc}.algebra"))?;
                    lookup(&self.algebras, a, "algebra", loc)?;
                    Some(a.to_string())
                }
                None => None,
            };
            return Ok(CheckEntry::Suite { suite, algebra });
        }
        only_keys(co, &["name", "identity", "algebra", "operands", "endos"], loc)?;
        let name = match co.get("name") {
            Some(n) => Some(as_str(n, &format!("{loc}.name"))?.to_string()),
            None => None,
        };
        let identity: IdentityId =
            as_str(get(co, "identity", loc)?, &format!("{loc}.identity"))?.parse().map_err(core_err(loc))?;
        let algebra = as_str(get(co, "algebra", loc)?, &format!("{loc}.algebra"))?.to_string();
        lookup(&self.algebras, &algebra, "algebra", loc)?;
        let oloc = format!("{loc}.operands");
        let operands = as_arr(get(co, "operands", loc)?, &oloc)?
            .iter()
            .map(|x| as_str(x, &oloc).map(str::to_string))
            .collect::<Res<Vec<_>>>()?;
        let want = if identity.version.is_hochschild() { 1 } else { 2 };
        if operands.len() != want {
            return err(&oloc, format!("{identity} takes {want} operand(s), found {}", operands.len()));
        }
        for o in &operands {
            let kind_ok = match (identity.level, identity.version.is_hochschild()) {
                (hrrcheck_core::verify::Level::Module, false) => self.modules.contains_key(o),
                (hrrcheck_core::verify::Level::Module, true) | (hrrcheck_core::verify::Level::Bimodule, _) => {
                    self.bimodules.contains_key(o)
                }
                (hrrcheck_core::verify::Level::Complex, false) => {
                    self.complexes.get(o).is_some_and(|c| matches!(c.over, Over::Algebra(_)))
                }
                _ => self.complexes.get(o).is_some_and(|c| matches!(c.over, Over::Bimodule { .. })),
            };
            if !kind_ok {
                return err(&oloc, format!("\"{o}\" is not a valid operand for {identity}"));
            }
        }
        let eloc = format!("{loc}.endos");
        let endos = match co.get("endos") {
            None => vec![None; operands.len()],
            Some(v) => {
                let es = as_arr(v, &eloc)?;
                if es.len() != operands.len() {
                    return err(&eloc, "one entry (name or null) per operand is required");
                }
                es.iter()
                    .zip(&operands)
                    .map(|(e, o)| match e {
                        Value::Null => Ok(None),
                        _ => {
                            let en = as_str(e, &eloc)?;
                            let entry = lookup(&self.endos, en, "endomorphism", &eloc)?;
                            if entry.of() != o {
                                return err(&eloc, format!("\"{en}\" is not an endomorphism of \"{o}\""));
                            }
                            Ok(Some(en.to_string()))
                        }
                    })
                    .collect::<Res<Vec<_>>>()?
            }
        };
        Ok(CheckEntry::Identity { name, identity, algebra, operands, endos })
    }

    /// Canonical JSON: sorted keys, every action and map written out, scalars as strings.
    pub fn emit(&self) -> Value {
        let mut algebras = Map::new();
        for (name, a) in &self.algebras {
            algebras.insert(
                name.clone(),
                match &a.source {
                    AlgebraSource::Presentation(p) => emit_presentation(p),
                    AlgebraSource::OppositeOf(b) => json!({ "opposite_of": b }),
                },
            );
        }
        let mut modules = Map::new();
        for (name, m) in &self.modules {
            let mut o = emit_rep(&m.rep);
            o.insert("algebra".into(), json!(m.algebra));
            modules.insert(name.clone(), Value::Object(o));
        }
        let mut bimodules = Map::new();
        for (name, b) in &self.bimodules {
            let mut o = emit_rep(b.bimodule.module());
            o.insert("left_algebra".into(), json!(b.left));
            o.insert("right_algebra".into(), json!(b.right));
            bimodules.insert(name.clone(), Value::Object(o));
        }
        let mut complexes = Map::new();
        for (name, c) in &self.complexes {
            let mut o = Map::new();
            match &c.over {
                Over::Algebra(a) => {
                    o.insert("algebra".into(), json!(a));
                }
                Over::Bimodule { left, right } => {
                    o.insert("left_algebra".into(), json!(left));
                    o.insert("right_algebra".into(), json!(right));
                }
            }
            o.insert("lo".into(), json!(c.complex.lo()));
            o.insert("terms".into(), json!(c.terms));
            let diffs: Vec<Value> = (c.complex.lo()..c.complex.hi()).map(|l| emit_vertex_maps(&c.complex.diff(l))).collect();
            o.insert("differentials".into(), Value::Array(diffs));
            complexes.insert(name.clone(), Value::Object(o));
        }
        let mut endos = Map::new();
        for (name, e) in &self.endos {
            let maps = match e {
                EndoEntry::Map { morphism, .. } => emit_vertex_maps(morphism),
                EndoEntry::Chain { map, .. } => {
                    let c = map.source();
                    Value::Array((c.lo()..=c.hi()).map(|l| emit_vertex_maps(&map.map(l))).collect())
                }
            };
            endos.insert(name.clone(), json!({ "of": e.of(), "maps": maps }));
        }
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| match c {
                CheckEntry::Suite { suite, algebra } => {
                    let mut o = Map::new();
                    o.insert("suite".into(), json!(suite.name()));
                    if let Some(a) = algebra {
                        o.insert("algebra".into(), json!(a));
                    }
                    Value::Object(o)
                }
                CheckEntry::Identity { name, identity, algebra, operands, endos } => {
                    let mut o = Map::new();
                    if let Some(n) = name {
                        o.insert("name".into(), json!(n));
                    }
                    o.insert("identity".into(), json!(identity.to_string()));
                    o.insert("algebra".into(), json!(algebra));
                    o.insert("operands".into(), json!(operands));
                    o.insert("endos".into(), json!(endos));
                    Value::Object(o)
                }
            })
            .collect();
        json!({
            "field": emit_field(self.field),
            "algebras": algebras,
            "modules": modules,
            "bimodules": bimodules,
            "complexes": complexes,
            "endos": endos,
            "checks": checks,
        })
    }

    pub fn emit_string(&self) -> String {
        serde_json::to_string_pretty(&self.emit()).expect("serializable") + "\n"
    }

    /// Algebras that suites run on: those given by a presentation.
    pub fn suite_targets(&self) -> Vec<String> {
        self.algebras
            .iter()
            .filter(|(_, a)| matches!(a.source, AlgebraSource::Presentation(_)))
            .map(|(n, _)| n.clone())
            .collect()
    }
}

/// A module over an algebra with the same presentation as `A^op`, moved onto the canonical
/// opposite handle so the engine accepts it.
pub fn onto_opposite(m: &Rep, a: &Algebra) -> Option<Rep> {
    let op = hrrcheck_core::algebra::opposite_algebra(a).ok()?;
    if m.algebra().same_as(&op) {
        return Some(m.clone());
    }
    if m.algebra().presentation().canonical() == opposite_presentation(a.presentation()).canonical() {
        return Representation::new(op, m.dims().to_vec(), m.actions().to_vec()).ok();
    }
    None
}
