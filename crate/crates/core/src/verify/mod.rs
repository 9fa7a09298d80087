//! Both sides of the Euler characteristic and trace identities, compared exactly.
//!
//! The left side always comes from the homological engine (resolutions and derived
//! functors); the right side only from dimension/trace data and the Cartan matrix.

mod closed_forms;
mod corpus;
mod lemmas;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use sha2::{Digest, Sha256};

pub use closed_forms::{
    chern_character, chern_character_module, hattori_stallings_trace, shklyarov_pairing_matrix, verify_closed_forms,
};
pub use corpus::{partner_algebras, random_operands};
pub use lemmas::verify_lemma_suite;

use crate::algebra::{opposite_algebra, Algebra, RingelFormData};
use crate::bimodule::{regular_bimodule, Bimodule};
use crate::complex::{BimoduleComplex, ChainMap, Complex};
use crate::error::{Error, Result};
use crate::homological::{
    enveloping_global_dimension, ext_complex_data, ext_data, global_dimension, hochschild_cohomology_complex_data,
    hochschild_cohomology_data, hochschild_homology_complex_data, hochschild_homology_data, tor_complex_data,
    tor_data, DerivedTraceData, EngineOptions,
};
use crate::linalg::{FieldSpec, IntMatrix, Matrix, Scalar};
use crate::module::{Morphism, Rep};
use crate::quiver::Presentation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    Module,
    Bimodule,
    Complex,
    BimoduleComplex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Version {
    Cohomological,
    Homological,
    HochschildCohomological,
    HochschildHomological,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    Hrr,
    Lefschetz,
}

impl Level {
    pub const ALL: [Level; 4] = [Level::Module, Level::Bimodule, Level::Complex, Level::BimoduleComplex];

    pub fn name(self) -> &'static str {
        match self {
            Level::Module => "module",
            Level::Bimodule => "bimodule",
            Level::Complex => "complex",
            Level::BimoduleComplex => "bimodule-complex",
        }
    }

    /// Whether the identities at this level concern bimodules with separate side algebras.
    pub fn is_bimodule(self) -> bool {
        matches!(self, Level::Bimodule | Level::BimoduleComplex)
    }

    pub fn is_complex(self) -> bool {
        matches!(self, Level::Complex | Level::BimoduleComplex)
    }
}

impl Version {
    pub const ALL: [Version; 4] = [
        Version::Cohomological,
        Version::Homological,
        Version::HochschildCohomological,
        Version::HochschildHomological,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Version::Cohomological => "cohomological",
            Version::Homological => "homological",
            Version::HochschildCohomological => "hochschild-cohomological",
            Version::HochschildHomological => "hochschild-homological",
        }
    }

    pub fn is_hochschild(self) -> bool {
        matches!(self, Version::HochschildCohomological | Version::HochschildHomological)
    }
}

impl Flavor {
    pub const ALL: [Flavor; 2] = [Flavor::Hrr, Flavor::Lefschetz];

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Hrr => "hrr",
            Flavor::Lefschetz => "lefschetz",
        }
    }
}

macro_rules! parse_by_name {
    ($t:ty) => {
        impl FromStr for $t {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                <$t>::ALL
                    .iter()
                    .copied()
                    .find(|x| x.name() == s)
                    .ok_or_else(|| Error::Validation(format!("unknown {} '{s}'", stringify!($t).to_lowercase())))
            }
        }
    };
}

parse_by_name!(Level);
parse_by_name!(Version);
parse_by_name!(Flavor);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdentityId {
    pub level: Level,
    pub version: Version,
    pub flavor: Flavor,
}

impl IdentityId {
    /// Hochschild versions exist only at the module and complex levels.
    pub fn new(level: Level, version: Version, flavor: Flavor) -> Result<Self> {
        if level.is_bimodule() && version.is_hochschild() {
            return Err(Error::Validation(format!("no {} identity at the {} level", version.name(), level.name())));
        }
        Ok(IdentityId { level, version, flavor })
    }

    /// All 24 identities in canonical order.
    pub fn all() -> Vec<IdentityId> {
        let mut out = Vec::new();
        for level in Level::ALL {
            for version in Version::ALL {
                for flavor in Flavor::ALL {
                    if let Ok(id) = IdentityId::new(level, version, flavor) {
                        out.push(id);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}/{}", self.level.name(), self.version.name(), self.flavor.name())
    }
}

impl FromStr for IdentityId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split('/').collect();
        if parts.len() != 3 {
            return Err(Error::Validation(format!("identity '{s}' is not level/version/flavor")));
        }
        IdentityId::new(parts[0].parse()?, parts[1].parse()?, parts[2].parse()?)
    }
}

/// A compared quantity: integers for HRR identities, field elements for Lefschetz ones.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(BigInt),
    Scalar(Scalar),
    IntMatrix(IntMatrix),
    Matrix(Matrix),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(v) => write!(f, "{v}"),
            Value::Scalar(v) => write!(f, "{v}"),
            Value::IntMatrix(m) => write!(f, "{m}"),
            Value::Matrix(m) => write!(f, "{m}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub check: String,
    pub identity: Option<IdentityId>,
    pub digest: String,
    pub lhs: Option<Value>,
    pub rhs: Option<Value>,
    pub pass: bool,
    pub elapsed: Duration,
    pub lhs_provenance: String,
    pub rhs_provenance: String,
    pub diagnosis: Option<String>,
}

impl VerificationReport {
    pub fn compare(
        check: impl Into<String>,
        identity: Option<IdentityId>,
        digest: String,
        lhs: Value,
        rhs: Value,
        provenance: (&str, &str),
        elapsed: Duration,
    ) -> Self {
        let pass = lhs == rhs;
        VerificationReport {
            check: check.into(),
            identity,
            digest,
            lhs: Some(lhs),
            rhs: Some(rhs),
            pass,
            elapsed,
            lhs_provenance: provenance.0.into(),
            rhs_provenance: provenance.1.into(),
            diagnosis: None,
        }
    }

    /// A failed report carrying an engine or input error.
    pub fn failed(check: impl Into<String>, identity: Option<IdentityId>, digest: String, err: &Error) -> Self {
        VerificationReport {
            check: check.into(),
            identity,
            digest,
            lhs: None,
            rhs: None,
            pass: false,
            elapsed: Duration::ZERO,
            lhs_provenance: String::new(),
            rhs_provenance: String::new(),
            diagnosis: Some(err.to_string()),
        }
    }

    pub fn labelled(mut self, label: &str) -> Self {
        if !label.is_empty() {
            self.check = format!("{}:{}", self.check, label);
        }
        self
    }
}

/// Inputs of one identity. Missing endomorphisms default to identities for Lefschetz checks.
#[derive(Debug, Clone)]
pub enum Operands {
    /// Right modules `M`, `N` (cohomological) or `M` right and `N` over `A^op` (homological).
    Modules { m: Rep, n: Rep, phi: Option<Morphism>, psi: Option<Morphism> },
    /// An A-A-bimodule for the Hochschild versions.
    Bimodule { m: Bimodule, phi: Option<Morphism> },
    /// `M` B-A and `N` C-A (cohomological) or `N` A-C (homological).
    Bimodules { m: Bimodule, n: Bimodule, phi: Option<Morphism>, psi: Option<Morphism> },
    Complexes { m: Arc<Complex>, n: Arc<Complex>, phi: Option<ChainMap>, psi: Option<ChainMap> },
    BimoduleComplex { m: BimoduleComplex, phi: Option<ChainMap> },
    BimoduleComplexes { m: BimoduleComplex, n: BimoduleComplex, phi: Option<ChainMap>, psi: Option<ChainMap> },
}

fn rep_text(out: &mut String, m: &Rep) {
    out.push_str(&format!("{:?}|{:?};", m.dims(), m.actions()));
}

fn morphism_text(out: &mut String, f: Option<&Morphism>) {
    match f {
        Some(f) => out.push_str(&format!("{:?};", f.maps())),
        None => out.push_str("id;"),
    }
}

fn complex_text(out: &mut String, c: &Complex) {
    out.push_str(&format!("lo={};", c.lo()));
    for t in c.terms() {
        rep_text(out, t);
    }
    for l in c.lo()..c.hi() {
        out.push_str(&format!("{:?};", c.diff(l).maps()));
    }
}

fn chain_text(out: &mut String, f: Option<&ChainMap>) {
    match f {
        Some(f) => {
            let c = f.source();
            for l in c.lo()..=c.hi() {
                out.push_str(&format!("{:?};", f.map(l).maps()));
            }
        }
        None => out.push_str("id;"),
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// SHA-256 of a canonical text rendering of the presentation and operands.
pub fn inputs_digest(id: Option<&IdentityId>, p: &Presentation, ops: Option<&Operands>) -> String {
    let mut s = format!("{}|{:?}|", id.map(|i| i.to_string()).unwrap_or_default(), p);
    if let Some(ops) = ops {
        match ops {
            Operands::Modules { m, n, phi, psi } => {
                rep_text(&mut s, m);
                rep_text(&mut s, n);
                morphism_text(&mut s, phi.as_ref());
                morphism_text(&mut s, psi.as_ref());
            }
            Operands::Bimodule { m, phi } => {
                rep_text(&mut s, m.module());
                morphism_text(&mut s, phi.as_ref());
            }
            Operands::Bimodules { m, n, phi, psi } => {
                s.push_str(&format!("{:?}|{:?}|", m.left().presentation(), n.left().presentation()));
                rep_text(&mut s, m.module());
                rep_text(&mut s, n.module());
                morphism_text(&mut s, phi.as_ref());
                morphism_text(&mut s, psi.as_ref());
            }
            Operands::Complexes { m, n, phi, psi } => {
                complex_text(&mut s, m);
                complex_text(&mut s, n);
                chain_text(&mut s, phi.as_ref());
                chain_text(&mut s, psi.as_ref());
            }
            Operands::BimoduleComplex { m, phi } => {
                complex_text(&mut s, m.complex());
                chain_text(&mut s, phi.as_ref());
            }
            Operands::BimoduleComplexes { m, n, phi, psi } => {
                s.push_str(&format!("{:?}|{:?}|", m.left().presentation(), n.left().presentation()));
                complex_text(&mut s, m.complex());
                complex_text(&mut s, n.complex());
                chain_text(&mut s, phi.as_ref());
                chain_text(&mut s, psi.as_ref());
            }
        }
    }
    hex(&Sha256::digest(s.as_bytes()))
}

type GldimCache = Mutex<HashMap<Presentation, usize>>;

fn gldim_cache() -> &'static GldimCache {
    static CACHE: OnceLock<GldimCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Unimodular Cartan matrix and finite global dimension within `cap`.
pub fn preflight(a: &Arc<Algebra>, cap: usize) -> Result<RingelFormData> {
    let rd = a.ringel_data()?;
    let key = a.presentation().clone();
    let known = gldim_cache().lock().expect("cache poisoned").get(&key).copied();
    let g = match known {
        Some(g) => g,
        None => {
            let g = global_dimension(a, cap)?;
            gldim_cache().lock().expect("cache poisoned").insert(key, g);
            g
        }
    };
    if g > cap {
        return Err(Error::CapExceeded { cap });
    }
    Ok(rd)
}

fn field_matrix(m: &IntMatrix, f: FieldSpec) -> Matrix {
    m.to_matrix(f)
}

fn scalar_or_matrix_int(m: IntMatrix, level: Level) -> Value {
    if level.is_bimodule() {
        Value::IntMatrix(m)
    } else {
        Value::Int(m.get(0, 0).clone())
    }
}

fn scalar_or_matrix(m: Matrix, level: Level) -> Value {
    if level.is_bimodule() {
        Value::Matrix(m)
    } else {
        Value::Scalar(m.get(0, 0).clone())
    }
}

/// Closed-form right side: `x^T C^{-T} y` (cohomological), `x^T C^{-1} y` (homological),
/// `tr(C^{-T} x)` and `tr(C^{-1} x)` (Hochschild). Integer data for HRR, field data for Lefschetz.
pub fn rhs_value(id: &IdentityId, rd: &RingelFormData, field: FieldSpec, x: &Value, y: Option<&Value>) -> Result<Value> {
    let n = rd.cartan.rows();
    let shape_err = || Error::Dimension(format!("operand shapes do not fit {id}"));
    match (id.flavor, x, y) {
        (Flavor::Hrr, Value::IntMatrix(x), y) => {
            if x.rows() != n {
                return Err(shape_err());
            }
            let cinv = &rd.cartan_inverse;
            match (id.version, y) {
                (Version::Cohomological, Some(Value::IntMatrix(y))) if y.rows() == n => {
                    Ok(scalar_or_matrix_int(x.transpose().mul(&cinv.transpose()).mul(y), id.level))
                }
                (Version::Homological, Some(Value::IntMatrix(y))) if y.rows() == n => {
                    Ok(scalar_or_matrix_int(x.transpose().mul(cinv).mul(y), id.level))
                }
                (Version::HochschildCohomological, None) if x.cols() == n => {
                    Ok(Value::Int(cinv.transpose().mul(x).trace()))
                }
                (Version::HochschildHomological, None) if x.cols() == n => Ok(Value::Int(cinv.mul(x).trace())),
                _ => Err(shape_err()),
            }
        }
        (Flavor::Lefschetz, Value::Matrix(x), y) => {
            if x.rows() != n {
                return Err(shape_err());
            }
            let cinv = field_matrix(&rd.cartan_inverse, field);
            match (id.version, y) {
                (Version::Cohomological, Some(Value::Matrix(y))) if y.rows() == n => {
                    Ok(scalar_or_matrix(x.transpose().mul(&cinv.transpose()).mul(y), id.level))
                }
                (Version::Homological, Some(Value::Matrix(y))) if y.rows() == n => {
                    Ok(scalar_or_matrix(x.transpose().mul(&cinv).mul(y), id.level))
                }
                (Version::HochschildCohomological, None) if x.cols() == n => {
                    Ok(Value::Scalar(cinv.transpose().mul(x).trace()))
                }
                (Version::HochschildHomological, None) if x.cols() == n => Ok(Value::Scalar(cinv.mul(x).trace())),
                _ => Err(shape_err()),
            }
        }
        _ => Err(shape_err()),
    }
}

fn mismatch(id: &IdentityId) -> Error {
    Error::Validation(format!("operands do not match identity {id}"))
}

fn pick(d: &DerivedTraceData, lef: bool) -> Result<Value> {
    if lef {
        d.lefschetz
            .clone()
            .map(Value::Scalar)
            .ok_or_else(|| Error::InvariantViolation("missing induced traces".into()))
    } else {
        Ok(Value::Int(d.euler.clone()))
    }
}

fn endo_or_id(m: &Rep, f: &Option<Morphism>) -> Morphism {
    f.clone().unwrap_or_else(|| Morphism::identity(m))
}

fn chain_or_id(c: &Arc<Complex>, f: &Option<ChainMap>) -> ChainMap {
    f.clone().unwrap_or_else(|| ChainMap::identity(c))
}

fn require_same(x: &Algebra, y: &Algebra, what: &str) -> Result<()> {
    if !x.same_as(y) {
        return Err(Error::Validation(format!("{what} is over the wrong algebra")));
    }
    Ok(())
}

/// Entrywise Euler values (or Lefschetz numbers) assembled into a matrix.
fn assemble(rows: usize, cols: usize, lef: bool, f: FieldSpec, mut entry: impl FnMut(usize, usize) -> Result<DerivedTraceData>) -> Result<Value> {
    if lef {
        let mut m = Matrix::zeros(f, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let d = entry(i, j)?;
                m.set(i, j, d.lefschetz.ok_or_else(|| Error::InvariantViolation("missing induced traces".into()))?);
            }
        }
        Ok(Value::Matrix(m))
    } else {
        let mut m = IntMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, entry(i, j)?.euler);
            }
        }
        Ok(Value::IntMatrix(m))
    }
}

const LHS_MODULE: &str = "minimal projective resolution of M; cohomology of the Hom or tensor complex";
const LHS_HOCHSCHILD: &str = "minimal resolution of A over A^e; cohomology of the Hom or tensor complex";
const LHS_COMPLEX: &str = "projective replacement of M; cohomology of the total Hom or tensor complex";
const LHS_BIMODULE: &str = "Peirce components f_i M, g_j N; minimal resolutions; entrywise Euler values";
const RHS_VECTOR: &str = "dimension/trace vectors and the inverse Cartan matrix";
const RHS_MATRIX: &str = "dimension/trace matrices and the inverse Cartan matrix";

/// Compute both sides of `id` for the given operands.
pub fn verify(id: IdentityId, a: &Arc<Algebra>, ops: &Operands, opts: &EngineOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let rd = preflight(a, opts.cap)?;
    let f = a.field();
    let lef = id.flavor == Flavor::Lefschetz;
    let digest = inputs_digest(Some(&id), a.presentation(), Some(ops));
    let (lhs, x, y, lp, rp) = match (id.level, ops) {
        (Level::Module, Operands::Modules { m, n, phi, psi }) if !id.version.is_hochschild() => {
            require_same(m.algebra(), a, "M")?;
            let (phi, psi) = (endo_or_id(m, phi), endo_or_id(n, psi));
            let (lp, rp) = (LHS_MODULE, RHS_VECTOR);
            let (ph, ps) = if lef { (Some(&phi), Some(&psi)) } else { (None, None) };
            let vec_of = |r: &Rep, g: &Morphism| -> Result<Value> {
                Ok(if lef { Value::Matrix(g.trace_vector()?) } else { Value::IntMatrix(r.dim_vector()) })
            };
            match id.version {
                Version::Cohomological => {
                    require_same(n.algebra(), a, "N")?;
                    let d = ext_data(m, n, ph, ps, opts)?;
                    (pick(&d, lef)?, vec_of(m, &phi)?, Some(vec_of(n, &psi)?), lp, rp)
                }
                _ => {
                    let op = opposite_algebra(a)?;
                    require_same(n.algebra(), &op, "N")?;
                    let d = tor_data(m, n, ph, ps, opts)?;
                    (pick(&d, lef)?, vec_of(n, &psi)?, Some(vec_of(m, &phi)?), lp, rp)
                }
            }
        }
        (Level::Module, Operands::Bimodule { m, phi }) if id.version.is_hochschild() => {
            let phi = endo_or_id(m.module(), phi);
            let ph = if lef { Some(&phi) } else { None };
            let d = if id.version == Version::HochschildCohomological {
                hochschild_cohomology_data(a, m, ph, opts)?
            } else {
                hochschild_homology_data(a, m, ph, opts)?
            };
            let x = if lef { Value::Matrix(m.trace_matrix(&phi)?) } else { Value::IntMatrix(m.dim_matrix()) };
            (pick(&d, lef)?, x, None, LHS_HOCHSCHILD, RHS_MATRIX)
        }
        (Level::Bimodule, Operands::Bimodules { m, n, phi, psi }) => {
            require_same(m.right(), a, "M")?;
            let (phi, psi) = (endo_or_id(m.module(), phi), endo_or_id(n.module(), psi));
            let mat_of = |b: &Bimodule, g: &Morphism| -> Result<Value> {
                Ok(if lef { Value::Matrix(b.trace_matrix(g)?) } else { Value::IntMatrix(b.dim_matrix()) })
            };
            let transpose = |v: Value| match v {
                Value::Matrix(x) => Value::Matrix(x.transpose()),
                Value::IntMatrix(x) => Value::IntMatrix(x.transpose()),
                other => other,
            };
            match id.version {
                Version::Cohomological => {
                    require_same(n.right(), a, "N")?;
                    let (mm, pp) = (m.left().n(), n.left().n());
                    let lhs = assemble(mm, pp, lef, f, |i, j| {
                        let fm = m.left_component(i);
                        let gn = n.left_component(j);
                        let (p1, p2) = (m.restrict_left(&phi, i, &fm), n.restrict_left(&psi, j, &gn));
                        if lef {
                            ext_data(&fm, &gn, Some(&p1), Some(&p2), opts)
                        } else {
                            ext_data(&fm, &gn, None, None, opts)
                        }
                    })?;
                    (lhs, mat_of(m, &phi)?, Some(mat_of(n, &psi)?), LHS_BIMODULE, RHS_MATRIX)
                }
                Version::Homological => {
                    require_same(n.left(), a, "N")?;
                    let (mm, pp) = (m.left().n(), n.right().n());
                    let lhs = assemble(pp, mm, lef, f, |i, j| {
                        let fm = m.left_component(j);
                        let ng = n.right_component(i);
                        let (p1, p2) = (m.restrict_left(&phi, j, &fm), n.restrict_right(&psi, i, &ng));
                        if lef {
                            tor_data(&fm, &ng, Some(&p1), Some(&p2), opts)
                        } else {
                            tor_data(&fm, &ng, None, None, opts)
                        }
                    })?;
                    (lhs, transpose(mat_of(n, &psi)?), Some(mat_of(m, &phi)?), LHS_BIMODULE, RHS_MATRIX)
                }
                _ => return Err(mismatch(&id)),
            }
        }
        (Level::Complex, Operands::Complexes { m, n, phi, psi }) if !id.version.is_hochschild() => {
            require_same(m.algebra(), a, "M")?;
            let (phi, psi) = (chain_or_id(m, phi), chain_or_id(n, psi));
            let (ph, ps) = if lef { (Some(&phi), Some(&psi)) } else { (None, None) };
            let vec_of = |c: &Complex, g: &ChainMap| -> Result<Value> {
                Ok(if lef { Value::Matrix(g.trace_vector()?) } else { Value::IntMatrix(c.dim_vector()) })
            };
            match id.version {
                Version::Cohomological => {
                    require_same(n.algebra(), a, "N")?;
                    let d = ext_complex_data(m, n, ph, ps, opts)?;
                    (pick(&d, lef)?, vec_of(m, &phi)?, Some(vec_of(n, &psi)?), LHS_COMPLEX, RHS_VECTOR)
                }
                _ => {
                    let op = opposite_algebra(a)?;
                    require_same(n.algebra(), &op, "N")?;
                    let d = tor_complex_data(m, n, ph, ps, opts)?;
                    (pick(&d, lef)?, vec_of(n, &psi)?, Some(vec_of(m, &phi)?), LHS_COMPLEX, RHS_VECTOR)
                }
            }
        }
        (Level::Complex, Operands::BimoduleComplex { m, phi }) if id.version.is_hochschild() => {
            let phi = chain_or_id(m.complex(), phi);
            let ph = if lef { Some(&phi) } else { None };
            let d = if id.version == Version::HochschildCohomological {
                hochschild_cohomology_complex_data(a, m, ph, opts)?
            } else {
                hochschild_homology_complex_data(a, m, ph, opts)?
            };
            let x = if lef { Value::Matrix(m.trace_matrix(&phi)?) } else { Value::IntMatrix(m.dim_matrix()?) };
            (pick(&d, lef)?, x, None, LHS_HOCHSCHILD, RHS_MATRIX)
        }
        (Level::BimoduleComplex, Operands::BimoduleComplexes { m, n, phi, psi }) => {
            require_same(m.right(), a, "M")?;
            let (phi, psi) = (chain_or_id(m.complex(), phi), chain_or_id(n.complex(), psi));
            let mat_of = |b: &BimoduleComplex, g: &ChainMap| -> Result<Value> {
                Ok(if lef { Value::Matrix(b.trace_matrix(g)?) } else { Value::IntMatrix(b.dim_matrix()?) })
            };
            match id.version {
                Version::Cohomological => {
                    require_same(n.right(), a, "N")?;
                    let (mm, pp) = (m.left().n(), n.left().n());
                    let lhs = assemble(mm, pp, lef, f, |i, j| {
                        let fm = m.left_component(i);
                        let gn = n.left_component(j);
                        let (p1, p2) = (m.restrict_left(&phi, i, &fm), n.restrict_left(&psi, j, &gn));
                        if lef {
                            ext_complex_data(&fm, &gn, Some(&p1), Some(&p2), opts)
                        } else {
                            ext_complex_data(&fm, &gn, None, None, opts)
                        }
                    })?;
                    (lhs, mat_of(m, &phi)?, Some(mat_of(n, &psi)?), LHS_BIMODULE, RHS_MATRIX)
                }
                Version::Homological => {
                    require_same(n.left(), a, "N")?;
                    let (mm, pp) = (m.left().n(), n.right().n());
                    let lhs = assemble(pp, mm, lef, f, |i, j| {
                        let fm = m.left_component(j);
                        let ng = n.right_component(i);
                        let (p1, p2) = (m.restrict_left(&phi, j, &fm), n.restrict_right(&psi, i, &ng));
                        if lef {
                            tor_complex_data(&fm, &ng, Some(&p1), Some(&p2), opts)
                        } else {
                            tor_complex_data(&fm, &ng, None, None, opts)
                        }
                    })?;
                    let x = match mat_of(n, &psi)? {
                        Value::Matrix(x) => Value::Matrix(x.transpose()),
                        Value::IntMatrix(x) => Value::IntMatrix(x.transpose()),
                        other => other,
                    };
                    (lhs, x, Some(mat_of(m, &phi)?), LHS_BIMODULE, RHS_MATRIX)
                }
                _ => return Err(mismatch(&id)),
            }
        }
        _ => return Err(mismatch(&id)),
    };
    let rhs = rhs_value(&id, &rd, f, &x, y.as_ref())?;
    Ok(VerificationReport::compare(id.to_string(), Some(id), digest, lhs, rhs, (lp, rp), start.elapsed()))
}

/// Happel, Zhang-Liu and Keller checks for `A` with coefficients in itself.
pub fn verify_corollaries(a: &Arc<Algebra>, opts: &EngineOptions) -> Result<Vec<VerificationReport>> {
    let rd = preflight(a, opts.cap)?;
    let n = a.n();
    let reg = regular_bimodule(a)?;
    let digest = inputs_digest(None, a.presentation(), None);
    let mut out = Vec::new();

    let start = Instant::now();
    let hc = hochschild_cohomology_data(a, &reg, None, opts)?;
    out.push(VerificationReport::compare(
        "corollary/happel",
        None,
        digest.clone(),
        Value::Int(hc.euler),
        Value::Int(-rd.coxeter.trace()),
        ("Euler characteristic of HH^*(A) from the A^e-resolution", "minus the trace of the Coxeter matrix"),
        start.elapsed(),
    ));

    let start = Instant::now();
    let hh = hochschild_homology_data(a, &reg, None, opts)?;
    out.push(VerificationReport::compare(
        "corollary/zhang-liu",
        None,
        digest.clone(),
        Value::Int(hh.euler.clone()),
        Value::Int(BigInt::from(n)),
        ("Euler characteristic of HH_*(A) from the A^e-resolution", "number of vertices"),
        start.elapsed(),
    ));

    let start = Instant::now();
    let g = enveloping_global_dimension(a, opts.cap)?;
    let lhs = IntMatrix::from_fn(1, g + 1, |_, l| BigInt::from(hh.dim(-(l as i64))));
    let rhs = IntMatrix::from_fn(1, g + 1, |_, l| BigInt::from(if l == 0 { n } else { 0 }));
    out.push(VerificationReport::compare(
        "corollary/keller",
        None,
        digest,
        Value::IntMatrix(lhs),
        Value::IntMatrix(rhs),
        ("dim HH_l(A) for 0 <= l <= gldim A^e", "[n, 0, ..., 0]"),
        start.elapsed(),
    ));
    Ok(out)
}

#[cfg(test)]
mod tests;
