//! Projective resolutions and the derived functors built on them.

mod balance;
mod derived;
mod replacement;
mod resolution;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;

pub use balance::{balanced_tensor, tor_data_balanced, BalancedTensor};
pub use derived::{
    hom_dim, hom_post, hom_pre, tensor_dim, tensor_post, tensor_pre, total_hom, total_tensor, DegreeData,
    DerivedTraceData, ProjectiveComplex, VectorComplex,
};
pub use replacement::{projective_replacement, ProjectiveReplacement};
pub use resolution::{
    global_dimension, lift_through, minimal_projective_resolution, projective_cover, ProjectiveSum, Resolution,
    DEFAULT_RESOLUTION_CAP,
};

use crate::algebra::{enveloping_algebra, Algebra};
use crate::bimodule::{regular_bimodule, Bimodule};
use crate::complex::{BimoduleComplex, ChainMap, Complex};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::module::{Morphism, Rep};
use crate::quiver::Presentation;
use crate::random::seeded;

/// Resolution cap and the optional seed for randomised lifts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineOptions {
    pub cap: usize,
    pub lift_seed: Option<u64>,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions { cap: DEFAULT_RESOLUTION_CAP, lift_seed: None }
    }
}

fn concentrated_map(m: &Rep, f: Option<&Morphism>) -> Result<(Arc<Complex>, Option<ChainMap>)> {
    let c = Arc::new(Complex::concentrated(m, 0));
    let cm = match f {
        Some(f) => Some(ChainMap::new(c.clone(), c.clone(), 0, vec![f.clone()])?),
        None => None,
    };
    Ok((c, cm))
}

fn lift_resolution(r: &Resolution, phi: Option<&Morphism>, opts: &EngineOptions) -> Result<Option<Vec<Morphism>>> {
    let Some(phi) = phi else { return Ok(None) };
    let mut rng = opts.lift_seed.map(seeded);
    let lifts = r.lift_endomorphism(phi, rng.as_mut())?;
    Ok(Some(ProjectiveComplex::from_resolution_maps(lifts)))
}

fn lift_replacement(
    r: &ProjectiveReplacement,
    phi: Option<&ChainMap>,
    opts: &EngineOptions,
) -> Result<Option<Vec<Morphism>>> {
    let Some(phi) = phi else { return Ok(None) };
    let mut rng = opts.lift_seed.map(seeded);
    Ok(Some(r.lift_endomorphism(phi, rng.as_mut())?))
}

/// `Ext^l(M, N)` for right modules, with traces of `f |-> psi f phi` when maps are given.
pub fn ext_data(
    m: &Rep,
    n: &Rep,
    phi: Option<&Morphism>,
    psi: Option<&Morphism>,
    opts: &EngineOptions,
) -> Result<DerivedTraceData> {
    let r = minimal_projective_resolution(m, opts.cap)?;
    let p = ProjectiveComplex::from_resolution(&r);
    let lifts = lift_resolution(&r, phi, opts)?;
    let (nc, psic) = concentrated_map(n, psi)?;
    total_hom(&p, lifts.as_deref(), &nc, psic.as_ref())
}

/// `Tor_l(M, N)` for `M` a right module and `N` a representation of `A^op`,
/// reported in cohomological degrees `-l`.
pub fn tor_data(
    m: &Rep,
    n: &Rep,
    phi: Option<&Morphism>,
    psi: Option<&Morphism>,
    opts: &EngineOptions,
) -> Result<DerivedTraceData> {
    let r = minimal_projective_resolution(m, opts.cap)?;
    let p = ProjectiveComplex::from_resolution(&r);
    let lifts = lift_resolution(&r, phi, opts)?;
    let (nc, psic) = concentrated_map(n, psi)?;
    total_tensor(&p, lifts.as_deref(), &nc, psic.as_ref())
}

/// `Ext^l(M, N) = H^l RHom(M, N)` for bounded complexes.
pub fn ext_complex_data(
    m: &Complex,
    n: &Complex,
    phi: Option<&ChainMap>,
    psi: Option<&ChainMap>,
    opts: &EngineOptions,
) -> Result<DerivedTraceData> {
    let r = projective_replacement(m, opts.cap)?;
    let lifts = lift_replacement(&r, phi, opts)?;
    total_hom(&r.complex, lifts.as_deref(), n, psi)
}

/// `Tor_l(M, N) = H^{-l}(M (x)^L N)` for bounded complexes.
pub fn tor_complex_data(
    m: &Complex,
    n: &Complex,
    phi: Option<&ChainMap>,
    psi: Option<&ChainMap>,
    opts: &EngineOptions,
) -> Result<DerivedTraceData> {
    let r = projective_replacement(m, opts.cap)?;
    let lifts = lift_replacement(&r, phi, opts)?;
    total_tensor(&r.complex, lifts.as_deref(), n, psi)
}

type ResolutionCache = Mutex<HashMap<Presentation, Arc<Resolution>>>;

fn resolution_cache() -> &'static ResolutionCache {
    static CACHE: OnceLock<ResolutionCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Minimal resolution of `A` as a right `A^e`-module, cached per presentation.
pub fn regular_resolution(a: &Arc<Algebra>, cap: usize) -> Result<Arc<Resolution>> {
    let key = a.presentation().clone();
    if let Some(r) = resolution_cache().lock().expect("cache poisoned").get(&key).cloned() {
        return if r.length() > cap as isize { Err(Error::CapExceeded { cap }) } else { Ok(r) };
    }
    let reg = regular_bimodule(a)?;
    let r = Arc::new(minimal_projective_resolution(reg.module(), cap)?);
    resolution_cache().lock().expect("cache poisoned").insert(key, r.clone());
    Ok(r)
}

/// `t[l][(i, j)]`: multiplicity of `A e_i (x) e_j A` in the l-th term of the minimal
/// bimodule resolution of `A`.
pub fn hochschild_multiplicities(a: &Arc<Algebra>, cap: usize) -> Result<Vec<IntMatrix>> {
    let r = regular_resolution(a, cap)?;
    let n = a.n();
    Ok((0..r.terms.len())
        .map(|l| IntMatrix::from_fn(n, n, |i, j| BigInt::from(r.multiplicity(l, i * n + j))))
        .collect())
}

fn check_a_a(left: &Algebra, right: &Algebra, a: &Algebra) -> Result<()> {
    if !left.same_as(a) || !right.same_as(a) {
        return Err(Error::Validation("Hochschild data needs an A-A bimodule".into()));
    }
    Ok(())
}

/// `HH^l(A, M) = Ext^l_{A^e}(A, M)`.
pub fn hochschild_cohomology_data(
    a: &Arc<Algebra>,
    m: &Bimodule,
    phi: Option<&Morphism>,
    opts: &EngineOptions,
) -> Result<DerivedTraceData> {
    check_a_a(m.left(), m.right(), a)?;
    let r = regular_resolution(a, opts.cap)?;
    let p = ProjectiveComplex::from_resolution(&r);
    let (nc, psic) = concentrated_map(m.module(), phi)?;
    total_hom(&p, None, &nc, psic.as_ref())
}

/// `HH_l(A, M) = Tor_l^{A^e}(A, M)`, reported in cohomological degrees `-l`.
pub fn hochschild_homology_data(
    a: &Arc<Algebra>,
    m: &Bimodule,
    phi: Option<&Morphism>,
    opts: &EngineOptions,
) -> Result<DerivedTraceData> {
    check_a_a(m.left(), m.right(), a)?;
    let r = regular_resolution(a, opts.cap)?;
    let p = ProjectiveComplex::from_resolution(&r);
    let conv = m.as_left_enveloping()?;
    let phic = phi.map(|f| m.left_enveloping_endomorphism(f, &conv));
    let (nc, psic) = concentrated_map(&conv, phic.as_ref())?;
    total_tensor(&p, None, &nc, psic.as_ref())
}

pub fn hochschild_cohomology_complex_data(
    a: &Arc<Algebra>,
    m: &BimoduleComplex,
    phi: Option<&ChainMap>,
    opts: &EngineOptions,
) -> Result<DerivedTraceData> {
    check_a_a(m.left(), m.right(), a)?;
    let r = regular_resolution(a, opts.cap)?;
    let p = ProjectiveComplex::from_resolution(&r);
    total_hom(&p, None, m.complex(), phi)
}

pub fn hochschild_homology_complex_data(
    a: &Arc<Algebra>,
    m: &BimoduleComplex,
    phi: Option<&ChainMap>,
    opts: &EngineOptions,
) -> Result<DerivedTraceData> {
    check_a_a(m.left(), m.right(), a)?;
    let r = regular_resolution(a, opts.cap)?;
    let p = ProjectiveComplex::from_resolution(&r);
    let conv = m.as_left_enveloping()?;
    let phic = phi.map(|f| m.left_enveloping_endomorphism(f, &conv));
    total_tensor(&p, None, &conv, phic.as_ref())
}

/// Global dimension of `A^e`.
pub fn enveloping_global_dimension(a: &Arc<Algebra>, cap: usize) -> Result<usize> {
    global_dimension(&enveloping_algebra(a)?, cap)
}

#[cfg(test)]
mod tests;
