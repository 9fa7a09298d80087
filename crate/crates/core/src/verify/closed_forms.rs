//! Chern character, Hattori-Stallings trace and the pairing on `HH_0`, as coordinate data
//! in the idempotent basis `e_1, ..., e_n`.

use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;

use super::{inputs_digest, preflight, Value, VerificationReport};
use crate::algebra::Algebra;
use crate::bimodule::regular_bimodule;
use crate::complex::{random_complex, ChainMap, Complex};
use crate::error::Result;
use crate::homological::{hochschild_homology_data, EngineOptions};
use crate::linalg::{IntMatrix, Matrix};
use crate::module::{hom_basis, indecomposable_projective, Morphism, Rep};

/// `C^T`: the matrix of the pairing `HH_0(A) x HH_0(A^op) -> k` in the bases `e_i`, `e_j^v`.
pub fn shklyarov_pairing_matrix(a: &Algebra) -> Result<IntMatrix> {
    let rd = a.ringel_data()?;
    Ok(rd.cartan.transpose())
}

/// `C^{-1} dv(c)`.
pub fn chern_character(c: &Complex) -> Result<Matrix> {
    let a = c.algebra();
    let rd = a.ringel_data()?;
    Ok(rd.cartan_inverse.mul(&c.dim_vector()).to_matrix(a.field()))
}

pub fn chern_character_module(m: &Rep) -> Result<Matrix> {
    let a = m.algebra();
    let rd = a.ringel_data()?;
    Ok(rd.cartan_inverse.mul(&m.dim_vector()).to_matrix(a.field()))
}

/// `C^{-1} tv(phi)`.
pub fn hattori_stallings_trace(phi: &ChainMap) -> Result<Matrix> {
    let a = phi.source().algebra();
    let rd = a.ringel_data()?;
    Ok(rd.cartan_inverse.to_matrix(a.field()).mul(&phi.trace_vector()?))
}

fn module_trace(phi: &Morphism) -> Result<Matrix> {
    let a = phi.source().algebra();
    let rd = a.ringel_data()?;
    Ok(rd.cartan_inverse.to_matrix(a.field()).mul(&phi.trace_vector()?))
}

fn columns(cols: &[Matrix], a: &Algebra) -> Matrix {
    let refs: Vec<&Matrix> = cols.iter().collect();
    Matrix::hstack(&refs, a.field(), a.n())
}

/// The `HH_0` basis check followed by the closed-form identities on projectives and on
/// `samples` random complexes.
pub fn verify_closed_forms(
    a: &Arc<Algebra>,
    samples: usize,
    seed: u64,
    opts: &EngineOptions,
) -> Result<Vec<VerificationReport>> {
    preflight(a, opts.cap)?;
    let n = a.n();
    let f = a.field();
    let digest = inputs_digest(None, a.presentation(), None);
    let mut out = Vec::new();

    let start = Instant::now();
    let hh = hochschild_homology_data(a, &regular_bimodule(a)?, None, opts)?;
    out.push(VerificationReport::compare(
        "closed-form/hh0-dimension",
        None,
        digest.clone(),
        Value::Int(BigInt::from(hh.dim(0))),
        Value::Int(BigInt::from(n)),
        ("dim HH_0(A) from the A^e-resolution", "number of idempotents"),
        start.elapsed(),
    ));

    let projectives = (0..n).map(|i| indecomposable_projective(a, i)).collect::<Result<Vec<_>>>()?;

    let start = Instant::now();
    let ch = projectives.iter().map(chern_character_module).collect::<Result<Vec<_>>>()?;
    out.push(VerificationReport::compare(
        "closed-form/chern-projectives",
        None,
        digest.clone(),
        Value::Matrix(columns(&ch, a)),
        Value::Matrix(Matrix::identity(f, n)),
        ("C^{-1} dv(e_i A), column i", "standard basis"),
        start.elapsed(),
    ));

    let start = Instant::now();
    let mut homs = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            homs.set(i, j, BigInt::from(hom_basis(&projectives[j], &projectives[i])?.len()));
        }
    }
    out.push(VerificationReport::compare(
        "closed-form/pairing",
        None,
        digest.clone(),
        Value::IntMatrix(homs),
        Value::IntMatrix(shklyarov_pairing_matrix(a)?),
        ("dim Hom(e_j A, e_i A) by solving intertwining equations", "transpose of the Cartan matrix"),
        start.elapsed(),
    ));

    let start = Instant::now();
    let hs = projectives.iter().map(|p| module_trace(&Morphism::identity(p))).collect::<Result<Vec<_>>>()?;
    out.push(VerificationReport::compare(
        "closed-form/hattori-stallings-projectives",
        None,
        digest.clone(),
        Value::Matrix(columns(&hs, a)),
        Value::Matrix(Matrix::identity(f, n)),
        ("C^{-1} tv(id on e_i A), column i", "standard basis"),
        start.elapsed(),
    ));

    let start = Instant::now();
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    for s in 0..samples as u64 {
        let c = Arc::new(random_complex(a, seed.wrapping_add(s), -1, 3, 2));
        lhs.push(hattori_stallings_trace(&ChainMap::identity(&c))?);
        rhs.push(chern_character(&c)?);
    }
    out.push(VerificationReport::compare(
        "closed-form/hattori-stallings-identity",
        None,
        digest.clone(),
        Value::Matrix(if lhs.is_empty() { Matrix::zeros(f, n, 0) } else { columns(&lhs, a) }),
        Value::Matrix(if rhs.is_empty() { Matrix::zeros(f, n, 0) } else { columns(&rhs, a) }),
        ("C^{-1} tv(id_c) on random complexes", "C^{-1} dv(c)"),
        start.elapsed(),
    ));

    // zero endomorphisms have zero trace class
    let start = Instant::now();
    let c = Arc::new(random_complex(a, seed ^ 0x5a5a, -1, 3, 2));
    let zero = ChainMap::zero(&c, &c);
    out.push(VerificationReport::compare(
        "closed-form/hattori-stallings-zero",
        None,
        digest,
        Value::Matrix(hattori_stallings_trace(&zero)?),
        Value::Matrix(Matrix::zeros(f, n, 1)),
        ("C^{-1} tv(0)", "zero vector"),
        start.elapsed(),
    ));
    Ok(out)
}
