//! Randomised checks of the structural lemmas on Cartan matrices and on dimension and
//! trace data of bimodules and complexes.

use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;

use super::{chern_character, inputs_digest, preflight, Value, VerificationReport};
use crate::algebra::{enveloping_algebra, opposite_algebra, tensor_algebra, Algebra};
use crate::bimodule::{bimodule_algebra, outer_tensor, outer_tensor_endomorphism, Bimodule};
use crate::complex::{random_chain_endomorphism, random_complex};
use crate::error::Result;
use crate::homological::{projective_replacement, EngineOptions};
use crate::linalg::{FieldSpec, IntMatrix, Matrix};
use crate::module::{hom_basis, random_combination, random_endomorphism, random_module, Morphism, Rep};
use crate::random::seeded;

const BUDGET: usize = 3;

fn sub_seed(seed: u64, sample: u64, salt: u64) -> u64 {
    seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(sample.wrapping_mul(1_000_003)).wrapping_add(salt)
}

/// Runs `test` on every sample; lhs counts agreements, rhs is the sample count.
fn tally(
    check: &str,
    digest: &str,
    samples: usize,
    provenance: (&str, &str),
    mut test: impl FnMut(u64) -> Result<bool>,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut ok = 0usize;
    let mut first_bad = None;
    for s in 0..samples as u64 {
        if test(s)? {
            ok += 1;
        } else if first_bad.is_none() {
            first_bad = Some(s);
        }
    }
    let mut r = VerificationReport::compare(
        check,
        None,
        digest.to_string(),
        Value::Int(BigInt::from(ok)),
        Value::Int(BigInt::from(samples)),
        provenance,
        start.elapsed(),
    );
    if let Some(s) = first_bad {
        r.diagnosis = Some(format!("first disagreement at sample {s}"));
    }
    Ok(r)
}

fn structural(check: &str, digest: &str, lhs: IntMatrix, rhs: IntMatrix, provenance: (&str, &str)) -> VerificationReport {
    VerificationReport::compare(
        check,
        None,
        digest.to_string(),
        Value::IntMatrix(lhs),
        Value::IntMatrix(rhs),
        provenance,
        std::time::Duration::ZERO,
    )
}

fn random_bimodule(b: &Arc<Algebra>, a: &Arc<Algebra>, env: &Arc<Algebra>, seed: u64) -> Result<Bimodule> {
    Bimodule::new(b.clone(), a.clone(), random_module(env, seed, BUDGET))
}

fn random_hom(s: &Rep, t: &Rep, seed: u64) -> Result<Morphism> {
    let basis = hom_basis(s, t)?;
    let mut rng = seeded(seed);
    Ok(random_combination(s, t, &basis, &mut rng))
}

fn int_to_field(m: &IntMatrix, f: FieldSpec) -> Matrix {
    m.to_matrix(f)
}

/// `[[phi', 0], [h, phi'']]` on `M' (+) M''` for a module map `h: M'' -> M'`.
fn triangular_endomorphism(sum: &Rep, p1: &Morphism, p2: &Morphism, h: &Morphism) -> Result<Morphism> {
    let f = sum.field();
    let maps = (0..sum.dims().len())
        .map(|v| {
            let (d1, d2) = (p1.map(v).rows(), p2.map(v).rows());
            let mut x = Matrix::zeros(f, d1 + d2, d1 + d2);
            x.set_block(0, 0, p1.map(v));
            x.set_block(d1, 0, h.map(v));
            x.set_block(d1, d1, p2.map(v));
            x
        })
        .collect();
    Morphism::new(sum.clone(), sum.clone(), maps)
}

/// Super trace vector of degreewise maps starting in degree `lo`.
fn super_trace(lo: i64, maps: &[Morphism], f: FieldSpec, n: usize) -> Result<Matrix> {
    let mut acc = Matrix::zeros(f, n, 1);
    for (k, g) in maps.iter().enumerate() {
        let t = g.trace_vector()?;
        acc = if (lo + k as i64).rem_euclid(2) == 0 { acc.add(&t) } else { acc.sub(&t) };
    }
    Ok(acc)
}

/// Cartan lemmas for `A^op`, `B (x) A` and `A^e`, then `samples` random instances of each
/// dimension and trace lemma for B-A-bimodules and complexes over `A`.
pub fn verify_lemma_suite(
    a: &Arc<Algebra>,
    b: &Arc<Algebra>,
    samples: usize,
    seed: u64,
    opts: &EngineOptions,
) -> Result<Vec<VerificationReport>> {
    preflight(a, opts.cap)?;
    let f = a.field();
    let digest = inputs_digest(None, a.presentation(), None) + &inputs_digest(None, b.presentation(), None)[..16];
    let ca = a.cartan_matrix();
    let cb = b.cartan_matrix();
    let mut out = vec![
        structural(
            "lemma/cartan-opposite",
            &digest,
            opposite_algebra(a)?.cartan_matrix(),
            ca.transpose(),
            ("Cartan matrix of the constructed opposite algebra", "transpose"),
        ),
        structural(
            "lemma/cartan-tensor",
            &digest,
            tensor_algebra(b, a)?.cartan_matrix(),
            cb.kronecker(&ca),
            ("Cartan matrix of the constructed tensor algebra", "Kronecker product C_B (x) C_A"),
        ),
        structural(
            "lemma/cartan-enveloping",
            &digest,
            enveloping_algebra(a)?.cartan_matrix(),
            ca.transpose().kronecker(&ca),
            ("Cartan matrix of the constructed enveloping algebra", "Kronecker product C_A^T (x) C_A"),
        ),
    ];

    let env = bimodule_algebra(b, a)?;
    let bop = opposite_algebra(b)?;

    out.push(tally("lemma/dual-transpose", &digest, samples, ("dm and tm of the dual bimodule", "transposes"), |s| {
        let m = random_bimodule(b, a, &env, sub_seed(seed, s, 1))?;
        let phi = random_endomorphism(m.module(), sub_seed(seed, s, 2));
        let d = m.dual()?;
        let dphi = m.dual_endomorphism(&phi, &d);
        Ok(d.dim_matrix() == m.dim_matrix().transpose()
            && d.trace_matrix(&dphi)? == m.trace_matrix(&phi)?.transpose())
    })?);

    out.push(tally(
        "lemma/outer-tensor",
        &digest,
        samples,
        ("dm and tm of N (x)_k M", "dv M dv N^T and tv M tv N^T"),
        |s| {
            let nl = random_module(&bop, sub_seed(seed, s, 3), BUDGET);
            let m = random_module(a, sub_seed(seed, s, 4), BUDGET);
            let psi = random_endomorphism(&nl, sub_seed(seed, s, 5));
            let phi = random_endomorphism(&m, sub_seed(seed, s, 6));
            let t = outer_tensor(&nl, &m)?;
            let tp = outer_tensor_endomorphism(&t, &psi, &phi);
            Ok(t.dim_matrix() == m.dim_vector().mul(&nl.dim_vector().transpose())
                && t.trace_matrix(&tp)? == phi.trace_vector()?.mul(&psi.trace_vector()?.transpose()))
        },
    )?);

    out.push(tally(
        "lemma/trace-composition",
        &digest,
        samples,
        ("tm_N(psi then phi)", "tm_M(phi then psi)"),
        |s| {
            let m = random_bimodule(b, a, &env, sub_seed(seed, s, 7))?;
            let n = random_bimodule(b, a, &env, sub_seed(seed, s, 8))?;
            let phi = random_hom(m.module(), n.module(), sub_seed(seed, s, 9))?;
            let psi = random_hom(n.module(), m.module(), sub_seed(seed, s, 10))?;
            Ok(n.trace_matrix(&psi.then(&phi))? == m.trace_matrix(&phi.then(&psi))?)
        },
    )?);

    out.push(tally(
        "lemma/trace-additivity",
        &digest,
        samples,
        ("tm(phi + psi)", "tm(phi) + tm(psi)"),
        |s| {
            let m = random_bimodule(b, a, &env, sub_seed(seed, s, 11))?;
            let phi = random_endomorphism(m.module(), sub_seed(seed, s, 12));
            let psi = random_endomorphism(m.module(), sub_seed(seed, s, 13));
            Ok(m.trace_matrix(&phi.add(&psi))? == m.trace_matrix(&phi)?.add(&m.trace_matrix(&psi)?))
        },
    )?);

    out.push(tally("lemma/trace-identity", &digest, samples, ("tm(id)", "dm"), |s| {
        let m = random_bimodule(b, a, &env, sub_seed(seed, s, 14))?;
        Ok(m.trace_matrix(&Morphism::identity(m.module()))? == int_to_field(&m.dim_matrix(), f))
    })?);

    out.push(tally(
        "lemma/exact-sequence-additivity",
        &digest,
        samples,
        ("dm and tm of the middle term of 0 -> M' -> M -> M'' -> 0", "sums over the outer terms"),
        |s| {
            let m1 = random_bimodule(b, a, &env, sub_seed(seed, s, 15))?;
            let m2 = random_bimodule(b, a, &env, sub_seed(seed, s, 16))?;
            let p1 = random_endomorphism(m1.module(), sub_seed(seed, s, 17));
            let p2 = random_endomorphism(m2.module(), sub_seed(seed, s, 18));
            let h = random_hom(m2.module(), m1.module(), sub_seed(seed, s, 19))?;
            let sum = Bimodule::new(b.clone(), a.clone(), m1.module().direct_sum(m2.module()))?;
            let big = triangular_endomorphism(sum.module(), &p1, &p2, &h)?;
            Ok(sum.dim_matrix() == m1.dim_matrix().add(&m2.dim_matrix())
                && sum.trace_matrix(&big)? == m1.trace_matrix(&p1)?.add(&m2.trace_matrix(&p2)?))
        },
    )?);

    out.push(tally(
        "lemma/vectorization",
        &digest,
        samples,
        ("dv and tv of M as a module over B^op (x) A", "column vectorization of dm and tm"),
        |s| {
            let m = random_bimodule(b, a, &env, sub_seed(seed, s, 20))?;
            let phi = random_endomorphism(m.module(), sub_seed(seed, s, 21));
            let tm = m.trace_matrix(&phi)?;
            let tv = phi.trace_vector()?;
            let vec_tm = Matrix::from_fn(f, tm.rows() * tm.cols(), 1, |k, _| tm.get(k % tm.rows(), k / tm.rows()).clone());
            Ok(m.module().dim_vector() == m.dim_matrix().vec_columns() && tv == vec_tm)
        },
    )?);

    out.push(tally(
        "lemma/quasi-isomorphism-invariance",
        &digest,
        samples,
        (
            "super dv, tv and C^{-1} dv of the terms",
            "the same over cohomology and over a projective replacement",
        ),
        |s| {
            let c = Arc::new(random_complex(a, sub_seed(seed, s, 22), -1, 3, 2));
            let phi = random_chain_endomorphism(&c, sub_seed(seed, s, 23));
            let cohom = c.dim_vector() == c.cohomology_dim_vector()
                && phi.trace_vector()? == phi.cohomology_trace_vector()?;
            let r = projective_replacement(&c, opts.cap)?;
            let pc = r.complex.to_complex()?;
            let lifts = r.lift_endomorphism(&phi, None)?;
            let repl = pc.dim_vector() == c.dim_vector()
                && super_trace(r.complex.lo, &lifts, f, a.n())? == phi.trace_vector()?
                && chern_character(&pc)? == chern_character(&c)?;
            Ok(cohom && repl)
        },
    )?);

    Ok(out)
}
