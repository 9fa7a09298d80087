//! Acceptance criteria 1-10. Each criterion prints one PASS/FAIL line; the test fails if any does.

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;

use hrrcheck_core::algebra::{build_algebra, examples, Algebra};
use hrrcheck_core::complex::{BimoduleComplex, ChainMap, Complex};
use hrrcheck_core::homological::{
    ext_data, hochschild_multiplicities, tor_data, tor_data_balanced, EngineOptions,
};
use hrrcheck_core::linalg::FieldSpec;
use hrrcheck_core::module::{dual_module, random_endomorphism, random_module, simple_module};
use hrrcheck_core::verify::{
    random_operands, verify, verify_closed_forms, verify_corollaries, verify_lemma_suite, Flavor, IdentityId, Level,
    Operands, Value, VerificationReport,
};
use hrrcheck_core::Error;

const Q: FieldSpec = FieldSpec::Rationals;

type Outcome = Result<(), String>;

fn bundled() -> Vec<(&'static str, Arc<Algebra>)> {
    examples::bundled(Q).into_iter().map(|(n, p)| (n, Arc::new(build_algebra(&p).unwrap()))).collect()
}

fn alg(p: hrrcheck_core::quiver::Presentation) -> Arc<Algebra> {
    Arc::new(build_algebra(&p).unwrap())
}

fn opts() -> EngineOptions {
    EngineOptions::default()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ensure_pass(r: &VerificationReport, ctx: &str) -> Outcome {
    ensure(r.pass, || format!("{ctx} {}: lhs {:?} rhs {:?} ({:?})", r.check, r.lhs, r.rhs, r.diagnosis))
}

fn int(v: i64) -> Option<Value> {
    Some(Value::Int(BigInt::from(v)))
}

fn ids(level: impl Fn(Level) -> bool, flavor: Flavor) -> Vec<IdentityId> {
    IdentityId::all().into_iter().filter(|x| level(x.level) && x.flavor == flavor).collect()
}

fn corollary(check: &str) -> Outcome {
    for (name, a) in bundled() {
        let rs = verify_corollaries(&a, &opts()).map_err(|e| format!("{name}: {e}"))?;
        let r = rs.iter().find(|r| r.check == check).ok_or("missing report")?;
        ensure_pass(r, name)?;
        if check == "corollary/zhang-liu" && name == "A3R" {
            ensure(r.lhs == int(3), || format!("A3R value {:?}", r.lhs))?;
        }
        if check == "corollary/happel" && (name == "A2" || name == "A3R") {
            ensure(r.lhs == int(1) && r.rhs == int(1), || format!("{name} values {:?} {:?}", r.lhs, r.rhs))?;
        }
    }
    Ok(())
}

fn run_random(ids: &[IdentityId], count: u64) -> Outcome {
    for (name, a) in bundled() {
        for id in ids {
            for seed in 0..count {
                let ops = random_operands(id, &a, seed).map_err(|e| format!("{name} {id} seed {seed}: {e}"))?;
                let r = verify(*id, &a, &ops, &opts()).map_err(|e| format!("{name} {id} seed {seed}: {e}"))?;
                ensure_pass(&r, &format!("{name} seed {seed}"))?;
            }
        }
    }
    Ok(())
}

fn embed(v: Option<Value>) -> Option<Value> {
    v.map(|v| match v {
        Value::Int(i) => Value::Scalar(Q.from_bigint(&i)),
        Value::IntMatrix(m) => Value::Matrix(m.to_matrix(Q)),
        other => other,
    })
}

fn strip_endomorphisms(ops: Operands) -> Operands {
    match ops {
        Operands::Modules { m, n, .. } => Operands::Modules { m, n, phi: None, psi: None },
        Operands::Bimodule { m, .. } => Operands::Bimodule { m, phi: None },
        Operands::Bimodules { m, n, .. } => Operands::Bimodules { m, n, phi: None, psi: None },
        Operands::Complexes { m, n, .. } => Operands::Complexes { m, n, phi: None, psi: None },
        Operands::BimoduleComplex { m, .. } => Operands::BimoduleComplex { m, phi: None },
        Operands::BimoduleComplexes { m, n, .. } => Operands::BimoduleComplexes { m, n, phi: None, psi: None },
    }
}

/// Lefschetz with identity maps equals HRR on the same operands.
fn identity_cases(ids: &[IdentityId], count: u64) -> Outcome {
    for (name, a) in bundled() {
        for id in ids {
            let hrr = IdentityId::new(id.level, id.version, Flavor::Hrr).unwrap();
            for seed in 0..count {
                let ops = strip_endomorphisms(random_operands(id, &a, seed).map_err(|e| e.to_string())?);
                let l = verify(*id, &a, &ops, &opts()).map_err(|e| e.to_string())?;
                let h = verify(hrr, &a, &ops, &opts()).map_err(|e| e.to_string())?;
                ensure_pass(&l, name)?;
                ensure(embed(h.lhs.clone()) == l.lhs, || format!("{name} {id} seed {seed}: identity case differs"))?;
            }
        }
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    let higher = |l: Level| l != Level::Module;
    run_random(&ids(higher, Flavor::Hrr), 25)?;
    run_random(&ids(higher, Flavor::Lefschetz), 25)?;
    // complexes concentrated in degree 0 reproduce module-level values
    for (name, a) in bundled() {
        for id in IdentityId::all().into_iter().filter(|x| x.level == Level::Module) {
            let cid = IdentityId::new(Level::Complex, id.version, id.flavor).unwrap();
            for seed in 0..10 {
                let ops = random_operands(&id, &a, seed).map_err(|e| e.to_string())?;
                let conc = |m: &hrrcheck_core::module::Rep| Arc::new(Complex::concentrated(m, 0));
                let chain = |c: &Arc<Complex>, f: &Option<hrrcheck_core::module::Morphism>| {
                    f.as_ref().map(|f| ChainMap::new(c.clone(), c.clone(), 0, vec![f.clone()]).unwrap())
                };
                let cops = match &ops {
                    Operands::Modules { m, n, phi, psi } => {
                        let (mc, nc) = (conc(m), conc(n));
                        Operands::Complexes { phi: chain(&mc, phi), psi: chain(&nc, psi), m: mc, n: nc }
                    }
                    Operands::Bimodule { m, phi } => {
                        let mc = conc(m.module());
                        let bc = BimoduleComplex::new(m.left().clone(), m.right().clone(), mc.clone())
                            .map_err(|e| e.to_string())?;
                        Operands::BimoduleComplex { m: bc, phi: chain(&mc, phi) }
                    }
                    _ => return Err("unexpected operands".into()),
                };
                let r1 = verify(id, &a, &ops, &opts()).map_err(|e| e.to_string())?;
                let r2 = verify(cid, &a, &cops, &opts()).map_err(|e| e.to_string())?;
                ensure(r1.lhs == r2.lhs && r2.pass, || format!("{name} {id} seed {seed}: degenerate complex differs"))?;
            }
        }
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    let a3r = alg(examples::a3_rel(Q));
    let a2 = alg(examples::a2(Q));
    for (name, a) in bundled() {
        for (k, b) in [&a2, &a3r].into_iter().enumerate() {
            let rs = verify_lemma_suite(&a, b, 50, 7 + k as u64, &opts()).map_err(|e| format!("{name}: {e}"))?;
            for r in &rs {
                ensure_pass(r, name)?;
            }
        }
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    for (name, a) in bundled() {
        for r in verify_closed_forms(&a, 25, 11, &opts()).map_err(|e| format!("{name}: {e}"))? {
            ensure_pass(&r, name)?;
        }
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    for (name, a) in bundled() {
        let op = hrrcheck_core::algebra::opposite_algebra(&a).map_err(|e| e.to_string())?;
        for seed in 0..50u64 {
            let m = random_module(&a, seed, 3);
            let n = random_module(&a, seed + 1000, 3);
            let e = ext_data(&m, &n, None, None, &opts()).map_err(|e| e.to_string())?;
            let nd = dual_module(&n).map_err(|e| e.to_string())?;
            let t = tor_data(&m, &nd, None, None, &opts()).map_err(|e| e.to_string())?;
            ensure(e.euler == t.euler, || format!("{name} seed {seed}: Ext/Tor Euler {} vs {}", e.euler, t.euler))?;

            let phi = random_endomorphism(&m, seed + 2000);
            let psi = random_endomorphism(&n, seed + 3000);
            let base = ext_data(&m, &n, Some(&phi), Some(&psi), &opts()).map_err(|e| e.to_string())?;
            for s in 0..3 {
                let o = EngineOptions { lift_seed: Some(seed * 7 + s), ..opts() };
                let x = ext_data(&m, &n, Some(&phi), Some(&psi), &o).map_err(|e| e.to_string())?;
                ensure(x == base, || format!("{name} seed {seed}: Ext traces depend on the lift"))?;
            }
            let l = random_module(&op, seed + 4000, 3);
            let chi = random_endomorphism(&l, seed + 5000);
            let tb = tor_data(&m, &l, Some(&phi), Some(&chi), &opts()).map_err(|e| e.to_string())?;
            let tl = tor_data(&m, &l, Some(&phi), Some(&chi), &EngineOptions { lift_seed: Some(seed), ..opts() })
                .map_err(|e| e.to_string())?;
            let tq = tor_data_balanced(&m, &l, Some(&phi), Some(&chi), 32).map_err(|e| e.to_string())?;
            ensure(tb == tl && tb == tq, || format!("{name} seed {seed}: Tor routes disagree"))?;
        }
    }
    for a in [alg(examples::a2(Q)), alg(examples::a3_rel(Q))] {
        let t = hochschild_multiplicities(&a, 32).map_err(|e| e.to_string())?;
        let n = a.n();
        for i in 0..n {
            for j in 0..n {
                let si = simple_module(&a, i).map_err(|e| e.to_string())?;
                let sj = simple_module(&a, j).map_err(|e| e.to_string())?;
                let e = ext_data(&si, &sj, None, None, &opts()).map_err(|e| e.to_string())?;
                for l in 0..t.len() + 2 {
                    let tl = t.get(l).map_or(BigInt::from(0), |m| m.get(i, j).clone());
                    ensure(tl == BigInt::from(e.dim(l as i64)), || format!("t_{l}{i}{j} differs from Ext"))?;
                }
            }
        }
    }
    Ok(())
}

fn criterion_10() -> Outcome {
    match build_algebra(&examples::two_cycle(Q)) {
        Err(Error::NonAdmissible(_)) => {}
        other => return Err(format!("oriented cycle gave {other:?}")),
    }
    let d = alg(examples::dual_numbers(Q));
    let limit = |e: &Error| matches!(e, Error::Unimodularity { .. } | Error::CapExceeded { .. });
    let s = simple_module(&d, 0).map_err(|e| e.to_string())?;
    for id in IdentityId::all().into_iter().filter(|x| x.level == Level::Module) {
        let ops = if id.version.is_hochschild() {
            Operands::Bimodule { m: hrrcheck_core::bimodule::regular_bimodule(&d).map_err(|e| e.to_string())?, phi: None }
        } else {
            random_operands(&id, &d, 0).map_err(|e| e.to_string())?
        };
        match verify(id, &d, &ops, &EngineOptions { cap: 12, lift_seed: None }) {
            Err(e) if limit(&e) => {}
            other => return Err(format!("{id} on dual numbers gave {:?}", other.map(|r| r.pass)))?,
        }
    }
    match verify_corollaries(&d, &opts()) {
        Err(e) if limit(&e) => {}
        other => return Err(format!("corollaries on dual numbers gave {:?}", other.map(|r| r.len()))),
    }
    // the engine alone, without the Cartan check, stops at the cap
    match ext_data(&s, &s, None, None, &EngineOptions { cap: 12, lift_seed: None }) {
        Err(Error::CapExceeded { cap: 12 }) => Ok(()),
        other => Err(format!("unbounded resolution gave {other:?}")),
    }
}

#[test]
fn acceptance_criteria() {
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("Zhang-Liu: Euler characteristic of HH_*(A) equals n", Box::new(|| corollary("corollary/zhang-liu"))),
        ("Happel: Euler characteristic of HH^*(A) equals -tr Phi", Box::new(|| corollary("corollary/happel"))),
        ("Keller: HH_0(A) = k^n and higher HH_l(A) vanish", Box::new(|| corollary("corollary/keller"))),
        (
            "HRR module level, four versions, 100 instances per algebra",
            Box::new(|| run_random(&ids(|l| l == Level::Module, Flavor::Hrr), 100)),
        ),
        (
            "Lefschetz module level, four versions, 100 instances per algebra",
            Box::new(|| {
                let ls = ids(|l| l == Level::Module, Flavor::Lefschetz);
                run_random(&ls, 100)?;
                identity_cases(&ls, 10)
            }),
        ),
        ("bimodule, complex and bimodule-complex levels, 25 instances each", Box::new(criterion_6)),
        ("lemma suite: Cartan structure and dm/tv/tm lemmas, 50 instances each", Box::new(criterion_7)),
        ("closed forms: Chern character, pairing, Hattori-Stallings trace", Box::new(criterion_8)),
        ("oracle against oracle: Ext/Tor duality, lift independence, t_lij", Box::new(criterion_9)),
        ("negative controls: non-admissible and infinite global dimension", Box::new(criterion_10)),
    ];
    let mut failed = Vec::new();
    let mut out = std::io::stdout();
    for (k, (desc, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        let line = match &outcome {
            Ok(()) => format!("criterion {:>2}: PASS  {desc} ({secs:.2}s)", k + 1),
            Err(e) => format!("criterion {:>2}: FAIL  {desc} ({secs:.2}s): {e}", k + 1),
        };
        writeln!(out, "{line}").unwrap();
        if outcome.is_err() {
            failed.push(k + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
