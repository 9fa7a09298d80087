use std::sync::Arc;

use num_bigint::BigInt;

use super::*;
use crate::algebra::{build_algebra, examples};
use crate::linalg::FieldSpec;
use crate::module::simple_module;

const Q: FieldSpec = FieldSpec::Rationals;

fn alg(p: Presentation) -> Arc<Algebra> {
    Arc::new(build_algebra(&p).unwrap())
}

fn id(s: &str) -> IdentityId {
    s.parse().unwrap()
}

#[test]
fn identity_ids() {
    let all = IdentityId::all();
    assert_eq!(all.len(), 24);
    for x in &all {
        assert_eq!(&x.to_string().parse::<IdentityId>().unwrap(), x);
    }
    assert!(IdentityId::new(Level::Bimodule, Version::HochschildHomological, Flavor::Hrr).is_err());
    assert!("module/cohomological".parse::<IdentityId>().is_err());
    assert!("module/cohomological/hrv".parse::<IdentityId>().is_err());
}

#[test]
fn simples_of_a2_and_the_field() {
    let a = alg(examples::a2(Q));
    let s1 = simple_module(&a, 0).unwrap();
    let s2 = simple_module(&a, 1).unwrap();
    let ops = Operands::Modules { m: s1, n: s2, phi: None, psi: None };
    let r = verify(id("module/cohomological/hrr"), &a, &ops, &EngineOptions::default()).unwrap();
    assert!(r.pass);
    assert_eq!(r.lhs, Some(Value::Int(BigInt::from(-1))));

    let k = alg(examples::field_algebra(Q));
    let s = simple_module(&k, 0).unwrap();
    let ops = Operands::Modules { m: s.clone(), n: s, phi: None, psi: None };
    let r = verify(id("module/cohomological/hrr"), &k, &ops, &EngineOptions::default()).unwrap();
    assert_eq!((r.lhs, r.rhs), (Some(Value::Int(BigInt::from(1))), Some(Value::Int(BigInt::from(1)))));
}

#[test]
fn regular_bimodule_of_a3_rel() {
    let a = alg(examples::a3_rel(Q));
    let ops = Operands::Bimodule { m: regular_bimodule(&a).unwrap(), phi: None };
    let r = verify(id("module/hochschild-homological/hrr"), &a, &ops, &EngineOptions::default()).unwrap();
    assert_eq!(r.lhs, Some(Value::Int(BigInt::from(3))));
    assert!(r.pass);
}

#[test]
fn rhs_rejects_wrong_shapes() {
    let a = alg(examples::a2(Q));
    let rd = a.ringel_data().unwrap();
    let x = Value::IntMatrix(IntMatrix::zeros(3, 1));
    let y = Value::IntMatrix(IntMatrix::zeros(2, 1));
    assert!(matches!(rhs_value(&id("module/cohomological/hrr"), &rd, Q, &x, Some(&y)), Err(Error::Dimension(_))));
    let x = Value::IntMatrix(IntMatrix::zeros(2, 1));
    assert!(rhs_value(&id("module/hochschild-cohomological/hrr"), &rd, Q, &x, None).is_err());
}

#[test]
fn every_identity_on_random_operands() {
    for (_, p) in examples::bundled(Q) {
        let a = alg(p);
        for x in IdentityId::all() {
            for seed in 0..2 {
                let ops = random_operands(&x, &a, seed).unwrap();
                let r = verify(x, &a, &ops, &EngineOptions::default()).unwrap();
                assert!(r.pass, "{x} seed {seed}: {:?} vs {:?}", r.lhs, r.rhs);
            }
        }
    }
}

#[test]
fn identity_endomorphisms_reproduce_hrr_values() {
    let a = alg(examples::kronecker(Q));
    for x in IdentityId::all().into_iter().filter(|x| x.flavor == Flavor::Hrr) {
        let ops = random_operands(&x, &a, 3).unwrap();
        let lx = IdentityId::new(x.level, x.version, Flavor::Lefschetz).unwrap();
        let h = verify(x, &a, &ops, &EngineOptions::default()).unwrap();
        let l = verify(lx, &a, &ops, &EngineOptions::default()).unwrap();
        let embed = |v: Value| match v {
            Value::Int(i) => Value::Scalar(Q.from_bigint(&i)),
            Value::IntMatrix(m) => Value::Matrix(m.to_matrix(Q)),
            other => other,
        };
        assert_eq!(h.lhs.map(embed), l.lhs);
    }
}

#[test]
fn mismatched_operands_are_rejected() {
    let a = alg(examples::a2(Q));
    let ops = random_operands(&id("module/cohomological/hrr"), &a, 0).unwrap();
    assert!(verify(id("complex/cohomological/hrr"), &a, &ops, &EngineOptions::default()).is_err());
    assert!(verify(id("module/homological/hrr"), &a, &ops, &EngineOptions::default()).is_err());
}

#[test]
fn corollaries_on_a2() {
    let a = alg(examples::a2(Q));
    let rs = verify_corollaries(&a, &EngineOptions::default()).unwrap();
    assert_eq!(rs.len(), 3);
    assert!(rs.iter().all(|r| r.pass));
    assert_eq!(rs[0].rhs, Some(Value::Int(BigInt::from(1))));
    assert_eq!(rs[1].lhs, Some(Value::Int(BigInt::from(2))));
}

#[test]
fn pairing_of_a2() {
    let a = alg(examples::a2(Q));
    assert_eq!(shklyarov_pairing_matrix(&a).unwrap(), IntMatrix::from_i64_rows(&[&[1, 1], &[0, 1]]));
}

#[test]
fn closed_forms_and_lemmas() {
    let b = alg(examples::a2(Q));
    for (_, p) in examples::bundled(Q) {
        let a = alg(p);
        for r in verify_closed_forms(&a, 3, 1, &EngineOptions::default()).unwrap() {
            assert!(r.pass, "{}", r.check);
        }
        for r in verify_lemma_suite(&a, &b, 3, 1, &EngineOptions::default()).unwrap() {
            assert!(r.pass, "{} {:?}", r.check, r.diagnosis);
        }
    }
}

#[test]
fn dual_numbers_fail_preflight() {
    let d = alg(examples::dual_numbers(Q));
    let s = simple_module(&d, 0).unwrap();
    let ops = Operands::Modules { m: s.clone(), n: s, phi: None, psi: None };
    let e = verify(id("module/cohomological/hrr"), &d, &ops, &EngineOptions { cap: 6, lift_seed: None }).unwrap_err();
    assert!(matches!(e, Error::Unimodularity { .. } | Error::CapExceeded { .. }));
}

#[test]
fn digests_are_stable() {
    let a = alg(examples::a2(Q));
    let x = id("complex/homological/lefschetz");
    let o1 = random_operands(&x, &a, 5).unwrap();
    let o2 = random_operands(&x, &a, 5).unwrap();
    assert_eq!(inputs_digest(Some(&x), a.presentation(), Some(&o1)), inputs_digest(Some(&x), a.presentation(), Some(&o2)));
    let o3 = random_operands(&x, &a, 6).unwrap();
    assert_ne!(inputs_digest(Some(&x), a.presentation(), Some(&o1)), inputs_digest(Some(&x), a.presentation(), Some(&o3)));
}
