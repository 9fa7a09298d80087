use std::sync::Arc;

use num_bigint::BigInt;

use super::*;
use crate::algebra::{build_algebra, examples, opposite_algebra};
use crate::bimodule::regular_bimodule;
use crate::complex::{random_chain_endomorphism, random_complex};
use crate::linalg::FieldSpec;
use crate::module::{random_endomorphism, random_module, simple_module};

const Q: FieldSpec = FieldSpec::Rationals;

fn alg(p: crate::quiver::Presentation) -> Arc<Algebra> {
    Arc::new(build_algebra(&p).unwrap())
}

fn bundled() -> Vec<Arc<Algebra>> {
    examples::bundled(Q).into_iter().map(|(_, p)| alg(p)).collect()
}

fn opts() -> EngineOptions {
    EngineOptions::default()
}

#[test]
fn ext_between_simples_of_a2() {
    let a = alg(examples::a2(Q));
    let s1 = simple_module(&a, 0).unwrap();
    let s2 = simple_module(&a, 1).unwrap();
    let e = ext_data(&s1, &s2, None, None, &opts()).unwrap();
    assert_eq!((e.dim(0), e.dim(1)), (0, 1));
    assert_eq!(e.euler, BigInt::from(-1));
    let e = ext_data(&s1, &s1, None, None, &opts()).unwrap();
    assert_eq!((e.dim(0), e.dim(1)), (1, 0));
    let e = ext_data(&s2, &s1, None, None, &opts()).unwrap();
    assert_eq!(e.euler, BigInt::from(0));
}

#[test]
fn euler_forms_of_random_modules() {
    for a in bundled() {
        let rd = a.ringel_data().unwrap();
        let op = opposite_algebra(&a).unwrap();
        for seed in 0..6 {
            let m = random_module(&a, seed, 3);
            let n = random_module(&a, seed + 100, 3);
            let e = ext_data(&m, &n, None, None, &opts()).unwrap();
            assert_eq!(&e.euler, rd.form(&m.dim_vector(), &n.dim_vector()).get(0, 0));
            let l = random_module(&op, seed + 200, 3);
            let t = tor_data(&m, &l, None, None, &opts()).unwrap();
            assert_eq!(&t.euler, rd.opposite_form(&l.dim_vector(), &m.dim_vector()).get(0, 0));
        }
    }
}

#[test]
fn tor_agrees_with_balancing_quotient() {
    for a in bundled() {
        let op = opposite_algebra(&a).unwrap();
        for seed in 0..5 {
            let m = random_module(&a, seed, 3);
            let n = random_module(&op, seed + 50, 3);
            let phi = random_endomorphism(&m, seed + 1);
            let psi = random_endomorphism(&n, seed + 2);
            let x = tor_data(&m, &n, Some(&phi), Some(&psi), &opts()).unwrap();
            let y = tor_data_balanced(&m, &n, Some(&phi), Some(&psi), 32).unwrap();
            assert_eq!(x.levels, y.levels);
            assert_eq!(x.lefschetz, y.lefschetz);
        }
    }
}

#[test]
fn hochschild_eulers_of_regular_bimodule() {
    for a in bundled() {
        let rd = a.ringel_data().unwrap();
        let reg = regular_bimodule(&a).unwrap();
        let hc = hochschild_cohomology_data(&a, &reg, None, &opts()).unwrap();
        assert_eq!(hc.euler, rd.coxeter.trace() * -1);
        let hh = hochschild_homology_data(&a, &reg, None, &opts()).unwrap();
        assert_eq!(hh.euler, BigInt::from(a.n()));
        // HH_0(A) has dimension n for these triangular algebras
        assert_eq!(hh.dim(0), a.n());
    }
}

#[test]
fn bimodule_resolution_multiplicities_match_ext_between_simples() {
    for a in bundled() {
        let t = hochschild_multiplicities(&a, 32).unwrap();
        let n = a.n();
        let mut exts = vec![vec![None; n]; n];
        for i in 0..n {
            for j in 0..n {
                let si = simple_module(&a, i).unwrap();
                let sj = simple_module(&a, j).unwrap();
                exts[i][j] = Some(ext_data(&si, &sj, None, None, &opts()).unwrap());
            }
        }
        for l in 0..t.len().max(3) {
            for i in 0..n {
                for j in 0..n {
                    let tl = t.get(l).map_or(BigInt::from(0), |m| m.get(i, j).clone());
                    let e = exts[i][j].as_ref().unwrap().dim(l as i64);
                    assert_eq!(tl, BigInt::from(e), "l={l} i={i} j={j}");
                }
            }
        }
    }
}

#[test]
fn replacement_of_concentrated_complex_matches_resolution() {
    let a = alg(examples::a3_rel(Q));
    for seed in 0..5 {
        let m = random_module(&a, seed, 3);
        let n = random_module(&a, seed + 9, 3);
        let phi = random_endomorphism(&m, seed + 3);
        let psi = random_endomorphism(&n, seed + 4);
        let x = ext_data(&m, &n, Some(&phi), Some(&psi), &opts()).unwrap();
        let mc = Arc::new(Complex::concentrated(&m, 0));
        let nc = Arc::new(Complex::concentrated(&n, 0));
        let phic = ChainMap::new(mc.clone(), mc.clone(), 0, vec![phi.clone()]).unwrap();
        let psic = ChainMap::new(nc.clone(), nc.clone(), 0, vec![psi.clone()]).unwrap();
        let y = ext_complex_data(&mc, &nc, Some(&phic), Some(&psic), &opts()).unwrap();
        assert_eq!(x.euler, y.euler);
        assert_eq!(x.lefschetz, y.lefschetz);
        for d in 0..3 {
            assert_eq!(x.dim(d), y.dim(d));
            assert_eq!(x.trace(d), y.trace(d));
        }
    }
}

#[test]
fn replacements_are_quasi_isomorphisms() {
    for a in bundled() {
        for seed in 0..4 {
            let c = Arc::new(random_complex(&a, seed, -1, 3, 2));
            let r = projective_replacement(&c, 32).unwrap();
            let eps = r.augmentation_chain_map(&c).unwrap();
            assert!(eps.is_quasi_isomorphism());
            let phi = random_chain_endomorphism(&c, seed + 7);
            let lifts = r.lift_endomorphism(&phi, None).unwrap();
            for (k, x) in lifts.iter().enumerate() {
                let l = r.complex.lo + k as i64;
                assert_eq!(x.then(&r.augmentation[k]).maps(), r.augmentation[k].then(&phi.map(l)).maps());
            }
        }
    }
}

#[test]
fn complex_euler_forms() {
    for a in bundled() {
        let rd = a.ringel_data().unwrap();
        let op = opposite_algebra(&a).unwrap();
        for seed in 0..4 {
            let m = random_complex(&a, seed, -1, 3, 2);
            let n = random_complex(&a, seed + 20, 0, 2, 2);
            let e = ext_complex_data(&m, &n, None, None, &opts()).unwrap();
            assert_eq!(&e.euler, rd.form(&m.dim_vector(), &n.dim_vector()).get(0, 0));
            let l = random_complex(&op, seed + 40, 0, 2, 2);
            let t = tor_complex_data(&m, &l, None, None, &opts()).unwrap();
            assert_eq!(&t.euler, rd.opposite_form(&l.dim_vector(), &m.dim_vector()).get(0, 0));
        }
    }
}

#[test]
fn lefschetz_numbers_do_not_depend_on_lifts() {
    let a = alg(examples::kronecker(Q));
    for seed in 0..4 {
        let m = random_module(&a, seed, 3);
        let n = random_module(&a, seed + 1, 3);
        let phi = random_endomorphism(&m, seed + 2);
        let psi = random_endomorphism(&n, seed + 3);
        let base = ext_data(&m, &n, Some(&phi), Some(&psi), &opts()).unwrap();
        for s in 0..3 {
            let o = EngineOptions { lift_seed: Some(s), ..opts() };
            assert_eq!(ext_data(&m, &n, Some(&phi), Some(&psi), &o).unwrap(), base);
        }
    }
}

#[test]
fn infinite_global_dimension_hits_the_cap() {
    let d = alg(examples::dual_numbers(Q));
    let s = simple_module(&d, 0).unwrap();
    let o = EngineOptions { cap: 4, lift_seed: None };
    assert_eq!(ext_data(&s, &s, None, None, &o), Err(Error::CapExceeded { cap: 4 }));
}
