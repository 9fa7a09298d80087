use std::sync::Arc;

use proptest::prelude::*;

use hrrcheck_core::algebra::{build_algebra, examples, opposite_algebra, Algebra};
use hrrcheck_core::bimodule::{bimodule_algebra, outer_tensor, outer_tensor_endomorphism, Bimodule};
use hrrcheck_core::complex::{random_chain_endomorphism, random_complex};
use hrrcheck_core::homological::{
    ext_data, minimal_projective_resolution, projective_replacement, tor_data, tor_data_balanced, EngineOptions,
};
use hrrcheck_core::linalg::{FieldSpec, IntMatrix, Matrix};
use hrrcheck_core::module::{dual_module, random_endomorphism, random_module, Morphism};
use hrrcheck_core::verify::{chern_character, random_operands, verify, IdentityId};

const Q: FieldSpec = FieldSpec::Rationals;

fn bundled() -> Vec<Arc<Algebra>> {
    examples::bundled(Q).into_iter().map(|(_, p)| Arc::new(build_algebra(&p).unwrap())).collect()
}

fn small_matrix(field: FieldSpec) -> impl Strategy<Value = Matrix> {
    (1usize..5, 1usize..5).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-3i64..4, r * c).prop_map(move |v| {
            Matrix::from_fn(field, r, c, |i, j| field.from_i64(v[i * c + j]))
        })
    })
}

fn field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![Just(Q), Just(FieldSpec::Prime(2)), Just(FieldSpec::Prime(5)), Just(FieldSpec::Prime(101))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_nullity(m in field().prop_flat_map(small_matrix)) {
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.cols(), m.cols());
        prop_assert!(m.mul(&k).is_zero());
        let l = m.left_kernel();
        prop_assert!(l.mul(&m).is_zero());
        prop_assert_eq!(l.rows() + m.rank(), m.rows());
    }

    #[test]
    fn inverse_when_square(m in small_matrix(Q)) {
        if m.is_square() {
            match m.inverse() {
                Some(inv) => prop_assert_eq!(m.mul(&inv), Matrix::identity(Q, m.rows())),
                None => prop_assert!(m.rank() < m.rows()),
            }
        }
    }

    #[test]
    fn kronecker_trace_is_multiplicative(a in small_matrix(Q), b in small_matrix(Q)) {
        if a.is_square() && b.is_square() {
            prop_assert_eq!(a.kronecker(&b).trace(), a.trace().mul(&b.trace()));
        }
    }

    #[test]
    fn ext_euler_is_the_ringel_form(alg in 0usize..4, seed in 0u64..10_000) {
        let a = bundled()[alg].clone();
        let rd = a.ringel_data().unwrap();
        let m = random_module(&a, seed, 3);
        let n = random_module(&a, seed ^ 0xabc, 3);
        let e = ext_data(&m, &n, None, None, &EngineOptions::default()).unwrap();
        let rhs = rd.form(&m.dim_vector(), &n.dim_vector());
        prop_assert_eq!(&e.euler, rhs.get(0, 0));
    }

    #[test]
    fn minimal_resolutions_are_exact_and_radical(alg in 0usize..4, seed in 0u64..10_000) {
        let a = bundled()[alg].clone();
        let m = random_module(&a, seed, 4);
        let r = minimal_projective_resolution(&m, 32).unwrap();
        prop_assert!(r.verify().is_ok());
    }

    #[test]
    fn tor_routes_agree(alg in 0usize..4, seed in 0u64..10_000) {
        let a = bundled()[alg].clone();
        let op = opposite_algebra(&a).unwrap();
        let m = random_module(&a, seed, 3);
        let n = random_module(&op, seed + 1, 3);
        let phi = random_endomorphism(&m, seed + 2);
        let psi = random_endomorphism(&n, seed + 3);
        let x = tor_data(&m, &n, Some(&phi), Some(&psi), &EngineOptions::default()).unwrap();
        let y = tor_data_balanced(&m, &n, Some(&phi), Some(&psi), 32).unwrap();
        prop_assert_eq!(x, y);
    }

    #[test]
    fn ext_against_dual_tor(alg in 0usize..4, seed in 0u64..10_000) {
        let a = bundled()[alg].clone();
        let m = random_module(&a, seed, 3);
        let n = random_module(&a, seed + 7, 3);
        let e = ext_data(&m, &n, None, None, &EngineOptions::default()).unwrap();
        let t = tor_data(&m, &dual_module(&n).unwrap(), None, None, &EngineOptions::default()).unwrap();
        prop_assert_eq!(&e.euler, &t.euler);
        for l in 0..4 {
            prop_assert_eq!(e.dim(l), t.dim(-l));
        }
    }

    #[test]
    fn module_identities(alg in 0usize..4, seed in 0u64..10_000, which in 0usize..8) {
        let a = bundled()[alg].clone();
        let ids: Vec<IdentityId> = IdentityId::all().into_iter().filter(|x| x.level.name() == "module").collect();
        let id = ids[which];
        let ops = random_operands(&id, &a, seed).unwrap();
        let r = verify(id, &a, &ops, &EngineOptions::default()).unwrap();
        prop_assert!(r.pass, "{} {:?} {:?}", id, r.lhs, r.rhs);
    }

    #[test]
    fn higher_level_identities(alg in 0usize..4, seed in 0u64..10_000, which in 0usize..16) {
        let a = bundled()[alg].clone();
        let ids: Vec<IdentityId> = IdentityId::all().into_iter().filter(|x| x.level.name() != "module").collect();
        let id = ids[which];
        let ops = random_operands(&id, &a, seed).unwrap();
        let r = verify(id, &a, &ops, &EngineOptions::default()).unwrap();
        prop_assert!(r.pass, "{} {:?} {:?}", id, r.lhs, r.rhs);
    }

    #[test]
    fn bimodule_dimension_and_trace_lemmas(alg in 0usize..4, seed in 0u64..10_000) {
        let a = bundled()[alg].clone();
        let b = Arc::new(build_algebra(&examples::a2(Q)).unwrap());
        let env = bimodule_algebra(&b, &a).unwrap();
        let m = Bimodule::new(b.clone(), a.clone(), random_module(&env, seed, 3)).unwrap();
        let phi = random_endomorphism(m.module(), seed + 1);
        let psi = random_endomorphism(m.module(), seed + 2);
        let d = m.dual().unwrap();
        prop_assert_eq!(d.dim_matrix(), m.dim_matrix().transpose());
        prop_assert_eq!(d.trace_matrix(&m.dual_endomorphism(&phi, &d)).unwrap(), m.trace_matrix(&phi).unwrap().transpose());
        prop_assert_eq!(
            m.trace_matrix(&phi.add(&psi)).unwrap(),
            m.trace_matrix(&phi).unwrap().add(&m.trace_matrix(&psi).unwrap())
        );
        prop_assert_eq!(m.trace_matrix(&phi.then(&psi)).unwrap(), m.trace_matrix(&psi.then(&phi)).unwrap());
        prop_assert_eq!(m.trace_matrix(&Morphism::identity(m.module())).unwrap(), m.dim_matrix().to_matrix(Q));
        prop_assert_eq!(m.module().dim_vector(), m.dim_matrix().vec_columns());

        let bop = opposite_algebra(&b).unwrap();
        let nl = random_module(&bop, seed + 3, 3);
        let r = random_module(&a, seed + 4, 3);
        let t = outer_tensor(&nl, &r).unwrap();
        prop_assert_eq!(t.dim_matrix(), r.dim_vector().mul(&nl.dim_vector().transpose()));
        let (f1, f2) = (random_endomorphism(&nl, seed + 5), random_endomorphism(&r, seed + 6));
        let te = outer_tensor_endomorphism(&t, &f1, &f2);
        prop_assert_eq!(
            t.trace_matrix(&te).unwrap(),
            f2.trace_vector().unwrap().mul(&f1.trace_vector().unwrap().transpose())
        );
    }

    #[test]
    fn replacement_preserves_classes(alg in 0usize..4, seed in 0u64..10_000, lo in -1i64..2, len in 1usize..4) {
        let a = bundled()[alg].clone();
        let c = Arc::new(random_complex(&a, seed, lo, len, 2));
        let r = projective_replacement(&c, 32).unwrap();
        prop_assert!(r.augmentation_chain_map(&c).unwrap().is_quasi_isomorphism());
        let pc = r.complex.to_complex().unwrap();
        prop_assert_eq!(chern_character(&pc).unwrap(), chern_character(&c).unwrap());
        prop_assert_eq!(c.dim_vector(), c.cohomology_dim_vector());
        let phi = random_chain_endomorphism(&c, seed + 1);
        prop_assert_eq!(phi.trace_vector().unwrap(), phi.cohomology_trace_vector().unwrap());
    }

    #[test]
    fn cartan_inverse_is_integral(alg in 0usize..4) {
        let a = bundled()[alg].clone();
        let rd = a.ringel_data().unwrap();
        prop_assert_eq!(rd.cartan.mul(&rd.cartan_inverse), IntMatrix::identity(a.n()));
        prop_assert_eq!(rd.coxeter.trace(), -rd.cartan_inverse.transpose().mul(&rd.cartan).trace());
    }
}
