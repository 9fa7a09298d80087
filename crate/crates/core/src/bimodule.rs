//! B-A-bimodules stored as right modules over `B^op (x) A`.
//!
//! Product vertex `(j, i)` (index `j * n_A + i`) carries `f_j M e_i`. Arrows `(beta^op, i)`
//! give the left B-action, arrows `(j, alpha)` the right A-action.

use std::sync::Arc;

use crate::algebra::{opposite_algebra, tensor_algebra, tensor_left_arrow, tensor_right_arrow, Algebra};
use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, Matrix};
use crate::module::{Morphism, Rep, Representation};

#[derive(Debug, Clone)]
pub struct Bimodule {
    left: Arc<Algebra>,
    right: Arc<Algebra>,
    module: Rep,
}

impl PartialEq for Bimodule {
    fn eq(&self, o: &Self) -> bool {
        self.left.same_as(&o.left) && self.right.same_as(&o.right) && self.module == o.module
    }
}

/// The algebra `B^op (x) A` over which B-A-bimodules live.
pub fn bimodule_algebra(left: &Algebra, right: &Algebra) -> Result<Arc<Algebra>> {
    let bop = opposite_algebra(left)?;
    tensor_algebra(&bop, right)
}

impl Bimodule {
    pub fn new(left: Arc<Algebra>, right: Arc<Algebra>, module: Rep) -> Result<Self> {
        let env = bimodule_algebra(&left, &right)?;
        if !env.same_as(module.algebra()) {
            return Err(Error::Validation(
                "bimodule data must be a module over the opposite-left tensor right algebra".into(),
            ));
        }
        Ok(Bimodule { left, right, module })
    }

    pub fn left(&self) -> &Arc<Algebra> {
        &self.left
    }

    pub fn right(&self) -> &Arc<Algebra> {
        &self.right
    }

    pub fn module(&self) -> &Rep {
        &self.module
    }

    fn vertex(&self, i: usize, j: usize) -> usize {
        j * self.right.n() + i
    }

    /// `dim f_j M e_i` (i a right vertex, j a left vertex).
    pub fn dim_at(&self, i: usize, j: usize) -> usize {
        self.module.dim_at(self.vertex(i, j))
    }

    /// The `n x m` dimension matrix, `n` = vertices of the right algebra.
    pub fn dim_matrix(&self) -> IntMatrix {
        IntMatrix::unvec_columns(&self.module.dim_vector(), self.right.n(), self.left.n())
    }

    /// Trace matrix of an endomorphism of the underlying module.
    pub fn trace_matrix(&self, phi: &Morphism) -> Result<Matrix> {
        let tv = phi.trace_vector()?;
        if tv.rows() != self.module.dims().len() {
            return Err(Error::Dimension("endomorphism does not match the bimodule".into()));
        }
        let (n, m) = (self.right.n(), self.left.n());
        Ok(Matrix::from_fn(self.module.field(), n, m, |i, j| tv.get(j * n + i, 0).clone()))
    }

    /// `f_j M` as a right module over the right algebra.
    pub fn left_component(&self, j: usize) -> Rep {
        let a = &self.right;
        let bop = opposite_algebra(&self.left).expect("left algebra builds");
        let dims = (0..a.n()).map(|i| self.dim_at(i, j)).collect();
        let actions = (0..a.arrow_count())
            .map(|al| self.module.action(tensor_right_arrow(&bop, a, j, al)).clone())
            .collect();
        Representation::new_unchecked(a.clone(), dims, actions)
    }

    /// Restriction of a bimodule endomorphism to `f_j M`.
    pub fn restrict_left(&self, phi: &Morphism, j: usize, component: &Rep) -> Morphism {
        restrict_left_between(phi, j, component, component)
    }

    /// `M e_i` as a left module over the left algebra (a module over its opposite).
    pub fn right_component(&self, i: usize) -> Rep {
        let bop = opposite_algebra(&self.left).expect("left algebra builds");
        let dims = (0..self.left.n()).map(|j| self.dim_at(i, j)).collect();
        let actions = (0..bop.arrow_count())
            .map(|be| self.module.action(tensor_left_arrow(&bop, &self.right, be, i)).clone())
            .collect();
        Representation::new_unchecked(bop, dims, actions)
    }

    /// Restriction of a bimodule endomorphism to `M e_i`.
    pub fn restrict_right(&self, phi: &Morphism, i: usize, component: &Rep) -> Morphism {
        restrict_right_between(phi, self.right.n(), i, component, component)
    }

    /// The dual A-B-bimodule `Hom_k(M, k)`.
    pub fn dual(&self) -> Result<Bimodule> {
        let (a, b) = (&self.right, &self.left);
        let env = bimodule_algebra(a, b)?;
        let aop = opposite_algebra(a)?;
        let bop = opposite_algebra(b)?;
        let (n, m) = (a.n(), b.n());
        let dims = (0..n * m).map(|v| self.dim_at(v / m, v % m)).collect();
        let mut actions = vec![Matrix::zeros(a.field(), 0, 0); env.arrow_count()];
        for al in 0..a.arrow_count() {
            for j in 0..m {
                actions[tensor_left_arrow(&aop, b, al, j)] =
                    self.module.action(tensor_right_arrow(&bop, a, j, al)).transpose();
            }
        }
        for be in 0..b.arrow_count() {
            for i in 0..n {
                actions[tensor_right_arrow(&aop, b, i, be)] =
                    self.module.action(tensor_left_arrow(&bop, a, be, i)).transpose();
            }
        }
        let module = Representation::new_unchecked(env, dims, actions);
        Bimodule::new(a.clone(), b.clone(), module)
    }

    /// Transpose of an endomorphism, as an endomorphism of `dual`.
    pub fn dual_endomorphism(&self, phi: &Morphism, dual: &Bimodule) -> Morphism {
        let m = self.left.n();
        let maps = (0..dual.module.dims().len())
            .map(|v| phi.map(self.vertex(v / m, v % m)).transpose())
            .collect();
        Morphism::new_unchecked(dual.module.clone(), dual.module.clone(), maps)
    }

    /// An A-A-bimodule as a left module over `A^op (x) A`, i.e. a module over the
    /// opposite of the enveloping algebra; this is the coefficient form for Tor.
    pub fn as_left_enveloping(&self) -> Result<Rep> {
        let a = &self.right;
        if !a.same_as(&self.left) {
            return Err(Error::Validation("coefficient bimodule must have equal left and right algebras".into()));
        }
        let env = self.module.algebra().clone();
        let target = opposite_algebra(&env)?;
        let aop = opposite_algebra(a)?;
        let n = a.n();
        let dims = (0..n * n).map(|v| self.module.dim_at((v % n) * n + v / n)).collect();
        let mut actions = vec![Matrix::zeros(a.field(), 0, 0); env.arrow_count()];
        for be in 0..a.arrow_count() {
            for i in 0..n {
                actions[tensor_left_arrow(&aop, a, be, i)] =
                    self.module.action(tensor_right_arrow(&aop, a, i, be)).clone();
            }
        }
        for j in 0..n {
            for al in 0..a.arrow_count() {
                actions[tensor_right_arrow(&aop, a, j, al)] =
                    self.module.action(tensor_left_arrow(&aop, a, al, j)).clone();
            }
        }
        Ok(Representation::new_unchecked(target, dims, actions))
    }

    /// A bimodule endomorphism transported to [`as_left_enveloping`](Self::as_left_enveloping).
    pub fn left_enveloping_endomorphism(&self, phi: &Morphism, converted: &Rep) -> Morphism {
        left_enveloping_between(phi, self.right.n(), converted, converted)
    }
}

/// A bimodule map restricted to `f_j M -> f_j M'`; `s` and `t` are the components.
pub fn restrict_left_between(f: &Morphism, j: usize, s: &Rep, t: &Rep) -> Morphism {
    let n = s.algebra().n();
    let maps = (0..n).map(|i| f.map(j * n + i).clone()).collect();
    Morphism::new_unchecked(s.clone(), t.clone(), maps)
}

/// A bimodule map restricted to `M e_i -> M' e_i`; `n` is the number of right vertices.
pub fn restrict_right_between(f: &Morphism, n: usize, i: usize, s: &Rep, t: &Rep) -> Morphism {
    let m = s.algebra().n();
    let maps = (0..m).map(|j| f.map(j * n + i).clone()).collect();
    Morphism::new_unchecked(s.clone(), t.clone(), maps)
}

/// A map of A-A-bimodules transported to the left enveloping form.
pub fn left_enveloping_between(f: &Morphism, n: usize, s: &Rep, t: &Rep) -> Morphism {
    let maps = (0..n * n).map(|v| f.map((v % n) * n + v / n).clone()).collect();
    Morphism::new_unchecked(s.clone(), t.clone(), maps)
}

/// `N (x)_k M` for a left B-module `N` (a module over `B^op`) and a right A-module `M`.
pub fn outer_tensor(nl: &Rep, m: &Rep) -> Result<Bimodule> {
    if nl.field() != m.field() {
        return Err(Error::Validation(format!("field mismatch: {} vs {}", nl.field(), m.field())));
    }
    let bop = nl.algebra().clone();
    let a = m.algebra().clone();
    let b = opposite_algebra(&bop)?;
    let env = tensor_algebra(&bop, &a)?;
    let f = m.field();
    let (n, mm) = (a.n(), bop.n());
    let dims = (0..n * mm).map(|v| nl.dim_at(v / n) * m.dim_at(v % n)).collect();
    let mut actions = vec![Matrix::zeros(f, 0, 0); env.arrow_count()];
    for be in 0..bop.arrow_count() {
        for i in 0..n {
            actions[tensor_left_arrow(&bop, &a, be, i)] =
                nl.action(be).kronecker(&Matrix::identity(f, m.dim_at(i)));
        }
    }
    for j in 0..mm {
        for al in 0..a.arrow_count() {
            actions[tensor_right_arrow(&bop, &a, j, al)] =
                Matrix::identity(f, nl.dim_at(j)).kronecker(m.action(al));
        }
    }
    let module = Representation::new_unchecked(env, dims, actions);
    Bimodule::new(b, a, module)
}

/// `psi (x) phi` on an outer tensor product.
pub fn outer_tensor_endomorphism(t: &Bimodule, psi: &Morphism, phi: &Morphism) -> Morphism {
    let n = t.right.n();
    let maps = (0..t.module.dims().len())
        .map(|v| psi.map(v / n).kronecker(phi.map(v % n)))
        .collect();
    Morphism::new_unchecked(t.module.clone(), t.module.clone(), maps)
}

/// `A` as an A-A-bimodule: vertex `(j, i)` carries `e_j A e_i`.
pub fn regular_bimodule(a: &Arc<Algebra>) -> Result<Bimodule> {
    let env = bimodule_algebra(a, a)?;
    let aop = opposite_algebra(a)?;
    let f = a.field();
    let n = a.n();
    let pos = crate::module::peirce_positions(a);
    let dims: Vec<usize> = (0..n * n).map(|v| a.peirce_list(v / n, v % n).len()).collect();
    let mut actions = vec![Matrix::zeros(f, 0, 0); env.arrow_count()];
    for be in 0..a.arrow_count() {
        let ar = a.arrow(be);
        let (u, v) = (ar.source, ar.target);
        for i in 0..n {
            let mut x = Matrix::zeros(f, dims[v * n + i], dims[u * n + i]);
            if let Some(elem) = a.arrow_element(be) {
                for (r, &bb) in a.peirce_list(v, i).iter().enumerate() {
                    for (c, val) in a.basis_product(elem, bb) {
                        x.set(r, pos[*c], val.clone());
                    }
                }
            }
            actions[tensor_left_arrow(&aop, a, be, i)] = x;
        }
    }
    for j in 0..n {
        for al in 0..a.arrow_count() {
            let ar = a.arrow(al);
            let (i, i2) = (ar.source, ar.target);
            let mut x = Matrix::zeros(f, dims[j * n + i], dims[j * n + i2]);
            if let Some(elem) = a.arrow_element(al) {
                for (r, &bb) in a.peirce_list(j, i).iter().enumerate() {
                    for (c, val) in a.basis_product(bb, elem) {
                        x.set(r, pos[*c], val.clone());
                    }
                }
            }
            actions[tensor_right_arrow(&aop, a, j, al)] = x;
        }
    }
    let module = Representation::new_unchecked(env, dims, actions);
    Bimodule::new(a.clone(), a.clone(), module)
}

/// A right A-module as a k-A-bimodule.
pub fn right_module_as_bimodule(m: &Rep) -> Result<Bimodule> {
    let k = Arc::new(crate::algebra::build_algebra(&crate::algebra::examples::field_algebra(m.field()))?);
    let env = bimodule_algebra(&k, m.algebra())?;
    Bimodule::new(k, m.algebra().clone(), m.with_algebra(env))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, examples};
    use crate::linalg::FieldSpec;
    use crate::module::{indecomposable_projective, random_endomorphism, random_module, simple_module};

    const Q: FieldSpec = FieldSpec::Rationals;

    fn alg(p: crate::quiver::Presentation) -> Arc<Algebra> {
        Arc::new(build_algebra(&p).unwrap())
    }

    #[test]
    fn regular_bimodule_has_cartan_dimension_matrix() {
        for (_, p) in examples::bundled(Q) {
            let a = alg(p);
            let r = regular_bimodule(&a).unwrap();
            r.module().check().unwrap();
            assert_eq!(r.dim_matrix(), a.cartan_matrix());
        }
    }

    #[test]
    fn outer_tensor_of_simples() {
        let a = alg(examples::a2(Q));
        let s1 = simple_module(&a, 0).unwrap();
        let s2 = simple_module(&a, 1).unwrap();
        let s2l = crate::module::dual_module(&s2).unwrap();
        let t = outer_tensor(&s2l, &s1).unwrap();
        t.module().check().unwrap();
        assert_eq!(t.dim_matrix(), IntMatrix::from_i64_rows(&[&[0, 1], &[0, 0]]));
    }

    #[test]
    fn outer_tensor_dimensions_and_traces() {
        let a = alg(examples::a3_rel(Q));
        let b = alg(examples::a2(Q));
        let bop = opposite_algebra(&b).unwrap();
        for seed in 0..10 {
            let m = random_module(&a, seed, 2);
            let nl = random_module(&bop, seed + 100, 2);
            let t = outer_tensor(&nl, &m).unwrap();
            t.module().check().unwrap();
            let dm = m.dim_vector().mul(&nl.dim_vector().transpose());
            assert_eq!(t.dim_matrix(), dm);
            let phi = random_endomorphism(&m, seed);
            let psi = random_endomorphism(&nl, seed);
            let e = outer_tensor_endomorphism(&t, &psi, &phi);
            e.check().unwrap();
            let tm = phi.trace_vector().unwrap().mul(&psi.trace_vector().unwrap().transpose());
            assert_eq!(t.trace_matrix(&e).unwrap(), tm);
        }
    }

    #[test]
    fn dual_transposes_dimension_and_trace_matrices() {
        let a = alg(examples::a3_rel(Q));
        let b = alg(examples::a2(Q));
        let env = bimodule_algebra(&b, &a).unwrap();
        for seed in 0..10 {
            let m = Bimodule::new(b.clone(), a.clone(), random_module(&env, seed, 2)).unwrap();
            let d = m.dual().unwrap();
            d.module().check().unwrap();
            assert_eq!(d.dim_matrix(), m.dim_matrix().transpose());
            let phi = random_endomorphism(m.module(), seed);
            let dphi = m.dual_endomorphism(&phi, &d);
            dphi.check().unwrap();
            assert_eq!(d.trace_matrix(&dphi).unwrap(), m.trace_matrix(&phi).unwrap().transpose());
            let dd = d.dual().unwrap();
            assert_eq!(dd.module().dims(), m.module().dims());
        }
    }

    #[test]
    fn components_match_columns_and_rows() {
        let a = alg(examples::a2(Q));
        let r = regular_bimodule(&a).unwrap();
        for j in 0..2 {
            let c = r.left_component(j);
            c.check().unwrap();
            let p = indecomposable_projective(&a, j).unwrap();
            assert_eq!(c.dims(), p.dims());
        }
        for i in 0..2 {
            let c = r.right_component(i);
            c.check().unwrap();
        }
    }

    #[test]
    fn left_enveloping_form_is_valid() {
        let a = alg(examples::a3_rel(Q));
        let r = regular_bimodule(&a).unwrap();
        let l = r.as_left_enveloping().unwrap();
        l.check().unwrap();
        let env = bimodule_algebra(&a, &a).unwrap();
        for seed in 0..5 {
            let m = Bimodule::new(a.clone(), a.clone(), random_module(&env, seed, 2)).unwrap();
            let l = m.as_left_enveloping().unwrap();
            l.check().unwrap();
            let phi = random_endomorphism(m.module(), seed);
            m.left_enveloping_endomorphism(&phi, &l).check().unwrap();
        }
    }
}
