use std::sync::Arc;

use rand_chacha::ChaCha8Rng;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::module::{morphism_from_generators, projective_sum, simple_module, Morphism, Rep};
use crate::random::random_scalar;

pub const DEFAULT_RESOLUTION_CAP: usize = 32;

/// `e_{v_1} A + ... + e_{v_k} A` together with its summand layout.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveSum {
    algebra: Arc<Algebra>,
    tops: Vec<usize>,
    module: Rep,
    /// `offsets[l][k]`: first coordinate of summand `k` at vertex `l`.
    offsets: Vec<Vec<usize>>,
}

impl ProjectiveSum {
    pub fn new(a: &Arc<Algebra>, tops: Vec<usize>) -> Self {
        let module = projective_sum(a, &tops);
        let offsets = (0..a.n())
            .map(|l| {
                let mut acc = 0;
                tops.iter()
                    .map(|&v| {
                        let o = acc;
                        acc += a.peirce_list(v, l).len();
                        o
                    })
                    .collect()
            })
            .collect();
        ProjectiveSum { algebra: a.clone(), tops, module, offsets }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn tops(&self) -> &[usize] {
        &self.tops
    }

    pub fn module(&self) -> &Rep {
        &self.module
    }

    pub fn is_zero(&self) -> bool {
        self.tops.is_empty()
    }

    /// Number of summands `e_v A` for each vertex `v`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.algebra.n()];
        for &v in &self.tops {
            m[v] += 1;
        }
        m
    }

    pub fn offset(&self, vertex: usize, summand: usize) -> usize {
        self.offsets[vertex][summand]
    }

    /// Row index of the k-th generator `e_{v_k}` inside the vertex-`v_k` space.
    pub fn generator_index(&self, k: usize) -> usize {
        // the idempotent is the first element of its Peirce list
        self.offsets[self.tops[k]][k]
    }

    /// Image of the k-th generator under `f`, a row in the target at vertex `v_k`.
    pub fn generator_image(&self, f: &Morphism, k: usize) -> Matrix {
        f.map(self.tops[k]).row_matrix(self.generator_index(k))
    }

    /// Morphism to `target` sending the generators to the given rows.
    pub fn morphism_to(&self, target: &Rep, images: &[Matrix]) -> Morphism {
        morphism_from_generators(&self.algebra, &self.tops, &self.module, target, images)
    }

    /// Whether the image of `f` (into this sum) lies in its radical.
    pub fn contains_in_radical(&self, f: &Morphism) -> bool {
        (0..self.algebra.n()).all(|v| {
            self.tops.iter().enumerate().filter(|(_, &t)| t == v).all(|(k, _)| {
                let col = self.offsets[v][k];
                (0..f.map(v).rows()).all(|r| f.map(v).get(r, col).is_zero())
            })
        })
    }
}

/// Projective cover `P -> M` with `P = sum (e_i A)^{m_i}`, `m_i = dim top(M) e_i`.
pub fn projective_cover(m: &Rep) -> (ProjectiveSum, Morphism) {
    let a = m.algebra().clone();
    let f = a.field();
    let n = a.n();
    let mut tops = Vec::new();
    let mut images = Vec::new();
    for v in 0..n {
        let d = m.dim_at(v);
        if d == 0 {
            continue;
        }
        let parts: Vec<&Matrix> = (0..a.arrow_count())
            .filter(|&k| a.arrow(k).target == v)
            .map(|k| m.action(k))
            .collect();
        let rad = Matrix::vstack(&parts, f, d);
        let (_, pivots) = rad.rref();
        for c in (0..d).filter(|c| !pivots.contains(c)) {
            let mut row = Matrix::zeros(f, 1, d);
            row.set(0, c, f.one());
            tops.push(v);
            images.push(row);
        }
    }
    let p = ProjectiveSum::new(&a, tops);
    let pi = p.morphism_to(m, &images);
    (p, pi)
}

/// Lift `g: P -> Y` through `e: P' -> Y`, assuming the image of `g` lies in that of `e`.
/// With an rng, random elements of the kernel of `e` are added to each generator image.
pub fn lift_through(
    p: &ProjectiveSum,
    g: &Morphism,
    target: &ProjectiveSum,
    e: &Morphism,
    mut rng: Option<&mut ChaCha8Rng>,
) -> Result<Morphism> {
    let f = p.algebra.field();
    let mut images = Vec::with_capacity(p.tops.len());
    for k in 0..p.tops.len() {
        let v = p.tops[k];
        let y = p.generator_image(g, k);
        let ev = e.map(v);
        let mut x = ev
            .solve_left(&y)?
            .ok_or_else(|| Error::InvariantViolation("lifting equation has no solution".into()))?;
        if let Some(r) = rng.as_deref_mut() {
            let ker = ev.left_kernel();
            for i in 0..ker.rows() {
                x = x.add(&ker.row_matrix(i).scale(&random_scalar(f, r)));
            }
        }
        images.push(x);
    }
    Ok(p.morphism_to(target.module(), &images))
}

/// A minimal projective resolution `... -> P_1 -> P_0 -> M`.
#[derive(Debug, Clone)]
pub struct Resolution {
    pub module: Rep,
    /// `P_0 .. P_d`; empty for the zero module.
    pub terms: Vec<ProjectiveSum>,
    pub augmentation: Morphism,
    /// `diffs[l - 1] = d_l : P_l -> P_{l-1}`.
    pub diffs: Vec<Morphism>,
}

impl Resolution {
    /// Projective dimension (`-1` for the zero module).
    pub fn length(&self) -> isize {
        self.terms.len() as isize - 1
    }

    pub fn term(&self, l: usize) -> &ProjectiveSum {
        &self.terms[l]
    }

    /// Multiplicity of `e_i A` in `P_l`.
    pub fn multiplicity(&self, l: usize, i: usize) -> usize {
        self.terms.get(l).map_or(0, |t| t.tops.iter().filter(|&&v| v == i).count())
    }

    /// Exactness and minimality by rank arithmetic.
    pub fn verify(&self) -> Result<()> {
        let a = self.module.algebra();
        let fail = |s: String| Err(Error::InvariantViolation(s));
        if self.terms.is_empty() {
            return if self.module.is_zero() { Ok(()) } else { fail("empty resolution of a nonzero module".into()) };
        }
        for v in 0..a.n() {
            let aug = self.augmentation.map(v);
            if aug.rank() != self.module.dim_at(v) {
                return fail(format!("augmentation not onto at vertex {}", v + 1));
            }
            let mut ker = aug.rows() - aug.rank();
            for d in &self.diffs {
                let m = d.map(v);
                if m.rank() != ker {
                    return fail(format!("resolution not exact at vertex {}", v + 1));
                }
                ker = m.rows() - m.rank();
            }
            if ker != 0 {
                return fail(format!("last differential not injective at vertex {}", v + 1));
            }
        }
        for (l, d) in self.diffs.iter().enumerate() {
            if !self.terms[l].contains_in_radical(d) {
                return fail(format!("differential d_{} leaves the radical", l + 1));
            }
        }
        Ok(())
    }

    /// Lift of an endomorphism of the resolved module to `P_0 .. P_d`.
    pub fn lift_endomorphism(&self, phi: &Morphism, mut rng: Option<&mut ChaCha8Rng>) -> Result<Vec<Morphism>> {
        let mut out: Vec<Morphism> = Vec::with_capacity(self.terms.len());
        for l in 0..self.terms.len() {
            let p = &self.terms[l];
            let lifted = if l == 0 {
                let g = self.augmentation.then(phi);
                lift_through(p, &g, p, &self.augmentation, rng.as_deref_mut())?
            } else {
                let d = &self.diffs[l - 1];
                let g = d.then(&out[l - 1]);
                lift_through(p, &g, p, d, rng.as_deref_mut())?
            };
            out.push(lifted);
        }
        Ok(out)
    }
}

/// Iterated projective covers of syzygies, failing when the length exceeds `cap`.
pub fn minimal_projective_resolution(m: &Rep, cap: usize) -> Result<Resolution> {
    let a = m.algebra().clone();
    if m.is_zero() {
        let p = ProjectiveSum::new(&a, vec![]);
        let aug = Morphism::zero(p.module(), m);
        return Ok(Resolution { module: m.clone(), terms: vec![], augmentation: aug, diffs: vec![] });
    }
    let (p0, aug) = projective_cover(m);
    let (mut k, mut inc) = aug.kernel();
    let mut terms = vec![p0];
    let mut diffs = Vec::new();
    while !k.is_zero() {
        if terms.len() > cap {
            return Err(Error::CapExceeded { cap });
        }
        let (p, pi) = projective_cover(&k);
        let d = pi.then(&inc);
        let (k2, inc2) = pi.kernel();
        diffs.push(d.retarget(p.module().clone(), terms.last().unwrap().module().clone()));
        terms.push(p);
        k = k2;
        inc = inc2;
    }
    Ok(Resolution { module: m.clone(), terms, augmentation: aug, diffs })
}

/// Maximum projective dimension of the simple modules.
pub fn global_dimension(a: &Arc<Algebra>, cap: usize) -> Result<usize> {
    let mut g = 0;
    for i in 0..a.n() {
        let r = minimal_projective_resolution(&simple_module(a, i)?, cap)?;
        g = g.max(r.length().max(0) as usize);
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, examples};
    use crate::linalg::FieldSpec;
    use crate::module::{indecomposable_projective, random_endomorphism, random_module};
    use crate::random::seeded;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn alg(p: crate::quiver::Presentation) -> Arc<Algebra> {
        Arc::new(build_algebra(&p).unwrap())
    }

    #[test]
    fn covers() {
        let a2 = alg(examples::a2(Q));
        let p1 = indecomposable_projective(&a2, 0).unwrap();
        let (p, pi) = projective_cover(&p1);
        assert_eq!(p.tops(), &[0]);
        assert!(pi.is_injective() && pi.is_surjective());
        let (p, pi) = projective_cover(&simple_module(&a2, 0).unwrap());
        assert_eq!(p.tops(), &[0]);
        assert_eq!(pi.kernel().0.dims(), &[0, 1]);
        let r = alg(examples::a3_rel(Q));
        let (p, pi) = projective_cover(&simple_module(&r, 0).unwrap());
        assert_eq!(p.module().dims(), &[1, 1, 0]);
        assert_eq!(pi.kernel().0.dims(), simple_module(&r, 1).unwrap().dims());
    }

    #[test]
    fn resolutions_of_simples() {
        let a2 = alg(examples::a2(Q));
        let r = minimal_projective_resolution(&simple_module(&a2, 1).unwrap(), 32).unwrap();
        assert_eq!(r.length(), 0);
        let r = minimal_projective_resolution(&simple_module(&a2, 0).unwrap(), 32).unwrap();
        assert_eq!(r.length(), 1);
        assert_eq!(r.term(1).tops(), &[1]);
        r.verify().unwrap();
        let a3 = alg(examples::a3_rel(Q));
        let r = minimal_projective_resolution(&simple_module(&a3, 0).unwrap(), 32).unwrap();
        assert_eq!(r.length(), 2);
        let tops: Vec<&[usize]> = r.terms.iter().map(|t| t.tops()).collect();
        assert_eq!(tops, vec![&[0][..], &[1][..], &[2][..]]);
        r.verify().unwrap();
    }

    #[test]
    fn global_dimensions() {
        assert_eq!(global_dimension(&alg(examples::field_algebra(Q)), 32).unwrap(), 0);
        assert_eq!(global_dimension(&alg(examples::a2(Q)), 32).unwrap(), 1);
        assert_eq!(global_dimension(&alg(examples::a3_rel(Q)), 32).unwrap(), 2);
        assert_eq!(global_dimension(&alg(examples::kronecker(Q)), 32).unwrap(), 1);
        let d = alg(examples::dual_numbers(Q));
        assert_eq!(global_dimension(&d, 5), Err(Error::CapExceeded { cap: 5 }));
    }

    #[test]
    fn random_resolutions_verify_and_lift() {
        let a = alg(examples::a3_rel(Q));
        for seed in 0..20 {
            let m = random_module(&a, seed, 3);
            let r = minimal_projective_resolution(&m, 32).unwrap();
            r.verify().unwrap();
            assert!(r.length() <= 2);
            let phi = random_endomorphism(&m, seed);
            let mut rng = seeded(seed);
            for lifted in [r.lift_endomorphism(&phi, None).unwrap(), r.lift_endomorphism(&phi, Some(&mut rng)).unwrap()] {
                for (l, x) in lifted.iter().enumerate() {
                    x.check().unwrap();
                    if l == 0 {
                        assert_eq!(x.then(&r.augmentation), r.augmentation.then(&phi));
                    } else {
                        assert_eq!(x.then(&r.diffs[l - 1]).maps(), r.diffs[l - 1].then(&lifted[l - 1]).maps());
                    }
                }
            }
        }
    }
}
