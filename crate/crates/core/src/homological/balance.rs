//! `X (x)_A Y` as an explicit quotient of `sum_v X e_v (x) e_v Y` by the balancing relations.
//! Independent of the projective identification used by the engine.

use crate::algebra::opposite_algebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};
use crate::module::{Morphism, Rep};

use super::derived::{DerivedTraceData, VectorComplex};
use super::resolution::minimal_projective_resolution;

#[derive(Debug, Clone)]
pub struct BalancedTensor {
    offsets: Vec<usize>,
    dims_x: Vec<usize>,
    dims_y: Vec<usize>,
    /// Quotient map from the ambient space, ambient x dim.
    projection: Matrix,
    /// Ambient coordinates of the quotient basis, dim x ambient.
    section: Matrix,
}

/// `x` a right `A`-module, `y` a representation of `A^op`.
pub fn balanced_tensor(x: &Rep, y: &Rep) -> Result<BalancedTensor> {
    let a = x.algebra();
    let op = opposite_algebra(a)?;
    if !y.algebra().same_as(&op) {
        return Err(Error::Validation("tensor factor is not a left module over the algebra".into()));
    }
    let f = a.field();
    let n = a.n();
    let mut offsets = Vec::with_capacity(n);
    let mut total = 0;
    for v in 0..n {
        offsets.push(total);
        total += x.dim_at(v) * y.dim_at(v);
    }
    let idx = |v: usize, p: usize, q: usize| offsets[v] + p * y.dim_at(v) + q;
    let mut rels: Vec<Vec<Scalar>> = Vec::new();
    for k in 0..a.arrow_count() {
        let ar = a.arrow(k);
        let (s, t) = (ar.source, ar.target);
        let xb = x.action(k);
        // left action of the arrow: e_t Y -> e_s Y
        let yb = y.action(k);
        for p in 0..x.dim_at(s) {
            for q in 0..y.dim_at(t) {
                let mut r = vec![f.zero(); total];
                for c in 0..x.dim_at(t) {
                    let val = xb.get(p, c);
                    if !val.is_zero() {
                        r[idx(t, c, q)] = r[idx(t, c, q)].add(val);
                    }
                }
                for c in 0..y.dim_at(s) {
                    let val = yb.get(q, c);
                    if !val.is_zero() {
                        r[idx(s, p, c)] = r[idx(s, p, c)].sub(val);
                    }
                }
                rels.push(r);
            }
        }
    }
    let rows = rels.len();
    let rel = Matrix::from_vec(f, rows, total, rels.into_iter().flatten().collect());
    let (rr, pivots) = rel.rref();
    let keep: Vec<usize> = (0..total).filter(|c| !pivots.contains(c)).collect();
    let mut projection = Matrix::zeros(f, total, keep.len());
    for (j, &c) in keep.iter().enumerate() {
        projection.set(c, j, f.one());
    }
    for (r, &pc) in pivots.iter().enumerate() {
        for (j, &c) in keep.iter().enumerate() {
            projection.set(pc, j, rr.get(r, c).neg());
        }
    }
    let mut section = Matrix::zeros(f, keep.len(), total);
    for (j, &c) in keep.iter().enumerate() {
        section.set(j, c, f.one());
    }
    Ok(BalancedTensor {
        offsets,
        dims_x: x.dims().to_vec(),
        dims_y: y.dims().to_vec(),
        projection,
        section,
    })
}

impl BalancedTensor {
    pub fn dim(&self) -> usize {
        self.section.rows()
    }

    /// Matrix of `g (x) h` into `target`, for `g: X -> X'`, `h: Y -> Y'`.
    pub fn induced(&self, target: &BalancedTensor, g: &Morphism, h: &Morphism) -> Matrix {
        let f = self.projection.field();
        let total_s = self.projection.rows();
        let total_t = target.projection.rows();
        let mut amb = Matrix::zeros(f, total_s, total_t);
        for v in 0..self.offsets.len() {
            if self.dims_x[v] * self.dims_y[v] == 0 || target.dims_x[v] * target.dims_y[v] == 0 {
                continue;
            }
            amb.set_block(self.offsets[v], target.offsets[v], &g.map(v).kronecker(h.map(v)));
        }
        self.section.mul(&amb).mul(&target.projection)
    }
}

/// `Tor(M, N)` computed from a resolution of `M` and the balancing quotient.
pub fn tor_data_balanced(
    m: &Rep,
    n: &Rep,
    phi: Option<&Morphism>,
    psi: Option<&Morphism>,
    cap: usize,
) -> Result<DerivedTraceData> {
    let f = m.field();
    let r = minimal_projective_resolution(m, cap)?;
    let len = r.terms.len();
    let lifts = match phi {
        Some(p) => Some(r.lift_endomorphism(p, None)?),
        None => None,
    };
    let id_n = Morphism::identity(n);
    let psi_n = psi.cloned().unwrap_or_else(|| id_n.clone());
    let spaces: Vec<BalancedTensor> =
        r.terms.iter().map(|t| balanced_tensor(t.module(), n)).collect::<Result<_>>()?;
    // cochain degrees -d .. 0
    let dims = (0..len).rev().map(|l| spaces[l].dim()).collect();
    let diffs = (1..len).rev().map(|l| spaces[l].induced(&spaces[l - 1], &r.diffs[l - 1], &id_n)).collect();
    let endo = if phi.is_some() || psi.is_some() {
        Some(
            (0..len)
                .rev()
                .map(|l| {
                    let g = match &lifts {
                        Some(ls) => ls[l].clone(),
                        None => Morphism::identity(r.terms[l].module()),
                    };
                    spaces[l].induced(&spaces[l], &g, &psi_n)
                })
                .collect(),
        )
    } else {
        None
    };
    let vc = VectorComplex { field: f, lo: -(len as i64 - 1).max(0), dims, diffs, endo };
    vc.check()?;
    vc.cohomology()
}
