use std::sync::Arc;

use num_bigint::BigInt;

use crate::algebra::{opposite_algebra, Algebra};
use crate::complex::{ChainMap, Complex};
use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, Matrix, Scalar};
use crate::module::{Morphism, Rep};

use super::resolution::{ProjectiveSum, Resolution};

/// A bounded complex of finite-dimensional vector spaces, optionally with an endomorphism.
/// Differentials are row-convention matrices `dims[k] x dims[k + 1]`.
#[derive(Debug, Clone)]
pub struct VectorComplex {
    pub field: FieldSpec,
    pub lo: i64,
    pub dims: Vec<usize>,
    pub diffs: Vec<Matrix>,
    pub endo: Option<Vec<Matrix>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegreeData {
    pub degree: i64,
    pub dim: usize,
    pub trace: Option<Scalar>,
}

/// Per-degree dimensions (and traces) of a derived functor with their alternating sums.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivedTraceData {
    pub levels: Vec<DegreeData>,
    pub euler: BigInt,
    pub lefschetz: Option<Scalar>,
}

impl DerivedTraceData {
    pub fn dim(&self, degree: i64) -> usize {
        self.levels.iter().find(|l| l.degree == degree).map_or(0, |l| l.dim)
    }

    pub fn trace(&self, degree: i64) -> Option<Scalar> {
        match self.levels.iter().find(|l| l.degree == degree) {
            Some(l) => l.trace.clone(),
            None => self.lefschetz.as_ref().map(|s| s.field().zero()),
        }
    }

    /// Degrees reindexed homologically (`Tor_l` sits in cohomological degree `-l`).
    pub fn homological(&self) -> Vec<DegreeData> {
        self.levels
            .iter()
            .rev()
            .map(|l| DegreeData { degree: -l.degree, ..l.clone() })
            .collect()
    }
}

fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Trace of `e` restricted to the invariant row space spanned by `w`.
fn restricted_trace(w: &Matrix, e: &Matrix) -> Result<Scalar> {
    if w.rows() == 0 {
        return Ok(e.field().zero());
    }
    let y = w
        .solve_left(&w.mul(e))?
        .ok_or_else(|| Error::InvariantViolation("endomorphism does not preserve a subspace".into()))?;
    Ok(y.trace())
}

impl VectorComplex {
    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    pub fn check(&self) -> Result<()> {
        for (k, d) in self.diffs.iter().enumerate() {
            if d.shape() != (self.dims[k], self.dims[k + 1]) {
                return Err(Error::Dimension(format!("differential at degree {} has wrong shape", self.lo + k as i64)));
            }
            if k + 1 < self.diffs.len() && !d.mul(&self.diffs[k + 1]).is_zero() {
                return Err(Error::InvariantViolation(format!("d o d is nonzero at degree {}", self.lo + k as i64)));
            }
        }
        if let Some(e) = &self.endo {
            for (k, d) in self.diffs.iter().enumerate() {
                if e[k].mul(d) != d.mul(&e[k + 1]) {
                    return Err(Error::InvariantViolation(format!(
                        "endomorphism does not commute with d at degree {}",
                        self.lo + k as i64
                    )));
                }
            }
        }
        Ok(())
    }

    /// `dim H = dim Z - dim B`, `tr(E | H) = tr(E | Z) - tr(E | B)`.
    pub fn cohomology(&self) -> Result<DerivedTraceData> {
        let f = self.field;
        let mut levels = Vec::with_capacity(self.dims.len());
        let mut euler = BigInt::from(0);
        let mut lef = self.endo.as_ref().map(|_| f.zero());
        for k in 0..self.dims.len() {
            let degree = self.lo + k as i64;
            let z = match self.diffs.get(k) {
                Some(d) => d.left_kernel(),
                None => Matrix::identity(f, self.dims[k]),
            };
            let b = if k == 0 { Matrix::zeros(f, 0, self.dims[k]) } else { self.diffs[k - 1].row_space() };
            let dim = z.rows() - b.rows();
            let trace = match &self.endo {
                Some(e) => Some(restricted_trace(&z, &e[k])?.sub(&restricted_trace(&b, &e[k])?)),
                None => None,
            };
            euler += BigInt::from(sign(degree) * dim as i64);
            if let (Some(acc), Some(t)) = (lef.as_mut(), trace.as_ref()) {
                let s = if sign(degree) > 0 { t.clone() } else { t.neg() };
                *acc = acc.add(&s);
            }
            levels.push(DegreeData { degree, dim, trace });
        }
        Ok(DerivedTraceData { levels, euler, lefschetz: lef })
    }
}

/// A bounded complex of projective sums `P^lo -> ... -> P^hi`.
#[derive(Debug, Clone)]
pub struct ProjectiveComplex {
    pub algebra: Arc<Algebra>,
    pub lo: i64,
    pub sums: Vec<ProjectiveSum>,
    /// `diffs[k] : sums[k] -> sums[k + 1]`.
    pub diffs: Vec<Morphism>,
}

impl ProjectiveComplex {
    /// `P_d -> ... -> P_0` placed in degrees `-d .. 0`.
    pub fn from_resolution(r: &Resolution) -> Self {
        let a = r.module.algebra().clone();
        let len = r.terms.len();
        let sums: Vec<ProjectiveSum> = r.terms.iter().rev().cloned().collect();
        let diffs = (0..len.saturating_sub(1)).map(|k| r.diffs[len - 2 - k].clone()).collect();
        ProjectiveComplex { algebra: a, lo: -(len as i64 - 1).max(0), sums, diffs }
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.sums.len() as i64 - 1
    }

    pub fn sum(&self, l: i64) -> Option<&ProjectiveSum> {
        if l < self.lo {
            return None;
        }
        self.sums.get((l - self.lo) as usize)
    }

    pub fn diff(&self, l: i64) -> Option<&Morphism> {
        if l < self.lo {
            return None;
        }
        self.diffs.get((l - self.lo) as usize)
    }

    pub fn to_complex(&self) -> Result<Complex> {
        Complex::new(
            self.algebra.clone(),
            self.lo,
            self.sums.iter().map(|s| s.module().clone()).collect(),
            self.diffs.clone(),
        )
    }

    /// Reindex degreewise morphisms given in resolution order `P_0 .. P_d`.
    pub fn from_resolution_maps(maps: Vec<Morphism>) -> Vec<Morphism> {
        maps.into_iter().rev().collect()
    }
}

/// Right actions of all basis elements on `n`.
pub(crate) fn right_actions(n: &Rep) -> Vec<Matrix> {
    (0..n.algebra().dim()).map(|b| n.basis_action(b)).collect()
}

/// Left actions of the basis of `a` on `n`, a representation of `A^op`.
pub(crate) fn left_actions(a: &Algebra, n: &Rep) -> Vec<Matrix> {
    a.basis().iter().map(|p| n.path_action(&p.reversed())).collect()
}

fn segment_offsets(n: &Rep, vertices: &[usize]) -> Vec<usize> {
    let mut acc = 0;
    vertices
        .iter()
        .map(|&v| {
            let o = acc;
            acc += n.dim_at(v);
            o
        })
        .collect()
}

/// `Hom(P, N) = sum_k N e_{v_k}`, one segment per summand.
pub fn hom_dim(p: &ProjectiveSum, n: &Rep) -> usize {
    p.tops().iter().map(|&v| n.dim_at(v)).sum()
}

/// `Hom(tgt, N) -> Hom(src, N)`, `g |-> f then g`, for `f: src -> tgt`.
pub fn hom_pre(f: &Morphism, src: &ProjectiveSum, tgt: &ProjectiveSum, n: &Rep, actions: &[Matrix]) -> Matrix {
    let a = src.algebra();
    let field = a.field();
    let row_off = segment_offsets(n, tgt.tops());
    let col_off = segment_offsets(n, src.tops());
    let mut out = Matrix::zeros(field, hom_dim(tgt, n), hom_dim(src, n));
    for (m, &w) in src.tops().iter().enumerate() {
        let r = src.generator_image(f, m);
        for (k, &v) in tgt.tops().iter().enumerate() {
            let start = tgt.offset(w, k);
            let mut block = Matrix::zeros(field, n.dim_at(v), n.dim_at(w));
            for (j, &b) in a.peirce_list(v, w).iter().enumerate() {
                let c = r.get(0, start + j);
                if !c.is_zero() {
                    block = block.add(&actions[b].scale(c));
                }
            }
            out.set_block(row_off[k], col_off[m], &block);
        }
    }
    out
}

/// `Hom(P, N) -> Hom(P, N')`, `h |-> h then g`.
pub fn hom_post(p: &ProjectiveSum, g: &Morphism) -> Matrix {
    let parts: Vec<&Matrix> = p.tops().iter().map(|&v| g.map(v)).collect();
    block_diag_or_empty(&parts, p.algebra().field())
}

fn block_diag_or_empty(parts: &[&Matrix], field: FieldSpec) -> Matrix {
    if parts.is_empty() {
        Matrix::zeros(field, 0, 0)
    } else {
        Matrix::block_diag(parts, field)
    }
}

/// `P (x)_A N = sum_m e_{v_m} N` for `N` a representation of `A^op`.
pub fn tensor_dim(p: &ProjectiveSum, n: &Rep) -> usize {
    hom_dim(p, n)
}

/// `src (x) N -> tgt (x) N`, `f (x) 1`, for `f: src -> tgt`.
pub fn tensor_pre(f: &Morphism, src: &ProjectiveSum, tgt: &ProjectiveSum, n: &Rep, actions: &[Matrix]) -> Matrix {
    let a = src.algebra();
    let field = a.field();
    let row_off = segment_offsets(n, src.tops());
    let col_off = segment_offsets(n, tgt.tops());
    let mut out = Matrix::zeros(field, tensor_dim(src, n), tensor_dim(tgt, n));
    for (m, &w) in src.tops().iter().enumerate() {
        let r = src.generator_image(f, m);
        for (k, &v) in tgt.tops().iter().enumerate() {
            let start = tgt.offset(w, k);
            let mut block = Matrix::zeros(field, n.dim_at(w), n.dim_at(v));
            for (j, &b) in a.peirce_list(v, w).iter().enumerate() {
                let c = r.get(0, start + j);
                if !c.is_zero() {
                    block = block.add(&actions[b].scale(c));
                }
            }
            out.set_block(row_off[m], col_off[k], &block);
        }
    }
    out
}

/// `P (x) N -> P (x) N'`, `1 (x) g`.
pub fn tensor_post(p: &ProjectiveSum, g: &Morphism) -> Matrix {
    hom_post(p, g)
}

/// Components `(i, j)` of a total complex in a fixed degree, with their offsets.
struct Layout {
    comps: Vec<(i64, i64, usize)>,
    dim: usize,
}

impl Layout {
    fn find(&self, i: i64, j: i64) -> Option<usize> {
        self.comps.iter().find(|c| c.0 == i && c.1 == j).map(|c| c.2)
    }
}

fn layouts(
    p: &ProjectiveComplex,
    n: &Complex,
    degrees: std::ops::RangeInclusive<i64>,
    comp_degree: impl Fn(i64, i64) -> i64,
    size: impl Fn(i64, i64) -> usize,
) -> Vec<Layout> {
    degrees
        .map(|deg| {
            let mut comps = Vec::new();
            let mut acc = 0;
            for i in p.lo..=p.hi() {
                for j in n.lo()..=n.hi() {
                    if comp_degree(i, j) == deg {
                        comps.push((i, j, acc));
                        acc += size(i, j);
                    }
                }
            }
            Layout { comps, dim: acc }
        })
        .collect()
}

fn check_lifts(p: &ProjectiveComplex, phi: Option<&[Morphism]>) -> Result<()> {
    if let Some(ph) = phi {
        if ph.len() != p.sums.len() {
            return Err(Error::Dimension("lifted endomorphism does not match the projective complex".into()));
        }
    }
    Ok(())
}

/// Total complex of `Hom(P, N)`: degree `j - i`, `dg = g d_N - (-1)^n d_P g`.
pub fn total_hom(
    p: &ProjectiveComplex,
    phi: Option<&[Morphism]>,
    n: &Complex,
    psi: Option<&ChainMap>,
) -> Result<DerivedTraceData> {
    if !n.algebra().same_as(&p.algebra) {
        return Err(Error::Validation("Hom between complexes over different algebras".into()));
    }
    check_lifts(p, phi)?;
    let field = p.algebra.field();
    if p.sums.is_empty() || n.terms().is_empty() {
        let lef = (phi.is_some() || psi.is_some()).then(|| field.zero());
        return Ok(DerivedTraceData { levels: vec![], euler: BigInt::from(0), lefschetz: lef });
    }
    let acts: Vec<Vec<Matrix>> = n.terms().iter().map(right_actions).collect();
    let act = |j: i64| &acts[(j - n.lo()) as usize];
    let lo = n.lo() - p.hi();
    let hi = n.hi() - p.lo;
    let lay = layouts(p, n, lo..=hi, |i, j| j - i, |i, j| hom_dim(p.sum(i).unwrap(), &n.term(j)));
    let mut diffs = Vec::new();
    for (k, l) in lay.iter().enumerate().take(lay.len() - 1) {
        let deg = lo + k as i64;
        let next = &lay[k + 1];
        let mut d = Matrix::zeros(field, l.dim, next.dim);
        for &(i, j, off) in &l.comps {
            let pi = p.sum(i).unwrap();
            if let Some(o2) = next.find(i, j + 1) {
                d.set_block(off, o2, &hom_post(pi, &n.diff(j)));
            }
            if let Some(o2) = next.find(i - 1, j) {
                let prev = p.sum(i - 1).unwrap();
                let m = hom_pre(p.diff(i - 1).unwrap(), prev, pi, &n.term(j), act(j));
                let m = if sign(deg) > 0 { m.neg() } else { m };
                d.set_block(off, o2, &m);
            }
        }
        diffs.push(d);
    }
    let endo = if phi.is_some() || psi.is_some() {
        Some(
            lay.iter()
                .map(|l| {
                    let mut e = Matrix::zeros(field, l.dim, l.dim);
                    for &(i, j, off) in &l.comps {
                        let pi = p.sum(i).unwrap();
                        let nj = n.term(j);
                        let size = hom_dim(pi, &nj);
                        let pre = match phi {
                            Some(ph) => hom_pre(&ph[(i - p.lo) as usize], pi, pi, &nj, act(j)),
                            None => Matrix::identity(field, size),
                        };
                        let blk = match psi {
                            Some(s) => pre.mul(&hom_post(pi, &s.map(j))),
                            None => pre,
                        };
                        e.set_block(off, off, &blk);
                    }
                    e
                })
                .collect(),
        )
    } else {
        None
    };
    let vc = VectorComplex { field, lo, dims: lay.iter().map(|l| l.dim).collect(), diffs, endo };
    debug_assert!(vc.check().is_ok());
    vc.cohomology()
}

/// Total complex of `P (x)_A N` for a complex `N` of `A^op`-representations:
/// degree `i + j`, `d = d_P (x) 1 + (-1)^i 1 (x) d_N`.
pub fn total_tensor(
    p: &ProjectiveComplex,
    phi: Option<&[Morphism]>,
    n: &Complex,
    psi: Option<&ChainMap>,
) -> Result<DerivedTraceData> {
    let op = opposite_algebra(&p.algebra)?;
    if !n.algebra().same_as(&op) {
        return Err(Error::Validation("tensor factor is not a left module over the algebra".into()));
    }
    check_lifts(p, phi)?;
    let field = p.algebra.field();
    if p.sums.is_empty() || n.terms().is_empty() {
        let lef = (phi.is_some() || psi.is_some()).then(|| field.zero());
        return Ok(DerivedTraceData { levels: vec![], euler: BigInt::from(0), lefschetz: lef });
    }
    let acts: Vec<Vec<Matrix>> = n.terms().iter().map(|t| left_actions(&p.algebra, t)).collect();
    let act = |j: i64| &acts[(j - n.lo()) as usize];
    let lo = p.lo + n.lo();
    let hi = p.hi() + n.hi();
    let lay = layouts(p, n, lo..=hi, |i, j| i + j, |i, j| tensor_dim(p.sum(i).unwrap(), &n.term(j)));
    let mut diffs = Vec::new();
    for (k, l) in lay.iter().enumerate().take(lay.len() - 1) {
        let next = &lay[k + 1];
        let mut d = Matrix::zeros(field, l.dim, next.dim);
        for &(i, j, off) in &l.comps {
            let pi = p.sum(i).unwrap();
            if let Some(o2) = next.find(i + 1, j) {
                let m = tensor_pre(p.diff(i).unwrap(), pi, p.sum(i + 1).unwrap(), &n.term(j), act(j));
                d.set_block(off, o2, &m);
            }
            if let Some(o2) = next.find(i, j + 1) {
                let m = tensor_post(pi, &n.diff(j));
                let m = if sign(i) < 0 { m.neg() } else { m };
                d.set_block(off, o2, &m);
            }
        }
        diffs.push(d);
    }
    let endo = if phi.is_some() || psi.is_some() {
        Some(
            lay.iter()
                .map(|l| {
                    let mut e = Matrix::zeros(field, l.dim, l.dim);
                    for &(i, j, off) in &l.comps {
                        let pi = p.sum(i).unwrap();
                        let nj = n.term(j);
                        let size = tensor_dim(pi, &nj);
                        let post = match psi {
                            Some(s) => tensor_post(pi, &s.map(j)),
                            None => Matrix::identity(field, size),
                        };
                        let blk = match phi {
                            Some(ph) => post.mul(&tensor_pre(&ph[(i - p.lo) as usize], pi, pi, &nj, act(j))),
                            None => post,
                        };
                        e.set_block(off, off, &blk);
                    }
                    e
                })
                .collect(),
        )
    } else {
        None
    };
    let vc = VectorComplex { field, lo, dims: lay.iter().map(|l| l.dim).collect(), diffs, endo };
    debug_assert!(vc.check().is_ok());
    vc.cohomology()
}
