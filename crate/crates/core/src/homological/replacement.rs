use rand_chacha::ChaCha8Rng;

use crate::complex::{ChainMap, Complex};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::module::Morphism;

use super::derived::ProjectiveComplex;
use super::resolution::{lift_through, projective_cover, ProjectiveSum};

/// A quasi-isomorphism `P -> M` from a bounded complex of projectives.
#[derive(Debug, Clone)]
pub struct ProjectiveReplacement {
    pub complex: ProjectiveComplex,
    /// `eps^l : P^l -> M^l`, aligned with `complex.sums`.
    pub augmentation: Vec<Morphism>,
    /// `(d_P^l, eps^l) : P^l -> P^{l+1} + M^l`, aligned with `complex.sums`.
    covers: Vec<Morphism>,
}

fn hsplit(m: &Matrix, at: usize) -> (Matrix, Matrix) {
    let left: Vec<usize> = (0..at).collect();
    let right: Vec<usize> = (at..m.cols()).collect();
    (m.select_cols(&left), m.select_cols(&right))
}

/// Built from the top degree down: `P^l` covers the kernel of
/// `P^{l+1} + M^l -> P^{l+2} + M^{l+1}`, `(x, m) |-> (x d_P, x eps - m d_M)`.
pub fn projective_replacement(c: &Complex, cap: usize) -> Result<ProjectiveReplacement> {
    let a = c.algebra().clone();
    let f = a.field();
    let n = a.n();
    let zero_sum = ProjectiveSum::new(&a, vec![]);
    // descending lists: index 0 is degree `hi`
    let mut sums: Vec<ProjectiveSum> = Vec::new();
    let mut diffs: Vec<Morphism> = Vec::new();
    let mut eps: Vec<Morphism> = Vec::new();
    let mut covers: Vec<Morphism> = Vec::new();
    if c.terms().is_empty() {
        let complex = ProjectiveComplex { algebra: a, lo: 0, sums, diffs };
        return Ok(ProjectiveReplacement { complex, augmentation: eps, covers });
    }
    let mut l = c.hi();
    loop {
        let p1 = sums.last().unwrap_or(&zero_sum).clone();
        let p2 = if sums.len() >= 2 { sums[sums.len() - 2].clone() } else { zero_sum.clone() };
        let m0 = c.term(l);
        let m1 = c.term(l + 1);
        let s = p1.module().direct_sum(&m0);
        let t = p2.module().direct_sum(&m1);
        let dm = c.diff(l);
        let maps: Vec<Matrix> = (0..n)
            .map(|v| {
                let (a1, b1) = (p1.module().dim_at(v), m0.dim_at(v));
                let (a2, b2) = (p2.module().dim_at(v), m1.dim_at(v));
                let mut x = Matrix::zeros(f, a1 + b1, a2 + b2);
                if let Some(d) = diffs.last() {
                    x.set_block(0, 0, d.map(v));
                }
                if let Some(e) = eps.last() {
                    x.set_block(0, a2, e.map(v));
                }
                x.set_block(a1, a2, &dm.map(v).neg());
                x
            })
            .collect();
        let big = Morphism::new_unchecked(s.clone(), t, maps);
        let (k, inc) = big.kernel();
        if l < c.lo() && k.is_zero() {
            break;
        }
        if c.lo() - l > cap as i64 {
            return Err(Error::CapExceeded { cap });
        }
        let (p, pi) = projective_cover(&k);
        let cov = pi.then(&inc).retarget(p.module().clone(), s);
        let mut dmaps = Vec::with_capacity(n);
        let mut emaps = Vec::with_capacity(n);
        for v in 0..n {
            let (d, e) = hsplit(cov.map(v), p1.module().dim_at(v));
            dmaps.push(d);
            emaps.push(e);
        }
        diffs.push(Morphism::new_unchecked(p.module().clone(), p1.module().clone(), dmaps));
        eps.push(Morphism::new_unchecked(p.module().clone(), m0.clone(), emaps));
        covers.push(cov);
        sums.push(p);
        l -= 1;
    }
    let lo = l + 1;
    sums.reverse();
    eps.reverse();
    covers.reverse();
    diffs.reverse();
    // the differential out of the top term lands in zero
    diffs.pop();
    let complex = ProjectiveComplex { algebra: a, lo, sums, diffs };
    Ok(ProjectiveReplacement { complex, augmentation: eps, covers })
}

impl ProjectiveReplacement {
    pub fn augmentation_chain_map(&self, target: &std::sync::Arc<Complex>) -> Result<ChainMap> {
        let p = std::sync::Arc::new(self.complex.to_complex()?);
        ChainMap::new(p, target.clone(), self.complex.lo, self.augmentation.clone())
    }

    /// Degreewise lift of a chain endomorphism of the replaced complex.
    pub fn lift_endomorphism(&self, phi: &ChainMap, mut rng: Option<&mut ChaCha8Rng>) -> Result<Vec<Morphism>> {
        let sums = &self.complex.sums;
        let mut out: Vec<Morphism> = Vec::with_capacity(sums.len());
        for k in (0..sums.len()).rev() {
            let l = self.complex.lo + k as i64;
            let p = &sums[k];
            let cov = &self.covers[k];
            let upper = out.last().cloned();
            let phil = phi.map(l);
            let maps: Vec<Matrix> = (0..p.algebra().n())
                .map(|v| match &upper {
                    Some(u) => Matrix::block_diag(&[u.map(v), phil.map(v)], p.algebra().field()),
                    None => phil.map(v).clone(),
                })
                .collect();
            let s = cov.target().clone();
            let big = Morphism::new_unchecked(s.clone(), s, maps);
            out.push(lift_through(p, &cov.then(&big), p, cov, rng.as_deref_mut())?);
        }
        out.reverse();
        Ok(out)
    }
}
