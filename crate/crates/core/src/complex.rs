//! Bounded cochain complexes of representations and chain maps between them.

use std::sync::Arc;

use rand_chacha::ChaCha8Rng;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, Matrix, Scalar};
use crate::module::{hom_basis, quotient, random_module_rng, Morphism, Rep, Representation};
use crate::random::{random_scalar, seeded};

/// Terms `M^lo .. M^hi` with differentials `d^l: M^l -> M^{l+1}`.
#[derive(Debug, Clone)]
pub struct Complex {
    algebra: Arc<Algebra>,
    lo: i64,
    terms: Vec<Rep>,
    diffs: Vec<Morphism>,
}

impl PartialEq for Complex {
    fn eq(&self, o: &Self) -> bool {
        self.algebra.same_as(&o.algebra) && self.lo == o.lo && self.terms == o.terms && self.diffs == o.diffs
    }
}

impl Complex {
    /// `diffs` must have one entry fewer than `terms`.
    pub fn new(algebra: Arc<Algebra>, lo: i64, terms: Vec<Rep>, diffs: Vec<Morphism>) -> Result<Self> {
        if !terms.is_empty() && diffs.len() + 1 != terms.len() {
            return Err(Error::Validation(format!(
                "complex with {} terms needs {} differentials, got {}",
                terms.len(),
                terms.len() - 1,
                diffs.len()
            )));
        }
        for (k, t) in terms.iter().enumerate() {
            if !t.algebra().same_as(&algebra) {
                return Err(Error::Validation(format!("term in degree {} is over another algebra", lo + k as i64)));
            }
        }
        for (k, d) in diffs.iter().enumerate() {
            let deg = lo + k as i64;
            if d.source().as_ref() != terms[k].as_ref() || d.target().as_ref() != terms[k + 1].as_ref() {
                return Err(Error::Validation(format!("differential in degree {deg} has the wrong endpoints")));
            }
            d.check().map_err(|e| Error::Validation(format!("differential in degree {deg}: {e}")))?;
        }
        for k in 1..diffs.len() {
            if !diffs[k - 1].then(&diffs[k]).is_zero() {
                return Err(Error::Validation(format!(
                    "d o d is nonzero at degree {}",
                    lo + k as i64 - 1
                )));
            }
        }
        Ok(Complex { algebra, lo, terms, diffs })
    }

    pub fn concentrated(m: &Rep, degree: i64) -> Self {
        Complex { algebra: m.algebra().clone(), lo: degree, terms: vec![m.clone()], diffs: vec![] }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest degree; `lo - 1` for the empty complex.
    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    pub fn terms(&self) -> &[Rep] {
        &self.terms
    }

    pub fn term(&self, l: i64) -> Rep {
        if l < self.lo || l > self.hi() {
            return Representation::zero(&self.algebra);
        }
        self.terms[(l - self.lo) as usize].clone()
    }

    /// `d^l`, zero outside the stored range.
    pub fn diff(&self, l: i64) -> Morphism {
        if l >= self.lo && l < self.hi() {
            return self.diffs[(l - self.lo) as usize].clone();
        }
        Morphism::zero(&self.term(l), &self.term(l + 1))
    }

    /// `M[k]`: degree `l` holds `M^{l+k}`, differential `(-1)^k d`.
    pub fn shift(&self, k: i64) -> Complex {
        let sign = self.algebra.field().from_i64(if k.rem_euclid(2) == 0 { 1 } else { -1 });
        Complex {
            algebra: self.algebra.clone(),
            lo: self.lo - k,
            terms: self.terms.clone(),
            diffs: self.diffs.iter().map(|d| d.scale(&sign)).collect(),
        }
    }

    /// Alternating sum of the dimension vectors of the terms.
    pub fn dim_vector(&self) -> IntMatrix {
        let mut acc = IntMatrix::zeros(self.algebra.n(), 1);
        for l in self.degrees() {
            let dv = self.term(l).dim_vector();
            acc = if l.rem_euclid(2) == 0 { acc.add(&dv) } else { acc.sub(&dv) };
        }
        acc
    }

    /// Alternating sum of the dimension vectors of the cohomology modules.
    pub fn cohomology_dim_vector(&self) -> IntMatrix {
        let mut acc = IntMatrix::zeros(self.algebra.n(), 1);
        for l in self.degrees() {
            let dv = self.cohomology(l).module.dim_vector();
            acc = if l.rem_euclid(2) == 0 { acc.add(&dv) } else { acc.sub(&dv) };
        }
        acc
    }

    /// Component sum, checked against the cohomology sum.
    pub fn checked_dim_vector(&self) -> Result<IntMatrix> {
        let a = self.dim_vector();
        let b = self.cohomology_dim_vector();
        if a != b {
            return Err(Error::InvariantViolation(format!(
                "component dimension sum {a} differs from cohomology sum {b}"
            )));
        }
        Ok(a)
    }

    /// `H^l = ker d^l / im d^{l-1}` with the data needed to induce maps.
    pub fn cohomology(&self, l: i64) -> Cohomology {
        let d = self.diff(l);
        let (z, zinc) = d.kernel();
        let prev = self.diff(l - 1);
        let field = self.algebra.field();
        let bounds: Vec<Matrix> = (0..self.algebra.n())
            .map(|v| {
                let k = zinc.map(v);
                let img = prev.map(v);
                if img.rows() == 0 {
                    return Matrix::zeros(field, 0, k.rows());
                }
                k.solve_left(&img).expect("shape").expect("boundaries are cycles")
            })
            .collect();
        let (h, proj) = quotient(&z, &bounds);
        Cohomology { module: h, cycles: zinc, projection: proj }
    }

    pub fn is_exact(&self) -> bool {
        self.degrees().all(|l| self.cohomology(l).module.is_zero())
    }
}

/// `H^l` as a quotient of the cycle module.
#[derive(Debug, Clone)]
pub struct Cohomology {
    pub module: Rep,
    /// Inclusion `Z^l -> M^l`.
    pub cycles: Morphism,
    /// Projection `Z^l -> H^l`.
    pub projection: Morphism,
}

impl Cohomology {
    /// Matrix of the map `H -> H'` induced by `f: M^l -> N^l` at vertex `v`.
    fn induced_at(&self, other: &Cohomology, f: &Matrix, v: usize) -> Matrix {
        let field = f.field();
        let k = self.cycles.map(v);
        let p = self.projection.map(v);
        let hd = self.module.dim_at(v);
        // section of the projection: pick cycle coordinates mapping onto unit vectors
        let sec = p.solve_left(&Matrix::identity(field, hd)).expect("shape").expect("projection is onto");
        let img = sec.mul(k).mul(f);
        let kk = other.cycles.map(v);
        let zc = kk.solve_left(&img).expect("shape").expect("chain maps send cycles to cycles");
        zc.mul(other.projection.map(v))
    }
}

/// Degreewise module maps `f^l: M^l -> N^l` commuting with the differentials.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainMap {
    source: Arc<Complex>,
    target: Arc<Complex>,
    /// Maps for degrees `min(lo) ..= max(hi)` of the two complexes.
    lo: i64,
    maps: Vec<Morphism>,
}

impl ChainMap {
    /// `maps` cover degrees `lo ..` of the union range; missing degrees are zero.
    pub fn new(source: Arc<Complex>, target: Arc<Complex>, lo: i64, maps: Vec<Morphism>) -> Result<Self> {
        let (rlo, rhi) = union_range(&source, &target);
        let mut full = Vec::new();
        for l in rlo..=rhi {
            let idx = l - lo;
            let m = if idx >= 0 && (idx as usize) < maps.len() {
                maps[idx as usize].clone()
            } else {
                Morphism::zero(&source.term(l), &target.term(l))
            };
            full.push(m);
        }
        for (idx, m) in maps.iter().enumerate() {
            let l = lo + idx as i64;
            if (l < rlo || l > rhi) && !m.is_zero() {
                return Err(Error::Validation(format!("chain map is nonzero in degree {l} outside both complexes")));
            }
        }
        let cm = ChainMap { source, target, lo: rlo, maps: full };
        cm.check()?;
        Ok(cm)
    }

    pub(crate) fn new_unchecked(source: Arc<Complex>, target: Arc<Complex>, lo: i64, maps: Vec<Morphism>) -> Self {
        let cm = ChainMap { source, target, lo, maps };
        debug_assert!(cm.check().is_ok(), "{:?}", cm.check());
        cm
    }

    pub fn check(&self) -> Result<()> {
        for (idx, m) in self.maps.iter().enumerate() {
            let l = self.lo + idx as i64;
            if m.source().as_ref() != self.source.term(l).as_ref()
                || m.target().as_ref() != self.target.term(l).as_ref()
            {
                return Err(Error::Validation(format!("chain map has wrong endpoints in degree {l}")));
            }
            m.check().map_err(|e| Error::Validation(format!("chain map in degree {l}: {e}")))?;
        }
        for l in self.lo - 1..=self.lo + self.maps.len() as i64 {
            let a = self.source.diff(l).then(&self.map(l + 1));
            let b = self.map(l).then(&self.target.diff(l));
            if a.maps() != b.maps() {
                return Err(Error::Validation(format!("chain map does not commute with d in degree {l}")));
            }
        }
        Ok(())
    }

    pub fn identity(c: &Arc<Complex>) -> Self {
        let maps = c.terms.iter().map(Morphism::identity).collect();
        ChainMap { source: c.clone(), target: c.clone(), lo: c.lo, maps }
    }

    pub fn zero(s: &Arc<Complex>, t: &Arc<Complex>) -> Self {
        let (lo, hi) = union_range(s, t);
        let maps = (lo..=hi).map(|l| Morphism::zero(&s.term(l), &t.term(l))).collect();
        ChainMap { source: s.clone(), target: t.clone(), lo, maps }
    }

    pub fn source(&self) -> &Arc<Complex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Complex> {
        &self.target
    }

    pub fn map(&self, l: i64) -> Morphism {
        let idx = l - self.lo;
        if idx >= 0 && (idx as usize) < self.maps.len() {
            return self.maps[idx as usize].clone();
        }
        Morphism::zero(&self.source.term(l), &self.target.term(l))
    }

    pub fn is_endomorphism(&self) -> bool {
        Arc::ptr_eq(&self.source, &self.target) || self.source == self.target
    }

    pub fn add(&self, o: &ChainMap) -> ChainMap {
        let maps = self.maps.iter().zip(&o.maps).map(|(a, b)| a.add(b)).collect();
        ChainMap { source: self.source.clone(), target: self.target.clone(), lo: self.lo, maps }
    }

    /// `self` followed by `g`.
    pub fn then(&self, g: &ChainMap) -> ChainMap {
        let (lo, hi) = union_range(&self.source, &g.target);
        let maps = (lo..=hi).map(|l| self.map(l).then(&g.map(l))).collect();
        ChainMap { source: self.source.clone(), target: g.target.clone(), lo, maps }
    }

    /// Alternating sum of the trace vectors of the components.
    pub fn trace_vector(&self) -> Result<Matrix> {
        if !self.is_endomorphism() {
            return Err(Error::Validation("trace vector needs a chain endomorphism".into()));
        }
        let f = self.source.algebra.field();
        let mut acc = Matrix::zeros(f, self.source.algebra.n(), 1);
        for l in self.source.degrees() {
            let tv = self.map(l).trace_vector()?;
            acc = if l.rem_euclid(2) == 0 { acc.add(&tv) } else { acc.sub(&tv) };
        }
        Ok(acc)
    }

    /// Map `H^l(source) -> H^l(target)`.
    pub fn induced_cohomology_map(&self, l: i64) -> Morphism {
        let hs = self.source.cohomology(l);
        let ht = self.target.cohomology(l);
        self.induced_between(&hs, &ht, l)
    }

    fn induced_between(&self, hs: &Cohomology, ht: &Cohomology, l: i64) -> Morphism {
        let f = self.map(l);
        let maps = (0..self.source.algebra.n()).map(|v| hs.induced_at(ht, f.map(v), v)).collect();
        Morphism::new_unchecked(hs.module.clone(), ht.module.clone(), maps)
    }

    /// Alternating sum of the trace vectors of the induced maps on cohomology.
    pub fn cohomology_trace_vector(&self) -> Result<Matrix> {
        if !self.is_endomorphism() {
            return Err(Error::Validation("trace vector needs a chain endomorphism".into()));
        }
        let f = self.source.algebra.field();
        let mut acc = Matrix::zeros(f, self.source.algebra.n(), 1);
        for l in self.source.degrees() {
            let h = self.source.cohomology(l);
            let tv = self.induced_between(&h, &h, l).trace_vector()?;
            acc = if l.rem_euclid(2) == 0 { acc.add(&tv) } else { acc.sub(&tv) };
        }
        Ok(acc)
    }

    /// Component sum, checked against the cohomology sum.
    pub fn checked_trace_vector(&self) -> Result<Matrix> {
        let a = self.trace_vector()?;
        let b = self.cohomology_trace_vector()?;
        if a != b {
            return Err(Error::InvariantViolation(format!(
                "component trace sum {a} differs from cohomology sum {b}"
            )));
        }
        Ok(a)
    }

    /// Whether every induced map on cohomology is bijective.
    pub fn is_quasi_isomorphism(&self) -> bool {
        let (lo, hi) = union_range(&self.source, &self.target);
        (lo..=hi).all(|l| {
            let h = self.induced_cohomology_map(l);
            h.is_injective() && h.is_surjective()
        })
    }

    /// The same maps on `source[k] -> target[k]`.
    pub fn shift(&self, k: i64, source: &Arc<Complex>, target: &Arc<Complex>) -> ChainMap {
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(idx, m)| {
                let l = self.lo + idx as i64 - k;
                m.retarget(source.term(l), target.term(l))
            })
            .collect();
        ChainMap::new_unchecked(source.clone(), target.clone(), self.lo - k, maps)
    }
}

fn union_range(s: &Complex, t: &Complex) -> (i64, i64) {
    let lo = match (s.terms.is_empty(), t.terms.is_empty()) {
        (true, true) => return (0, -1),
        (true, false) => t.lo,
        (false, true) => s.lo,
        (false, false) => s.lo.min(t.lo),
    };
    let hi = match (s.terms.is_empty(), t.terms.is_empty()) {
        (true, _) => t.hi(),
        (_, true) => s.hi(),
        _ => s.hi().max(t.hi()),
    };
    (lo, hi)
}

/// Mapping cone: degree `l` holds `M^{l+1} + N^l` with `d(m, n) = (-m d_M, m f + n d_N)`.
pub fn cone(f: &ChainMap) -> Complex {
    let (m, n) = (&f.source, &f.target);
    let a = m.algebra.clone();
    let field = a.field();
    let lo = (m.lo - 1).min(n.lo);
    let hi = (m.hi() - 1).max(n.hi());
    let terms: Vec<Rep> = (lo..=hi).map(|l| m.term(l + 1).direct_sum(&n.term(l))).collect();
    let diffs = (lo..hi)
        .map(|l| {
            let k = (l - lo) as usize;
            let (dm, dn, fl) = (m.diff(l + 1), n.diff(l), f.map(l + 1));
            let maps = (0..a.n())
                .map(|v| {
                    let (s1, s2) = (m.term(l + 1).dim_at(v), n.term(l).dim_at(v));
                    let (t1, t2) = (m.term(l + 2).dim_at(v), n.term(l + 1).dim_at(v));
                    let mut x = Matrix::zeros(field, s1 + s2, t1 + t2);
                    x.set_block(0, 0, &dm.map(v).neg());
                    x.set_block(0, t1, fl.map(v));
                    x.set_block(s1, t1, dn.map(v));
                    x
                })
                .collect();
            Morphism::new_unchecked(terms[k].clone(), terms[k + 1].clone(), maps)
        })
        .collect();
    Complex::new(a, lo, terms, diffs).expect("cone of a chain map is a complex")
}

/// Random complex with `len` terms starting in degree `lo`.
pub fn random_complex(a: &Arc<Algebra>, seed: u64, lo: i64, len: usize, budget: usize) -> Complex {
    let mut rng = seeded(seed);
    random_complex_rng(a, &mut rng, lo, len, budget)
}

pub(crate) fn random_complex_rng(
    a: &Arc<Algebra>,
    rng: &mut ChaCha8Rng,
    lo: i64,
    len: usize,
    budget: usize,
) -> Complex {
    let terms: Vec<Rep> = (0..len).map(|_| random_module_rng(a, rng, budget)).collect();
    let mut diffs: Vec<Morphism> = Vec::new();
    for k in 0..len.saturating_sub(1) {
        let basis = hom_basis(&terms[k], &terms[k + 1]).expect("same algebra");
        let d = match diffs.last() {
            None => random_span(&terms[k], &terms[k + 1], &basis, rng),
            Some(prev) => {
                // choose d in the span of the basis with prev then d = 0
                let cols: Vec<Vec<Scalar>> = basis.iter().map(|b| flatten(&prev.then(b))).collect();
                let kernel = solve_combinations(a, &cols);
                let combos: Vec<Morphism> = kernel
                    .iter()
                    .map(|c| combine(&terms[k], &terms[k + 1], &basis, c))
                    .collect();
                random_span(&terms[k], &terms[k + 1], &combos, rng)
            }
        };
        diffs.push(d);
    }
    Complex::new(a.clone(), lo, terms, diffs).expect("random complex satisfies d o d = 0")
}

fn random_span(s: &Rep, t: &Rep, basis: &[Morphism], rng: &mut ChaCha8Rng) -> Morphism {
    let f = s.field();
    let mut acc = Morphism::zero(s, t);
    for b in basis {
        acc = acc.add(&b.scale(&random_scalar(f, rng)));
    }
    acc
}

fn flatten(m: &Morphism) -> Vec<Scalar> {
    m.maps().iter().flat_map(|x| x.entries().iter().cloned()).collect()
}

fn combine(s: &Rep, t: &Rep, basis: &[Morphism], coeffs: &[Scalar]) -> Morphism {
    let mut acc = Morphism::zero(s, t);
    for (b, c) in basis.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = acc.add(&b.scale(c));
        }
    }
    acc
}

/// Basis of coefficient vectors `c` with `sum_k c_k cols[k] = 0`.
fn solve_combinations(a: &Algebra, cols: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let f = a.field();
    let rows = cols.first().map_or(0, Vec::len);
    let m = Matrix::from_fn(f, rows, cols.len(), |i, j| cols[j][i].clone());
    let k = m.kernel_basis();
    (0..k.cols()).map(|c| (0..k.rows()).map(|r| k.get(r, c).clone()).collect()).collect()
}

/// Random chain map `s -> t`, uniform over small combinations of a basis of chain maps.
pub fn random_chain_map(s: &Arc<Complex>, t: &Arc<Complex>, seed: u64) -> ChainMap {
    let mut rng = seeded(seed);
    random_chain_map_rng(s, t, &mut rng)
}

pub(crate) fn random_chain_map_rng(s: &Arc<Complex>, t: &Arc<Complex>, rng: &mut ChaCha8Rng) -> ChainMap {
    let basis = chain_map_basis(s, t);
    let mut acc = ChainMap::zero(s, t);
    let f = s.algebra.field();
    for b in &basis {
        let c = random_scalar(f, rng);
        let scaled = ChainMap {
            source: s.clone(),
            target: t.clone(),
            lo: b.lo,
            maps: b.maps.iter().map(|m| m.scale(&c)).collect(),
        };
        acc = acc.add(&scaled);
    }
    acc
}

/// Random chain endomorphism.
pub fn random_chain_endomorphism(c: &Arc<Complex>, seed: u64) -> ChainMap {
    random_chain_map(c, c, seed)
}

/// Basis of the space of chain maps `s -> t`.
pub fn chain_map_basis(s: &Arc<Complex>, t: &Arc<Complex>) -> Vec<ChainMap> {
    let (lo, hi) = union_range(s, t);
    let a = &s.algebra;
    let degs: Vec<i64> = (lo..=hi).collect();
    let bases: Vec<Vec<Morphism>> = degs
        .iter()
        .map(|&l| hom_basis(&s.term(l), &t.term(l)).expect("same algebra"))
        .collect();
    let mut offsets = vec![0usize];
    for b in &bases {
        offsets.push(offsets.last().unwrap() + b.len());
    }
    let total = *offsets.last().unwrap();
    // columns: each basis element; rows: entries of d_s f^{l+1} - f^l d_t for each l
    let mut cols: Vec<Vec<Scalar>> = vec![Vec::new(); total];
    for (k, &l) in degs.iter().enumerate().take(degs.len().saturating_sub(1)) {
        let (ds, dt) = (s.diff(l), t.diff(l));
        let zero = flatten(&Morphism::zero(&s.term(l), &t.term(l + 1)));
        for c in 0..total {
            let v = if c >= offsets[k + 1] && c < offsets[k + 2] {
                flatten(&ds.then(&bases[k + 1][c - offsets[k + 1]]))
            } else if c >= offsets[k] && c < offsets[k + 1] {
                flatten(&bases[k][c - offsets[k]].then(&dt)).iter().map(Scalar::neg).collect()
            } else {
                zero.clone()
            };
            cols[c].extend(v);
        }
    }
    let sols = if cols.first().map_or(0, Vec::len) == 0 {
        (0..total)
            .map(|i| (0..total).map(|j| a.field().from_i64((i == j) as i64)).collect())
            .collect()
    } else {
        solve_combinations(a, &cols)
    };
    sols.iter()
        .map(|c| {
            let maps = degs
                .iter()
                .enumerate()
                .map(|(k, &l)| {
                    combine(&s.term(l), &t.term(l), &bases[k], &c[offsets[k]..offsets[k + 1]])
                })
                .collect();
            ChainMap::new_unchecked(s.clone(), t.clone(), lo, maps)
        })
        .collect()
}

/// A bounded complex of B-A-bimodules, stored over `B^op (x) A`.
#[derive(Debug, Clone, PartialEq)]
pub struct BimoduleComplex {
    bimodule_left: Arc<Algebra>,
    bimodule_right: Arc<Algebra>,
    complex: Arc<Complex>,
}

impl BimoduleComplex {
    pub fn new(left: Arc<Algebra>, right: Arc<Algebra>, complex: Arc<Complex>) -> Result<Self> {
        let env = crate::bimodule::bimodule_algebra(&left, &right)?;
        if !env.same_as(complex.algebra()) {
            return Err(Error::Validation("bimodule complex must live over the opposite-left tensor right algebra".into()));
        }
        Ok(BimoduleComplex { bimodule_left: left, bimodule_right: right, complex })
    }

    pub fn left(&self) -> &Arc<Algebra> {
        &self.bimodule_left
    }

    pub fn right(&self) -> &Arc<Algebra> {
        &self.bimodule_right
    }

    pub fn complex(&self) -> &Arc<Complex> {
        &self.complex
    }

    fn unvec(&self, v: &Matrix) -> Matrix {
        let (n, m) = (self.bimodule_right.n(), self.bimodule_left.n());
        Matrix::from_fn(v.field(), n, m, |i, j| v.get(j * n + i, 0).clone())
    }

    /// Super dimension matrix, checked against cohomology.
    pub fn dim_matrix(&self) -> Result<IntMatrix> {
        let dv = self.complex.checked_dim_vector()?;
        Ok(IntMatrix::unvec_columns(&dv, self.bimodule_right.n(), self.bimodule_left.n()))
    }

    /// Super trace matrix of a chain endomorphism, checked against cohomology.
    pub fn trace_matrix(&self, phi: &ChainMap) -> Result<Matrix> {
        Ok(self.unvec(&phi.checked_trace_vector()?))
    }

    /// `f_j M` as a complex of right modules.
    pub fn left_component(&self, j: usize) -> Arc<Complex> {
        let c = &self.complex;
        let comps: Vec<Rep> = c.terms.iter().map(|t| self.term_bimodule(t).left_component(j)).collect();
        let diffs = c
            .diffs
            .iter()
            .enumerate()
            .map(|(k, d)| crate::bimodule::restrict_left_between(d, j, &comps[k], &comps[k + 1]))
            .collect();
        Arc::new(Complex { algebra: self.bimodule_right.clone(), lo: c.lo, terms: comps, diffs })
    }

    pub fn restrict_left(&self, phi: &ChainMap, j: usize, comp: &Arc<Complex>) -> ChainMap {
        let maps = comp
            .degrees()
            .map(|l| {
                let t = comp.term(l);
                crate::bimodule::restrict_left_between(&phi.map(l), j, &t, &t)
            })
            .collect();
        ChainMap::new_unchecked(comp.clone(), comp.clone(), comp.lo, maps)
    }

    /// `M e_i` as a complex of left modules over the left algebra.
    pub fn right_component(&self, i: usize) -> Arc<Complex> {
        let c = &self.complex;
        let n = self.bimodule_right.n();
        let comps: Vec<Rep> = c.terms.iter().map(|t| self.term_bimodule(t).right_component(i)).collect();
        let diffs = c
            .diffs
            .iter()
            .enumerate()
            .map(|(k, d)| crate::bimodule::restrict_right_between(d, n, i, &comps[k], &comps[k + 1]))
            .collect();
        let bop = crate::algebra::opposite_algebra(&self.bimodule_left).expect("left algebra builds");
        Arc::new(Complex { algebra: bop, lo: c.lo, terms: comps, diffs })
    }

    pub fn restrict_right(&self, phi: &ChainMap, i: usize, comp: &Arc<Complex>) -> ChainMap {
        let n = self.bimodule_right.n();
        let maps = comp
            .degrees()
            .map(|l| {
                let t = comp.term(l);
                crate::bimodule::restrict_right_between(&phi.map(l), n, i, &t, &t)
            })
            .collect();
        ChainMap::new_unchecked(comp.clone(), comp.clone(), comp.lo, maps)
    }

    /// For A-A-bimodules: the complex of left enveloping modules used as Tor coefficients.
    pub fn as_left_enveloping(&self) -> Result<Arc<Complex>> {
        let c = &self.complex;
        let n = self.bimodule_right.n();
        let comps: Vec<Rep> =
            c.terms.iter().map(|t| self.term_bimodule(t).as_left_enveloping()).collect::<Result<_>>()?;
        let diffs = c
            .diffs
            .iter()
            .enumerate()
            .map(|(k, d)| crate::bimodule::left_enveloping_between(d, n, &comps[k], &comps[k + 1]))
            .collect();
        let alg = crate::algebra::opposite_algebra(c.algebra())?;
        Ok(Arc::new(Complex { algebra: alg, lo: c.lo, terms: comps, diffs }))
    }

    pub fn left_enveloping_endomorphism(&self, phi: &ChainMap, conv: &Arc<Complex>) -> ChainMap {
        let n = self.bimodule_right.n();
        let maps = conv
            .degrees()
            .map(|l| {
                let t = conv.term(l);
                crate::bimodule::left_enveloping_between(&phi.map(l), n, &t, &t)
            })
            .collect();
        ChainMap::new_unchecked(conv.clone(), conv.clone(), conv.lo, maps)
    }

    fn term_bimodule(&self, t: &Rep) -> crate::bimodule::Bimodule {
        crate::bimodule::Bimodule::new(self.bimodule_left.clone(), self.bimodule_right.clone(), t.clone())
            .expect("terms live over the bimodule algebra")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, examples};
    use crate::linalg::FieldSpec;
    use crate::module::{indecomposable_projective, random_module, simple_module};

    const Q: FieldSpec = FieldSpec::Rationals;

    fn alg(p: crate::quiver::Presentation) -> Arc<Algebra> {
        Arc::new(build_algebra(&p).unwrap())
    }

    #[test]
    fn concentrated_complex() {
        let a = alg(examples::a2(Q));
        let m = random_module(&a, 3, 2);
        let c = Complex::concentrated(&m, 0);
        assert_eq!(c.cohomology(0).module.dims(), m.dims());
        assert!(c.cohomology(1).module.is_zero());
        assert_eq!(c.checked_dim_vector().unwrap(), m.dim_vector());
        assert_eq!(c.shift(1).dim_vector(), m.dim_vector().neg());
    }

    #[test]
    fn identity_complex_is_exact() {
        let a = alg(examples::a3_rel(Q));
        let m = random_module(&a, 1, 2);
        let c = Complex::new(a.clone(), 0, vec![m.clone(), m.clone()], vec![Morphism::identity(&m)]).unwrap();
        assert!(c.is_exact());
        assert!(c.checked_dim_vector().unwrap().is_zero());
    }

    #[test]
    fn inclusion_complex() {
        let a = alg(examples::a2(Q));
        let p1 = indecomposable_projective(&a, 0).unwrap();
        let p2 = indecomposable_projective(&a, 1).unwrap();
        let inc = hom_basis(&p2, &p1).unwrap()[0].clone();
        let c = Complex::new(a.clone(), -1, vec![p2, p1], vec![inc]).unwrap();
        assert!(c.cohomology(-1).module.is_zero());
        assert_eq!(c.cohomology(0).module.dims(), simple_module(&a, 0).unwrap().dims());
    }

    #[test]
    fn rejects_nonzero_square() {
        let a = alg(examples::field_algebra(Q));
        let m = random_module(&a, 0, 1);
        let id = Morphism::identity(&m);
        let e = Complex::new(a, 0, vec![m.clone(), m.clone(), m], vec![id.clone(), id]).unwrap_err();
        assert!(e.to_string().contains("d o d"));
    }

    #[test]
    fn random_complexes_and_endomorphisms() {
        let a = alg(examples::a3_rel(Q));
        for seed in 0..15 {
            let c = Arc::new(random_complex(&a, seed, -1, 3, 2));
            let cv = c.checked_dim_vector().unwrap();
            let phi = random_chain_endomorphism(&c, seed);
            phi.check().unwrap();
            phi.checked_trace_vector().unwrap();
            let id = ChainMap::identity(&c);
            assert_eq!(id.checked_trace_vector().unwrap(), cv.to_matrix(Q));
            let z = ChainMap::zero(&c, &c);
            assert!(z.checked_trace_vector().unwrap().is_zero());
        }
    }

    #[test]
    fn cone_dimension_is_difference() {
        let a = alg(examples::a2(Q));
        for seed in 0..10 {
            let m = Arc::new(random_complex(&a, seed, 0, 2, 2));
            let n = Arc::new(random_complex(&a, seed + 50, 0, 2, 2));
            let f = random_chain_map(&m, &n, seed);
            let c = cone(&f);
            assert_eq!(c.checked_dim_vector().unwrap(), n.dim_vector().sub(&m.dim_vector()));
        }
    }

    #[test]
    fn identity_is_quasi_isomorphism() {
        let a = alg(examples::a2(Q));
        let c = Arc::new(random_complex(&a, 4, 0, 3, 2));
        assert!(ChainMap::identity(&c).is_quasi_isomorphism());
    }
}
