//! Finite dimensional quotients kQ/I with a path basis and structure constants.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, IntMatrix, Matrix, Scalar};
use crate::quiver::{Arrow, Path, Presentation, Quiver, Relation};

pub const DEFAULT_LOEWY_CAP: usize = 64;
const PATH_BUDGET: usize = 200_000;

/// Sparse coefficient vector over the basis.
pub type Sparse = Vec<(usize, Scalar)>;

#[derive(Debug)]
pub struct Algebra {
    presentation: Presentation,
    basis: Vec<Path>,
    peirce: Vec<(usize, usize)>,
    peirce_lists: Vec<Vec<Vec<usize>>>,
    index: HashMap<Path, usize>,
    reductions: HashMap<Path, Sparse>,
    loewy: usize,
    table: Vec<Vec<Sparse>>,
}

/// Cartan matrix, its inverse and the Coxeter matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingelFormData {
    pub cartan: IntMatrix,
    pub cartan_inverse: IntMatrix,
    pub coxeter: IntMatrix,
}

impl RingelFormData {
    /// `x^T C^{-T} y`, valid for rectangular `x`, `y` with `n` rows.
    pub fn form(&self, x: &IntMatrix, y: &IntMatrix) -> IntMatrix {
        x.transpose().mul(&self.cartan_inverse.transpose()).mul(y)
    }

    /// The form of the opposite algebra, `x^T C^{-1} y`.
    pub fn opposite_form(&self, x: &IntMatrix, y: &IntMatrix) -> IntMatrix {
        x.transpose().mul(&self.cartan_inverse).mul(y)
    }
}

struct PathTable {
    by_len: Vec<Vec<Path>>,
    ending: Vec<HashMap<usize, Vec<usize>>>,
    starting: Vec<HashMap<usize, Vec<usize>>>,
    total: usize,
}

impl PathTable {
    fn new(q: &Quiver) -> Self {
        let trivial: Vec<Path> = (0..q.vertices).map(Path::trivial).collect();
        let mut t = PathTable { by_len: Vec::new(), ending: Vec::new(), starting: Vec::new(), total: 0 };
        t.push(trivial);
        t
    }

    fn push(&mut self, paths: Vec<Path>) {
        let mut e: HashMap<usize, Vec<usize>> = HashMap::new();
        let mut s: HashMap<usize, Vec<usize>> = HashMap::new();
        for (k, p) in paths.iter().enumerate() {
            e.entry(p.end).or_default().push(k);
            s.entry(p.start).or_default().push(k);
        }
        self.total += paths.len();
        self.by_len.push(paths);
        self.ending.push(e);
        self.starting.push(s);
    }

    fn extend_to(&mut self, q: &Quiver, d: usize) -> Result<()> {
        while self.by_len.len() <= d {
            let last = self.by_len.last().unwrap();
            let mut next = Vec::new();
            for p in last {
                for (ai, a) in q.arrows.iter().enumerate() {
                    if a.source == p.end {
                        let mut arrows = p.arrows.clone();
                        arrows.push(ai);
                        next.push(Path { start: p.start, end: a.target, arrows });
                    }
                }
            }
            if self.total + next.len() > PATH_BUDGET {
                return Err(Error::NonAdmissible(format!(
                    "more than {PATH_BUDGET} paths of length at most {}",
                    self.by_len.len()
                )));
            }
            next.sort();
            self.push(next);
        }
        Ok(())
    }

    fn ending_at(&self, len: usize, v: usize) -> impl Iterator<Item = &Path> {
        self.ending[len].get(&v).into_iter().flatten().map(move |&k| &self.by_len[len][k])
    }

    fn starting_at(&self, len: usize, v: usize) -> impl Iterator<Item = &Path> {
        self.starting[len].get(&v).into_iter().flatten().map(move |&k| &self.by_len[len][k])
    }
}

/// Ideal generators `p rho q` whose shortest term has length at most `bound`,
/// keeping only terms of length at most `keep`.
fn shifted_relations(
    pres: &Presentation,
    paths: &PathTable,
    bound: usize,
    keep: usize,
    full_only: bool,
) -> HashMap<(usize, usize), Vec<Vec<(Path, Scalar)>>> {
    let mut blocks: HashMap<(usize, usize), Vec<Vec<(Path, Scalar)>>> = HashMap::new();
    for rel in &pres.relations {
        let rel = rel.normalized();
        let m = rel.min_len();
        let mx = rel.max_len();
        if m > bound {
            continue;
        }
        let (s, t) = (rel.start(), rel.end());
        for a in 0..=(bound - m) {
            for b in 0..=(bound - m - a) {
                if full_only && a + b + mx > keep {
                    continue;
                }
                for p in paths.ending_at(a, s) {
                    for q in paths.starting_at(b, t) {
                        let mut row = Vec::new();
                        for (c, path) in &rel.terms {
                            if a + b + path.len() > keep {
                                continue;
                            }
                            let full = p.concat(path).unwrap().concat(q).unwrap();
                            row.push((full, c.clone()));
                        }
                        if !row.is_empty() {
                            blocks.entry((p.start, q.end)).or_default().push(row);
                        }
                    }
                }
            }
        }
    }
    blocks
}

/// Columns of a block: all paths `start -> end` of length at most `max_len`,
/// largest first.
fn block_columns(paths: &PathTable, start: usize, end: usize, max_len: usize) -> Vec<Path> {
    let mut cols: Vec<Path> = Vec::new();
    for len in (0..=max_len).rev() {
        let mut here: Vec<Path> =
            paths.starting_at(len, start).filter(|p| p.end == end).cloned().collect();
        here.sort();
        here.reverse();
        cols.extend(here);
    }
    cols
}

fn rows_matrix(field: FieldSpec, rows: &[Vec<(Path, Scalar)>], cols: &[Path]) -> Matrix {
    let pos: HashMap<&Path, usize> = cols.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut m = Matrix::zeros(field, rows.len(), cols.len());
    for (i, r) in rows.iter().enumerate() {
        for (p, c) in r {
            let j = pos[p];
            let v = m.get(i, j).add(c);
            m.set(i, j, v);
        }
    }
    m
}

/// True when every path of length `d` is a leading term of the truncated ideal.
fn degree_dies(pres: &Presentation, paths: &PathTable, d: usize) -> bool {
    let blocks = shifted_relations(pres, paths, d, d, false);
    let mut needed: HashMap<(usize, usize), usize> = HashMap::new();
    for p in &paths.by_len[d] {
        *needed.entry((p.start, p.end)).or_default() += 1;
    }
    for ((s, t), count) in needed {
        let Some(rows) = blocks.get(&(s, t)) else {
            return false;
        };
        let cols = block_columns(paths, s, t, d);
        let m = rows_matrix(pres.field, rows, &cols);
        let (_, pivots) = m.rref();
        // length-d columns come first
        let dead = pivots.iter().take_while(|&&c| c < count).count();
        if dead < count {
            return false;
        }
    }
    true
}

/// Exact membership test: every length-`d` path lies in the span of untruncated
/// shifted relations all of whose terms have length at most `d + spread`.
fn degree_in_ideal(pres: &Presentation, paths: &mut PathTable, d: usize, spread: usize) -> Result<bool> {
    let top = d + spread;
    paths.extend_to(&pres.quiver, top)?;
    let blocks = shifted_relations(pres, paths, top, top, true);
    let mut targets: HashMap<(usize, usize), Vec<Path>> = HashMap::new();
    for p in &paths.by_len[d] {
        targets.entry((p.start, p.end)).or_default().push(p.clone());
    }
    for ((s, t), want) in targets {
        let Some(rows) = blocks.get(&(s, t)) else {
            return Ok(false);
        };
        let cols = block_columns(paths, s, t, top);
        let gens = rows_matrix(pres.field, rows, &cols);
        let r = gens.rank();
        let units: Vec<Vec<(Path, Scalar)>> =
            want.iter().map(|p| vec![(p.clone(), pres.field.one())]).collect();
        let extra = rows_matrix(pres.field, &units, &cols);
        if Matrix::vstack(&[&gens, &extra], pres.field, cols.len()).rank() != r {
            return Ok(false);
        }
    }
    Ok(true)
}

impl Algebra {
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn field(&self) -> FieldSpec {
        self.presentation.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.presentation.quiver
    }

    /// Number of vertices (primitive idempotents).
    pub fn n(&self) -> usize {
        self.presentation.quiver.vertices
    }

    pub fn arrow_count(&self) -> usize {
        self.presentation.quiver.arrows.len()
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.presentation.quiver.arrows[a]
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    /// `(i, j)` with `b = e_i b e_j`.
    pub fn peirce(&self, b: usize) -> (usize, usize) {
        self.peirce[b]
    }

    /// Basis indices of `e_i A e_j`, ascending (so `e_i` comes first when `i == j`).
    pub fn peirce_list(&self, i: usize, j: usize) -> &[usize] {
        &self.peirce_lists[i][j]
    }

    pub fn loewy_bound(&self) -> usize {
        self.loewy
    }

    pub fn basis_index(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Basis element of the arrow `a`.
    pub fn arrow_element(&self, a: usize) -> Option<usize> {
        let ar = self.arrow(a);
        self.basis_index(&Path { start: ar.source, end: ar.target, arrows: vec![a] })
    }

    /// Radical basis: all basis paths of positive length.
    pub fn radical_basis(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&b| !self.basis[b].is_trivial()).collect()
    }

    /// Normal form of an arbitrary path.
    pub fn reduce_path(&self, p: &Path) -> Sparse {
        if p.len() >= self.loewy {
            return Vec::new();
        }
        if let Some(&i) = self.index.get(p) {
            return vec![(i, self.field().one())];
        }
        self.reductions.get(p).cloned().unwrap_or_default()
    }

    /// Product of two basis elements.
    pub fn basis_product(&self, a: usize, b: usize) -> &Sparse {
        &self.table[a][b]
    }

    /// Product of coefficient vectors over the basis.
    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let f = self.field();
        let mut out = vec![f.zero(); self.dim()];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a.mul(b);
                for (k, c) in &self.table[i][j] {
                    out[*k] = out[*k].add(&ab.mul(c));
                }
            }
        }
        out
    }

    pub fn unit_vector(&self, b: usize) -> Vec<Scalar> {
        let f = self.field();
        let mut v = vec![f.zero(); self.dim()];
        v[b] = f.one();
        v
    }

    pub fn one_vector(&self) -> Vec<Scalar> {
        let f = self.field();
        let mut v = vec![f.zero(); self.dim()];
        for i in 0..self.n() {
            v[self.peirce_lists[i][i][0]] = f.one();
        }
        v
    }

    /// Entry (i, j) is `dim e_j A e_i`.
    pub fn cartan_matrix(&self) -> IntMatrix {
        let n = self.n();
        IntMatrix::from_fn(n, n, |i, j| BigInt::from(self.peirce_lists[j][i].len()))
    }

    pub fn ringel_data(&self) -> Result<RingelFormData> {
        let cartan = self.cartan_matrix();
        let cartan_inverse = cartan.int_inverse()?;
        let coxeter = cartan_inverse.transpose().mul(&cartan).neg();
        Ok(RingelFormData { cartan, cartan_inverse, coxeter })
    }

    /// Two handles describe the same algebra.
    pub fn same_as(&self, o: &Algebra) -> bool {
        std::ptr::eq(self, o) || self.presentation == o.presentation
    }
}

impl PartialEq for Algebra {
    fn eq(&self, o: &Self) -> bool {
        self.same_as(o)
    }
}

pub fn build_algebra(p: &Presentation) -> Result<Algebra> {
    build_algebra_with_cap(p, DEFAULT_LOEWY_CAP)
}

/// Builds kQ/I. Fails with `NonAdmissible` when no power `J^d`, `d <= cap`, of the
/// arrow ideal is shown to lie in I.
pub fn build_algebra_with_cap(p: &Presentation, cap: usize) -> Result<Algebra> {
    p.validate()?;
    let pres = p.clone();
    let field = pres.field;
    let q = &pres.quiver;
    let homogeneous = pres.is_homogeneous();
    let spread = pres.relations.iter().map(|r| r.max_len() - r.min_len()).max().unwrap_or(0);
    let mut paths = PathTable::new(q);
    let mut loewy = None;
    for d in 1..=cap {
        paths.extend_to(q, d)?;
        if paths.by_len[d].is_empty() || degree_dies(&pres, &paths, d) {
            if homogeneous || paths.by_len[d].is_empty() || degree_in_ideal(&pres, &mut paths, d, spread)? {
                loewy = Some(d);
                break;
            }
        }
    }
    let Some(l) = loewy else {
        return Err(Error::NonAdmissible(format!(
            "paths of length {cap} survive the relations (oriented cycle or non-admissible ideal)"
        )));
    };

    // Normal forms below the Loewy bound.
    let below = l - 1;
    let blocks = if below >= 2 { shifted_relations(&pres, &paths, below, below, false) } else { HashMap::new() };
    let mut standard: Vec<Path> = Vec::new();
    let mut reductions_raw: Vec<(Path, Vec<(Path, Scalar)>)> = Vec::new();
    for s in 0..q.vertices {
        for t in 0..q.vertices {
            let cols = block_columns(&paths, s, t, below);
            if cols.is_empty() {
                continue;
            }
            let (rref, pivots) = match blocks.get(&(s, t)) {
                Some(rows) => rows_matrix(field, rows, &cols).rref(),
                None => (Matrix::zeros(field, 0, cols.len()), Vec::new()),
            };
            for (c, path) in cols.iter().enumerate() {
                if !pivots.contains(&c) {
                    standard.push(path.clone());
                }
            }
            for (ri, &pc) in pivots.iter().enumerate() {
                let mut rhs = Vec::new();
                for c in pc + 1..cols.len() {
                    let v = rref.get(ri, c);
                    if !v.is_zero() {
                        rhs.push((cols[c].clone(), v.neg()));
                    }
                }
                reductions_raw.push((cols[pc].clone(), rhs));
            }
        }
    }
    let n = q.vertices;
    let mut basis: Vec<Path> = (0..n).map(Path::trivial).collect();
    let mut nontrivial: Vec<Path> = standard.into_iter().filter(|p| !p.is_trivial()).collect();
    nontrivial.sort();
    basis.extend(nontrivial);
    let index: HashMap<Path, usize> = basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let reductions: HashMap<Path, Sparse> = reductions_raw
        .into_iter()
        .map(|(p, rhs)| (p, rhs.into_iter().map(|(q, c)| (index[&q], c)).collect()))
        .collect();
    let peirce: Vec<(usize, usize)> = basis.iter().map(|p| (p.start, p.end)).collect();
    let mut peirce_lists = vec![vec![Vec::new(); n]; n];
    for (b, &(i, j)) in peirce.iter().enumerate() {
        peirce_lists[i][j].push(b);
    }
    let mut alg = Algebra {
        presentation: pres,
        basis,
        peirce,
        peirce_lists,
        index,
        reductions,
        loewy: l,
        table: Vec::new(),
    };
    let dim = alg.dim();
    let mut table = vec![vec![Vec::new(); dim]; dim];
    for a in 0..dim {
        for b in 0..dim {
            if let Some(p) = alg.basis[a].concat(&alg.basis[b]) {
                table[a][b] = alg.reduce_path(&p);
            }
        }
    }
    alg.table = table;
    Ok(alg)
}

type CacheKey = (u8, Presentation, Option<Presentation>);

fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<Algebra>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<Algebra>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached(key: CacheKey, make: impl FnOnce() -> Result<Algebra>) -> Result<Arc<Algebra>> {
    if let Some(a) = cache().lock().unwrap().get(&key) {
        return Ok(a.clone());
    }
    let a = Arc::new(make()?);
    Ok(cache().lock().unwrap().entry(key).or_insert(a).clone())
}

/// Presentation with arrows reversed and relation paths reversed; arrow names and
/// order are kept.
pub fn opposite_presentation(p: &Presentation) -> Presentation {
    let arrows = p
        .quiver
        .arrows
        .iter()
        .map(|a| Arrow { name: a.name.clone(), source: a.target, target: a.source })
        .collect();
    let relations = p
        .relations
        .iter()
        .map(|r| Relation::new(r.terms.iter().map(|(c, path)| (c.clone(), path.reversed())).collect()))
        .collect();
    Presentation {
        field: p.field,
        quiver: Quiver { vertices: p.quiver.vertices, arrows },
        relations,
    }
}

pub fn opposite_algebra(a: &Algebra) -> Result<Arc<Algebra>> {
    let key = (0, a.presentation.clone(), None);
    cached(key, || build_algebra(&opposite_presentation(&a.presentation)))
}

/// Presentation of `B (x) A` on the product quiver. Vertex `(j, i)` has index
/// `j * n_A + i`; arrows `(beta, i)` come first, then `(j, alpha)`.
pub fn tensor_presentation(b: &Presentation, a: &Presentation) -> Result<Presentation> {
    if b.field != a.field {
        return Err(Error::Validation(format!("field mismatch: {} vs {}", b.field, a.field)));
    }
    let field = a.field;
    let (m, n) = (b.quiver.vertices, a.quiver.vertices);
    let (nb, na) = (b.quiver.arrows.len(), a.quiver.arrows.len());
    let vid = |j: usize, i: usize| j * n + i;
    let left_id = |beta: usize, i: usize| beta * n + i;
    let right_id = |j: usize, alpha: usize| nb * n + j * na + alpha;
    let mut arrows = Vec::with_capacity(nb * n + m * na);
    for beta in &b.quiver.arrows {
        for i in 0..n {
            arrows.push(Arrow {
                name: format!("{}|e{}", beta.name, i + 1),
                source: vid(beta.source, i),
                target: vid(beta.target, i),
            });
        }
    }
    for j in 0..m {
        for alpha in &a.quiver.arrows {
            arrows.push(Arrow {
                name: format!("e{}|{}", j + 1, alpha.name),
                source: vid(j, alpha.source),
                target: vid(j, alpha.target),
            });
        }
    }
    let mut seen = std::collections::HashSet::new();
    for ar in &mut arrows {
        while !seen.insert(ar.name.clone()) {
            ar.name.push('\'');
        }
    }
    let quiver = Quiver { vertices: m * n, arrows };
    let mut relations = Vec::new();
    for rel in &b.relations {
        for i in 0..n {
            let terms = rel
                .terms
                .iter()
                .map(|(c, p)| {
                    let arrows = p.arrows.iter().map(|&x| left_id(x, i)).collect();
                    (c.clone(), Path { start: vid(p.start, i), end: vid(p.end, i), arrows })
                })
                .collect();
            relations.push(Relation::new(terms));
        }
    }
    for j in 0..m {
        for rel in &a.relations {
            let terms = rel
                .terms
                .iter()
                .map(|(c, p)| {
                    let arrows = p.arrows.iter().map(|&x| right_id(j, x)).collect();
                    (c.clone(), Path { start: vid(j, p.start), end: vid(j, p.end), arrows })
                })
                .collect();
            relations.push(Relation::new(terms));
        }
    }
    for (bi, beta) in b.quiver.arrows.iter().enumerate() {
        for (ai, alpha) in a.quiver.arrows.iter().enumerate() {
            let (u, v) = (beta.source, beta.target);
            let (i, i2) = (alpha.source, alpha.target);
            let p1 = Path {
                start: vid(u, i),
                end: vid(v, i2),
                arrows: vec![left_id(bi, i), right_id(v, ai)],
            };
            let p2 = Path {
                start: vid(u, i),
                end: vid(v, i2),
                arrows: vec![right_id(u, ai), left_id(bi, i2)],
            };
            relations.push(Relation::new(vec![(field.one(), p1), (field.one().neg(), p2)]));
        }
    }
    Presentation::new(field, quiver, relations)
}

pub fn tensor_algebra(b: &Algebra, a: &Algebra) -> Result<Arc<Algebra>> {
    let key = (1, b.presentation.clone(), Some(a.presentation.clone()));
    cached(key, || build_algebra(&tensor_presentation(&b.presentation, &a.presentation)?))
}

/// `A^op (x) A`.
pub fn enveloping_algebra(a: &Algebra) -> Result<Arc<Algebra>> {
    let op = opposite_algebra(a)?;
    tensor_algebra(&op, a)
}

/// Index of the tensor-algebra arrow `(beta, i)`.
pub fn tensor_left_arrow(b: &Algebra, a: &Algebra, beta: usize, i: usize) -> usize {
    let _ = b;
    beta * a.n() + i
}

/// Index of the tensor-algebra arrow `(j, alpha)`.
pub fn tensor_right_arrow(b: &Algebra, a: &Algebra, j: usize, alpha: usize) -> usize {
    b.arrow_count() * a.n() + j * a.arrow_count() + alpha
}

/// The bundled example algebras.
pub mod examples {
    use super::*;

    /// One vertex, no arrows: the field itself.
    pub fn field_algebra(f: FieldSpec) -> Presentation {
        Presentation::from_spec(f, 1, &[], &[]).unwrap()
    }

    /// `1 -a-> 2`.
    pub fn a2(f: FieldSpec) -> Presentation {
        Presentation::from_spec(f, 2, &[("a", 1, 2)], &[]).unwrap()
    }

    /// `1 -a-> 2 -b-> 3` with `ab = 0`.
    pub fn a3_rel(f: FieldSpec) -> Presentation {
        Presentation::from_spec(f, 3, &[("a", 1, 2), ("b", 2, 3)], &[&[(1, &["a", "b"])]]).unwrap()
    }

    /// `1 => 2` with arrows `a`, `b`.
    pub fn kronecker(f: FieldSpec) -> Presentation {
        Presentation::from_spec(f, 2, &[("a", 1, 2), ("b", 1, 2)], &[]).unwrap()
    }

    /// `1 -a-> 2 -b-> 3` without relations.
    pub fn a3(f: FieldSpec) -> Presentation {
        Presentation::from_spec(f, 3, &[("a", 1, 2), ("b", 2, 3)], &[]).unwrap()
    }

    /// Oriented 2-cycle without relations (not admissible).
    pub fn two_cycle(f: FieldSpec) -> Presentation {
        Presentation::from_spec(f, 2, &[("a", 1, 2), ("b", 2, 1)], &[]).unwrap()
    }

    /// One loop `x` with `x^2 = 0` (infinite global dimension).
    pub fn dual_numbers(f: FieldSpec) -> Presentation {
        Presentation::from_spec(f, 1, &[("x", 1, 1)], &[&[(1, &["x", "x"])]]).unwrap()
    }

    /// Commutative square `1 -> 2 -> 4`, `1 -> 3 -> 4` with `ab - cd = 0`.
    pub fn commutative_square(f: FieldSpec) -> Presentation {
        Presentation::from_spec(
            f,
            4,
            &[("a", 1, 2), ("b", 2, 4), ("c", 1, 3), ("d", 3, 4)],
            &[&[(1, &["a", "b"]), (-1, &["c", "d"])]],
        )
        .unwrap()
    }

    /// The bundled algebras with their short names.
    pub fn bundled(f: FieldSpec) -> Vec<(&'static str, Presentation)> {
        vec![("K", field_algebra(f)), ("A2", a2(f)), ("A3R", a3_rel(f)), ("KR", kronecker(f))]
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn names(a: &Algebra) -> Vec<String> {
        a.basis()
            .iter()
            .map(|p| {
                if p.is_trivial() {
                    format!("e{}", p.start + 1)
                } else {
                    a.quiver().path_names(p).join("")
                }
            })
            .collect()
    }

    #[test]
    fn build_examples() {
        let a = build_algebra(&a2(Q)).unwrap();
        assert_eq!(names(&a), ["e1", "e2", "a"]);
        let a = build_algebra(&a3_rel(Q)).unwrap();
        assert_eq!(names(&a), ["e1", "e2", "e3", "a", "b"]);
        let k = build_algebra(&field_algebra(Q)).unwrap();
        assert_eq!(k.dim(), 1);
        assert_eq!(build_algebra(&a3(Q)).unwrap().dim(), 6);
    }

    #[test]
    fn multiply_examples() {
        let a = build_algebra(&a2(Q)).unwrap();
        let e1 = a.unit_vector(0);
        let e2 = a.unit_vector(1);
        let x = a.unit_vector(2);
        assert_eq!(a.multiply(&e1, &e1), e1);
        assert!(a.multiply(&e1, &e2).iter().all(Scalar::is_zero));
        assert_eq!(a.multiply(&e1, &x), x);
        assert_eq!(a.multiply(&x, &e2), x);
        assert!(a.multiply(&x, &e1).iter().all(Scalar::is_zero));

        let r = build_algebra(&a3_rel(Q)).unwrap();
        assert!(r.multiply(&r.unit_vector(3), &r.unit_vector(4)).iter().all(Scalar::is_zero));
    }

    #[test]
    fn cartan_and_coxeter() {
        let a = build_algebra(&a2(Q)).unwrap();
        assert_eq!(a.cartan_matrix(), IntMatrix::from_i64_rows(&[&[1, 0], &[1, 1]]));
        let rd = a.ringel_data().unwrap();
        assert_eq!(rd.coxeter, IntMatrix::from_i64_rows(&[&[0, 1], &[-1, -1]]));
        assert_eq!(rd.coxeter.trace(), BigInt::from(-1));

        let r = build_algebra(&a3_rel(Q)).unwrap();
        assert_eq!(
            r.cartan_matrix(),
            IntMatrix::from_i64_rows(&[&[1, 0, 0], &[1, 1, 0], &[0, 1, 1]])
        );
        assert_eq!(r.ringel_data().unwrap().coxeter.trace(), BigInt::from(-1));

        let k = build_algebra(&field_algebra(Q)).unwrap();
        assert_eq!(k.ringel_data().unwrap().coxeter, IntMatrix::from_i64_rows(&[&[-1]]));
    }

    #[test]
    fn opposite_and_tensor() {
        let a = build_algebra(&a2(Q)).unwrap();
        let op = opposite_algebra(&a).unwrap();
        assert_eq!(op.arrow(0).source, 1);
        assert_eq!(op.cartan_matrix(), a.cartan_matrix().transpose());

        let r = build_algebra(&a3_rel(Q)).unwrap();
        let rop = opposite_algebra(&r).unwrap();
        assert_eq!(rop.dim(), 5);

        let k = build_algebra(&field_algebra(Q)).unwrap();
        let ka = tensor_algebra(&k, &a).unwrap();
        assert_eq!(ka.dim(), a.dim());
        assert_eq!(ka.cartan_matrix(), a.cartan_matrix());

        let env = enveloping_algebra(&a).unwrap();
        assert_eq!(env.dim(), 9);
        let c = a.cartan_matrix();
        assert_eq!(env.cartan_matrix(), c.transpose().kronecker(&c));
    }

    #[test]
    fn negative_controls() {
        assert!(matches!(build_algebra(&two_cycle(Q)), Err(Error::NonAdmissible(_))));
        let d = build_algebra(&dual_numbers(Q)).unwrap();
        assert_eq!(d.dim(), 2);
        assert!(matches!(d.ringel_data(), Err(Error::Unimodularity { .. })));
    }

    #[test]
    fn commutativity_relation() {
        let a = build_algebra(&commutative_square(Q)).unwrap();
        // e1..e4, a, b, c, d and one surviving length-2 path
        assert_eq!(a.dim(), 9);
        let c = a.cartan_matrix();
        assert_eq!(c.get(3, 0), &BigInt::from(1));
    }

    #[test]
    fn non_homogeneous_relation() {
        // loop x at a vertex with x^2 = x^3 is not admissible (x^2 is idempotent-like),
        // but x^2 - x^3 together with x^3 = 0 is.
        let f = Q;
        let p = Presentation::from_spec(
            f,
            1,
            &[("x", 1, 1)],
            &[&[(1, &["x", "x"]), (-1, &["x", "x", "x"])]],
        )
        .unwrap();
        assert!(matches!(build_algebra(&p), Err(Error::NonAdmissible(_))));
        let p = Presentation::from_spec(
            f,
            1,
            &[("x", 1, 1)],
            &[&[(1, &["x", "x"]), (-1, &["x", "x", "x"])], &[(1, &["x", "x", "x"])]],
        )
        .unwrap();
        let a = build_algebra(&p).unwrap();
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn rebuild_from_canonical_presentation() {
        for (_, p) in bundled(Q) {
            let a = build_algebra(&p).unwrap();
            let b = build_algebra(&a.presentation().canonical()).unwrap();
            assert_eq!(a.basis(), b.basis());
            assert_eq!(a.table, b.table);
        }
    }
}
