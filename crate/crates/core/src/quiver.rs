//! Quivers, paths and presentations of bound quiver algebras.
//!
//! Vertices are 0-based internally (the file format is 1-based). Paths compose
//! left to right: the path `a b` traverses `a` first, then `b`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    pub vertices: usize,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: usize, arrows: Vec<Arrow>) -> Result<Self> {
        let q = Quiver { vertices, arrows };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        if self.vertices == 0 {
            return Err(Error::Validation("quiver needs at least one vertex".into()));
        }
        let mut seen = HashSet::new();
        for a in &self.arrows {
            if !seen.insert(a.name.as_str()) {
                return Err(Error::Validation(format!("duplicate arrow name {:?}", a.name)));
            }
            if a.source >= self.vertices || a.target >= self.vertices {
                return Err(Error::Validation(format!(
                    "arrow {:?} has an endpoint outside 1..={}",
                    a.name, self.vertices
                )));
            }
        }
        Ok(())
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Path through the named arrows; fails on unknown names or non-composable arrows.
    pub fn path_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Path> {
        let idx = names
            .iter()
            .map(|n| {
                self.arrow_index(n.as_ref())
                    .ok_or_else(|| Error::Validation(format!("unknown arrow {:?}", n.as_ref())))
            })
            .collect::<Result<Vec<_>>>()?;
        self.path_from_arrows(idx)
    }

    pub fn path_from_arrows(&self, arrows: Vec<usize>) -> Result<Path> {
        let Some(&first) = arrows.first() else {
            return Err(Error::Validation("empty arrow list does not determine a path".into()));
        };
        for w in arrows.windows(2) {
            if self.arrows[w[0]].target != self.arrows[w[1]].source {
                return Err(Error::Validation(format!(
                    "arrows {:?} and {:?} do not compose",
                    self.arrows[w[0]].name, self.arrows[w[1]].name
                )));
            }
        }
        let start = self.arrows[first].source;
        let end = self.arrows[*arrows.last().unwrap()].target;
        Ok(Path { start, end, arrows })
    }

    pub fn path_names(&self, p: &Path) -> Vec<String> {
        p.arrows.iter().map(|&a| self.arrows[a].name.clone()).collect()
    }
}

/// A path in a quiver; the empty arrow list is the trivial path at `start`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    pub start: usize,
    pub end: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { start: v, end: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Concatenation `self` then `o`, or `None` if the endpoints do not match.
    pub fn concat(&self, o: &Path) -> Option<Path> {
        if self.end != o.start {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&o.arrows);
        Some(Path { start: self.start, end: o.end, arrows })
    }

    pub fn reversed(&self) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.reverse();
        Path { start: self.end, end: self.start, arrows }
    }
}

/// Degree-lexicographic order: length, then arrow indices, then endpoints.
impl Ord for Path {
    fn cmp(&self, o: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&o.arrows.len())
            .then_with(|| self.arrows.cmp(&o.arrows))
            .then_with(|| self.start.cmp(&o.start))
            .then_with(|| self.end.cmp(&o.end))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// A linear combination of parallel paths of length at least two.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    pub terms: Vec<(Scalar, Path)>,
}

impl Relation {
    pub fn new(terms: Vec<(Scalar, Path)>) -> Self {
        Relation { terms }
    }

    pub fn min_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).min().unwrap_or(0)
    }

    pub fn max_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).max().unwrap_or(0)
    }

    pub fn start(&self) -> usize {
        self.terms[0].1.start
    }

    pub fn end(&self) -> usize {
        self.terms[0].1.end
    }

    /// Merges repeated paths, drops zero terms, sorts terms largest path first and
    /// scales so the leading coefficient is one.
    pub fn normalized(&self) -> Relation {
        let mut acc: BTreeMap<Path, Scalar> = BTreeMap::new();
        for (c, p) in &self.terms {
            let e = acc.entry(p.clone()).or_insert_with(|| c.field().zero());
            *e = e.add(c);
        }
        let mut terms: Vec<(Scalar, Path)> =
            acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).map(|(p, c)| (c, p)).collect();
        if let Some((lead, _)) = terms.first().cloned() {
            let inv = lead.inv();
            for t in &mut terms {
                t.0 = t.0.mul(&inv);
            }
        }
        Relation { terms }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Presentation {
    pub field: FieldSpec,
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
}

impl Presentation {
    pub fn new(field: FieldSpec, quiver: Quiver, relations: Vec<Relation>) -> Result<Self> {
        let p = Presentation { field, quiver, relations };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        self.quiver.validate()?;
        for (k, r) in self.relations.iter().enumerate() {
            let label = format!("relation {}", k + 1);
            if r.terms.is_empty() {
                return Err(Error::Validation(format!("{label} has no terms")));
            }
            let (s, t) = (r.start(), r.end());
            for (c, p) in &r.terms {
                if c.field() != self.field {
                    return Err(Error::Validation(format!("{label} has a coefficient outside {}", self.field)));
                }
                if p.len() < 2 {
                    return Err(Error::Validation(format!(
                        "{label} contains a path of length {} (need at least 2)",
                        p.len()
                    )));
                }
                if p.start != s || p.end != t {
                    return Err(Error::Validation(format!("{label} mixes non-parallel paths")));
                }
                let check = self.quiver.path_from_arrows(p.arrows.clone())?;
                if check.start != p.start || check.end != p.end {
                    return Err(Error::Validation(format!("{label} has inconsistent path endpoints")));
                }
            }
            if r.normalized().terms.is_empty() {
                return Err(Error::Validation(format!("{label} has all coefficients zero")));
            }
        }
        Ok(())
    }

    /// Same algebra with normalized relations; used for canonical emission.
    pub fn canonical(&self) -> Presentation {
        Presentation {
            field: self.field,
            quiver: self.quiver.clone(),
            relations: self.relations.iter().map(Relation::normalized).collect(),
        }
    }

    /// Convenience constructor from 1-based arrow triples and monomial-or-linear relations
    /// given as `(coefficient, arrow names)` lists.
    pub fn from_spec(
        field: FieldSpec,
        vertices: usize,
        arrows: &[(&str, usize, usize)],
        relations: &[&[(i64, &[&str])]],
    ) -> Result<Self> {
        let arrows = arrows
            .iter()
            .map(|&(n, s, t)| {
                if s == 0 || t == 0 {
                    return Err(Error::Validation(format!("arrow {n:?} uses vertex 0 (vertices are 1-based)")));
                }
                Ok(Arrow { name: n.to_string(), source: s - 1, target: t - 1 })
            })
            .collect::<Result<Vec<_>>>()?;
        let quiver = Quiver::new(vertices, arrows)?;
        let mut rels = Vec::new();
        for r in relations {
            let mut terms = Vec::new();
            for (c, names) in r.iter() {
                terms.push((field.from_i64(*c), quiver.path_from_names(names)?));
            }
            rels.push(Relation::new(terms));
        }
        Presentation::new(field, quiver, rels)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.relations.iter().all(|r| r.min_len() == r.max_len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_presentations() {
        let f = FieldSpec::Rationals;
        assert!(Presentation::from_spec(f, 2, &[("a", 1, 2), ("a", 2, 1)], &[]).is_err());
        assert!(Presentation::from_spec(f, 2, &[("a", 1, 3)], &[]).is_err());
        // length-one relation
        let e = Presentation::from_spec(f, 2, &[("a", 1, 2)], &[&[(1, &["a"])]]).unwrap_err();
        assert!(e.to_string().contains("length 1"));
        // non-composable
        assert!(Presentation::from_spec(f, 3, &[("a", 1, 2), ("b", 1, 3)], &[&[(1, &["a", "b"])]]).is_err());
        // zero relation
        assert!(Presentation::from_spec(
            f,
            3,
            &[("a", 1, 2), ("b", 2, 3)],
            &[&[(1, &["a", "b"]), (-1, &["a", "b"])]]
        )
        .is_err());
    }

    #[test]
    fn path_order_is_degree_lexicographic() {
        let p = |a: Vec<usize>| Path { start: 0, end: 0, arrows: a };
        assert!(p(vec![3]) < p(vec![0, 0]));
        assert!(p(vec![0, 1]) < p(vec![1, 0]));
        assert!(Path::trivial(5) < p(vec![0]));
    }

    #[test]
    fn normalization_scales_and_sorts() {
        let f = FieldSpec::Rationals;
        let q = Quiver::new(
            2,
            vec![
                Arrow { name: "a".into(), source: 0, target: 1 },
                Arrow { name: "b".into(), source: 1, target: 1 },
            ],
        )
        .unwrap();
        let ab = q.path_from_names(&["a", "b"]).unwrap();
        let abb = q.path_from_names(&["a", "b", "b"]).unwrap();
        let r = Relation::new(vec![(f.from_i64(3), ab.clone()), (f.from_i64(6), abb.clone())]).normalized();
        assert_eq!(r.terms[0], (f.one(), abb));
        assert_eq!(r.terms[1].1, ab);
        assert_eq!(r.terms[1].0, f.from_i64(1).div(&f.from_i64(2)));
    }
}
