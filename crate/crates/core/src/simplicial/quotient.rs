use std::collections::HashMap;
use std::sync::Arc;

use super::formal::{Cell, Formal};
use super::model::{realize, SimplicialModel};
use super::smap::SMap;
use super::sset::SSet;
use crate::error::{Error, Result};

/// A simplicial equivalence relation, given by generating pairs of simplices
/// of equal dimension. The relation used is the smallest levelwise
/// equivalence relation containing the pairs and closed under degeneracies;
/// closure under faces is required and checked.
#[derive(Clone, Debug, Default)]
pub struct SimplicialRelation {
    pub pairs: Vec<(Formal, Formal)>,
}

impl SimplicialRelation {
    pub fn diagonal() -> Self {
        SimplicialRelation::default()
    }

    /// Identifies every listed cell with the totally degenerate simplex on
    /// vertex `base` (collapsing a subcomplex to a point).
    pub fn collapse(x: &SSet, cells: &[Cell], base: usize) -> Result<Self> {
        if base >= x.count(0) {
            return Err(Error::IncompatibleRelation(format!(
                "no vertex with index {base}"
            )));
        }
        let pairs = cells
            .iter()
            .map(|&c| {
                let mut v = Formal::nondegenerate(Cell::new(0, base));
                for _ in 0..c.dim {
                    v = v.degenerate(0);
                }
                (Formal::nondegenerate(c), v)
            })
            .collect();
        Ok(SimplicialRelation { pairs })
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut a: usize) -> usize {
        while self.0[a] != a {
            self.0[a] = self.0[self.0[a]];
            a = self.0[a];
        }
        a
    }

    /// Keeps the smaller index as the root.
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

struct Levels {
    elems: Vec<Vec<Formal>>,
    index: Vec<HashMap<Formal, usize>>,
    root: Vec<Vec<usize>>,
}

impl Levels {
    fn rep(&self, n: usize, x: &Formal) -> Formal {
        self.elems[n][self.root[n][self.index[n][x]]].clone()
    }
}

struct QuotientModel<'a> {
    x: &'a SSet,
    levels: Levels,
}

impl SimplicialModel for QuotientModel<'_> {
    type Simplex = Formal;

    fn simplices(&self, n: usize) -> Vec<Formal> {
        let mut reps: Vec<usize> = self.levels.root[n].clone();
        reps.sort_unstable();
        reps.dedup();
        reps.into_iter()
            .map(|r| self.levels.elems[n][r].clone())
            .collect()
    }

    fn face(&self, n: usize, i: usize, s: &Formal) -> Formal {
        self.levels.rep(n - 1, &self.x.face_formal(s, i))
    }

    fn degeneracy(&self, n: usize, j: usize, s: &Formal) -> Formal {
        self.levels.rep(n + 1, &s.degenerate(j))
    }

    fn label(&self, _n: usize, s: &Formal) -> String {
        self.x.formal_string(s).replace('|', ":")
    }
}

/// The quotient space and its projection.
pub struct Quotient {
    pub space: SSet,
    pub projection: SMap,
    reps: Vec<Vec<Formal>>,
}

impl Quotient {
    /// Factors `f: X → Y` through the projection; fails unless `f` is
    /// constant on equivalence classes.
    pub fn factor(&self, f: &SMap) -> Result<SMap> {
        let q_space = self.projection.target().clone();
        let images: Vec<Vec<Formal>> = self
            .reps
            .iter()
            .map(|lvl| lvl.iter().map(|r| f.apply(r)).collect())
            .collect();
        let g = SMap::new(q_space, f.target().clone(), images)?;
        let composite = self.projection.then(&g)?;
        for n in 0..=composite.dim_cap().min(f.dim_cap()) {
            for c in f.source().cells(n) {
                if composite.image(c) != f.image(c) {
                    return Err(Error::InvalidMap(format!(
                        "map is not constant on the class of `{}`",
                        f.source().id(c)
                    )));
                }
            }
        }
        Ok(g)
    }
}

pub fn quotient(x: &Arc<SSet>, rel: &SimplicialRelation) -> Result<Quotient> {
    let d = x.dim_cap();
    let mut levels = Levels {
        elems: Vec::new(),
        index: Vec::new(),
        root: Vec::new(),
    };
    for n in 0..=d {
        let elems = x.all_simplices(n);
        let index: HashMap<Formal, usize> = elems
            .iter()
            .enumerate()
            .map(|(i, f)| (f.clone(), i))
            .collect();
        let mut uf = UnionFind((0..elems.len()).collect());
        for (a, b) in &rel.pairs {
            if a.dim() != b.dim() {
                return Err(Error::IncompatibleRelation(format!(
                    "pair ({}, {}) mixes dimensions",
                    x.formal_string(a),
                    x.formal_string(b)
                )));
            }
            if a.dim() == n {
                let (Some(&ia), Some(&ib)) = (index.get(a), index.get(b)) else {
                    return Err(Error::IncompatibleRelation(
                        "pair references unknown simplex".into(),
                    ));
                };
                uf.union(ia, ib);
            }
        }
        if n > 0 {
            let below = &levels.elems[n - 1];
            for (k, a) in below.iter().enumerate() {
                let r = levels.root[n - 1][k];
                if r != k {
                    for j in 0..n {
                        let sa = index[&a.degenerate(j)];
                        let sr = index[&below[r].degenerate(j)];
                        uf.union(sa, sr);
                    }
                }
            }
        }
        let root: Vec<usize> = (0..elems.len()).map(|i| uf.find(i)).collect();
        if n > 0 {
            for (k, a) in elems.iter().enumerate() {
                let r = root[k];
                if r == k {
                    continue;
                }
                for i in 0..=n {
                    let fa = levels.index[n - 1][&x.face_formal(a, i)];
                    let fr = levels.index[n - 1][&x.face_formal(&elems[r], i)];
                    if levels.root[n - 1][fa] != levels.root[n - 1][fr] {
                        return Err(Error::IncompatibleRelation(format!(
                            "{} ~ {} but their faces d_{i} are unrelated",
                            x.formal_string(a),
                            x.formal_string(&elems[r])
                        )));
                    }
                }
            }
        }
        levels.elems.push(elems);
        levels.index.push(index);
        levels.root.push(root);
    }
    let model = QuotientModel { x, levels };
    let realized = realize(&model, d)?;
    let space = Arc::new(realized.sset.clone());
    let images: Vec<Vec<Formal>> = (0..=d)
        .map(|n| {
            x.cells(n)
                .map(|c| {
                    realized
                        .formal(n, &model.levels.rep(n, &Formal::nondegenerate(c)))
                        .clone()
                })
                .collect()
        })
        .collect();
    let projection = SMap::new(x.clone(), space.clone(), images)?;
    let reps = (0..=d)
        .map(|n| {
            let mut lvl = vec![None; space.count(n)];
            for r in model.simplices(n) {
                if let Some(c) = realized.formal(n, &r).as_cell() {
                    lvl[c.idx] = Some(r);
                }
            }
            lvl.into_iter()
                .map(|r| r.expect("every quotient cell has a representative"))
                .collect()
        })
        .collect();
    Ok(Quotient {
        space: realized.sset,
        projection,
        reps,
    })
}
