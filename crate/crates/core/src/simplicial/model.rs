//! Realizing a simplicial set described by face and degeneracy functions.
//!
//! Constructions (bar constructions, Dold–Kan, products, quotients, Borel
//! constructions) are written as [`SimplicialModel`]s over their natural
//! simplex type and converted into an [`SSet`] here: every simplex is
//! enumerated, degenerate ones are detected by `s_j d_j z = z`, and faces are
//! rewritten in normal form.

use std::collections::HashMap;
use std::hash::Hash;

use super::formal::{Cell, Formal};
use super::sset::SSet;
use crate::error::Result;

pub trait SimplicialModel {
    type Simplex: Clone + Eq + Hash;

    /// All `n`-simplices, degenerate ones included, in a deterministic order.
    fn simplices(&self, n: usize) -> Vec<Self::Simplex>;
    fn face(&self, n: usize, i: usize, s: &Self::Simplex) -> Self::Simplex;
    fn degeneracy(&self, n: usize, j: usize, s: &Self::Simplex) -> Self::Simplex;
    /// Identifier used for a nondegenerate simplex.
    fn label(&self, n: usize, s: &Self::Simplex) -> String;
}

/// The realized simplicial set together with the normal form of every model
/// simplex, per dimension.
pub struct Realized<S> {
    pub sset: SSet,
    pub normal: Vec<HashMap<S, Formal>>,
}

impl<S: Clone + Eq + Hash> Realized<S> {
    pub fn formal(&self, n: usize, s: &S) -> &Formal {
        &self.normal[n][s]
    }
}

pub fn realize<M: SimplicialModel>(model: &M, dim_cap: usize) -> Result<Realized<M::Simplex>> {
    let mut ids: Vec<Vec<String>> = Vec::with_capacity(dim_cap + 1);
    let mut faces: Vec<Vec<Vec<Formal>>> = Vec::with_capacity(dim_cap + 1);
    let mut normal: Vec<HashMap<M::Simplex, Formal>> = Vec::with_capacity(dim_cap + 1);
    for n in 0..=dim_cap {
        let all = model.simplices(n);
        let mut level_ids = Vec::new();
        let mut level_faces = Vec::new();
        let mut map = HashMap::with_capacity(all.len());
        for z in all {
            let mut nf = None;
            if n > 0 {
                for j in 0..n {
                    let y = model.face(n, j, &z);
                    if model.degeneracy(n - 1, j, &y) == z {
                        let fy: &Formal = &normal[n - 1][&y];
                        nf = Some(fy.degenerate(j));
                        break;
                    }
                }
            }
            let f = match nf {
                Some(f) => f,
                None => {
                    let cell = Cell::new(n, level_ids.len());
                    level_ids.push(model.label(n, &z));
                    if n > 0 {
                        let fl = (0..=n)
                            .map(|i| normal[n - 1][&model.face(n, i, &z)].clone())
                            .collect();
                        level_faces.push(fl);
                    } else {
                        level_faces.push(Vec::new());
                    }
                    Formal::nondegenerate(cell)
                }
            };
            map.insert(z, f);
        }
        ids.push(level_ids);
        faces.push(level_faces);
        normal.push(map);
    }
    let sset = SSet::from_parts(dim_cap, ids, faces)?;
    Ok(Realized { sset, normal })
}

/// An existing simplicial set viewed as a model over formal simplices.
pub struct FormalModel<'a>(pub &'a SSet);

impl SimplicialModel for FormalModel<'_> {
    type Simplex = Formal;

    fn simplices(&self, n: usize) -> Vec<Formal> {
        self.0.all_simplices(n)
    }

    fn face(&self, _n: usize, i: usize, s: &Formal) -> Formal {
        self.0.face_formal(s, i)
    }

    fn degeneracy(&self, _n: usize, j: usize, s: &Formal) -> Formal {
        s.degenerate(j)
    }

    fn label(&self, _n: usize, s: &Formal) -> String {
        self.0.formal_string(s)
    }
}
