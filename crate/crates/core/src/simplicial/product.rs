use std::sync::Arc;

use super::formal::Formal;
use super::model::{realize, Realized, SimplicialModel};
use super::smap::SMap;
use super::sset::SSet;
use crate::error::Result;

struct ProductModel<'a> {
    x: &'a SSet,
    y: &'a SSet,
}

impl SimplicialModel for ProductModel<'_> {
    type Simplex = (Formal, Formal);

    fn simplices(&self, n: usize) -> Vec<(Formal, Formal)> {
        let ys = self.y.all_simplices(n);
        self.x
            .all_simplices(n)
            .into_iter()
            .flat_map(|a| ys.iter().map(move |b| (a.clone(), b.clone())))
            .collect()
    }

    fn face(&self, _n: usize, i: usize, s: &(Formal, Formal)) -> (Formal, Formal) {
        (self.x.face_formal(&s.0, i), self.y.face_formal(&s.1, i))
    }

    fn degeneracy(&self, _n: usize, j: usize, s: &(Formal, Formal)) -> (Formal, Formal) {
        (s.0.degenerate(j), s.1.degenerate(j))
    }

    fn label(&self, _n: usize, s: &(Formal, Formal)) -> String {
        format!(
            "({},{})",
            self.x.formal_string(&s.0).replace('|', ":"),
            self.y.formal_string(&s.1).replace('|', ":")
        )
    }
}

/// The categorical product with its two projections.
pub struct Product {
    pub space: Arc<SSet>,
    pub pr1: SMap,
    pub pr2: SMap,
    realized: Realized<(Formal, Formal)>,
}

impl Product {
    /// Normal form of the pair `(a, b)` of `n`-simplices.
    pub fn pair(&self, a: &Formal, b: &Formal) -> &Formal {
        self.realized.formal(a.dim(), &(a.clone(), b.clone()))
    }

    /// The map `W → X × Y` induced by `f: W → X` and `g: W → Y`.
    pub fn pairing(&self, f: &SMap, g: &SMap) -> Result<SMap> {
        let cap = f.dim_cap().min(g.dim_cap()).min(self.space.dim_cap());
        let images = (0..=cap)
            .map(|n| {
                f.source()
                    .cells(n)
                    .map(|c| self.pair(f.image(c), g.image(c)).clone())
                    .collect()
            })
            .collect();
        SMap::new(f.source().clone(), self.space.clone(), images)
    }
}

/// `X × Y`; nondegenerate simplices are the pairs of simplices with no common
/// degeneracy index.
pub fn product(x: &Arc<SSet>, y: &Arc<SSet>, dim_cap: usize) -> Result<Product> {
    let dim_cap = dim_cap.min(x.dim_cap()).min(y.dim_cap());
    let model = ProductModel { x, y };
    let realized = realize(&model, dim_cap)?;
    let space = Arc::new(realized.sset.clone());
    let proj = |which: usize| -> Vec<Vec<Formal>> {
        (0..=dim_cap)
            .map(|n| {
                let mut lvl = vec![None; space.count(n)];
                for (pair, f) in &realized.normal[n] {
                    if let Some(c) = f.as_cell() {
                        lvl[c.idx] = Some(if which == 0 {
                            pair.0.clone()
                        } else {
                            pair.1.clone()
                        });
                    }
                }
                lvl.into_iter().map(Option::unwrap).collect()
            })
            .collect()
    };
    let pr1 = SMap::new(space.clone(), x.clone(), proj(0))?;
    let pr2 = SMap::new(space.clone(), y.clone(), proj(1))?;
    Ok(Product {
        space,
        pr1,
        pr2,
        realized,
    })
}

/// The canonical isomorphism `X × Y → Y × X`.
pub fn swap(xy: &Product, yx: &Product) -> Result<SMap> {
    yx.pairing(&xy.pr2, &xy.pr1)
}
