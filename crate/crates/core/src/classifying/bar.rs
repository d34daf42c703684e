//! The bar constructions `BG` and `EG = BG ×_τ G`.
//!
//! `BGₙ = Gⁿ` with `d₀` dropping the first entry, `dᵢ` multiplying entries
//! `i` and `i+1`, `dₙ` dropping the last, and `sⱼ` inserting the identity.
//! Nondegenerate simplices are labelled `[g1|g2|...|gn]` by element index;
//! the vertex is `[]`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::group::FiniteGroup;
use crate::cohomology::nonabelian::TwistingCocycle;
use crate::error::{Error, Result};
use crate::simplicial::{realize, Cell, Formal, SMap, SSet, SimplicialModel};

use super::twisted::PrincipalBundle;

pub(crate) struct BarModel<'a> {
    pub g: &'a FiniteGroup,
}

pub(crate) fn bar_label(t: &[u32]) -> String {
    let parts: Vec<String> = t.iter().map(u32::to_string).collect();
    format!("[{}]", parts.join("|"))
}

pub(crate) fn bar_face(g: &FiniteGroup, n: usize, i: usize, t: &[u32]) -> Vec<u32> {
    if i == 0 {
        t[1..].to_vec()
    } else if i == n {
        t[..n - 1].to_vec()
    } else {
        let mut out = t[..i - 1].to_vec();
        out.push(g.mul(t[i - 1] as usize, t[i] as usize) as u32);
        out.extend_from_slice(&t[i + 1..]);
        out
    }
}

pub(crate) fn bar_degeneracy(j: usize, t: &[u32]) -> Vec<u32> {
    let mut out = t.to_vec();
    out.insert(j, 0);
    out
}

/// All tuples in `Gⁿ`, lexicographically.
pub(crate) fn tuples(order: usize, n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..order as u32).map(move |g| {
                    let mut t = t.clone();
                    t.push(g);
                    t
                })
            })
            .collect();
    }
    out
}

impl SimplicialModel for BarModel<'_> {
    type Simplex = Vec<u32>;

    fn simplices(&self, n: usize) -> Vec<Vec<u32>> {
        tuples(self.g.order(), n)
    }

    fn face(&self, n: usize, i: usize, t: &Vec<u32>) -> Vec<u32> {
        bar_face(self.g, n, i, t)
    }

    fn degeneracy(&self, _n: usize, j: usize, t: &Vec<u32>) -> Vec<u32> {
        bar_degeneracy(j, t)
    }

    fn label(&self, _n: usize, t: &Vec<u32>) -> String {
        bar_label(t)
    }
}

/// `BG` truncated at `dim_cap`, with the normal form of every tuple.
#[derive(Clone, Debug)]
pub struct ClassifyingSpace {
    pub group: FiniteGroup,
    pub space: Arc<SSet>,
    /// Nondegenerate tuples of each dimension, in cell order.
    pub cells: Vec<Vec<Vec<u32>>>,
    normal: Vec<HashMap<Vec<u32>, Formal>>,
}

impl ClassifyingSpace {
    pub fn new(g: &FiniteGroup, dim_cap: usize) -> Result<ClassifyingSpace> {
        let r = realize(&BarModel { g }, dim_cap)?;
        let space = Arc::new(r.sset);
        let mut cells: Vec<Vec<Vec<u32>>> = (0..=dim_cap)
            .map(|n| vec![Vec::new(); space.count(n)])
            .collect();
        for (n, level) in r.normal.iter().enumerate() {
            for (t, f) in level {
                if let Some(c) = f.as_cell() {
                    cells[n][c.idx] = t.clone();
                }
            }
        }
        Ok(ClassifyingSpace {
            group: g.clone(),
            space,
            cells,
            normal: r.normal,
        })
    }

    pub fn dim_cap(&self) -> usize {
        self.space.dim_cap()
    }

    /// Normal form of any tuple of length at most `dim_cap`.
    pub fn formal(&self, t: &[u32]) -> &Formal {
        &self.normal[t.len()][t]
    }

    /// The cell of a nondegenerate tuple.
    pub fn cell_of(&self, t: &[u32]) -> Option<Cell> {
        self.formal(t).as_cell()
    }

    /// `Bφ: BG → BH` for a homomorphism given by element images.
    pub fn induced(&self, target: &ClassifyingSpace, hom: &[usize]) -> Result<SMap> {
        if !self.group.is_homomorphism(&target.group, hom) {
            return Err(Error::InvalidHomomorphism(
                "images do not define a homomorphism".into(),
            ));
        }
        let cap = self.dim_cap().min(target.dim_cap());
        let images = (0..=cap)
            .map(|n| {
                self.cells[n]
                    .iter()
                    .map(|t| {
                        let u: Vec<u32> = t.iter().map(|&g| hom[g as usize] as u32).collect();
                        target.formal(&u).clone()
                    })
                    .collect()
            })
            .collect();
        SMap::new(self.space.clone(), target.space.clone(), images)
    }

    /// The classifying map `X → BG` of a cocycle,
    /// `x ↦ [τ(x₀₁)⁻¹ | τ(x₁₂)⁻¹ | ...]`, so that the universal cocycle pulls
    /// back to `τ`.
    pub fn classifying_map(&self, tau: &TwistingCocycle) -> Result<SMap> {
        let x = tau.base();
        let g = &self.group;
        if *g != *tau.group() {
            return Err(Error::Mismatch(
                "cocycle takes values in a different group".into(),
            ));
        }
        if x.dim_cap() > self.dim_cap() {
            return Err(Error::DimCapTooSmall {
                dim_cap: self.dim_cap(),
                required: x.dim_cap(),
            });
        }
        let images = (0..=x.dim_cap())
            .map(|n| {
                x.cells(n)
                    .map(|c| {
                        let t: Vec<u32> = (0..n)
                            .map(|i| g.inv(tau.value(&edge_between(x, c, i))) as u32)
                            .collect();
                        self.formal(&t).clone()
                    })
                    .collect()
            })
            .collect();
        SMap::new(x.clone(), self.space.clone(), images)
    }
}

#[derive(Clone, Debug)]
pub struct Bar {
    pub bg: ClassifyingSpace,
    /// `τ([g]) = g⁻¹`, the cocycle of `EG → BG`.
    pub universal: TwistingCocycle,
    pub eg: PrincipalBundle,
}

impl Bar {
    pub fn group(&self) -> &FiniteGroup {
        &self.bg.group
    }

    pub fn bg_space(&self) -> &Arc<SSet> {
        &self.bg.space
    }

    pub fn eg_space(&self) -> &Arc<SSet> {
        self.eg.total()
    }

    pub fn proj(&self) -> &SMap {
        self.eg.projection()
    }
}

/// `EG → BG` for a finite group, truncated at `dim_cap ≥ 1`.
pub fn bar_construction(g: &FiniteGroup, dim_cap: usize) -> Result<Bar> {
    if dim_cap == 0 {
        return Err(Error::DimCapTooSmall {
            dim_cap,
            required: 1,
        });
    }
    let bg = ClassifyingSpace::new(g, dim_cap)?;
    let values = bg.cells[1].iter().map(|t| g.inv(t[0] as usize)).collect();
    let universal = TwistingCocycle::new(bg.space.clone(), g.clone(), values)?;
    let eg = PrincipalBundle::new(&universal)?;
    Ok(Bar { bg, universal, eg })
}

/// The edge from vertex `i` to vertex `i+1` of a simplex.
fn edge_between(x: &SSet, c: Cell, i: usize) -> Formal {
    let mut f = Formal::nondegenerate(c);
    for j in (i + 2..=c.dim).rev() {
        f = x.face_formal(&f, j);
    }
    for _ in 0..i {
        f = x.face_formal(&f, 0);
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::finab::FinAb;
    use crate::cohomology::chains::cohomology;

    #[test]
    fn counts_and_labels() {
        let g = FiniteGroup::cyclic(3);
        let b = bar_construction(&g, 3).unwrap();
        assert_eq!(b.bg_space().counts(), vec![1, 2, 4, 8]);
        assert_eq!(b.bg_space().id(Cell::new(2, 0)), "[1|1]");
        assert_eq!(b.eg_space().count(1), 6);
        assert!(b.proj().is_levelwise_surjective());
    }

    #[test]
    fn eg_is_acyclic() {
        let g = FiniteGroup::cyclic(2);
        let b = bar_construction(&g, 5).unwrap();
        for n in 1..4 {
            assert!(cohomology(b.eg_space(), &FinAb::cyclic(2), n)
                .unwrap()
                .is_zero());
        }
    }

    #[test]
    fn classifying_map_pulls_back() {
        let g = FiniteGroup::cyclic(4);
        let b = bar_construction(&g, 3).unwrap();
        let f = b.bg.classifying_map(&b.universal).unwrap();
        assert!(f.is_isomorphism());
        assert_eq!(
            b.universal.pullback(&f).unwrap().values(),
            b.universal.values()
        );
        let q = ClassifyingSpace::new(&FiniteGroup::cyclic(2), 3).unwrap();
        let r = b.bg.induced(&q, &[0, 1, 0, 1]).unwrap();
        assert!(r.is_levelwise_surjective());
    }
}
