//! The Borel construction `E ×_G EG` of a principal bundle.
//!
//! With `EG = BG ×_τ G` and `τ([g]) = g⁻¹`, every orbit of the diagonal
//! action on `E × EG` has a unique representative whose `G`-coordinate is
//! the identity. On these representatives `(e, [g1|...|gn])`,
//! `d₀(e, b) = (d₀e·g1, d₀b)` and the other operators act componentwise.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::simplicial::{realize, Formal, SMap, SSet, SimplicialModel};

use super::bar::{bar_degeneracy, bar_face, bar_label, tuples};
use super::twisted::PrincipalBundle;

struct BorelModel<'a> {
    bundle: &'a PrincipalBundle,
}

impl SimplicialModel for BorelModel<'_> {
    type Simplex = (Formal, Vec<u32>);

    fn simplices(&self, n: usize) -> Vec<(Formal, Vec<u32>)> {
        let bar = tuples(self.bundle.group.order(), n);
        let mut out = Vec::new();
        for e in self.bundle.total().all_simplices(n) {
            for b in &bar {
                out.push((e.clone(), b.clone()));
            }
        }
        out
    }

    fn face(&self, n: usize, i: usize, (e, b): &(Formal, Vec<u32>)) -> (Formal, Vec<u32>) {
        let de = self.bundle.total().face_formal(e, i);
        let de = if i == 0 {
            self.bundle.act(&de, b[0] as usize)
        } else {
            de
        };
        (de, bar_face(&self.bundle.group, n, i, b))
    }

    fn degeneracy(&self, _n: usize, j: usize, (e, b): &(Formal, Vec<u32>)) -> (Formal, Vec<u32>) {
        (e.degenerate(j), bar_degeneracy(j, b))
    }

    fn label(&self, _n: usize, (e, b): &(Formal, Vec<u32>)) -> String {
        format!(
            "({},{})",
            self.bundle.total().formal_string(e),
            bar_label(b)
        )
    }
}

#[derive(Clone, Debug)]
pub struct Borel {
    pub space: Arc<SSet>,
    /// The canonical map `E ×_G EG → X`.
    pub to_base: SMap,
}

pub fn borel_construction(bundle: &PrincipalBundle, dim_cap: usize) -> Result<Borel> {
    if dim_cap > bundle.total().dim_cap() {
        return Err(Error::DimCapTooSmall {
            dim_cap: bundle.total().dim_cap(),
            required: dim_cap,
        });
    }
    let model = BorelModel { bundle };
    let r = realize(&model, dim_cap)?;
    let space = Arc::new(r.sset);
    let mut images: Vec<Vec<Option<Formal>>> =
        (0..=dim_cap).map(|n| vec![None; space.count(n)]).collect();
    for (n, level) in r.normal.iter().enumerate() {
        for ((e, _), nf) in level {
            if let Some(c) = nf.as_cell() {
                images[n][c.idx] = Some(bundle.projection().apply(e));
            }
        }
    }
    let images = images
        .into_iter()
        .map(|l| {
            l.into_iter()
                .map(|f| f.expect("every cell is realized"))
                .collect()
        })
        .collect();
    let base = Arc::new(bundle.base().with_dim_cap(dim_cap));
    let to_base = SMap::new(space.clone(), base, images)?;
    Ok(Borel { space, to_base })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::finab::FinAb;
    use crate::algebra::group::FiniteGroup;
    use crate::cohomology::chains::cohomology;
    use crate::cohomology::nonabelian::TwistingCocycle;
    use crate::simplicial::standard::delta;

    #[test]
    fn free_orbit_gives_eg() {
        let pt = Arc::new(delta(0, 4).unwrap());
        let tau = TwistingCocycle::trivial(pt, FiniteGroup::cyclic(2));
        let b = PrincipalBundle::new(&tau).unwrap();
        let borel = borel_construction(&b, 4).unwrap();
        for n in 1..3 {
            assert!(cohomology(&borel.space, &FinAb::cyclic(2), n)
                .unwrap()
                .is_zero());
        }
    }

    #[test]
    fn trivial_group_gives_total_space() {
        let x = Arc::new(delta(2, 2).unwrap());
        let tau = TwistingCocycle::trivial(x, FiniteGroup::trivial());
        let b = PrincipalBundle::new(&tau).unwrap();
        let borel = borel_construction(&b, 2).unwrap();
        assert!(borel.to_base.is_isomorphism());
    }
}
