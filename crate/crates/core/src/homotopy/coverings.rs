//! Connected finite coverings from subgroups of small index.
//!
//! A subgroup `H ≤ π₁(X, x)` of index `d` gives the right action of `π₁` on
//! the cosets `H\π₁`; the covering is the twisted product whose monodromy on
//! an edge with holonomy `w` is `c ↦ c·w⁻¹`.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::algebra::lowindex::{low_index_subgroups, CosetTable};
use crate::algebra::presentation::invert;
use crate::classifying::twisted::{covering_from_permutations, Covering};
use crate::error::{Error, Result};
use crate::simplicial::SSet;

use super::fundamental::{edge_path_presentation, EdgePath};

#[derive(Clone, Debug)]
pub struct ConnectedCovering {
    /// Coset table of the subgroup, in the simplified edge-path presentation.
    pub subgroup: CosetTable,
    pub covering: Covering,
}

impl ConnectedCovering {
    pub fn degree(&self) -> usize {
        self.covering.fiber
    }
}

/// Monodromy of every nondegenerate edge for the coset action of `t`.
pub fn coset_monodromy(x: &SSet, ep: &EdgePath, t: &CosetTable) -> Vec<Vec<u32>> {
    let d = t.index();
    let ne = if x.dim_cap() >= 1 { x.count(1) } else { 0 };
    let identity: Vec<u32> = (0..d as u32).collect();
    let mut perms = vec![identity; ne];
    for (k, &e) in ep.generator_edges.iter().enumerate() {
        let w = invert(&ep.simplified.substitution[k]);
        perms[e] = (0..d).map(|c| t.act_word(c, &w) as u32).collect();
    }
    perms
}

/// One connected covering per conjugacy class of subgroups of index at most
/// `max_degree`, by degree. Each is checked for unique lifting and
/// connectedness.
pub fn enumerate_coverings(x: &Arc<SSet>, max_degree: usize) -> Result<Vec<ConnectedCovering>> {
    let ep = edge_path_presentation(x, 0)?;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for t in low_index_subgroups(&ep.simplified.presentation, max_degree) {
        if !seen.insert(t.conjugacy_canonical()) {
            continue;
        }
        let perms = coset_monodromy(x, &ep, &t);
        let covering = covering_from_permutations(x, perms, t.index())?;
        covering.verify_unique_lifting()?;
        if !covering.is_connected() {
            return Err(Error::Mismatch(format!(
                "covering of degree {} is not connected",
                t.index()
            )));
        }
        out.push(ConnectedCovering {
            subgroup: t,
            covering,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{circle, rp2};

    #[test]
    fn circle_has_one_cover_per_degree() {
        let c = enumerate_coverings(&circle(2).unwrap(), 3).unwrap();
        let degrees: Vec<usize> = c.iter().map(ConnectedCovering::degree).collect();
        assert_eq!(degrees, vec![1, 2, 3]);
        let e = &c[2].covering.total;
        assert_eq!((e.count(0), e.count(1)), (3, 3));
    }

    #[test]
    fn rp2_double_cover_is_a_sphere() {
        let c = enumerate_coverings(&rp2(3).unwrap(), 2).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c[1].covering.total.euler_characteristic(), 2);
    }
}
