//! `π₂` through Hurewicz on regular covers.
//!
//! For a chain of finite quotients `1 = Q₀ ← Q₁ ← ...` of `π₁`, each taken
//! as the least-order quotient refining the previous one, the tower
//! `k ↦ H₂(X ×_τ Q_k; Z/m)` has transitions induced by the cover maps. When
//! `X` is simply connected this is `π₂(X̂) ⊗ Z/m`; otherwise it is only an
//! approximation and is flagged as such.

use std::sync::Arc;

use crate::algebra::lowindex::{enumerate_finite_quotients, EpiClass};
use crate::classifying::twisted::{twisted_product, Covering, GSet};
use crate::cohomology::explicit::{homology_explicit, homology_pushforward};
use crate::cohomology::nonabelian::cocycle_of_hom;
use crate::error::{Error, Result};
use crate::simplicial::{Formal, SMap, SSet};
use crate::towers::AbTower;

use super::fundamental::edge_path_presentation;

#[derive(Clone, Debug)]
pub struct Pi2Tower {
    /// Orders of the quotients in the chain.
    pub chain: Vec<usize>,
    pub towers: Vec<(u64, AbTower)>,
    /// The tower equals `π₂ ⊗ Z/m` only when `π₁` has no nontrivial
    /// quotient within the bound.
    pub hurewicz_exact: bool,
}

/// The homomorphism `φ: Q' → Q` with `φ(a'ᵢ) = aᵢ` on generator images.
pub fn factor_through(fine: &EpiClass, coarse: &EpiClass) -> Option<Vec<usize>> {
    let (qf, qc) = (&fine.target, &coarse.target);
    let mut phi = vec![usize::MAX; qf.order()];
    phi[0] = 0;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(a) = queue.pop_front() {
        for (i, &g) in fine.images.iter().enumerate() {
            let b = qf.mul(a, g);
            let v = qc.mul(phi[a], coarse.images[i]);
            if phi[b] == usize::MAX {
                phi[b] = v;
                queue.push_back(b);
            } else if phi[b] != v {
                return None;
            }
        }
    }
    (!phi.contains(&usize::MAX)).then_some(phi)
}

/// The greedy refinement chain through the quotients of order `≤ n`.
pub fn quotient_chain(classes: &[EpiClass]) -> Vec<usize> {
    let mut chain = vec![0];
    for (k, c) in classes.iter().enumerate().skip(1) {
        let last = &classes[*chain.last().expect("nonempty")];
        if c.index() > last.index() && c.refines(last) {
            chain.push(k);
        }
    }
    chain
}

fn cover_map(fine: &Covering, coarse: &Covering, phi: &[usize]) -> Result<SMap> {
    let e = &fine.total;
    let images = (0..=e.dim_cap())
        .map(|n| {
            e.cells(n)
                .map(|c| {
                    let (b, s) = fine.split(c);
                    Formal::nondegenerate(coarse.cell_over(b, phi[s]))
                })
                .collect()
        })
        .collect();
    SMap::new(e.clone(), coarse.total.clone(), images)
}

pub fn pi2_tower(x: &Arc<SSet>, n: usize, moduli: &[u64]) -> Result<Pi2Tower> {
    if moduli.contains(&0) {
        return Err(Error::Unsupported("moduli must be positive".into()));
    }
    let ep = edge_path_presentation(x, 0)?;
    let classes = enumerate_finite_quotients(&ep.simplified.presentation, n.max(1))?;
    let chain = quotient_chain(&classes);
    let covers = chain
        .iter()
        .map(|&k| {
            let c = &classes[k];
            let full = ep.simplified.pull_images(&c.target, &c.images);
            let tau = cocycle_of_hom(x, &ep, &c.target, &full)?;
            twisted_product(&tau, &GSet::regular(&c.target))
        })
        .collect::<Result<Vec<_>>>()?;
    let maps = chain
        .windows(2)
        .enumerate()
        .map(|(k, w)| {
            let phi = factor_through(&classes[w[1]], &classes[w[0]])
                .ok_or_else(|| Error::Mismatch("quotient chain does not factor".into()))?;
            cover_map(&covers[k + 1], &covers[k], &phi)
        })
        .collect::<Result<Vec<_>>>()?;
    let towers = moduli
        .iter()
        .map(|&m| {
            let levels = covers
                .iter()
                .map(|c| Ok(homology_explicit(&c.total, m, 2)?.group()))
                .collect::<Result<Vec<_>>>()?;
            let transitions = maps
                .iter()
                .map(|f| homology_pushforward(f, m, 2))
                .collect::<Result<Vec<_>>>()?;
            Ok((m, AbTower::new(levels, transitions)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Pi2Tower {
        chain: chain.iter().map(|&k| classes[k].index()).collect(),
        towers,
        hurewicz_exact: classes.len() == 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::finab::FinAb;
    use crate::corpus::circle;
    use crate::simplicial::standard::sphere;

    #[test]
    fn sphere_is_constant() {
        let s2 = Arc::new(sphere(2, 4).unwrap());
        let t = pi2_tower(&s2, 6, &[5]).unwrap();
        assert!(t.hurewicz_exact);
        assert_eq!(t.towers[0].1.structures(), vec![FinAb::cyclic(5)]);
    }

    #[test]
    fn circle_covers_have_no_h2() {
        let t = pi2_tower(&circle(3).unwrap(), 6, &[2, 3]).unwrap();
        assert_eq!(t.chain, vec![1, 2, 4]);
        for (_, tower) in &t.towers {
            assert!(tower.structures().iter().all(FinAb::is_zero));
        }
    }
}
