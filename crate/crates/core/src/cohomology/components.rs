//! Connected components: `π₀` as the coequalizer of `d₀, d₁: X₁ → X₀`.

use std::sync::Arc;

use crate::error::Result;
use crate::simplicial::{Cell, Formal, SMap, SSet};
use crate::towers::SpaceTower;

/// The components of a simplicial set, numbered by their least vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    pub of_vertex: Vec<usize>,
    /// Least vertex of each component.
    pub representatives: Vec<usize>,
}

impl Components {
    pub fn count(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_connected(&self) -> bool {
        self.count() == 1
    }
}

fn find(parent: &mut [usize], mut a: usize) -> usize {
    while parent[a] != a {
        parent[a] = parent[parent[a]];
        a = parent[a];
    }
    a
}

pub fn pi0(x: &SSet) -> Components {
    let n = x.count(0);
    let mut parent: Vec<usize> = (0..n).collect();
    if x.dim_cap() >= 1 {
        for e in x.cells(1) {
            let v = x.vertices(e);
            let (a, b) = (find(&mut parent, v[0]), find(&mut parent, v[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|v| find(&mut parent, v)).collect();
    let mut representatives: Vec<usize> = roots.clone();
    representatives.sort_unstable();
    representatives.dedup();
    let of_vertex = roots
        .iter()
        .map(|r| representatives.binary_search(r).expect("root is listed"))
        .collect();
    Components {
        of_vertex,
        representatives,
    }
}

/// `π₀(f)` as a map of component indices.
pub fn pi0_map(f: &SMap) -> (Components, Components, Vec<usize>) {
    let a = pi0(f.source());
    let b = pi0(f.target());
    let vm = f.vertex_map();
    let map = a
        .representatives
        .iter()
        .map(|&v| b.of_vertex[vm[v]])
        .collect();
    (a, b, map)
}

/// Levelwise `π₀` of a tower with the induced transitions.
pub fn pi0_tower(t: &SpaceTower) -> (Vec<Components>, Vec<Vec<usize>>) {
    let comps: Vec<Components> = t.levels.iter().map(|l| pi0(l)).collect();
    let maps = t.transitions.iter().map(|f| pi0_map(f).2).collect();
    (comps, maps)
}

/// The `k`-th component as a simplicial set, with its inclusion.
pub fn component(x: &Arc<SSet>, comps: &Components, k: usize) -> Result<(Arc<SSet>, SMap)> {
    let d = x.dim_cap();
    let mut new_index: Vec<Vec<Option<usize>>> = Vec::with_capacity(d + 1);
    let mut ids = Vec::with_capacity(d + 1);
    let mut kept: Vec<Vec<Cell>> = Vec::with_capacity(d + 1);
    for n in 0..=d {
        let mut idx = vec![None; x.count(n)];
        let mut level_ids = Vec::new();
        let mut level = Vec::new();
        for c in x.cells(n) {
            if comps.of_vertex[x.vertices(c)[0]] == k {
                idx[c.idx] = Some(level.len());
                level_ids.push(x.id(c).to_string());
                level.push(c);
            }
        }
        new_index.push(idx);
        ids.push(level_ids);
        kept.push(level);
    }
    let remap = |f: &Formal| Formal {
        surj: f.surj.clone(),
        base: Cell::new(
            f.base.dim,
            new_index[f.base.dim][f.base.idx].expect("face in component"),
        ),
    };
    let faces = kept
        .iter()
        .map(|level| {
            level
                .iter()
                .map(|&c| x.faces_of(c).iter().map(remap).collect())
                .collect()
        })
        .collect();
    let sub = Arc::new(SSet::from_parts(d, ids, faces)?);
    let images = kept
        .iter()
        .map(|level| level.iter().map(|&c| Formal::nondegenerate(c)).collect())
        .collect();
    let inc = SMap::new(sub.clone(), x.clone(), images)?;
    Ok((sub, inc))
}
