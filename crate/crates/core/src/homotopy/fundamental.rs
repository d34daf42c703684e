//! Edge-path presentations of fundamental groups and their finite
//! quotient systems.

use std::collections::VecDeque;

use crate::algebra::lowindex::enumerate_finite_quotients;
use crate::algebra::presentation::{free_reduce, Presentation, Simplified};
use crate::cohomology::components::pi0;
use crate::error::{Error, Result};
use crate::simplicial::SSet;
use crate::towers::{ProfiniteGroupApprox, SpaceTower};

/// The edge-path group of a connected simplicial set at a basepoint.
///
/// The spanning tree is grown breadth-first from the basepoint, scanning
/// edges in listing order. Generators are the nondegenerate edges off the
/// tree; every nondegenerate 2-simplex `σ` gives the relator
/// `d₀σ·d₂σ·(d₁σ)⁻¹` in which tree edges and degenerate edges are trivial.
#[derive(Clone, Debug)]
pub struct EdgePath {
    pub basepoint: usize,
    pub presentation: Presentation,
    /// Edge index of each generator.
    pub generator_edges: Vec<usize>,
    pub edge_generator: Vec<Option<usize>>,
    /// For each vertex, the tree edge towards the basepoint.
    pub tree_parent: Vec<Option<usize>>,
    /// Vertices in the order the tree reached them.
    pub bfs_order: Vec<usize>,
    pub simplified: Simplified,
}

impl EdgePath {
    pub fn is_tree_edge(&self, e: usize) -> bool {
        self.edge_generator[e].is_none()
    }
}

pub fn edge_path_presentation(x: &SSet, basepoint: usize) -> Result<EdgePath> {
    let nv = x.count(0);
    if basepoint >= nv {
        return Err(Error::InvalidMap(format!(
            "basepoint {basepoint} is not a vertex"
        )));
    }
    let comps = pi0(x);
    if !comps.is_connected() {
        return Err(Error::Disconnected {
            components: comps.count(),
        });
    }
    let ne = if x.dim_cap() >= 1 { x.count(1) } else { 0 };
    let mut adjacent: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
    for e in 0..ne {
        let v = x.vertices(crate::simplicial::Cell::new(1, e));
        if v[0] != v[1] {
            adjacent[v[0]].push((e, v[1]));
            adjacent[v[1]].push((e, v[0]));
        }
    }
    for a in adjacent.iter_mut() {
        a.sort_unstable();
    }
    let mut tree_parent = vec![None; nv];
    let mut reached = vec![false; nv];
    let mut is_tree = vec![false; ne];
    let mut bfs_order = vec![basepoint];
    reached[basepoint] = true;
    let mut queue = VecDeque::from([basepoint]);
    while let Some(v) = queue.pop_front() {
        for &(e, w) in &adjacent[v] {
            if !reached[w] {
                reached[w] = true;
                is_tree[e] = true;
                tree_parent[w] = Some(e);
                bfs_order.push(w);
                queue.push_back(w);
            }
        }
    }
    let mut edge_generator = vec![None; ne];
    let mut generator_edges = Vec::new();
    for e in 0..ne {
        if !is_tree[e] {
            edge_generator[e] = Some(generator_edges.len());
            generator_edges.push(e);
        }
    }
    let mut relators = Vec::new();
    if x.dim_cap() >= 2 {
        for s in x.cells(2) {
            let f = x.faces_of(s);
            let mut w = Vec::new();
            for (face, sign) in [(&f[0], 1), (&f[2], 1), (&f[1], -1)] {
                if let Some(c) = face.as_cell() {
                    if let Some(g) = edge_generator[c.idx] {
                        w.push(sign * (g as i32 + 1));
                    }
                }
            }
            let w = free_reduce(&w);
            if !w.is_empty() {
                relators.push(w);
            }
        }
    }
    let presentation = Presentation::new(generator_edges.len(), relators)?;
    let simplified = presentation.simplify();
    Ok(EdgePath {
        basepoint,
        presentation,
        generator_edges,
        edge_generator,
        tree_parent,
        bfs_order,
        simplified,
    })
}

/// The finite quotients of `π₁(X, x)` up to order `n`, computed on the
/// simplified edge-path presentation.
pub fn pi1_profinite(x: &SSet, basepoint: usize, n: usize) -> Result<ProfiniteGroupApprox> {
    let ep = edge_path_presentation(x, basepoint)?;
    let p = ep.simplified.presentation.clone();
    let classes = enumerate_finite_quotients(&p, n)?;
    Ok(ProfiniteGroupApprox::new(p, n, classes))
}

/// Quotient systems of every level of a tower. The profinite fundamental
/// group of the limit is the limit of these; at finite depth the deepest
/// level carries the finest information.
pub fn pi1_profinite_tower(
    t: &SpaceTower,
    basepoint: usize,
    n: usize,
) -> Result<Vec<ProfiniteGroupApprox>> {
    t.levels
        .iter()
        .map(|l| pi1_profinite(l, basepoint, n))
        .collect()
}
