//! Classification of principal bundles by `H¹(X; G)`.
//!
//! Every `G`-equivariant map of twisted products over `X` has the form
//! `(x, s) ↦ (x, g(x₀)·s)` for a function `g` on vertices, and it exists
//! exactly when `τ′ = g·τ` as a gauge transformation. The search assigns `g`
//! vertex by vertex along edges and prunes on every edge whose endpoints are
//! both assigned; any candidate found is checked as a simplicial isomorphism.

use std::sync::Arc;

use crate::algebra::group::FiniteGroup;
use crate::cohomology::components::pi0;
use crate::cohomology::nonabelian::{h1_nonabelian, H1Algorithm, NonabelianH1};
use crate::error::{Error, Result};
use crate::simplicial::{Formal, SMap, SSet};

use super::twisted::PrincipalBundle;

/// Searches for a gauge `g` with `gauge(τ, g) = τ′`.
pub fn find_gauge(a: &PrincipalBundle, b: &PrincipalBundle) -> Option<Vec<usize>> {
    let x = a.base();
    let g = &a.group;
    let (ta, tb) = (a.cocycle.values(), b.cocycle.values());
    let order = propagation_order(x);
    let mut position = vec![0; order.len()];
    for (k, &v) in order.iter().enumerate() {
        position[v] = k;
    }
    // Edges grouped by the later of their endpoints in the search order.
    let mut closing: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); order.len()];
    if x.dim_cap() >= 1 {
        for e in x.cells(1) {
            let v = x.vertices(e);
            let k = position[v[0]].max(position[v[1]]);
            closing[k].push((v[0], v[1], e.idx));
        }
    }
    let mut assign = vec![0usize; order.len()];
    let mut next = vec![0usize; order.len()];
    let mut k = 0;
    while k < order.len() {
        let mut found = false;
        while next[k] < g.order() {
            assign[order[k]] = next[k];
            next[k] += 1;
            let ok = closing[k]
                .iter()
                .all(|&(v0, v1, e)| g.mul(g.mul(assign[v1], ta[e]), g.inv(assign[v0])) == tb[e]);
            if ok {
                found = true;
                break;
            }
        }
        if found {
            k += 1;
        } else {
            next[k] = 0;
            if k == 0 {
                return None;
            }
            k -= 1;
        }
    }
    Some(assign)
}

/// Vertices in breadth-first order per component, so each new vertex is
/// constrained by an edge to an earlier one.
fn propagation_order(x: &SSet) -> Vec<usize> {
    let nv = x.count(0);
    let mut adj = vec![Vec::new(); nv];
    if x.dim_cap() >= 1 {
        for e in x.cells(1) {
            let v = x.vertices(e);
            adj[v[0]].push(v[1]);
            adj[v[1]].push(v[0]);
        }
    }
    let mut seen = vec![false; nv];
    let mut out = Vec::with_capacity(nv);
    for root in 0..nv {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            out.push(v);
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    out
}

/// The equivariant map `(x, s) ↦ (x, g(x₀)·s)` between the total spaces.
pub fn bundle_map(a: &PrincipalBundle, b: &PrincipalBundle, gauge: &[usize]) -> Result<SMap> {
    let e = a.total();
    let images = (0..=e.dim_cap())
        .map(|n| {
            e.cells(n)
                .map(|c| {
                    let (base, s) = a.covering.split(c);
                    let v0 = a.base().vertices(base)[0];
                    let t = a.group.mul(gauge[v0], s);
                    Formal::nondegenerate(b.covering.cell_over(base, t))
                })
                .collect()
        })
        .collect();
    SMap::new(e.clone(), b.total().clone(), images)
}

/// An explicit isomorphism of principal bundles over the same base, if any.
pub fn bundle_isomorphism(a: &PrincipalBundle, b: &PrincipalBundle) -> Result<Option<SMap>> {
    if a.base() != b.base() || a.group != b.group {
        return Err(Error::Mismatch(
            "bundles over different bases or groups".into(),
        ));
    }
    let Some(gauge) = find_gauge(a, b) else {
        return Ok(None);
    };
    let f = bundle_map(a, b, &gauge)?;
    verify_bundle_isomorphism(a, b, &f)?;
    Ok(Some(f))
}

/// Checks that `f` is a simplicial isomorphism over the base commuting with
/// the action.
pub fn verify_bundle_isomorphism(a: &PrincipalBundle, b: &PrincipalBundle, f: &SMap) -> Result<()> {
    if !f.is_isomorphism() {
        return Err(Error::Mismatch("bundle map is not an isomorphism".into()));
    }
    let e = a.total();
    for n in 0..=e.dim_cap() {
        for c in e.cells(n) {
            let fc = f.image(c);
            if b.projection().apply(fc) != *a.projection().image(c) {
                return Err(Error::Mismatch(format!(
                    "`{}` is not mapped over the base",
                    e.id(c)
                )));
            }
            for h in 0..a.group.order() {
                let lhs = f.image(a.act_cell(c, h));
                if *lhs != b.act(fc, h) {
                    return Err(Error::Mismatch(format!(
                        "map is not equivariant at `{}`",
                        e.id(c)
                    )));
                }
            }
        }
    }
    Ok(())
}

/// `θ: H¹(X; G) → {principal G-bundles over X}/≅`, with its bijectivity
/// checked: classes give pairwise non-isomorphic bundles, and every cocycle
/// lies in the orbit of exactly one class.
#[derive(Clone, Debug)]
pub struct BundleClassification {
    pub h1: NonabelianH1,
    pub bundles: Vec<PrincipalBundle>,
}

impl BundleClassification {
    pub fn len(&self) -> usize {
        self.bundles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bundles.is_empty()
    }
}

pub fn classify_bundles(x: &Arc<SSet>, g: &FiniteGroup) -> Result<BundleClassification> {
    let comps = pi0(x);
    if !comps.is_connected() {
        return Err(Error::Disconnected {
            components: comps.count(),
        });
    }
    let h1 = h1_nonabelian(x, g, H1Algorithm::GaugeClasses)?;
    if Some(h1.orbit_sizes.iter().sum::<usize>()) != h1.cocycle_count {
        return Err(Error::Mismatch(
            "gauge orbits do not exhaust the cocycles".into(),
        ));
    }
    let bundles = h1
        .classes
        .iter()
        .map(PrincipalBundle::new)
        .collect::<Result<Vec<_>>>()?;
    for i in 0..bundles.len() {
        for j in i + 1..bundles.len() {
            if bundle_isomorphism(&bundles[i], &bundles[j])?.is_some() {
                return Err(Error::Mismatch(format!(
                    "classes {i} and {j} give isomorphic bundles"
                )));
            }
        }
    }
    Ok(BundleClassification { h1, bundles })
}
