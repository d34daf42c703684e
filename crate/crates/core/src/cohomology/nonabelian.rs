//! Twisting cocycles and nonabelian `H¹(X; G)`.
//!
//! A cocycle assigns a group element to every nondegenerate edge, with
//! degenerate edges carrying the identity, such that
//! `τ(d₀σ)·τ(d₂σ) = τ(d₁σ)` on every 2-simplex. Two cocycles are equivalent
//! when they differ by a gauge `g: X₀ → G`,
//! `τ′(e) = g(d₀e)·τ(e)·g(d₁e)⁻¹`.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use crate::algebra::group::FiniteGroup;
use crate::algebra::presentation::{conjugacy_rep, Presentation};
use crate::error::{Error, Result};
use crate::homotopy::fundamental::{edge_path_presentation, EdgePath};
use crate::simplicial::{Formal, SMap, SSet};

#[derive(Clone, Debug)]
pub struct TwistingCocycle {
    base: Arc<SSet>,
    group: FiniteGroup,
    values: Vec<usize>,
}

impl PartialEq for TwistingCocycle {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values && self.group == other.group && *self.base == *other.base
    }
}

fn edge_count(x: &SSet) -> usize {
    if x.dim_cap() >= 1 {
        x.count(1)
    } else {
        0
    }
}

impl TwistingCocycle {
    /// Validates the values and the cocycle identity on every 2-simplex.
    pub fn new(base: Arc<SSet>, group: FiniteGroup, values: Vec<usize>) -> Result<TwistingCocycle> {
        if values.len() != edge_count(&base) {
            return Err(Error::InvalidCocycle(format!(
                "{} values for {} edges",
                values.len(),
                edge_count(&base)
            )));
        }
        if let Some(&v) = values.iter().find(|&&v| v >= group.order()) {
            return Err(Error::InvalidCocycle(format!(
                "value {v} is not a group element"
            )));
        }
        let tau = TwistingCocycle {
            base,
            group,
            values,
        };
        if tau.base.dim_cap() >= 2 {
            for s in tau.base.cells(2) {
                let f = tau.base.faces_of(s);
                let lhs = tau.group.mul(tau.value(&f[0]), tau.value(&f[2]));
                if lhs != tau.value(&f[1]) {
                    return Err(Error::InvalidCocycle(format!(
                        "cocycle identity fails on `{}`",
                        tau.base.id(s)
                    )));
                }
            }
        }
        Ok(tau)
    }

    pub fn trivial(base: Arc<SSet>, group: FiniteGroup) -> TwistingCocycle {
        let n = edge_count(&base);
        TwistingCocycle {
            base,
            group,
            values: vec![0; n],
        }
    }

    pub fn base(&self) -> &Arc<SSet> {
        &self.base
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Value on any 1-simplex; degenerate edges carry the identity.
    pub fn value(&self, e: &Formal) -> usize {
        debug_assert_eq!(e.dim(), 1);
        match e.as_cell() {
            Some(c) => self.values[c.idx],
            None => 0,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// `τ′(e) = g(d₀e)·τ(e)·g(d₁e)⁻¹`.
    pub fn gauge(&self, g: &[usize]) -> TwistingCocycle {
        let values = gauge_values(&self.base, &self.group, &self.values, g);
        TwistingCocycle {
            base: self.base.clone(),
            group: self.group.clone(),
            values,
        }
    }

    /// `τ ∘ f` for `f: X → base`.
    pub fn pullback(&self, f: &SMap) -> Result<TwistingCocycle> {
        let x = f.source();
        let values = if x.dim_cap() >= 1 {
            x.cells(1).map(|e| self.value(f.image(e))).collect()
        } else {
            Vec::new()
        };
        TwistingCocycle::new(x.clone(), self.group.clone(), values)
    }

    /// The same cocycle composed with a homomorphism `G → H`.
    pub fn push(&self, h: &FiniteGroup, map: &[usize]) -> Result<TwistingCocycle> {
        TwistingCocycle::new(
            self.base.clone(),
            h.clone(),
            self.values.iter().map(|&v| map[v]).collect(),
        )
    }
}

fn gauge_values(x: &SSet, g: &FiniteGroup, values: &[usize], gauge: &[usize]) -> Vec<usize> {
    if x.dim_cap() == 0 {
        return Vec::new();
    }
    x.cells(1)
        .map(|e| {
            let v = x.vertices(e);
            g.mul(g.mul(gauge[v[1]], values[e.idx]), g.inv(gauge[v[0]]))
        })
        .collect()
}

/// Generators are all nondegenerate edges; each 2-simplex `σ` gives the
/// relator `d₀σ·d₂σ·(d₁σ)⁻¹` with degenerate faces omitted. Homomorphisms
/// out of this presentation are exactly the cocycles.
pub fn cocycle_presentation(x: &SSet) -> Presentation {
    let n = edge_count(x);
    let mut relators = Vec::new();
    if x.dim_cap() >= 2 {
        for s in x.cells(2) {
            let f = x.faces_of(s);
            let mut w = Vec::new();
            for (face, sign) in [(&f[0], 1), (&f[2], 1), (&f[1], -1)] {
                if let Some(c) = face.as_cell() {
                    w.push(sign * (c.idx as i32 + 1));
                }
            }
            relators.push(w);
        }
    }
    Presentation::new(n, relators).expect("letters in range")
}

/// All cocycles, in lexicographic order; fails beyond `limit` of them.
pub fn enumerate_cocycles(x: &SSet, g: &FiniteGroup, limit: usize) -> Result<Vec<Vec<usize>>> {
    let p = cocycle_presentation(x);
    let mut out = Vec::new();
    let mut exceeded = false;
    p.for_each_homomorphism(g, |h| {
        if out.len() >= limit {
            exceeded = true;
            return false;
        }
        out.push(h.to_vec());
        true
    });
    if exceeded {
        return Err(Error::BoundExceeded(format!("more than {limit} cocycles")));
    }
    out.sort();
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum H1Algorithm {
    /// Orbits of the gauge action on all cocycles.
    GaugeClasses,
    /// `Hom(π₁(X, x), G)` modulo conjugation, via the edge-path group.
    Homomorphisms,
}

/// The pointed set `H¹(X; G)`, one cocycle per class; the trivial class is
/// first.
#[derive(Clone, Debug)]
pub struct NonabelianH1 {
    pub algorithm: H1Algorithm,
    pub classes: Vec<TwistingCocycle>,
    /// Orbit sizes (gauge algorithm only).
    pub orbit_sizes: Vec<usize>,
    pub cocycle_count: Option<usize>,
}

impl NonabelianH1 {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// Gauge classes of cocycles by exhaustive enumeration.
pub fn h1_gauge_classes(x: &Arc<SSet>, g: &FiniteGroup, limit: usize) -> Result<NonabelianH1> {
    let cocycles = enumerate_cocycles(x, g, limit)?;
    let gens = g.generators();
    let nv = x.count(0);
    let mut seen: HashSet<Vec<usize>> = HashSet::with_capacity(cocycles.len());
    let mut classes = Vec::new();
    let mut orbit_sizes = Vec::new();
    for c in &cocycles {
        if seen.contains(c) {
            continue;
        }
        seen.insert(c.clone());
        let mut size = 1;
        let mut queue = VecDeque::from([c.clone()]);
        while let Some(t) = queue.pop_front() {
            for v in 0..nv {
                for &h in &gens {
                    let mut gauge = vec![0; nv];
                    gauge[v] = h;
                    let t2 = gauge_values(x, g, &t, &gauge);
                    if seen.insert(t2.clone()) {
                        size += 1;
                        queue.push_back(t2);
                    }
                }
            }
        }
        classes.push(TwistingCocycle {
            base: x.clone(),
            group: g.clone(),
            values: c.clone(),
        });
        orbit_sizes.push(size);
    }
    Ok(NonabelianH1 {
        algorithm: H1Algorithm::GaugeClasses,
        classes,
        orbit_sizes,
        cocycle_count: Some(cocycles.len()),
    })
}

/// The cocycle that is trivial on the spanning tree and takes the given
/// values on the generator edges of the edge-path presentation.
pub fn cocycle_of_hom(
    x: &Arc<SSet>,
    ep: &EdgePath,
    g: &FiniteGroup,
    images: &[usize],
) -> Result<TwistingCocycle> {
    let mut values = vec![0; edge_count(x)];
    for (k, &e) in ep.generator_edges.iter().enumerate() {
        values[e] = images[k];
    }
    TwistingCocycle::new(x.clone(), g.clone(), values)
}

/// Gauge-normalizes a cocycle to be trivial on the spanning tree and reads
/// off the homomorphism on the edge-path generators.
pub fn hom_of_cocycle(ep: &EdgePath, tau: &TwistingCocycle) -> Vec<usize> {
    let x = tau.base();
    let g = tau.group();
    let nv = x.count(0);
    let mut gauge = vec![0; nv];
    for &w in &ep.bfs_order {
        if let Some(e) = ep.tree_parent[w] {
            let v = x.vertices(crate::simplicial::Cell::new(1, e));
            let t = tau.values()[e];
            // make g(d₀e)·τ(e)·g(d₁e)⁻¹ trivial
            if v[1] == w {
                gauge[w] = g.mul(gauge[v[0]], g.inv(t));
            } else {
                gauge[w] = g.mul(gauge[v[1]], t);
            }
        }
    }
    let normal = tau.gauge(&gauge);
    ep.generator_edges
        .iter()
        .map(|&e| normal.values()[e])
        .collect()
}

/// A canonical label for the class of a cocycle on a connected space: the
/// least conjugate of its holonomy on the edge-path generators.
pub fn class_key(ep: &EdgePath, tau: &TwistingCocycle) -> Vec<usize> {
    conjugacy_rep(tau.group(), &hom_of_cocycle(ep, tau))
}

/// `Hom(π₁(X, x), G)/G` realized as cocycles.
pub fn h1_homomorphism_classes(
    x: &Arc<SSet>,
    g: &FiniteGroup,
    basepoint: usize,
) -> Result<NonabelianH1> {
    let ep = edge_path_presentation(x, basepoint)?;
    let simplified = &ep.simplified;
    let homs = simplified.presentation.homomorphisms_mod_conjugacy(g);
    let mut keyed: Vec<(Vec<usize>, TwistingCocycle)> = Vec::new();
    for h in homs {
        let full = simplified.pull_images(g, &h);
        let tau = cocycle_of_hom(x, &ep, g, &full)?;
        keyed.push((conjugacy_rep(g, &full), tau));
    }
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    let classes = order_trivial_first(keyed.into_iter().map(|(_, t)| t).collect());
    Ok(NonabelianH1 {
        algorithm: H1Algorithm::Homomorphisms,
        classes,
        orbit_sizes: Vec::new(),
        cocycle_count: None,
    })
}

fn order_trivial_first(mut v: Vec<TwistingCocycle>) -> Vec<TwistingCocycle> {
    if let Some(i) = v.iter().position(TwistingCocycle::is_trivial) {
        let t = v.remove(i);
        v.insert(0, t);
    }
    v
}

/// Default cocycle-enumeration bound for [`h1_nonabelian`].
pub const DEFAULT_COCYCLE_LIMIT: usize = 2_000_000;

/// `H¹(X; G)` by the requested algorithm.
pub fn h1_nonabelian(
    x: &Arc<SSet>,
    g: &FiniteGroup,
    algorithm: H1Algorithm,
) -> Result<NonabelianH1> {
    match algorithm {
        H1Algorithm::GaugeClasses => h1_gauge_classes(x, g, DEFAULT_COCYCLE_LIMIT),
        H1Algorithm::Homomorphisms => h1_homomorphism_classes(x, g, 0),
    }
}
