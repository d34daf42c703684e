//! A bounded weak-equivalence checker.
//!
//! A map is a weak equivalence when it is bijective on `π₀` and induces
//! isomorphisms on `H¹(·; G)` for finite `G` and on cohomology with every
//! finite local coefficient system. Only finitely many of these can be
//! tried, so the checker runs the probes below up to explicit bounds, in a
//! fixed order, and reports the first failure:
//!
//! 1. `π₀(f)` is a bijection;
//! 2. per component, `f*: H¹(Y; G) → H¹(X; G)` is a bijection for every
//!    catalogue group of order `≤ quotient_cap`;
//! 3. `f*: Hⁿ(Y; M) → Hⁿ(X; M)` is an isomorphism for every abelian `M` of
//!    order `≤ coeff_cap` and `n < degree_cap`;
//! 4. per component with nontrivial `π₁`, the same for `Z/m`, `m ≤ coeff_cap`,
//!    twisted by every nontrivial action of every quotient of `π₁(Y)` of
//!    order `≤ quotient_cap`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::algebra::catalogue::{abelian_types, catalogue};
use crate::algebra::finab::{AbGroup, AbHom, FinAb};
use crate::algebra::group::FiniteGroup;
use crate::algebra::lowindex::{enumerate_finite_quotients, EpiClass};
use crate::algebra::module::ModuleAction;
use crate::cohomology::chains::cohomology;
use crate::cohomology::components::{component, pi0_map, Components};
use crate::cohomology::explicit::cohomology_pullback;
use crate::cohomology::nonabelian::{class_key, h1_homomorphism_classes};
use crate::cohomology::twisted::{twisted_pullback, LocalSystem};
use crate::error::{Error, Result};
use crate::simplicial::{Cell, Formal, SMap, SSet};
use crate::towers::TowerMap;

use super::fundamental::edge_path_presentation;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WEBounds {
    /// Cohomological degrees `0..degree_cap` are probed.
    pub degree_cap: usize,
    pub coeff_cap: usize,
    pub quotient_cap: usize,
}

impl fmt::Display for WEBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "degree-cap={} coeff-cap={} quotient-cap={}",
            self.degree_cap, self.coeff_cap, self.quotient_cap
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WEStatus {
    PassUpToBounds,
    Fail,
}

impl fmt::Display for WEStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WEStatus::PassUpToBounds => "pass-up-to-bounds",
            WEStatus::Fail => "fail",
        })
    }
}

/// The first failing probe, with the values on the source and target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub invariant: String,
    pub coefficient: String,
    pub degree: usize,
    pub source_value: String,
    pub target_value: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Probe {
    pub label: String,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct WEVerdict {
    pub status: WEStatus,
    pub bounds: WEBounds,
    pub probes: Vec<Probe>,
    pub witness: Option<Witness>,
}

impl WEVerdict {
    pub fn passed(&self) -> bool {
        self.status == WEStatus::PassUpToBounds
    }
}

struct Run {
    probes: Vec<Probe>,
    witness: Option<Witness>,
}

impl Run {
    /// Records a probe; returns `false` once a probe has failed.
    fn record(&mut self, label: String, failure: Option<Witness>) -> bool {
        let passed = failure.is_none();
        self.probes.push(Probe { label, passed });
        if let Some(w) = failure {
            self.witness = Some(w);
        }
        passed
    }
}

fn iso_failure(h: &AbHom, invariant: &str, coefficient: String, degree: usize) -> Option<Witness> {
    if h.is_isomorphism() {
        return None;
    }
    // `h` is f*: H(Y) → H(X)
    Some(Witness {
        invariant: invariant.to_string(),
        coefficient,
        degree,
        source_value: h.target.structure().to_string(),
        target_value: h.source.structure().to_string(),
        reason: if h.source.structure() == h.target.structure() {
            "induced map is not an isomorphism".into()
        } else {
            "groups differ".into()
        },
    })
}

/// `f` followed by the identification of its image with a component.
fn corestrict(f: &SMap, sub: &Arc<SSet>, inc: &SMap) -> Result<SMap> {
    let back: Vec<std::collections::HashMap<usize, usize>> = (0..=inc.dim_cap())
        .map(|n| {
            sub.cells(n)
                .map(|c| (inc.image(c).base.idx, c.idx))
                .collect()
        })
        .collect();
    let images = (0..=f.dim_cap().min(sub.dim_cap()))
        .map(|n| {
            f.source()
                .cells(n)
                .map(|c| {
                    let y = f.image(c);
                    let idx = back[y.base.dim].get(&y.base.idx).ok_or_else(|| {
                        Error::InvalidMap("image leaves the target component".into())
                    })?;
                    Ok(Formal {
                        surj: y.surj.clone(),
                        base: Cell::new(y.base.dim, *idx),
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SMap::new(f.source().clone(), sub.clone(), images)
}

/// The restriction of `f` to each component of the source, as a map onto
/// the corresponding component of the target.
fn component_maps(f: &SMap, cx: &Components, cy: &Components, pi0: &[usize]) -> Result<Vec<SMap>> {
    if cx.is_connected() && cy.is_connected() {
        return Ok(vec![f.clone()]);
    }
    (0..cx.count())
        .map(|k| {
            let (_, incx) = component(f.source(), cx, k)?;
            let (yk, incy) = component(f.target(), cy, pi0[k])?;
            let fk = incx.then(f)?;
            corestrict(&fk, &yk, &incy)
        })
        .collect()
}

fn h1_probe(f: &SMap, g: &FiniteGroup, name: &str) -> Result<Option<Witness>> {
    let (x, y) = (f.source(), f.target());
    let epx = edge_path_presentation(x, 0)?;
    let hx = h1_homomorphism_classes(x, g, 0)?;
    let hy = h1_homomorphism_classes(y, g, f.vertex_map()[0])?;
    let keys_x: BTreeSet<Vec<usize>> = hx.classes.iter().map(|t| class_key(&epx, t)).collect();
    let mut pulled = BTreeSet::new();
    for t in &hy.classes {
        pulled.insert(class_key(&epx, &t.pullback(f)?));
    }
    if pulled.len() == hy.len() && pulled == keys_x {
        return Ok(None);
    }
    let value = |z: &Arc<SSet>, count: usize| -> Result<String> {
        if g.is_abelian() {
            let m = FinAb::new(abelian_invariants(g), 0);
            Ok(cohomology(z, &m, 1)?.to_string())
        } else {
            Ok(format!("{count} classes"))
        }
    };
    Ok(Some(Witness {
        invariant: "H^1".into(),
        coefficient: name.to_string(),
        degree: 1,
        source_value: value(x, hx.len())?,
        target_value: value(y, hy.len())?,
        reason: if pulled.len() < hy.len() {
            "pullback is not injective".into()
        } else {
            "pullback is not surjective".into()
        },
    }))
}

/// Invariant factors of an abelian group given by its table.
fn abelian_invariants(g: &FiniteGroup) -> Vec<u64> {
    let n = g.order();
    for t in abelian_types(n) {
        let orders: Vec<u64> = t.iter().map(|&d| d as u64).collect();
        let profile = FinAb::new(orders.clone(), 0);
        // element-order counts determine a finite abelian group
        let mut want: Vec<usize> = (0..n).map(|a| g.element_order(a)).collect();
        want.sort_unstable();
        let mut have = element_orders(&profile);
        have.sort_unstable();
        if want == have {
            return orders;
        }
    }
    unreachable!("abelian group of order {n} has a type")
}

fn element_orders(a: &FinAb) -> Vec<usize> {
    let mut out = vec![1usize];
    for &d in a.factors() {
        let mut next = Vec::with_capacity(out.len() * d as usize);
        for &o in &out {
            for k in 0..d {
                let ok = (d / num_integer::gcd(d, k)) as usize;
                next.push(num_integer::lcm(o, ok));
            }
        }
        out = next;
    }
    out
}

/// Nontrivial actions of `q` on `Z/m`, one per homomorphism to the units.
fn cyclic_actions(q: &EpiClass, m: u64) -> Vec<ModuleAction> {
    let units: Vec<u64> = (1..m).filter(|&u| num_integer::gcd(u, m) == 1).collect();
    let k = q.images.len();
    let mut out: Vec<ModuleAction> = Vec::new();
    let mut choice = vec![0usize; k];
    loop {
        if choice.iter().any(|&c| units[c] != 1) {
            let gens: Vec<(usize, Vec<Vec<u64>>)> = q
                .images
                .iter()
                .zip(&choice)
                .map(|(&g, &c)| (g, vec![vec![units[c]]]))
                .collect();
            if let Ok(a) = ModuleAction::from_generators(&q.target, FinAb::cyclic(m), &gens) {
                if !a.is_trivial() && !out.contains(&a) {
                    out.push(a);
                }
            }
        }
        let mut i = 0;
        loop {
            if i == k {
                return out;
            }
            choice[i] += 1;
            if choice[i] < units.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

pub fn check_weak_equivalence(f: &SMap, bounds: WEBounds) -> Result<WEVerdict> {
    let cap = f.source().dim_cap().min(f.target().dim_cap());
    if bounds.degree_cap == 0 || bounds.coeff_cap < 2 || bounds.quotient_cap == 0 {
        return Err(Error::Unsupported(
            "bounds must be positive and the coefficient cap at least 2".into(),
        ));
    }
    if bounds.degree_cap > cap {
        return Err(Error::DimCapTooSmall {
            dim_cap: cap,
            required: bounds.degree_cap,
        });
    }
    let mut run = Run {
        probes: Vec::new(),
        witness: None,
    };
    let done = |run: Run, bounds: WEBounds| {
        let status = if run.witness.is_some() {
            WEStatus::Fail
        } else {
            WEStatus::PassUpToBounds
        };
        Ok(WEVerdict {
            status,
            bounds,
            probes: run.probes,
            witness: run.witness,
        })
    };

    let (cx, cy, map) = pi0_map(f);
    let bijective =
        cx.count() == cy.count() && map.iter().collect::<BTreeSet<_>>().len() == map.len();
    let failure = (!bijective).then(|| Witness {
        invariant: "pi0".into(),
        coefficient: "-".into(),
        degree: 0,
        source_value: format!("{} components", cx.count()),
        target_value: format!("{} components", cy.count()),
        reason: "not a bijection".into(),
    });
    if !run.record("pi0 bijection".into(), failure) {
        return done(run, bounds);
    }

    let parts = component_maps(f, &cx, &cy, &map)?;
    let groups: Vec<_> = catalogue()
        .up_to(bounds.quotient_cap)
        .filter(|e| e.group.order() > 1)
        .collect();
    for (k, fk) in parts.iter().enumerate() {
        for e in &groups {
            let w = h1_probe(fk, &e.group, &e.name)?;
            if !run.record(format!("component {k}: H^1(-;{}) bijection", e.name), w) {
                return done(run, bounds);
            }
        }
    }

    for order in 2..=bounds.coeff_cap {
        for t in abelian_types(order) {
            let m = AbGroup::new(t.iter().map(|&d| d as u64).collect())?;
            let name = m.structure().to_string();
            for n in 0..bounds.degree_cap {
                let h = cohomology_pullback(f, &m, n)?;
                let w = iso_failure(&h, &format!("H^{n}"), name.clone(), n);
                if !run.record(format!("H^{n}(-;{name}) isomorphism"), w) {
                    return done(run, bounds);
                }
            }
        }
    }

    for (k, fk) in parts.iter().enumerate() {
        let y = fk.target();
        let epy = edge_path_presentation(y, 0)?;
        let quotients =
            enumerate_finite_quotients(&epy.simplified.presentation, bounds.quotient_cap)?;
        for q in quotients.iter().filter(|q| q.index() > 1) {
            for m in 2..=bounds.coeff_cap as u64 {
                for (a, action) in cyclic_actions(q, m).into_iter().enumerate() {
                    let l = LocalSystem::from_quotient(y, &epy, q, action)?;
                    let coefficient = format!(
                        "Z/{m} twisted by quotient of order {} (action {a})",
                        q.index()
                    );
                    for n in 0..bounds.degree_cap {
                        let h = twisted_pullback(fk, &l, n)?;
                        let w = iso_failure(&h, &format!("H^{n} twisted"), coefficient.clone(), n);
                        if !run.record(
                            format!("component {k}: H^{n}(-;{coefficient}) isomorphism"),
                            w,
                        ) {
                            return done(run, bounds);
                        }
                    }
                }
            }
        }
    }
    done(run, bounds)
}

/// Checks a map of towers at its deepest level, where the finite
/// approximations are finest.
pub fn check_weak_equivalence_tower(f: &TowerMap, bounds: WEBounds) -> Result<WEVerdict> {
    check_weak_equivalence(f.top(), bounds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{circle, circle_collapse, frobenius_map, rp2};
    use crate::simplicial::standard::delta;

    const B: WEBounds = WEBounds {
        degree_cap: 2,
        coeff_cap: 4,
        quotient_cap: 6,
    };

    #[test]
    fn identity_passes() {
        let x = rp2(3).unwrap();
        let v =
            check_weak_equivalence(&SMap::identity(x), WEBounds { degree_cap: 3, ..B }).unwrap();
        assert!(v.passed(), "{:?}", v.witness);
    }

    #[test]
    fn collapse_passes() {
        let f = circle_collapse(3).unwrap();
        let v = check_weak_equivalence(&f, WEBounds { degree_cap: 3, ..B }).unwrap();
        assert!(v.passed(), "{:?}", v.witness);
    }

    #[test]
    fn circle_to_point_fails() {
        let c = circle(2).unwrap();
        let pt = Arc::new(delta(0, 2).unwrap());
        let f = SMap::constant(c, pt, 0).unwrap();
        let v = check_weak_equivalence(&f, B).unwrap();
        let w = v.witness.unwrap();
        assert_eq!(
            (w.invariant.as_str(), w.coefficient.as_str(), w.degree),
            ("H^1", "C2", 1)
        );
        assert_eq!(
            (w.source_value.as_str(), w.target_value.as_str()),
            ("Z/2", "0")
        );
    }

    #[test]
    fn frobenius_depth() {
        let v = check_weak_equivalence_tower(&frobenius_map(5, 2).unwrap(), B).unwrap();
        assert!(v.passed(), "{:?}", v.witness);
        let v = check_weak_equivalence_tower(&frobenius_map(3, 2).unwrap(), B).unwrap();
        assert!(!v.passed());
    }
}
