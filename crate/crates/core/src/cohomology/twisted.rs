//! Cohomology with local coefficients.
//!
//! A local system is a cocycle `τ: X₁ → Q` into a finite group and a
//! `Q`-module `M`. Its cochains are the `Q`-equivariant cochains on the
//! cover `X ×_τ Q`; restricting an equivariant cochain to the sheet `s = 1`
//! identifies them with plain `M`-valued cochains on `X` and the differential
//! `(δf)(x) = ρ(τ(x₀₁))⁻¹ f(d₀x) + Σ_{i≥1} (−1)ⁱ f(dᵢx)`.

use std::sync::Arc;

use crate::algebra::finab::{AbHom, FinAb};
use crate::algebra::group::FiniteGroup;
use crate::algebra::lowindex::EpiClass;
use crate::algebra::module::ModuleAction;
use crate::error::{Error, Result};
use crate::homotopy::fundamental::EdgePath;
use crate::simplicial::{SMap, SSet};

use super::explicit::{cochain_subquotient, pull_cochain, Explicit, PrimeCoefficients, PrimePart};
use super::nonabelian::{cocycle_of_hom, TwistingCocycle};

#[derive(Clone, Debug)]
pub struct LocalSystem {
    pub cocycle: TwistingCocycle,
    pub action: ModuleAction,
}

impl LocalSystem {
    pub fn new(cocycle: TwistingCocycle, action: ModuleAction) -> Result<LocalSystem> {
        if cocycle.group().order() != action.group_order() {
            return Err(Error::Mismatch(
                "the action is for a group of a different order than the cocycle's".into(),
            ));
        }
        Ok(LocalSystem { cocycle, action })
    }

    /// Trivial action of the trivial group.
    pub fn constant(x: &Arc<SSet>, module: FinAb) -> LocalSystem {
        let g = FiniteGroup::trivial();
        LocalSystem {
            cocycle: TwistingCocycle::trivial(x.clone(), g.clone()),
            action: ModuleAction::trivial(&g, module),
        }
    }

    /// The local system through a finite quotient of `π₁(X, x)`, given as an
    /// epimorphism from the simplified edge-path presentation.
    pub fn from_quotient(
        x: &Arc<SSet>,
        ep: &EdgePath,
        epi: &EpiClass,
        action: ModuleAction,
    ) -> Result<LocalSystem> {
        let full = ep.simplified.pull_images(&epi.target, &epi.images);
        let cocycle = cocycle_of_hom(x, ep, &epi.target, &full)?;
        LocalSystem::new(cocycle, action)
    }

    pub fn base(&self) -> &Arc<SSet> {
        self.cocycle.base()
    }

    pub fn module(&self) -> &FinAb {
        self.action.module()
    }

    pub fn pullback(&self, f: &SMap) -> Result<LocalSystem> {
        Ok(LocalSystem {
            cocycle: self.cocycle.pullback(f)?,
            action: self.action.clone(),
        })
    }
}

/// Cochain coefficients at each prime dividing `|M|`.
pub fn prime_coefficients(l: &LocalSystem) -> Vec<(u64, PrimeCoefficients<'_>)> {
    let g = l.cocycle.group();
    l.action
        .primes()
        .into_iter()
        .map(|p| {
            let pm = l.action.primary(p);
            let inv_mats = (0..g.order()).map(|h| pm.mats[g.inv(h)].clone()).collect();
            (
                p,
                PrimeCoefficients {
                    ring: pm.ring,
                    exps: pm.exps.clone(),
                    twist: Some((&l.cocycle, inv_mats)),
                },
            )
        })
        .collect()
}

pub fn twisted_explicit(x: &SSet, l: &LocalSystem, n: usize) -> Result<Explicit> {
    if **l.base() != *x {
        return Err(Error::Mismatch(
            "local system lives on a different space".into(),
        ));
    }
    let mut parts = Vec::new();
    for (p, c) in prime_coefficients(l) {
        parts.push(PrimePart {
            p,
            sub: cochain_subquotient(x, n, &c)?,
        });
    }
    Ok(Explicit { parts })
}

/// `Hⁿ(X; 𝓜)` for `n ≤ dim_cap − 1`.
pub fn twisted_cohomology(x: &SSet, l: &LocalSystem, n: usize) -> Result<FinAb> {
    Ok(twisted_explicit(x, l, n)?.structure())
}

/// `f*: Hⁿ(Y; 𝓜) → Hⁿ(X; f*𝓜)`.
pub fn twisted_pullback(f: &SMap, l: &LocalSystem, n: usize) -> Result<AbHom> {
    let lx = l.pullback(f)?;
    let hy = twisted_explicit(f.target(), l, n)?;
    let hx = twisted_explicit(f.source(), &lx, n)?;
    let ranks: Vec<(u64, usize)> = prime_coefficients(l)
        .iter()
        .map(|(p, c)| (*p, c.rank()))
        .collect();
    Ok(hy.induced(&hx, |p, v| {
        let r = ranks.iter().find(|(q, _)| *q == p).map_or(0, |&(_, r)| r);
        pull_cochain(f, n, r, v)
    }))
}
