//! Cohomology with coefficients in a tower of finite abelian groups.
//!
//! For a profinite `M = lim M/U_k` there is a short exact sequence
//! `0 → lim¹ Hⁿ⁻¹(X; M/U_k) → Hⁿ(X; M) → lim Hⁿ(X; M/U_k) → 0`; with finite
//! levels the `lim¹` term vanishes, so the limit descriptor of the
//! cohomology tower is the answer.

use crate::algebra::finab::FinAb;
use crate::error::{Error, Result};
use crate::simplicial::SSet;
use crate::towers::{tower_lim, tower_lim1, AbTower, LimDescriptor};

use super::explicit::{coefficient_map, cohomology_explicit};

#[derive(Clone, Debug)]
pub struct ProfiniteCohomology {
    pub degree: usize,
    pub tower: AbTower,
    pub lim: LimDescriptor,
    /// `lim¹` of the degree `n − 1` tower, the kernel term of the sequence.
    pub lim1: FinAb,
}

/// The tower `k ↦ Hⁿ(X; T_k)` with transitions induced by the coefficient
/// maps.
pub fn cohomology_tower(x: &SSet, coeffs: &AbTower, n: usize) -> Result<AbTower> {
    let explicit = coeffs
        .levels
        .iter()
        .map(|m| cohomology_explicit(x, m, n))
        .collect::<Result<Vec<_>>>()?;
    let levels = explicit.iter().map(|e| e.group()).collect();
    let transitions = coeffs
        .transitions
        .iter()
        .enumerate()
        .map(|(k, h)| coefficient_map(x, h, n, &explicit[k + 1], &explicit[k]))
        .collect();
    AbTower::new(levels, transitions)
}

pub fn profinite_cohomology(x: &SSet, coeffs: &AbTower, n: usize) -> Result<ProfiniteCohomology> {
    if coeffs.is_empty() {
        return Err(Error::InvalidTower("empty coefficient tower".into()));
    }
    let tower = cohomology_tower(x, coeffs, n)?;
    let lim = tower_lim(&tower)?;
    let lim1 = if n == 0 {
        FinAb::zero()
    } else {
        tower_lim1(&cohomology_tower(x, coeffs, n - 1)?)
    };
    Ok(ProfiniteCohomology {
        degree: n,
        tower,
        lim,
        lim1,
    })
}
