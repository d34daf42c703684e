//! Chains and cochains of levelwise-finite simplicial sets: homology and
//! cohomology with finite, twisted and tower coefficients, `π₀`, and
//! nonabelian `H¹`.

pub mod chains;
pub mod components;
pub mod explicit;
pub mod nonabelian;
pub mod profinite;
pub mod twisted;

pub use chains::{chain_complex, cohomology, homology, integral_homology, ChainComplexZ};
pub use components::{pi0, pi0_tower, Components};
pub use nonabelian::{h1_nonabelian, H1Algorithm, NonabelianH1, TwistingCocycle};
pub use profinite::{profinite_cohomology, ProfiniteCohomology};
pub use twisted::{twisted_cohomology, LocalSystem};

use crate::error::{Error, Result};
use crate::simplicial::SSet;
use crate::towers::AbTower;

/// Moduli used when homology is asked for with modulus 0: the factorial
/// chain, cofinal among all finite cyclic quotients of `Ẑ`.
pub const DEFAULT_MODULI: [u64; 4] = [2, 6, 24, 120];

/// `k ↦ Hₙ(X; Z/m_k)` with reduction maps, for a divisibility chain of
/// moduli; this is the `Ẑ`-coefficient answer in tower form.
pub fn homology_tower(x: &SSet, moduli: &[u64], n: usize) -> Result<AbTower> {
    if moduli.is_empty() || moduli.contains(&0) {
        return Err(Error::Unsupported("moduli must be positive".into()));
    }
    if moduli.windows(2).any(|w| w[1] % w[0] != 0) {
        return Err(Error::Unsupported(
            "moduli must form a divisibility chain".into(),
        ));
    }
    let levels = moduli
        .iter()
        .map(|&m| Ok(explicit::homology_explicit(x, m, n)?.group()))
        .collect::<Result<Vec<_>>>()?;
    let transitions = moduli
        .windows(2)
        .map(|w| explicit::homology_reduction(x, w[1], w[0], n))
        .collect::<Result<Vec<_>>>()?;
    AbTower::new(levels, transitions)
}
