//! Normalized integer chains, integral homology, and (co)homology with
//! finite coefficients through the universal coefficient theorem.

use crate::algebra::finab::{cokernel, FinAb};
use crate::algebra::snf::{invariant_factors, IntMatrix};
use crate::error::{Error, Result};
use crate::simplicial::SSet;

/// Integer boundary matrices on normalized chains; `boundaries[n]` is
/// `∂ₙ: Cₙ → Cₙ₋₁` with `count(n−1)` rows (`∂₀` has no rows).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplexZ {
    pub counts: Vec<usize>,
    pub boundaries: Vec<IntMatrix>,
}

impl ChainComplexZ {
    pub fn top(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn boundary(&self, n: usize) -> &IntMatrix {
        &self.boundaries[n]
    }

    /// Rank of `∂ₙ`, 0 beyond the top.
    pub fn rank(&self, n: usize) -> usize {
        if n > self.top() {
            0
        } else {
            invariant_factors(&self.boundaries[n]).len()
        }
    }

    /// `Hₙ(C; Z)` for `n < top`.
    pub fn integral_homology(&self, n: usize) -> Result<FinAb> {
        if n >= self.top() {
            return Err(Error::DegreeOutOfRange {
                degree: n,
                max: self.top().saturating_sub(1),
            });
        }
        // Hₙ = coker(∂ₙ₊₁) restricted to ker ∂ₙ: the free rank drops by rank ∂ₙ
        let c = cokernel(&self.boundaries[n + 1]);
        let r = self.rank(n);
        Ok(FinAb::new(c.factors().iter().copied(), c.rank() - r))
    }

    /// `∂ₙ ∘ ∂ₙ₊₁`.
    pub fn check_square_zero(&self) -> Result<()> {
        for n in 1..self.top() {
            let sq = self.boundaries[n].mul(&self.boundaries[n + 1]);
            if !sq.is_zero() {
                return Err(Error::Mismatch(format!("∂∂ ≠ 0 in degree {}", n + 1)));
            }
        }
        Ok(())
    }
}

pub fn chain_complex(x: &SSet) -> Result<ChainComplexZ> {
    chain_complex_through(x, x.dim_cap())
}

/// The chain complex in degrees `0..=top`, `top ≤ dim_cap`.
pub fn chain_complex_through(x: &SSet, top: usize) -> Result<ChainComplexZ> {
    let top = top.min(x.dim_cap());
    let counts = x.counts()[..=top].to_vec();
    let mut boundaries = vec![IntMatrix::zeros(0, x.count(0))];
    for n in 1..=top {
        let mut d = IntMatrix::zeros(x.count(n - 1), x.count(n));
        for y in x.cells(n) {
            for (i, f) in x.faces_of(y).iter().enumerate() {
                if let Some(b) = f.as_cell() {
                    d.add_to(b.idx, y.idx, if i % 2 == 0 { 1 } else { -1 });
                }
            }
        }
        boundaries.push(d);
    }
    let c = ChainComplexZ { counts, boundaries };
    c.check_square_zero()?;
    Ok(c)
}

/// `Hom(A, M)` for a finitely generated `A` and any `M`.
pub fn hom(a: &FinAb, m: &FinAb) -> FinAb {
    let mut out = FinAb::free(a.rank() * m.rank());
    for &d in m.factors() {
        out = out.sum(&a.hom_to_cyclic(d));
    }
    // Hom(Z/d, Z) = 0
    out
}

/// `Ext(A, M)`.
pub fn ext(a: &FinAb, m: &FinAb) -> FinAb {
    let mut out = FinAb::zero();
    for &d in m.factors() {
        out = out.sum(&a.ext_to_cyclic(d));
    }
    for _ in 0..m.rank() {
        out = out.sum(&FinAb::new(a.factors().iter().copied(), 0));
    }
    out
}

/// `A ⊗ M`.
pub fn tensor(a: &FinAb, m: &FinAb) -> FinAb {
    let mut out = FinAb::free(a.rank() * m.rank());
    for _ in 0..m.rank() {
        out = out.sum(&FinAb::new(a.factors().iter().copied(), 0));
    }
    for &d in m.factors() {
        out = out.sum(&a.tensor_cyclic(d));
    }
    out
}

/// `Tor(A, M)`.
pub fn tor(a: &FinAb, m: &FinAb) -> FinAb {
    let mut out = FinAb::zero();
    for &d in m.factors() {
        out = out.sum(&a.tor_cyclic(d));
    }
    out
}

fn integral(x: &SSet, n: usize) -> Result<(ChainComplexZ, FinAb, FinAb)> {
    if n + 1 > x.dim_cap() {
        return Err(Error::DegreeOutOfRange {
            degree: n,
            max: x.dim_cap().saturating_sub(1),
        });
    }
    let c = chain_complex_through(x, n + 1)?;
    let hn = c.integral_homology(n)?;
    let hprev = if n == 0 {
        FinAb::zero()
    } else {
        c.integral_homology(n - 1)?
    };
    Ok((c, hn, hprev))
}

/// `Hⁿ(X; M) = Hom(Hₙ, M) ⊕ Ext(Hₙ₋₁, M)`, valid for `n ≤ dim_cap − 1`.
pub fn cohomology(x: &SSet, m: &FinAb, n: usize) -> Result<FinAb> {
    let (_, hn, hprev) = integral(x, n)?;
    Ok(hom(&hn, m).sum(&ext(&hprev, m)))
}

/// `Hₙ(X; Z)` for `n ≤ dim_cap − 1`.
pub fn integral_homology(x: &SSet, n: usize) -> Result<FinAb> {
    Ok(integral(x, n)?.1)
}

/// `Hₙ(X; Z/m) = Hₙ ⊗ Z/m ⊕ Tor(Hₙ₋₁, Z/m)` for `m ≥ 1`.
pub fn homology(x: &SSet, m: u64, n: usize) -> Result<FinAb> {
    if m == 0 {
        return Err(Error::Unsupported(
            "modulus 0 denotes a tower; use homology_tower".into(),
        ));
    }
    let (_, hn, hprev) = integral(x, n)?;
    Ok(hn.tensor_cyclic(m).sum(&hprev.tor_cyclic(m)))
}

/// Boundary ranks used for a (co)homology computation, for reports.
pub fn boundary_ranks(x: &SSet) -> Result<Vec<usize>> {
    let c = chain_complex(x)?;
    Ok((0..=c.top()).map(|n| c.rank(n)).collect())
}
