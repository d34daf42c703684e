//! (Co)homology of complexes of finite `p`-primary modules.
//!
//! A degree is the quotient of a free module `(Z/p^e)^N` by the relations
//! `p^{a_i}·x_i = 0`, recorded as per-coordinate exponents `a_i ≤ e`. Maps
//! are integer lifts that respect those relations. Cycles are the vectors
//! whose image lies in the target's relation module; boundaries are the image
//! of the incoming map plus the relations themselves.

use super::primary::{kernel, quotient_exponents, PMat, Ring, Subquotient};

/// One degree of a complex: the incoming map (into this degree), the
/// outgoing map, and the coordinate exponents of this and the next degree.
pub struct Degree<'a> {
    pub ring: Ring,
    pub exps: &'a [u32],
    pub incoming: Option<&'a PMat>,
    pub outgoing: Option<&'a PMat>,
    pub next_exps: &'a [u32],
}

impl Degree<'_> {
    pub fn cycles(&self) -> PMat {
        let n = self.exps.len();
        match self.outgoing {
            None => PMat::identity(n),
            Some(d) => {
                let ring = &self.ring;
                let mut scaled = d.clone();
                for (i, &a) in self.next_exps.iter().enumerate() {
                    if a < ring.e {
                        let c = ring.pow_p(ring.e - a);
                        for j in 0..scaled.cols {
                            let v = scaled.get(i, j);
                            scaled.set(i, j, ring.mul(v, c));
                        }
                    }
                }
                kernel(ring, &scaled)
            }
        }
    }

    pub fn boundaries(&self) -> PMat {
        let n = self.exps.len();
        let rel: Vec<Vec<u64>> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &a)| a < self.ring.e)
            .map(|(i, &a)| {
                let mut v = vec![0; n];
                v[i] = self.ring.pow_p(a);
                v
            })
            .collect();
        let rel = PMat::from_columns(n, &rel);
        match self.incoming {
            None => rel,
            Some(d) => d.compact().hcat(&rel),
        }
    }

    /// Exponents of the cyclic summands of the (co)homology.
    pub fn exponents(&self) -> Vec<u32> {
        quotient_exponents(&self.ring, &self.cycles(), &self.boundaries())
    }

    pub fn subquotient(&self) -> Subquotient {
        Subquotient::new(self.ring, &self.cycles(), &self.boundaries())
    }
}

/// Cyclic orders `p^c` for a list of exponents.
pub fn orders_of(ring: &Ring, exps: &[u32]) -> Vec<u64> {
    exps.iter().map(|&c| ring.p.pow(c)).collect()
}
