//! Eilenberg–MacLane spaces and their path objects via Dold–Kan.
//!
//! For a chain complex `C` concentrated in degrees `n` (and `n+1`), the
//! `q`-simplices of `Γ(C)` are families `(f_η)` indexed by surjections
//! `η: [q] ↠ [k]` with `f_η ∈ C_k`. A simplicial operator `θ` acts by
//! `(θ*f)_{η'} = Σ f_η` over `η` with `η∘θ = η'`; when `η∘θ` misses only the
//! value `0` it contributes through the differential of `C` instead.
//!
//! Identifiers list the nonzero entries as `surjection:element`, e.g.
//! `(0011:1,0012:1)`; the zero simplex is `()`. Elements of `M` are numbered
//! in mixed radix with the first coordinate most significant.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::finab::AbGroup;
use crate::algebra::group::FiniteGroup;
use crate::error::{Error, Result};
use crate::simplicial::{realize, SMap, SSet, SimplicialModel, Surjection};

use super::bar::ClassifyingSpace;

fn decode(m: &AbGroup, mut x: u64) -> Vec<u64> {
    let mut out = vec![0; m.ngens()];
    for (i, &o) in m.orders.iter().enumerate().rev() {
        out[i] = x % o;
        x /= o;
    }
    out
}

fn encode(m: &AbGroup, v: &[u64]) -> u64 {
    v.iter()
        .zip(&m.orders)
        .fold(0, |acc, (&c, &o)| acc * o + c % o)
}

fn add(m: &AbGroup, a: u64, b: u64) -> u64 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let (x, y) = (decode(m, a), decode(m, b));
    let s: Vec<u64> = x.iter().zip(&y).map(|(p, q)| p + q).collect();
    encode(m, &s)
}

/// The additive group of `M` as a multiplication table.
pub fn abelian_group(m: &AbGroup) -> Result<FiniteGroup> {
    let n = m.order() as usize;
    let table = (0..n as u64)
        .map(|a| (0..n as u64).map(|b| add(m, a, b) as u32).collect())
        .collect();
    FiniteGroup::from_table(table)
}

/// `Γ` of `M` in degree `n`, plus a second copy of `M` in degree `n+1` with
/// identity differential when `path` is set.
struct DoldKan {
    m: AbGroup,
    n: usize,
    path: bool,
    /// Per simplicial degree `q`: the indexing surjections, degree `n` first.
    index: Vec<Vec<Surjection>>,
    lookup: Vec<HashMap<Surjection, usize>>,
}

impl DoldKan {
    fn new(m: AbGroup, n: usize, path: bool, dim_cap: usize) -> DoldKan {
        let mut index = Vec::new();
        let mut lookup = Vec::new();
        for q in 0..=dim_cap + 1 {
            let mut s = Surjection::all(q, n);
            if path {
                s.extend(Surjection::all(q, n + 1));
            }
            lookup.push(s.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect());
            index.push(s);
        }
        DoldKan {
            m,
            n,
            path,
            index,
            lookup,
        }
    }

    fn values_len(&self, q: usize) -> usize {
        self.index[q].len()
    }
}

impl SimplicialModel for DoldKan {
    type Simplex = Vec<u64>;

    fn simplices(&self, q: usize) -> Vec<Vec<u64>> {
        let len = self.values_len(q);
        let order = self.m.order();
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|t: Vec<u64>| {
                    (0..order).map(move |g| {
                        let mut t = t.clone();
                        t.push(g);
                        t
                    })
                })
                .collect();
        }
        out
    }

    fn face(&self, q: usize, i: usize, f: &Vec<u64>) -> Vec<u64> {
        let mut out = vec![0; self.values_len(q - 1)];
        for (eta, &x) in self.index[q].iter().zip(f) {
            if x == 0 {
                continue;
            }
            let mut v = eta.values().to_vec();
            let removed = v.remove(i);
            let target = if v.contains(&removed) {
                Surjection::from_values(v)
            } else if removed == 0 && eta.target_dim() == self.n + 1 && self.path {
                Surjection::from_values(v.iter().map(|&t| t - 1).collect())
            } else {
                None
            };
            if let Some(t) = target {
                let k = self.lookup[q - 1][&t];
                out[k] = add(&self.m, out[k], x);
            }
        }
        out
    }

    fn degeneracy(&self, q: usize, j: usize, f: &Vec<u64>) -> Vec<u64> {
        let mut out = vec![0; self.values_len(q + 1)];
        for (eta, &x) in self.index[q].iter().zip(f) {
            if x != 0 {
                let k = self.lookup[q + 1][&eta.degenerate(j)];
                out[k] = add(&self.m, out[k], x);
            }
        }
        out
    }

    fn label(&self, q: usize, f: &Vec<u64>) -> String {
        let entries: Vec<String> = self.index[q]
            .iter()
            .zip(f)
            .filter(|(_, &x)| x != 0)
            .map(|(eta, x)| {
                let digits: String = eta.values().iter().map(|v| v.to_string()).collect();
                format!("{digits}:{x}")
            })
            .collect();
        format!("({})", entries.join(","))
    }
}

fn check_module(m: &AbGroup) -> Result<()> {
    if m.order() > 64 {
        return Err(Error::BoundExceeded(format!(
            "coefficient group of order {} is too large for explicit K(M, n)",
            m.order()
        )));
    }
    Ok(())
}

/// `K(M, n)` truncated at `dim_cap`.
pub fn eilenberg_maclane(m: &AbGroup, n: usize, dim_cap: usize) -> Result<SSet> {
    check_module(m)?;
    let model = DoldKan::new(m.clone(), n, false, dim_cap);
    Ok(realize(&model, dim_cap)?.sset)
}

/// The path object `L(M, n)` with its fibration `L(M, n) → K(M, n+1)`.
#[derive(Clone, Debug)]
pub struct PathObject {
    pub total: Arc<SSet>,
    pub base: Arc<SSet>,
    pub fib: SMap,
}

pub fn path_object(m: &AbGroup, n: usize, dim_cap: usize) -> Result<PathObject> {
    check_module(m)?;
    if dim_cap < n + 1 {
        return Err(Error::DimCapTooSmall {
            dim_cap,
            required: n + 1,
        });
    }
    let lm = DoldKan::new(m.clone(), n, true, dim_cap);
    let km = DoldKan::new(m.clone(), n + 1, false, dim_cap);
    let l = realize(&lm, dim_cap)?;
    let k = realize(&km, dim_cap)?;
    let mut cells: Vec<Vec<Vec<u64>>> = (0..=dim_cap)
        .map(|q| vec![Vec::new(); l.sset.count(q)])
        .collect();
    for (q, level) in l.normal.iter().enumerate() {
        for (f, nf) in level {
            if let Some(c) = nf.as_cell() {
                cells[q][c.idx] = f.clone();
            }
        }
    }
    let images = cells
        .iter()
        .enumerate()
        .map(|(q, level)| {
            let split = Surjection::all(q, n).len();
            level
                .iter()
                .map(|f| k.formal(q, &f[split..].to_vec()).clone())
                .collect()
        })
        .collect();
    let total = Arc::new(l.sset);
    let base = Arc::new(k.sset);
    let fib = SMap::new(total.clone(), base.clone(), images)?;
    Ok(PathObject { total, base, fib })
}

/// The isomorphism `B(M) → K(M, 1)`: `[g1|...|gq]` goes to the family with
/// value `g_j` on the surjection that first takes the value 1 at `j`.
pub fn bar_to_k1(m: &AbGroup, dim_cap: usize) -> Result<SMap> {
    check_module(m)?;
    let g = abelian_group(m)?;
    let bg = ClassifyingSpace::new(&g, dim_cap)?;
    let km = DoldKan::new(m.clone(), 1, false, dim_cap);
    let k = realize(&km, dim_cap)?;
    let images = bg
        .cells
        .iter()
        .enumerate()
        .map(|(q, level)| {
            level
                .iter()
                .map(|t| {
                    let f: Vec<u64> = km.index[q]
                        .iter()
                        .map(|eta| {
                            let j = eta
                                .values()
                                .iter()
                                .position(|&v| v == 1)
                                .expect("surjection onto [1]");
                            t[j - 1] as u64
                        })
                        .collect();
                    k.formal(q, &f).clone()
                })
                .collect()
        })
        .collect();
    SMap::new(bg.space.clone(), Arc::new(k.sset), images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::finab::FinAb;
    use crate::cohomology::chains::{cohomology, homology};

    fn z(m: u64) -> AbGroup {
        AbGroup::new(vec![m]).unwrap()
    }

    #[test]
    fn k0_is_constant() {
        let k = eilenberg_maclane(&z(3), 0, 3).unwrap();
        assert_eq!(k.counts(), vec![3, 0, 0, 0]);
    }

    #[test]
    fn k1_is_bar() {
        for m in [2, 3, 4] {
            let f = bar_to_k1(&z(m), 3).unwrap();
            assert!(f.is_isomorphism());
        }
        let f = bar_to_k1(&AbGroup::new(vec![2, 2]).unwrap(), 3).unwrap();
        assert!(f.is_isomorphism());
    }

    #[test]
    fn k2_homology() {
        let k = eilenberg_maclane(&z(2), 2, 4).unwrap();
        assert_eq!(k.count(0), 1);
        assert_eq!(k.count(1), 0);
        assert_eq!(homology(&k, 2, 1).unwrap(), FinAb::zero());
        assert_eq!(homology(&k, 2, 2).unwrap(), FinAb::cyclic(2));
    }

    #[test]
    fn path_object_is_acyclic() {
        let p = path_object(&z(2), 1, 4).unwrap();
        assert!(p.fib.is_levelwise_surjective());
        for q in 1..4 {
            assert!(cohomology(&p.total, &FinAb::cyclic(2), q)
                .unwrap()
                .is_zero());
        }
    }
}
