//! Finite abelian groups with a group action, and their cohomology via the
//! normalized bar resolution.

use std::collections::VecDeque;

use super::complex::Degree;
use super::finab::{factorize, FinAb};
use super::group::FiniteGroup;
use super::primary::{PMat, Ring};
use crate::error::{Error, Result};

/// A left action of a finite group on a finite abelian group `M`, given by
/// one integer matrix per group element acting on column vectors in the
/// invariant-factor basis of `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleAction {
    module: FinAb,
    group_order: usize,
    matrices: Vec<Vec<Vec<u64>>>,
}

fn mat_mul(a: &[Vec<u64>], b: &[Vec<u64>], orders: &[u64]) -> Vec<Vec<u64>> {
    let k = orders.len();
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let s: u128 = (0..k).map(|t| a[i][t] as u128 * b[t][j] as u128).sum();
                    (s % orders[i] as u128) as u64
                })
                .collect()
        })
        .collect()
}

fn identity(orders: &[u64]) -> Vec<Vec<u64>> {
    let k = orders.len();
    (0..k)
        .map(|i| (0..k).map(|j| u64::from(i == j)).collect())
        .collect()
}

impl ModuleAction {
    /// Validates that each matrix is an endomorphism of `M` and that the
    /// assignment is a homomorphism `G → Aut(M)`.
    pub fn new(
        group: &FiniteGroup,
        module: FinAb,
        matrices: Vec<Vec<Vec<u64>>>,
    ) -> Result<ModuleAction> {
        if !module.is_finite() {
            return Err(Error::InvalidAction("the module must be finite".into()));
        }
        let orders = module.factors().to_vec();
        let k = orders.len();
        if matrices.len() != group.order() {
            return Err(Error::InvalidAction(format!(
                "{} matrices for a group of order {}",
                matrices.len(),
                group.order()
            )));
        }
        let mut matrices = matrices;
        for m in matrices.iter_mut() {
            if m.len() != k || m.iter().any(|r| r.len() != k) {
                return Err(Error::InvalidAction(
                    "matrix shape does not match the module".into(),
                ));
            }
            for (i, row) in m.iter_mut().enumerate() {
                for (j, v) in row.iter_mut().enumerate() {
                    *v %= orders[i];
                    if (*v as u128 * orders[j] as u128) % orders[i] as u128 != 0 {
                        return Err(Error::InvalidAction(format!(
                            "entry ({i}, {j}) is not compatible with the orders of M"
                        )));
                    }
                }
            }
        }
        if matrices[0] != identity(&orders) {
            return Err(Error::InvalidAction(
                "the identity must act trivially".into(),
            ));
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                if matrices[group.mul(g, h)] != mat_mul(&matrices[g], &matrices[h], &orders) {
                    return Err(Error::InvalidAction(format!(
                        "not a homomorphism at elements ({g}, {h})"
                    )));
                }
            }
        }
        Ok(ModuleAction {
            module,
            group_order: group.order(),
            matrices,
        })
    }

    pub fn trivial(group: &FiniteGroup, module: FinAb) -> ModuleAction {
        let id = identity(module.factors());
        ModuleAction {
            module,
            group_order: group.order(),
            matrices: vec![id; group.order()],
        }
    }

    /// Extends matrices given on generating elements to the whole group.
    pub fn from_generators(
        group: &FiniteGroup,
        module: FinAb,
        gens: &[(usize, Vec<Vec<u64>>)],
    ) -> Result<ModuleAction> {
        let orders = module.factors().to_vec();
        let mut mats: Vec<Option<Vec<Vec<u64>>>> = vec![None; group.order()];
        mats[0] = Some(identity(&orders));
        let mut queue = VecDeque::from([0usize]);
        while let Some(a) = queue.pop_front() {
            for (g, m) in gens {
                let b = group.mul(a, *g);
                let prod = mat_mul(mats[a].as_ref().unwrap(), m, &orders);
                match &mats[b] {
                    None => {
                        mats[b] = Some(prod);
                        queue.push_back(b);
                    }
                    Some(existing) if *existing != prod => {
                        return Err(Error::InvalidAction(
                            "generator matrices do not define an action".into(),
                        ))
                    }
                    Some(_) => {}
                }
            }
        }
        if mats.iter().any(Option::is_none) {
            return Err(Error::InvalidAction(
                "the given elements do not generate the group".into(),
            ));
        }
        ModuleAction::new(
            group,
            module,
            mats.into_iter().map(Option::unwrap).collect(),
        )
    }

    /// The action through a homomorphism `H → G`.
    pub fn pull_back(&self, h: &FiniteGroup, map: &[usize]) -> Result<ModuleAction> {
        let mats = (0..h.order())
            .map(|x| self.matrices[map[x]].clone())
            .collect();
        ModuleAction::new(h, self.module.clone(), mats)
    }

    pub fn module(&self) -> &FinAb {
        &self.module
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn matrix(&self, g: usize) -> &[Vec<u64>] {
        &self.matrices[g]
    }

    pub fn is_trivial(&self) -> bool {
        let id = identity(self.module.factors());
        self.matrices.iter().all(|m| *m == id)
    }

    /// Primes dividing `|M|`.
    pub fn primes(&self) -> Vec<u64> {
        self.module.primary_parts().keys().copied().collect()
    }

    /// The `p`-primary part of `M` with the induced action.
    pub fn primary(&self, p: u64) -> PModule {
        let orders = self.module.factors();
        // (invariant index, exponent) of each p-primary generator
        let comps: Vec<(usize, u32)> = orders
            .iter()
            .enumerate()
            .filter_map(|(k, &d)| {
                factorize(d)
                    .into_iter()
                    .find(|&(q, _)| q == p)
                    .map(|(_, v)| (k, v))
            })
            .collect();
        let e = comps.iter().map(|&(_, v)| v).max().unwrap_or(1);
        let ring = Ring::new(p, e);
        let r = comps.len();
        let scale: Vec<u64> = comps
            .iter()
            .map(|&(k, v)| {
                let pv = p.pow(v);
                let co = orders[k] / pv;
                // co · (co⁻¹ mod p^v) is the primary idempotent in Z/d_k
                let inv = Ring::new(p, v).inv_unit(co % pv);
                co * inv
            })
            .collect();
        let mats = self
            .matrices
            .iter()
            .map(|m| {
                let mut pm = PMat::zeros(r, r);
                for (a, &(k2, v2)) in comps.iter().enumerate() {
                    let pv2 = p.pow(v2);
                    for (b, &(k1, _)) in comps.iter().enumerate() {
                        let x = (m[k2][k1] as u128 * scale[b] as u128 % pv2 as u128) as u64;
                        pm.set(a, b, x);
                    }
                }
                pm
            })
            .collect();
        PModule {
            ring,
            exps: comps.iter().map(|&(_, v)| v).collect(),
            mats,
        }
    }
}

/// A `p`-primary module `⊕ Z/p^{exps[i]}` over `Z/p^e` with one action
/// matrix per group element.
#[derive(Clone, Debug)]
pub struct PModule {
    pub ring: Ring,
    pub exps: Vec<u32>,
    pub mats: Vec<PMat>,
}

impl PModule {
    pub fn rank(&self) -> usize {
        self.exps.len()
    }
}

/// `Hⁿ(G; M)` for `0 ≤ n ≤ n_max` via the normalized bar resolution.
pub fn group_cohomology(
    group: &FiniteGroup,
    action: &ModuleAction,
    n_max: usize,
) -> Result<Vec<FinAb>> {
    if action.group_order() != group.order() {
        return Err(Error::InvalidAction(
            "action is for a different group".into(),
        ));
    }
    let mut result = vec![Vec::new(); n_max + 1];
    for p in action.primes() {
        let pm = action.primary(p);
        let exps_by_degree = bar_cohomology_exponents(group, &pm, n_max);
        for (n, exps) in exps_by_degree.into_iter().enumerate() {
            result[n].extend(exps.into_iter().map(|c| p.pow(c)));
        }
    }
    Ok(result.into_iter().map(|o| FinAb::new(o, 0)).collect())
}

/// Normalized bar cochain differentials `δⁿ: Cⁿ → Cⁿ⁺¹`, `n ≤ n_max`.
pub fn bar_differentials(group: &FiniteGroup, pm: &PModule, n_max: usize) -> Vec<PMat> {
    let ring = pm.ring;
    let r = pm.rank();
    let b = group.order() - 1;
    let count = |n: usize| b.pow(n as u32);
    let decode = |mut idx: usize, n: usize| -> Vec<usize> {
        let mut t = vec![0; n];
        for i in (0..n).rev() {
            t[i] = idx % b + 1;
            idx /= b;
        }
        t
    };
    let encode = |t: &[usize]| -> usize { t.iter().fold(0, |acc, &g| acc * b + (g - 1)) };
    let mut diffs = Vec::new();
    for n in 0..=n_max {
        let mut d = PMat::zeros(count(n + 1) * r, count(n) * r);
        if b == 0 {
            diffs.push(d);
            continue;
        }
        for row in 0..count(n + 1) {
            let t = decode(row, n + 1);
            // ρ(g₁) f(g₂, ..., g_{n+1})
            let src = encode(&t[1..]);
            let m = &pm.mats[t[0]];
            for a in 0..r {
                for c in 0..r {
                    let v = m.get(a, c);
                    if v != 0 {
                        d.add_to(&ring, row * r + a, src * r + c, v);
                    }
                }
            }
            for i in 1..=n {
                let prod = group.mul(t[i - 1], t[i]);
                if prod == 0 {
                    continue;
                }
                let mut s = t[..i - 1].to_vec();
                s.push(prod);
                s.extend_from_slice(&t[i + 1..]);
                let src = encode(&s);
                let sign = if i % 2 == 0 { 1 } else { ring.q - 1 };
                for a in 0..r {
                    d.add_to(&ring, row * r + a, src * r + a, sign);
                }
            }
            let src = encode(&t[..n]);
            let sign = if (n + 1) % 2 == 0 { 1 } else { ring.q - 1 };
            for a in 0..r {
                d.add_to(&ring, row * r + a, src * r + a, sign);
            }
        }
        diffs.push(d);
    }
    diffs
}

fn bar_cohomology_exponents(group: &FiniteGroup, pm: &PModule, n_max: usize) -> Vec<Vec<u32>> {
    let diffs = bar_differentials(group, pm, n_max);
    let b = group.order() - 1;
    let exps_at = |n: usize| -> Vec<u32> {
        (0..b.pow(n as u32))
            .flat_map(|_| pm.exps.iter().copied())
            .collect()
    };
    (0..=n_max)
        .map(|n| {
            let here = exps_at(n);
            let next = exps_at(n + 1);
            Degree {
                ring: pm.ring,
                exps: &here,
                incoming: if n == 0 { None } else { Some(&diffs[n - 1]) },
                outgoing: Some(&diffs[n]),
                next_exps: &next,
            }
            .exponents()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_two_trivial() {
        let g = FiniteGroup::cyclic(2);
        let a = ModuleAction::trivial(&g, FinAb::cyclic(2));
        let h = group_cohomology(&g, &a, 4).unwrap();
        assert!(h.iter().all(|x| *x == FinAb::cyclic(2)));
    }

    #[test]
    fn coprime_orders_vanish() {
        let g = FiniteGroup::cyclic(3);
        let a = ModuleAction::trivial(&g, FinAb::cyclic(2));
        let h = group_cohomology(&g, &a, 3).unwrap();
        assert_eq!(h[0], FinAb::cyclic(2));
        assert!(h[1..].iter().all(FinAb::is_zero));
    }

    #[test]
    fn inversion_action_on_z3() {
        let g = FiniteGroup::cyclic(2);
        let a =
            ModuleAction::new(&g, FinAb::cyclic(3), vec![vec![vec![1]], vec![vec![2]]]).unwrap();
        let h = group_cohomology(&g, &a, 2).unwrap();
        assert!(h.iter().all(FinAb::is_zero));
        assert!(
            ModuleAction::new(&g, FinAb::cyclic(3), vec![vec![vec![1]], vec![vec![1]]]).is_ok()
        );
        assert!(ModuleAction::new(
            &FiniteGroup::cyclic(3),
            FinAb::cyclic(3),
            vec![vec![vec![1]], vec![vec![2]], vec![vec![2]]]
        )
        .is_err());
    }

    #[test]
    fn mixed_module_z6() {
        let g = FiniteGroup::cyclic(2);
        let a = ModuleAction::trivial(&g, FinAb::cyclic(6));
        let h = group_cohomology(&g, &a, 2).unwrap();
        assert_eq!(
            h,
            vec![FinAb::cyclic(6), FinAb::cyclic(2), FinAb::cyclic(2)]
        );
    }
}
