//! Finitely generated abelian groups by invariant factors, and explicit
//! homomorphisms between finite direct sums of cyclic groups.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use super::snf::{invariant_factors, smith_normal_form, IntMatrix};
use crate::error::{Error, Result};

/// Prime factorization by trial division, primes in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `Z^rank ⊕ Z/d₁ ⊕ ... ⊕ Z/d_k` with `d₁ | d₂ | ... | d_k`, each `d_i ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FinAb {
    factors: Vec<u64>,
    rank: usize,
}

impl FinAb {
    /// The group `Z^rank ⊕ ⊕ Z/o_i` for arbitrary orders, normalized; an
    /// order of 0 contributes a free summand and 1 is dropped.
    pub fn new(orders: impl IntoIterator<Item = u64>, rank: usize) -> FinAb {
        let mut rank = rank;
        let mut primary: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for o in orders {
            match o {
                0 => rank += 1,
                1 => {}
                _ => {
                    for (p, k) in factorize(o) {
                        primary.entry(p).or_default().push(k);
                    }
                }
            }
        }
        let len = primary.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; len];
        for (p, mut exps) in primary {
            exps.sort_unstable_by(|a, b| b.cmp(a));
            for (i, k) in exps.into_iter().enumerate() {
                factors[i] *= p.pow(k);
            }
        }
        factors.reverse();
        FinAb { factors, rank }
    }

    pub fn zero() -> FinAb {
        FinAb::default()
    }

    pub fn cyclic(m: u64) -> FinAb {
        FinAb::new([m], 0)
    }

    pub fn free(rank: usize) -> FinAb {
        FinAb {
            factors: Vec::new(),
            rank,
        }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    /// Order of a finite group; `None` when there is a free part.
    pub fn order(&self) -> Option<u64> {
        (self.rank == 0).then(|| self.factors.iter().product())
    }

    /// Exponents of the cyclic `p`-power summands, per prime.
    pub fn primary_parts(&self) -> BTreeMap<u64, Vec<u32>> {
        let mut out: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &d in &self.factors {
            for (p, k) in factorize(d) {
                out.entry(p).or_default().push(k);
            }
        }
        out
    }

    /// The cyclic orders of the primary decomposition, ordered by prime then
    /// exponent; this is the generator basis used for module actions.
    pub fn primary_orders(&self) -> Vec<u64> {
        self.primary_parts()
            .into_iter()
            .flat_map(|(p, ks)| ks.into_iter().map(move |k| p.pow(k)))
            .collect()
    }

    /// Direct sum.
    pub fn sum(&self, other: &FinAb) -> FinAb {
        FinAb::new(
            self.factors.iter().chain(&other.factors).copied(),
            self.rank + other.rank,
        )
    }

    /// `A ⊗ Z/m`.
    pub fn tensor_cyclic(&self, m: u64) -> FinAb {
        FinAb::new(
            std::iter::repeat_n(m, self.rank).chain(self.factors.iter().map(|&d| d.gcd(&m))),
            0,
        )
    }

    /// `Hom(A, Z/m)`.
    pub fn hom_to_cyclic(&self, m: u64) -> FinAb {
        self.tensor_cyclic(m)
    }

    /// `Ext(A, Z/m)`; only the torsion part contributes.
    pub fn ext_to_cyclic(&self, m: u64) -> FinAb {
        FinAb::new(self.factors.iter().map(|&d| d.gcd(&m)), 0)
    }

    /// `Tor(A, Z/m)`.
    pub fn tor_cyclic(&self, m: u64) -> FinAb {
        self.ext_to_cyclic(m)
    }

    /// `dim_{F_p}(A ⊗ F_p)`.
    pub fn dim_mod_p(&self, p: u64) -> usize {
        self.rank + self.factors.iter().filter(|&&d| d % p == 0).count()
    }

    /// Number of elements of the group, as a `p`-adic logarithm when the
    /// group is a finite `p`-group.
    pub fn log_order(&self, p: u64) -> Option<u32> {
        let mut total = 0;
        for &d in &self.factors {
            let f = factorize(d);
            if f.len() != 1 || f[0].0 != p {
                return None;
            }
            total += f[0].1;
        }
        (self.rank == 0).then_some(total)
    }
}

impl fmt::Display for FinAb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.factors.iter().map(|d| format!("Z/{d}")));
        f.write_str(&parts.join(" + "))
    }
}

impl FromStr for FinAb {
    type Err = Error;

    /// Accepts `0`, `Z`, `Z^r`, `Z/d`, and sums of those joined by `+`.
    fn from_str(s: &str) -> Result<FinAb> {
        let bad = |msg: &str| Error::Parse {
            location: format!("abelian group `{s}`"),
            message: msg.to_string(),
        };
        let s = s.trim();
        if s == "0" {
            return Ok(FinAb::zero());
        }
        let mut orders = Vec::new();
        let mut rank = 0;
        for part in s.split('+').map(str::trim) {
            if part == "Z" {
                rank += 1;
            } else if let Some(r) = part.strip_prefix("Z^") {
                rank += r.parse::<usize>().map_err(|_| bad("bad free rank"))?;
            } else if let Some(d) = part.strip_prefix("Z/") {
                let d: u64 = d.parse().map_err(|_| bad("bad cyclic order"))?;
                if d == 0 {
                    return Err(bad("cyclic order must be positive"));
                }
                orders.push(d);
            } else {
                return Err(bad("expected Z, Z^r or Z/d summands joined by +"));
            }
        }
        Ok(FinAb::new(orders, rank))
    }
}

/// An explicit finite direct sum `⊕ Z/o_i` (orders ≥ 1) with named
/// generators; elements are coordinate vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbGroup {
    pub orders: Vec<u64>,
}

impl AbGroup {
    pub fn new(orders: Vec<u64>) -> Result<AbGroup> {
        if orders.contains(&0) {
            return Err(Error::InvalidGroup("cyclic orders must be positive".into()));
        }
        Ok(AbGroup { orders })
    }

    pub fn zero() -> AbGroup {
        AbGroup { orders: Vec::new() }
    }

    /// The group with one generator per invariant factor of `a` (finite only).
    pub fn from_finab(a: &FinAb) -> AbGroup {
        assert!(a.is_finite(), "explicit groups are finite");
        AbGroup {
            orders: a.factors().to_vec(),
        }
    }

    pub fn ngens(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn structure(&self) -> FinAb {
        FinAb::new(self.orders.iter().copied(), 0)
    }

    pub fn reduce(&self, x: &mut [u64]) {
        for (v, &o) in x.iter_mut().zip(&self.orders) {
            *v %= o;
        }
    }

    fn relation_matrix(&self) -> IntMatrix {
        let k = self.ngens();
        let mut m = IntMatrix::zeros(k, k);
        for (i, &o) in self.orders.iter().enumerate() {
            m.set(i, i, o as i64);
        }
        m
    }
}

/// A homomorphism of explicit groups; `matrix[i][j]` is the `i`-th target
/// coordinate of the image of source generator `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbHom {
    pub source: AbGroup,
    pub target: AbGroup,
    pub matrix: Vec<Vec<u64>>,
}

impl AbHom {
    /// Validates that every generator image is killed by the generator's order.
    pub fn new(source: AbGroup, target: AbGroup, matrix: Vec<Vec<u64>>) -> Result<AbHom> {
        if matrix.len() != target.ngens() || matrix.iter().any(|r| r.len() != source.ngens()) {
            return Err(Error::InvalidHomomorphism(
                "matrix shape does not match groups".into(),
            ));
        }
        let mut matrix = matrix;
        for (i, row) in matrix.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v %= target.orders[i];
                if (*v as u128 * source.orders[j] as u128) % target.orders[i] as u128 != 0 {
                    return Err(Error::InvalidHomomorphism(format!(
                        "generator {j} has order {} but its image does not",
                        source.orders[j]
                    )));
                }
            }
        }
        Ok(AbHom {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(a: &AbGroup) -> AbHom {
        let k = a.ngens();
        let matrix = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| u64::from(i == j && a.orders[i] > 1))
                    .collect()
            })
            .collect();
        AbHom {
            source: a.clone(),
            target: a.clone(),
            matrix,
        }
    }

    pub fn zero(source: &AbGroup, target: &AbGroup) -> AbHom {
        AbHom {
            source: source.clone(),
            target: target.clone(),
            matrix: vec![vec![0; source.ngens()]; target.ngens()],
        }
    }

    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        self.matrix
            .iter()
            .zip(&self.target.orders)
            .map(|(row, &o)| {
                let s: u128 = row
                    .iter()
                    .zip(x)
                    .map(|(&a, &b)| a as u128 * b as u128)
                    .sum();
                (s % o as u128) as u64
            })
            .collect()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &AbHom) -> Result<AbHom> {
        if self.target != other.source {
            return Err(Error::InvalidHomomorphism(
                "composition of incompatible maps".into(),
            ));
        }
        let cols: Vec<Vec<u64>> = (0..self.source.ngens())
            .map(|j| {
                let col: Vec<u64> = self.matrix.iter().map(|r| r[j]).collect();
                other.apply(&col)
            })
            .collect();
        let matrix = (0..other.target.ngens())
            .map(|i| cols.iter().map(|c| c[i]).collect())
            .collect();
        AbHom::new(self.source.clone(), other.target.clone(), matrix)
    }

    /// Isomorphism type of the image subgroup.
    pub fn image(&self) -> FinAb {
        let k = self.source.ngens();
        let t = self.target.ngens();
        if k == 0 {
            return FinAb::zero();
        }
        // x ∈ Z^k maps into the relation lattice iff (x, y) ∈ ker [M | O]
        let mut a = IntMatrix::zeros(t, k + t);
        for i in 0..t {
            for j in 0..k {
                a.set(i, j, self.matrix[i][j] as i64);
            }
            a.set(i, k + i, self.target.orders[i] as i64);
        }
        let kernel = lattice_kernel(&a);
        let mut rel = IntMatrix::zeros(k, kernel.cols);
        for i in 0..k {
            for j in 0..kernel.cols {
                rel.set(i, j, kernel.get(i, j));
            }
        }
        cokernel(&rel)
    }

    pub fn image_order(&self) -> u64 {
        self.image()
            .order()
            .expect("image of a finite group is finite")
    }

    pub fn is_surjective(&self) -> bool {
        self.image_order() == self.target.order()
    }

    pub fn is_injective(&self) -> bool {
        self.image_order() == self.source.order()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Isomorphism type of the kernel, from `|ker| = |A| / |im|` per prime is
    /// not enough, so it is computed as a lattice quotient.
    pub fn kernel(&self) -> FinAb {
        let k = self.source.ngens();
        let t = self.target.ngens();
        if k == 0 {
            return FinAb::zero();
        }
        let mut a = IntMatrix::zeros(t, k + t);
        for i in 0..t {
            for j in 0..k {
                a.set(i, j, self.matrix[i][j] as i64);
            }
            a.set(i, k + i, self.target.orders[i] as i64);
        }
        let lattice = lattice_kernel(&a);
        // L = projection of the kernel lattice; ker f = L / O_A Z^k
        let mut gens = IntMatrix::zeros(k, lattice.cols);
        for i in 0..k {
            for j in 0..lattice.cols {
                gens.set(i, j, lattice.get(i, j));
            }
        }
        let basis = column_basis(&gens);
        // express the source relations in the basis of L
        let rel = self.source.relation_matrix();
        let coords = solve_in_basis(&basis, &rel);
        cokernel(&coords)
    }
}

/// A basis (as columns) of the integer kernel of `a`.
pub fn lattice_kernel(a: &IntMatrix) -> IntMatrix {
    let s = smith_normal_form(a);
    let r = s.rank();
    let mut out = IntMatrix::zeros(a.cols, a.cols - r);
    for i in 0..a.cols {
        for j in r..a.cols {
            out.set(i, j - r, s.v.get(i, j));
        }
    }
    out
}

/// The cokernel `Z^rows / im(a)`.
pub fn cokernel(a: &IntMatrix) -> FinAb {
    let f = invariant_factors(a);
    let rank = a.rows - f.len();
    FinAb::new(f.into_iter().map(|d| d as u64), rank)
}

/// A basis of the lattice spanned by the columns of `a`.
fn column_basis(a: &IntMatrix) -> IntMatrix {
    let s = smith_normal_form(a);
    let r = s.rank();
    // columns of A·V are U⁻¹ D; the first r of them span the lattice
    let av = a.mul(&s.v);
    let mut out = IntMatrix::zeros(a.rows, r);
    for i in 0..a.rows {
        for j in 0..r {
            out.set(i, j, av.get(i, j));
        }
    }
    out
}

/// Coordinates of the columns of `b` in the basis given by the columns of
/// `basis` (the columns of `b` must lie in its span).
fn solve_in_basis(basis: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let s = smith_normal_form(basis);
    let r = s.rank();
    let ub = s.u.mul(b);
    let mut y = IntMatrix::zeros(basis.cols, b.cols);
    for j in 0..b.cols {
        for i in 0..r {
            let d = s.d.get(i, i);
            let v = ub.get(i, j);
            assert_eq!(v % d, 0, "vector outside the lattice");
            y.set(i, j, v / d);
        }
    }
    s.v.mul(&y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form_and_display() {
        assert_eq!(FinAb::new([2, 3], 0), FinAb::cyclic(6));
        assert_eq!(FinAb::new([4, 6], 1).to_string(), "Z + Z/2 + Z/12");
        assert_eq!(FinAb::new([1, 1], 0).to_string(), "0");
        assert_eq!("Z^2 + Z/2".parse::<FinAb>().unwrap(), FinAb::new([2], 2));
    }

    #[test]
    fn coefficient_functors() {
        let a = FinAb::new([2, 4], 1);
        assert_eq!(a.tensor_cyclic(2), FinAb::new([2, 2, 2], 0));
        assert_eq!(a.ext_to_cyclic(4), FinAb::new([2, 4], 0));
        assert_eq!(a.dim_mod_p(2), 3);
        assert_eq!(a.dim_mod_p(3), 1);
    }

    #[test]
    fn image_and_kernel() {
        let z4 = AbGroup::new(vec![4]).unwrap();
        let z2 = AbGroup::new(vec![2]).unwrap();
        let red = AbHom::new(z4.clone(), z2.clone(), vec![vec![1]]).unwrap();
        assert!(red.is_surjective());
        assert_eq!(red.kernel(), FinAb::cyclic(2));
        let inc = AbHom::new(z2.clone(), z4.clone(), vec![vec![2]]).unwrap();
        assert!(inc.is_injective());
        assert_eq!(inc.image(), FinAb::cyclic(2));
        assert!(AbHom::new(z2, z4, vec![vec![1]]).is_err());
    }
}
