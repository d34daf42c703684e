//! Finite groups given by multiplication tables.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// A finite group on `{0..n-1}` with identity `0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {})", self.n)
    }
}

impl FiniteGroup {
    /// Validates identity, closure, inverses and associativity.
    pub fn from_table(table: Vec<Vec<u32>>) -> Result<FiniteGroup> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if table.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidGroup("table is not square".into()));
        }
        let flat: Vec<u32> = table.into_iter().flatten().collect();
        if flat.iter().any(|&x| x as usize >= n) {
            return Err(Error::InvalidGroup("entry out of range".into()));
        }
        for a in 0..n {
            if flat[a] as usize != a || flat[a * n] as usize != a {
                return Err(Error::InvalidGroup("element 0 is not the identity".into()));
            }
        }
        let mut inv = vec![u32::MAX; n];
        for a in 0..n {
            for b in 0..n {
                if flat[a * n + b] == 0 {
                    if flat[b * n + a] != 0 {
                        return Err(Error::InvalidGroup(format!("{a} has no two-sided inverse")));
                    }
                    inv[a] = b as u32;
                }
            }
            if inv[a] == u32::MAX {
                return Err(Error::InvalidGroup(format!("{a} has no inverse")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = flat[a * n + b] as usize;
                for c in 0..n {
                    let bc = flat[b * n + c] as usize;
                    if flat[ab * n + c] != flat[a * n + bc] {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            n,
            table: flat,
            inv,
        })
    }

    fn from_flat_unchecked(n: usize, table: Vec<u32>) -> FiniteGroup {
        let mut inv = vec![0; n];
        for a in 0..n {
            for b in 0..n {
                if table[a * n + b] == 0 {
                    inv[a] = b as u32;
                }
            }
        }
        FiniteGroup { n, table, inv }
    }

    /// The group generated by permutations of `{0..degree-1}`; elements are
    /// numbered in breadth-first order from the identity, so generator
    /// products are reproducible. Returns the group and its elements.
    pub fn from_permutations(degree: usize, gens: &[Vec<u32>]) -> (FiniteGroup, Vec<Vec<u32>>) {
        let id: Vec<u32> = (0..degree as u32).collect();
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<u32>, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                // right multiplication: first elems[i], then g
                let p: Vec<u32> = elems[i].iter().map(|&x| g[x as usize]).collect();
                if !index.contains_key(&p) {
                    index.insert(p.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(p);
                }
            }
        }
        let n = elems.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                // (a·b)(x) = b(a(x)): apply a first
                let p: Vec<u32> = elems[a].iter().map(|&x| elems[b][x as usize]).collect();
                table[a * n + b] = index[&p] as u32;
            }
        }
        (FiniteGroup::from_flat_unchecked(n, table), elems)
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup::from_flat_unchecked(1, vec![0])
    }

    pub fn cyclic(m: usize) -> FiniteGroup {
        assert!(m >= 1);
        let table = (0..m * m).map(|k| ((k / m + k % m) % m) as u32).collect();
        FiniteGroup::from_flat_unchecked(m, table)
    }

    /// Dihedral group of order `2m`: elements `r^i` are `i`, `r^i s` are `m+i`.
    pub fn dihedral(m: usize) -> FiniteGroup {
        assert!(m >= 1);
        let n = 2 * m;
        let enc = |i: usize, f: usize| (f * m + i % m) as u32;
        let mut table = vec![0; n * n];
        for a in 0..n {
            let (i, f) = (a % m, a / m);
            for b in 0..n {
                let (j, g) = (b % m, b / m);
                // r^i s^f r^j s^g = r^{i ± j} s^{f+g}
                let k = if f == 0 { i + j } else { i + m - j };
                table[a * n + b] = enc(k, (f + g) % 2);
            }
        }
        FiniteGroup::from_flat_unchecked(n, table)
    }

    /// Symmetric group on `k` letters via two generators.
    pub fn symmetric(k: usize) -> FiniteGroup {
        if k <= 1 {
            return FiniteGroup::trivial();
        }
        let mut t: Vec<u32> = (0..k as u32).collect();
        t.swap(0, 1);
        let c: Vec<u32> = (0..k as u32).map(|x| (x + 1) % k as u32).collect();
        FiniteGroup::from_permutations(k, &[t, c]).0
    }

    /// Dicyclic group of order `4m` (`m ≥ 2`): `a` of order `2m`, `x² = a^m`,
    /// `x a x⁻¹ = a⁻¹`. Elements `a^i` are `i`, `a^i x` are `2m+i`.
    pub fn dicyclic(m: usize) -> FiniteGroup {
        assert!(m >= 2);
        let o = 2 * m;
        let n = 2 * o;
        let mut table = vec![0; n * n];
        for a in 0..n {
            let (i, f) = (a % o, a / o);
            for b in 0..n {
                let (j, g) = (b % o, b / o);
                let (k, h) = match (f, g) {
                    (0, _) => (i + j, g),
                    // a^i x a^j = a^{i-j} x
                    (1, 0) => (i + o - j, 1),
                    // a^i x a^j x = a^{i-j} x² = a^{i-j+m}
                    _ => (i + o - j + m, 0),
                };
                table[a * n + b] = (h * o + k % o) as u32;
            }
        }
        FiniteGroup::from_flat_unchecked(n, table)
    }

    /// Direct product; `(a, b)` is `a * |H| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (n1, n2) = (self.n, other.n);
        let n = n1 * n2;
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let x = self.mul(a / n2, b / n2);
                let y = other.mul(a % n2, b % n2);
                table[a * n + b] = (x * n2 + y) as u32;
            }
        }
        FiniteGroup::from_flat_unchecked(n, table)
    }

    /// `N ⋊_φ Z/k` where `phi` is an automorphism of `N` (as an element map)
    /// with `φ^k = id`; `(x, i)` is `x + |N|·i` and
    /// `(x, i)(y, j) = (x·φ^i(y), i + j)`.
    pub fn semidirect_cyclic(nsub: &FiniteGroup, k: usize, phi: &[u32]) -> FiniteGroup {
        let m = nsub.n;
        let mut pows = vec![(0..m as u32).collect::<Vec<u32>>()];
        for i in 1..k {
            let prev = &pows[i - 1];
            pows.push(prev.iter().map(|&y| phi[y as usize]).collect());
        }
        let n = m * k;
        let mut table = vec![0; n * n];
        for a in 0..n {
            let (x, i) = (a % m, a / m);
            for b in 0..n {
                let (y, j) = (b % m, b / m);
                let z = nsub.mul(x, pows[i][y] as usize);
                table[a * n + b] = (z + m * ((i + j) % k)) as u32;
            }
        }
        FiniteGroup::from_flat_unchecked(n, table)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut r = 0;
        for _ in 0..k.unsigned_abs() {
            r = self.mul(r, base);
        }
        r
    }

    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn table_rows(&self) -> Vec<Vec<u32>> {
        self.table.chunks(self.n).map(<[u32]>::to_vec).collect()
    }

    /// Conjugacy classes, each sorted, ordered by least element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for a in 0..self.n {
            if seen[a] {
                continue;
            }
            let mut cls: Vec<usize> = (0..self.n).map(|g| self.conj(g, a)).collect();
            cls.sort_unstable();
            cls.dedup();
            for &c in &cls {
                seen[c] = true;
            }
            out.push(cls);
        }
        out
    }

    /// Subgroup generated by a set of elements, sorted.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(a) = queue.pop_front() {
            for &g in gens {
                let b = self.mul(a, g);
                if !seen[b] {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
        (0..self.n).filter(|&x| seen[x]).collect()
    }

    /// A small generating set, chosen greedily by element index.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![0];
        for a in 1..self.n {
            if span.len() == self.n {
                break;
            }
            if span.binary_search(&a).is_err() {
                gens.push(a);
                span = self.generated(&gens);
            }
        }
        gens
    }

    /// Checks that `map` is a homomorphism into `target`.
    pub fn is_homomorphism(&self, target: &FiniteGroup, map: &[usize]) -> bool {
        map.len() == self.n
            && map.iter().all(|&x| x < target.n)
            && (0..self.n)
                .all(|a| (0..self.n).all(|b| map[self.mul(a, b)] == target.mul(map[a], map[b])))
    }

    /// Multiset of element orders, a cheap isomorphism invariant.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.n).map(|a| self.element_order(a)).collect();
        v.sort_unstable();
        v
    }

    /// An isomorphism `self → other` as an element map, if one exists.
    pub fn isomorphism_to(&self, other: &FiniteGroup) -> Option<Vec<usize>> {
        if self.n != other.n || self.order_profile() != other.order_profile() {
            return None;
        }
        if self.is_abelian() != other.is_abelian() {
            return None;
        }
        let gens = self.generators();
        let words = self.words_in(&gens);
        let mut images = Vec::with_capacity(gens.len());
        self.iso_search(other, &gens, &words, &mut images)
    }

    /// For each element, a word (sequence of generator positions) reaching it
    /// from the identity by right multiplication.
    fn words_in(&self, gens: &[usize]) -> Vec<Vec<usize>> {
        let mut words: Vec<Option<Vec<usize>>> = vec![None; self.n];
        words[0] = Some(Vec::new());
        let mut queue = VecDeque::from([0usize]);
        while let Some(a) = queue.pop_front() {
            for (k, &g) in gens.iter().enumerate() {
                let b = self.mul(a, g);
                if words[b].is_none() {
                    let mut w = words[a].clone().unwrap();
                    w.push(k);
                    words[b] = Some(w);
                    queue.push_back(b);
                }
            }
        }
        words.into_iter().map(Option::unwrap).collect()
    }

    fn iso_search(
        &self,
        other: &FiniteGroup,
        gens: &[usize],
        words: &[Vec<usize>],
        images: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        if images.len() == gens.len() {
            let map: Vec<usize> = words
                .iter()
                .map(|w| w.iter().fold(0, |acc, &k| other.mul(acc, images[k])))
                .collect();
            let mut hit = vec![false; other.n];
            for &m in &map {
                if hit[m] {
                    return None;
                }
                hit[m] = true;
            }
            return self.is_homomorphism(other, &map).then_some(map);
        }
        let want = self.element_order(gens[images.len()]);
        for c in 0..other.n {
            if other.element_order(c) == want {
                images.push(c);
                if let Some(m) = self.iso_search(other, gens, words, images) {
                    return Some(m);
                }
                images.pop();
            }
        }
        None
    }

    /// All automorphisms, as element maps.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let gens = self.generators();
        let words = self.words_in(&gens);
        let mut out = Vec::new();
        let mut images = Vec::new();
        self.aut_search(&gens, &words, &mut images, &mut out);
        out
    }

    fn aut_search(
        &self,
        gens: &[usize],
        words: &[Vec<usize>],
        images: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if images.len() == gens.len() {
            let map: Vec<usize> = words
                .iter()
                .map(|w| w.iter().fold(0, |acc, &k| self.mul(acc, images[k])))
                .collect();
            let mut hit = vec![false; self.n];
            for &m in &map {
                if hit[m] {
                    return;
                }
                hit[m] = true;
            }
            if self.is_homomorphism(self, &map) {
                out.push(map);
            }
            return;
        }
        let want = self.element_order(gens[images.len()]);
        for c in 0..self.n {
            if self.element_order(c) == want {
                images.push(c);
                self.aut_search(gens, words, images, out);
                images.pop();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructions_are_groups() {
        for g in [
            FiniteGroup::cyclic(5),
            FiniteGroup::dihedral(4),
            FiniteGroup::symmetric(3),
            FiniteGroup::dicyclic(2),
            FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(3)),
        ] {
            FiniteGroup::from_table(g.table_rows()).unwrap();
        }
    }

    #[test]
    fn s3_facts() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(s3.conjugacy_classes().len(), 3);
        assert_eq!(s3.automorphisms().len(), 6);
        assert!(s3.isomorphism_to(&FiniteGroup::dihedral(3)).is_some());
    }

    #[test]
    fn quaternion_not_dihedral() {
        let q8 = FiniteGroup::dicyclic(2);
        assert!(q8.isomorphism_to(&FiniteGroup::dihedral(4)).is_none());
        assert_eq!(q8.conjugacy_classes().len(), 5);
    }

    #[test]
    fn invalid_tables_rejected() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]]).is_err());
    }
}
