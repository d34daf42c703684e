//! Subgroups of small index in a finitely presented group, by coset tables.
//!
//! Complete coset tables are enumerated by backtracking: the first undefined
//! entry in row-major order is set to an existing coset or a fresh one, and
//! relators are scanned at every coset to deduce forced entries or reject the
//! branch. Tables built this way are standardized, so each subgroup appears
//! exactly once. Normal subgroups give the finite quotients of the group.

use sha2::{Digest, Sha256};

use super::group::FiniteGroup;
use super::presentation::Presentation;
use crate::error::Result;

/// A complete coset table for the right action on cosets of a subgroup;
/// `table[c][2g]` is `c·g` and `table[c][2g+1]` is `c·g⁻¹`. Coset 0 is the
/// subgroup itself.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CosetTable {
    pub ngens: usize,
    pub table: Vec<Vec<u32>>,
}

fn col(letter: i32) -> usize {
    let g = letter.unsigned_abs() as usize - 1;
    if letter > 0 {
        2 * g
    } else {
        2 * g + 1
    }
}

type Partial = Vec<Vec<Option<u32>>>;

fn scan(rel: &[i32], c: u32, t: &mut Partial) -> std::result::Result<bool, ()> {
    let n = rel.len();
    let mut f = c;
    let mut i = 0;
    while i < n {
        match t[f as usize][col(rel[i])] {
            Some(x) => {
                f = x;
                i += 1;
            }
            None => break,
        }
    }
    if i == n {
        return if f == c { Ok(false) } else { Err(()) };
    }
    let mut b = c;
    let mut j = n;
    while j > i {
        match t[b as usize][col(-rel[j - 1])] {
            Some(x) => {
                b = x;
                j -= 1;
            }
            None => break,
        }
    }
    if j == i {
        return if f == b { Ok(false) } else { Err(()) };
    }
    if j == i + 1 {
        // exactly one gap: f · rel[i] = b
        let cf = col(rel[i]);
        let cb = col(-rel[i]);
        if t[f as usize][cf].is_some_and(|x| x != b) || t[b as usize][cb].is_some_and(|x| x != f) {
            return Err(());
        }
        t[f as usize][cf] = Some(b);
        t[b as usize][cb] = Some(f);
        return Ok(true);
    }
    Ok(false)
}

fn deduce(rels: &[Vec<i32>], t: &mut Partial) -> bool {
    loop {
        let mut changed = false;
        for c in 0..t.len() as u32 {
            for r in rels {
                match scan(r, c, t) {
                    Err(()) => return false,
                    Ok(true) => changed = true,
                    Ok(false) => {}
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

/// All subgroups of index at most `max_index`, as standardized coset
/// tables, sorted by index and then by table.
pub fn low_index_subgroups(p: &Presentation, max_index: usize) -> Vec<CosetTable> {
    let mut out: Vec<Partial> = Vec::new();
    if max_index == 0 {
        return Vec::new();
    }
    let width = 2 * p.ngens;
    let rels: Vec<Vec<i32>> = p
        .relators
        .iter()
        .filter(|r| !r.is_empty())
        .cloned()
        .collect();
    let mut t: Partial = vec![vec![None; width]];
    if deduce(&rels, &mut t) {
        search(&rels, width, max_index, t, &mut out);
    }
    let mut tables: Vec<CosetTable> = out
        .into_iter()
        .map(|t| CosetTable {
            ngens: p.ngens,
            table: t
                .into_iter()
                .map(|row| row.into_iter().map(Option::unwrap).collect())
                .collect(),
        })
        .collect();
    tables.sort_by(|a, b| {
        a.index()
            .cmp(&b.index())
            .then_with(|| a.table.cmp(&b.table))
    });
    tables
}

fn search(rels: &[Vec<i32>], width: usize, max: usize, t: Partial, out: &mut Vec<Partial>) {
    let mut first = None;
    'find: for (c, row) in t.iter().enumerate() {
        for (k, e) in row.iter().enumerate() {
            if e.is_none() {
                first = Some((c, k));
                break 'find;
            }
        }
    }
    let Some((c, k)) = first else {
        out.push(t);
        return;
    };
    let inv = k ^ 1;
    let n = t.len();
    for target in 0..=n {
        if target == max {
            break;
        }
        let mut t2 = t.clone();
        if target == n {
            t2.push(vec![None; width]);
        } else if t2[target][inv].is_some() {
            continue;
        }
        t2[c][k] = Some(target as u32);
        t2[target][inv] = Some(c as u32);
        if deduce(rels, &mut t2) {
            search(rels, width, max, t2, out);
        }
    }
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.table.len()
    }

    /// `c · g` for a generator letter (signed, 1-based).
    pub fn act(&self, c: usize, letter: i32) -> usize {
        self.table[c][col(letter)] as usize
    }

    pub fn act_word(&self, c: usize, w: &[i32]) -> usize {
        w.iter().fold(c, |x, &l| self.act(x, l))
    }

    /// Permutation of cosets induced by generator `g` (right action).
    pub fn generator_permutation(&self, g: usize) -> Vec<u32> {
        self.table.iter().map(|row| row[2 * g]).collect()
    }

    /// For each coset, a word taking coset 0 to it (breadth-first, scan order).
    pub fn transversal(&self) -> Vec<Vec<i32>> {
        let n = self.index();
        let mut words: Vec<Option<Vec<i32>>> = vec![None; n];
        words[0] = Some(Vec::new());
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            for k in 0..2 * self.ngens {
                let d = self.table[c][k] as usize;
                if words[d].is_none() {
                    let g = (k / 2) as i32 + 1;
                    let mut w = words[c].clone().unwrap();
                    w.push(if k % 2 == 0 { g } else { -g });
                    words[d] = Some(w);
                    queue.push_back(d);
                }
            }
        }
        words.into_iter().map(Option::unwrap).collect()
    }

    /// The table re-rooted at coset `root` and standardized; its coset 0 is
    /// the conjugate subgroup stabilizing `root`.
    pub fn rerooted(&self, root: usize) -> CosetTable {
        let n = self.index();
        let mut new_of = vec![u32::MAX; n];
        let mut old_of = Vec::with_capacity(n);
        new_of[root] = 0;
        old_of.push(root);
        let mut i = 0;
        while i < old_of.len() {
            let c = old_of[i];
            for k in 0..2 * self.ngens {
                let d = self.table[c][k] as usize;
                if new_of[d] == u32::MAX {
                    new_of[d] = old_of.len() as u32;
                    old_of.push(d);
                }
            }
            i += 1;
        }
        let table = old_of
            .iter()
            .map(|&c| self.table[c].iter().map(|&d| new_of[d as usize]).collect())
            .collect();
        CosetTable {
            ngens: self.ngens,
            table,
        }
    }

    /// Canonical representative of the conjugacy class of the subgroup.
    pub fn conjugacy_canonical(&self) -> CosetTable {
        (0..self.index())
            .map(|c| self.rerooted(c))
            .min()
            .expect("nonempty table")
    }

    /// Normal iff re-rooting at any coset gives back the same table.
    pub fn is_normal(&self) -> bool {
        (0..self.index()).all(|c| self.rerooted(c) == *self)
    }

    /// Whether this subgroup is contained in the subgroup of `other`:
    /// sending coset 0 to coset 0 must extend to a map of π-sets.
    pub fn contained_in(&self, other: &CosetTable) -> bool {
        let n = self.index();
        let mut phi = vec![u32::MAX; n];
        phi[0] = 0;
        let mut stack = vec![0usize];
        while let Some(c) = stack.pop() {
            for k in 0..2 * self.ngens {
                let d = self.table[c][k] as usize;
                let img = other.table[phi[c] as usize][k];
                if phi[d] == u32::MAX {
                    phi[d] = img;
                    stack.push(d);
                } else if phi[d] != img {
                    return false;
                }
            }
        }
        true
    }

    /// SHA-256 of the table, as lowercase hex.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.ngens as u64).to_le_bytes());
        h.update((self.index() as u64).to_le_bytes());
        for row in &self.table {
            for &x in row {
                h.update(x.to_le_bytes());
            }
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    /// The quotient group for a normal subgroup: element `c` is the coset
    /// `Hw_c`, with `c·d` = coset of `w_c w_d`. Returns the group and the
    /// images of the generators.
    pub fn quotient_group(&self) -> Result<(FiniteGroup, Vec<usize>)> {
        let words = self.transversal();
        let n = self.index();
        let table: Vec<Vec<u32>> = (0..n)
            .map(|c| (0..n).map(|d| self.act_word(c, &words[d]) as u32).collect())
            .collect();
        let g = FiniteGroup::from_table(table)?;
        let images = (0..self.ngens)
            .map(|k| self.table[0][2 * k] as usize)
            .collect();
        Ok((g, images))
    }
}

/// An epimorphism onto a finite group, identified by its kernel.
#[derive(Clone, Debug)]
pub struct EpiClass {
    pub target: FiniteGroup,
    /// Images of the presentation's generators.
    pub images: Vec<usize>,
    pub kernel: CosetTable,
    pub fingerprint: String,
}

impl EpiClass {
    pub fn index(&self) -> usize {
        self.target.order()
    }

    /// Whether this kernel is contained in `other`'s, i.e. `other` factors
    /// through `self`.
    pub fn refines(&self, other: &EpiClass) -> bool {
        self.kernel.contained_in(&other.kernel)
    }
}

/// One epimorphism per normal subgroup of index at most `max_order`,
/// sorted by index and then by kernel table.
pub fn enumerate_finite_quotients(p: &Presentation, max_order: usize) -> Result<Vec<EpiClass>> {
    let mut out = Vec::new();
    for t in low_index_subgroups(p, max_order) {
        if t.is_normal() {
            let (target, images) = t.quotient_group()?;
            let fingerprint = t.fingerprint();
            out.push(EpiClass {
                target,
                images,
                kernel: t,
                fingerprint,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::presentation::evaluate;

    #[test]
    fn integers_have_one_subgroup_per_index() {
        let z = Presentation::free(1);
        let subs = low_index_subgroups(&z, 4);
        assert_eq!(
            subs.iter().map(CosetTable::index).collect::<Vec<_>>(),
            vec![1, 2, 3, 4]
        );
        let q = enumerate_finite_quotients(&z, 4).unwrap();
        assert_eq!(q.len(), 4);
        assert!(q.iter().all(|e| e.target.is_abelian()));
    }

    #[test]
    fn free_group_rank_two_index_two() {
        // F_2 has 3 subgroups of index 2 and 13 of index 3
        let f2 = Presentation::free(2);
        let subs = low_index_subgroups(&f2, 3);
        let count = |n| subs.iter().filter(|t| t.index() == n).count();
        assert_eq!((count(1), count(2), count(3)), (1, 3, 13));
    }

    #[test]
    fn quotients_are_epimorphisms() {
        let p: Presentation = "2: a^2, b^3, abab".parse().unwrap(); // S3
        let q = enumerate_finite_quotients(&p, 6).unwrap();
        let orders: Vec<usize> = q.iter().map(EpiClass::index).collect();
        assert_eq!(orders, vec![1, 2, 6]);
        for e in &q {
            for r in &p.relators {
                assert_eq!(evaluate(&e.target, &e.images, r), 0);
            }
            assert_eq!(e.target.generated(&e.images).len(), e.index());
        }
        assert!(q[2].refines(&q[1]) && q[1].refines(&q[0]));
        assert!(!q[0].refines(&q[1]));
    }
}
