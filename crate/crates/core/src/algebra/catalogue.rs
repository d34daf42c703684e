//! Finite groups up to isomorphism, by order.
//!
//! Built from direct products, dicyclic groups and split extensions
//! `N ⋊ Z/k` over every smaller catalogued `N` and every automorphism of
//! order dividing `k`, deduplicated by isomorphism. This reaches every group
//! of order at most 16. Extra groups can be supplied as multiplication
//! tables in the directory named by `PHK_CATALOGUE_DIR` (one `*.txt` file per
//! group, an `n×n` integer grid with identity 0).

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::OnceLock;

use super::group::FiniteGroup;
use crate::error::{Error, Result};

/// Orders up to which the built-in catalogue is complete.
pub const COMPLETE_UP_TO: usize = 16;

#[derive(Clone, Debug)]
pub struct CatalogueEntry {
    pub name: String,
    pub group: FiniteGroup,
}

fn name_abelian(orders: &[usize]) -> String {
    orders
        .iter()
        .map(|o| format!("C{o}"))
        .collect::<Vec<_>>()
        .join("x")
}

fn builtin(max_order: usize) -> Vec<Vec<CatalogueEntry>> {
    let mut by_order: Vec<Vec<CatalogueEntry>> = vec![Vec::new(); max_order + 1];
    let push = |by_order: &mut Vec<Vec<CatalogueEntry>>, name: String, g: FiniteGroup| {
        let n = g.order();
        if n > max_order {
            return;
        }
        if by_order[n]
            .iter()
            .any(|e| e.group.isomorphism_to(&g).is_some())
        {
            return;
        }
        by_order[n].push(CatalogueEntry { name, group: g });
    };
    for n in 1..=max_order {
        // abelian groups by invariant factors
        for parts in abelian_types(n) {
            let g = parts.iter().fold(FiniteGroup::trivial(), |acc, &m| {
                acc.direct_product(&FiniteGroup::cyclic(m))
            });
            let name = if n == 1 {
                "1".to_string()
            } else {
                name_abelian(&parts)
            };
            push(&mut by_order, name, g);
        }
        if n % 2 == 0 && n >= 6 {
            push(
                &mut by_order,
                format!("D{}", n / 2),
                FiniteGroup::dihedral(n / 2),
            );
        }
        if n % 4 == 0 && n >= 8 {
            let name = if n == 8 {
                "Q8".to_string()
            } else {
                format!("Dic{}", n / 4)
            };
            push(&mut by_order, name, FiniteGroup::dicyclic(n / 4));
        }
        // split extensions N ⋊ Z/k, k ≥ 2
        for k in 2..=n {
            if n % k != 0 || n / k < 2 {
                continue;
            }
            let m = n / k;
            let bases: Vec<CatalogueEntry> = by_order[m].clone();
            for base in bases {
                for phi in base.group.automorphisms() {
                    let ord = order_of_perm(&phi);
                    if ord == 1 || k % ord != 0 {
                        continue;
                    }
                    let phi32: Vec<u32> = phi.iter().map(|&x| x as u32).collect();
                    let g = FiniteGroup::semidirect_cyclic(&base.group, k, &phi32);
                    let name = format!("({}):C{}", base.name, k);
                    push(&mut by_order, name, g);
                }
            }
        }
        // direct products of nonabelian catalogued groups with cyclic groups
        for d in 2..n {
            if n % d != 0 {
                continue;
            }
            let bases: Vec<CatalogueEntry> = by_order[d].clone();
            for base in bases.into_iter().filter(|b| !b.group.is_abelian()) {
                for other in abelian_types(n / d) {
                    let c = other.iter().fold(FiniteGroup::trivial(), |acc, &m| {
                        acc.direct_product(&FiniteGroup::cyclic(m))
                    });
                    push(
                        &mut by_order,
                        format!("{}x{}", base.name, name_abelian(&other)),
                        base.group.direct_product(&c),
                    );
                }
            }
        }
    }
    for (n, list) in by_order.iter_mut().enumerate() {
        rename_known(n, list);
    }
    by_order
}

fn rename_known(n: usize, list: &mut [CatalogueEntry]) {
    let known = [
        (6, "S3", FiniteGroup::symmetric(3)),
        (12, "A4", alternating4()),
        (24, "S4", FiniteGroup::symmetric(4)),
    ];
    for (order, name, g) in known {
        if order == n {
            for e in list.iter_mut() {
                if e.group.isomorphism_to(&g).is_some() {
                    e.name = name.to_string();
                }
            }
        }
    }
    if n >= 8 {
        for e in list.iter_mut() {
            if e.group
                .isomorphism_to(&FiniteGroup::dihedral(n / 2))
                .is_some()
            {
                e.name = format!("D{}", n / 2);
            }
        }
    }
}

fn order_of_perm(p: &[usize]) -> usize {
    let mut k = 1;
    let mut q = p.to_vec();
    while q.iter().enumerate().any(|(i, &x)| i != x) {
        q = q.iter().map(|&x| p[x]).collect();
        k += 1;
    }
    k
}

/// The alternating group on four letters.
pub fn alternating4() -> FiniteGroup {
    FiniteGroup::from_permutations(4, &[vec![1, 2, 0, 3], vec![0, 2, 3, 1]]).0
}

/// Invariant-factor decompositions of abelian groups of order `n`, each
/// listed as cyclic orders `d₁ | d₂ | ...`.
pub fn abelian_types(n: usize) -> Vec<Vec<usize>> {
    if n == 1 {
        return vec![vec![]];
    }
    let f = super::finab::factorize(n as u64);
    // partitions of each prime exponent
    let mut per_prime: Vec<Vec<Vec<u32>>> = Vec::new();
    for &(_, k) in &f {
        per_prime.push(partitions(k, k));
    }
    let mut out = Vec::new();
    let mut choice = vec![0usize; f.len()];
    loop {
        let mut orders = Vec::new();
        for (i, &(p, _)) in f.iter().enumerate() {
            for &k in &per_prime[i][choice[i]] {
                orders.push(p.pow(k));
            }
        }
        let fa = super::finab::FinAb::new(orders, 0);
        out.push(fa.factors().iter().map(|&d| d as usize).collect());
        let mut i = 0;
        loop {
            if i == f.len() {
                out.sort();
                return out;
            }
            choice[i] += 1;
            if choice[i] < per_prime[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Parses an `n×n` multiplication table given as whitespace-separated rows.
pub fn parse_table(text: &str) -> Result<FiniteGroup> {
    let mut rows = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row: std::result::Result<Vec<u32>, _> =
            line.split_whitespace().map(str::parse::<u32>).collect();
        rows.push(row.map_err(|e| Error::Parse {
            location: format!("line {}", ln + 1),
            message: e.to_string(),
        })?);
    }
    FiniteGroup::from_table(rows)
}

/// Renders a multiplication table in the text format read by [`parse_table`].
pub fn format_table(g: &FiniteGroup) -> String {
    let mut s = String::new();
    for row in g.table_rows() {
        let r: Vec<String> = row.iter().map(u32::to_string).collect();
        s.push_str(&r.join(" "));
        s.push('\n');
    }
    s
}

/// Catalogue of groups of order at most `max_order`, sorted by order and
/// construction order within each order.
#[derive(Clone, Debug)]
pub struct Catalogue {
    by_order: Vec<Vec<CatalogueEntry>>,
}

impl Catalogue {
    pub fn builtin(max_order: usize) -> Catalogue {
        Catalogue {
            by_order: builtin(max_order),
        }
    }

    /// Adds every table found in `dir` whose group is not yet present.
    pub fn load_dir(&mut self, dir: &Path) -> Result<()> {
        let mut files: Vec<_> = std::fs::read_dir(dir)
            .map_err(|e| Error::Parse {
                location: dir.display().to_string(),
                message: e.to_string(),
            })?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "txt"))
            .collect();
        files.sort();
        for path in files {
            let text = std::fs::read_to_string(&path).map_err(|e| Error::Parse {
                location: path.display().to_string(),
                message: e.to_string(),
            })?;
            let g = parse_table(&text)?;
            let n = g.order();
            if self.by_order.len() <= n {
                self.by_order.resize(n + 1, Vec::new());
            }
            if !self.by_order[n]
                .iter()
                .any(|e| e.group.isomorphism_to(&g).is_some())
            {
                let name = path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default();
                self.by_order[n].push(CatalogueEntry { name, group: g });
            }
        }
        Ok(())
    }

    pub fn max_order(&self) -> usize {
        self.by_order.len().saturating_sub(1)
    }

    pub fn of_order(&self, n: usize) -> &[CatalogueEntry] {
        self.by_order.get(n).map_or(&[], Vec::as_slice)
    }

    /// All groups of order `≤ n`, in catalogue order.
    pub fn up_to(&self, n: usize) -> impl Iterator<Item = &CatalogueEntry> {
        self.by_order.iter().take(n + 1).flatten()
    }

    /// Catalogue name of a group isomorphic to `g`.
    pub fn identify(&self, g: &FiniteGroup) -> Option<&str> {
        self.of_order(g.order())
            .iter()
            .find(|e| e.group.isomorphism_to(g).is_some())
            .map(|e| e.name.as_str())
    }
}

/// The shared catalogue: the built-in groups of order ≤ 16 plus any tables
/// from `PHK_CATALOGUE_DIR`.
pub fn catalogue() -> &'static Catalogue {
    static CAT: OnceLock<Catalogue> = OnceLock::new();
    CAT.get_or_init(|| {
        let mut c = Catalogue::builtin(COMPLETE_UP_TO);
        if let Some(dir) = std::env::var_os("PHK_CATALOGUE_DIR") {
            // unreadable directories leave the built-in catalogue in place
            let _ = c.load_dir(Path::new(&dir));
        }
        c
    })
}

/// Names a group of order ≤ 16 (or from the extra tables), falling back to
/// its order.
pub fn group_name(g: &FiniteGroup) -> String {
    catalogue()
        .identify(g)
        .map(str::to_string)
        .unwrap_or_else(|| format!("G{}", g.order()))
}

/// Looks up a group by catalogue name, or builds `Cn`, `Dn`, `Sn` on demand.
pub fn group_by_name(name: &str) -> Result<FiniteGroup> {
    for e in catalogue().up_to(catalogue().max_order()) {
        if e.name == name {
            return Ok(e.group.clone());
        }
    }
    let num = |s: &str| s.parse::<usize>().ok().filter(|&n| n >= 1);
    if let Some(n) = name.strip_prefix('C').and_then(num) {
        return Ok(FiniteGroup::cyclic(n));
    }
    if let Some(n) = name.strip_prefix('D').and_then(num) {
        return Ok(FiniteGroup::dihedral(n));
    }
    if let Some(n) = name.strip_prefix('S').and_then(num) {
        if n <= 6 {
            return Ok(FiniteGroup::symmetric(n));
        }
    }
    if let Some(n) = name.strip_prefix("Z/").and_then(num) {
        return Ok(FiniteGroup::cyclic(n));
    }
    Err(Error::InvalidGroup(format!("unknown group name `{name}`")))
}

pub(crate) type OrderCounts = BTreeMap<usize, usize>;

/// Number of catalogued groups per order.
pub fn counts(c: &Catalogue) -> OrderCounts {
    (1..=c.max_order())
        .map(|n| (n, c.of_order(n).len()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_type_counts() {
        assert_eq!(abelian_types(8).len(), 3);
        assert_eq!(abelian_types(12).len(), 2);
        assert_eq!(abelian_types(16).len(), 5);
        assert_eq!(abelian_types(1), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn names() {
        assert_eq!(group_name(&FiniteGroup::symmetric(3)), "S3");
        assert_eq!(group_name(&FiniteGroup::cyclic(4)), "C4");
        assert_eq!(group_name(&FiniteGroup::dicyclic(2)), "Q8");
        assert_eq!(group_by_name("S3").unwrap().order(), 6);
    }
}
