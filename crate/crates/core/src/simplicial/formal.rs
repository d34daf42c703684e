//! Eilenberg–Zilber normal form.
//!
//! Every simplex of a simplicial set is uniquely `η^* x` for a nondegenerate
//! simplex `x` and a monotone surjection `η: [n] ↠ [m]`. Storing the surjection
//! instead of a degeneracy word makes the normal form canonical by
//! construction: the word `s_{i1}...s_{ik}` (strictly decreasing) is recovered
//! as the set of positions `j` with `η(j) = η(j+1)`.

use std::fmt;

use crate::error::{Error, Result};

/// A nondegenerate simplex, addressed by dimension and listing index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub dim: usize,
    pub idx: usize,
}

impl Cell {
    pub fn new(dim: usize, idx: usize) -> Self {
        Cell { dim, idx }
    }
}

/// A monotone surjection `[n] ↠ [m]`, stored as its value list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Surjection(Vec<u16>);

impl Surjection {
    pub fn identity(m: usize) -> Self {
        Surjection((0..=m as u16).collect())
    }

    /// Builds a surjection from its values; they must be monotone, start at 0
    /// and increase by at most one per step.
    pub fn from_values(values: Vec<u16>) -> Option<Self> {
        if values.first() != Some(&0) {
            return None;
        }
        for w in values.windows(2) {
            if w[1] != w[0] && w[1] != w[0] + 1 {
                return None;
            }
        }
        Some(Surjection(values))
    }

    /// The surjection whose canonical degeneracy word is `word` (strictly
    /// decreasing) applied to an `m`-simplex.
    pub fn from_word(word: &[usize], m: usize) -> Option<Self> {
        if word.windows(2).any(|w| w[0] <= w[1]) {
            return None;
        }
        let n = m + word.len();
        if let Some(&top) = word.first() {
            if top >= n {
                return None;
            }
        }
        let vals = (0..=n)
            .map(|t| (t - word.iter().filter(|&&i| i < t).count()) as u16)
            .collect();
        Some(Surjection(vals))
    }

    pub fn values(&self) -> &[u16] {
        &self.0
    }

    /// Source dimension `n`.
    pub fn source_dim(&self) -> usize {
        self.0.len() - 1
    }

    /// Target dimension `m`.
    pub fn target_dim(&self) -> usize {
        *self.0.last().unwrap() as usize
    }

    pub fn is_identity(&self) -> bool {
        self.source_dim() == self.target_dim()
    }

    /// Strictly decreasing degeneracy indices.
    pub fn word(&self) -> Vec<usize> {
        let mut w: Vec<usize> = self
            .0
            .windows(2)
            .enumerate()
            .filter(|(_, p)| p[0] == p[1])
            .map(|(j, _)| j)
            .collect();
        w.reverse();
        w
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &Surjection) -> Surjection {
        Surjection(inner.0.iter().map(|&t| self.0[t as usize]).collect())
    }

    /// `self ∘ σ_j`: the surjection of `s_j` applied to `self^* x`.
    pub fn degenerate(&self, j: usize) -> Surjection {
        let mut v = self.0.clone();
        v.insert(j, v[j]);
        Surjection(v)
    }

    /// `self ∘ δ_i`, factored as `δ_k ∘ η'`. Returns `η'` and `Some(k)` when
    /// the composite is no longer surjective.
    pub fn face(&self, i: usize) -> (Surjection, Option<usize>) {
        let mut v = self.0.clone();
        let removed = v.remove(i);
        if v.contains(&removed) {
            (Surjection(v), None)
        } else {
            for x in v.iter_mut() {
                if *x > removed {
                    *x -= 1;
                }
            }
            (Surjection(v), Some(removed as usize))
        }
    }

    /// All monotone surjections `[n] ↠ [m]`, in lexicographic order of values.
    pub fn all(n: usize, m: usize) -> Vec<Surjection> {
        if m > n {
            return Vec::new();
        }
        let mut out: Vec<Surjection> = (0u32..1 << n)
            .filter(|mask| mask.count_ones() as usize == m)
            .map(|mask| {
                let mut v = Vec::with_capacity(n + 1);
                let mut cur = 0u16;
                v.push(0);
                for step in 0..n {
                    if mask >> step & 1 == 1 {
                        cur += 1;
                    }
                    v.push(cur);
                }
                Surjection(v)
            })
            .collect();
        out.sort();
        out
    }
}

/// A possibly degenerate simplex in Eilenberg–Zilber normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Formal {
    pub surj: Surjection,
    pub base: Cell,
}

impl Formal {
    pub fn nondegenerate(base: Cell) -> Self {
        Formal {
            surj: Surjection::identity(base.dim),
            base,
        }
    }

    pub fn dim(&self) -> usize {
        self.surj.source_dim()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.surj.is_identity()
    }

    /// The nondegenerate base when the simplex is itself nondegenerate.
    pub fn as_cell(&self) -> Option<Cell> {
        if self.is_degenerate() {
            None
        } else {
            Some(self.base)
        }
    }

    pub fn degenerate(&self, j: usize) -> Formal {
        Formal {
            surj: self.surj.degenerate(j),
            base: self.base,
        }
    }

    /// `η^* x` with `η` applied after this simplex's own surjection.
    pub fn pull(&self, eta: &Surjection) -> Formal {
        Formal {
            surj: self.surj.after(eta),
            base: self.base,
        }
    }
}

/// Renders a formal simplex as `s_{i1}...s_{ik}|base`, or `base` when
/// nondegenerate.
pub struct FormalDisplay<'a> {
    pub word: Vec<usize>,
    pub base: &'a str,
}

impl fmt::Display for FormalDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str(self.base);
        }
        for i in &self.word {
            write!(f, "s_{i}")?;
        }
        write!(f, "|{}", self.base)
    }
}

/// Splits a formal-simplex string into its degeneracy word and base id.
/// A string not starting with `s_` is a bare identifier.
pub fn parse_formal(text: &str) -> Result<(Vec<usize>, &str)> {
    let bad = |message: &str| Error::Parse {
        location: format!("formal `{text}`"),
        message: message.into(),
    };
    if !text.starts_with("s_") {
        return Ok((Vec::new(), text));
    }
    let mut indices = Vec::new();
    let mut rest = text;
    while let Some(tail) = rest.strip_prefix("s_") {
        let digits = tail.chars().take_while(|c| c.is_ascii_digit()).count();
        if digits == 0 {
            return Err(bad("missing degeneracy index"));
        }
        let idx: usize = tail[..digits]
            .parse()
            .map_err(|_| bad("degeneracy index out of range"))?;
        indices.push(idx);
        rest = &tail[digits..];
    }
    let Some(base) = rest.strip_prefix('|') else {
        return Err(bad(
            "degeneracy word must be a sequence of s_<index> followed by `|`",
        ));
    };
    if base.is_empty() {
        return Err(bad("empty base identifier"));
    }
    Ok((indices, base))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_round_trip() {
        let s = Surjection::from_word(&[2, 0], 1).unwrap();
        assert_eq!(s.values(), &[0, 0, 1, 1]);
        assert_eq!(s.word(), vec![2, 0]);
        let v = Surjection::from_word(&[1, 0], 0).unwrap();
        assert_eq!(v.values(), &[0, 0, 0]);
    }

    #[test]
    fn non_decreasing_word_rejected() {
        assert!(Surjection::from_word(&[0, 1], 0).is_none());
        assert!(Surjection::from_word(&[1, 1], 0).is_none());
        // s_2 on a vertex is out of range
        assert!(Surjection::from_word(&[2], 0).is_none());
    }

    #[test]
    fn face_of_degenerate() {
        // d_0 s_0 x = x
        let s = Surjection::identity(1).degenerate(0);
        let (eta, k) = s.face(0);
        assert!(k.is_none());
        assert!(eta.is_identity());
        // d_2 s_0 on an edge [a,b]: [a,a,b] -> [a,a] = s_0 d_1
        let (eta, k) = s.face(2);
        assert_eq!(k, Some(1));
        assert_eq!(eta.values(), &[0, 0]);
    }

    #[test]
    fn surjection_counts_are_binomial() {
        for n in 0..7 {
            for m in 0..=n {
                let expect = (0..m).fold(1usize, |acc, i| acc * (n - i) / (i + 1));
                assert_eq!(Surjection::all(n, m).len(), expect, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn parse_formal_strings() {
        assert_eq!(parse_formal("v").unwrap(), (vec![], "v"));
        assert_eq!(parse_formal("s_1s_0|v").unwrap(), (vec![1, 0], "v"));
        assert_eq!(parse_formal("s_12|x").unwrap(), (vec![12], "x"));
        assert_eq!(parse_formal("[1|2]").unwrap(), (vec![], "[1|2]"));
        assert!(parse_formal("s_1x|y").is_err());
        assert!(parse_formal("s_|x").is_err());
    }
}
