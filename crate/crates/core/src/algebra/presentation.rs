//! Finitely presented groups: words, abelianization, Tietze simplification
//! and homomorphisms into finite groups.
//!
//! Text form: `<generator count>: <relator>, <relator>, ...`, with
//! generators written `a`, `b`, `c`, ... (or `g27`, `g28`, ... past `z`),
//! optionally raised to an integer power as in `b^-1` or `a^3`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use super::finab::{cokernel, FinAb};
use super::group::FiniteGroup;
use super::snf::IntMatrix;
use crate::error::{Error, Result};

/// A word: `+k` is generator `k-1`, `-k` its inverse.
pub type Word = Vec<i32>;

pub fn invert(w: &[i32]) -> Word {
    w.iter().rev().map(|&x| -x).collect()
}

pub fn free_reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

/// Free and cyclic reduction.
pub fn cyclic_reduce(w: &[i32]) -> Word {
    let mut w = free_reduce(w);
    while w.len() >= 2 && w[0] == -w[w.len() - 1] {
        w.pop();
        w.remove(0);
    }
    w
}

/// Least cyclic permutation of `w` or of its inverse; identifies relators
/// that define the same normal closure.
pub fn canonical_relator(w: &[i32]) -> Word {
    let w = cyclic_reduce(w);
    if w.is_empty() {
        return w;
    }
    let inv = invert(&w);
    let mut best = w.clone();
    for cand in [&w, &inv] {
        for s in 0..cand.len() {
            let rot: Word = cand[s..].iter().chain(&cand[..s]).copied().collect();
            if rot < best {
                best = rot;
            }
        }
    }
    best
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub ngens: usize,
    pub relators: Vec<Word>,
}

fn letter(k: usize) -> String {
    if k < 26 {
        ((b'a' + k as u8) as char).to_string()
    } else {
        format!("g{}", k + 1)
    }
}

pub fn format_word(w: &[i32]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let mut s = String::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        let run = (j - i) as i64;
        let g = w[i].unsigned_abs() as usize - 1;
        let e = if w[i] > 0 { run } else { -run };
        s.push_str(&letter(g));
        if e != 1 {
            s.push_str(&format!("^{e}"));
        }
        i = j;
    }
    s
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| format_word(r)).collect();
        write!(f, "{}: {}", self.ngens, rels.join(", "))
    }
}

pub fn parse_word(s: &str, ngens: usize) -> Result<Word> {
    let err = |pos: usize, msg: &str| Error::Parse {
        location: format!("word `{s}` position {}", pos + 1),
        message: msg.to_string(),
    };
    let b = s.as_bytes();
    let mut i = 0;
    let mut out = Word::new();
    if s.trim() == "1" {
        return Ok(out);
    }
    while i < b.len() {
        let c = b[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let gen = if c == b'g' && i + 1 < b.len() && b[i + 1].is_ascii_digit() {
            i += 1;
            let s0 = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let k: usize = s[s0..i].parse().map_err(|_| err(start, "bad generator"))?;
            if k == 0 {
                return Err(err(start, "generators are numbered from 1"));
            }
            k - 1
        } else if c.is_ascii_lowercase() {
            i += 1;
            (c - b'a') as usize
        } else {
            return Err(err(i, "expected a generator letter"));
        };
        if gen >= ngens {
            return Err(err(start, "generator out of range"));
        }
        let mut exp: i64 = 1;
        if i < b.len() && b[i] == b'^' {
            i += 1;
            let s0 = i;
            if i < b.len() && b[i] == b'-' {
                i += 1;
            }
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            exp = s[s0..i].parse().map_err(|_| err(s0, "bad exponent"))?;
        }
        let x = gen as i32 + 1;
        for _ in 0..exp.unsigned_abs() {
            out.push(if exp < 0 { -x } else { x });
        }
    }
    Ok(out)
}

impl FromStr for Presentation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Presentation> {
        let (n, rest) = s.split_once(':').ok_or_else(|| Error::Parse {
            location: "presentation".into(),
            message: "expected `<generator count>: <relators>`".into(),
        })?;
        let ngens: usize = n.trim().parse().map_err(|_| Error::Parse {
            location: "presentation".into(),
            message: "bad generator count".into(),
        })?;
        let mut relators = Vec::new();
        for part in rest.split(',') {
            if part.trim().is_empty() {
                continue;
            }
            relators.push(parse_word(part, ngens)?);
        }
        Presentation::new(ngens, relators)
    }
}

/// A presentation after simplification, with each original generator
/// expressed as a word in the new generators.
#[derive(Clone, Debug)]
pub struct Simplified {
    pub presentation: Presentation,
    pub substitution: Vec<Word>,
}

impl Simplified {
    /// Images of the original generators, given images of the new ones.
    pub fn pull_images(&self, g: &FiniteGroup, images: &[usize]) -> Vec<usize> {
        self.substitution
            .iter()
            .map(|w| evaluate(g, images, w))
            .collect()
    }
}

/// Value of a word under generator images.
pub fn evaluate(g: &FiniteGroup, images: &[usize], w: &[i32]) -> usize {
    w.iter().fold(0, |acc, &x| {
        let a = images[x.unsigned_abs() as usize - 1];
        g.mul(acc, if x > 0 { a } else { g.inv(a) })
    })
}

impl Presentation {
    pub fn new(ngens: usize, relators: Vec<Word>) -> Result<Presentation> {
        for r in &relators {
            if r.iter()
                .any(|&x| x == 0 || x.unsigned_abs() as usize > ngens)
            {
                return Err(Error::InvalidGroup("relator letter out of range".into()));
            }
        }
        Ok(Presentation { ngens, relators })
    }

    pub fn free(ngens: usize) -> Presentation {
        Presentation {
            ngens,
            relators: Vec::new(),
        }
    }

    /// Relator exponent-sum matrix (generators × relators).
    pub fn exponent_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.ngens, self.relators.len());
        for (j, r) in self.relators.iter().enumerate() {
            for &x in r {
                let g = x.unsigned_abs() as usize - 1;
                m.add_to(g, j, x.signum() as i64);
            }
        }
        m
    }

    /// The abelianized group, `Z^gens / (relator exponent vectors)`.
    pub fn abelianization(&self) -> FinAb {
        cokernel(&self.exponent_matrix())
    }

    /// Tietze simplification: repeatedly eliminate a generator occurring
    /// exactly once in some relator, and drop trivial or duplicate relators.
    pub fn simplify(&self) -> Simplified {
        let n = self.ngens;
        let mut rels: Vec<Word> = self.relators.iter().map(|r| cyclic_reduce(r)).collect();
        // subst[g] = word in original generator letters for eliminated g
        let mut subst: Vec<Option<Word>> = vec![None; n];
        loop {
            rels.retain(|r| !r.is_empty());
            // index generator -> relators containing it
            let mut best: Option<(usize, usize, usize)> = None; // (len, rel, gen)
            for (ri, r) in rels.iter().enumerate() {
                let mut count: HashMap<usize, usize> = HashMap::new();
                for &x in r {
                    *count.entry(x.unsigned_abs() as usize - 1).or_default() += 1;
                }
                for (&g, &c) in &count {
                    if c == 1 {
                        let key = (r.len(), ri, g);
                        if best.is_none_or(|b| key < b) {
                            best = Some(key);
                        }
                    }
                }
            }
            let Some((_, ri, g)) = best else { break };
            let r = rels.remove(ri);
            let pos = r
                .iter()
                .position(|&x| x.unsigned_abs() as usize - 1 == g)
                .unwrap();
            // r = u x^s v = 1  =>  x^s = u^-1 v^-1  =>  x = (v u)^-s
            let u = &r[..pos];
            let v = &r[pos + 1..];
            let vu: Word = v.iter().chain(u).copied().collect();
            let value = if r[pos] > 0 { invert(&vu) } else { vu };
            let value = free_reduce(&value);
            let gx = g as i32 + 1;
            let sub = |w: &[i32]| -> Word {
                let mut out = Vec::with_capacity(w.len());
                for &x in w {
                    if x == gx {
                        out.extend_from_slice(&value);
                    } else if x == -gx {
                        out.extend(invert(&value));
                    } else {
                        out.push(x);
                    }
                }
                free_reduce(&out)
            };
            for rr in rels.iter_mut() {
                if rr.iter().any(|&x| x.unsigned_abs() as usize - 1 == g) {
                    *rr = cyclic_reduce(&sub(rr));
                }
            }
            for s in subst.iter_mut().flatten() {
                if s.iter().any(|&x| x.unsigned_abs() as usize - 1 == g) {
                    *s = sub(s);
                }
            }
            subst[g] = Some(value);
            let mut seen = std::collections::HashSet::new();
            rels.retain(|r| seen.insert(r.clone()));
        }
        // renumber surviving generators
        let survivors: Vec<usize> = (0..n).filter(|&g| subst[g].is_none()).collect();
        let mut renum = vec![0i32; n];
        for (k, &g) in survivors.iter().enumerate() {
            renum[g] = k as i32 + 1;
        }
        let map_word = |w: &[i32]| -> Word {
            w.iter()
                .map(|&x| {
                    let g = x.unsigned_abs() as usize - 1;
                    renum[g] * x.signum()
                })
                .collect()
        };
        let substitution = (0..n)
            .map(|g| match &subst[g] {
                Some(w) => map_word(w),
                None => vec![renum[g]],
            })
            .collect();
        let mut relators: Vec<Word> = rels
            .iter()
            .map(|r| canonical_relator(&map_word(r)))
            .collect();
        relators.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        relators.dedup();
        Simplified {
            presentation: Presentation {
                ngens: survivors.len(),
                relators,
            },
            substitution,
        }
    }

    /// All homomorphisms into `g`, as generator images, in lexicographic
    /// order of the image vectors.
    pub fn homomorphisms(&self, g: &FiniteGroup) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.for_each_homomorphism(g, |h| {
            out.push(h.to_vec());
            true
        });
        out.sort();
        out
    }

    /// Calls `f` on every homomorphism into `g` until it returns `false`.
    /// Relators with a single unassigned generator occurring once are solved
    /// for that generator instead of branching.
    pub fn for_each_homomorphism(&self, g: &FiniteGroup, mut f: impl FnMut(&[usize]) -> bool) {
        let mut by_gen: Vec<Vec<usize>> = vec![Vec::new(); self.ngens];
        for (ri, r) in self.relators.iter().enumerate() {
            let mut gens: Vec<usize> = r.iter().map(|&x| x.unsigned_abs() as usize - 1).collect();
            gens.sort_unstable();
            gens.dedup();
            for gg in gens {
                by_gen[gg].push(ri);
            }
        }
        let mut assign: Vec<Option<usize>> = vec![None; self.ngens];
        let mut images = vec![0; self.ngens];
        let mut stop = false;
        self.hom_search(g, &by_gen, &mut assign, &mut images, &mut f, &mut stop);
    }

    fn hom_search(
        &self,
        g: &FiniteGroup,
        by_gen: &[Vec<usize>],
        assign: &mut Vec<Option<usize>>,
        images: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]) -> bool,
        stop: &mut bool,
    ) {
        let Some(next) = assign.iter().position(Option::is_none) else {
            for (k, a) in assign.iter().enumerate() {
                images[k] = a.unwrap();
            }
            if !f(images) {
                *stop = true;
            }
            return;
        };
        for v in 0..g.order() {
            let mut trail = Vec::new();
            if self.assign_and_propagate(g, by_gen, assign, next, v, &mut trail) {
                self.hom_search(g, by_gen, assign, images, f, stop);
            }
            for t in trail {
                assign[t] = None;
            }
            if *stop {
                return;
            }
        }
    }

    fn assign_and_propagate(
        &self,
        g: &FiniteGroup,
        by_gen: &[Vec<usize>],
        assign: &mut [Option<usize>],
        gen: usize,
        value: usize,
        trail: &mut Vec<usize>,
    ) -> bool {
        assign[gen] = Some(value);
        trail.push(gen);
        let mut queue = vec![gen];
        while let Some(x) = queue.pop() {
            for &ri in &by_gen[x] {
                let r = &self.relators[ri];
                let mut unknown: Option<(usize, usize)> = None; // (gen, position)
                let mut nunknown = 0;
                for (pos, &l) in r.iter().enumerate() {
                    let gg = l.unsigned_abs() as usize - 1;
                    if assign[gg].is_none() {
                        nunknown += 1;
                        unknown = Some((gg, pos));
                    }
                }
                let val = |l: i32, assign: &[Option<usize>]| {
                    let a = assign[l.unsigned_abs() as usize - 1].unwrap();
                    if l > 0 {
                        a
                    } else {
                        g.inv(a)
                    }
                };
                match nunknown {
                    0 => {
                        let v = r.iter().fold(0, |acc, &l| g.mul(acc, val(l, assign)));
                        if v != 0 {
                            return false;
                        }
                    }
                    1 => {
                        let (ug, pos) = unknown.unwrap();
                        let u = r[..pos]
                            .iter()
                            .fold(0, |acc, &l| g.mul(acc, val(l, assign)));
                        let w = r[pos + 1..]
                            .iter()
                            .fold(0, |acc, &l| g.mul(acc, val(l, assign)));
                        // u x^s w = 1  =>  x^s = u^-1 w^-1
                        let xs = g.mul(g.inv(u), g.inv(w));
                        let x = if r[pos] > 0 { xs } else { g.inv(xs) };
                        assign[ug] = Some(x);
                        trail.push(ug);
                        queue.push(ug);
                    }
                    _ => {}
                }
            }
        }
        true
    }

    /// Homomorphisms into `g` modulo conjugation in `g`; each class is
    /// represented by its lexicographically least member.
    pub fn homomorphisms_mod_conjugacy(&self, g: &FiniteGroup) -> Vec<Vec<usize>> {
        let mut reps = BTreeSet::new();
        self.for_each_homomorphism(g, |h| {
            reps.insert(conjugacy_rep(g, h));
            true
        });
        reps.into_iter().collect()
    }

    /// Epimorphisms onto `g`.
    pub fn epimorphisms(&self, g: &FiniteGroup) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.for_each_homomorphism(g, |h| {
            if g.generated(h).len() == g.order() {
                out.push(h.to_vec());
            }
            true
        });
        out.sort();
        out
    }
}

/// Lexicographically least conjugate of a tuple of group elements.
pub fn conjugacy_rep(g: &FiniteGroup, h: &[usize]) -> Vec<usize> {
    (0..g.order())
        .map(|c| h.iter().map(|&x| g.conj(c, x)).collect::<Vec<usize>>())
        .min()
        .unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let p: Presentation = "2: abab^-1".parse().unwrap();
        assert_eq!(p.relators, vec![vec![1, 2, 1, -2]]);
        assert_eq!(p.to_string(), "2: abab^-1");
        let q: Presentation = "1: a^3".parse().unwrap();
        assert_eq!(q.relators[0], vec![1, 1, 1]);
        assert!("1: b".parse::<Presentation>().is_err());
    }

    #[test]
    fn abelianizations() {
        assert_eq!(Presentation::free(2).abelianization(), FinAb::free(2));
        let z2: Presentation = "1: a^2".parse().unwrap();
        assert_eq!(z2.abelianization(), FinAb::cyclic(2));
        let klein: Presentation = "2: abab^-1".parse().unwrap();
        assert_eq!(klein.abelianization(), FinAb::new([2], 1));
    }

    #[test]
    fn hom_counts() {
        let s3 = FiniteGroup::symmetric(3);
        let z = Presentation::free(1);
        assert_eq!(z.homomorphisms(&s3).len(), 6);
        assert_eq!(z.homomorphisms_mod_conjugacy(&s3).len(), 3);
        let torus: Presentation = "2: aba^-1b^-1".parse().unwrap();
        // commuting pairs in S3: sum of centralizer orders = 18
        assert_eq!(torus.homomorphisms(&s3).len(), 18);
    }

    #[test]
    fn simplify_keeps_group() {
        // edge-path style presentation of a cyclic group of order 3
        let p: Presentation = "3: ab^-1, bc^-1, abc".parse().unwrap();
        let s = p.simplify();
        assert_eq!(s.presentation.ngens, 1);
        assert_eq!(s.presentation.abelianization(), FinAb::cyclic(3));
        let z3 = FiniteGroup::cyclic(3);
        for h in s.presentation.homomorphisms(&z3) {
            let full = s.pull_images(&z3, &h);
            assert!(p.relators.iter().all(|r| evaluate(&z3, &full, r) == 0));
        }
    }
}
