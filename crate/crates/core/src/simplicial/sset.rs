use std::collections::HashMap;
use std::fmt;

use super::formal::{parse_formal, Cell, Formal, FormalDisplay, Surjection};
use crate::error::{Error, Result};

/// A levelwise-finite simplicial set truncated at `dim_cap`.
///
/// Only nondegenerate simplices are stored; degenerate ones are synthesized
/// in Eilenberg–Zilber normal form. Identifiers are opaque strings, unique
/// across all dimensions, and their listing order within a dimension is part
/// of the serialized form.
#[derive(Clone, PartialEq, Eq)]
pub struct SSet {
    dim_cap: usize,
    ids: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<Formal>>>,
    lookup: HashMap<String, Cell>,
    vertices: Vec<Vec<Vec<usize>>>,
}

impl fmt::Debug for SSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SSet")
            .field("dim_cap", &self.dim_cap)
            .field("counts", &self.counts())
            .finish()
    }
}

/// A listing of nondegenerate simplices with faces given as formal-simplex
/// strings (`s_2s_0|x` or `x`).
#[derive(Clone, Debug, Default)]
pub struct SSetListing {
    pub dim_cap: usize,
    pub simplices: Vec<Vec<String>>,
    pub faces: HashMap<String, Vec<String>>,
}

fn check_id(id: &str) -> Result<()> {
    if id.is_empty() || id.starts_with("s_") || id.chars().any(char::is_whitespace) {
        return Err(Error::Malformed {
            simplex: id.to_string(),
            reason: "identifiers must be nonempty, contain no whitespace and not start with `s_`"
                .into(),
        });
    }
    Ok(())
}

impl SSet {
    /// Validates and assembles a simplicial set from identifiers and faces.
    ///
    /// `faces[n][k]` lists the `n + 1` faces of the `k`-th nondegenerate
    /// `n`-simplex; it is empty for vertices.
    pub fn from_parts(
        dim_cap: usize,
        mut ids: Vec<Vec<String>>,
        mut faces: Vec<Vec<Vec<Formal>>>,
    ) -> Result<SSet> {
        if ids.len() > dim_cap + 1 {
            let extra = ids.len() - 1;
            if ids[dim_cap + 1..].iter().any(|l| !l.is_empty()) {
                return Err(Error::DimCapTooSmall {
                    dim_cap,
                    required: extra,
                });
            }
            ids.truncate(dim_cap + 1);
        }
        ids.resize(dim_cap + 1, Vec::new());
        faces.truncate(dim_cap + 1);
        faces.resize(dim_cap + 1, Vec::new());
        let mut lookup = HashMap::new();
        for (n, level) in ids.iter().enumerate() {
            for (k, id) in level.iter().enumerate() {
                check_id(id)?;
                if lookup.insert(id.clone(), Cell::new(n, k)).is_some() {
                    return Err(Error::DuplicateId(id.clone()));
                }
            }
        }
        for n in 0..=dim_cap {
            if n == 0 {
                faces[0] = vec![Vec::new(); ids[0].len()];
                continue;
            }
            if faces[n].len() != ids[n].len() {
                return Err(Error::Malformed {
                    simplex: format!("dimension {n}"),
                    reason: format!(
                        "{} face lists for {} simplices",
                        faces[n].len(),
                        ids[n].len()
                    ),
                });
            }
            for (k, fl) in faces[n].iter().enumerate() {
                let name = &ids[n][k];
                if fl.len() != n + 1 {
                    return Err(Error::Malformed {
                        simplex: name.clone(),
                        reason: format!("expected {} faces, found {}", n + 1, fl.len()),
                    });
                }
                for (i, f) in fl.iter().enumerate() {
                    if f.dim() != n - 1 {
                        return Err(Error::Malformed {
                            simplex: name.clone(),
                            reason: format!(
                                "face {i} has dimension {}, expected {}",
                                f.dim(),
                                n - 1
                            ),
                        });
                    }
                    if f.base.dim >= ids.len() || f.base.idx >= ids[f.base.dim].len() {
                        return Err(Error::DanglingReference {
                            simplex: name.clone(),
                            face: i,
                            target: format!("<cell {}:{}>", f.base.dim, f.base.idx),
                        });
                    }
                }
            }
        }
        let mut x = SSet {
            dim_cap,
            ids,
            faces,
            lookup,
            vertices: Vec::new(),
        };
        x.check_identities()?;
        x.vertices = (0..=dim_cap)
            .map(|n| {
                (0..x.ids[n].len())
                    .map(|k| x.compute_vertices(Cell::new(n, k)))
                    .collect()
            })
            .collect();
        Ok(x)
    }

    /// Builds a simplicial set from a listing; all invariants are checked.
    pub fn from_listing(listing: &SSetListing) -> Result<SSet> {
        let d = listing.dim_cap;
        if listing.simplices.len() > d + 1
            && listing.simplices[d + 1..].iter().any(|l| !l.is_empty())
        {
            return Err(Error::DimCapTooSmall {
                dim_cap: d,
                required: listing.simplices.len() - 1,
            });
        }
        let mut ids = listing.simplices.clone();
        ids.resize(d + 1, Vec::new());
        let mut lookup: HashMap<&str, Cell> = HashMap::new();
        for (n, level) in ids.iter().enumerate() {
            for (k, id) in level.iter().enumerate() {
                check_id(id)?;
                if lookup.insert(id.as_str(), Cell::new(n, k)).is_some() {
                    return Err(Error::DuplicateId(id.clone()));
                }
            }
        }
        for key in listing.faces.keys() {
            match lookup.get(key.as_str()) {
                None => {
                    return Err(Error::Malformed {
                        simplex: key.clone(),
                        reason: "faces given for an unlisted simplex".into(),
                    })
                }
                Some(c) if c.dim == 0 && !listing.faces[key].is_empty() => {
                    return Err(Error::Malformed {
                        simplex: key.clone(),
                        reason: "vertices have no faces".into(),
                    })
                }
                _ => {}
            }
        }
        let mut faces = vec![Vec::new(); d + 1];
        for n in 1..=d {
            for id in &ids[n] {
                let Some(strs) = listing.faces.get(id) else {
                    return Err(Error::Malformed {
                        simplex: id.clone(),
                        reason: "missing face list".into(),
                    });
                };
                if strs.len() != n + 1 {
                    return Err(Error::Malformed {
                        simplex: id.clone(),
                        reason: format!("expected {} faces, found {}", n + 1, strs.len()),
                    });
                }
                let mut fl = Vec::with_capacity(n + 1);
                for (i, s) in strs.iter().enumerate() {
                    let (word, base) = parse_formal(s).map_err(|e| match e {
                        Error::Parse { message, .. } => Error::Parse {
                            location: format!("simplex `{id}` face {i}"),
                            message,
                        },
                        other => other,
                    })?;
                    let Some(&cell) = lookup.get(base) else {
                        return Err(Error::DanglingReference {
                            simplex: id.clone(),
                            face: i,
                            target: base.to_string(),
                        });
                    };
                    let Some(surj) = Surjection::from_word(&word, cell.dim) else {
                        return Err(Error::NonCanonical {
                            simplex: id.clone(),
                            formal: s.clone(),
                        });
                    };
                    fl.push(Formal { surj, base: cell });
                }
                faces[n].push(fl);
            }
        }
        SSet::from_parts(d, ids, faces)
    }

    pub fn dim_cap(&self) -> usize {
        self.dim_cap
    }

    /// Number of nondegenerate simplices in each dimension `0..=dim_cap`.
    pub fn counts(&self) -> Vec<usize> {
        self.ids.iter().map(Vec::len).collect()
    }

    pub fn count(&self, n: usize) -> usize {
        self.ids.get(n).map_or(0, Vec::len)
    }

    pub fn ids(&self, n: usize) -> &[String] {
        self.ids.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn id(&self, c: Cell) -> &str {
        &self.ids[c.dim][c.idx]
    }

    pub fn cell(&self, id: &str) -> Option<Cell> {
        self.lookup.get(id).copied()
    }

    pub fn cells(&self, n: usize) -> impl Iterator<Item = Cell> + '_ {
        (0..self.count(n)).map(move |k| Cell::new(n, k))
    }

    /// Face `d_i` of a nondegenerate simplex.
    pub fn face(&self, c: Cell, i: usize) -> &Formal {
        &self.faces[c.dim][c.idx][i]
    }

    pub fn faces_of(&self, c: Cell) -> &[Formal] {
        &self.faces[c.dim][c.idx]
    }

    /// Face `d_i` of any simplex, via the simplicial identities.
    pub fn face_formal(&self, x: &Formal, i: usize) -> Formal {
        let (eta, missing) = x.surj.face(i);
        match missing {
            None => Formal {
                surj: eta,
                base: x.base,
            },
            Some(k) => self.face(x.base, k).pull(&eta),
        }
    }

    /// Vertex indices of a nondegenerate simplex, in order.
    pub fn vertices(&self, c: Cell) -> &[usize] {
        &self.vertices[c.dim][c.idx]
    }

    /// Vertex indices of any simplex.
    pub fn vertices_formal(&self, x: &Formal) -> Vec<usize> {
        let v = self.vertices(x.base);
        x.surj.values().iter().map(|&t| v[t as usize]).collect()
    }

    fn compute_vertices(&self, c: Cell) -> Vec<usize> {
        let x = Formal::nondegenerate(c);
        (0..=c.dim)
            .map(|k| {
                let mut y = x.clone();
                for i in (k + 1..=c.dim).rev() {
                    y = self.face_formal(&y, i);
                }
                for _ in 0..k {
                    y = self.face_formal(&y, 0);
                }
                debug_assert_eq!(y.dim(), 0);
                y.base.idx
            })
            .collect()
    }

    /// The edge spanned by vertices 0 and 1 of a simplex of dimension ≥ 1.
    pub fn front_edge(&self, x: &Formal) -> Formal {
        let mut y = x.clone();
        for i in (2..=x.dim()).rev() {
            y = self.face_formal(&y, i);
        }
        y
    }

    /// Every simplex (degenerate included) in dimension `n`, ordered by base
    /// dimension, listing index, then surjection.
    pub fn all_simplices(&self, n: usize) -> Vec<Formal> {
        let mut out = Vec::new();
        for m in 0..=n.min(self.dim_cap) {
            let surjs = Surjection::all(n, m);
            for c in self.cells(m) {
                for s in &surjs {
                    out.push(Formal {
                        surj: s.clone(),
                        base: c,
                    });
                }
            }
        }
        out
    }

    /// Renders a formal simplex in the serialized syntax.
    pub fn formal_string(&self, x: &Formal) -> String {
        FormalDisplay {
            word: x.surj.word(),
            base: self.id(x.base),
        }
        .to_string()
    }

    /// Parses a formal-simplex string against this simplicial set.
    pub fn parse_formal(&self, s: &str) -> Result<Formal> {
        let (word, base) = parse_formal(s)?;
        let cell = self.cell(base).ok_or_else(|| Error::DanglingReference {
            simplex: s.to_string(),
            face: 0,
            target: base.to_string(),
        })?;
        let surj = Surjection::from_word(&word, cell.dim).ok_or_else(|| Error::NonCanonical {
            simplex: s.to_string(),
            formal: s.to_string(),
        })?;
        Ok(Formal { surj, base: cell })
    }

    /// The listing form (inverse of [`SSet::from_listing`]).
    pub fn to_listing(&self) -> SSetListing {
        let mut faces = HashMap::new();
        for n in 1..=self.dim_cap {
            for c in self.cells(n) {
                faces.insert(
                    self.id(c).to_string(),
                    self.faces_of(c)
                        .iter()
                        .map(|f| self.formal_string(f))
                        .collect(),
                );
            }
        }
        SSetListing {
            dim_cap: self.dim_cap,
            simplices: self.ids.clone(),
            faces,
        }
    }

    /// Checks `d_i d_j = d_{j-1} d_i` for `i < j` on every nondegenerate simplex.
    pub fn check_identities(&self) -> Result<()> {
        for n in 2..=self.dim_cap {
            for c in self.cells(n) {
                let fl = self.faces_of(c);
                for j in 1..=n {
                    for i in 0..j {
                        let left = self.face_formal(&fl[j], i);
                        let right = self.face_formal(&fl[i], j - 1);
                        if left != right {
                            return Err(Error::IdentityViolation {
                                simplex: self.id(c).to_string(),
                                i,
                                j,
                                left: self.formal_string(&left),
                                right: self.formal_string(&right),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Euler characteristic of the nondegenerate simplices up to `dim_cap`.
    pub fn euler_characteristic(&self) -> i64 {
        self.counts()
            .iter()
            .enumerate()
            .map(|(n, &c)| if n % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// The same simplicial set with a different truncation; raising the cap
    /// adds no simplices, lowering it drops the upper dimensions.
    pub fn with_dim_cap(&self, dim_cap: usize) -> SSet {
        let mut ids = self.ids.clone();
        let mut faces = self.faces.clone();
        ids.resize(dim_cap + 1, Vec::new());
        faces.resize(dim_cap + 1, Vec::new());
        SSet::from_parts(dim_cap, ids, faces).expect("truncation preserves validity")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn listing(d: usize, simplices: &[&[&str]], faces: &[(&str, &[&str])]) -> SSetListing {
        SSetListing {
            dim_cap: d,
            simplices: simplices
                .iter()
                .map(|l| l.iter().map(|s| s.to_string()).collect())
                .collect(),
            faces: faces
                .iter()
                .map(|(k, v)| (k.to_string(), v.iter().map(|s| s.to_string()).collect()))
                .collect(),
        }
    }

    #[test]
    fn interval_counts() {
        let x = SSet::from_listing(&listing(1, &[&["a", "b"], &["ab"]], &[("ab", &["b", "a"])]))
            .unwrap();
        assert_eq!(x.counts(), vec![2, 1]);
        assert_eq!(x.vertices(Cell::new(1, 0)), &[0, 1]);
    }

    #[test]
    fn dangling_reference_reported() {
        let err = SSet::from_listing(&listing(1, &[&["a"], &["ab"]], &[("ab", &["b", "a"])]))
            .unwrap_err();
        assert_eq!(
            err,
            Error::DanglingReference {
                simplex: "ab".into(),
                face: 0,
                target: "b".into()
            }
        );
    }

    #[test]
    fn identity_violation_names_simplex() {
        // triangle whose faces do not fit together
        let l = listing(
            2,
            &[&["a", "b", "c"], &["ab", "bc", "ac"], &["t"]],
            &[
                ("ab", &["b", "a"]),
                ("bc", &["c", "b"]),
                ("ac", &["c", "a"]),
                ("t", &["bc", "ab", "ac"]),
            ],
        );
        match SSet::from_listing(&l).unwrap_err() {
            Error::IdentityViolation { simplex, .. } => assert_eq!(simplex, "t"),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn non_canonical_rejected() {
        let l = listing(
            2,
            &[&["a"], &[], &["t"]],
            &[("t", &["s_0s_1|a", "s_0|a", "s_0|a"])],
        );
        assert!(matches!(
            SSet::from_listing(&l).unwrap_err(),
            Error::NonCanonical { .. }
        ));
    }

    #[test]
    fn dim_cap_too_small() {
        let l = listing(0, &[&["a"], &["e"]], &[("e", &["a", "a"])]);
        assert!(matches!(
            SSet::from_listing(&l).unwrap_err(),
            Error::DimCapTooSmall { .. }
        ));
    }
}
