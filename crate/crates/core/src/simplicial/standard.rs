use std::collections::HashMap;
use std::sync::Arc;

use super::formal::{Cell, Formal};
use super::quotient::{quotient, SimplicialRelation};
use super::sset::SSet;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardKind {
    Delta,
    Boundary,
    Sphere,
    Circle,
}

impl std::str::FromStr for StandardKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "delta" => Ok(StandardKind::Delta),
            "boundary" => Ok(StandardKind::Boundary),
            "sphere" => Ok(StandardKind::Sphere),
            "circle" => Ok(StandardKind::Circle),
            _ => Err(Error::Parse {
                location: "standard space kind".into(),
                message: format!("unknown kind `{s}`"),
            }),
        }
    }
}

/// `Δ[n]`, `∂Δ[n]`, `Sⁿ = Δ[n]/∂Δ[n]` or the one-vertex circle, truncated at `dim_cap`.
pub fn standard_space(kind: StandardKind, n: usize, dim_cap: usize) -> Result<SSet> {
    let n = if kind == StandardKind::Circle { 1 } else { n };
    if dim_cap < n {
        return Err(Error::DimCapTooSmall {
            dim_cap,
            required: n,
        });
    }
    match kind {
        StandardKind::Delta => delta(n, dim_cap),
        StandardKind::Boundary => boundary(n, dim_cap),
        StandardKind::Sphere | StandardKind::Circle => sphere(n, dim_cap),
    }
}

pub fn delta(n: usize, dim_cap: usize) -> Result<SSet> {
    let labels: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
    ordered_complex(&labels, &[(0..=n).collect()], dim_cap)
}

pub fn boundary(n: usize, dim_cap: usize) -> Result<SSet> {
    let labels: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
    let facets: Vec<Vec<usize>> = if n == 0 {
        Vec::new()
    } else {
        (0..=n)
            .map(|skip| (0..=n).filter(|&v| v != skip).collect())
            .collect()
    };
    ordered_complex(&labels, &facets, dim_cap)
}

/// `Δ[n]` with its boundary collapsed to vertex `0`. For `n = 0` the
/// boundary is empty and the pointed quotient is two points.
pub fn sphere(n: usize, dim_cap: usize) -> Result<SSet> {
    if n == 0 {
        return ordered_complex(
            &["*".to_string(), "0".to_string()],
            &[vec![0], vec![1]],
            dim_cap,
        );
    }
    let d = Arc::new(delta(n, dim_cap)?);
    let bdry: Vec<Cell> = (0..n)
        .flat_map(|k| d.cells(k).collect::<Vec<_>>())
        .collect();
    let rel = SimplicialRelation::collapse(&d, &bdry, 0)?;
    Ok(quotient(&d, &rel)?.space)
}

/// Builds the simplicial set of an ordered simplicial complex: simplices are
/// increasing vertex tuples contained in some facet, faces drop one vertex.
pub fn ordered_complex(labels: &[String], facets: &[Vec<usize>], dim_cap: usize) -> Result<SSet> {
    let mut all: Vec<Vec<usize>> = Vec::new();
    for f in facets {
        let mut f = f.clone();
        f.sort_unstable();
        f.dedup();
        if f.iter().any(|&v| v >= labels.len()) {
            return Err(Error::Malformed {
                simplex: format!("{f:?}"),
                reason: "facet references an unknown vertex".into(),
            });
        }
        let k = f.len();
        for mask in 1u64..(1 << k) {
            all.push(
                (0..k)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| f[i])
                    .collect(),
            );
        }
    }
    for v in 0..labels.len() {
        all.push(vec![v]);
    }
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    all.dedup();
    let top = all.last().map_or(0, |s| s.len() - 1);
    if top > dim_cap {
        return Err(Error::DimCapTooSmall {
            dim_cap,
            required: top,
        });
    }
    let sep = if labels.iter().all(|l| l.chars().count() == 1) {
        ""
    } else {
        "-"
    };
    let mut ids = vec![Vec::new(); dim_cap + 1];
    let mut index: HashMap<Vec<usize>, Cell> = HashMap::new();
    for s in &all {
        let n = s.len() - 1;
        index.insert(s.clone(), Cell::new(n, ids[n].len()));
        ids[n].push(
            s.iter()
                .map(|&v| labels[v].as_str())
                .collect::<Vec<_>>()
                .join(sep),
        );
    }
    let mut faces = vec![Vec::new(); dim_cap + 1];
    for s in &all {
        let n = s.len() - 1;
        if n == 0 {
            faces[0].push(Vec::new());
            continue;
        }
        let fl = (0..=n)
            .map(|i| {
                let mut t = s.clone();
                t.remove(i);
                Formal::nondegenerate(index[&t])
            })
            .collect();
        faces[n].push(fl);
    }
    SSet::from_parts(dim_cap, ids, faces)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_counts() {
        assert_eq!(
            standard_space(StandardKind::Sphere, 2, 3).unwrap().counts(),
            vec![1, 0, 1, 0]
        );
        assert_eq!(
            standard_space(StandardKind::Circle, 0, 1).unwrap().counts(),
            vec![1, 1]
        );
        assert_eq!(
            standard_space(StandardKind::Delta, 2, 2).unwrap().counts(),
            vec![3, 3, 1]
        );
        assert_eq!(
            standard_space(StandardKind::Boundary, 2, 2)
                .unwrap()
                .counts(),
            vec![3, 3, 0]
        );
    }

    #[test]
    fn cap_below_dimension_is_an_error() {
        assert!(matches!(
            standard_space(StandardKind::Delta, 3, 2),
            Err(Error::DimCapTooSmall { .. })
        ));
    }

    #[test]
    fn sphere_faces_are_degenerate_basepoint() {
        let s = sphere(3, 3).unwrap();
        let top = Cell::new(3, 0);
        for f in s.faces_of(top) {
            assert_eq!(f.base, Cell::new(0, 0));
            assert_eq!(f.dim(), 2);
        }
    }
}
