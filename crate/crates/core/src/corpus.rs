//! Named test spaces, towers and maps.
//!
//! Entries are addressed as `name` or `name:param`. Every entry carries the
//! invariants it is expected to have; the test suite recomputes them.

use std::sync::Arc;

use crate::algebra::group::FiniteGroup;
use crate::classifying::bar::ClassifyingSpace;
use crate::classifying::twisted::PrincipalBundle;
use crate::cohomology::nonabelian::h1_homomorphism_classes;
use crate::error::{Error, Result};
use crate::simplicial::standard::{delta, ordered_complex, sphere};
use crate::simplicial::{product, Cell, Formal, SMap, SSet};
use crate::towers::{SpaceTower, TowerMap};

/// Invariants an entry is documented to have.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expected {
    pub euler: Option<i64>,
    /// `dim Hⁿ(X; Z/2)` for the listed degrees, starting at 0.
    pub mod2_betti: Vec<usize>,
    /// Orders of the finite quotients of `π₁` up to order 6, with multiplicity.
    pub pi1_quotients_6: Option<Vec<usize>>,
}

#[derive(Clone, Copy, Debug)]
pub struct EntryInfo {
    pub name: &'static str,
    pub kind: &'static str,
    pub default_param: Option<usize>,
    pub description: &'static str,
}

pub const ENTRIES: &[EntryInfo] = &[
    EntryInfo {
        name: "delta",
        kind: "space",
        default_param: Some(2),
        description: "standard simplex Δ[n]",
    },
    EntryInfo {
        name: "sphere",
        kind: "space",
        default_param: Some(2),
        description: "Δ[n]/∂Δ[n]; n = 0 gives two points",
    },
    EntryInfo {
        name: "circle",
        kind: "space",
        default_param: None,
        description: "one vertex, one edge",
    },
    EntryInfo {
        name: "circle-subdivided",
        kind: "space",
        default_param: None,
        description: "∂Δ[2], three vertices and three edges in a cycle",
    },
    EntryInfo {
        name: "circle-collapse",
        kind: "map",
        default_param: None,
        description: "∂Δ[2] → circle collapsing the edges 02 and 12",
    },
    EntryInfo {
        name: "rp2",
        kind: "space",
        default_param: None,
        description: "six-vertex triangulation of the projective plane",
    },
    EntryInfo {
        name: "rp2-cover",
        kind: "bundle",
        default_param: None,
        description: "the double cover of rp2 by a 2-sphere, as a principal Z/2-bundle",
    },
    EntryInfo {
        name: "torus",
        kind: "space",
        default_param: None,
        description: "circle × circle",
    },
    EntryInfo {
        name: "wedge2",
        kind: "space",
        default_param: None,
        description: "one vertex, two edges",
    },
    EntryInfo {
        name: "BZn-tower",
        kind: "tower",
        default_param: Some(4),
        description: "B(Z/k!) for k = 1..depth with reduction maps, truncated at dimension 2",
    },
    EntryInfo {
        name: "frobenius-map",
        kind: "tower-map",
        default_param: Some(5),
        description: "constant circle → BZn-tower sending the edge to [1] at every level",
    },
];

#[derive(Clone, Debug)]
pub enum CorpusObject {
    Space(Arc<SSet>),
    Map(SMap),
    Bundle(PrincipalBundle),
    Tower(SpaceTower),
    TowerMap(TowerMap),
}

impl CorpusObject {
    pub fn kind(&self) -> &'static str {
        match self {
            CorpusObject::Space(_) => "space",
            CorpusObject::Map(_) => "map",
            CorpusObject::Bundle(_) => "bundle",
            CorpusObject::Tower(_) => "tower",
            CorpusObject::TowerMap(_) => "tower-map",
        }
    }

    pub fn as_space(&self) -> Option<&Arc<SSet>> {
        match self {
            CorpusObject::Space(x) => Some(x),
            _ => None,
        }
    }
}

pub fn entry(name: &str) -> Result<&'static EntryInfo> {
    ENTRIES
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownCorpusEntry(name.to_string()))
}

/// Splits `name:param`.
pub fn parse_spec(spec: &str) -> Result<(&str, Option<usize>)> {
    match spec.split_once(':') {
        None => Ok((spec, None)),
        Some((name, p)) => {
            let p = p.parse().map_err(|_| Error::Parse {
                location: format!("corpus entry `{spec}`"),
                message: format!("parameter `{p}` is not a nonnegative integer"),
            })?;
            Ok((name, Some(p)))
        }
    }
}

/// Dimension cap used for a space whose top simplices have dimension `top`:
/// cohomology is then valid through degree `top + 1`.
pub fn default_dim_cap(top: usize) -> usize {
    top + 2
}

pub fn corpus(spec: &str) -> Result<CorpusObject> {
    let (name, param) = parse_spec(spec)?;
    let info = entry(name)?;
    let p = param.or(info.default_param);
    if param.is_some() && info.default_param.is_none() {
        return Err(Error::Parse {
            location: format!("corpus entry `{spec}`"),
            message: format!("`{name}` takes no parameter"),
        });
    }
    let p = p.unwrap_or(0);
    Ok(match name {
        "delta" => CorpusObject::Space(Arc::new(delta(p, default_dim_cap(p))?)),
        "sphere" => CorpusObject::Space(Arc::new(sphere(p, default_dim_cap(p))?)),
        "circle" => CorpusObject::Space(circle(default_dim_cap(1))?),
        "circle-subdivided" => CorpusObject::Space(circle_subdivided(default_dim_cap(1))?),
        "circle-collapse" => CorpusObject::Map(circle_collapse(default_dim_cap(1))?),
        "rp2" => CorpusObject::Space(rp2(default_dim_cap(2))?),
        "rp2-cover" => CorpusObject::Bundle(rp2_cover(default_dim_cap(2))?),
        "torus" => CorpusObject::Space(torus(default_dim_cap(2))?),
        "wedge2" => CorpusObject::Space(wedge2(default_dim_cap(1))?),
        "BZn-tower" => CorpusObject::Tower(factorial_tower(p.max(1), 2)?),
        "frobenius-map" => CorpusObject::TowerMap(frobenius_map(p.max(1), 2)?),
        _ => unreachable!("entry table and constructors agree"),
    })
}

/// Documented invariants of the space-valued entries.
pub fn expected(spec: &str) -> Option<Expected> {
    let (name, param) = parse_spec(spec).ok()?;
    let p = param.or(entry(name).ok()?.default_param);
    Some(match (name, p) {
        ("delta", _) => Expected {
            euler: Some(1),
            mod2_betti: vec![1, 0, 0],
            pi1_quotients_6: Some(vec![1]),
        },
        ("sphere", Some(0)) => Expected {
            euler: Some(2),
            mod2_betti: vec![2, 0],
            pi1_quotients_6: None,
        },
        ("sphere", Some(n)) => {
            let mut b = vec![0; n + 2];
            b[0] = 1;
            b[n] += 1;
            Expected {
                euler: Some(1 + if n % 2 == 0 { 1 } else { -1 }),
                mod2_betti: b,
                pi1_quotients_6: if n >= 2 { Some(vec![1]) } else { None },
            }
        }
        ("circle" | "circle-subdivided", _) => Expected {
            euler: Some(0),
            mod2_betti: vec![1, 1, 0],
            pi1_quotients_6: Some(vec![1, 2, 3, 4, 5, 6]),
        },
        ("rp2", _) => Expected {
            euler: Some(1),
            mod2_betti: vec![1, 1, 1, 0],
            pi1_quotients_6: Some(vec![1, 2]),
        },
        ("torus", _) => Expected {
            euler: Some(0),
            mod2_betti: vec![1, 2, 1, 0],
            pi1_quotients_6: None,
        },
        ("wedge2", _) => Expected {
            euler: Some(-1),
            mod2_betti: vec![1, 2, 0],
            pi1_quotients_6: None,
        },
        _ => return None,
    })
}

/// The connected corpus spaces at their default parameters.
pub fn connected_spaces() -> Vec<(&'static str, Arc<SSet>)> {
    [
        "delta",
        "sphere:1",
        "sphere:2",
        "circle",
        "circle-subdivided",
        "rp2",
        "torus",
        "wedge2",
    ]
    .into_iter()
    .map(|s| {
        (
            s,
            corpus(s)
                .expect("corpus entry")
                .as_space()
                .expect("space")
                .clone(),
        )
    })
    .collect()
}

pub fn circle(dim_cap: usize) -> Result<Arc<SSet>> {
    Ok(Arc::new(sphere(1, dim_cap)?))
}

pub fn circle_subdivided(dim_cap: usize) -> Result<Arc<SSet>> {
    let labels: Vec<String> = (0..3).map(|i| i.to_string()).collect();
    Ok(Arc::new(ordered_complex(
        &labels,
        &[vec![0, 1], vec![0, 2], vec![1, 2]],
        dim_cap,
    )?))
}

/// Edge `01` goes to the loop; `02` and `12` are collapsed.
pub fn circle_collapse(dim_cap: usize) -> Result<SMap> {
    let source = circle_subdivided(dim_cap)?;
    let target = circle(dim_cap)?;
    let pt = Formal::nondegenerate(Cell::new(0, 0));
    let mut images = vec![vec![pt.clone(); 3]];
    let mut edges = Vec::new();
    for e in source.cells(1) {
        let v = source.vertices(e);
        edges.push(if v == [0, 1] {
            Formal::nondegenerate(Cell::new(1, 0))
        } else {
            pt.degenerate(0)
        });
    }
    images.push(edges);
    images.resize(dim_cap + 1, Vec::new());
    SMap::new(source, target, images)
}

pub fn rp2(dim_cap: usize) -> Result<Arc<SSet>> {
    const FACETS: [[usize; 3]; 10] = [
        [1, 2, 3],
        [1, 3, 4],
        [1, 4, 5],
        [1, 5, 6],
        [1, 2, 6],
        [2, 3, 5],
        [2, 4, 5],
        [2, 4, 6],
        [3, 4, 6],
        [3, 5, 6],
    ];
    let labels: Vec<String> = (1..=6).map(|i| i.to_string()).collect();
    let facets: Vec<Vec<usize>> = FACETS
        .iter()
        .map(|f| f.iter().map(|v| v - 1).collect())
        .collect();
    Ok(Arc::new(ordered_complex(&labels, &facets, dim_cap)?))
}

/// The nontrivial principal `Z/2`-bundle over `rp2`; its total space is a
/// 12-vertex 2-sphere.
pub fn rp2_cover(dim_cap: usize) -> Result<PrincipalBundle> {
    let x = rp2(dim_cap)?;
    let h1 = h1_homomorphism_classes(&x, &FiniteGroup::cyclic(2), 0)?;
    let tau = h1
        .classes
        .iter()
        .find(|t| !t.is_trivial())
        .ok_or_else(|| Error::Mismatch("rp2 has no nontrivial Z/2 cocycle".into()))?;
    PrincipalBundle::new(tau)
}

pub fn torus(dim_cap: usize) -> Result<Arc<SSet>> {
    let c = circle(dim_cap)?;
    Ok(product(&c, &c, dim_cap)?.space)
}

pub fn wedge2(dim_cap: usize) -> Result<Arc<SSet>> {
    let pt = Formal::nondegenerate(Cell::new(0, 0));
    Ok(Arc::new(SSet::from_parts(
        dim_cap,
        vec![vec!["*".into()], vec!["a".into(), "b".into()]],
        vec![
            Vec::new(),
            vec![vec![pt.clone(), pt.clone()], vec![pt.clone(), pt]],
        ],
    )?))
}

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

fn factorial_spaces(depth: usize, dim_cap: usize) -> Result<Vec<ClassifyingSpace>> {
    (1..=depth)
        .map(|k| ClassifyingSpace::new(&FiniteGroup::cyclic(factorial(k)), dim_cap))
        .collect()
}

fn reduction_maps(spaces: &[ClassifyingSpace]) -> Result<Vec<SMap>> {
    spaces
        .windows(2)
        .map(|w| {
            let m = w[0].group.order();
            let hom: Vec<usize> = (0..w[1].group.order()).map(|a| a % m).collect();
            w[1].induced(&w[0], &hom)
        })
        .collect()
}

/// `B(Z/1!) ← B(Z/2!) ← ... ← B(Z/depth!)`: the factorial tower
/// approximating `K(Ẑ, 1)`.
pub fn factorial_tower(depth: usize, dim_cap: usize) -> Result<SpaceTower> {
    let spaces = factorial_spaces(depth, dim_cap)?;
    let transitions = reduction_maps(&spaces)?;
    SpaceTower::new(spaces.into_iter().map(|s| s.space).collect(), transitions)
}

/// The constant circle mapped to the factorial tower, sending the loop to
/// `[1]` at every level.
pub fn frobenius_map(depth: usize, dim_cap: usize) -> Result<TowerMap> {
    let spaces = factorial_spaces(depth, dim_cap)?;
    let transitions = reduction_maps(&spaces)?;
    let c = circle(dim_cap)?;
    let maps = spaces
        .iter()
        .map(|s| {
            let one = if s.group.order() > 1 { 1 } else { 0 };
            let mut images = vec![vec![s.formal(&[]).clone()], vec![s.formal(&[one]).clone()]];
            images.resize(dim_cap + 1, Vec::new());
            SMap::new(c.clone(), s.space.clone(), images)
        })
        .collect::<Result<Vec<_>>>()?;
    let target = SpaceTower::new(spaces.into_iter().map(|s| s.space).collect(), transitions)?;
    let source = SpaceTower::constant(c, depth);
    TowerMap::new(source, target, maps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_builds() {
        for e in ENTRIES {
            let o = corpus(e.name).unwrap();
            assert_eq!(o.kind(), e.kind, "{}", e.name);
        }
    }

    #[test]
    fn counts() {
        let x = rp2(2).unwrap();
        assert_eq!(x.counts(), vec![6, 15, 10]);
        assert_eq!(x.euler_characteristic(), 1);
        let t = factorial_tower(4, 2).unwrap();
        let orders: Vec<usize> = t.levels.iter().map(|l| l.count(1) + 1).collect();
        assert_eq!(orders, vec![1, 2, 6, 24]);
        assert!(matches!(corpus("circle:3"), Err(Error::Parse { .. })));
        assert!(matches!(corpus("klein"), Err(Error::UnknownCorpusEntry(_))));
    }
}
