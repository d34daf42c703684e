//! Inverse systems indexed by the naturals: towers of finite abelian groups,
//! finite groups and simplicial sets, with limit descriptors and `lim¹`.
//!
//! Level `k + 1` maps to level `k`; `transitions[k]` is that map.

use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::algebra::finab::{cokernel, AbGroup, AbHom, FinAb};
use crate::algebra::group::FiniteGroup;
use crate::algebra::lowindex::EpiClass;
use crate::algebra::presentation::Presentation;
use crate::algebra::snf::IntMatrix;
use crate::error::{Error, Result};
use crate::simplicial::json::{smap_images_from_value, sset_from_value, sset_to_value};
use crate::simplicial::{SMap, SSet};

/// A tower of explicit finite abelian groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbTower {
    pub levels: Vec<AbGroup>,
    pub transitions: Vec<AbHom>,
}

impl AbTower {
    pub fn new(levels: Vec<AbGroup>, transitions: Vec<AbHom>) -> Result<AbTower> {
        if levels.is_empty() {
            return Err(Error::InvalidTower(
                "a tower needs at least one level".into(),
            ));
        }
        if transitions.len() + 1 != levels.len() {
            return Err(Error::InvalidTower(format!(
                "{} levels need {} transitions, got {}",
                levels.len(),
                levels.len() - 1,
                transitions.len()
            )));
        }
        for (k, t) in transitions.iter().enumerate() {
            if t.source != levels[k + 1] || t.target != levels[k] {
                return Err(Error::InvalidTower(format!(
                    "transition {k} does not map level {} to level {k}",
                    k + 1
                )));
            }
        }
        Ok(AbTower {
            levels,
            transitions,
        })
    }

    /// The constant tower with identity transitions.
    pub fn constant(a: &AbGroup, len: usize) -> AbTower {
        AbTower {
            levels: vec![a.clone(); len],
            transitions: vec![AbHom::identity(a); len.saturating_sub(1)],
        }
    }

    /// `Z/ℓ ← Z/ℓ² ← ... ← Z/ℓ^len` with reduction maps.
    pub fn adic(l: u64, len: usize) -> AbTower {
        let levels: Vec<AbGroup> = (1..=len as u32)
            .map(|k| AbGroup::new(vec![l.pow(k)]).expect("positive order"))
            .collect();
        let transitions = (0..len.saturating_sub(1))
            .map(|k| {
                AbHom::new(levels[k + 1].clone(), levels[k].clone(), vec![vec![1]])
                    .expect("reduction")
            })
            .collect();
        AbTower {
            levels,
            transitions,
        }
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// The composite map from level `j` down to level `k ≤ j`.
    pub fn composite(&self, j: usize, k: usize) -> AbHom {
        let mut f = AbHom::identity(&self.levels[j]);
        for t in (k..j).rev() {
            f = f.then(&self.transitions[t]).expect("tower maps compose");
        }
        f
    }

    pub fn surjective_transitions(&self) -> Vec<bool> {
        self.transitions.iter().map(AbHom::is_surjective).collect()
    }

    pub fn structures(&self) -> Vec<FinAb> {
        self.levels.iter().map(AbGroup::structure).collect()
    }
}

/// What the limit of a finite window of a tower looks like.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LimShape {
    /// The restricted transitions are isomorphisms from level `from` on.
    StablyConstant { value: FinAb, from: usize },
    /// No stabilization inside the window; the image tower is the answer.
    ImageTower,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimDescriptor {
    /// `im(T_top → T_k)` for every level `k` of the window.
    pub images: Vec<FinAb>,
    /// For each level, the first source level from which the image of
    /// `T_j → T_k` equals the eventual image.
    pub stable_source: Vec<usize>,
    /// Whether the image of `T_{k+1}` maps isomorphically onto that of `T_k`.
    pub restricted_iso: Vec<bool>,
    pub shape: LimShape,
}

impl LimDescriptor {
    pub fn describe(&self) -> String {
        match &self.shape {
            LimShape::StablyConstant { value, from } => {
                format!("stably constant from level {from} with value {value}")
            }
            LimShape::ImageTower => {
                let parts: Vec<String> = self.images.iter().map(ToString::to_string).collect();
                format!("image tower {}", parts.join(" <- "))
            }
        }
    }
}

/// Eventual images (Mittag–Leffler) over the available levels and the
/// resulting limit descriptor.
pub fn tower_lim(t: &AbTower) -> Result<LimDescriptor> {
    if t.is_empty() {
        return Err(Error::InvalidTower("empty tower".into()));
    }
    let top = t.len() - 1;
    let mut images = Vec::with_capacity(t.len());
    let mut stable_source = Vec::with_capacity(t.len());
    for k in 0..=top {
        let eventual = t.composite(top, k).image();
        let from = (k..=top)
            .find(|&j| t.composite(j, k).image_order() == eventual.order().expect("finite"))
            .expect("top level reaches the eventual image");
        images.push(eventual);
        stable_source.push(from);
    }
    let restricted_iso: Vec<bool> = (0..top).map(|k| images[k] == images[k + 1]).collect();
    // the image of T_{k+1} always surjects onto the image of T_k, so equal
    // orders mean the restriction is an isomorphism
    let from = (0..=top)
        .rev()
        .take_while(|&k| k == top || restricted_iso[k])
        .last()
        .unwrap_or(top);
    let shape = if top == 0 || from < top {
        LimShape::StablyConstant {
            value: images[from].clone(),
            from,
        }
    } else {
        LimShape::ImageTower
    };
    Ok(LimDescriptor {
        images,
        stable_source,
        restricted_iso,
        shape,
    })
}

/// `lim¹` of the truncations `T_0 ← ... ← T_t` for every `t`: the cokernel
/// of `(x_k) ↦ (x_k − f_k(x_{k+1}))` from `∏_{k≤t} T_k` to `∏_{k<t} T_k`.
pub fn lim1_truncations(t: &AbTower) -> Vec<FinAb> {
    (0..t.len()).map(|len| truncated_lim1(t, len + 1)).collect()
}

fn truncated_lim1(t: &AbTower, len: usize) -> FinAb {
    if len <= 1 {
        return FinAb::zero();
    }
    // target coordinates: generators of T_0..T_{len-2}
    let offs = |upto: usize| -> Vec<usize> {
        let mut o = vec![0];
        for k in 0..upto {
            o.push(o[k] + t.levels[k].ngens());
        }
        o
    };
    let src = offs(len);
    let tgt = offs(len - 1);
    let rows = tgt[len - 1];
    let cols = src[len] + rows;
    let mut m = IntMatrix::zeros(rows, cols);
    for k in 0..len - 1 {
        for a in 0..t.levels[k].ngens() {
            m.set(tgt[k] + a, src[k] + a, 1);
        }
        let f = &t.transitions[k];
        for a in 0..t.levels[k].ngens() {
            for b in 0..t.levels[k + 1].ngens() {
                let v = f.matrix[a][b] as i64;
                if v != 0 {
                    m.add_to(tgt[k] + a, src[k + 1] + b, -v);
                }
            }
        }
    }
    // relations of the target product
    for r in 0..rows {
        let (k, a) = (0..len - 1)
            .find_map(|k| (r >= tgt[k] && r < tgt[k + 1]).then(|| (k, r - tgt[k])))
            .expect("row in range");
        m.set(r, src[len] + r, t.levels[k].orders[a] as i64);
    }
    cokernel(&m)
}

/// `lim¹` of a tower of finite abelian groups. Finite levels satisfy the
/// Mittag–Leffler condition, so this is always 0; the truncated cokernels
/// are computed and the vanishing is asserted.
pub fn tower_lim1(t: &AbTower) -> FinAb {
    let all = lim1_truncations(t);
    let last = all.last().cloned().unwrap_or_else(FinAb::zero);
    assert!(
        all.iter().all(FinAb::is_zero),
        "lim¹ of a tower of finite groups must vanish"
    );
    last
}

/// A tower of finite groups with homomorphic transitions.
#[derive(Clone, Debug)]
pub struct GroupTower {
    pub levels: Vec<FiniteGroup>,
    /// `transitions[k][g]` is the image in level `k` of `g` in level `k + 1`.
    pub transitions: Vec<Vec<usize>>,
    pub surjective: Vec<bool>,
}

impl GroupTower {
    pub fn new(levels: Vec<FiniteGroup>, transitions: Vec<Vec<usize>>) -> Result<GroupTower> {
        if levels.is_empty() || transitions.len() + 1 != levels.len() {
            return Err(Error::InvalidTower(
                "levels and transitions do not match".into(),
            ));
        }
        let mut surjective = Vec::new();
        for (k, t) in transitions.iter().enumerate() {
            if t.len() != levels[k + 1].order() || t.iter().any(|&x| x >= levels[k].order()) {
                return Err(Error::InvalidTower(format!(
                    "transition {k} has the wrong shape"
                )));
            }
            if !levels[k + 1].is_homomorphism(&levels[k], t) {
                return Err(Error::InvalidTower(format!(
                    "transition {k} is not a homomorphism"
                )));
            }
            let mut hit = vec![false; levels[k].order()];
            for &x in t {
                hit[x] = true;
            }
            surjective.push(hit.iter().all(|&h| h));
        }
        Ok(GroupTower {
            levels,
            transitions,
            surjective,
        })
    }

    /// `Z/1! ← Z/2! ← ... ← Z/depth!`, the factorial approximation of `Ẑ`.
    pub fn factorial(depth: usize) -> GroupTower {
        let orders: Vec<usize> = (1..=depth)
            .scan(1, |f, k| {
                *f *= k;
                Some(*f)
            })
            .collect();
        let levels: Vec<FiniteGroup> = orders.iter().map(|&n| FiniteGroup::cyclic(n)).collect();
        let transitions = (0..depth.saturating_sub(1))
            .map(|k| (0..orders[k + 1]).map(|x| x % orders[k]).collect())
            .collect();
        GroupTower::new(levels, transitions).expect("reduction maps")
    }
}

/// A tower of simplicial sets sharing a dimension cap.
#[derive(Clone, Debug)]
pub struct SpaceTower {
    pub levels: Vec<Arc<SSet>>,
    pub transitions: Vec<SMap>,
}

impl SpaceTower {
    pub fn new(levels: Vec<Arc<SSet>>, transitions: Vec<SMap>) -> Result<SpaceTower> {
        if levels.is_empty() || transitions.len() + 1 != levels.len() {
            return Err(Error::InvalidTower(
                "levels and transitions do not match".into(),
            ));
        }
        let cap = levels[0].dim_cap();
        if levels.iter().any(|l| l.dim_cap() != cap) {
            return Err(Error::InvalidTower(
                "levels must share a dimension cap".into(),
            ));
        }
        for (k, t) in transitions.iter().enumerate() {
            if **t.source() != *levels[k + 1] || **t.target() != *levels[k] {
                return Err(Error::InvalidTower(format!(
                    "transition {k} does not map level {} to level {k}",
                    k + 1
                )));
            }
        }
        Ok(SpaceTower {
            levels,
            transitions,
        })
    }

    /// The constant tower on `x`.
    pub fn constant(x: Arc<SSet>, len: usize) -> SpaceTower {
        SpaceTower {
            levels: vec![x.clone(); len],
            transitions: vec![SMap::identity(x); len.saturating_sub(1)],
        }
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn dim_cap(&self) -> usize {
        self.levels[0].dim_cap()
    }

    pub fn top(&self) -> &Arc<SSet> {
        self.levels.last().expect("nonempty")
    }
}

/// A levelwise map of towers commuting with the transitions.
#[derive(Clone, Debug)]
pub struct TowerMap {
    pub source: SpaceTower,
    pub target: SpaceTower,
    pub maps: Vec<SMap>,
}

impl TowerMap {
    pub fn new(source: SpaceTower, target: SpaceTower, maps: Vec<SMap>) -> Result<TowerMap> {
        if source.len() != target.len() || maps.len() != source.len() {
            return Err(Error::InvalidTower(
                "tower map needs one map per level".into(),
            ));
        }
        for k in 0..maps.len() {
            if **maps[k].source() != *source.levels[k] || **maps[k].target() != *target.levels[k] {
                return Err(Error::InvalidTower(format!(
                    "map {k} has the wrong endpoints"
                )));
            }
        }
        for k in 0..maps.len().saturating_sub(1) {
            let a = source.transitions[k].then(&maps[k])?;
            let b = maps[k + 1].then(&target.transitions[k])?;
            if a != b {
                return Err(Error::InvalidTower(format!(
                    "the square between levels {} and {k} does not commute",
                    k + 1
                )));
            }
        }
        Ok(TowerMap {
            source,
            target,
            maps,
        })
    }

    pub fn from_map(f: &SMap) -> TowerMap {
        TowerMap {
            source: SpaceTower::constant(f.source().clone(), 1),
            target: SpaceTower::constant(f.target().clone(), 1),
            maps: vec![f.clone()],
        }
    }

    /// The map at the deepest level.
    pub fn top(&self) -> &SMap {
        self.maps.last().expect("nonempty")
    }
}

/// The finite-quotient system of a finitely presented group up to an order
/// bound, with the refinement order between kernels.
#[derive(Clone, Debug)]
pub struct ProfiniteGroupApprox {
    pub presentation: Presentation,
    pub bound: usize,
    pub classes: Vec<EpiClass>,
    /// Pairs `(i, j)` with the kernel of `i` contained in the kernel of `j`.
    pub refinements: Vec<(usize, usize)>,
}

impl ProfiniteGroupApprox {
    pub fn new(presentation: Presentation, bound: usize, classes: Vec<EpiClass>) -> Self {
        let mut refinements = Vec::new();
        for (i, a) in classes.iter().enumerate() {
            for (j, b) in classes.iter().enumerate() {
                if i != j && a.index() % b.index() == 0 && a.refines(b) {
                    refinements.push((i, j));
                }
            }
        }
        ProfiniteGroupApprox {
            presentation,
            bound,
            classes,
            refinements,
        }
    }

    pub fn orders(&self) -> Vec<usize> {
        self.classes.iter().map(EpiClass::index).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.classes.len() == 1
    }
}

fn tower_err(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        location: location.into(),
        message: message.into(),
    }
}

fn load_entry(v: &Value, base: Option<&Path>, location: &str) -> Result<Value> {
    match v {
        Value::String(path) => {
            let full = match base {
                Some(b) => b.join(path),
                None => Path::new(path).to_path_buf(),
            };
            let text = std::fs::read_to_string(&full)
                .map_err(|e| tower_err(location, format!("cannot read {}: {e}", full.display())))?;
            serde_json::from_str(&text).map_err(|e| {
                tower_err(
                    format!(
                        "{} line {}, column {}",
                        full.display(),
                        e.line(),
                        e.column()
                    ),
                    e.to_string(),
                )
            })
        }
        Value::Object(_) => Ok(v.clone()),
        _ => Err(tower_err(
            location,
            "expected a file name or an inline object",
        )),
    }
}

/// Parses a tower: `{"levels": [...], "transitions": [...]}` where each
/// level is an SSet (inline or a file name relative to `base`) and each
/// transition is a map `{"map": {id: formal}}` from level `k + 1` to `k`.
pub fn space_tower_from_value(v: &Value, base: Option<&Path>) -> Result<SpaceTower> {
    let levels_v = v
        .get("levels")
        .and_then(Value::as_array)
        .ok_or_else(|| tower_err("$.levels", "expected an array"))?;
    let mut levels = Vec::new();
    for (i, l) in levels_v.iter().enumerate() {
        let loc = format!("$.levels[{i}]");
        levels.push(Arc::new(sset_from_value(&load_entry(l, base, &loc)?)?));
    }
    let trans_v = v
        .get("transitions")
        .and_then(Value::as_array)
        .ok_or_else(|| tower_err("$.transitions", "expected an array"))?;
    let mut transitions = Vec::new();
    for (k, t) in trans_v.iter().enumerate() {
        let loc = format!("$.transitions[{k}]");
        let t = load_entry(t, base, &loc)?;
        let map = t.get("map").unwrap_or(&t);
        let images = smap_images_from_value(map, &loc)?;
        if k + 1 >= levels.len() {
            return Err(tower_err(loc, "more transitions than level pairs"));
        }
        transitions.push(SMap::from_strings(
            levels[k + 1].clone(),
            levels[k].clone(),
            &images,
        )?);
    }
    SpaceTower::new(levels, transitions)
}

pub fn space_tower_to_value(t: &SpaceTower) -> Value {
    let maps: Vec<Value> = t
        .transitions
        .iter()
        .map(|f| {
            let mut m = serde_json::Map::new();
            for (k, v) in f.to_strings() {
                m.insert(k, json!(v));
            }
            json!({ "map": Value::Object(m) })
        })
        .collect();
    json!({
        "levels": t.levels.iter().map(|l| sset_to_value(l)).collect::<Vec<_>>(),
        "transitions": maps,
    })
}

/// Parses a tower map: `{"source": tower, "target": tower, "maps": [...]}`.
pub fn tower_map_from_value(v: &Value, base: Option<&Path>) -> Result<TowerMap> {
    let source = space_tower_from_value(
        &load_entry(
            v.get("source")
                .ok_or_else(|| tower_err("$.source", "missing field"))?,
            base,
            "$.source",
        )?,
        base,
    )?;
    let target = space_tower_from_value(
        &load_entry(
            v.get("target")
                .ok_or_else(|| tower_err("$.target", "missing field"))?,
            base,
            "$.target",
        )?,
        base,
    )?;
    let maps_v = v
        .get("maps")
        .and_then(Value::as_array)
        .ok_or_else(|| tower_err("$.maps", "expected an array"))?;
    if maps_v.len() != source.len() {
        return Err(tower_err("$.maps", "one map per level is required"));
    }
    let mut maps = Vec::new();
    for (k, m) in maps_v.iter().enumerate() {
        let loc = format!("$.maps[{k}]");
        let m = load_entry(m, base, &loc)?;
        let images = smap_images_from_value(m.get("map").unwrap_or(&m), &loc)?;
        maps.push(SMap::from_strings(
            source.levels[k].clone(),
            target.levels[k].clone(),
            &images,
        )?);
    }
    TowerMap::new(source, target, maps)
}

pub fn tower_map_to_value(f: &TowerMap) -> Value {
    let maps: Vec<Value> = f
        .maps
        .iter()
        .map(|m| {
            let mut o = serde_json::Map::new();
            for (k, v) in m.to_strings() {
                o.insert(k, json!(v));
            }
            json!({ "map": Value::Object(o) })
        })
        .collect();
    json!({
        "source": space_tower_to_value(&f.source),
        "target": space_tower_to_value(&f.target),
        "maps": maps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab(orders: &[u64]) -> AbGroup {
        AbGroup::new(orders.to_vec()).unwrap()
    }

    #[test]
    fn constant_tower_is_stably_constant() {
        let m = ab(&[2, 6]);
        let t = AbTower::constant(&m, 4);
        let d = tower_lim(&t).unwrap();
        assert_eq!(
            d.shape,
            LimShape::StablyConstant {
                value: m.structure(),
                from: 0
            }
        );
        assert!(tower_lim1(&t).is_zero());
    }

    #[test]
    fn adic_tower_is_its_own_image_tower() {
        let t = AbTower::adic(2, 5);
        let d = tower_lim(&t).unwrap();
        assert_eq!(d.shape, LimShape::ImageTower);
        assert_eq!(d.images, t.structures());
        assert!(t.surjective_transitions().iter().all(|&s| s));
        assert!(tower_lim1(&t).is_zero());
    }

    #[test]
    fn alternating_zero_maps() {
        let z2 = ab(&[2]);
        let zero = AbGroup::zero();
        let levels = vec![
            z2.clone(),
            zero.clone(),
            z2.clone(),
            zero.clone(),
            z2.clone(),
            zero.clone(),
        ];
        let transitions = (0..5)
            .map(|k| AbHom::zero(&levels[k + 1], &levels[k]))
            .collect();
        let t = AbTower::new(levels, transitions).unwrap();
        let d = tower_lim(&t).unwrap();
        assert_eq!(
            d.shape,
            LimShape::StablyConstant {
                value: FinAb::zero(),
                from: 0
            }
        );
        assert!(d.images.iter().all(FinAb::is_zero));
    }

    #[test]
    fn single_level() {
        let t = AbTower::constant(&ab(&[3]), 1);
        assert!(tower_lim1(&t).is_zero());
        assert!(matches!(
            tower_lim(&t).unwrap().shape,
            LimShape::StablyConstant { .. }
        ));
    }

    #[test]
    fn factorial_tower() {
        let t = GroupTower::factorial(4);
        let orders: Vec<usize> = t.levels.iter().map(FiniteGroup::order).collect();
        assert_eq!(orders, vec![1, 2, 6, 24]);
        assert!(t.surjective.iter().all(|&s| s));
    }

    #[test]
    fn non_homomorphism_is_rejected() {
        let z2 = ab(&[2]);
        let z4 = ab(&[4]);
        assert!(AbHom::new(z2.clone(), z4.clone(), vec![vec![1]]).is_err());
        let bad = GroupTower::new(
            vec![FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)],
            vec![vec![0, 1, 1]],
        );
        assert!(bad.is_err());
    }
}
