//! Resolving `--space` and `--tower` arguments to objects.
//!
//! An argument naming an existing file is parsed by its shape; anything
//! else is looked up in the corpus as `name` or `name:param`.

use std::path::Path;
use std::sync::Arc;

use phk_core::classifying::PrincipalBundle;
use phk_core::corpus::{self, CorpusObject};
use phk_core::simplicial::json::{smap_from_json, sset_from_json};
use phk_core::simplicial::SSet;
use phk_core::towers::{space_tower_from_value, tower_map_from_value, SpaceTower, TowerMap};
use phk_core::{Error, Result};
use serde_json::Value;

pub fn load(arg: &str) -> Result<CorpusObject> {
    let path = Path::new(arg);
    if !path.is_file() {
        if arg.ends_with(".json") {
            return Err(Error::Parse {
                location: arg.to_string(),
                message: "no such file".into(),
            });
        }
        return corpus::corpus(arg);
    }
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        location: arg.to_string(),
        message: e.to_string(),
    })?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse {
        location: format!("{arg} line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    let base = path.parent();
    if v.get("dim_cap").is_some() {
        Ok(CorpusObject::Space(Arc::new(sset_from_json(&text)?)))
    } else if v.get("levels").is_some() {
        Ok(CorpusObject::Tower(space_tower_from_value(&v, base)?))
    } else if v.get("maps").is_some() {
        Ok(CorpusObject::TowerMap(tower_map_from_value(&v, base)?))
    } else if v.get("map").is_some() {
        Ok(CorpusObject::Map(smap_from_json(&text)?))
    } else {
        Err(Error::Parse {
            location: format!("{arg} $"),
            message: "not a simplicial set, map, tower or tower map".into(),
        })
    }
}

fn wrong_kind(arg: &str, want: &str, got: &CorpusObject) -> Error {
    Error::Parse {
        location: arg.to_string(),
        message: format!("expected a {want}, found a {}", got.kind()),
    }
}

pub fn space(arg: &str) -> Result<Arc<SSet>> {
    match load(arg)? {
        CorpusObject::Space(x) => Ok(x),
        other => Err(wrong_kind(arg, "space", &other)),
    }
}

pub fn bundle(arg: &str) -> Result<Option<PrincipalBundle>> {
    match load(arg)? {
        CorpusObject::Bundle(b) => Ok(Some(b)),
        CorpusObject::Space(_) => Ok(None),
        other => Err(wrong_kind(arg, "bundle or space", &other)),
    }
}

pub fn tower(arg: &str) -> Result<SpaceTower> {
    match load(arg)? {
        CorpusObject::Tower(t) => Ok(t),
        CorpusObject::Space(x) => Ok(SpaceTower::constant(x, 1)),
        other => Err(wrong_kind(arg, "tower", &other)),
    }
}

pub fn tower_map(arg: &str) -> Result<TowerMap> {
    match load(arg)? {
        CorpusObject::TowerMap(f) => Ok(f),
        CorpusObject::Map(f) => Ok(TowerMap::from_map(&f)),
        other => Err(wrong_kind(arg, "tower map", &other)),
    }
}
