//! JSON form of simplicial sets and maps.
//!
//! ```text
//! { "dim_cap": D,
//!   "simplices": { "0": [ids...], "1": [...], ... },
//!   "faces": { "<id>": ["<formal>", ...] } }
//! ```
//!
//! A formal simplex is `s_{i1}s_{i2}...|<base-id>` with strictly decreasing
//! indices, or `<base-id>` when nondegenerate. Serialization is canonical:
//! dimensions in increasing order, faces in listing order, two-space
//! indentation and a trailing newline.

use std::collections::HashMap;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use super::smap::SMap;
use super::sset::{SSet, SSetListing};
use crate::error::{Error, Result};

fn schema(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        location: location.into(),
        message: message.into(),
    }
}

fn parse_value(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| {
        schema(
            format!("line {}, column {}", e.line(), e.column()),
            e.to_string(),
        )
    })
}

fn string_list(v: &Value, location: &str) -> Result<Vec<String>> {
    let arr = v
        .as_array()
        .ok_or_else(|| schema(location, "expected an array of strings"))?;
    arr.iter()
        .enumerate()
        .map(|(i, s)| {
            s.as_str()
                .map(str::to_string)
                .ok_or_else(|| schema(format!("{location}[{i}]"), "expected a string"))
        })
        .collect()
}

pub fn sset_to_value(x: &SSet) -> Value {
    let mut simplices = Map::new();
    for n in 0..=x.dim_cap() {
        simplices.insert(n.to_string(), json!(x.ids(n)));
    }
    let mut faces = Map::new();
    for n in 1..=x.dim_cap() {
        for c in x.cells(n) {
            let fl: Vec<String> = x.faces_of(c).iter().map(|f| x.formal_string(f)).collect();
            faces.insert(x.id(c).to_string(), json!(fl));
        }
    }
    let mut root = Map::new();
    root.insert("dim_cap".into(), json!(x.dim_cap()));
    root.insert("simplices".into(), Value::Object(simplices));
    root.insert("faces".into(), Value::Object(faces));
    Value::Object(root)
}

pub fn sset_to_json(x: &SSet) -> String {
    let mut s = serde_json::to_string_pretty(&sset_to_value(x)).expect("serializable");
    s.push('\n');
    s
}

pub fn sset_from_value(v: &Value) -> Result<SSet> {
    let obj = v
        .as_object()
        .ok_or_else(|| schema("$", "expected an object"))?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "dim_cap" | "simplices" | "faces") {
            return Err(schema(format!("$.{key}"), "unknown field"));
        }
    }
    let dim_cap =
        obj.get("dim_cap")
            .ok_or_else(|| schema("$.dim_cap", "missing field"))?
            .as_u64()
            .ok_or_else(|| schema("$.dim_cap", "expected a nonnegative integer"))? as usize;
    let simp = obj
        .get("simplices")
        .ok_or_else(|| schema("$.simplices", "missing field"))?
        .as_object()
        .ok_or_else(|| schema("$.simplices", "expected an object"))?;
    let mut levels: Vec<(usize, Vec<String>)> = Vec::new();
    for (k, list) in simp {
        let n: usize = k.parse().map_err(|_| {
            schema(
                format!("$.simplices.{k}"),
                "dimension keys must be integers",
            )
        })?;
        levels.push((n, string_list(list, &format!("$.simplices.{k}"))?));
    }
    levels.sort_by_key(|(n, _)| *n);
    let top = levels.last().map_or(0, |(n, _)| *n);
    let mut simplices = vec![Vec::new(); top.max(dim_cap) + 1];
    for (n, ids) in levels {
        simplices[n] = ids;
    }
    let mut faces = HashMap::new();
    if let Some(f) = obj.get("faces") {
        let f = f
            .as_object()
            .ok_or_else(|| schema("$.faces", "expected an object"))?;
        for (k, list) in f {
            faces.insert(k.clone(), string_list(list, &format!("$.faces.{k}"))?);
        }
    }
    SSet::from_listing(&SSetListing {
        dim_cap,
        simplices,
        faces,
    })
}

pub fn sset_from_json(text: &str) -> Result<SSet> {
    sset_from_value(&parse_value(text)?)
}

/// `{ "source": <sset>, "target": <sset>, "map": { "<id>": "<formal>" } }`
pub fn smap_to_value(f: &SMap) -> Value {
    let mut images = Map::new();
    for (k, v) in f.to_strings() {
        images.insert(k, json!(v));
    }
    json!({
        "source": sset_to_value(f.source()),
        "target": sset_to_value(f.target()),
        "map": Value::Object(images),
    })
}

pub fn smap_to_json(f: &SMap) -> String {
    let mut s = serde_json::to_string_pretty(&smap_to_value(f)).expect("serializable");
    s.push('\n');
    s
}

/// Parses the image table of a map between known simplicial sets.
pub fn smap_images_from_value(v: &Value, location: &str) -> Result<HashMap<String, String>> {
    let obj = v
        .as_object()
        .ok_or_else(|| schema(location, "expected an object of images"))?;
    obj.iter()
        .map(|(k, s)| {
            s.as_str()
                .map(|s| (k.clone(), s.to_string()))
                .ok_or_else(|| {
                    schema(
                        format!("{location}.{k}"),
                        "expected a formal-simplex string",
                    )
                })
        })
        .collect()
}

pub fn smap_from_json(text: &str) -> Result<SMap> {
    let v = parse_value(text)?;
    let source = Arc::new(sset_from_value(
        v.get("source")
            .ok_or_else(|| schema("$.source", "missing field"))?,
    )?);
    let target = Arc::new(sset_from_value(
        v.get("target")
            .ok_or_else(|| schema("$.target", "missing field"))?,
    )?);
    let images = smap_images_from_value(
        v.get("map")
            .ok_or_else(|| schema("$.map", "missing field"))?,
        "$.map",
    )?;
    SMap::from_strings(source, target, &images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::standard::{standard_space, StandardKind};

    #[test]
    fn circle_canonical_bytes() {
        let c = standard_space(StandardKind::Circle, 1, 1).unwrap();
        let expected = "{\n  \"dim_cap\": 1,\n  \"simplices\": {\n    \"0\": [\n      \"0\"\n    ],\n    \"1\": [\n      \"01\"\n    ]\n  },\n  \"faces\": {\n    \"01\": [\n      \"0\",\n      \"0\"\n    ]\n  }\n}\n";
        assert_eq!(sset_to_json(&c), expected);
    }

    #[test]
    fn out_of_order_dimensions_are_reordered() {
        let text =
            r#"{"faces": {"e": ["v", "v"]}, "simplices": {"1": ["e"], "0": ["v"]}, "dim_cap": 1}"#;
        let x = sset_from_json(text).unwrap();
        let canon = sset_to_json(&x);
        assert!(canon.find("\"0\"").unwrap() < canon.find("\"1\"").unwrap());
        assert_eq!(sset_from_json(&canon).unwrap(), x);
    }

    #[test]
    fn syntax_error_has_position() {
        match sset_from_json("{\"dim_cap\": 1,\n  \"simplices\": [}") {
            Err(Error::Parse { location, .. }) => assert!(location.starts_with("line 2")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn schema_error_has_path() {
        match sset_from_json(r#"{"dim_cap": 0, "simplices": {"0": ["a", 3]}}"#) {
            Err(Error::Parse { location, .. }) => assert_eq!(location, "$.simplices.0[1]"),
            other => panic!("unexpected {other:?}"),
        }
    }
}
