use std::collections::HashMap;
use std::sync::Arc;

use super::formal::{Cell, Formal};
use super::sset::SSet;
use crate::error::{Error, Result};

/// A simplicial map, given by the image of each nondegenerate simplex.
#[derive(Clone, Debug)]
pub struct SMap {
    source: Arc<SSet>,
    target: Arc<SSet>,
    images: Vec<Vec<Formal>>,
}

impl SMap {
    /// Validates that the images have the right dimensions and commute with
    /// all face maps up to the smaller of the two dimension caps.
    pub fn new(source: Arc<SSet>, target: Arc<SSet>, images: Vec<Vec<Formal>>) -> Result<SMap> {
        let cap = source.dim_cap().min(target.dim_cap());
        if images.len() < cap + 1 {
            return Err(Error::InvalidMap(format!(
                "images given for {} dimensions, need {}",
                images.len(),
                cap + 1
            )));
        }
        let mut images = images;
        images.truncate(cap + 1);
        for n in 0..=cap {
            if images[n].len() != source.count(n) {
                return Err(Error::InvalidMap(format!(
                    "dimension {n}: {} images for {} simplices",
                    images[n].len(),
                    source.count(n)
                )));
            }
            for (k, f) in images[n].iter().enumerate() {
                if f.dim() != n
                    || f.base.dim > target.dim_cap()
                    || f.base.idx >= target.count(f.base.dim)
                {
                    return Err(Error::InvalidMap(format!(
                        "image of `{}` is not an {n}-simplex of the target",
                        source.ids(n)[k]
                    )));
                }
            }
        }
        let map = SMap {
            source,
            target,
            images,
        };
        map.check_faces()?;
        Ok(map)
    }

    /// Builds a map from identifier pairs, images in formal-string syntax.
    pub fn from_strings(
        source: Arc<SSet>,
        target: Arc<SSet>,
        images: &HashMap<String, String>,
    ) -> Result<SMap> {
        let cap = source.dim_cap().min(target.dim_cap());
        let mut out = Vec::with_capacity(cap + 1);
        for n in 0..=cap {
            let mut level = Vec::with_capacity(source.count(n));
            for id in source.ids(n) {
                let s = images
                    .get(id)
                    .ok_or_else(|| Error::InvalidMap(format!("no image given for `{id}`")))?;
                level.push(target.parse_formal(s)?);
            }
            out.push(level);
        }
        SMap::new(source, target, out)
    }

    pub fn identity(x: Arc<SSet>) -> SMap {
        let images = (0..=x.dim_cap())
            .map(|n| x.cells(n).map(Formal::nondegenerate).collect())
            .collect();
        SMap {
            source: x.clone(),
            target: x,
            images,
        }
    }

    /// The constant map at a vertex.
    pub fn constant(source: Arc<SSet>, target: Arc<SSet>, vertex: usize) -> Result<SMap> {
        let v = Formal::nondegenerate(Cell::new(0, vertex));
        let cap = source.dim_cap().min(target.dim_cap());
        let images = (0..=cap)
            .map(|n| {
                let mut f = v.clone();
                for _ in 0..n {
                    f = f.degenerate(0);
                }
                vec![f; source.count(n)]
            })
            .collect();
        SMap::new(source, target, images)
    }

    pub fn source(&self) -> &Arc<SSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SSet> {
        &self.target
    }

    /// Dimensions in which the map is defined.
    pub fn dim_cap(&self) -> usize {
        self.images.len() - 1
    }

    pub fn image(&self, c: Cell) -> &Formal {
        &self.images[c.dim][c.idx]
    }

    pub fn apply(&self, x: &Formal) -> Formal {
        self.image(x.base).pull(&x.surj)
    }

    fn check_faces(&self) -> Result<()> {
        for n in 1..=self.dim_cap() {
            for c in self.source.cells(n) {
                let fx = self.image(c);
                for i in 0..=n {
                    let a = self.apply(self.source.face(c, i));
                    let b = self.target.face_formal(fx, i);
                    if a != b {
                        return Err(Error::InvalidMap(format!(
                            "`{}`: f(d_{i} x) = {} but d_{i} f(x) = {}",
                            self.source.id(c),
                            self.target.formal_string(&a),
                            self.target.formal_string(&b)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SMap) -> Result<SMap> {
        if !Arc::ptr_eq(&self.target, &other.source) && *self.target != *other.source {
            return Err(Error::InvalidMap("composition of non-matching maps".into()));
        }
        let cap = self.dim_cap().min(other.dim_cap());
        let images = (0..=cap)
            .map(|n| self.images[n].iter().map(|f| other.apply(f)).collect())
            .collect();
        SMap::new(self.source.clone(), other.target.clone(), images)
    }

    /// Whether every target simplex (up to the map's cap) is hit.
    pub fn is_levelwise_surjective(&self) -> bool {
        (0..=self.dim_cap()).all(|n| {
            let mut hit = vec![false; self.target.count(n)];
            for f in &self.images[n] {
                if let Some(c) = f.as_cell() {
                    hit[c.idx] = true;
                }
            }
            hit.iter().all(|&h| h)
        })
    }

    /// Whether the map is a bijection on nondegenerate simplices in every
    /// dimension up to its cap.
    pub fn is_isomorphism(&self) -> bool {
        (0..=self.dim_cap()).all(|n| {
            if self.source.count(n) != self.target.count(n) {
                return false;
            }
            let mut hit = vec![false; self.target.count(n)];
            for f in &self.images[n] {
                match f.as_cell() {
                    Some(c) if !hit[c.idx] => hit[c.idx] = true,
                    _ => return false,
                }
            }
            true
        })
    }

    /// The inverse of an isomorphism.
    pub fn inverse(&self) -> Result<SMap> {
        if !self.is_isomorphism() {
            return Err(Error::InvalidMap("map is not an isomorphism".into()));
        }
        let mut images: Vec<Vec<Formal>> = (0..=self.dim_cap())
            .map(|n| vec![Formal::nondegenerate(Cell::new(n, 0)); self.target.count(n)])
            .collect();
        for n in 0..=self.dim_cap() {
            for (k, f) in self.images[n].iter().enumerate() {
                images[n][f.base.idx] = Formal::nondegenerate(Cell::new(n, k));
            }
        }
        SMap::new(self.target.clone(), self.source.clone(), images)
    }

    /// Image strings keyed by source identifier.
    pub fn to_strings(&self) -> Vec<(String, String)> {
        (0..=self.dim_cap())
            .flat_map(|n| {
                self.source.cells(n).map(move |c| {
                    (
                        self.source.id(c).to_string(),
                        self.target.formal_string(self.image(c)),
                    )
                })
            })
            .collect()
    }

    /// Images of vertices as target vertex indices.
    pub fn vertex_map(&self) -> Vec<usize> {
        self.images[0].iter().map(|f| f.base.idx).collect()
    }
}

impl PartialEq for SMap {
    fn eq(&self, other: &Self) -> bool {
        *self.source == *other.source
            && *self.target == *other.target
            && self.images == other.images
    }
}
