//! Finite families of homothets of a single body, and their JSON file format.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::geometry::{ConvexBody, Placement};

/// Provenance carried alongside a family.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FamilyMeta {
    #[serde(default)]
    pub construction: String,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, serde_json::Value>,
}

impl FamilyMeta {
    pub fn construction(name: &str) -> Self {
        Self { construction: name.to_string(), ..Self::default() }
    }

    pub fn with_param(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Family {
    pub body: ConvexBody,
    pub placements: Vec<Placement>,
    #[serde(default)]
    pub meta: FamilyMeta,
    /// Optional claimed adjacency (0-based member pairs), checked by `verify`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claimed_edges: Option<Vec<[usize; 2]>>,
}

impl Family {
    pub fn new(body: ConvexBody, placements: Vec<Placement>) -> Result<Self> {
        Self::with_meta(body, placements, FamilyMeta::default())
    }

    pub fn with_meta(body: ConvexBody, placements: Vec<Placement>, meta: FamilyMeta) -> Result<Self> {
        let family = Self { body, placements, meta, claimed_edges: None };
        family.validate()?;
        Ok(family)
    }

    /// Translates of `body` at the given centres.
    pub fn translates(body: ConvexBody, centers: impl IntoIterator<Item = Vec<f64>>) -> Result<Self> {
        Self::new(body, centers.into_iter().map(Placement::translate).collect())
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.body.dimension();
        for p in &self.placements {
            p.validate()?;
            if p.dimension() != n {
                return Err(Error::DimensionMismatch { expected: n, found: p.dimension() });
            }
        }
        if let Some(edges) = &self.claimed_edges {
            for &[i, j] in edges {
                for idx in [i, j] {
                    if idx >= self.len() {
                        return Err(Error::IndexOutOfRange { index: idx, count: self.len() });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.placements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.placements.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.body.dimension()
    }

    /// The shared scale when every member is a translate of the same homothet.
    pub fn common_scale(&self) -> Option<f64> {
        let first = self.placements.first().map_or(1.0, |p| p.scale);
        self.placements
            .iter()
            .all(|p| (p.scale - first).abs() <= 1e-12 * first.max(1.0))
            .then_some(first)
    }

    pub fn is_translate_family(&self) -> bool {
        self.common_scale().is_some()
    }

    /// Same placements over a different body.
    pub fn with_body(&self, body: ConvexBody) -> Result<Self> {
        let mut f = self.clone();
        f.body = body;
        f.claimed_edges = None;
        f.validate()?;
        Ok(f)
    }

    pub fn subfamily(&self, members: &[usize]) -> Family {
        Family {
            body: self.body.clone(),
            placements: members.iter().map(|&i| self.placements[i].clone()).collect(),
            meta: self.meta.clone(),
            claimed_edges: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let family: Family = serde_json::from_str(text)?;
        family.validate()?;
        Ok(family)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("family serializes")
    }

    /// SHA-256 of the canonical JSON encoding, hex encoded.
    pub fn digest(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("family serializes");
        Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
    }
}
