//! Coloring and clique-partition reports shared by the algorithms.

use serde::{Deserialize, Serialize};

/// Palette block of a member: line residues `k` and cell residue `c`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BlockLabel {
    pub k: Vec<usize>,
    pub c: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ColoringReport {
    pub method: String,
    /// Colour id per member.
    pub colors: Vec<usize>,
    pub colors_used: usize,
    /// The bound the colouring was checked against, evaluated at `omega_used`.
    pub bound_value: usize,
    /// Clique number fed to the bound: exact when computed, else a certified lower bound.
    pub omega_used: usize,
    pub omega_exact: bool,
    /// Multiplicative factor of the bound (`t` or `κ`).
    pub factor: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<BlockLabel>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub palette_size: Option<usize>,
    /// Largest number of neighbours later in the size order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_back_degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph_matches: Option<bool>,
}

impl ColoringReport {
    pub fn within_bound(&self) -> bool {
        self.colors_used <= self.bound_value
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartitionReport {
    pub method: String,
    /// Class id per member.
    pub classes: Vec<usize>,
    pub classes_used: usize,
    pub bound_value: usize,
    /// Packing number fed to the bound: exact when computed, else a certified lower bound.
    pub nu_used: usize,
    pub nu_exact: bool,
    pub factor: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<BlockLabel>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rounds: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa_ub: Option<usize>,
    /// Common point of each class, when one was used to form it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub piercing_points: Option<Vec<Option<Vec<f64>>>>,
    /// Total piercing points placed over all rounds.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub piercing_count: Option<usize>,
    #[serde(default)]
    pub fallback_used: bool,
}

impl PartitionReport {
    pub fn within_bound(&self) -> bool {
        self.classes_used <= self.bound_value
    }
}
