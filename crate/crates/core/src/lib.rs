pub mod cli;
pub mod constructions;
pub mod covering;
pub mod error;
pub mod family;
pub mod geometry;
pub mod graph;
pub mod homothet;
pub mod report;
pub mod translate;

pub use error::{Error, Result};
pub use family::{Family, FamilyMeta};
