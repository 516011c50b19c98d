//! Quivers with potential from maximal weakly separated collections, their
//! Jacobian algebras, cuts and mutations.

pub mod cuts;
pub mod cyclic;
pub mod error;
pub mod families;
pub mod jacobian;
pub mod linalg;
pub mod modules;
pub mod mutation;
pub mod oracle;
pub mod planar;
pub mod quiver;
pub mod samples;
pub mod search;
pub mod tiling;

pub use cyclic::{validate_collection, weakly_separated, Collection, CollectionJson, KSubset};
pub use error::{Error, Result};
pub use quiver::{Arrow, Face, Quiver, QuiverJson, QuiverMap, Vertex};
pub use tiling::{build_tiling, embed, Point, Tiling};
