//! Cluster characters of acyclic quivers: representations, Caldero-Chapoton
//! maps, generic characters and cluster algebra seeds.

pub mod cache;
pub mod characters;
pub mod cluster;
pub mod engine;
pub mod error;
pub mod generic;
pub mod laurent;
pub mod linalg;
pub mod quiver;
pub mod rep;
pub mod suites;

pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use linalg::{Field, FieldKind, Matrix, PrimeField, Rationals};
pub use quiver::{EulerData, Quiver, QuiverSpec};
pub use rep::{AnyRep, QRep, Representation};
pub use characters::{coindex_of, g_vector, g_vector_of_index, index_of, ClusterObject};
pub use cluster::{enumerate_seeds, Enumeration, Seed};
pub use engine::{Engine, Settings};
pub use generic::{min_proj_decomposition, ProjDecomposition, ProjectiveMap};
