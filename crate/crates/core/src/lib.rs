//! Enumerative combinatorics of grid shapes: nonkissing and nonfriendly
//! complexes, the Grid-Tamari lattice, biclosed and wide sets of segments,
//! the g-vector fan, tableaux descents and the F-, H- and M-triangles.

pub mod biclosed;
pub mod catalog;
pub mod checks;
pub mod complexes;
pub mod error;
pub mod fan;
pub mod gallery;
pub mod kostant;
pub mod lattice;
pub mod paths;
pub mod shape;
pub mod tableaux;
pub mod tamari;
pub mod triangles;
pub mod wide;

pub use catalog::{Catalog, SegSet};
pub use error::{Error, Result};
pub use shape::{Cell, Shape, Vertex};
