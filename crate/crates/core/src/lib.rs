//! b-colorings of Kneser graphs.
//!
//! A b-coloring is a proper coloring in which every color class contains a
//! dominating vertex: one with a neighbor in every other class. The
//! b-chromatic number is the largest color count admitting such a
//! coloring. This crate builds explicit b-colorings of `KG(m,n)` with
//! `2*C(floor(m/2), n)` colors (plus one for odd m), checks arbitrary
//! colorings independently, and computes exact values at desk scale.
//!
//! ```
//! use kneser_b::{construction, kneser::KneserParams, verify};
//!
//! let p = KneserParams::new(10, 3).unwrap();
//! let coloring = construction::build(p).unwrap();
//! let report = verify::is_b_coloring(&coloring);
//! assert!(report.is_b);
//! assert_eq!(report.color_count, 20);
//! ```

pub mod coloring;
pub mod combinatorics;
pub mod construction;
pub mod kneser;
pub mod solver;
pub mod verify;

pub use coloring::{ColorLabel, Coloring};
pub use combinatorics::{SubsetRank, VertexSet};
pub use kneser::KneserParams;
