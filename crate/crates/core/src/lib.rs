//! Non-crossing bichromatic perfect matchings ("BR-matchings") of planar
//! point sets in general position.
//!
//! The crate builds a matching for any balanced point set, decides whether
//! that matching is the only one, sorts matchings into linear, circular and
//! cut-admitting ones, and produces explicit witnesses for each verdict.
//! All decisions use exact rational arithmetic.

pub mod classify;
pub mod construct;
pub mod cut;
pub mod error;
pub mod geom;
pub mod hull;
pub mod io;
pub mod matching;
pub mod pointset;
pub mod sort;
pub mod testlab;

pub use error::{Error, Result};
pub use geom::{orient, Color, Coord, DirectedLine, Point, Segment, Sign, Vector};
pub use matching::BrMatching;
pub use pointset::PointSet;
