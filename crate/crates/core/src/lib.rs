//! Boolean operations on circular-arc polygons with the RE2L algorithm.

pub mod boolean;
pub mod compare;
pub mod error;
pub mod generate;
pub mod geom;
pub mod oracle;
pub mod polygon;
pub mod related;
pub mod relink;
pub mod sweep;
pub mod traversal;

pub use error::{Error, ErrorClass, Result};
pub use geom::{BBox, Edge, Point, Tolerances};
pub use polygon::{ArcPolygon, BoolResult, Circuit, Location, NodeKind, Op, Tag};
