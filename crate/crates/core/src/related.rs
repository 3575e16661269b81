//! Related-edge selection: only edges inside the overlap band of the two
//! bounding boxes, taken along the effective axis, can meet the other polygon.

use crate::error::{Error, Result};
use crate::geom::{decompose_arc, is_x_monotone, BBox, Edge, Tolerances};
use crate::polygon::ArcPolygon;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

/// The four extended boundary lines of each bounding box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtendedBoundaries {
    pub l1: f64,
    pub r1: f64,
    pub t1: f64,
    pub b1: f64,
    pub l2: f64,
    pub r2: f64,
    pub t2: f64,
    pub b2: f64,
}

impl ExtendedBoundaries {
    pub fn new(b1: &BBox, b2: &BBox) -> Self {
        ExtendedBoundaries { l1: b1.xmin, r1: b1.xmax, t1: b1.ymax, b1: b1.ymin, l2: b2.xmin, r2: b2.xmax, t2: b2.ymax, b2: b2.ymin }
    }

    /// The inner pair of lines along `axis`: the middle two of the four
    /// sorted boundary coordinates. Covers partial overlap and containment
    /// in either direction alike.
    pub fn band(&self, axis: Axis) -> (f64, f64) {
        let mut c = match axis {
            Axis::X => [self.l1, self.r1, self.l2, self.r2],
            Axis::Y => [self.b1, self.t1, self.b2, self.t2],
        };
        c.sort_by(f64::total_cmp);
        (c[1], c[2])
    }
}

pub fn mbr(p: &ArcPolygon) -> BBox {
    p.mbr()
}

/// Y when the overlap of the boxes is at least as wide as it is tall, X
/// otherwise, and `None` when the boxes are separated by more than `eps_pt`.
pub fn effective_axis(b1: &BBox, b2: &BBox, tol: &Tolerances) -> Option<Axis> {
    let ov = b1.intersection(b2, tol.eps_pt)?;
    if ov.width() >= ov.height() {
        Some(Axis::Y)
    } else {
        Some(Axis::X)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelatedEdge {
    pub edge: Edge,
    /// Index of the edge in its polygon.
    pub origin: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelatedEdgeSet {
    pub r1: Vec<RelatedEdge>,
    pub r2: Vec<RelatedEdge>,
    pub axis: Axis,
    pub band: (f64, f64),
}

fn in_band(b: &BBox, axis: Axis, band: (f64, f64), eps: f64) -> bool {
    let (lo, hi) = match axis {
        Axis::X => (b.xmin, b.xmax),
        Axis::Y => (b.ymin, b.ymax),
    };
    hi >= band.0 - eps && lo <= band.1 + eps
}

fn pick(p: &ArcPolygon, axis: Axis, band: (f64, f64), eps: f64) -> Vec<RelatedEdge> {
    let mut out = Vec::with_capacity(p.n_edges());
    for (origin, &edge) in p.edges().iter().enumerate() {
        if in_band(&p.edge_box(origin), axis, band, eps) {
            out.push(RelatedEdge { edge, origin });
        }
    }
    out
}

/// Edges of both polygons whose boxes touch the closed band, in ring order.
pub fn select_related(p1: &ArcPolygon, p2: &ArcPolygon) -> Result<RelatedEdgeSet> {
    let tol = p1.tolerances();
    let (b1, b2) = (p1.mbr(), p2.mbr());
    let axis = effective_axis(&b1, &b2, tol).ok_or(Error::DisjointInputs)?;
    let band = ExtendedBoundaries::new(&b1, &b2).band(axis);
    Ok(RelatedEdgeSet { r1: pick(p1, axis, band, tol.eps_pt), r2: pick(p2, axis, band, tol.eps_pt), axis, band })
}

/// A related edge after decomposition; `decomposed` marks pieces of a
/// non-x-monotone arc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProcessedEdge {
    pub edge: Edge,
    pub origin: usize,
    pub decomposed: bool,
}

/// Replace every non-x-monotone arc by its x-monotone pieces, in place.
pub fn process_related(r: &[RelatedEdge]) -> Vec<ProcessedEdge> {
    let mut out = Vec::with_capacity(r.len() + r.len() / 2);
    for re in r {
        if is_x_monotone(&re.edge) {
            out.push(ProcessedEdge { edge: re.edge, origin: re.origin, decomposed: false });
            continue;
        }
        let pieces = decompose_arc(&re.edge).expect("validated arc decomposes");
        out.extend(pieces.into_iter().map(|edge| ProcessedEdge { edge, origin: re.origin, decomposed: true }));
    }
    out
}
