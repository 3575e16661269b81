//! Appendix-point doubly linked rings, validated arc polygons, and the
//! circuits that make up a boolean result.

use std::fmt;

use crate::error::{Error, Result};
use crate::geom::{intersect_edges, point_on_edge, BBox, Edge, Point, Tolerances};

pub type NodeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tag {
    Vertex,
    Appendix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum EntryExit {
    #[default]
    None,
    Entry,
    Exit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    pub data: Point,
    pub tag: Tag,
    pub crossing: bool,
    pub ee: EntryExit,
    pub prev: NodeId,
    pub next: NodeId,
    /// Index of the crossing this node stands for, shared with its twin.
    pub xid: Option<usize>,
}

impl Node {
    fn new(data: Point, tag: Tag) -> Self {
        Node { data, tag, crossing: false, ee: EntryExit::None, prev: 0, next: 0, xid: None }
    }
}

/// Circular doubly linked list stored in an arena. Removed nodes stay in the
/// arena but are unlinked, so ids remain stable across mutation.
#[derive(Debug, Clone, PartialEq)]
pub struct Ring {
    nodes: Vec<Node>,
    live: Vec<bool>,
    head: NodeId,
    len: usize,
}

impl Ring {
    pub fn from_points(pts: &[(Point, Tag)]) -> Ring {
        let n = pts.len();
        let nodes = pts
            .iter()
            .enumerate()
            .map(|(i, &(p, t))| {
                let mut node = Node::new(p, t);
                node.prev = (i + n - 1) % n.max(1);
                node.next = (i + 1) % n.max(1);
                node
            })
            .collect();
        Ring { nodes, live: vec![true; n], head: 0, len: n }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Number of arena slots, live or removed; every id is below this.
    pub fn node_capacity(&self) -> usize {
        self.nodes.len()
    }

    pub fn head(&self) -> NodeId {
        self.head
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub fn node_mut(&mut self, id: NodeId) -> &mut Node {
        &mut self.nodes[id]
    }

    pub fn next(&self, id: NodeId) -> NodeId {
        self.nodes[id].next
    }

    pub fn prev(&self, id: NodeId) -> NodeId {
        self.nodes[id].prev
    }

    /// Splice a new node in after `at` and return its id.
    pub fn insert_after(&mut self, at: NodeId, data: Point, tag: Tag) -> NodeId {
        let id = self.nodes.len();
        let next = self.nodes[at].next;
        let mut node = Node::new(data, tag);
        node.prev = at;
        node.next = next;
        self.nodes.push(node);
        self.live.push(true);
        self.nodes[at].next = id;
        self.nodes[next].prev = id;
        self.len += 1;
        id
    }

    /// Unlink a node. Removing the head moves the head to its successor.
    pub fn remove(&mut self, id: NodeId) {
        if !self.live[id] {
            return;
        }
        let (prev, next) = (self.nodes[id].prev, self.nodes[id].next);
        self.nodes[prev].next = next;
        self.nodes[next].prev = prev;
        self.live[id] = false;
        self.len -= 1;
        if self.head == id {
            self.head = next;
        }
    }

    /// Node ids in ring order starting at the head.
    pub fn ids(&self) -> RingIter<'_> {
        RingIter { ring: self, cur: self.head, left: self.len }
    }

    /// True iff `next` and `prev` are mutually inverse and following `next`
    /// from the head visits exactly `len` live nodes before returning.
    pub fn check_integrity(&self) -> bool {
        if self.len == 0 {
            return true;
        }
        let mut cur = self.head;
        for _ in 0..self.len {
            if !self.live[cur] {
                return false;
            }
            let next = self.nodes[cur].next;
            if self.nodes[next].prev != cur {
                return false;
            }
            cur = next;
        }
        cur == self.head
    }

    pub fn to_points(&self) -> Vec<(Point, Tag)> {
        self.ids().map(|id| (self.nodes[id].data, self.nodes[id].tag)).collect()
    }
}

pub struct RingIter<'a> {
    ring: &'a Ring,
    cur: NodeId,
    left: usize,
}

impl Iterator for RingIter<'_> {
    type Item = NodeId;
    fn next(&mut self) -> Option<NodeId> {
        if self.left == 0 {
            return None;
        }
        let id = self.cur;
        self.cur = self.ring.nodes[id].next;
        self.left -= 1;
        Some(id)
    }
}

/// Material edges of a point list: an appendix fuses its two neighbours into
/// one arc. The list must start with a vertex and contain no two adjacent
/// appendices. An arc that fails to construct reports the appendix index.
fn build_edges(pts: &[(Point, Tag)], tol: &Tolerances) -> Result<(Vec<Edge>, Vec<usize>)> {
    let n = pts.len();
    let mut edges = Vec::new();
    let mut starts = Vec::new();
    let mut i = 0;
    while i < n {
        let (p, _) = pts[i];
        let (q, qt) = pts[(i + 1) % n];
        if qt == Tag::Appendix {
            let (r, _) = pts[(i + 2) % n];
            let e = Edge::arc(p, q, r, tol).map_err(|_| Error::BadAppendix(i + 1))?;
            edges.push(e);
            starts.push(i);
            i += 2;
        } else {
            edges.push(Edge::segment(p, q, tol)?);
            starts.push(i);
            i += 1;
        }
    }
    Ok((edges, starts))
}

/// Signed area of a closed chain of edges.
pub fn boundary_area(edges: &[Edge]) -> f64 {
    edges.iter().map(Edge::area_term).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Inside,
    Outside,
    OnBoundary,
}

const RAY_RETRIES: usize = 8;

/// Classify `p` against the closed boundary `edges` by ray-crossing parity.
pub fn locate(p: Point, edges: &[Edge], tol: &Tolerances) -> Location {
    if edges.iter().any(|e| point_on_edge(p, e, tol)) {
        return Location::OnBoundary;
    }
    let step = 8.0 * tol.eps_pt;
    for k in 0..=RAY_RETRIES {
        let y = p.y + k as f64 * step;
        if let Some(odd) = ray_parity(p.x, y, edges, tol) {
            return if odd { Location::Inside } else { Location::Outside };
        }
    }
    Location::OnBoundary
}

/// Parity of crossings between the ray from (x, y) towards +x and the
/// boundary, or `None` when the ray grazes a vertex or is tangent to an arc.
fn ray_parity(x: f64, y: f64, edges: &[Edge], tol: &Tolerances) -> Option<bool> {
    let mut odd = false;
    for e in edges {
        let (s, t) = (e.start(), e.end());
        if (s.y - y).abs() <= tol.eps_pt || (t.y - y).abs() <= tol.eps_pt {
            if s.x.max(t.x) + tol.eps_pt >= x || e.is_arc() {
                return None;
            }
            continue;
        }
        match e {
            Edge::Segment(_) => {
                if (s.y > y) != (t.y > y) {
                    let xc = s.x + (t.x - s.x) * ((y - s.y) / (t.y - s.y));
                    if xc > x {
                        odd = !odd;
                    }
                }
            }
            Edge::Arc(a) => {
                let c = a.center();
                let r = a.radius();
                let dy = y - c.y;
                if (dy.abs() - r).abs() <= tol.eps_pt {
                    return None;
                }
                if dy.abs() > r {
                    continue;
                }
                let dx = (r * r - dy * dy).sqrt();
                for xc in [c.x - dx, c.x + dx] {
                    if xc > x {
                        let u = a.param_of(Point::new(xc, y));
                        if (0.0..=1.0).contains(&u) {
                            odd = !odd;
                        }
                    }
                }
            }
        }
    }
    Some(odd)
}

/// A validated simple, counter-clockwise circular-arc polygon.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcPolygon {
    ring: Ring,
    edges: Vec<Edge>,
    edge_nodes: Vec<NodeId>,
    edge_boxes: Vec<BBox>,
    bbox: BBox,
    tol: Tolerances,
}

impl ArcPolygon {
    /// Build and fully validate a polygon from its node list.
    pub fn from_point_list(pts: &[(Point, Tag)], tol: &Tolerances) -> Result<ArcPolygon> {
        let poly = Self::build(pts, tol)?;
        let a = poly.area();
        if a.is_nan() || a <= 0.0 {
            return Err(Error::NotCcw(a));
        }
        poly.check_simple()?;
        Ok(poly)
    }

    /// Build without the quadratic simplicity check. Orientation and local
    /// edge validity are still enforced.
    pub fn trusted(pts: &[(Point, Tag)], tol: &Tolerances) -> Result<ArcPolygon> {
        let poly = Self::build(pts, tol)?;
        let a = poly.area();
        if a.is_nan() || a <= 0.0 {
            return Err(Error::NotCcw(a));
        }
        Ok(poly)
    }

    fn build(pts: &[(Point, Tag)], tol: &Tolerances) -> Result<ArcPolygon> {
        for &(p, _) in pts {
            if !(p.x.is_finite() && p.y.is_finite()) {
                return Err(Error::NonFinite { x: p.x, y: p.y });
            }
        }
        let first_vertex = pts.iter().position(|&(_, t)| t == Tag::Vertex).ok_or(Error::TooFewVertices)?;
        let mut list = pts.to_vec();
        list.rotate_left(first_vertex);
        let n = list.len();
        for i in 0..n {
            if list[i].1 == Tag::Appendix && list[(i + 1) % n].1 == Tag::Appendix {
                return Err(Error::BadAppendix((i + first_vertex) % n));
            }
        }
        let vertices = list.iter().filter(|&&(_, t)| t == Tag::Vertex).count();
        let arcs = n - vertices;
        // Two vertices suffice when at least one edge is an arc (a disc is two
        // semicircles); otherwise a proper polygon needs three.
        if vertices < 2 || (vertices == 2 && arcs == 0) {
            return Err(Error::TooFewVertices);
        }
        let (edges, starts) = build_edges(&list, tol).map_err(|e| match e {
            Error::BadAppendix(i) => Error::BadAppendix((i + first_vertex) % n),
            other => other,
        })?;
        let edge_boxes: Vec<BBox> = edges.iter().map(Edge::bbox).collect();
        let bbox = edge_boxes.iter().copied().reduce(|a, b| a.union(&b)).expect("at least two edges");
        Ok(ArcPolygon { ring: Ring::from_points(&list), edges, edge_nodes: starts, edge_boxes, bbox, tol: *tol })
    }

    fn check_simple(&self) -> Result<()> {
        let m = self.edges.len();
        for i in 0..m {
            for j in i + 1..m {
                let adjacent_fwd = j == i + 1;
                let adjacent_back = i == 0 && j == m - 1;
                let hits = intersect_edges(&self.edges[i], &self.edges[j], &self.tol).map_err(|_| Error::NotSimple(i, j))?;
                let mut shared = Vec::with_capacity(2);
                if adjacent_fwd {
                    shared.push(self.edges[i].end());
                }
                if adjacent_back {
                    shared.push(self.edges[i].start());
                }
                let bad = hits.iter().any(|h| !shared.iter().any(|s| s.dist(*h) <= self.tol.eps_pt));
                if bad {
                    return Err(Error::NotSimple(i, j));
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    /// Ring node at which edge `i` starts.
    pub fn edge_node(&self, i: usize) -> NodeId {
        self.edge_nodes[i]
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    /// Bounding box of edge `i`.
    pub fn edge_box(&self, i: usize) -> BBox {
        self.edge_boxes[i]
    }

    /// Union of the edge bounding boxes.
    pub fn mbr(&self) -> BBox {
        self.bbox
    }

    pub fn area(&self) -> f64 {
        boundary_area(&self.edges)
    }

    pub fn to_point_list(&self) -> Vec<(Point, Tag)> {
        self.ring.to_points()
    }

    pub fn point_in_polygon(&self, p: Point) -> Location {
        if !self.bbox.contains(p, self.tol.eps_pt) {
            return Location::Outside;
        }
        locate(p, &self.edges, &self.tol)
    }
}

/// Reverse the traversal direction of a point list; appendices stay between
/// the same pair of vertices.
pub fn reverse_point_list(pts: &[(Point, Tag)]) -> Vec<(Point, Tag)> {
    let mut out = pts.to_vec();
    out.reverse();
    out
}

/// Shorthand for a vertex record.
pub fn vertex(x: f64, y: f64) -> (Point, Tag) {
    (Point::new(x, y), Tag::Vertex)
}

/// Shorthand for an appendix record.
pub fn appendix(x: f64, y: f64) -> (Point, Tag) {
    (Point::new(x, y), Tag::Appendix)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Vertex,
    Appendix,
    Crossing,
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NodeKind::Vertex => "V",
            NodeKind::Appendix => "A",
            NodeKind::Crossing => "X",
        })
    }
}

/// Which input polygon a circuit node was copied from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Source {
    P1,
    P2,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircuitNode {
    pub point: Point,
    pub kind: NodeKind,
    pub source: Source,
}

/// One closed loop of a boolean result. `edges[i]` runs from the i-th
/// non-appendix node to the next one, carrying the exact circle of the input
/// arc it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    pub nodes: Vec<CircuitNode>,
    pub edges: Vec<Edge>,
    /// Whether the walk produced a clockwise loop that was then reversed.
    pub was_clockwise: bool,
}

impl Circuit {
    pub fn from_polygon(p: &ArcPolygon, source: Source) -> Circuit {
        let nodes = p
            .ring()
            .to_points()
            .into_iter()
            .map(|(point, tag)| CircuitNode {
                point,
                kind: match tag {
                    Tag::Vertex => NodeKind::Vertex,
                    Tag::Appendix => NodeKind::Appendix,
                },
                source,
            })
            .collect();
        Circuit { nodes, edges: p.edges().to_vec(), was_clockwise: false }
    }

    pub fn area(&self) -> f64 {
        boundary_area(&self.edges)
    }

    pub fn kinds(&self) -> Vec<NodeKind> {
        self.nodes.iter().map(|n| n.kind).collect()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Node list in the polygon encoding; crossings become plain vertices.
    pub fn to_point_list(&self) -> Vec<(Point, Tag)> {
        self.nodes
            .iter()
            .map(|n| {
                let tag = if n.kind == NodeKind::Appendix { Tag::Appendix } else { Tag::Vertex };
                (n.point, tag)
            })
            .collect()
    }

    pub fn locate(&self, p: Point, tol: &Tolerances) -> Location {
        locate(p, &self.edges, tol)
    }

    /// Reverse the loop in place, keeping the first node first.
    pub fn reverse(&mut self) {
        self.nodes.reverse();
        self.nodes.rotate_right(1);
        self.edges.reverse();
        for e in &mut self.edges {
            *e = e.reversed();
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    Intersection,
    Union,
    Difference,
}

impl Op {
    pub const ALL: [Op; 3] = [Op::Intersection, Op::Union, Op::Difference];

    pub fn name(self) -> &'static str {
        match self {
            Op::Intersection => "intersection",
            Op::Union => "union",
            Op::Difference => "difference",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoolResult {
    pub op: Op,
    pub circuits: Vec<Circuit>,
}

impl BoolResult {
    pub fn is_empty(&self) -> bool {
        self.circuits.is_empty()
    }

    pub fn area(&self) -> f64 {
        self.circuits.iter().map(Circuit::area).sum()
    }
}
