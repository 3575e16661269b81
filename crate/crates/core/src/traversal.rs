//! Entry/exit assignment and the three traversal rules that turn a pair of
//! relinked rings into result circuits.

use crate::error::{Error, Result};
use crate::geom::Edge;
use crate::polygon::{ArcPolygon, BoolResult, Circuit, CircuitNode, EntryExit, Location, NodeId, NodeKind, Op};
use crate::relink::NewRing;

fn edge_length(e: &Edge) -> f64 {
    match e {
        Edge::Segment(s) => s.length(),
        Edge::Arc(a) => a.radius() * a.sweep().abs(),
    }
}

fn flip(ee: EntryExit) -> EntryExit {
    match ee {
        EntryExit::Entry => EntryExit::Exit,
        EntryExit::Exit => EntryExit::Entry,
        EntryExit::None => EntryExit::None,
    }
}

/// Label the crossings of P1* alternately Entry / Exit in ring order and copy
/// each label onto the twin in P2*.
///
/// The alternation is anchored at the crossing whose following piece of P1*
/// is longest: it is an Entry iff that piece's midpoint lies inside P2. The
/// longest piece keeps the containment test well away from the boundary.
pub fn assign_entry_exit(r1: &mut NewRing, r2: &mut NewRing, p2: &ArcPolygon) -> Result<()> {
    let xs = r1.crossing_nodes();
    let k = xs.len();
    if k % 2 == 1 {
        return Err(Error::OddCrossingCount(k));
    }
    if k == 0 {
        return Ok(());
    }
    let mut order: Vec<usize> = (0..k).collect();
    let lens: Vec<f64> = xs.iter().map(|&n| edge_length(r1.out_edge(n))).collect();
    order.sort_by(|&a, &b| lens[b].total_cmp(&lens[a]).then(a.cmp(&b)));
    let mut anchor = None;
    for &i in &order {
        let mid = r1.out_edge(xs[i]).midpoint();
        match p2.point_in_polygon(mid) {
            Location::Inside => {
                anchor = Some((i, EntryExit::Entry));
                break;
            }
            Location::Outside => {
                anchor = Some((i, EntryExit::Exit));
                break;
            }
            Location::OnBoundary => {}
        }
    }
    let (a, ee_a) = anchor.ok_or_else(|| Error::DegenerateConfiguration("every crossing is followed by shared boundary".into()))?;
    for (i, &n) in xs.iter().enumerate() {
        let ee = if (i + k - a).is_multiple_of(2) { ee_a } else { flip(ee_a) };
        r1.ring.node_mut(n).ee = ee;
        let xid = r1.ring.node(n).xid.expect("crossing id");
        let twin = r2.node_of_xid(xid);
        r2.ring.node_mut(twin).ee = ee;
    }
    Ok(())
}

/// Whether the crossing labels strictly alternate along the ring.
pub fn alternates(r: &NewRing) -> bool {
    let labels: Vec<EntryExit> = r.crossing_nodes().iter().map(|&n| r.ring.node(n).ee).collect();
    if labels.contains(&EntryExit::None) {
        return false;
    }
    (0..labels.len()).all(|i| labels[i] != labels[(i + 1) % labels.len()])
}

struct Walk<'a> {
    rings: [&'a NewRing; 2],
    visited_x: Vec<bool>,
    visited_v1: Vec<bool>,
    guard: usize,
}

/// Which ring a walk switches away from at a crossing with a given label.
type SwitchRule = fn(ring: usize, ee: EntryExit) -> bool;

impl<'a> Walk<'a> {
    fn new(r1: &'a NewRing, r2: &'a NewRing) -> Self {
        let k = r1.crossing_count();
        Walk {
            rings: [r1, r2],
            visited_x: vec![false; k],
            visited_v1: vec![false; r1.ring.node_capacity()],
            guard: r1.ring.len() + r2.ring.len() + 2,
        }
    }

    /// Trace one circuit from `start` in P1*. P2* is walked backward when
    /// `backward_in_p2` is set.
    fn trace(&mut self, start: NodeId, rule: SwitchRule, backward_in_p2: bool) -> Result<Circuit> {
        let start_xid = self.rings[0].ring.node(start).xid;
        let mut nodes = Vec::with_capacity(self.guard);
        let mut edges = Vec::with_capacity(self.guard);
        let (mut ri, mut n) = (0usize, start);
        for _ in 0..self.guard {
            let ring = self.rings[ri];
            let node = ring.ring.node(n);
            let kind = ring.kind(n);
            nodes.push(CircuitNode { point: node.data, kind, source: ring.source });
            if let Some(x) = node.xid {
                self.visited_x[x] = true;
                if rule(ri, node.ee) {
                    ri = 1 - ri;
                    n = self.rings[ri].node_of_xid(x);
                }
            } else if ri == 0 {
                self.visited_v1[n] = true;
            }
            let ring = self.rings[ri];
            let forward = ri == 0 || !backward_in_p2;
            let (app, m) = if forward { ring.step_forward(n) } else { ring.step_backward(n) };
            let edge = if forward { *ring.out_edge(n) } else { ring.out_edge(m).reversed() };
            if let Some(a) = app {
                nodes.push(CircuitNode { point: ring.ring.node(a).data, kind: NodeKind::Appendix, source: ring.source });
            }
            edges.push(edge);
            n = m;
            let closed = match start_xid {
                Some(x) => ring.ring.node(n).xid == Some(x),
                None => ri == 0 && n == start,
            };
            if closed {
                let mut c = Circuit { nodes, edges, was_clockwise: false };
                if c.area() < 0.0 {
                    c.reverse();
                    c.was_clockwise = true;
                }
                return Ok(c);
            }
        }
        Err(Error::TraversalStuck(format!("circuit from node {start} did not close")))
    }
}

fn intersection_rule(ring: usize, ee: EntryExit) -> bool {
    (ring == 0 && ee == EntryExit::Exit) || (ring == 1 && ee == EntryExit::Entry)
}

fn union_rule(ring: usize, ee: EntryExit) -> bool {
    (ring == 0 && ee == EntryExit::Entry) || (ring == 1 && ee == EntryExit::Exit)
}

fn difference_rule(ring: usize, ee: EntryExit) -> bool {
    (ring == 0 && ee == EntryExit::Entry) || (ring == 1 && ee == EntryExit::Exit)
}

/// First unvisited crossing of P1* with label `want`; `xs` lists the
/// crossing nodes in ring order.
fn first_crossing(r1: &NewRing, xs: &[NodeId], visited: &[bool], want: EntryExit) -> Option<NodeId> {
    xs.iter().copied().find(|&n| {
        let node = r1.ring.node(n);
        node.ee == want && !visited[node.xid.expect("crossing id")]
    })
}

pub fn traverse_intersection(r1: &NewRing, r2: &NewRing) -> Result<BoolResult> {
    let mut w = Walk::new(r1, r2);
    let xs = r1.crossing_nodes();
    let mut circuits = Vec::new();
    while let Some(s) = first_crossing(r1, &xs, &w.visited_x, EntryExit::Entry) {
        circuits.push(w.trace(s, intersection_rule, false)?);
    }
    Ok(BoolResult { op: Op::Intersection, circuits })
}

/// Plain vertices of P1* in ring order, each with a lazily computed location
/// relative to P2.
struct OutsideScan<'a> {
    r1: &'a NewRing,
    p2: &'a ArcPolygon,
    cache: Vec<Option<Location>>,
}

impl<'a> OutsideScan<'a> {
    fn new(r1: &'a NewRing, p2: &'a ArcPolygon) -> Self {
        OutsideScan { r1, p2, cache: vec![None; r1.ring.node_capacity()] }
    }

    fn first(&mut self, skip: &[bool]) -> Option<NodeId> {
        for id in self.r1.ring.ids() {
            if self.r1.kind(id) != NodeKind::Vertex || skip[id] {
                continue;
            }
            let loc = *self.cache[id].get_or_insert_with(|| self.p2.point_in_polygon(self.r1.ring.node(id).data));
            if loc == Location::Outside {
                return Some(id);
            }
        }
        None
    }
}

pub fn traverse_union(r1: &NewRing, r2: &NewRing, p2: &ArcPolygon) -> Result<BoolResult> {
    let mut w = Walk::new(r1, r2);
    let mut scan = OutsideScan::new(r1, p2);
    let start = scan
        .first(&w.visited_v1)
        .or_else(|| first_crossing(r1, &r1.crossing_nodes(), &w.visited_x, EntryExit::Exit))
        .ok_or_else(|| Error::TraversalStuck("no starting point for union".into()))?;
    let c = w.trace(start, union_rule, false)?;
    if w.visited_x.iter().any(|v| !v) {
        return Err(Error::UnionHoleUnsupported);
    }
    Ok(BoolResult { op: Op::Union, circuits: vec![c] })
}

pub fn traverse_difference(r1: &NewRing, r2: &NewRing, p2: &ArcPolygon) -> Result<BoolResult> {
    let mut w = Walk::new(r1, r2);
    let mut scan = OutsideScan::new(r1, p2);
    let xs = r1.crossing_nodes();
    let mut circuits = Vec::new();
    loop {
        let start = match scan.first(&w.visited_v1) {
            Some(v) => v,
            // Every remaining piece of P1 outside P2 is bounded by crossings.
            None => match first_crossing(r1, &xs, &w.visited_x, EntryExit::Exit) {
                Some(x) => x,
                None => break,
            },
        };
        circuits.push(w.trace(start, difference_rule, true)?);
    }
    Ok(BoolResult { op: Op::Difference, circuits })
}

/// A point on the boundary of `a` that is strictly inside or outside `b`.
fn probe(a: &ArcPolygon, b: &ArcPolygon) -> Option<Location> {
    a.edges().iter().map(|e| b.point_in_polygon(e.midpoint())).find(|&l| l != Location::OnBoundary)
}

/// Result when the boundaries do not cross: nested or apart.
pub fn containment_result(op: Op, p1: &ArcPolygon, p2: &ArcPolygon) -> Result<BoolResult> {
    let undecided = || Error::DegenerateConfiguration("boundaries coincide".into());
    let one_in_two = probe(p1, p2).ok_or_else(undecided)? == Location::Inside;
    let two_in_one = !one_in_two && probe(p2, p1).ok_or_else(undecided)? == Location::Inside;
    use crate::polygon::Source::{P1, P2};
    let c1 = || Circuit::from_polygon(p1, P1);
    let c2 = || Circuit::from_polygon(p2, P2);
    let circuits = match op {
        Op::Intersection if one_in_two => vec![c1()],
        Op::Intersection if two_in_one => vec![c2()],
        Op::Intersection => vec![],
        Op::Union if one_in_two => vec![c2()],
        Op::Union if two_in_one => vec![c1()],
        Op::Union => vec![c1(), c2()],
        Op::Difference if one_in_two => vec![],
        Op::Difference if two_in_one => return Err(Error::DifferenceHoleUnsupported),
        Op::Difference => vec![c1()],
    };
    Ok(BoolResult { op, circuits })
}
