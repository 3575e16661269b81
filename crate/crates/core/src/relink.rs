//! Splice the filed crossings back into copies of the input rings.
//!
//! Decomposed arcs are healed here: the pieces of a run are merged back into
//! the original arc, split only at real crossings, and each resulting sub-arc
//! gets exactly one appendix node.

use crate::error::{Error, Result};
use crate::geom::{Arc, Edge, Point, Segment, Tolerances};
use crate::polygon::{ArcPolygon, NodeId, NodeKind, Ring, Source, Tag};
use crate::sweep::{SeqItem, SeqList};

/// A crossing to be inserted on an edge: its point and crossing id.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeCrossing {
    pub point: Point,
    pub xid: usize,
}

/// Interior nodes of an edge after splitting, plus the sub-edges between
/// consecutive non-appendix nodes (one more than the number of crossings).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Chain {
    pub nodes: Vec<(Point, NodeKind, Option<usize>)>,
    pub edges: Vec<Edge>,
    /// Appendix nodes created rather than carried over.
    pub new_appendices: usize,
}

#[derive(Debug, Default)]
struct Scratch {
    params: Vec<f64>,
    xs: Vec<EdgeCrossing>,
    chain: Chain,
}

fn params_along(e: &Edge, xs: &[EdgeCrossing], tol: &Tolerances, out: &mut Vec<f64>) -> Result<()> {
    out.clear();
    let mut prev: Option<(f64, Point)> = None;
    for x in xs {
        let t = e.param_of(x.point);
        if let Some((pt, pp)) = prev {
            if t <= pt || pp.dist(x.point) <= tol.eps_pt {
                return Err(Error::DegenerateConfiguration(format!(
                    "crossings at ({}, {}) and ({}, {}) are not separable",
                    pp.x, pp.y, x.point.x, x.point.y
                )));
            }
        }
        prev = Some((t, x.point));
        out.push(t);
    }
    Ok(())
}

impl Chain {
    fn clear(&mut self) {
        self.nodes.clear();
        self.edges.clear();
        self.new_appendices = 0;
    }
}

fn split_arc_into(arc: &Arc, xs: &[EdgeCrossing], tol: &Tolerances, params: &mut Vec<f64>, chain: &mut Chain) -> Result<()> {
    params_along(&Edge::Arc(*arc), xs, tol, params)?;
    chain.clear();
    let old = arc.appendix();
    let t_old = arc.param_of(old);
    let old_clear = xs.iter().all(|x| x.point.dist(old) > tol.eps_pt);
    let mut t0 = 0.0;
    let mut p0 = arc.start();
    let bounds = xs.iter().zip(params.iter()).map(|(x, &t)| (x.point, t, Some(x.xid))).chain(std::iter::once((arc.end(), 1.0, None)));
    for (p1, t1, xid) in bounds {
        let mut sub = arc.sub_arc(t0, t1, p0, p1);
        if old_clear && t_old > t0 && t_old < t1 {
            sub = sub.with_appendix(old);
        } else {
            chain.new_appendices += 1;
        }
        chain.nodes.push((sub.appendix(), NodeKind::Appendix, None));
        chain.edges.push(Edge::Arc(sub));
        if let Some(id) = xid {
            chain.nodes.push((p1, NodeKind::Crossing, Some(id)));
        }
        t0 = t1;
        p0 = p1;
    }
    Ok(())
}

fn split_segment_into(s: &Segment, xs: &[EdgeCrossing], tol: &Tolerances, params: &mut Vec<f64>, chain: &mut Chain) -> Result<()> {
    params_along(&Edge::Segment(*s), xs, tol, params)?;
    chain.clear();
    let mut p0 = s.start;
    for x in xs {
        chain.nodes.push((x.point, NodeKind::Crossing, Some(x.xid)));
        chain.edges.push(Edge::Segment(Segment { start: p0, end: x.point }));
        p0 = x.point;
    }
    chain.edges.push(Edge::Segment(Segment { start: p0, end: s.end }));
    Ok(())
}

fn split_into(e: &Edge, xs: &[EdgeCrossing], tol: &Tolerances, params: &mut Vec<f64>, chain: &mut Chain) -> Result<()> {
    match e {
        Edge::Segment(s) => split_segment_into(s, xs, tol, params, chain),
        Edge::Arc(a) => split_arc_into(a, xs, tol, params, chain),
    }
}

/// Split an arc at ordered crossings. Every sub-arc carries one appendix:
/// the original one when it falls strictly inside that sub-arc and clear of
/// every crossing, a fresh angular midpoint otherwise.
pub fn insert_appendix_points(arc: &Arc, xs: &[EdgeCrossing], tol: &Tolerances) -> Result<Chain> {
    let mut chain = Chain::default();
    split_arc_into(arc, xs, tol, &mut Vec::with_capacity(xs.len()), &mut chain)?;
    Ok(chain)
}

/// Split an original edge at crossings ordered along it.
pub fn split_original(e: &Edge, xs: &[EdgeCrossing], tol: &Tolerances) -> Result<Chain> {
    let mut chain = Chain::default();
    split_into(e, xs, tol, &mut Vec::with_capacity(xs.len()), &mut chain)?;
    Ok(chain)
}

/// Appends the crossings of a run to `out`; false when there are none.
fn merge_run_into(run: &[SeqItem], original: &Edge, tol: &Tolerances, out: &mut Vec<EdgeCrossing>) -> Result<bool> {
    let arc = original.as_arc().ok_or_else(|| Error::InconsistentRun("run does not come from an arc".into()))?;
    for it in run {
        let piece = it.edge.as_arc().ok_or_else(|| Error::InconsistentRun("run contains a segment".into()))?;
        let r = arc.radius();
        if piece.center().dist(arc.center()) > tol.eps_rel * r || (piece.radius() - r).abs() > tol.eps_rel * r {
            return Err(Error::InconsistentRun(format!("piece of edge {} lies on another circle", it.origin)));
        }
    }
    let before = out.len();
    out.extend(run.iter().flat_map(|it| it.xsecs.iter()).map(|x| EdgeCrossing { point: x.point, xid: x.id }));
    Ok(out.len() > before)
}

/// Crossings of a decomposed-arc run in order along the original arc, or
/// `None` when the run has none and the original edge is kept as is.
pub fn merge_run(run: &[SeqItem], original: &Edge, tol: &Tolerances) -> Result<Option<Vec<EdgeCrossing>>> {
    let mut out = Vec::new();
    Ok(merge_run_into(run, original, tol, &mut out)?.then_some(out))
}

/// A relinked ring: nodes tagged vertex / appendix / crossing, each
/// non-appendix node knowing the exact edge that leaves it.
#[derive(Debug, Clone, PartialEq)]
pub struct NewRing {
    pub ring: Ring,
    pub source: Source,
    out: Vec<Option<Edge>>,
    by_xid: Vec<NodeId>,
}

impl NewRing {
    /// Edge leaving a non-appendix node in ring direction.
    pub fn out_edge(&self, id: NodeId) -> &Edge {
        self.out[id].as_ref().expect("non-appendix node has an outgoing edge")
    }

    /// Next non-appendix node, and the appendix skipped on the way if any.
    pub fn step_forward(&self, id: NodeId) -> (Option<NodeId>, NodeId) {
        let n = self.ring.next(id);
        if self.ring.node(n).tag == Tag::Appendix {
            (Some(n), self.ring.next(n))
        } else {
            (None, n)
        }
    }

    pub fn step_backward(&self, id: NodeId) -> (Option<NodeId>, NodeId) {
        let n = self.ring.prev(id);
        if self.ring.node(n).tag == Tag::Appendix {
            (Some(n), self.ring.prev(n))
        } else {
            (None, n)
        }
    }

    /// The crossing node carrying crossing id `xid`.
    pub fn node_of_xid(&self, xid: usize) -> NodeId {
        self.by_xid[xid]
    }

    pub fn kind(&self, id: NodeId) -> NodeKind {
        let n = self.ring.node(id);
        match (n.tag, n.crossing) {
            (Tag::Appendix, _) => NodeKind::Appendix,
            (Tag::Vertex, true) => NodeKind::Crossing,
            (Tag::Vertex, false) => NodeKind::Vertex,
        }
    }

    pub fn kinds(&self) -> Vec<NodeKind> {
        self.ring.ids().map(|id| self.kind(id)).collect()
    }

    /// Crossing nodes in ring order from the head.
    pub fn crossing_nodes(&self) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(self.by_xid.len());
        out.extend(self.ring.ids().filter(|&id| self.ring.node(id).crossing));
        out
    }

    pub fn crossing_count(&self) -> usize {
        self.by_xid.len()
    }

    /// All edges of the ring in order; they close up into the boundary.
    pub fn edges(&self) -> Vec<Edge> {
        self.ring.ids().filter(|&id| self.ring.node(id).tag == Tag::Vertex).map(|id| *self.out_edge(id)).collect()
    }
}

/// Instrumentation gathered while relinking.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RelinkStats {
    /// Per split arc: (crossings on it, appendix nodes created for it).
    pub arc_appendices: Vec<(usize, usize)>,
    /// Length of every decomposed-arc run consumed.
    pub run_lengths: Vec<usize>,
}

fn relink_one(p: &ArcPolygon, s: &SeqList, k: usize, source: Source, stats: &mut RelinkStats) -> Result<NewRing> {
    let tol = p.tolerances();
    let mut pts: Vec<(Point, Tag)> = Vec::with_capacity(p.ring().len() + 3 * k);
    let mut kinds: Vec<(bool, Option<usize>)> = Vec::with_capacity(pts.capacity());
    let mut out: Vec<Option<Edge>> = Vec::with_capacity(pts.capacity());
    let mut scratch = Scratch::default();
    let mut j = 0;
    for (origin, e) in p.edges().iter().enumerate() {
        let begin = j;
        while j < s.items.len() && s.items[j].origin == origin {
            j += 1;
        }
        let items = &s.items[begin..j];
        if items.len() > 1 || items.first().is_some_and(|it| it.tri != 0) {
            let tri = items[0].tri;
            if tri == 0 || items.iter().any(|it| it.tri != tri) {
                return Err(Error::InconsistentRun(format!("edge {origin} maps to mixed items")));
            }
            stats.run_lengths.push(items.len());
        }
        scratch.xs.clear();
        let crossed = match items {
            [] => false,
            [it] if it.tri == 0 => {
                scratch.xs.extend(it.xsecs.iter().map(|x| EdgeCrossing { point: x.point, xid: x.id }));
                !it.xsecs.is_empty()
            }
            run => merge_run_into(run, e, tol, &mut scratch.xs)?,
        };
        pts.push((e.start(), Tag::Vertex));
        kinds.push((false, None));
        if !crossed {
            out.push(Some(*e));
            if let Some(a) = e.appendix() {
                pts.push((a, Tag::Appendix));
                kinds.push((false, None));
                out.push(None);
            }
            continue;
        }
        let Scratch { params, xs, chain } = &mut scratch;
        split_into(e, xs, tol, params, chain)?;
        if e.is_arc() {
            stats.arc_appendices.push((xs.len(), chain.new_appendices));
        }
        let mut sub = chain.edges.iter();
        out.push(sub.next().copied());
        for &(pt, kind, xid) in &chain.nodes {
            match kind {
                NodeKind::Appendix => {
                    pts.push((pt, Tag::Appendix));
                    kinds.push((false, None));
                    out.push(None);
                }
                _ => {
                    pts.push((pt, Tag::Vertex));
                    kinds.push((true, xid));
                    out.push(sub.next().copied());
                }
            }
        }
    }
    if j != s.items.len() {
        return Err(Error::InconsistentRun("sequence list items out of ring order".into()));
    }
    let mut ring = Ring::from_points(&pts);
    let mut by_xid = vec![usize::MAX; k];
    for (id, &(crossing, xid)) in kinds.iter().enumerate() {
        if crossing {
            let x = xid.expect("crossing nodes carry an id");
            let node = ring.node_mut(id);
            node.crossing = true;
            node.xid = Some(x);
            by_xid[x] = id;
        }
    }
    if by_xid.contains(&usize::MAX) {
        return Err(Error::InconsistentRun("a crossing was not filed on this polygon".into()));
    }
    Ok(NewRing { ring, source, out, by_xid })
}

/// Build P1* and P2* from the inputs and their filled sequence lists.
/// `k` is the number of crossings; ids in the lists run over `0..k`.
pub fn construct_new_linked_lists(
    p1: &ArcPolygon,
    p2: &ArcPolygon,
    s1: &SeqList,
    s2: &SeqList,
    k: usize,
) -> Result<(NewRing, NewRing, RelinkStats)> {
    let mut stats = RelinkStats::default();
    let r1 = relink_one(p1, s1, k, Source::P1, &mut stats)?;
    let r2 = relink_one(p2, s2, k, Source::P2, &mut stats)?;
    Ok((r1, r2, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::vertex;
    use crate::sweep::construct_sequence_lists;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn upper() -> Arc {
        Arc::through(Point::new(1.0, 0.0), Point::new(0.0, 1.0), Point::new(-1.0, 0.0), &tol()).unwrap()
    }

    fn x(px: f64, py: f64, xid: usize) -> EdgeCrossing {
        EdgeCrossing { point: Point::new(px, py), xid }
    }

    #[test]
    fn appendix_kept_when_clear() {
        let a = (PI / 4.0).sin_cos();
        let c = insert_appendix_points(&upper(), &[x(a.1, a.0, 0)], &tol()).unwrap();
        assert_eq!(c.new_appendices, 1);
        assert_eq!(c.edges[1].appendix(), Some(Point::new(0.0, 1.0)));
        assert_eq!(c.nodes.len(), 3);
    }

    #[test]
    fn appendix_replaced_when_hit() {
        let c = insert_appendix_points(&upper(), &[x(0.0, 1.0, 0)], &tol()).unwrap();
        assert_eq!(c.new_appendices, 2);
        let h = FRAC_1_SQRT_2;
        assert!(c.edges[0].appendix().unwrap().dist(Point::new(h, h)) < 1e-12);
        assert!(c.edges[1].appendix().unwrap().dist(Point::new(-h, h)) < 1e-12);
        let kinds: Vec<_> = c.nodes.iter().map(|n| n.1).collect();
        assert_eq!(kinds, vec![NodeKind::Appendix, NodeKind::Crossing, NodeKind::Appendix]);
    }

    #[test]
    fn inseparable_crossings_are_degenerate() {
        let r = insert_appendix_points(&upper(), &[x(0.0, 1.0, 0), x(0.0, 1.0, 1)], &tol());
        assert!(matches!(r, Err(Error::DegenerateConfiguration(_))));
    }

    fn square(x0: f64, y0: f64, s: f64) -> ArcPolygon {
        let pts = [vertex(x0, y0), vertex(x0 + s, y0), vertex(x0 + s, y0 + s), vertex(x0, y0 + s)];
        ArcPolygon::from_point_list(&pts, &tol()).unwrap()
    }

    #[test]
    fn offset_squares_gain_two_crossings_each() {
        let (a, b) = (square(0.0, 0.0, 2.0), square(1.0, 1.0, 2.0));
        let (sw, _) = construct_sequence_lists(&a, &b).unwrap();
        let k = sw.crossings.len();
        let (r1, r2, _) = construct_new_linked_lists(&a, &b, &sw.s1, &sw.s2, k).unwrap();
        use NodeKind::*;
        assert_eq!(r1.kinds(), vec![Vertex, Vertex, Crossing, Vertex, Crossing, Vertex]);
        assert_eq!(r2.kinds(), vec![Vertex, Crossing, Vertex, Vertex, Vertex, Crossing]);
        assert!(r1.ring.check_integrity() && r2.ring.check_integrity());
        for xid in 0..k {
            let (n1, n2) = (r1.node_of_xid(xid), r2.node_of_xid(xid));
            assert_eq!(r1.ring.node(n1).data, r2.ring.node(n2).data);
        }
        let area: f64 = r1.edges().iter().map(Edge::area_term).sum();
        assert!((area - 4.0).abs() < 1e-12);
    }

    #[test]
    fn no_crossings_reproduces_input() {
        let (a, b) = (square(0.0, 0.0, 1.0), square(0.5, 3.0, 1.0));
        let s1 = crate::sweep::full_sequence_list(&a);
        let s2 = crate::sweep::full_sequence_list(&b);
        let (r1, r2, _) = construct_new_linked_lists(&a, &b, &s1, &s2, 0).unwrap();
        assert_eq!(r1.ring.to_points(), a.to_point_list());
        assert_eq!(r2.ring.to_points(), b.to_point_list());
        assert_eq!(r1.edges(), a.edges());
    }
}
