//! Sequence lists and the two-label plane sweep that fills them.
//!
//! Each sweep segment carries the polygon it came from (`lb1`) and its index
//! in that polygon's sequence list (`lb2`). Neighbours with equal `lb1` are
//! never tested, and a crossing is filed straight into `list[lb2]`.
//! The unlabeled mode used by the standard baseline tests every adjacent
//! pair, discards same-polygon hits afterwards and files by linear search.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use rustc_hash::FxHashSet;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::geom::{intersect_edges, Edge, Point, Tolerances};
use crate::polygon::ArcPolygon;
use crate::related::{process_related, select_related, RelatedEdge, RelatedEdgeSet};

/// One filed crossing on a sequence item.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Xsec {
    pub point: Point,
    /// Parameter along the item's edge.
    pub param: f64,
    /// Index into the sweep's crossing table.
    pub id: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeqItem {
    pub edge: Edge,
    pub xsecs: SmallVec<[Xsec; 2]>,
    /// 0 for an ordinary edge, 1 or 2 for pieces of a decomposed arc.
    pub tri: u8,
    /// Index of the source edge in its polygon.
    pub origin: usize,
    /// Whether the start / end is a decomposition split point rather than a
    /// polygon vertex.
    pub split_start: bool,
    pub split_end: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SeqList {
    pub items: Vec<SeqItem>,
}

impl SeqList {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn tris(&self) -> Vec<u8> {
        self.items.iter().map(|it| it.tri).collect()
    }

    pub fn crossing_count(&self) -> usize {
        self.items.iter().map(|it| it.xsecs.len()).sum()
    }

    /// Lengths of the maximal runs of decomposed pieces.
    pub fn run_lengths(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut i = 0;
        while i < self.items.len() {
            let it = &self.items[i];
            if it.tri == 0 {
                i += 1;
                continue;
            }
            let mut j = i + 1;
            while j < self.items.len() && self.items[j].tri == it.tri && self.items[j].origin == it.origin {
                j += 1;
            }
            out.push(j - i);
            i = j;
        }
        out
    }

    fn file(&mut self, item: usize, point: Point, id: usize) {
        let it = &mut self.items[item];
        let param = it.edge.param_of(point);
        let at = it.xsecs.partition_point(|x| x.param < param);
        it.xsecs.insert(at, Xsec { point, param, id });
    }
}

/// Build a polygon's sequence list from its related edges: non-x-monotone
/// arcs become runs of pieces whose tri value alternates 1, 2, 1, ...
pub fn initialize_sequence_list(r: &[RelatedEdge]) -> SeqList {
    let processed = process_related(r);
    let mut items: Vec<SeqItem> = Vec::with_capacity(processed.len());
    let mut temp = 2u8;
    let mut i = 0;
    while i < processed.len() {
        let pe = processed[i];
        if !pe.decomposed {
            items.push(SeqItem { edge: pe.edge, xsecs: SmallVec::new(), tri: 0, origin: pe.origin, split_start: false, split_end: false });
            i += 1;
            continue;
        }
        temp = 3 - temp;
        let mut j = i;
        while j < processed.len() && processed[j].decomposed && processed[j].origin == pe.origin {
            j += 1;
        }
        for (k, piece) in processed[i..j].iter().enumerate() {
            items.push(SeqItem {
                edge: piece.edge,
                xsecs: SmallVec::new(),
                tri: temp,
                origin: piece.origin,
                split_start: k > 0,
                split_end: k + 1 < j - i,
            });
        }
        i = j;
    }
    SeqList { items }
}

/// Sequence list of every edge of a polygon.
pub fn full_sequence_list(p: &ArcPolygon) -> SeqList {
    let all: Vec<RelatedEdge> = p.edges().iter().enumerate().map(|(origin, &edge)| RelatedEdge { edge, origin }).collect();
    initialize_sequence_list(&all)
}

/// An inter-polygon crossing and the item of each list it is filed on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossingRecord {
    pub point: Point,
    pub item1: usize,
    pub item2: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SweepStats {
    /// Calls to `intersect_edges`.
    pub pair_tests: u64,
    /// Of those, calls on two edges of the same polygon.
    pub same_polygon_tests: u64,
    pub events: u64,
    pub status_ops: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutput {
    pub s1: SeqList,
    pub s2: SeqList,
    pub crossings: Vec<CrossingRecord>,
    pub stats: SweepStats,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMode {
    Labeled,
    Unlabeled,
}

/// Select related edges, build both sequence lists, and sweep them.
pub fn construct_sequence_lists(p1: &ArcPolygon, p2: &ArcPolygon) -> Result<(SweepOutput, RelatedEdgeSet)> {
    let related = select_related(p1, p2)?;
    let s1 = initialize_sequence_list(&related.r1);
    let s2 = initialize_sequence_list(&related.r2);
    let out = sweep_lists(s1, s2, SweepMode::Labeled, p1.tolerances())?;
    Ok((out, related))
}

#[derive(Debug, Clone, Copy)]
enum Shape {
    Line,
    Vertical,
    Upper { cx: f64, cy: f64, r: f64 },
    Lower { cx: f64, cy: f64, r: f64 },
}

#[derive(Debug, Clone, Copy)]
struct Seg {
    left: Point,
    right: Point,
    shape: Shape,
    ymin: f64,
    ymax: f64,
    /// Polygon of origin (0 or 1).
    lb1: u8,
    /// Index in that polygon's list.
    lb2: u32,
}

impl Seg {
    fn new(it: &SeqItem, lb1: u8, lb2: usize) -> Seg {
        let (left, right) = it.edge.left_right();
        let shape = match &it.edge {
            Edge::Segment(_) if left.x == right.x => Shape::Vertical,
            Edge::Segment(_) => Shape::Line,
            Edge::Arc(a) => {
                let (c, r) = (a.center(), a.radius());
                if a.is_upper() {
                    Shape::Upper { cx: c.x, cy: c.y, r }
                } else {
                    Shape::Lower { cx: c.x, cy: c.y, r }
                }
            }
        };
        let (mut ymin, mut ymax) = (left.y.min(right.y), left.y.max(right.y));
        // An x-monotone arc reaches its circle's top or bottom exactly when
        // the center lies within its x span.
        match shape {
            Shape::Upper { cx, cy, r } if left.x <= cx && cx <= right.x => ymax = cy + r,
            Shape::Lower { cx, cy, r } if left.x <= cx && cx <= right.x => ymin = cy - r,
            _ => {}
        }
        Seg { left, right, shape, ymin, ymax, lb1, lb2: lb2 as u32 }
    }

    /// Height of the segment on the sweep line through `p`. A vertical
    /// segment reports the sweep point's height clamped into its span.
    fn key(&self, p: Point) -> f64 {
        self.y_at(p.x, p.y)
    }

    fn y_at(&self, x: f64, sweep_y: f64) -> f64 {
        let (l, r) = (self.left, self.right);
        if let Shape::Vertical = self.shape {
            return sweep_y.clamp(l.y, r.y);
        }
        if x <= l.x {
            return l.y;
        }
        if x >= r.x {
            return r.y;
        }
        match self.shape {
            Shape::Line => l.y + (r.y - l.y) * ((x - l.x) / (r.x - l.x)),
            Shape::Upper { cx, cy, r } | Shape::Lower { cx, cy, r } => {
                let dx = x - cx;
                let h = ((r - dx) * (r + dx)).max(0.0).sqrt();
                if matches!(self.shape, Shape::Upper { .. }) {
                    cy + h
                } else {
                    cy - h
                }
            }
            Shape::Vertical => unreachable!(),
        }
    }

    fn is_vertical(&self) -> bool {
        matches!(self.shape, Shape::Vertical)
    }
}

/// Vertical order of segments `s` and `t` just right of the sweep point
/// `p`, given their heights `ys` and `yt` on the sweep line.
#[allow(clippy::too_many_arguments)]
fn cmp_at(s: &Seg, ys: f64, t: &Seg, yt: f64, sid: u32, tid: u32, p: Point, eps: f64) -> Ordering {
    if ys < yt - eps {
        return Ordering::Less;
    }
    if ys > yt + eps {
        return Ordering::Greater;
    }
    let by_label = || (s.lb1, s.lb2, sid).cmp(&(t.lb1, t.lb2, tid));
    match (s.is_vertical(), t.is_vertical()) {
        (true, true) => s.left.y.total_cmp(&t.left.y).then_with(by_label),
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
        (false, false) => {
            let span = (s.right.x - p.x).min(t.right.x - p.x);
            if span <= 0.0 {
                return by_label();
            }
            let x = p.x + 0.5 * span;
            s.y_at(x, p.y).total_cmp(&t.y_at(x, p.y)).then_with(by_label)
        }
    }
}

const LEFT: u8 = 0;
const CROSS: u8 = 1;
const RIGHT: u8 = 2;

/// Sweep event. Coordinates are stored as order-preserving integer keys and
/// the tie-breakers packed into one word, so the derived ordering is
/// (x, y, rank, a, b) with coordinates under `f64::total_cmp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Event {
    kx: u64,
    ky: u64,
    /// rank << 56 | a << 28 | b
    tail: u64,
}

const ID_BITS: u32 = 28;
const ID_MASK: u64 = (1 << ID_BITS) - 1;

fn key_of(v: f64) -> u64 {
    let bits = v.to_bits();
    if bits >> 63 == 1 {
        !bits
    } else {
        bits | 1 << 63
    }
}

fn value_of(k: u64) -> f64 {
    f64::from_bits(if k >> 63 == 1 { k & !(1 << 63) } else { !k })
}

impl Event {
    fn new(p: Point, rank: u8, a: u32, b: u32) -> Event {
        Event { kx: key_of(p.x), ky: key_of(p.y), tail: (rank as u64) << 56 | (a as u64) << ID_BITS | b as u64 }
    }

    fn rank(&self) -> u8 {
        (self.tail >> 56) as u8
    }

    fn a(&self) -> u32 {
        ((self.tail >> ID_BITS) & ID_MASK) as u32
    }

    fn b(&self) -> u32 {
        (self.tail & ID_MASK) as u32
    }

    fn point(&self) -> Point {
        Point::new(value_of(self.kx), value_of(self.ky))
    }
}

struct Sweep<'a> {
    segs: Vec<Seg>,
    edges: Vec<&'a Edge>,
    mode: SweepMode,
    tol: Tolerances,
    status: Vec<u32>,
    queue: BinaryHeap<Reverse<Event>>,
    tested: FxHashSet<(u32, u32)>,
    /// Raw hits: (segment a, segment b, point).
    hits: Vec<(u32, u32, Point)>,
    stats: SweepStats,
    current: Point,
}

impl Sweep<'_> {
    fn pos_of(&self, id: u32) -> usize {
        self.status.iter().position(|&s| s == id).expect("segment is in the status")
    }

    fn check(&mut self, a: u32, b: u32) -> Result<()> {
        let (sa, sb) = (&self.segs[a as usize], &self.segs[b as usize]);
        if self.mode == SweepMode::Labeled && sa.lb1 == sb.lb1 {
            return Ok(());
        }
        // Boxes apart: no crossing, now or later.
        let eps = self.tol.eps_pt;
        if sa.ymax < sb.ymin - eps || sb.ymax < sa.ymin - eps || sa.right.x < sb.left.x - eps || sb.right.x < sa.left.x - eps {
            return Ok(());
        }
        let key = (a.min(b), a.max(b));
        if !self.tested.insert(key) {
            return Ok(());
        }
        self.stats.pair_tests += 1;
        if sa.lb1 == sb.lb1 {
            self.stats.same_polygon_tests += 1;
        }
        let pts = intersect_edges(self.edges[a as usize], self.edges[b as usize], &self.tol)?;
        for p in pts {
            self.hits.push((key.0, key.1, p));
            let at_end = [sa.left, sa.right, sb.left, sb.right].iter().any(|q| q.dist(p) <= eps);
            if at_end {
                continue;
            }
            if p.lex_cmp(&self.current) == Ordering::Greater {
                self.queue.push(Reverse(Event::new(p, CROSS, key.0, key.1)));
            }
        }
        Ok(())
    }

    fn insert(&mut self, id: u32, p: Point) -> Result<()> {
        let eps = self.tol.eps_pt;
        let segs = &self.segs;
        let s = &segs[id as usize];
        // The new segment starts at `p`, so its key is `p.y`.
        let ys = s.key(p);
        let pos = self.status.partition_point(|&t| {
            let st = &segs[t as usize];
            // The y range settles most comparisons without evaluating the curve.
            if st.ymax < ys - eps {
                return true;
            }
            if st.ymin > ys + eps {
                return false;
            }
            cmp_at(st, st.key(p), s, ys, t, id, p, eps) == Ordering::Less
        });
        self.status.insert(pos, id);
        self.stats.status_ops += 1;
        if pos > 0 {
            self.check(self.status[pos - 1], id)?;
        }
        if pos + 1 < self.status.len() {
            self.check(id, self.status[pos + 1])?;
        }
        Ok(())
    }

    fn remove(&mut self, id: u32) -> Result<()> {
        let pos = self.pos_of(id);
        self.status.remove(pos);
        self.stats.status_ops += 1;
        if pos > 0 && pos < self.status.len() {
            self.check(self.status[pos - 1], self.status[pos])?;
        }
        Ok(())
    }

    fn swap(&mut self, a: u32, b: u32, p: Point) -> Result<()> {
        let (pa, pb) = (self.pos_of(a), self.pos_of(b));
        let (lo, hi) = (pa.min(pb), pa.max(pb));
        if hi != lo + 1 {
            return Err(Error::DegenerateConfiguration(format!("crossing at ({}, {}) is shared by more than two edges", p.x, p.y)));
        }
        self.status.swap(lo, hi);
        self.stats.status_ops += 1;
        if lo > 0 {
            self.check(self.status[lo - 1], self.status[lo])?;
        }
        if hi + 1 < self.status.len() {
            self.check(self.status[hi], self.status[hi + 1])?;
        }
        Ok(())
    }

    fn run(&mut self) -> Result<()> {
        let mut ends: Vec<Event> = Vec::with_capacity(2 * self.segs.len());
        for (i, s) in self.segs.iter().enumerate() {
            let i = i as u32;
            ends.push(Event::new(s.left, LEFT, i, i));
            ends.push(Event::new(s.right, RIGHT, i, i));
        }
        // x alone orders almost everything; runs sharing an x are rare and short.
        ends.sort_unstable_by_key(|e| e.kx);
        for run in ends.chunk_by_mut(|a, b| a.kx == b.kx) {
            if run.len() > 1 {
                run.sort_unstable();
            }
        }
        let mut next_end = 0;
        loop {
            let take_cross = match (self.queue.peek(), ends.get(next_end)) {
                (Some(Reverse(c)), Some(e)) => c < e,
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (None, None) => break,
            };
            let ev = if take_cross {
                self.queue.pop().expect("peeked").0
            } else {
                next_end += 1;
                ends[next_end - 1]
            };
            self.stats.events += 1;
            let p = ev.point();
            self.current = p;
            match ev.rank() {
                LEFT => self.insert(ev.a(), p)?,
                RIGHT => self.remove(ev.a())?,
                _ => self.swap(ev.a(), ev.b(), p)?,
            }
        }
        Ok(())
    }
}

/// Run the sweep over two sequence lists and file every inter-polygon
/// crossing on one item of each list.
pub fn sweep_lists(mut s1: SeqList, mut s2: SeqList, mode: SweepMode, tol: &Tolerances) -> Result<SweepOutput> {
    let n = s1.len() + s2.len();
    assert!((n as u64) < ID_MASK, "too many sweep segments");
    let mut segs = Vec::with_capacity(n);
    let mut edges = Vec::with_capacity(n);
    for (lb1, list) in [(0u8, &s1), (1u8, &s2)] {
        for (lb2, it) in list.items.iter().enumerate() {
            segs.push(Seg::new(it, lb1, lb2));
            edges.push(&it.edge);
        }
    }
    let mut sweep = Sweep {
        segs,
        edges,
        mode,
        tol: *tol,
        status: Vec::with_capacity(n),
        queue: BinaryHeap::with_capacity(n),
        tested: FxHashSet::with_capacity_and_hasher(2 * n, Default::default()),
        hits: Vec::with_capacity(n),
        stats: SweepStats::default(),
        current: Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
    };
    sweep.run()?;
    let Sweep { segs, edges, hits, stats, .. } = sweep;

    let mut crossings: Vec<CrossingRecord> = Vec::new();
    for (a, b, p) in hits {
        let (sa, sb) = (segs[a as usize], segs[b as usize]);
        let (poly_a, poly_b, ia, ib) = match mode {
            SweepMode::Labeled => (sa.lb1, sb.lb1, sa.lb2 as usize, sb.lb2 as usize),
            SweepMode::Unlabeled => {
                // No labels: recover polygon and item by searching the lists.
                let (pa, ia) = find_item(&s1, &s2, edges[a as usize]);
                let (pb, ib) = find_item(&s1, &s2, edges[b as usize]);
                (pa, pb, ia, ib)
            }
        };
        if poly_a == poly_b {
            continue;
        }
        let (i1, i2) = if poly_a == 0 { (ia, ib) } else { (ib, ia) };
        record(&mut crossings, &s1, &s2, i1, i2, p, tol)?;
    }
    for (id, c) in crossings.iter().enumerate() {
        s1.file(c.item1, c.point, id);
        s2.file(c.item2, c.point, id);
    }
    Ok(SweepOutput { s1, s2, crossings, stats })
}

fn find_item(s1: &SeqList, s2: &SeqList, e: &Edge) -> (u8, usize) {
    let here = |it: &SeqItem| std::ptr::eq(&it.edge, e);
    if let Some(i) = s1.items.iter().position(here) {
        return (0, i);
    }
    let i = s2.items.iter().position(here).expect("edge belongs to a list");
    (1, i)
}

/// Validate and store one crossing. A crossing on a polygon vertex is
/// degenerate; one on a decomposition split point can be reported by both
/// pieces and is kept once.
fn record(crossings: &mut Vec<CrossingRecord>, s1: &SeqList, s2: &SeqList, i1: usize, i2: usize, p: Point, tol: &Tolerances) -> Result<()> {
    let (a, b) = (&s1.items[i1], &s2.items[i2]);
    let mut on_split = false;
    for it in [a, b] {
        for (q, split) in [(it.edge.start(), it.split_start), (it.edge.end(), it.split_end)] {
            if q.dist(p) <= tol.eps_pt {
                if !split {
                    return Err(Error::DegenerateConfiguration(format!("crossing at ({}, {}) coincides with a vertex", p.x, p.y)));
                }
                on_split = true;
            }
        }
    }
    if on_split {
        let dup = crossings
            .iter()
            .any(|c| s1.items[c.item1].origin == a.origin && s2.items[c.item2].origin == b.origin && c.point.dist(p) <= tol.eps_pt);
        if dup {
            return Ok(());
        }
    }
    crossings.push(CrossingRecord { point: p, item1: i1, item2: i2 });
    Ok(())
}
