//! Points, segments, circular arcs and the pairwise predicates built on them.
//!
//! Arcs are stored the way polygons encode them, as a start point, an
//! appendix point somewhere in the interior and an end point. The circle and
//! the signed angular sweep are derived once at construction and cached, so
//! every later query is a handful of flops plus at most one `atan2`.

use std::cmp::Ordering;
use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::ops::{Add, Mul, Sub};

use arrayvec::ArrayVec;

use crate::error::{Error, Result};

/// Angular slack used when deciding whether a horizontal extreme lies in the
/// interior of an arc.
const ANGLE_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    /// Construct a point, rejecting NaN and infinities.
    pub fn checked(x: f64, y: f64) -> Result<Self> {
        if x.is_finite() && y.is_finite() {
            Ok(Point { x, y })
        } else {
            Err(Error::NonFinite { x, y })
        }
    }

    pub fn dist(self, other: Point) -> f64 {
        let (dx, dy) = (self.x - other.x, self.y - other.y);
        (dx * dx + dy * dy).sqrt()
    }

    pub fn norm(self) -> f64 {
        (self.x * self.x + self.y * self.y).sqrt()
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn lerp(self, other: Point, t: f64) -> Point {
        Point::new(self.x + (other.x - self.x) * t, self.y + (other.y - self.y) * t)
    }

    /// Lexicographic order on (x, y), total over all finite values.
    pub fn lex_cmp(&self, other: &Point) -> Ordering {
        self.x.total_cmp(&other.x).then(self.y.total_cmp(&other.y))
    }

    pub fn approx_eq(self, other: Point, eps: f64) -> bool {
        self.dist(other) <= eps
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, rhs: f64) -> Point {
        Point::new(self.x * rhs, self.y * rhs)
    }
}

/// Numeric tolerances shared by every predicate.
///
/// `eps_pt` is an absolute distance for point coincidence, `eps_rel` a
/// relative tolerance for metric identities and `eps_param` a tolerance on
/// edge parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub eps_pt: f64,
    pub eps_rel: f64,
    pub eps_param: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { eps_pt: 1e-9, eps_rel: 1e-12, eps_param: 1e-12 }
    }
}

impl Tolerances {
    pub fn new(eps_pt: f64, eps_rel: f64, eps_param: f64) -> Result<Self> {
        for (name, v) in [("eps_pt", eps_pt), ("eps_rel", eps_rel), ("eps_param", eps_param)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidEdge(format!("tolerance {name} must be positive, got {v}")));
            }
        }
        Ok(Tolerances { eps_pt, eps_rel, eps_param })
    }

    /// Default tolerances with a different point-coincidence distance.
    pub fn with_eps_pt(eps_pt: f64) -> Result<Self> {
        let d = Tolerances::default();
        Tolerances::new(eps_pt, d.eps_rel, d.eps_param)
    }
}

/// Axis-aligned bounding box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BBox {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl BBox {
    pub const fn new(xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> Self {
        BBox { xmin, xmax, ymin, ymax }
    }

    pub fn of_point(p: Point) -> Self {
        BBox::new(p.x, p.x, p.y, p.y)
    }

    pub fn include(&mut self, p: Point) {
        self.xmin = self.xmin.min(p.x);
        self.xmax = self.xmax.max(p.x);
        self.ymin = self.ymin.min(p.y);
        self.ymax = self.ymax.max(p.y);
    }

    pub fn union(&self, other: &BBox) -> BBox {
        BBox::new(self.xmin.min(other.xmin), self.xmax.max(other.xmax), self.ymin.min(other.ymin), self.ymax.max(other.ymax))
    }

    pub fn width(&self) -> f64 {
        self.xmax - self.xmin
    }

    pub fn height(&self) -> f64 {
        self.ymax - self.ymin
    }

    /// Overlap of two boxes, or `None` when they are separated by more than `eps`.
    pub fn intersection(&self, other: &BBox, eps: f64) -> Option<BBox> {
        let xmin = self.xmin.max(other.xmin);
        let xmax = self.xmax.min(other.xmax);
        let ymin = self.ymin.max(other.ymin);
        let ymax = self.ymax.min(other.ymax);
        if xmin > xmax + eps || ymin > ymax + eps {
            return None;
        }
        Some(BBox::new(xmin, xmax.max(xmin), ymin, ymax.max(ymin)))
    }

    pub fn contains(&self, p: Point, eps: f64) -> bool {
        p.x >= self.xmin - eps && p.x <= self.xmax + eps && p.y >= self.ymin - eps && p.y <= self.ymax + eps
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub start: Point,
    pub end: Point,
}

impl Segment {
    pub fn point_at(&self, t: f64) -> Point {
        if t <= 0.0 {
            self.start
        } else if t >= 1.0 {
            self.end
        } else {
            self.start.lerp(self.end, t)
        }
    }

    /// Parameter of the orthogonal projection of `p` onto the supporting line.
    pub fn param_of(&self, p: Point) -> f64 {
        let d = self.end - self.start;
        (p - self.start).dot(d) / d.dot(d)
    }

    pub fn length(&self) -> f64 {
        self.start.dist(self.end)
    }

    pub fn is_vertical(&self) -> bool {
        self.start.x == self.end.x
    }
}

/// A circular arc traversed from `start` through `appendix` to `end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    start: Point,
    appendix: Point,
    end: Point,
    center: Point,
    radius: f64,
    start_angle: f64,
    /// Signed angular extent; positive for counter-clockwise travel.
    sweep: f64,
}

/// `x.rem_euclid(TAU)`, skipping the division when `x` is already in range.
fn wrap_tau(x: f64) -> f64 {
    if (0.0..TAU).contains(&x) {
        x
    } else {
        x.rem_euclid(TAU)
    }
}

impl Arc {
    /// The arc through three points, in that order.
    pub fn through(start: Point, appendix: Point, end: Point, tol: &Tolerances) -> Result<Arc> {
        if start.dist(appendix) <= tol.eps_pt || appendix.dist(end) <= tol.eps_pt || start.dist(end) <= tol.eps_pt {
            return Err(Error::InvalidEdge("arc points are not pairwise distinct".into()));
        }
        let b = appendix - start;
        let c = end - start;
        let orient = b.cross(c);
        let scale = b.dot(b).max(c.dot(c));
        if orient.abs() <= tol.eps_rel * scale {
            return Err(Error::InvalidEdge("arc points are collinear".into()));
        }
        let d = 2.0 * orient;
        let bb = b.dot(b);
        let cc = c.dot(c);
        let center = start + Point::new((c.y * bb - b.y * cc) / d, (b.x * cc - c.x * bb) / d);
        let radius = center.dist(start);
        let a0 = (start.y - center.y).atan2(start.x - center.x);
        let a1 = (end.y - center.y).atan2(end.x - center.x);
        let ccw_span = (a1 - a0).rem_euclid(TAU);
        let sweep = if orient > 0.0 { ccw_span } else { ccw_span - TAU };
        if sweep == 0.0 || sweep.abs() >= TAU {
            return Err(Error::InvalidEdge("arc has no angular extent".into()));
        }
        Ok(Arc { start, appendix, end, center, radius, start_angle: a0, sweep })
    }

    /// Arc on a given circle from `start_angle` over the signed `sweep`.
    /// The appendix is placed at the angular midpoint.
    pub fn from_center(center: Point, radius: f64, start_angle: f64, sweep: f64) -> Result<Arc> {
        if !(radius.is_finite() && radius > 0.0) || !(sweep.is_finite() && sweep != 0.0 && sweep.abs() < TAU) {
            return Err(Error::InvalidEdge("bad circle parameters".into()));
        }
        let at = |a: f64| Point::new(center.x + radius * a.cos(), center.y + radius * a.sin());
        Ok(Arc {
            start: at(start_angle),
            appendix: at(start_angle + 0.5 * sweep),
            end: at(start_angle + sweep),
            center,
            radius,
            start_angle,
            sweep,
        })
    }

    pub fn start(&self) -> Point {
        self.start
    }
    pub fn appendix(&self) -> Point {
        self.appendix
    }
    pub fn end(&self) -> Point {
        self.end
    }
    pub fn center(&self) -> Point {
        self.center
    }
    pub fn radius(&self) -> f64 {
        self.radius
    }
    pub fn start_angle(&self) -> f64 {
        self.start_angle
    }
    pub fn sweep(&self) -> f64 {
        self.sweep
    }
    pub fn is_ccw(&self) -> bool {
        self.sweep > 0.0
    }

    fn at_angle(&self, a: f64) -> Point {
        Point::new(self.center.x + self.radius * a.cos(), self.center.y + self.radius * a.sin())
    }

    pub fn angle_at(&self, t: f64) -> f64 {
        self.start_angle + t * self.sweep
    }

    pub fn point_at(&self, t: f64) -> Point {
        if t == 0.0 {
            self.start
        } else if t == 1.0 {
            self.end
        } else {
            self.at_angle(self.angle_at(t))
        }
    }

    /// Fraction of the sweep covered in travelling from `start_angle` to `angle`,
    /// without wrap-around resolution; lies in `[0, TAU / |sweep|)`.
    fn raw_param_of_angle(&self, angle: f64) -> f64 {
        let off = if self.sweep > 0.0 { angle - self.start_angle } else { self.start_angle - angle };
        wrap_tau(off) / self.sweep.abs()
    }

    /// Parameter of the radial projection of `p`. Points on the circle but
    /// outside the arc map below 0 or above 1, whichever end is closer.
    pub fn param_of(&self, p: Point) -> f64 {
        let angle = (p.y - self.center.y).atan2(p.x - self.center.x);
        let t = self.raw_param_of_angle(angle);
        if t > 1.0 {
            let full = TAU / self.sweep.abs();
            let before = full - t;
            if before < t - 1.0 {
                return -before;
            }
        }
        t
    }

    /// Parameter tolerance equivalent to `eps` of arc length.
    pub fn param_tol(&self, eps: f64) -> f64 {
        eps / (self.radius * self.sweep.abs())
    }

    /// Sub-arc between parameters `t0 < t1` whose endpoints are the given
    /// points. The appendix is placed at the angular midpoint.
    pub fn sub_arc(&self, t0: f64, t1: f64, p0: Point, p1: Point) -> Arc {
        let a0 = self.angle_at(t0);
        let sweep = (t1 - t0) * self.sweep;
        Arc {
            start: p0,
            appendix: self.at_angle(a0 + 0.5 * sweep),
            end: p1,
            center: self.center,
            radius: self.radius,
            start_angle: a0,
            sweep,
        }
    }

    /// The same curve traversed end to start.
    pub fn reversed(&self) -> Arc {
        Arc {
            start: self.end,
            appendix: self.appendix,
            end: self.start,
            center: self.center,
            radius: self.radius,
            start_angle: self.start_angle + self.sweep,
            sweep: -self.sweep,
        }
    }

    /// Same arc with a different appendix point (which must lie on it).
    pub(crate) fn with_appendix(&self, appendix: Point) -> Arc {
        Arc { appendix, ..*self }
    }

    /// Parameters of the horizontal-extreme points (angles 0 and pi) that lie
    /// strictly inside the arc, in increasing order.
    pub fn interior_extremes(&self) -> ArrayVec<f64, 2> {
        self.extremes_with_side().into_iter().map(|(t, _)| t).collect()
    }

    /// As `interior_extremes`, each paired with the x offset sign of the
    /// extreme (+1 at angle 0, -1 at pi).
    fn extremes_with_side(&self) -> ArrayVec<(f64, f64), 2> {
        let slack = ANGLE_SLACK / self.sweep.abs();
        let mut out = ArrayVec::new();
        for (angle, side) in [(0.0, 1.0), (PI, -1.0)] {
            let t = self.raw_param_of_angle(angle);
            if t > slack && t < 1.0 - slack {
                out.push((t, side));
            }
        }
        if out.len() == 2 && out[0].0 > out[1].0 {
            out.swap(0, 1);
        }
        out
    }

    /// Whether the arc lies on the upper half of its circle. Only meaningful
    /// for x-monotone arcs: those run right to left exactly when they are
    /// upper and counter-clockwise, or lower and clockwise.
    pub fn is_upper(&self) -> bool {
        (self.sweep > 0.0) == (self.end.x < self.start.x)
    }

    pub fn bbox(&self) -> BBox {
        let mut b = BBox::of_point(self.start);
        b.include(self.end);
        for k in 0..4 {
            let angle = k as f64 * FRAC_PI_2;
            let t = self.raw_param_of_angle(angle);
            if t <= 1.0 {
                b.include(self.at_angle(angle));
            }
        }
        b
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Edge {
    Segment(Segment),
    Arc(Arc),
}

impl Edge {
    pub fn segment(start: Point, end: Point, tol: &Tolerances) -> Result<Edge> {
        if start.dist(end) <= tol.eps_pt {
            return Err(Error::InvalidEdge("segment endpoints coincide".into()));
        }
        Ok(Edge::Segment(Segment { start, end }))
    }

    pub fn arc(start: Point, appendix: Point, end: Point, tol: &Tolerances) -> Result<Edge> {
        Arc::through(start, appendix, end, tol).map(Edge::Arc)
    }

    pub fn start(&self) -> Point {
        match self {
            Edge::Segment(s) => s.start,
            Edge::Arc(a) => a.start,
        }
    }

    pub fn end(&self) -> Point {
        match self {
            Edge::Segment(s) => s.end,
            Edge::Arc(a) => a.end,
        }
    }

    pub fn appendix(&self) -> Option<Point> {
        match self {
            Edge::Segment(_) => None,
            Edge::Arc(a) => Some(a.appendix),
        }
    }

    pub fn is_arc(&self) -> bool {
        matches!(self, Edge::Arc(_))
    }

    pub fn as_arc(&self) -> Option<&Arc> {
        match self {
            Edge::Arc(a) => Some(a),
            Edge::Segment(_) => None,
        }
    }

    pub fn point_at(&self, t: f64) -> Point {
        match self {
            Edge::Segment(s) => s.point_at(t),
            Edge::Arc(a) => a.point_at(t),
        }
    }

    pub fn param_of(&self, p: Point) -> f64 {
        match self {
            Edge::Segment(s) => s.param_of(p),
            Edge::Arc(a) => a.param_of(p),
        }
    }

    /// Parameter tolerance equivalent to `eps` of curve length.
    pub fn param_tol(&self, eps: f64) -> f64 {
        match self {
            Edge::Segment(s) => eps / s.length(),
            Edge::Arc(a) => a.param_tol(eps),
        }
    }

    pub fn bbox(&self) -> BBox {
        edge_bbox(self)
    }

    pub fn reversed(&self) -> Edge {
        match self {
            Edge::Segment(s) => Edge::Segment(Segment { start: s.end, end: s.start }),
            Edge::Arc(a) => Edge::Arc(a.reversed()),
        }
    }

    /// Signed area contribution of the edge to its closed boundary: the
    /// chord's shoelace term plus, for arcs, the signed circular segment.
    pub fn area_term(&self) -> f64 {
        let (s, e) = (self.start(), self.end());
        let chord = 0.5 * s.cross(e);
        match self {
            Edge::Segment(_) => chord,
            Edge::Arc(a) => chord + 0.5 * a.radius * a.radius * (a.sweep - a.sweep.sin()),
        }
    }

    /// Point halfway along the edge.
    pub fn midpoint(&self) -> Point {
        self.point_at(0.5)
    }

    /// Endpoints ordered lexicographically by (x, y).
    pub fn left_right(&self) -> (Point, Point) {
        let (s, e) = (self.start(), self.end());
        if s.lex_cmp(&e) == Ordering::Greater {
            (e, s)
        } else {
            (s, e)
        }
    }
}

/// Tightest axis-aligned box around the edge.
pub fn edge_bbox(e: &Edge) -> BBox {
    match e {
        Edge::Segment(s) => {
            let mut b = BBox::of_point(s.start);
            b.include(s.end);
            b
        }
        Edge::Arc(a) => a.bbox(),
    }
}

/// True iff every vertical line meets the edge at most once. Segments,
/// vertical ones included, always qualify.
pub fn is_x_monotone(e: &Edge) -> bool {
    match e {
        Edge::Segment(_) => true,
        Edge::Arc(a) => a.interior_extremes().is_empty(),
    }
}

/// Split an arc at the horizontal-extreme points in its interior, giving one
/// to three x-monotone pieces in travel order. Each piece gets a fresh
/// appendix at its angular midpoint; segments come back unchanged.
pub fn decompose_arc(e: &Edge) -> Result<ArrayVec<Edge, 3>> {
    let mut out = ArrayVec::new();
    let arc = match e {
        Edge::Segment(_) => {
            out.push(*e);
            return Ok(out);
        }
        Edge::Arc(a) => a,
    };
    if !(arc.radius.is_finite() && arc.radius > 0.0) {
        return Err(Error::InvalidEdge("arc with degenerate circle".into()));
    }
    let mut t_prev = 0.0;
    let mut p_prev = arc.start;
    for (t, side) in arc.extremes_with_side() {
        let p = Point::new(arc.center.x + side * arc.radius, arc.center.y);
        out.push(Edge::Arc(arc.sub_arc(t_prev, t, p_prev, p)));
        t_prev = t;
        p_prev = p;
    }
    out.push(Edge::Arc(arc.sub_arc(t_prev, 1.0, p_prev, arc.end)));
    Ok(out)
}

/// The unique y on an x-monotone edge at abscissa `x`. Vertical segments
/// report the midpoint of their span.
pub fn y_at_x(e: &Edge, x: f64, tol: &Tolerances) -> Result<f64> {
    let b = e.bbox();
    if x < b.xmin - tol.eps_pt || x > b.xmax + tol.eps_pt {
        return Err(Error::OutOfSpan { x, xmin: b.xmin, xmax: b.xmax });
    }
    Ok(y_at_x_clamped(e, x))
}

/// `y_at_x` with `x` clamped into the span instead of an error.
pub(crate) fn y_at_x_clamped(e: &Edge, x: f64) -> f64 {
    match e {
        Edge::Segment(s) => {
            let (l, r) = e.left_right();
            if l.x == r.x {
                0.5 * (s.start.y + s.end.y)
            } else if x <= l.x {
                l.y
            } else if x >= r.x {
                r.y
            } else {
                l.y + (r.y - l.y) * ((x - l.x) / (r.x - l.x))
            }
        }
        Edge::Arc(a) => {
            let (l, r) = e.left_right();
            if x <= l.x {
                return l.y;
            }
            if x >= r.x {
                return r.y;
            }
            let dx = x - a.center.x;
            let h = (a.radius * a.radius - dx * dx).max(0.0).sqrt();
            if a.is_upper() {
                a.center.y + h
            } else {
                a.center.y - h
            }
        }
    }
}

/// Whether `p` lies on the edge within `eps_pt`.
pub fn point_on_edge(p: Point, e: &Edge, tol: &Tolerances) -> bool {
    match e {
        Edge::Segment(s) => {
            let t = s.param_of(p).clamp(0.0, 1.0);
            s.start.lerp(s.end, t).dist(p) <= tol.eps_pt
        }
        Edge::Arc(a) => {
            if (a.center.dist(p) - a.radius).abs() > tol.eps_pt {
                return false;
            }
            let t = a.param_of(p);
            let slack = a.param_tol(tol.eps_pt);
            if (-slack..=1.0 + slack).contains(&t) {
                return true;
            }
            a.start.dist(p) <= tol.eps_pt || a.end.dist(p) <= tol.eps_pt
        }
    }
}

/// Split `e` at interior points ordered along it, producing `pts.len() + 1`
/// sub-edges. Sub-arcs get fresh appendix points at their angular midpoints.
pub fn split_edge_at(e: &Edge, pts: &[Point], tol: &Tolerances) -> Result<Vec<Edge>> {
    let mut params = Vec::with_capacity(pts.len());
    for &p in pts {
        if !point_on_edge(p, e, tol) {
            return Err(Error::PointNotOnEdge { x: p.x, y: p.y });
        }
        params.push(e.param_of(p));
    }
    let (start, end) = (e.start(), e.end());
    let mut prev_t = 0.0;
    let mut prev_p = start;
    for (&p, &t) in pts.iter().zip(&params) {
        if t <= prev_t || p.dist(prev_p) <= tol.eps_pt || p.dist(end) <= tol.eps_pt {
            return Err(Error::UnsortedSplitPoints);
        }
        prev_t = t;
        prev_p = p;
    }
    if params.last().is_some_and(|&t| t >= 1.0) {
        return Err(Error::UnsortedSplitPoints);
    }

    let mut out = Vec::with_capacity(pts.len() + 1);
    let mut t0 = 0.0;
    let mut p0 = start;
    let bounds = pts.iter().copied().zip(params.iter().copied()).chain(std::iter::once((end, 1.0)));
    for (p1, t1) in bounds {
        out.push(match e {
            Edge::Segment(_) => Edge::Segment(Segment { start: p0, end: p1 }),
            Edge::Arc(a) => Edge::Arc(a.sub_arc(t0, t1, p0, p1)),
        });
        t0 = t1;
        p0 = p1;
    }
    Ok(out)
}

/// All transversal crossings of two edges, sorted by (x, y).
///
/// Tangential contacts are not reported. Sharing a sub-curve of positive
/// length is an error. Arguments are put in a canonical order first so the
/// result is bitwise symmetric in `a` and `b`.
pub fn intersect_edges(a: &Edge, b: &Edge, tol: &Tolerances) -> Result<ArrayVec<Point, 2>> {
    let mut out = match (a, b) {
        (Edge::Segment(s), Edge::Segment(t)) => {
            if seg_key_cmp(s, t) == Ordering::Greater {
                seg_seg(t, s, tol)?
            } else {
                seg_seg(s, t, tol)?
            }
        }
        (Edge::Segment(s), Edge::Arc(c)) | (Edge::Arc(c), Edge::Segment(s)) => seg_arc(s, c, tol),
        (Edge::Arc(c), Edge::Arc(d)) => {
            if arc_key_cmp(c, d) == Ordering::Greater {
                arc_arc(d, c, tol)?
            } else {
                arc_arc(c, d, tol)?
            }
        }
    };
    if out.len() == 2 {
        if out[0].lex_cmp(&out[1]) == Ordering::Greater {
            out.swap(0, 1);
        }
        if out[0].dist(out[1]) <= tol.eps_pt {
            out.pop();
        }
    }
    Ok(out)
}

fn seg_key_cmp(s: &Segment, t: &Segment) -> Ordering {
    s.start.lex_cmp(&t.start).then(s.end.lex_cmp(&t.end))
}

fn arc_key_cmp(c: &Arc, d: &Arc) -> Ordering {
    c.center.lex_cmp(&d.center).then(c.radius.total_cmp(&d.radius)).then(c.start.lex_cmp(&d.start)).then(c.end.lex_cmp(&d.end))
}

fn seg_seg(s: &Segment, t: &Segment, tol: &Tolerances) -> Result<ArrayVec<Point, 2>> {
    let mut out = ArrayVec::new();
    let r = s.end - s.start;
    let q = t.end - t.start;
    let w = t.start - s.start;
    let rl = r.norm();
    let ql = q.norm();
    let denom = r.cross(q);
    if denom.abs() <= tol.eps_rel * rl * ql {
        if w.cross(r).abs() / rl > tol.eps_pt {
            return Ok(out);
        }
        let rr = r.dot(r);
        let t0 = w.dot(r) / rr;
        let t1 = (t.end - s.start).dot(r) / rr;
        let lo = t0.min(t1).max(0.0);
        let hi = t0.max(t1).min(1.0);
        if (hi - lo) * rl > tol.eps_pt {
            return Err(Error::OverlapUnsupported);
        }
        return Ok(out);
    }
    let ts = w.cross(q) / denom;
    let us = w.cross(r) / denom;
    let tps = tol.eps_pt / rl;
    let tpq = tol.eps_pt / ql;
    if ts >= -tps && ts <= 1.0 + tps && us >= -tpq && us <= 1.0 + tpq {
        out.push(s.point_at(ts));
    }
    Ok(out)
}

fn seg_arc(s: &Segment, c: &Arc, tol: &Tolerances) -> ArrayVec<Point, 2> {
    let mut out = ArrayVec::new();
    let d = s.end - s.start;
    let len2 = d.dot(d);
    let t0 = (c.center - s.start).dot(d) / len2;
    let foot = s.start + d * t0;
    let h = foot.dist(c.center);
    if h >= c.radius - tol.eps_pt {
        // Miss or tangent.
        return out;
    }
    let half = (c.radius * c.radius - h * h).sqrt() / len2.sqrt();
    let tp = tol.eps_pt / len2.sqrt();
    let ctol = c.param_tol(tol.eps_pt);
    for t in [t0 - half, t0 + half] {
        if t < -tp || t > 1.0 + tp {
            continue;
        }
        let p = s.point_at(t);
        let u = c.param_of(p);
        if u >= -ctol && u <= 1.0 + ctol {
            out.push(p);
        }
    }
    out
}

fn co_circular_overlap(c: &Arc, d: &Arc, tol: &Tolerances) -> bool {
    let strictly_inside = |arc: &Arc, p: Point| {
        let t = arc.param_of(p);
        let slack = arc.param_tol(tol.eps_pt);
        t > slack && t < 1.0 - slack
    };
    [d.start, d.end, d.appendix, d.point_at(0.5)].iter().any(|&p| strictly_inside(c, p))
        || [c.start, c.end, c.appendix, c.point_at(0.5)].iter().any(|&p| strictly_inside(d, p))
}

fn arc_arc(c: &Arc, d: &Arc, tol: &Tolerances) -> Result<ArrayVec<Point, 2>> {
    let mut out = ArrayVec::new();
    let dv = d.center - c.center;
    let dist = dv.norm();
    let (r1, r2) = (c.radius, d.radius);
    if dist <= tol.eps_pt {
        if (r1 - r2).abs() <= tol.eps_pt && co_circular_overlap(c, d, tol) {
            return Err(Error::OverlapUnsupported);
        }
        return Ok(out);
    }
    // Separate, nested, or tangent circles contribute nothing.
    if dist >= r1 + r2 - tol.eps_pt || dist <= (r1 - r2).abs() + tol.eps_pt {
        return Ok(out);
    }
    let a = (dist * dist + r1 * r1 - r2 * r2) / (2.0 * dist);
    let h = (r1 * r1 - a * a).max(0.0).sqrt();
    let base = c.center + dv * (a / dist);
    let perp = Point::new(-dv.y / dist, dv.x / dist);
    let ctol = c.param_tol(tol.eps_pt);
    let dtol = d.param_tol(tol.eps_pt);
    for p in [base + perp * h, base - perp * h] {
        let u = c.param_of(p);
        let v = d.param_of(p);
        if u >= -ctol && u <= 1.0 + ctol && v >= -dtol && v <= 1.0 + dtol {
            out.push(p);
        }
    }
    Ok(out)
}
