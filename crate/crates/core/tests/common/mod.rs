//! Fixtures and independent geometric oracles shared by the integration
//! tests. Nothing here calls into the library's geometry: circles, sampling
//! and membership are recomputed from the raw point lists.

#![allow(dead_code)]

use std::f64::consts::{PI, TAU};

use arcbool::polygon::{appendix, vertex};
use arcbool::{ArcPolygon, Point, Tag, Tolerances};

pub fn tol() -> Tolerances {
    Tolerances::default()
}

pub fn poly(pts: &[(Point, Tag)]) -> ArcPolygon {
    ArcPolygon::from_point_list(pts, &tol()).expect("fixture validates")
}

/// Listed fixture, first polygon: 8 listed points, 2 of them appendixes.
pub fn listed_p1() -> Vec<(Point, Tag)> {
    vec![
        vertex(10.0, 10.0),
        vertex(40.0, 10.0),
        vertex(40.0, 30.0),
        appendix(32.5, 40.0),
        vertex(20.0, 40.0),
        vertex(15.0, 30.0),
        appendix(25.0, 22.5),
        vertex(15.0, 15.0),
    ]
}

/// Listed fixture, second polygon: 7 listed points, 2 of them appendixes. Read
/// with the marked points on the arcs, the edge (50,50)-(30,45) cuts through
/// the arc ending at (50,50), so this list is not simple.
pub fn listed_p2() -> Vec<(Point, Tag)> {
    vec![
        vertex(20.0, 20.0),
        appendix(32.5, 25.0),
        vertex(45.0, 20.0),
        vertex(55.0, 30.0),
        appendix(35.0, 35.625),
        vertex(50.0, 50.0),
        vertex(30.0, 45.0),
    ]
}

/// Every marked point in the listed pair is equidistant from the two vertices around
/// it, so it also reads as the arc's center. This rewrites each one as the
/// midpoint of the minor arc about that center.
pub fn centered(pts: &[(Point, Tag)]) -> Vec<(Point, Tag)> {
    let n = pts.len();
    (0..n)
        .map(|i| {
            if pts[i].1 != Tag::Appendix {
                return pts[i];
            }
            let (s, c, e) = (pts[(i + n - 1) % n].0, pts[i].0, pts[(i + 1) % n].0);
            let a0 = (s.y - c.y).atan2(s.x - c.x);
            let d = ((e.y - c.y).atan2(e.x - c.x) - a0 + PI).rem_euclid(TAU) - PI;
            let r = ((s.x - c.x).powi(2) + (s.y - c.y).powi(2)).sqrt();
            let m = a0 + d / 2.0;
            (Point::new(c.x + r * m.cos(), c.y + r * m.sin()), Tag::Appendix)
        })
        .collect()
}

/// The listed pair under the center reading; both are simple and overlap.
pub type PointList = Vec<(Point, Tag)>;

pub fn listed_pair() -> (PointList, PointList) {
    (centered(&listed_p1()), centered(&listed_p2()))
}

/// The two-polygon crossing pattern of the worked traversal example: P1 is
/// v1 v2 v3 (arc through v4) v5, P2 is v6 v7 v8 (arc through v9) v10.
///
/// P2 pokes down through P1's bottom edge (crossings i2, i3), leaves through
/// P1's arc (i4) and re-enters through P1's left edge (i1).
pub fn worked_p1() -> Vec<(Point, Tag)> {
    vec![vertex(0.0, 0.0), vertex(10.0, 0.0), vertex(10.0, 6.0), appendix(5.0, 9.0), vertex(0.0, 6.0)]
}

pub fn worked_p2() -> Vec<(Point, Tag)> {
    vec![vertex(2.0, -3.0), vertex(8.0, -3.0), vertex(9.0, 12.0), appendix(3.0, 14.0), vertex(-3.0, 8.0)]
}

pub fn square(x0: f64, y0: f64, s: f64) -> Vec<(Point, Tag)> {
    vec![vertex(x0, y0), vertex(x0 + s, y0), vertex(x0 + s, y0 + s), vertex(x0, y0 + s)]
}

/// A full circle as its right and left halves. With the vertices at the
/// poles, two unit circles a unit apart meet away from every vertex and
/// their lens is bounded by just two arcs.
pub fn circle(cx: f64, cy: f64, r: f64) -> Vec<(Point, Tag)> {
    vec![vertex(cx, cy - r), appendix(cx + r, cy), vertex(cx, cy + r), appendix(cx - r, cy)]
}

/// One boundary piece straight from a point list.
#[derive(Debug, Clone, Copy)]
pub struct RawEdge {
    pub start: Point,
    pub end: Point,
    pub arc: Option<RawArc>,
}

#[derive(Debug, Clone, Copy)]
pub struct RawArc {
    pub mid: Point,
    pub center: Point,
    pub radius: f64,
    pub a0: f64,
    /// Signed sweep from start to end through `mid`.
    pub sweep: f64,
}

/// The edge (0.5,-1)-(2,2) meets the unit circle at (1,0), which is the
/// circle's appendix, and at (0.6,-0.8).
pub fn triangle_through_appendix() -> Vec<(Point, Tag)> {
    vec![(Point::new(0.5, -1.0), Tag::Vertex), (Point::new(3.0, -1.0), Tag::Vertex), (Point::new(2.0, 2.0), Tag::Vertex)]
}

pub fn circumcircle(a: Point, b: Point, c: Point) -> (Point, f64) {
    let d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
    let (a2, b2, c2) = (a.x * a.x + a.y * a.y, b.x * b.x + b.y * b.y, c.x * c.x + c.y * c.y);
    let ux = (a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d;
    let uy = (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d;
    let center = Point::new(ux, uy);
    let r = ((a.x - ux).powi(2) + (a.y - uy).powi(2)).sqrt();
    (center, r)
}

fn raw_arc(s: Point, m: Point, e: Point) -> RawArc {
    let (c, r) = circumcircle(s, m, e);
    let ang = |p: Point| (p.y - c.y).atan2(p.x - c.x);
    let (a0, am, a1) = (ang(s), ang(m), ang(e));
    let ccw = |from: f64, to: f64| (to - from).rem_euclid(TAU);
    // Counter-clockwise from start, the middle point comes before the end
    // exactly when the arc runs counter-clockwise.
    let sweep = if ccw(a0, am) < ccw(a0, a1) { ccw(a0, a1) } else { ccw(a0, a1) - TAU };
    RawArc { mid: m, center: c, radius: r, a0, sweep }
}

pub fn raw_edges(pts: &[(Point, Tag)]) -> Vec<RawEdge> {
    let n = pts.len();
    let mut out = Vec::new();
    let first = (0..n).find(|&i| pts[i].1 == Tag::Vertex).expect("a vertex");
    let mut i = first;
    loop {
        let s = pts[i].0;
        let j = (i + 1) % n;
        if pts[j].1 == Tag::Appendix {
            let k = (j + 1) % n;
            out.push(RawEdge { start: s, end: pts[k].0, arc: Some(raw_arc(s, pts[j].0, pts[k].0)) });
            i = k;
        } else {
            out.push(RawEdge { start: s, end: pts[j].0, arc: None });
            i = j;
        }
        if i == first {
            return out;
        }
    }
}

impl RawEdge {
    pub fn at(&self, t: f64) -> Point {
        match &self.arc {
            None => Point::new(self.start.x + t * (self.end.x - self.start.x), self.start.y + t * (self.end.y - self.start.y)),
            Some(a) => {
                let ang = a.a0 + t * a.sweep;
                Point::new(a.center.x + a.radius * ang.cos(), a.center.y + a.radius * ang.sin())
            }
        }
    }
}

/// `per_edge + 1` points along every edge, shared corners repeated.
pub fn sample_boundary(pts: &[(Point, Tag)], per_edge: usize) -> Vec<Point> {
    let mut out = Vec::new();
    for e in raw_edges(pts) {
        for k in 0..=per_edge {
            out.push(e.at(k as f64 / per_edge as f64));
        }
    }
    out
}

/// Winding number of the sampled boundary around `p`.
pub fn winding_number(p: Point, boundary: &[Point]) -> i64 {
    let mut total = 0.0;
    for w in boundary.windows(2).chain(std::iter::once(&[boundary[boundary.len() - 1], boundary[0]][..])) {
        let (a, b) = (w[0], w[1]);
        let (ax, ay, bx, by) = (a.x - p.x, a.y - p.y, b.x - p.x, b.y - p.y);
        total += (ax * by - ay * bx).atan2(ax * bx + ay * by);
    }
    (total / TAU).round() as i64
}

/// Distance from `p` to the sampled boundary polyline.
pub fn boundary_distance(p: Point, boundary: &[Point]) -> f64 {
    let mut best = f64::INFINITY;
    for w in boundary.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (dx, dy) = (b.x - a.x, b.y - a.y);
        let len2 = dx * dx + dy * dy;
        let t = if len2 == 0.0 { 0.0 } else { (((p.x - a.x) * dx + (p.y - a.y) * dy) / len2).clamp(0.0, 1.0) };
        let (qx, qy) = (a.x + t * dx, a.y + t * dy);
        best = best.min(((p.x - qx).powi(2) + (p.y - qy).powi(2)).sqrt());
    }
    best
}

/// Exact membership: the chord polygon, toggled inside each circular
/// segment cut off between an arc and its chord.
#[derive(Debug, Clone)]
pub struct Region {
    edges: Vec<RawEdge>,
}

impl Region {
    pub fn new(pts: &[(Point, Tag)]) -> Region {
        Region { edges: raw_edges(pts) }
    }

    pub fn contains(&self, p: Point) -> bool {
        let mut inside = false;
        for e in &self.edges {
            let (s, t) = (e.start, e.end);
            if (s.y > p.y) != (t.y > p.y) {
                let xc = s.x + (t.x - s.x) * (p.y - s.y) / (t.y - s.y);
                if xc > p.x {
                    inside = !inside;
                }
            }
            if let Some(a) = &e.arc {
                let side = |q: Point| (t.x - s.x) * (q.y - s.y) - (t.y - s.y) * (q.x - s.x);
                let in_disk = (p.x - a.center.x).powi(2) + (p.y - a.center.y).powi(2) < a.radius * a.radius;
                if in_disk && side(p) * side(a.mid) > 0.0 {
                    inside = !inside;
                }
            }
        }
        inside
    }

    pub fn bounds(&self) -> (f64, f64, f64, f64) {
        let mut b = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for e in &self.edges {
            for k in 0..=256 {
                let p = e.at(k as f64 / 256.0);
                b = (b.0.min(p.x), b.1.max(p.x), b.2.min(p.y), b.3.max(p.y));
            }
        }
        // Sampling can miss an extreme by a sliver of sagitta.
        let pad = 1e-3 * ((b.1 - b.0) + (b.3 - b.2));
        (b.0 - pad, b.1 + pad, b.2 - pad, b.3 + pad)
    }
}

/// Monte-Carlo estimate of the area of `{p : pred(p)}` inside a box, and its
/// standard error.
pub fn mc_area(bx: (f64, f64, f64, f64), samples: usize, seed: u64, pred: impl Fn(Point) -> bool) -> (f64, f64) {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0usize;
    for _ in 0..samples {
        let p = Point::new(rng.gen_range(bx.0..bx.1), rng.gen_range(bx.2..bx.3));
        if pred(p) {
            hits += 1;
        }
    }
    let box_area = (bx.1 - bx.0) * (bx.3 - bx.2);
    let f = hits as f64 / samples as f64;
    (box_area * f, box_area * (f * (1.0 - f) / samples as f64).sqrt())
}

/// Signed area from the raw point list: the chord polygon plus one circular
/// segment per arc.
pub fn exact_area(pts: &[(Point, Tag)]) -> f64 {
    raw_edges(pts)
        .iter()
        .map(|e| {
            let chord = 0.5 * (e.start.x * e.end.y - e.end.x * e.start.y);
            let seg = e.arc.map_or(0.0, |a| 0.5 * a.radius * a.radius * (a.sweep - a.sweep.sin()));
            chord + seg
        })
        .sum()
}

/// Seeded uniform points in a box.
pub fn sample_points(bx: (f64, f64, f64, f64), n: usize, seed: u64) -> Vec<Point> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| Point::new(rng.gen_range(bx.0..bx.1), rng.gen_range(bx.2..bx.3))).collect()
}
