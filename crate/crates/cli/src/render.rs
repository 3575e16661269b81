//! SVG output. Path data stays in polygon coordinates inside a group that
//! flips the y axis, so an arc's sweep flag is just the sign of its sweep.

use std::f64::consts::PI;
use std::fmt::Write as _;

use arcbool::{BBox, Edge, NodeKind, Point, Tolerances};

use crate::format::{PolygonFile, Record};

const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// Edges of one record loop, in order.
pub fn edges_of(recs: &[Record], tol: &Tolerances) -> arcbool::Result<Vec<Edge>> {
    let n = recs.len();
    let Some(first) = recs.iter().position(|r| r.kind != NodeKind::Appendix) else {
        return Err(arcbool::Error::TooFewVertices);
    };
    let mut out = Vec::new();
    let mut i = first;
    loop {
        let j = (i + 1) % n;
        let next = if recs[j].kind == NodeKind::Appendix {
            let k = (j + 1) % n;
            out.push(Edge::arc(recs[i].point, recs[j].point, recs[k].point, tol)?);
            k
        } else {
            out.push(Edge::segment(recs[i].point, recs[j].point, tol)?);
            j
        };
        i = next;
        if i == first {
            return Ok(out);
        }
    }
}

fn path_data(edges: &[Edge]) -> String {
    let mut d = String::new();
    let Some(first) = edges.first() else { return d };
    let _ = write!(d, "M {:?} {:?}", first.start().x, first.start().y);
    for e in edges {
        let p = e.end();
        match e.as_arc() {
            None => {
                let _ = write!(d, " L {:?} {:?}", p.x, p.y);
            }
            Some(a) => {
                let large = (a.sweep().abs() > PI) as u8;
                let sweep = (a.sweep() > 0.0) as u8;
                let r = a.radius();
                let _ = write!(d, " A {r:?} {r:?} 0 {large} {sweep} {:?} {:?}", p.x, p.y);
            }
        }
    }
    d.push_str(" Z");
    d
}

/// One SVG document showing every polygon of every file, a color per file.
pub fn render(files: &[PolygonFile], tol: &Tolerances) -> arcbool::Result<String> {
    let mut shapes = Vec::new();
    let mut bbox: Option<BBox> = None;
    for (fi, f) in files.iter().enumerate() {
        for recs in &f.polygons {
            if recs.is_empty() {
                continue;
            }
            let edges = edges_of(recs, tol)?;
            for e in &edges {
                let b = e.bbox();
                bbox = Some(bbox.map_or(b, |x| x.union(&b)));
            }
            shapes.push((fi, edges, recs));
        }
    }
    let b = bbox.unwrap_or(BBox { xmin: 0.0, xmax: 100.0, ymin: 0.0, ymax: 100.0 });
    let span = b.width().max(b.height()).max(f64::MIN_POSITIVE);
    let margin = 0.05 * span;
    let (x0, y0) = (b.xmin - margin, b.ymin - margin);
    let (w, h) = (b.width() + 2.0 * margin, b.height() + 2.0 * margin);
    let mark = 0.008 * span;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:?} {:?} {:?} {:?}" width="800" height="{}">"#,
        x0,
        -(y0 + h),
        w,
        h,
        (800.0 * h / w).round()
    );
    s.push_str("<g transform=\"scale(1,-1)\">\n");
    for (fi, edges, _) in &shapes {
        let c = COLORS[fi % COLORS.len()];
        let _ = writeln!(
            s,
            r#"<path d="{}" fill="{c}" fill-opacity="0.15" stroke="{c}" stroke-width="2" vector-effect="non-scaling-stroke"/>"#,
            path_data(edges)
        );
    }
    for (_, _, recs) in &shapes {
        for r in recs.iter() {
            let Point { x, y } = r.point;
            let _ = match r.kind {
                NodeKind::Vertex => writeln!(s, r#"<circle class="vertex" cx="{x:?}" cy="{y:?}" r="{:?}" fill="black"/>"#, mark),
                NodeKind::Appendix => writeln!(
                    s,
                    r#"<rect class="appendix" x="{:?}" y="{:?}" width="{:?}" height="{:?}" fill="none" stroke="gray" vector-effect="non-scaling-stroke"/>"#,
                    x - mark,
                    y - mark,
                    2.0 * mark,
                    2.0 * mark
                ),
                NodeKind::Crossing => writeln!(
                    s,
                    r#"<circle class="crossing" cx="{x:?}" cy="{y:?}" r="{:?}" fill="none" stroke="crimson" stroke-width="2" vector-effect="non-scaling-stroke"/>"#,
                    1.6 * mark
                ),
            };
        }
    }
    s.push_str("</g>\n</svg>\n");
    Ok(s)
}
