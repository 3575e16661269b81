//! Canonical form of a boolean result, for comparing outputs of different
//! methods.

use crate::geom::Point;
use crate::polygon::{BoolResult, Circuit, NodeKind};

/// Node list of a circuit rotated to start at its lexicographically smallest
/// point.
pub fn canonical_circuit(c: &Circuit) -> Vec<(Point, NodeKind)> {
    let mut nodes: Vec<(Point, NodeKind)> = c.nodes.iter().map(|n| (n.point, n.kind)).collect();
    if let Some(min) = (0..nodes.len()).min_by(|&a, &b| nodes[a].0.lex_cmp(&nodes[b].0)) {
        nodes.rotate_left(min);
    }
    nodes
}

/// Canonical circuits sorted by their first point.
pub fn canonical(r: &BoolResult) -> Vec<Vec<(Point, NodeKind)>> {
    let mut cs: Vec<_> = r.circuits.iter().map(canonical_circuit).collect();
    cs.sort_by(|a, b| match (a.first(), b.first()) {
        (Some(x), Some(y)) => x.0.lex_cmp(&y.0),
        _ => a.len().cmp(&b.len()),
    });
    cs
}

fn area_close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

/// `Ok` when both results have the same canonical circuits, pointwise within
/// `eps`, and areas within relative tolerance `rel_area`.
pub fn compare_results(a: &BoolResult, b: &BoolResult, eps: f64, rel_area: f64) -> Result<(), String> {
    if a.op != b.op {
        return Err(format!("operations differ: {:?} vs {:?}", a.op, b.op));
    }
    let (ca, cb) = (canonical(a), canonical(b));
    if ca.len() != cb.len() {
        return Err(format!("{} circuits vs {}", ca.len(), cb.len()));
    }
    for (i, (x, y)) in ca.iter().zip(&cb).enumerate() {
        if x.len() != y.len() {
            return Err(format!("circuit {i}: {} nodes vs {}", x.len(), y.len()));
        }
        for (j, (p, q)) in x.iter().zip(y).enumerate() {
            if p.1 != q.1 || p.0.dist(q.0) > eps {
                return Err(format!("circuit {i} node {j}: {:?} vs {:?}", p, q));
            }
        }
    }
    if !area_close(a.area(), b.area(), rel_area) {
        return Err(format!("areas {} vs {}", a.area(), b.area()));
    }
    Ok(())
}
