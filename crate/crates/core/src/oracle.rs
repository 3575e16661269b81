//! Baselines: every pair of edges tested directly, and an unlabeled,
//! unfiltered sweep over all edges of both polygons.

use crate::error::{Error, Result};
use crate::geom::{intersect_edges, Edge, Point, Tolerances};
use crate::polygon::{ArcPolygon, BoolResult, Op};
use crate::sweep::{full_sequence_list, sweep_lists, SeqItem, SeqList, SweepMode, SweepOutput, SweepStats, Xsec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OracleVariant {
    NaivePairs,
    StandardSweep,
}

/// A crossing with the indices of the two edges it lies on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleHit {
    pub edge1: usize,
    pub edge2: usize,
    pub point: Point,
}

fn near_vertex(p: Point, e: &Edge, tol: &Tolerances) -> bool {
    e.start().dist(p) <= tol.eps_pt || e.end().dist(p) <= tol.eps_pt
}

/// All m * n edge pairs, the original arcs intersected whole.
pub(crate) fn naive_pairs(p1: &ArcPolygon, p2: &ArcPolygon) -> Result<(Vec<OracleHit>, SweepStats)> {
    let tol = p1.tolerances();
    let mut hits = Vec::new();
    let mut stats = SweepStats::default();
    // A vertex contact is reported only after every pair has been tested, so
    // that an overlap anywhere takes precedence as it does in the sweeps.
    let mut degenerate = None;
    for (i, a) in p1.edges().iter().enumerate() {
        for (j, b) in p2.edges().iter().enumerate() {
            stats.pair_tests += 1;
            for p in intersect_edges(a, b, tol)? {
                if near_vertex(p, a, tol) || near_vertex(p, b, tol) {
                    degenerate
                        .get_or_insert(Error::DegenerateConfiguration(format!("crossing at ({}, {}) coincides with a vertex", p.x, p.y)));
                    continue;
                }
                hits.push(OracleHit { edge1: i, edge2: j, point: p });
            }
        }
    }
    match degenerate {
        Some(e) => Err(e),
        None => Ok((hits, stats)),
    }
}

/// Sequence lists holding every original edge undecomposed, with the naive
/// crossings filed on them.
pub(crate) fn naive_lists(p1: &ArcPolygon, p2: &ArcPolygon, hits: &[OracleHit]) -> (SeqList, SeqList) {
    let plain = |p: &ArcPolygon| SeqList {
        items: p
            .edges()
            .iter()
            .enumerate()
            .map(|(origin, &edge)| SeqItem { edge, xsecs: smallvec::SmallVec::new(), tri: 0, origin, split_start: false, split_end: false })
            .collect(),
    };
    let (mut s1, mut s2) = (plain(p1), plain(p2));
    for (id, h) in hits.iter().enumerate() {
        for (list, item) in [(&mut s1, h.edge1), (&mut s2, h.edge2)] {
            let it = &mut list.items[item];
            let param = it.edge.param_of(h.point);
            let at = it.xsecs.partition_point(|x| x.param < param);
            it.xsecs.insert(at, Xsec { point: h.point, param, id });
        }
    }
    (s1, s2)
}

pub(crate) fn standard_sweep(p1: &ArcPolygon, p2: &ArcPolygon) -> Result<SweepOutput> {
    sweep_lists(full_sequence_list(p1), full_sequence_list(p2), SweepMode::Unlabeled, p1.tolerances())
}

pub fn oracle_intersections(p1: &ArcPolygon, p2: &ArcPolygon, v: OracleVariant) -> Result<Vec<OracleHit>> {
    match v {
        OracleVariant::NaivePairs => Ok(naive_pairs(p1, p2)?.0),
        OracleVariant::StandardSweep => {
            let out = standard_sweep(p1, p2)?;
            Ok(out
                .crossings
                .iter()
                .map(|c| OracleHit { edge1: out.s1.items[c.item1].origin, edge2: out.s2.items[c.item2].origin, point: c.point })
                .collect())
        }
    }
}

pub fn oracle_boolean(p1: &ArcPolygon, p2: &ArcPolygon, op: Op, v: OracleVariant) -> Result<BoolResult> {
    let method = match v {
        OracleVariant::NaivePairs => crate::boolean::Method::Naive,
        OracleVariant::StandardSweep => crate::boolean::Method::Standard,
    };
    crate::boolean::boolean(p1, p2, op, method)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::vertex;

    fn square(x0: f64, y0: f64, s: f64) -> ArcPolygon {
        let pts = [vertex(x0, y0), vertex(x0 + s, y0), vertex(x0 + s, y0 + s), vertex(x0, y0 + s)];
        ArcPolygon::from_point_list(&pts, &Tolerances::default()).unwrap()
    }

    fn sorted(mut h: Vec<OracleHit>) -> Vec<Point> {
        h.sort_by(|a, b| a.point.lex_cmp(&b.point));
        h.into_iter().map(|h| h.point).collect()
    }

    #[test]
    fn offset_squares_both_variants() {
        let (a, b) = (square(0.0, 0.0, 2.0), square(1.0, 1.0, 2.0));
        let want = vec![Point::new(1.0, 2.0), Point::new(2.0, 1.0)];
        for v in [OracleVariant::NaivePairs, OracleVariant::StandardSweep] {
            assert_eq!(sorted(oracle_intersections(&a, &b, v).unwrap()), want);
        }
        let (_, stats) = naive_pairs(&a, &b).unwrap();
        assert_eq!(stats.pair_tests, 16);
    }

    #[test]
    fn disjoint_is_empty() {
        let (a, b) = (square(0.0, 0.0, 1.0), square(3.0, 3.0, 1.0));
        for v in [OracleVariant::NaivePairs, OracleVariant::StandardSweep] {
            assert!(oracle_intersections(&a, &b, v).unwrap().is_empty());
        }
    }

    #[test]
    fn shared_edge_is_overlap() {
        let (a, b) = (square(0.0, 0.0, 1.0), square(1.0, 0.0, 1.0));
        let r = oracle_intersections(&a, &b, OracleVariant::NaivePairs);
        assert_eq!(r, Err(Error::OverlapUnsupported));
    }
}
