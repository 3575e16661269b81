//! The top-level pipeline: find crossings, relink, label, traverse.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::oracle::{naive_lists, naive_pairs, standard_sweep};
use crate::polygon::{ArcPolygon, BoolResult, Op};
use crate::relink::{construct_new_linked_lists, NewRing, RelinkStats};
use crate::sweep::{construct_sequence_lists, SweepStats};
use crate::traversal::{assign_entry_exit, containment_result, traverse_difference, traverse_intersection, traverse_union};

/// How crossings are found. All three share relinking and traversal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Related-edge filter plus the two-label sweep.
    Re2l,
    /// Every pair of edges.
    Naive,
    /// Unlabeled, unfiltered sweep over all edges.
    Standard,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Re2l, Method::Naive, Method::Standard];

    pub fn name(self) -> &'static str {
        match self {
            Method::Re2l => "re2l",
            Method::Naive => "naive",
            Method::Standard => "standard",
        }
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "re2l" => Ok(Method::Re2l),
            "naive" => Ok(Method::Naive),
            "standard" => Ok(Method::Standard),
            other => Err(format!("unknown method `{other}` (expected re2l, naive or standard)")),
        }
    }
}

impl FromStr for Op {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "intersect" | "intersection" => Ok(Op::Intersection),
            "union" => Ok(Op::Union),
            "difference" => Ok(Op::Difference),
            other => Err(format!("unknown operation `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Stats {
    pub sweep: SweepStats,
    pub crossings: usize,
    /// Related edges of each polygon before and after decomposition.
    pub related: (usize, usize),
    pub processed: (usize, usize),
    pub relink: RelinkStats,
}

/// Crossing structure shared by the three operations on one input pair.
#[derive(Debug, Clone)]
pub struct Prepared<'a> {
    p1: &'a ArcPolygon,
    p2: &'a ArcPolygon,
    rings: Option<(NewRing, NewRing)>,
    pub stats: Stats,
}

impl<'a> Prepared<'a> {
    pub fn new(p1: &'a ArcPolygon, p2: &'a ArcPolygon, method: Method) -> Result<Self> {
        let mut stats = Stats::default();
        let (s1, s2, k) = match method {
            Method::Re2l => match construct_sequence_lists(p1, p2) {
                Ok((out, related)) => {
                    stats.sweep = out.stats;
                    stats.related = (related.r1.len(), related.r2.len());
                    stats.processed = (out.s1.len(), out.s2.len());
                    let k = out.crossings.len();
                    (out.s1, out.s2, k)
                }
                Err(Error::DisjointInputs) => return Ok(Prepared { p1, p2, rings: None, stats }),
                Err(e) => return Err(e),
            },
            Method::Naive => {
                let (hits, sweep) = naive_pairs(p1, p2)?;
                stats.sweep = sweep;
                let (s1, s2) = naive_lists(p1, p2, &hits);
                (s1, s2, hits.len())
            }
            Method::Standard => {
                let out = standard_sweep(p1, p2)?;
                stats.sweep = out.stats;
                let k = out.crossings.len();
                (out.s1, out.s2, k)
            }
        };
        stats.crossings = k;
        if k == 0 {
            return Ok(Prepared { p1, p2, rings: None, stats });
        }
        let (mut r1, mut r2, relink) = construct_new_linked_lists(p1, p2, &s1, &s2, k)?;
        stats.relink = relink;
        assign_entry_exit(&mut r1, &mut r2, p2)?;
        Ok(Prepared { p1, p2, rings: Some((r1, r2)), stats })
    }

    /// The relinked rings, when the boundaries cross.
    pub fn rings(&self) -> Option<(&NewRing, &NewRing)> {
        self.rings.as_ref().map(|(a, b)| (a, b))
    }

    pub fn run(&self, op: Op) -> Result<BoolResult> {
        let Some((r1, r2)) = &self.rings else {
            return containment_result(op, self.p1, self.p2);
        };
        match op {
            Op::Intersection => traverse_intersection(r1, r2),
            Op::Union => traverse_union(r1, r2, self.p2),
            Op::Difference => traverse_difference(r1, r2, self.p2),
        }
    }
}

pub fn boolean(p1: &ArcPolygon, p2: &ArcPolygon, op: Op, method: Method) -> Result<BoolResult> {
    Prepared::new(p1, p2, method)?.run(op)
}

pub fn boolean_with_stats(p1: &ArcPolygon, p2: &ArcPolygon, op: Op, method: Method) -> Result<(BoolResult, Stats)> {
    let prep = Prepared::new(p1, p2, method)?;
    let r = prep.run(op)?;
    Ok((r, prep.stats))
}

pub fn intersection(p1: &ArcPolygon, p2: &ArcPolygon) -> Result<BoolResult> {
    boolean(p1, p2, Op::Intersection, Method::Re2l)
}

pub fn union(p1: &ArcPolygon, p2: &ArcPolygon) -> Result<BoolResult> {
    boolean(p1, p2, Op::Union, Method::Re2l)
}

pub fn difference(p1: &ArcPolygon, p2: &ArcPolygon) -> Result<BoolResult> {
    boolean(p1, p2, Op::Difference, Method::Re2l)
}
