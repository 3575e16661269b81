//! Seeded random circular-arc polygons.
//!
//! A polygon is a perturbed star: `n` vertices at sorted random angles and
//! random radii around a center, with some chords bulged into arcs. The
//! bulge of an arc is a random fraction of its chord, capped at a quarter,
//! with a random side. Candidates that fail validation are retried with the
//! bulges halved. The PRNG is ChaCha8 seeded from a `u64`.

use std::f64::consts::TAU;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geom::{Point, Tolerances};
use crate::polygon::{ArcPolygon, Tag};

pub const MAX_ATTEMPTS: usize = 32;
pub const DEFAULT_ARC_FRACTION: f64 = 0.5;

/// Shape parameters of the star.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StarParams {
    pub center: Point,
    /// Vertex radii are drawn from `[0.6, 1.0] * radius`.
    pub radius: f64,
    pub arc_fraction: f64,
}

impl Default for StarParams {
    /// A star that stays inside the square [0, 100] x [0, 100].
    fn default() -> Self {
        StarParams { center: Point::new(50.0, 50.0), radius: 35.0, arc_fraction: DEFAULT_ARC_FRACTION }
    }
}

struct Draft {
    verts: Vec<Point>,
    /// Per edge: signed bulge as a fraction of the chord, or `None`.
    bulge: Vec<Option<f64>>,
}

fn draft(rng: &mut ChaCha8Rng, n: usize, sp: &StarParams) -> Draft {
    let mut angles: Vec<f64> = (0..n).map(|i| (i as f64 + rng.gen_range(0.0..0.8)) * TAU / n as f64).collect();
    let phase = rng.gen_range(0.0..TAU);
    for a in &mut angles {
        *a += phase;
    }
    let verts = angles
        .iter()
        .map(|&a| {
            let r = sp.radius * rng.gen_range(0.6..1.0);
            Point::new(sp.center.x + r * a.cos(), sp.center.y + r * a.sin())
        })
        .collect();
    let n_arcs = ((sp.arc_fraction.clamp(0.0, 1.0) * n as f64).round() as usize).min(n);
    let mut bulge = vec![None; n];
    for i in sample(rng, n, n_arcs) {
        let mag = rng.gen_range(0.05..0.25);
        bulge[i] = Some(if rng.gen_bool(0.5) { mag } else { -mag });
    }
    Draft { verts, bulge }
}

fn point_list(d: &Draft, shrink: f64) -> Vec<(Point, Tag)> {
    let n = d.verts.len();
    let mut out = Vec::with_capacity(2 * n);
    for i in 0..n {
        let (a, b) = (d.verts[i], d.verts[(i + 1) % n]);
        out.push((a, Tag::Vertex));
        if let Some(f) = d.bulge[i] {
            let dir = b - a;
            // Positive bulge points to the right of travel, out of a CCW polygon.
            let normal = Point::new(dir.y, -dir.x);
            let m = a.lerp(b, 0.5) + normal * (f * shrink);
            out.push((m, Tag::Appendix));
        }
    }
    out
}

/// A random simple CCW polygon with exactly `n` edges.
pub fn random_polygon(seed: u64, n: usize, sp: &StarParams, tol: &Tolerances) -> Result<ArcPolygon> {
    if n < 3 {
        return Err(Error::TooFewVertices);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = draft(&mut rng, n, sp);
    let mut shrink = 1.0;
    for _ in 0..MAX_ATTEMPTS {
        if let Ok(p) = ArcPolygon::from_point_list(&point_list(&d, shrink), tol) {
            return Ok(p);
        }
        shrink *= 0.5;
    }
    Err(Error::GenerationFailed(MAX_ATTEMPTS))
}

/// Two heavily overlapping random polygons with `n` edges each.
pub fn random_pair(seed: u64, n: usize, arc_fraction: f64, tol: &Tolerances) -> Result<(ArcPolygon, ArcPolygon)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut params = || StarParams {
        center: Point::new(50.0 + rng.gen_range(-8.0..8.0), 50.0 + rng.gen_range(-8.0..8.0)),
        radius: rng.gen_range(30.0..38.0),
        arc_fraction,
    };
    let (sa, sb) = (params(), params());
    let a = random_polygon(seed.wrapping_mul(2).wrapping_add(1), n, &sa, tol)?;
    let b = random_polygon(seed.wrapping_mul(2).wrapping_add(2), n, &sb, tol)?;
    Ok((a, b))
}

/// Seed of trial `t` for edge count `n` in a run started from `base`.
pub fn trial_seed(base: u64, n: usize, t: u64) -> u64 {
    base.wrapping_mul(0x2545_f491_4f6c_dd1d).wrapping_add((n as u64) << 32).wrapping_add(t)
}
