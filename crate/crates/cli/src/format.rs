//! The polygon file format.
//!
//! ```text
//! file     := header tol* block*
//! header   := "arcbool" "1"
//! tol      := ("eps_pt" | "eps_rel" | "eps_param") REAL
//! block    := "polygon" record* "end"
//! record   := ("vertex" | "appendix" | "crossing") REAL REAL
//! ```
//!
//! One statement per line; tokens are separated by whitespace; `#` starts a
//! comment. A `crossing` is a vertex that a boolean operation created, and
//! reads back as a plain vertex. Reals are written in Rust's shortest
//! round-trip form, so writing and reading again is exact.

use std::fmt::Write as _;

use arcbool::{ArcPolygon, BoolResult, NodeKind, Point, Tag, Tolerances};

pub const VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Record {
    pub point: Point,
    pub kind: NodeKind,
}

/// Tolerance overrides from a file header.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TolOverrides {
    pub eps_pt: Option<f64>,
    pub eps_rel: Option<f64>,
    pub eps_param: Option<f64>,
}

impl TolOverrides {
    pub fn is_empty(&self) -> bool {
        self.eps_pt.is_none() && self.eps_rel.is_none() && self.eps_param.is_none()
    }

    /// `base` with every present override applied.
    pub fn apply(&self, base: Tolerances) -> Tolerances {
        Tolerances {
            eps_pt: self.eps_pt.unwrap_or(base.eps_pt),
            eps_rel: self.eps_rel.unwrap_or(base.eps_rel),
            eps_param: self.eps_param.unwrap_or(base.eps_param),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PolygonFile {
    pub tol: TolOverrides,
    pub polygons: Vec<Vec<Record>>,
}

impl PolygonFile {
    pub fn from_polygons<'a>(ps: impl IntoIterator<Item = &'a ArcPolygon>) -> Self {
        PolygonFile { tol: TolOverrides::default(), polygons: ps.into_iter().map(|p| records_of(&p.to_point_list())).collect() }
    }

    /// One polygon per circuit, crossings marked.
    pub fn from_result(r: &BoolResult) -> Self {
        PolygonFile {
            tol: TolOverrides::default(),
            polygons: r.circuits.iter().map(|c| c.nodes.iter().map(|n| Record { point: n.point, kind: n.kind }).collect()).collect(),
        }
    }

    /// Point lists ready for polygon construction.
    pub fn point_lists(&self) -> Vec<Vec<(Point, Tag)>> {
        self.polygons
            .iter()
            .map(|p| {
                p.iter()
                    .map(|r| {
                        let tag = if r.kind == NodeKind::Appendix { Tag::Appendix } else { Tag::Vertex };
                        (r.point, tag)
                    })
                    .collect()
            })
            .collect()
    }
}

pub fn records_of(pts: &[(Point, Tag)]) -> Vec<Record> {
    pts.iter().map(|&(point, t)| Record { point, kind: if t == Tag::Appendix { NodeKind::Appendix } else { NodeKind::Vertex } }).collect()
}

fn kind_word(k: NodeKind) -> &'static str {
    match k {
        NodeKind::Vertex => "vertex",
        NodeKind::Appendix => "appendix",
        NodeKind::Crossing => "crossing",
    }
}

pub fn write(f: &PolygonFile) -> String {
    let mut s = format!("arcbool {VERSION}\n");
    for (name, v) in [("eps_pt", f.tol.eps_pt), ("eps_rel", f.tol.eps_rel), ("eps_param", f.tol.eps_param)] {
        if let Some(v) = v {
            let _ = writeln!(s, "{name} {v:?}");
        }
    }
    for p in &f.polygons {
        s.push_str("polygon\n");
        for r in p {
            let _ = writeln!(s, "{} {:?} {:?}", kind_word(r.kind), r.point.x, r.point.y);
        }
        s.push_str("end\n");
    }
    s
}

/// Tokens of one line with their 1-based columns, comment stripped.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let body = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &body[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, column, message: message.into() }
}

fn real(line: usize, (col, tok): (usize, &str)) -> Result<f64, ParseError> {
    match tok.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(err(line, col, format!("expected a finite number, found `{tok}`"))),
    }
}

pub fn parse(text: &str) -> Result<PolygonFile, ParseError> {
    let mut file = PolygonFile::default();
    let mut header = false;
    let mut open: Option<(usize, Vec<Record>)> = None;
    let mut last = 0;
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        last = ln;
        let toks = tokens(line);
        let Some(&(col, word)) = toks.first() else { continue };
        let arity = |n: usize| {
            if toks.len() != n + 1 {
                Err(err(ln, col, format!("`{word}` takes {n} argument(s), found {}", toks.len() - 1)))
            } else {
                Ok(())
            }
        };
        if !header {
            if word != "arcbool" {
                return Err(err(ln, col, "expected header `arcbool 1`"));
            }
            arity(1)?;
            if toks[1].1 != VERSION.to_string() {
                return Err(err(ln, toks[1].0, format!("unsupported format version `{}`", toks[1].1)));
            }
            header = true;
            continue;
        }
        match word {
            "eps_pt" | "eps_rel" | "eps_param" => {
                if open.is_some() || !file.polygons.is_empty() {
                    return Err(err(ln, col, "tolerances go before the first polygon"));
                }
                arity(1)?;
                let v = real(ln, toks[1])?;
                if v <= 0.0 {
                    return Err(err(ln, toks[1].0, "tolerance must be positive"));
                }
                let slot = match word {
                    "eps_pt" => &mut file.tol.eps_pt,
                    "eps_rel" => &mut file.tol.eps_rel,
                    _ => &mut file.tol.eps_param,
                };
                *slot = Some(v);
            }
            "polygon" => {
                arity(0)?;
                if open.is_some() {
                    return Err(err(ln, col, "`polygon` inside an unfinished polygon"));
                }
                open = Some((ln, Vec::new()));
            }
            "end" => {
                arity(0)?;
                match open.take() {
                    Some((_, recs)) => file.polygons.push(recs),
                    None => return Err(err(ln, col, "`end` without `polygon`")),
                }
            }
            "vertex" | "appendix" | "crossing" => {
                arity(2)?;
                let Some((_, recs)) = open.as_mut() else {
                    return Err(err(ln, col, "point outside a polygon block"));
                };
                let kind = match word {
                    "vertex" => NodeKind::Vertex,
                    "appendix" => NodeKind::Appendix,
                    _ => NodeKind::Crossing,
                };
                recs.push(Record { point: Point::new(real(ln, toks[1])?, real(ln, toks[2])?), kind });
            }
            other => return Err(err(ln, col, format!("unknown statement `{other}`"))),
        }
    }
    if !header {
        return Err(err(last.max(1), 1, "missing header `arcbool 1`"));
    }
    if let Some((ln, _)) = open {
        return Err(err(ln, 1, "polygon is missing its `end`"));
    }
    Ok(file)
}
