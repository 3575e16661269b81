#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use arcbool::boolean::Method;
use arcbool::generate::{random_polygon, StarParams};
use arcbool::polygon::reverse_point_list;
use arcbool::{ArcPolygon, Point, Tag};
use arcbool_cli::bench::{self, BenchConfig};
use arcbool_cli::format::{self, PolygonFile, Record};
use arcbool_cli::render;
use common::*;
use proptest::prelude::*;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_arcbool"))
}

fn save(dir: &Path, name: &str, lists: &[Vec<(Point, Tag)>]) -> PathBuf {
    let f = PolygonFile { polygons: lists.iter().map(|l| format::records_of(l)).collect(), ..PolygonFile::default() };
    let p = dir.join(name);
    std::fs::write(&p, format::write(&f)).unwrap();
    p
}

fn op(kind: &str, a: &Path, b: &Path, out: &Path, extra: &[&str]) -> Output {
    bin().args(["op", kind, "--a"]).arg(a).arg("--b").arg(b).arg("--out").arg(out).args(extra).output().unwrap()
}

fn read(p: &Path) -> PolygonFile {
    format::parse(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn listed_intersection_matches_monte_carlo() {
    let dir = tempfile::tempdir().unwrap();
    let (la, lb) = listed_pair();
    let (a, b) = (save(dir.path(), "a.arc", std::slice::from_ref(&la)), save(dir.path(), "b.arc", std::slice::from_ref(&lb)));
    let out = dir.path().join("i.arc");
    let o = op("intersect", &a, &b, &out, &[]);
    assert!(o.status.success(), "{}", stderr(&o));
    let res = read(&out);
    assert_eq!(res.polygons.len(), 1);
    let lists = res.point_lists();
    let area: f64 = lists.iter().map(|l| poly(l).area()).sum();
    let (ra, rb) = (Region::new(&la), Region::new(&lb));
    let (est, se) = mc_area(ra.bounds(), 1_000_000, 3, |q| ra.contains(q) && rb.contains(q));
    assert!((area - est).abs() <= 3.0 * se, "{area} vs {est} +- {se}");
}

#[test]
fn disjoint_intersection_is_empty() {
    let dir = tempfile::tempdir().unwrap();
    let a = save(dir.path(), "a.arc", &[square(0.0, 0.0, 1.0)]);
    let b = save(dir.path(), "b.arc", &[square(5.0, 5.0, 1.0)]);
    let out = dir.path().join("o.arc");
    let o = op("intersect", &a, &b, &out, &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(read(&out).polygons.is_empty());
}

#[test]
fn shared_edge_is_unsupported() {
    let dir = tempfile::tempdir().unwrap();
    let a = save(dir.path(), "a.arc", &[square(0.0, 0.0, 2.0)]);
    let b = save(dir.path(), "b.arc", &[square(2.0, 0.5, 1.0)]);
    let o = op("union", &a, &b, &dir.path().join("o.arc"), &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("OverlapUnsupported"), "{}", stderr(&o));
}

#[test]
fn clockwise_needs_normalize() {
    let dir = tempfile::tempdir().unwrap();
    let a = save(dir.path(), "a.arc", &[reverse_point_list(&square(0.0, 0.0, 2.0))]);
    let b = save(dir.path(), "b.arc", &[square(1.0, 1.0, 2.0)]);
    let out = dir.path().join("o.arc");
    let o = op("intersect", &a, &b, &out, &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("NotCCW"), "{}", stderr(&o));
    let o = op("intersect", &a, &b, &out, &["--normalize"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let area: f64 = read(&out).point_lists().iter().map(|l| poly(l).area()).sum();
    assert!((area - 1.0).abs() < 1e-12);
}

#[test]
fn every_method_and_operation_runs() {
    let dir = tempfile::tempdir().unwrap();
    let a = save(dir.path(), "a.arc", &[worked_p1()]);
    let b = save(dir.path(), "b.arc", &[worked_p2()]);
    for kind in ["intersect", "union", "difference"] {
        let mut outs = Vec::new();
        for m in ["re2l", "naive", "standard"] {
            let out = dir.path().join(format!("{kind}-{m}.arc"));
            let o = op(kind, &a, &b, &out, &["--method", m]);
            assert!(o.status.success(), "{}", stderr(&o));
            outs.push(std::fs::read_to_string(out).unwrap());
        }
        assert!(outs.windows(2).all(|w| w[0] == w[1]), "{kind}");
    }
}

#[test]
fn bad_files_report_line_and_column() {
    let cases = [
        ("", 1, 1),
        ("arcbool 2\n", 1, 9),
        ("arcbool 1\npolygon\nvertex 1 x\nend\n", 3, 10),
        ("arcbool 1\npolygon\nvertex 1 2\n", 2, 1),
        ("arcbool 1\n  vertex 1 2\n", 2, 3),
        ("arcbool 1\npolygon\nend\neps_pt 1e-6\n", 4, 1),
        ("arcbool 1\npolygon\nvertex 1 2 3\nend\n", 3, 1),
    ];
    for (text, line, column) in cases {
        let e = format::parse(text).unwrap_err();
        assert_eq!((e.line, e.column), (line, column), "{text:?}: {e}");
    }
}

#[test]
fn parse_error_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.arc");
    std::fs::write(&a, "arcbool 1\npolygon\nvertex 0 0\nvertex nan 1\nend\n").unwrap();
    let o = op("intersect", &a, &a, &dir.path().join("o.arc"), &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("ParseError") && stderr(&o).contains("line 4, column 8"), "{}", stderr(&o));
}

#[test]
fn header_and_env_tolerances() {
    let f = format::parse("arcbool 1\neps_pt 1e-6 # looser\npolygon\nvertex 0 0\nvertex 1 0\nvertex 0 1\nend\n").unwrap();
    assert_eq!(f.tol.eps_pt, Some(1e-6));
    assert_eq!(format::parse(&format::write(&f)).unwrap(), f);

    let dir = tempfile::tempdir().unwrap();
    let a = save(dir.path(), "a.arc", &[square(0.0, 0.0, 2.0)]);
    let b = save(dir.path(), "b.arc", &[square(1.0, 1.0, 2.0)]);
    let o = bin()
        .env("ARCBOOL_EPS", "wide")
        .args(["op", "intersect", "--a"])
        .arg(&a)
        .arg("--b")
        .arg(&b)
        .arg("--out")
        .arg(dir.path().join("o.arc"))
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    let o = op("intersect", &a, &b, &dir.path().join("o.arc"), &["--eps", "-1"]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
}

#[test]
fn gen_examples() {
    let dir = tempfile::tempdir().unwrap();
    let gen = |n: &str, seed: &str, arcs: &str, name: &str| {
        let p = dir.path().join(name);
        let o = bin().args(["gen", "--n", n, "--seed", seed, "--arcs", arcs, "--out"]).arg(&p).output().unwrap();
        assert!(o.status.success(), "{}", stderr(&o));
        p
    };
    let quad = read(&gen("4", "9", "0", "q.arc"));
    let p = poly(&quad.point_lists()[0]);
    assert_eq!(p.n_edges(), 4);
    assert!(p.edges().iter().all(|e| !e.is_arc()));

    let (x, y) = (gen("50", "1", "0.5", "x.arc"), gen("50", "1", "0.5", "y.arc"));
    assert_eq!(std::fs::read(x).unwrap(), std::fs::read(y).unwrap());

    let arcs = read(&gen("10", "2", "1", "a.arc"));
    let p = poly(&arcs.point_lists()[0]);
    assert_eq!(p.edges().iter().filter(|e| e.is_arc()).count(), 10);

    let o = bin().args(["gen", "--n", "2", "--out"]).arg(dir.path().join("z")).output().unwrap();
    assert_eq!(o.status.code(), Some(1));
}

/// Path elements of an SVG document, each as its list of commands.
fn paths(svg: &str) -> Vec<Vec<(char, Vec<f64>)>> {
    svg.split("<path d=\"")
        .skip(1)
        .map(|rest| {
            let d = &rest[..rest.find('"').unwrap()];
            let mut cmds: Vec<(char, Vec<f64>)> = Vec::new();
            for tok in d.split_whitespace() {
                match tok.parse::<f64>() {
                    Ok(v) => cmds.last_mut().unwrap().1.push(v),
                    Err(_) => cmds.push((tok.chars().next().unwrap(), Vec::new())),
                }
            }
            cmds
        })
        .collect()
}

fn arc_count(p: &[(char, Vec<f64>)]) -> usize {
    p.iter().filter(|(c, _)| *c == 'A').count()
}

fn render_files(lists: &[&[Vec<(Point, Tag)>]]) -> String {
    let files: Vec<PolygonFile> = lists
        .iter()
        .map(|ls| PolygonFile { polygons: ls.iter().map(|l| format::records_of(l)).collect(), ..PolygonFile::default() })
        .collect();
    render::render(&files, &tol()).unwrap()
}

#[test]
fn render_examples() {
    let (a, b) = listed_pair();
    let svg = render_files(&[&[a], &[b]]);
    let ps = paths(&svg);
    assert_eq!(ps.len(), 2);
    assert!(ps.iter().all(|p| arc_count(p) == 2 && p.last().unwrap().0 == 'Z'));
    assert_eq!(svg.matches("class=\"appendix\"").count(), 4);

    let empty = render::render(&[PolygonFile::default()], &tol()).unwrap();
    assert!(empty.starts_with("<svg") && empty.trim_end().ends_with("</svg>"));
    assert!(paths(&empty).is_empty());

    let (c1, c2) = (poly(&circle(0.0, 0.0, 1.0)), poly(&circle(1.0, 0.0, 1.0)));
    let lens = arcbool::boolean::intersection(&c1, &c2).unwrap();
    let svg = render::render(&[PolygonFile::from_result(&lens)], &tol()).unwrap();
    let ps = paths(&svg);
    assert_eq!(ps.len(), 1);
    assert_eq!(arc_count(&ps[0]), 2);
    assert_eq!(svg.matches("class=\"crossing\"").count(), 2);
}

/// Center of an SVG circular arc, following the
/// endpoint-to-center conversion SVG renderers use with no rotation.
fn svg_arc_center(p0: Point, p1: Point, r: f64, large: bool, sweep: bool) -> Point {
    let (hx, hy) = ((p0.x - p1.x) / 2.0, (p0.y - p1.y) / 2.0);
    let k = ((r * r - hx * hx - hy * hy) / (hx * hx + hy * hy)).max(0.0).sqrt();
    let s = if large != sweep { k } else { -k };
    Point::new(s * hy + (p0.x + p1.x) / 2.0, -s * hx + (p0.y + p1.y) / 2.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn file_round_trip_is_exact(seed in any::<u64>(), n in 3usize..40, f in 0.0..=1.0f64) {
        let sp = StarParams { arc_fraction: f, ..StarParams::default() };
        let p = random_polygon(seed, n, &sp, &tol()).unwrap();
        let file = PolygonFile::from_polygons([&p]);
        let text = format::write(&file);
        let back = format::parse(&text).unwrap();
        prop_assert_eq!(&back, &file);
        let q = ArcPolygon::from_point_list(&back.point_lists()[0], &tol()).unwrap();
        prop_assert_eq!(q.edges(), p.edges());
    }

    #[test]
    fn rendered_arcs_trace_the_source(seed in any::<u64>(), n in 3usize..20) {
        let sp = StarParams { arc_fraction: 1.0, ..StarParams::default() };
        let p = random_polygon(seed, n, &sp, &tol()).unwrap();
        let svg = render_files(&[&[p.to_point_list()]]);
        let cmds = &paths(&svg)[0];
        let b = p.mbr();
        let eps = 1e-6 * b.width().max(b.height());
        let loose = arcbool::Tolerances::with_eps_pt(eps).unwrap();
        let mut cur = Point::new(cmds[0].1[0], cmds[0].1[1]);
        let mut arcs = 0;
        for (c, v) in &cmds[1..] {
            if *c != 'A' {
                if *c == 'L' { cur = Point::new(v[0], v[1]); }
                continue;
            }
            let (r, large, sweep, end) = (v[0], v[3] != 0.0, v[4] != 0.0, Point::new(v[5], v[6]));
            let c = svg_arc_center(cur, end, r, large, sweep);
            let a0 = (cur.y - c.y).atan2(cur.x - c.x);
            let a1 = (end.y - c.y).atan2(end.x - c.x);
            let span = if sweep { (a1 - a0).rem_euclid(std::f64::consts::TAU) } else { -(a0 - a1).rem_euclid(std::f64::consts::TAU) };
            let src = p.edges()[arcs];
            for k in 1..16 {
                let t = a0 + span * k as f64 / 16.0;
                let q = Point::new(c.x + r * t.cos(), c.y + r * t.sin());
                prop_assert!(arcbool::geom::point_on_edge(q, &src, &loose), "edge {} sample {:?}", arcs, q);
            }
            cur = end;
            arcs += 1;
        }
        prop_assert_eq!(arcs, n);
    }
}

#[test]
fn bench_gate_and_report() {
    let cfg = BenchConfig { sizes: vec![8], trials: 1, methods: vec![Method::Re2l], ..BenchConfig::default() };
    let r = bench::run(&cfg).unwrap();
    assert_eq!(r.rows.len(), 1);
    let table = bench::to_table(&r);
    assert_eq!(table.lines().count(), 2);
    assert!(table.lines().nth(1).unwrap().starts_with("8,re2l,1,"));

    let cfg = BenchConfig { sizes: vec![5, 10], trials: 4, ..BenchConfig::default() };
    let (x, y) = (bench::run(&cfg).unwrap(), bench::run(&cfg).unwrap());
    let seeds = |r: &bench::BenchReport| r.trials.iter().map(|t| t.seed).collect::<Vec<_>>();
    assert_eq!(seeds(&x), seeds(&y));
    assert_eq!(x.rows.len(), 6);
    for row in &x.rows {
        assert!(row.trials == 4 && row.mean >= 0.0 && row.sd >= 0.0);
    }
}

#[test]
fn bench_command_writes_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("b.csv");
    let o = bin().args(["bench", "--sizes", "5,10", "--trials", "2", "--methods", "re2l,naive", "--out"]).arg(&out).output().unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    let t = std::fs::read_to_string(out).unwrap();
    assert_eq!(t.lines().count(), 5);
    let o = bin().args(["bench", "--methods", "fast"]).output().unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn crossings_read_back_as_vertices() {
    let f = format::parse("arcbool 1\npolygon\ncrossing 0 0\nvertex 1 0\nappendix 1.5 0.5\nvertex 1 1\nend\n").unwrap();
    assert_eq!(f.polygons[0][0], Record { point: Point::new(0.0, 0.0), kind: arcbool::NodeKind::Crossing });
    assert_eq!(f.point_lists()[0][0].1, Tag::Vertex);
    poly(&f.point_lists()[0]);
}
