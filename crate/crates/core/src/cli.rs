//! Command-line front end: argument parsing, dispatch, and JSON/CSV output.
//!
//! Angles are in radians throughout.

use std::f64::consts::PI;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::asymptotics::{
    development_angle, divergence_experiment, vertex_ratio_limits, DivergenceRow, LimitProfile, SkipFamily,
};
use crate::error::{Error, Result};
use crate::geom::Vec2;
use crate::metric::{distance_polygon, point_on, distance, DistanceResult};
use crate::minind::{minimizing_index, minind_of_surface, MinindReport, SearchBudget, DEFAULT_K_CAP, DEFAULT_REL_TOL};
use crate::spectra::{
    find_closed_geodesics, is_unique_shortest, ratio_table, shortest_closed_geodesic, RatioRow, SearchConfig,
    SpectrumRecord,
};
use crate::surface::{DiskSurface, EdgeLocation, Face, PolygonSurface, Surface, SurfacePoint};
use crate::svg::{render_svg, FigureKind, Panel, Payload, RenderSpec, Series};
use crate::tracer::{
    make_disk_geodesic, make_special, skip_numbers, trace, trace_open, vertex_ratios, GeodesicPath, SpecialKind,
};

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "GEOKGON_THREADS";

#[derive(Parser, Debug)]
#[command(name = "geokgon", version, about = "Closed geodesics on doubled regular polygons and the doubled disk")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// ngon:N:side=S, ngon:N:inradius=R, ngon:N:circumradius=R, or disk:R
    #[arg(long, global = true, default_value = "ngon:3:inradius=1")]
    surface: String,
    /// Relative tolerance (minind) or closure tolerance (search, shortest)
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Emit JSON (the default)
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV
    #[arg(long, global = true)]
    csv: bool,
    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Trace a geodesic from an edge point
    Trace {
        /// EDGE:U with U in (0, 1)
        #[arg(long, default_value = "0:0.5")]
        start: String,
        /// Angle to the edge direction, in (0, pi)
        #[arg(long)]
        angle: f64,
        #[arg(long, default_value_t = 64)]
        bounces: usize,
        /// Keep going past the first closure
        #[arg(long)]
        open: bool,
    },
    /// Construct a named closed geodesic
    Geodesic {
        #[arg(long)]
        geodesic: String,
    },
    /// Geodesic distance between two points
    Distance {
        /// front:X,Y | back:X,Y | edge:E:U | arc:ANGLE
        #[arg(long)]
        a: String,
        /// Second point, same grammar as --a
        #[arg(long)]
        b: String,
        /// Unfolding depth cap (polygons only)
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Minimizing index of a closed geodesic, or of the whole surface
    Minind {
        /// overunder | vshape | star:K | half:I | disk:M:Q[:T] | @FILE
        #[arg(long, required_unless_present = "surface_wide")]
        geodesic: Option<String>,
        #[arg(long, default_value_t = DEFAULT_K_CAP)]
        k_cap: usize,
        /// Least index over all closed geodesics within the budget
        #[arg(long)]
        surface_wide: bool,
        #[arg(long, default_value_t = 12)]
        max_period: usize,
        #[arg(long, default_value_t = 16.0)]
        max_length: f64,
        #[arg(long, default_value_t = 4000)]
        grid: usize,
    },
    /// List closed geodesics within a budget
    Search(SearchArgs),
    /// Shortest closed geodesic
    Shortest(SearchArgs),
    /// Length over diameter and over root area for V-shapes on odd-gons
    Ratios {
        #[arg(long, value_delimiter = ',', default_value = "3,5,7")]
        n: Vec<usize>,
        #[arg(long, default_value_t = 64)]
        grid: usize,
    },
    /// Exact vertex-ratio limits of a skip family
    Limits {
        /// N:L:K1,K2,... (default: the V-shape family 4:2:-1,1,1,-1)
        #[arg(long)]
        family: Option<String>,
    },
    /// Index bounds of V-shapes as the side count grows
    Diverge {
        #[arg(long, value_delimiter = ',')]
        n: Option<Vec<usize>>,
        /// Measure the index directly up to this side count
        #[arg(long, default_value_t = 7)]
        measure_upto: usize,
    },
    /// Render an SVG figure
    Figure {
        #[arg(long, value_enum, default_value = "polygon")]
        kind: KindArg,
        /// Geodesics to draw (repeatable); none draws the outline only
        #[arg(long)]
        geodesic: Vec<String>,
        /// One panel per side count, overriding --surface
        #[arg(long, value_delimiter = ',')]
        n: Option<Vec<usize>>,
        /// Draw the inscribed circle
        #[arg(long)]
        incircle: bool,
        /// Convergence plots: vshape-angle or vshape-ratio
        #[arg(long, default_value = "vshape-angle")]
        series: String,
    },
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long, default_value_t = 10_000)]
    grid: usize,
    #[arg(long, default_value_t = 8)]
    max_bounces: usize,
    /// In the units of --surface
    #[arg(long, default_value_t = 12.0)]
    length_bound: f64,
}

#[derive(clap::ValueEnum, Clone, Copy, Debug)]
enum KindArg {
    Polygon,
    Disk,
    Development,
    Convergence,
}

enum Format {
    Json,
    Csv,
}

/// Parse and run; returns the process exit code. Errors go to stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    configure_threads();
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_numerical() {
                2
            } else {
                1
            }
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            // Fails harmlessly when a pool already exists.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

pub fn parse_surface(spec: &str) -> Result<Surface> {
    let bad = || Error::InvalidArgument(format!("bad surface spec {spec:?}"));
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        ["disk", r] => Ok(DiskSurface::new(r.parse().map_err(|_| bad())?)?.into()),
        ["disk"] => Ok(DiskSurface::unit().into()),
        ["ngon", n] => Ok(PolygonSurface::with_side(n.parse().map_err(|_| bad())?, 1.0)?.into()),
        ["ngon", n, size] => {
            let n: usize = n.parse().map_err(|_| bad())?;
            let (key, value) = size.split_once('=').ok_or_else(bad)?;
            let value: f64 = value.parse().map_err(|_| bad())?;
            let poly = match key {
                "side" => PolygonSurface::with_side(n, value)?,
                "inradius" => PolygonSurface::with_inradius(n, value)?,
                "circumradius" => PolygonSurface::with_circumradius(n, value)?,
                _ => return Err(bad()),
            };
            Ok(poly.into())
        }
        _ => Err(bad()),
    }
}

/// Build a geodesic from `overunder`, `vshape`, `star:K`, `half:I`,
/// `disk:M:Q[:T]`, or `@FILE` holding path JSON.
pub fn parse_geodesic(spec: &str, surface: &Surface) -> Result<GeodesicPath> {
    if let Some(file) = spec.strip_prefix('@') {
        let text = std::fs::read_to_string(file)?;
        return GeodesicPath::from_json(&text);
    }
    let bad = || Error::InvalidArgument(format!("bad geodesic spec {spec:?}"));
    let parts: Vec<&str> = spec.split(':').collect();
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
    if let ["disk", m, q, rest @ ..] = parts.as_slice() {
        let Surface::Disk(d) = surface else {
            return Err(Error::InvalidArgument("disk geodesics need a disk surface".into()));
        };
        let t = match rest {
            [] => 1,
            [t] => num(t)?,
            _ => return Err(bad()),
        };
        return make_disk_geodesic(d, num(m)?, num(q)?, t);
    }
    let Surface::Polygon(p) = surface else {
        return Err(Error::InvalidArgument(format!("{spec} needs a polygon surface; use disk:M:Q[:T]")));
    };
    let kind = match parts.as_slice() {
        ["overunder"] | ["over-under"] => SpecialKind::OverUnder,
        ["vshape"] | ["v-shape"] => SpecialKind::Vshape,
        ["star", k] => SpecialKind::MidpointStar(num(k)?),
        ["half", i] => SpecialKind::HalfGeodesic(num(i)?),
        ["half"] => SpecialKind::HalfGeodesic(0),
        _ => return Err(bad()),
    };
    make_special(p, kind)
}

/// `front:X,Y`, `back:X,Y`, `edge:E:U` (polygons) or `arc:ANGLE` (disks).
pub fn parse_point(spec: &str, surface: &Surface) -> Result<SurfacePoint> {
    let bad = || Error::InvalidArgument(format!("bad point spec {spec:?}"));
    let (kind, rest) = spec.split_once(':').ok_or_else(bad)?;
    match kind {
        "front" | "back" => {
            let (x, y) = rest.split_once(',').ok_or_else(bad)?;
            let pos = Vec2::new(x.trim().parse().map_err(|_| bad())?, y.trim().parse().map_err(|_| bad())?);
            if !surface.contains(pos, 1e-12 * surface.scale()) {
                return Err(Error::InvalidArgument(format!("{spec} lies outside the surface")));
            }
            let face = if kind == "front" { Face::Front } else { Face::Back };
            Ok(point_on(surface, face, pos))
        }
        "edge" => {
            let Surface::Polygon(p) = surface else {
                return Err(bad());
            };
            let (e, u) = rest.split_once(':').ok_or_else(bad)?;
            p.edge_point(EdgeLocation::new(e.parse().map_err(|_| bad())?, u.parse().map_err(|_| bad())?)?)
        }
        "arc" => {
            let Surface::Disk(d) = surface else {
                return Err(bad());
            };
            Ok(SurfacePoint::boundary(d.boundary_position(rest.parse().map_err(|_| bad())?)))
        }
        _ => Err(bad()),
    }
}

pub fn parse_family(spec: &str) -> Result<SkipFamily> {
    let bad = || Error::InvalidArgument(format!("bad family spec {spec:?}; expected N:L:K1,K2,..."));
    let mut parts = spec.splitn(3, ':');
    let n = parts.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
    let l = parts.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
    let k = parts
        .next()
        .ok_or_else(bad)?
        .split(',')
        .map(|s| s.trim().parse::<i64>().map_err(|_| bad()))
        .collect::<Result<Vec<_>>>()?;
    SkipFamily::new(n, l, k)
}

fn polygon(surface: &Surface) -> Result<&PolygonSurface> {
    surface
        .as_polygon()
        .ok_or_else(|| Error::Unsupported("this subcommand needs a polygon surface".into()))
}

struct Out {
    format: Format,
    target: Option<PathBuf>,
}

impl Out {
    fn emit(&self, text: &str) -> Result<()> {
        match &self.target {
            Some(path) => std::fs::write(path, text)?,
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(text.as_bytes())?;
            }
        }
        Ok(())
    }

    fn json<T: Serialize + ?Sized>(&self, value: &T) -> Result<()> {
        let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
        s.push('\n');
        self.emit(&s)
    }

    fn csv(&self, header: &str, rows: impl IntoIterator<Item = String>) -> Result<()> {
        let mut s = String::from(header);
        s.push('\n');
        for r in rows {
            s.push_str(&r);
            s.push('\n');
        }
        self.emit(&s)
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    let g = cli.global;
    let out = Out {
        format: if g.csv { Format::Csv } else { Format::Json },
        target: g.out.clone(),
    };
    let surface = parse_surface(&g.surface)?;
    match cli.command {
        Command::Trace {
            start,
            angle,
            bounces,
            open,
        } => {
            let poly = polygon(&surface)?;
            let (e, u) = start
                .split_once(':')
                .ok_or_else(|| Error::InvalidArgument(format!("bad start {start:?}; expected EDGE:U")))?;
            let loc = EdgeLocation::new(
                e.parse().map_err(|_| Error::InvalidArgument(format!("bad edge {e:?}")))?,
                u.parse().map_err(|_| Error::InvalidArgument(format!("bad parameter {u:?}")))?,
            )?;
            let path = if open {
                trace_open(poly, loc, angle, bounces)?
            } else {
                trace(poly, loc, angle, bounces)?
            };
            emit_path(&out, &path)?;
            // the flagged path is still written
            path.check().map(|_| ())
        }
        Command::Geodesic { geodesic } => emit_path(&out, &parse_geodesic(&geodesic, &surface)?),
        Command::Distance { a, b, depth } => {
            let pa = parse_point(&a, &surface)?;
            let pb = parse_point(&b, &surface)?;
            let result: DistanceResult = match (&surface, depth) {
                (Surface::Polygon(p), Some(d)) => distance_polygon(p, pa, pb, d)?,
                _ => distance(&surface, pa, pb)?,
            };
            if result.vertex_grazing {
                eprintln!("warning: a shortest path grazes a vertex");
            }
            match out.format {
                Format::Json => out.json(&result),
                Format::Csv => out.csv(
                    "distance,depth,proven_optimal,vertex_grazing",
                    [format!(
                        "{:.12},{},{},{}",
                        result.distance, result.depth, result.proven_optimal, result.vertex_grazing
                    )],
                ),
            }
        }
        Command::Minind {
            geodesic,
            k_cap,
            surface_wide,
            max_period,
            max_length,
            grid,
        } => {
            if surface_wide {
                let n = polygon(&surface)?.sides();
                let budget = SearchBudget {
                    max_period,
                    max_length,
                    grid,
                };
                let report = minind_of_surface(n, budget)?;
                return match out.format {
                    Format::Json => out.json(&report),
                    Format::Csv => out.csv(
                        "n,minind,candidates",
                        [format!(
                            "{},{},{}",
                            report.n,
                            report.minind.map(|m| m.to_string()).unwrap_or_default(),
                            report.candidates
                        )],
                    ),
                };
            }
            let spec = geodesic.ok_or_else(|| Error::InvalidArgument("--geodesic is required".into()))?;
            let path = parse_geodesic(&spec, &surface)?;
            let report: MinindReport = minimizing_index(&path, g.tol.unwrap_or(DEFAULT_REL_TOL), k_cap)?;
            if report.minind.is_none() {
                return Err(Error::BudgetExhausted(format!("no index up to {k_cap}")));
            }
            match out.format {
                Format::Json => out.json(&report),
                Format::Csv => out.csv(MinindReport::csv_header(), [report.csv_row()]),
            }
        }
        Command::Search(args) => {
            let entries = find_closed_geodesics(polygon(&surface)?, &search_config(&args, g.tol))?;
            let records: Vec<SpectrumRecord> = entries.iter().map(|e| e.to_record()).collect();
            emit_spectrum(&out, &records)
        }
        Command::Shortest(args) => {
            let poly = polygon(&surface)?;
            let config = search_config(&args, g.tol);
            let best = shortest_closed_geodesic(poly, &config)?;
            let entries = find_closed_geodesics(poly, &config)?;
            if !is_unique_shortest(&entries, config.dedup_tol) {
                eprintln!("warning: the shortest length is attained by several families");
            }
            emit_spectrum(&out, &[best.to_record()])
        }
        Command::Ratios { n, grid } => {
            let rows: Vec<RatioRow> = ratio_table(&n, grid)?;
            match out.format {
                Format::Json => out.json(&rows),
                Format::Csv => out.csv(RatioRow::csv_header(), rows.iter().map(|r| r.csv_row())),
            }
        }
        Command::Limits { family } => {
            let family = match family {
                Some(s) => parse_family(&s)?,
                None => SkipFamily::vshape(),
            };
            let profile: LimitProfile = vertex_ratio_limits(&family)?;
            match out.format {
                Format::Json => out.json(&profile),
                Format::Csv => out.csv(LimitProfile::csv_header(), profile.csv_rows()),
            }
        }
        Command::Diverge { n, measure_upto } => {
            let n = n.unwrap_or_else(|| (3..=25).step_by(2).collect());
            let rows: Vec<DivergenceRow> = divergence_experiment(&n, measure_upto)?;
            match out.format {
                Format::Json => out.json(&rows),
                Format::Csv => out.csv(DivergenceRow::csv_header(), rows.iter().map(|r| r.csv_row())),
            }
        }
        Command::Figure {
            kind,
            geodesic,
            n,
            incircle,
            series,
        } => {
            let mut spec = RenderSpec::new(match kind {
                KindArg::Polygon => FigureKind::Polygon,
                KindArg::Disk => FigureKind::Disk,
                KindArg::Development => FigureKind::Development,
                KindArg::Convergence => FigureKind::Convergence,
            });
            spec.style.show_incircle = incircle;
            let payload = figure_payload(spec.kind, &surface, &geodesic, n.as_deref(), &series)?;
            let svg = render_svg(&spec, &payload)?;
            out.emit(&svg)
        }
    }
}

fn search_config(args: &SearchArgs, tol: Option<f64>) -> SearchConfig {
    let mut c = SearchConfig {
        grid: args.grid,
        max_bounces: args.max_bounces,
        length_bound: args.length_bound,
        ..SearchConfig::default()
    };
    if let Some(t) = tol {
        c.closure_tol = t;
        c.dedup_tol = c.dedup_tol.max(t);
    }
    c
}

fn emit_path(out: &Out, path: &GeodesicPath) -> Result<()> {
    match out.format {
        Format::Json => {
            let mut s = path.to_json();
            s.push('\n');
            out.emit(&s)
        }
        Format::Csv => {
            let skips = skip_numbers(path);
            let ratios = vertex_ratios(path);
            let rows = path.segments().iter().enumerate().map(|(i, seg)| {
                let (a, b) = path.segment_endpoints(i);
                let face = match seg.face {
                    Face::Front => "front",
                    Face::Back => "back",
                };
                format!(
                    "{i},{face},{:.12},{:.12},{:.12},{:.12},{},{}",
                    a.x,
                    a.y,
                    b.x,
                    b.y,
                    skips.get(i).map(|s| s.to_string()).unwrap_or_default(),
                    ratios.get(i).map(|v| format!("{v:.12}")).unwrap_or_default()
                )
            });
            out.csv("segment,face,x0,y0,x1,y1,skip,vertex_ratio", rows)
        }
    }
}

fn emit_spectrum(out: &Out, records: &[SpectrumRecord]) -> Result<()> {
    match out.format {
        Format::Json => out.json(records),
        Format::Csv => out.csv(
            "length,period,skips,orbit_size,start_angle",
            records.iter().map(|r| {
                let skips: Vec<String> = r.skips.iter().map(|s| s.to_string()).collect();
                format!(
                    "{:.12},{},{},{},{:.12}",
                    r.length,
                    r.period,
                    skips.join(" "),
                    r.orbit_size,
                    r.start_angle
                )
            }),
        ),
    }
}

fn figure_payload(
    kind: FigureKind,
    surface: &Surface,
    geodesics: &[String],
    n_list: Option<&[usize]>,
    series: &str,
) -> Result<Payload> {
    let panel_on = |s: Surface, label: Option<String>| -> Result<Panel> {
        let paths = geodesics
            .iter()
            .map(|g| parse_geodesic(g, &s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Panel {
            surface: s,
            paths,
            label,
        })
    };
    match kind {
        FigureKind::Polygon | FigureKind::Disk => {
            let panels = match n_list {
                Some(ns) => ns
                    .iter()
                    .map(|&n| panel_on(PolygonSurface::with_inradius(n, 1.0)?.into(), Some(format!("X_{n}"))))
                    .collect::<Result<Vec<_>>>()?,
                None => vec![panel_on(surface.clone(), None)?],
            };
            Ok(Payload::Panels(panels))
        }
        FigureKind::Development => {
            let s = match n_list {
                Some([n]) => PolygonSurface::with_inradius(*n, 1.0)?.into(),
                Some(_) => return Err(Error::InvalidArgument("development figures take one side count".into())),
                None => surface.clone(),
            };
            let mut panel = panel_on(s, None)?;
            panel.paths.truncate(1);
            Ok(Payload::Development(panel))
        }
        FigureKind::Convergence => {
            let ns: Vec<usize> = n_list.map(|s| s.to_vec()).unwrap_or_else(|| vec![5, 11, 21, 41, 101, 201, 401, 1001]);
            let family = SkipFamily::vshape();
            let mut points = Vec::with_capacity(ns.len());
            for &p in &ns {
                let skips = family
                    .instantiate(p)
                    .ok_or_else(|| Error::InvalidArgument(format!("V-shape family needs odd p, got {p}")))?;
                let sk: Vec<i64> = skips.iter().map(|&s| s as i64).collect();
                let theta = development_angle(p, &sk)?;
                let y = match series {
                    "vshape-angle" => p as f64 * (theta - PI / 2.0).abs(),
                    "vshape-ratio" => {
                        let v1 = crate::asymptotics::vertex_ratio_step(p, 0.5, skips[0], theta)?;
                        p as f64 * v1
                    }
                    other => return Err(Error::InvalidArgument(format!("unknown series {other:?}"))),
                };
                points.push(((p as f64).log10(), y));
            }
            let y_label = if series == "vshape-angle" {
                "p |theta - pi/2|"
            } else {
                "p v_1"
            };
            Ok(Payload::Convergence {
                x_label: "log10 p".into(),
                y_label: y_label.into(),
                series: vec![Series {
                    label: series.into(),
                    points,
                }],
            })
        }
    }
}
