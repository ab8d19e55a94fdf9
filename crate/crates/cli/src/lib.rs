//! Front end for the `slant` binary.
//!
//! [`run`] is pure: it returns the bytes destined for stdout (or `--out`) and
//! stderr together with the exit code, so the binary only performs I/O.

pub mod parse;
pub mod suites;

use std::f64::consts::PI;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use slant_core::calibration::{gram_frame, reduce_to_canonical};
use slant_core::g2::derivation_audit;
use slant_core::orbits::{
    act, minimal_family_point, orbit_geometry, rows_to_csv, slant_scan, summarize, ScanGrid,
};
use slant_core::spheres::{analyze_great_sphere, analyze_small_sphere, slant_center, Classification};
use slant_core::structure::imaginary_structure_constants;
use slant_core::{ImOctonion, OrbitPoint, Plane3, SphereSection};

pub const DEFAULT_SEED: u64 = 12_648_430;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    #[default]
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "slant", version, about = "Slant surfaces of the nearly Kähler six-sphere")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the property suites.
    Verify {
        /// Override every per-check sample count.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(suites::SUITE_NAMES))]
        only: Option<String>,
        /// NAME=VALUE; repeatable.
        #[arg(long = "tolerance")]
        tolerances: Vec<String>,
    },
    /// Calibration data of the 3-plane spanned by three vectors.
    Plane {
        #[arg(allow_hyphen_values = true)]
        v1: String,
        #[arg(allow_hyphen_values = true)]
        v2: String,
        #[arg(allow_hyphen_values = true)]
        v3: String,
    },
    /// Slant analysis of a sphere section of S⁶.
    Sphere {
        #[arg(allow_hyphen_values = true)]
        v1: String,
        #[arg(allow_hyphen_values = true)]
        v2: String,
        #[arg(allow_hyphen_values = true)]
        v3: String,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long, allow_hyphen_values = true)]
        center: Option<String>,
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
    /// Geometry of a maximal-torus orbit.
    Orbit {
        #[arg(allow_hyphen_values = true, conflicts_with = "family", required_unless_present = "family")]
        point: Option<String>,
        /// Point p(c) of the minimal family.
        #[arg(long, allow_hyphen_values = true)]
        family: Option<f64>,
        /// n×n sample of the orbit over (t, s) ∈ [0, 2π)².
        #[arg(long)]
        mesh: Option<usize>,
    },
    /// Slant scan over the orbit parameter box.
    Scan {
        /// Nodes per axis for axes not given explicitly.
        #[arg(long, default_value_t = 32)]
        n: usize,
        /// LO:HI:N or a comma list of values.
        #[arg(long, allow_hyphen_values = true)]
        x1: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
        /// Summary JSON destination (stderr if absent).
        #[arg(long)]
        summary: Option<std::path::PathBuf>,
    },
    /// The imaginary multiplication table.
    Table {
        /// Include the derivation audit of the displayed generators.
        #[arg(long)]
        audit: bool,
    },
}

/// What an invocation produced.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    /// Extra files to write, in order.
    pub files: Vec<(std::path::PathBuf, String)>,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: EXIT_OK, ..Self::default() }
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        Self { stderr: format!("error: {msg}\n"), code: EXIT_USAGE, ..Self::default() }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report values serialize");
    s.push('\n');
    s
}

fn unsupported(cmd: &str, format: Format) -> Outcome {
    Outcome::usage(format!("`{cmd}` does not support --format {format:?}").to_lowercase())
}

/// Executes a parsed command line. Output paths are returned, not written.
pub fn run(cli: &Cli) -> Outcome {
    let mut out = match &cli.command {
        Command::Verify { samples, only, tolerances } => verify(cli, *samples, only.as_deref(), tolerances),
        Command::Plane { v1, v2, v3 } => plane(cli.format, [v1, v2, v3]),
        Command::Sphere { v1, v2, v3, radius, center, samples } => {
            sphere(cli.format, [v1, v2, v3], *radius, center.as_deref(), *samples)
        }
        Command::Orbit { point, family, mesh } => orbit(cli.format, point.as_deref(), *family, *mesh),
        Command::Scan { n, x1, a, b, c, summary } => {
            scan(cli.format, *n, [x1, a, b, c].map(|s| s.as_deref()), summary.as_deref())
        }
        Command::Table { audit } => table(cli.format, *audit),
    };
    if let Some(path) = &cli.out {
        if out.code != EXIT_USAGE {
            out.files.insert(0, (path.clone(), std::mem::take(&mut out.stdout)));
        }
    }
    out
}

fn verify(cli: &Cli, samples: Option<usize>, only: Option<&str>, overrides: &[String]) -> Outcome {
    let mut tol = suites::Tolerances::default();
    for o in overrides {
        if let Err(e) = tol.set(o) {
            return Outcome::usage(e);
        }
    }
    if samples == Some(0) {
        return Outcome::usage("--samples must be positive");
    }
    let report = suites::run(cli.seed, samples, &tol, only);
    let body = match cli.format {
        Format::Json => to_json(&report),
        Format::Csv => {
            let mut s = String::from("suite,check,role,passed,value,bound,tolerance,samples\n");
            for suite in &report.suites {
                for c in &suite.checks {
                    let role = if c.role == suites::Role::Invariant { "invariant" } else { "claim" };
                    let bound = if c.bound == suites::Bound::Below { "below" } else { "above" };
                    let _ = writeln!(
                        s,
                        "{},{},{role},{},{:.16e},{bound},{:.16e},{}",
                        suite.name, c.name, c.passed as u8, c.value, c.tolerance, c.samples
                    );
                }
            }
            s
        }
        Format::Text => {
            let mut s = format!("seed {}\n", report.seed);
            for suite in &report.suites {
                let _ = writeln!(s, "\n[{}] {}", suite.name, if suite.passed { "pass" } else { "FAIL" });
                for c in &suite.checks {
                    let status = match (c.role, c.passed) {
                        (suites::Role::Invariant, true) => "pass ",
                        (suites::Role::Invariant, false) => "FAIL ",
                        (suites::Role::Claim, true) => "holds",
                        (suites::Role::Claim, false) => "fails",
                    };
                    let op = if c.bound == suites::Bound::Below { "<" } else { ">" };
                    let _ = writeln!(s, "  {status} {:<44} {:.3e} {op} {:.1e}  (n={})", c.name, c.value, c.tolerance, c.samples);
                }
            }
            let _ = writeln!(
                s,
                "\n{} invariant(s) failed, {} claim(s) do not hold",
                report.invariants_failed, report.claims_failed
            );
            s
        }
    };
    let failing = report.failing_invariants();
    let mut out = Outcome::ok(body);
    if !failing.is_empty() {
        out.code = EXIT_FAILURE;
        out.stderr = failing.iter().map(|f| format!("failed invariant: {f}\n")).collect();
    }
    out
}

fn parse_plane(vs: [&String; 3]) -> Result<Plane3, Outcome> {
    let v: Vec<ImOctonion> = vs.iter().map(|s| parse::vector(s)).collect::<Result<_, _>>().map_err(Outcome::usage)?;
    Plane3::from_spanning(&v[0], &v[1], &v[2]).map_err(Outcome::usage)
}

fn plane(format: Format, vs: [&String; 3]) -> Outcome {
    let p = match parse_plane(vs) {
        Ok(p) => p,
        Err(o) => return o,
    };
    let red = reduce_to_canonical(&p);
    let classification = match Classification::of_angle(p.phi().clamp(0.0, 1.0).acos()) {
        Classification::AlmostComplex => "associative",
        Classification::TotallyReal => "totally_real",
        _ => "proper",
    };
    let gram = gram_frame(&p);
    let gram_rows: Vec<Vec<f64>> = (0..7).map(|i| (0..7).map(|j| gram[(i, j)]).collect()).collect();
    let report = json!({
        "plane": p,
        "phi": p.phi(),
        "phi_signed": p.phi_signed(),
        "associator": p.associator(),
        "classification": classification,
        "gram": gram_rows,
        "reduction": red,
        "reduction_residual": red.residual(&p),
    });
    match format {
        Format::Json => Outcome::ok(to_json(&report)),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "phi            {}", p.phi());
            let _ = writeln!(s, "associator     {}", p.associator());
            let _ = writeln!(s, "classification {classification}");
            let _ = writeln!(s, "f3 negated     {}", red.f3_negated);
            let _ = writeln!(s, "reduction (rows):");
            for row in red.automorphism.rows() {
                let _ = writeln!(s, "  {}", row.map(|x| format!("{x:>9.6}")).join(" "));
            }
            Outcome::ok(s)
        }
        Format::Csv => unsupported("plane", format),
    }
}

fn sphere(format: Format, vs: [&String; 3], radius: f64, center: Option<&str>, samples: usize) -> Outcome {
    let p = match parse_plane(vs) {
        Ok(p) => p,
        Err(o) => return o,
    };
    if !(radius > 0.0 && radius <= 1.0) {
        return Outcome::usage(format!("radius {radius} is outside (0, 1]"));
    }
    let report = if radius == 1.0 && center.is_none() {
        match analyze_great_sphere(&p, samples) {
            Ok(r) => json!({ "plane": p, "radius": 1.0, "center": ImOctonion::zero(), "report": r }),
            Err(e) => return Outcome::usage(e),
        }
    } else if let Some(c) = center {
        let c = match parse::vector(c) {
            Ok(c) => c,
            Err(e) => return Outcome::usage(e),
        };
        let sec = match SphereSection::new(p, radius, c) {
            Ok(s) => s,
            Err(e) => return Outcome::usage(e),
        };
        match analyze_small_sphere(&sec, samples) {
            Ok(r) => json!({ "plane": p, "radius": radius, "center": c, "report": r }),
            Err(e) => return Outcome::usage(e),
        }
    } else if p.is_associative() {
        // every admissible center works; take the first complement direction
        let c = (1.0 - radius * radius).sqrt() * p.complement()[0];
        let sec = SphereSection::new(p, radius, c).expect("complement direction is orthogonal");
        match analyze_small_sphere(&sec, samples) {
            Ok(r) => json!({ "plane": p, "radius": radius, "center": c, "report": r }),
            Err(e) => return Outcome::usage(e),
        }
    } else {
        let centers = match slant_center(&p, radius) {
            Ok(c) => c,
            Err(e) => return Outcome::usage(e),
        };
        let mut reports = Vec::new();
        for c in centers {
            let sec = SphereSection::new(p, radius, c).expect("admissible center is consistent");
            match analyze_small_sphere(&sec, samples) {
                Ok(r) => reports.push(json!({ "center": c, "report": r })),
                Err(e) => return Outcome::usage(e),
            }
        }
        json!({ "plane": p, "radius": radius, "admissible_centers": reports })
    };
    match format {
        Format::Json => Outcome::ok(to_json(&report)),
        Format::Text => Outcome::ok(sphere_text(&report)),
        Format::Csv => unsupported("sphere", format),
    }
}

fn sphere_text(v: &Value) -> String {
    let mut s = String::new();
    let line = |s: &mut String, center: &Value, r: &Value| {
        let angle = r["angle_rad"].as_f64().map_or("-".to_string(), |a| format!("{a}"));
        let _ = writeln!(
            s,
            "center {center}\n  {} angle {angle} spread {:e}",
            r["classification"].as_str().unwrap_or("?"),
            r["spread"].as_f64().unwrap_or(f64::NAN)
        );
    };
    if let Some(list) = v["admissible_centers"].as_array() {
        for item in list {
            line(&mut s, &item["center"], &item["report"]);
        }
    } else {
        line(&mut s, &v["center"], &v["report"]);
    }
    s
}

fn orbit(format: Format, point: Option<&str>, family: Option<f64>, mesh: Option<usize>) -> Outcome {
    let p = match (point, family) {
        (_, Some(c)) => minimal_family_point(c),
        (Some(s), None) => match parse::vector(s).and_then(|v| OrbitPoint::new(v.coords()).map_err(|e| e.to_string())) {
            Ok(p) => p,
            Err(e) => return Outcome::usage(e),
        },
        (None, None) => return Outcome::usage("give a point or --family"),
    };
    let g = match orbit_geometry(&p) {
        Ok(g) => g,
        Err(e) => return Outcome::usage(e),
    };
    let mesh_csv = mesh.map(|n| {
        let mut s = String::from("t,s,e1,e2,e3,e4,e5,e6,e7\n");
        for i in 0..n {
            for j in 0..n {
                let (t, u) = (2.0 * PI * i as f64 / n as f64, 2.0 * PI * j as f64 / n as f64);
                let q = act(&p, t, u).coords();
                let cols: Vec<String> = [t, u].iter().chain(q.iter()).map(|x| format!("{x:.16e}")).collect();
                let _ = writeln!(s, "{}", cols.join(","));
            }
        }
        s
    });
    match format {
        Format::Json => {
            let mut v = serde_json::to_value(g).expect("geometry serializes");
            if let Some(m) = &mesh_csv {
                v["mesh_csv"] = Value::String(m.clone());
            }
            Outcome::ok(to_json(&v))
        }
        Format::Csv => match mesh_csv {
            Some(m) => Outcome::ok(m),
            None => Outcome::usage("--format csv for `orbit` emits the mesh; pass --mesh N"),
        },
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "point       {}", p.im());
            let _ = writeln!(s, "slant_cos   {}", g.slant_cos);
            let _ = writeln!(s, "slant_angle {}", g.slant_angle());
            let _ = writeln!(s, "K           {:e}", g.gauss_k);
            let _ = writeln!(s, "|H|         {:e}", g.mean_h_norm());
            let _ = writeln!(s, "metric      [{}, {}; {}, {}]", g.metric[(0, 0)], g.metric[(0, 1)], g.metric[(1, 0)], g.metric[(1, 1)]);
            if let Some(m) = mesh_csv {
                s.push('\n');
                s.push_str(&m);
            }
            Outcome::ok(s)
        }
    }
}

fn scan(format: Format, n: usize, axes: [Option<&str>; 4], summary: Option<&std::path::Path>) -> Outcome {
    let mut grid = ScanGrid::uniform(n);
    let slots = [&mut grid.x1, &mut grid.a, &mut grid.b, &mut grid.c];
    for (slot, spec) in slots.into_iter().zip(axes) {
        if let Some(spec) = spec {
            match parse::axis(spec) {
                Ok(a) => *slot = a,
                Err(e) => return Outcome::usage(e),
            }
        }
    }
    if axes.iter().any(Option::is_none) && n < 2 {
        return Outcome::usage("grid resolution must be at least 2 per axis");
    }
    let rows = slant_scan(&grid);
    let summary_json = to_json(&json!({ "grid": grid, "summary": summarize(&rows) }));
    let body = match format {
        Format::Csv | Format::Text => rows_to_csv(&rows),
        Format::Json => to_json(&rows),
    };
    let mut out = Outcome::ok(body);
    match summary {
        Some(path) => out.files.push((path.to_path_buf(), summary_json)),
        None => out.stderr = summary_json,
    }
    out
}

fn table(format: Format, audit: bool) -> Outcome {
    let quads = imaginary_structure_constants();
    let audit_rows = audit.then(derivation_audit);
    match format {
        Format::Json => {
            let mut v = json!({ "products": quads.iter().map(|&(i, j, k, s)| [i as i64, j as i64, k as i64, s as i64]).collect::<Vec<_>>() });
            if let Some(a) = &audit_rows {
                v["derivation_audit"] = serde_json::to_value(a).expect("audit serializes");
            }
            Outcome::ok(to_json(&v))
        }
        Format::Csv => {
            let mut s = String::from("i,j,k,sign\n");
            for (i, j, k, sg) in quads {
                let _ = writeln!(s, "{i},{j},{k},{sg}");
            }
            if let Some(a) = audit_rows {
                s.push_str("\ngenerator,derivation,residual,index_sorted_derivation\n");
                for g in a {
                    let _ = writeln!(s, "{},{},{:.16e},{}", g.name, g.passes as u8, g.residual, g.passes_index_sorted as u8);
                }
            }
            Outcome::ok(s)
        }
        Format::Text => {
            let mut grid = vec![vec![String::new(); 7]; 7];
            for (i, row) in grid.iter_mut().enumerate() {
                row[i] = " -1".to_string();
            }
            for &(i, j, k, sg) in &quads {
                grid[i - 1][j - 1] = format!("{}e{k}", if sg < 0 { "-" } else { " " });
            }
            let mut s = String::from("  ×  ");
            for j in 1..=7 {
                let _ = write!(s, "  e{j}");
            }
            s.push('\n');
            for (i, row) in grid.iter().enumerate() {
                let _ = writeln!(s, " e{}  {}", i + 1, row.join(" "));
            }
            if let Some(a) = audit_rows {
                s.push('\n');
                for g in a {
                    let _ = writeln!(
                        s,
                        "{:<3} {:<10} residual {:.3e}  index-sorted {}",
                        g.name,
                        if g.passes { "derivation" } else { "NOT" },
                        g.residual,
                        if g.passes_index_sorted { "derivation" } else { "NOT" }
                    );
                }
            }
            Outcome::ok(s)
        }
    }
}
