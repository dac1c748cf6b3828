//! Command-line front end: curve/boundary ingestion, pipeline orchestration,
//! JSON report and CSV grid emission.
//!
//! Exit codes: 0 on success, 1 on validation failures (bad flags, malformed
//! input, rejected samples), 2 on numeric failures (spectral tail,
//! nonconvergent quadrature, degenerate lower bound). Numeric and validation
//! failures print a structured JSON object on standard error.

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Deserialize;
use serde_json::{json, Value};
use std::f64::consts::TAU;
use std::path::{Path, PathBuf};

use qcharm::boundary::{
    self, boundary_wirtinger, build_boundary_map_with_modes, BoundaryDerivatives, BoundaryMap,
};
use qcharm::bounds;
use qcharm::curve::{CurveOptions, JordanCurve};
use qcharm::extension::{extend, GridSpec, HarmonicMap};
use qcharm::fixtures;
use qcharm::{Error as QcError, ErrorKind};

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Parser)]
#[command(
    name = "qcharm",
    version,
    about = "Harmonic extensions of circle homeomorphisms: distortion measurements and explicit bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Boundary sample count for generators (power of two).
    #[arg(long, global = true, default_value_t = 4096)]
    n_samples: usize,

    /// Fourier mode cap (default n_samples/2 - 1).
    #[arg(long, global = true)]
    fourier_modes: Option<usize>,

    /// Outer radius of interior evaluation grids.
    #[arg(long, global = true)]
    grid_r_max: Option<f64>,

    /// Number of grid radii.
    #[arg(long, global = true, default_value_t = 64)]
    grid_radii: usize,

    /// Number of grid angles.
    #[arg(long, global = true, default_value_t = 512)]
    grid_angles: usize,

    /// Degeneracy tolerance for l(f).
    #[arg(long, global = true, default_value_t = 1e-6)]
    tolerance: f64,

    /// Seed for randomized pair sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Also write per-sample / per-grid-point CSV tables.
    #[arg(long, global = true)]
    dump_grids: bool,

    /// Primary document format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    output: OutputFormat,

    /// Write the primary document here instead of stdout. CSV tables are
    /// written next to this path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Geometry constants of a curve: C_gamma, chord-arc B, area, length.
    AnalyzeCurve {
        /// circle | ellipse:a,b | example2 | path to JSON
        #[arg(long)]
        curve: String,
    },
    /// Boundary norms of a map: sup |f'|, sup |H(f')|, l(f).
    AnalyzeBoundary {
        /// identity | stretch:k | example1:b | example2 | path to JSON
        #[arg(long)]
        boundary: String,
        #[arg(long)]
        curve: Option<String>,
    },
    /// Harmonic extension summary and interior distortion grid.
    Extend {
        #[arg(long)]
        boundary: String,
        #[arg(long)]
        curve: Option<String>,
    },
    /// Distortion bound from boundary norms versus measured grid supremum.
    QcReport {
        #[arg(long)]
        boundary: String,
        #[arg(long)]
        curve: Option<String>,
    },
    /// Holder, Lipschitz and Jacobian bounds with verification sweeps.
    BoundsReport {
        #[arg(long)]
        boundary: String,
        #[arg(long)]
        curve: Option<String>,
    },
    /// Built-in example drivers with evidence tables.
    Example {
        #[command(subcommand)]
        which: ExampleCommand,
    },
}

#[derive(Subcommand)]
enum ExampleCommand {
    /// Oscillatory circle warp: distortion plus non-differentiability
    /// evidence at phi = 0.
    #[command(name = "paper-1")]
    Paper1 {
        #[arg(long, default_value_t = 0.3)]
        b: f64,
    },
    /// Distortion trend of the oscillatory warp as b decreases.
    #[command(name = "paper-1-trend")]
    Paper1Trend {
        #[arg(long, value_delimiter = ',', default_values_t = vec![0.7, 0.5, 0.3, 0.1, 0.05])]
        bs: Vec<f64>,
    },
    /// Degenerate harmonic polynomial: boundary stretch collapses at z = 1.
    #[command(name = "paper-2")]
    Paper2,
    /// Affine stretch fixture with exact distortion (1+k)/(1-k).
    Stretch {
        #[arg(long, default_value_t = 1.0 / 3.0)]
        k: f64,
    },
}

struct AppError {
    name: String,
    message: String,
    exit: i32,
}

impl From<QcError> for AppError {
    fn from(e: QcError) -> Self {
        AppError {
            name: e.name().to_string(),
            message: e.to_string(),
            exit: match e.kind() {
                ErrorKind::Validation => 1,
                ErrorKind::Numeric => 2,
            },
        }
    }
}

fn validation_error(name: &str, message: String) -> AppError {
    AppError {
        name: name.to_string(),
        message,
        exit: 1,
    }
}

/// A named CSV table attached to a report.
struct CsvTable {
    name: &'static str,
    header: &'static str,
    rows: Vec<String>,
}

struct Documents {
    primary: Value,
    tables: Vec<CsvTable>,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are not failures.
            if e.use_stderr() {
                let _ = e.print();
                std::process::exit(1);
            }
            let _ = e.print();
            std::process::exit(0);
        }
    };
    match run(&cli) {
        Ok(docs) => {
            if let Err(e) = emit(&cli, docs) {
                eprintln!("{}", json!({ "error": e.name, "message": e.message }));
                std::process::exit(e.exit);
            }
        }
        Err(e) => {
            eprintln!("{}", json!({ "error": e.name, "message": e.message }));
            std::process::exit(e.exit);
        }
    }
}

fn run(cli: &Cli) -> Result<Documents, AppError> {
    if !cli.n_samples.is_power_of_two() || cli.n_samples < 64 {
        return Err(validation_error(
            "BadConfig",
            format!("--n-samples must be a power of two >= 64, got {}", cli.n_samples),
        ));
    }
    if let Some(m) = cli.fourier_modes {
        if m == 0 || m >= cli.n_samples / 2 {
            return Err(validation_error(
                "BadConfig",
                format!("--fourier-modes must lie in 1..n_samples/2, got {m}"),
            ));
        }
    }
    if let Some(r) = cli.grid_r_max {
        if !(0.0 < r && r < 1.0) {
            return Err(validation_error(
                "BadConfig",
                format!("--grid-r-max must lie in (0, 1), got {r}"),
            ));
        }
    }

    match &cli.command {
        Command::AnalyzeCurve { curve } => analyze_curve(cli, curve),
        Command::AnalyzeBoundary { boundary, curve } => analyze_boundary(cli, boundary, curve),
        Command::Extend { boundary, curve } => extend_cmd(cli, boundary, curve),
        Command::QcReport { boundary, curve } => qc_report_cmd(cli, boundary, curve),
        Command::BoundsReport { boundary, curve } => bounds_report_cmd(cli, boundary, curve),
        Command::Example { which } => example_cmd(cli, which),
    }
}

fn grid_spec(cli: &Cli, default_r_max: f64) -> GridSpec {
    GridSpec {
        radii: cli.grid_radii,
        angles: cli.grid_angles,
        r_max: cli.grid_r_max.unwrap_or(default_r_max),
    }
}

// ---------------------------------------------------------------- ingestion

#[derive(Deserialize)]
struct CurveFile {
    samples: Vec<[f64; 2]>,
    holder_exponent: f64,
}

#[derive(Deserialize)]
struct BoundaryFile {
    boundary_values: Vec<[f64; 2]>,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &str) -> Result<T, AppError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| validation_error("InputNotReadable", format!("{path}: {e}")))?;
    serde_json::from_str(&text)
        .map_err(|e| validation_error("MalformedInput", format!("{path}: {e}")))
}

fn parse_curve_spec(cli: &Cli, spec: &str) -> Result<JordanCurve, AppError> {
    // Curve resolution floors at 1024 so the on-curve validation of
    // boundary samples is not limited by polyline sagitta.
    let n = cli.n_samples.max(1024);
    if spec == "circle" {
        return Ok(JordanCurve::circle(n));
    }
    if spec == "example2" {
        return Ok(fixtures::example2_map(n).1);
    }
    if let Some(rest) = spec.strip_prefix("ellipse:") {
        let parts: Vec<&str> = rest.split(',').collect();
        if parts.len() != 2 {
            return Err(validation_error(
                "MalformedInput",
                format!("ellipse spec needs two semiaxes, got '{rest}'"),
            ));
        }
        let a: f64 = parts[0]
            .trim()
            .parse()
            .map_err(|e| validation_error("MalformedInput", format!("ellipse a: {e}")))?;
        let b: f64 = parts[1]
            .trim()
            .parse()
            .map_err(|e| validation_error("MalformedInput", format!("ellipse b: {e}")))?;
        return Ok(JordanCurve::ellipse(a, b, n)?);
    }
    let file: CurveFile = read_json(spec)?;
    let points: Vec<Complex64> = file
        .samples
        .iter()
        .map(|p| Complex64::new(p[0], p[1]))
        .collect();
    Ok(JordanCurve::build_with(
        &points,
        file.holder_exponent,
        CurveOptions {
            resample: n,
            ..CurveOptions::default()
        },
    )?)
}

/// Build (curve, boundary map) from a boundary spec, honoring an explicit
/// curve override.
fn parse_boundary_spec(
    cli: &Cli,
    spec: &str,
    curve_override: &Option<String>,
) -> Result<(JordanCurve, BoundaryMap), AppError> {
    let n = cli.n_samples;
    let modes = cli.fourier_modes.unwrap_or(n / 2 - 1);
    let phi = |j: usize| TAU * j as f64 / n as f64;

    let (values, implied_curve): (Vec<Complex64>, Option<JordanCurve>) = if spec == "identity" {
        (
            (0..n).map(|j| (I * phi(j)).exp()).collect(),
            Some(JordanCurve::circle(n.max(1024))),
        )
    } else if let Some(rest) = spec.strip_prefix("stretch:") {
        let k: f64 = rest
            .trim()
            .parse()
            .map_err(|e| validation_error("MalformedInput", format!("stretch k: {e}")))?;
        if !(0.0..1.0).contains(&k) {
            return Err(QcError::ParamOutOfRange {
                name: "k",
                value: k,
                range: "[0, 1)",
            }
            .into());
        }
        (
            (0..n)
                .map(|j| (I * phi(j)).exp() + k * (-I * phi(j)).exp())
                .collect(),
            Some(JordanCurve::ellipse(1.0 + k, 1.0 - k, n.max(1024))?),
        )
    } else if let Some(rest) = spec.strip_prefix("example1:") {
        let b: f64 = rest
            .trim()
            .parse()
            .map_err(|e| validation_error("MalformedInput", format!("example1 b: {e}")))?;
        if !(b > 0.0 && b < std::f64::consts::SQRT_2 / 2.0) {
            return Err(QcError::ParamOutOfRange {
                name: "b",
                value: b,
                range: "(0, sqrt(2)/2)",
            }
            .into());
        }
        (
            (0..n)
                .map(|j| (I * fixtures::example1_theta(b, phi(j))).exp())
                .collect(),
            None,
        )
    } else if spec == "example2" {
        (
            (0..n).map(|j| fixtures::example2_trace(phi(j))).collect(),
            Some(fixtures::example2_map(n).1),
        )
    } else {
        let file: BoundaryFile = read_json(spec)?;
        let values: Vec<Complex64> = file
            .boundary_values
            .iter()
            .map(|p| Complex64::new(p[0], p[1]))
            .collect();
        if curve_override.is_none() {
            return Err(validation_error(
                "MissingCurve",
                "boundary values from a file need --curve".to_string(),
            ));
        }
        let curve = parse_curve_spec(cli, curve_override.as_ref().unwrap())?;
        let map = build_boundary_map_with_modes(&values, &curve, modes.min(values.len() / 2 - 1))?;
        return Ok((curve, map));
    };

    let curve = match curve_override {
        Some(spec) => parse_curve_spec(cli, spec)?,
        None => implied_curve.unwrap_or_else(|| JordanCurve::circle(n.max(1024))),
    };
    let map = build_boundary_map_with_modes(&values, &curve, modes)?;
    Ok((curve, map))
}

// ----------------------------------------------------------------- commands

fn analyze_curve(cli: &Cli, spec: &str) -> Result<Documents, AppError> {
    let curve = parse_curve_spec(cli, spec)?;
    let report = curve.geometry_report()?;
    Ok(Documents {
        primary: serde_json::to_value(&report).unwrap(),
        tables: Vec::new(),
    })
}

fn boundary_pipeline(
    cli: &Cli,
    spec: &str,
    curve_override: &Option<String>,
) -> Result<(JordanCurve, BoundaryMap, BoundaryDerivatives), AppError> {
    let (curve, map) = parse_boundary_spec(cli, spec, curve_override)?;
    let derivs = boundary::norms(&map)?;
    Ok((curve, map, derivs))
}

fn boundary_grid_table(map: &BoundaryMap, derivs: &BoundaryDerivatives) -> CsvTable {
    let n = map.n_samples();
    let rows = (0..n)
        .map(|j| {
            let p = TAU * j as f64 / n as f64;
            format!(
                "{},{},{},{},{},{},{}",
                fmt(p),
                fmt(derivs.f_prime[j].re),
                fmt(derivs.f_prime[j].im),
                fmt(derivs.hilbert_f_prime[j].re),
                fmt(derivs.hilbert_f_prime[j].im),
                fmt(derivs.wz_mod[j]),
                fmt(derivs.wzbar_mod[j]),
            )
        })
        .collect();
    CsvTable {
        name: "grids",
        header: "phi,fp_re,fp_im,hfp_re,hfp_im,wz_mod,wzbar_mod",
        rows,
    }
}

fn analyze_boundary(
    cli: &Cli,
    spec: &str,
    curve_override: &Option<String>,
) -> Result<Documents, AppError> {
    let (curve, map, derivs) = boundary_pipeline(cli, spec, curve_override)?;
    let method_diff = boundary::hilbert_methods_check(&derivs.f_prime)?;
    let (normalized, norm_spec) = boundary::check_normalized(&map, &curve);
    let primary = json!({
        "n_samples": map.n_samples(),
        "sup_f_prime": derivs.sup_f_prime,
        "sup_hilbert": derivs.sup_hilbert,
        "l_f": derivs.l_f,
        "tail_fraction": derivs.tail_fraction,
        "hilbert_method_diff": method_diff,
        "normalized": normalized,
        "normalization_arcs": norm_spec.arc_lengths,
    });
    let tables = if cli.dump_grids {
        vec![boundary_grid_table(&map, &derivs)]
    } else {
        Vec::new()
    };
    Ok(Documents { primary, tables })
}

fn distortion_grid_table(hmap: &HarmonicMap, grid: &GridSpec) -> CsvTable {
    let mut rows = Vec::with_capacity(grid.radii * grid.angles);
    for z in grid.points() {
        let (r, p) = z.to_polar();
        let p = p.rem_euclid(TAU);
        match hmap.wirtinger(z) {
            Ok(d) => {
                let w = hmap.evaluate(z).expect("inside the disk");
                rows.push(format!(
                    "{},{},{},{},{},{},{}",
                    fmt(r),
                    fmt(p),
                    fmt(w.re),
                    fmt(w.im),
                    fmt(d.jacobian),
                    fmt(d.mu.norm()),
                    fmt(d.k_point),
                ));
            }
            Err(_) => {
                let w = hmap.evaluate(z).expect("inside the disk");
                rows.push(format!(
                    "{},{},{},{},nan,nan,inf",
                    fmt(r),
                    fmt(p),
                    fmt(w.re),
                    fmt(w.im),
                ));
            }
        }
    }
    CsvTable {
        name: "grid",
        header: "r,phi,w_re,w_im,J,mu_abs,K_point",
        rows,
    }
}

fn extend_cmd(
    cli: &Cli,
    spec: &str,
    curve_override: &Option<String>,
) -> Result<Documents, AppError> {
    let (_, map) = parse_boundary_spec(cli, spec, curve_override)?;
    let hmap = extend(&map);
    let grid = grid_spec(cli, 0.999);
    let sup = hmap.grid_sup_k(&grid)?;
    let center = hmap.center_value();
    let primary = json!({
        "n_samples": map.n_samples(),
        "g_degree": hmap.g_coeffs().len() - 1,
        "h_degree": hmap.h_coeffs().len(),
        "center": [center.re, center.im],
        "tail_fraction": map.spectrum().tail_energy_fraction(),
        "grid": serde_json::to_value(grid).unwrap(),
        "measured_sup_k": sup.sup_k,
        "argmax": [sup.argmax.re, sup.argmax.im],
        "excluded_points": sup.excluded,
    });
    let tables = if cli.dump_grids {
        vec![distortion_grid_table(&hmap, &grid)]
    } else {
        Vec::new()
    };
    Ok(Documents { primary, tables })
}

fn qc_report_cmd(
    cli: &Cli,
    spec: &str,
    curve_override: &Option<String>,
) -> Result<Documents, AppError> {
    let (_, map, derivs) = boundary_pipeline(cli, spec, curve_override)?;
    let hmap = extend(&map);
    let grid = grid_spec(cli, 0.999);
    let sup = hmap.grid_sup_k(&grid)?;
    let report = bounds::qc_report(&derivs, &sup, cli.tolerance)?;
    let mut primary = serde_json::to_value(&report).unwrap();
    primary["seed"] = json!(cli.seed);
    primary["n_samples"] = json!(map.n_samples());
    let tables = if cli.dump_grids {
        vec![distortion_grid_table(&hmap, &grid)]
    } else {
        Vec::new()
    };
    Ok(Documents { primary, tables })
}

fn jacobian_table(checks: &[bounds::JacobianCheck]) -> CsvTable {
    let rows = checks
        .iter()
        .map(|c| {
            format!(
                "{},{},{},{}",
                fmt(c.phi),
                fmt(c.rhs),
                fmt(c.measured),
                c.holds
            )
        })
        .collect();
    CsvTable {
        name: "jacobian",
        header: "phi,rhs,measured_J,holds",
        rows,
    }
}

fn bounds_report_cmd(
    cli: &Cli,
    spec: &str,
    curve_override: &Option<String>,
) -> Result<Documents, AppError> {
    let (curve, map, derivs) = boundary_pipeline(cli, spec, curve_override)?;
    let hmap = extend(&map);
    let k_used = bounds::kk_bound(&derivs, cli.tolerance)?.kk;
    let grid = grid_spec(cli, 0.999);
    let report = bounds::bounds_report(
        &curve,
        &map,
        &hmap,
        &derivs,
        k_used,
        100,
        10_000,
        cli.seed,
        grid.r_max,
    )?;
    let mut primary = serde_json::to_value(&report).unwrap();
    primary["seed"] = json!(cli.seed);
    let tables = vec![jacobian_table(&report.jacobian_checks)];
    Ok(Documents { primary, tables })
}

fn example_cmd(cli: &Cli, which: &ExampleCommand) -> Result<Documents, AppError> {
    match which {
        ExampleCommand::Paper1 { b } => {
            let f = fixtures::example1_boundary(fixtures::Example1Params {
                b: *b,
                n_samples: cli.n_samples,
            })?;
            let grid = grid_spec(cli, 0.999);
            let sup = f.harmonic.grid_sup_k(&grid)?;
            let evidence = fixtures::example1_nondiff_evidence(*b)?;
            let amplitude = fixtures::example1_oscillation_amplitude(*b)?;
            // The spectral-tail diagnostic is part of the story here: the
            // boundary is rough, so report the norms when they resolve and
            // the diagnostic when they do not.
            let norms_value = match boundary::norms(&f.boundary) {
                Ok(d) => json!({
                    "sup_f_prime": d.sup_f_prime,
                    "sup_hilbert": d.sup_hilbert,
                    "l_f": d.l_f,
                    "tail_fraction": d.tail_fraction,
                }),
                Err(e) => json!({ "diagnostic": e.name(), "message": e.to_string() }),
            };
            let primary = json!({
                "b": b,
                "n_samples": cli.n_samples,
                "measured_sup_k": sup.sup_k,
                "argmax": [sup.argmax.re, sup.argmax.im],
                "oscillation_amplitude": amplitude,
                "boundary_norms": norms_value,
            });
            let rows = evidence
                .iter()
                .map(|q| format!("{},{}", fmt(q.h), fmt(q.quotient)))
                .collect();
            Ok(Documents {
                primary,
                tables: vec![CsvTable {
                    name: "evidence",
                    header: "h,quotient",
                    rows,
                }],
            })
        }
        ExampleCommand::Paper1Trend { bs } => {
            // Trend measurements cap the grid at r = 0.99: the series
            // truncation of a rough boundary is not trustworthy closer to
            // the circle, and the trend target is the interior behavior.
            let grid = grid_spec(cli, 0.99);
            let trend = fixtures::example1_k_trend(bs, cli.n_samples, &grid)?;
            let monotone = trend
                .windows(2)
                .all(|w| w[1].sup_k <= w[0].sup_k + 1e-3);
            let primary = json!({
                "bs": bs,
                "n_samples": cli.n_samples,
                "grid": serde_json::to_value(grid).unwrap(),
                "entries": trend.iter().map(|p| json!({"b": p.b, "sup_k": p.sup_k})).collect::<Vec<_>>(),
                "monotone_nonincreasing": monotone,
            });
            let rows = trend
                .iter()
                .map(|p| format!("{},{}", fmt(p.b), fmt(p.sup_k)))
                .collect();
            Ok(Documents {
                primary,
                tables: vec![CsvTable {
                    name: "trend",
                    header: "b,measured_sup_K",
                    rows,
                }],
            })
        }
        ExampleCommand::Paper2 => {
            let f = fixtures::example2_fixture(cli.n_samples);
            let derivs = boundary::norms(&f.boundary)?;
            let (wz0, wzbar0) = boundary_wirtinger(derivs.f_prime[0], derivs.hilbert_f_prime[0]);
            let k_at = |r: f64| {
                f.harmonic
                    .wirtinger(Complex64::new(r, 0.0))
                    .map(|d| d.k_point)
            };
            let k999 = k_at(0.999)?;
            let k9 = k_at(0.9)?;
            let degenerate = bounds::kk_bound(&derivs, cli.tolerance).err().map(|e| {
                json!({ "error": e.name(), "message": e.to_string() })
            });
            let primary = json!({
                "n_samples": cli.n_samples,
                "wz_at_phi0": wz0,
                "wzbar_at_phi0": wzbar0,
                "l_f": derivs.l_f,
                "k_at_0_9": k9,
                "k_at_0_999": k999,
                "k_blowup_ratio": k999 / k9,
                "distortion_bound": degenerate,
            });
            let rows = (0..100)
                .map(|i| {
                    let r = 0.9 + 0.001 * i as f64;
                    let k = k_at(r).map(fmt).unwrap_or_else(|_| "inf".to_string());
                    format!("{},{}", fmt(r), k)
                })
                .collect();
            Ok(Documents {
                primary,
                tables: vec![CsvTable {
                    name: "radial",
                    header: "r,K_point",
                    rows,
                }],
            })
        }
        ExampleCommand::Stretch { k } => {
            let f = fixtures::affine_stretch(*k, cli.n_samples)?;
            let derivs = boundary::norms(&f.boundary)?;
            let grid = grid_spec(cli, 0.999);
            let sup = f.harmonic.grid_sup_k(&grid)?;
            let report = bounds::qc_report(&derivs, &sup, cli.tolerance)?;
            let mut primary = serde_json::to_value(&report).unwrap();
            primary["k"] = json!(k);
            primary["exact_distortion"] = json!((1.0 + k) / (1.0 - k));
            Ok(Documents {
                primary,
                tables: Vec::new(),
            })
        }
    }
}

// ------------------------------------------------------------------- output

/// 17 significant digits: enough to round-trip every f64 exactly.
fn fmt(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        format!("{v}")
    }
}

fn flatten(value: &Value, prefix: &str, cols: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(v, &key, cols);
            }
        }
        Value::Array(items) => {
            if items.iter().all(|i| !i.is_object() && !i.is_array()) {
                let joined = items
                    .iter()
                    .map(render_scalar)
                    .collect::<Vec<_>>()
                    .join(";");
                cols.push((prefix.to_string(), joined));
            }
            // Arrays of objects travel as dedicated CSV tables instead.
        }
        other => cols.push((prefix.to_string(), render_scalar(other))),
    }
}

fn render_scalar(v: &Value) -> String {
    match v {
        Value::Number(n) => n
            .as_f64()
            .map(fmt)
            .unwrap_or_else(|| n.to_string()),
        Value::String(s) => s.clone(),
        Value::Bool(b) => b.to_string(),
        Value::Null => String::new(),
        _ => v.to_string(),
    }
}

fn table_path(base: &Option<PathBuf>, name: &str) -> PathBuf {
    match base {
        Some(p) => {
            let stem = p
                .file_stem()
                .map(|s| s.to_string_lossy().to_string())
                .unwrap_or_else(|| "qcharm".to_string());
            p.with_file_name(format!("{stem}.{name}.csv"))
        }
        None => Path::new(&format!("qcharm.{name}.csv")).to_path_buf(),
    }
}

fn emit(cli: &Cli, docs: Documents) -> Result<(), AppError> {
    let primary_text = match cli.output {
        OutputFormat::Json => {
            serde_json::to_string_pretty(&docs.primary).expect("report serialization")
        }
        OutputFormat::Csv => {
            let mut cols = Vec::new();
            flatten(&docs.primary, "", &mut cols);
            let header: Vec<&str> = cols.iter().map(|(k, _)| k.as_str()).collect();
            let row: Vec<&str> = cols.iter().map(|(_, v)| v.as_str()).collect();
            format!("{}\n{}", header.join(","), row.join(","))
        }
    };

    match &cli.out {
        Some(path) => {
            std::fs::write(path, primary_text + "\n").map_err(|e| {
                validation_error("OutputNotWritable", format!("{}: {e}", path.display()))
            })?;
        }
        None => println!("{primary_text}"),
    }

    for table in &docs.tables {
        let path = table_path(&cli.out, table.name);
        let mut text = String::with_capacity(table.rows.len() * 32 + 64);
        text.push_str(table.header);
        text.push('\n');
        for row in &table.rows {
            text.push_str(row);
            text.push('\n');
        }
        std::fs::write(&path, text).map_err(|e| {
            validation_error("OutputNotWritable", format!("{}: {e}", path.display()))
        })?;
    }
    Ok(())
}
