//! The reproducible-run layer behind the `dolbeault` binary: configuration,
//! input loading, and the four commands (analyze, cohomology, local, verify).
//!
//! Exit-code contract: 0 success, 1 mathematical/verification failure,
//! 2 input error.  Reports are deterministic: identical configuration and
//! inputs give byte-identical structured output.

use crate::cohomology::{
    ample_degree_bound, check_rr_s, check_rr_w, check_serre_duality, full_table, local_table,
    vanishing_threshold, vanishing_thresholds, Identity, LocalExt, Mode,
};
use crate::curve::{validate, CurveSpec, LineBundleSpec, ValidatedCurve};
use crate::disk::{
    cauchy_transform, cutoff_norm, monomial_in_l2, poly_bump, poly_bump_dbar,
    quadrature_membership, verify_dbar_solution, GridFunction, WeightedDisk,
};
use crate::plane::{
    from_plane_curve, Chart, PlaneAnalysis, PlaneCurveInput, PlaneError, PointHint, TriPoly,
};
use crate::puiseux::ExpandOptions;
use crate::report::Report;
use crate::verify;
use num_rational::BigRational;
use serde::Deserialize;
use serde_json::json;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use thiserror::Error;

pub const TRUNCATION_CAP_ENV: &str = "CURVE_L2_TRUNCATION_CAP";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Analyze,
    Cohomology,
    Local,
    Verify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Structured,
    Table,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub input: Option<PathBuf>,
    pub bundle_degree: Option<String>,
    pub truncation: Option<usize>,
    pub truncation_cap: Option<usize>,
    pub grid: usize,
    pub mode: Mode,
    pub format: Format,
    pub seed: u64,
    pub s_param: Option<u32>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            input: None,
            bundle_degree: None,
            truncation: None,
            truncation_cap: None,
            grid: 128,
            mode: Mode::Exact,
            format: Format::Structured,
            seed: 0,
            s_param: None,
        }
    }
}

#[derive(Debug, Error)]
pub enum RunError {
    /// Exit code 2.
    #[error("input error: {0}")]
    Input(String),
    /// Exit code 1.
    #[error("{0}")]
    Math(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Input(_) => 2,
            RunError::Math(_) => 1,
        }
    }
}

fn classify_plane(e: PlaneError) -> RunError {
    match e {
        PlaneError::Parse(_)
        | PlaneError::NotHomogeneous
        | PlaneError::NotSquarefree(_)
        | PlaneError::CommonComponent(_, _)
        | PlaneError::InfinityComponent
        | PlaneError::HintNotSingular => RunError::Input(e.to_string()),
        other => RunError::Math(other.to_string()),
    }
}

/// Parsed input file.
enum LoadedInput {
    Spec(CurveSpec),
    Plane(PlaneCurveInput, Vec<PointHint>),
    LocalParams { s: u32 },
}

#[derive(Deserialize)]
struct PlaneFile {
    plane_curve: serde_json::Value,
    #[serde(default)]
    chart: Option<String>,
    #[serde(default)]
    hints: Vec<HintFile>,
}

#[derive(Deserialize)]
struct HintFile {
    #[serde(default)]
    chart: Option<String>,
    x: String,
    y: String,
}

fn parse_chart(s: Option<&str>) -> Result<Chart, RunError> {
    match s.unwrap_or("z") {
        "x" | "X" => Ok(Chart::X),
        "y" | "Y" => Ok(Chart::Y),
        "z" | "Z" => Ok(Chart::Z),
        other => Err(RunError::Input(format!("unknown chart '{}'", other))),
    }
}

fn parse_rational(s: &str) -> Result<BigRational, RunError> {
    BigRational::from_str(s.trim())
        .map_err(|e| RunError::Input(format!("bad rational '{}': {}", s, e)))
}

fn load_input(path: &Path) -> Result<(LoadedInput, serde_json::Value), RunError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| RunError::Input(format!("cannot read {}: {}", path.display(), e)))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| RunError::Input(format!("{} is not valid JSON: {}", path.display(), e)))?;
    let echo = value.clone();
    if value.get("components").is_some() {
        let spec: CurveSpec = serde_json::from_value(value)
            .map_err(|e| RunError::Input(format!("bad curve spec: {}", e)))?;
        return Ok((LoadedInput::Spec(spec), echo));
    }
    if value.get("plane_curve").is_some() {
        let pf: PlaneFile = serde_json::from_value(value)
            .map_err(|e| RunError::Input(format!("bad plane-curve file: {}", e)))?;
        let texts: Vec<String> = match pf.plane_curve {
            serde_json::Value::String(s) => vec![s],
            serde_json::Value::Array(items) => items
                .into_iter()
                .map(|v| match v {
                    serde_json::Value::String(s) => Ok(s),
                    _ => Err(RunError::Input(
                        "plane_curve entries must be strings".into(),
                    )),
                })
                .collect::<Result<_, _>>()?,
            _ => {
                return Err(RunError::Input(
                    "plane_curve must be a string or array".into(),
                ))
            }
        };
        let factors = texts
            .iter()
            .map(|t| TriPoly::parse(t).map_err(classify_plane))
            .collect::<Result<Vec<_>, _>>()?;
        let chart = parse_chart(pf.chart.as_deref())?;
        let mut hints = Vec::new();
        for h in pf.hints {
            hints.push(PointHint {
                chart: parse_chart(h.chart.as_deref())?,
                coords: (parse_rational(&h.x)?, parse_rational(&h.y)?),
            });
        }
        return Ok((
            LoadedInput::Plane(PlaneCurveInput { factors, chart }, hints),
            echo,
        ));
    }
    if let Some(s) = value.get("s").and_then(|v| v.as_u64()) {
        if s >= 1 {
            return Ok((LoadedInput::LocalParams { s: s as u32 }, echo));
        }
    }
    Err(RunError::Input(
        "input must contain 'components' (curve spec), 'plane_curve', or 's'".into(),
    ))
}

/// Bundle degrees from the `--bundle-degree` flag: a comma list of `id=deg`
/// pairs or bare degrees assigned to components in order, or `@path` loading
/// the line bundle file format `{"degrees": {id: deg}}`.
fn parse_bundle(arg: Option<&str>, curve: &ValidatedCurve) -> Result<LineBundleSpec, RunError> {
    let Some(arg) = arg else {
        return Ok(LineBundleSpec::trivial());
    };
    let arg = arg.trim();
    if let Some(path) = arg.strip_prefix('@') {
        let text = std::fs::read_to_string(path)
            .map_err(|e| RunError::Input(format!("cannot read {}: {}", path, e)))?;
        let spec: LineBundleSpec = serde_json::from_str(&text)
            .map_err(|e| RunError::Input(format!("bad line bundle file: {}", e)))?;
        return Ok(spec);
    }
    let mut degrees = BTreeMap::new();
    for (i, tok) in arg
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .enumerate()
    {
        if let Some((id, deg)) = tok.split_once('=') {
            let d: i64 = deg
                .trim()
                .parse()
                .map_err(|_| RunError::Input(format!("bad degree '{}'", deg)))?;
            degrees.insert(id.trim().to_string(), d);
        } else {
            let d: i64 = tok
                .parse()
                .map_err(|_| RunError::Input(format!("bad degree '{}'", tok)))?;
            let comp = curve
                .components()
                .get(i)
                .ok_or_else(|| RunError::Input("more degrees than components".into()))?;
            degrees.insert(comp.id.clone(), d);
        }
    }
    Ok(LineBundleSpec { degrees })
}

fn expand_options(cfg: &RunConfig) -> ExpandOptions {
    ExpandOptions {
        truncation: cfg.truncation,
        truncation_cap: cfg.truncation_cap,
        tangent_aligned: false,
    }
}

/// Execute a run; on success returns the report and whether every identity
/// or criterion in it passed.
pub fn execute(cfg: &RunConfig) -> Result<(Report, bool), RunError> {
    match cfg.command {
        Command::Analyze => run_analyze(cfg),
        Command::Cohomology => run_cohomology(cfg),
        Command::Local => run_local(cfg),
        Command::Verify => run_verify(cfg),
    }
}

fn require_input(cfg: &RunConfig) -> Result<&Path, RunError> {
    cfg.input
        .as_deref()
        .ok_or_else(|| RunError::Input("--input PATH is required for this command".into()))
}

fn analysis_results(analysis: &PlaneAnalysis) -> serde_json::Value {
    let g: u32 = analysis.spec.components.iter().map(|c| c.genus).sum();
    let mult_prime_total: u32 = analysis
        .points
        .iter()
        .map(|p| p.invariants.mult_prime * p.conjugate_points)
        .sum();
    json!({
        "m": analysis.spec.components.len(),
        "genus": g,
        "deg_Z_minus_absZ": mult_prime_total,
        "degrees": analysis.degrees,
        "components": analysis.spec.components,
        "singular_points": analysis.points,
        "curve_spec": analysis.spec,
    })
}

fn run_analyze(cfg: &RunConfig) -> Result<(Report, bool), RunError> {
    let path = require_input(cfg)?;
    let (input, echo) = load_input(path)?;
    let mut report = Report::new("analyze");
    report.input = echo;
    match input {
        LoadedInput::Plane(plane, hints) => {
            let analysis =
                from_plane_curve(&plane, &hints, &expand_options(cfg)).map_err(classify_plane)?;
            let base = cfg.truncation.unwrap_or(0);
            for p in &analysis.points {
                if base != 0 && p.truncation_used > base {
                    report.warnings.push(format!(
                        "truncation raised to {} at point {}",
                        p.truncation_used, p.id
                    ));
                }
            }
            report.results = analysis_results(&analysis);
            Ok((report, true))
        }
        LoadedInput::Spec(spec) => {
            let curve = validate(&spec).map_err(|e| RunError::Input(e.to_string()))?;
            report.results = json!({
                "m": curve.m(),
                "genus": curve.genus(),
                "deg_Z_minus_absZ": curve.deg_z_minus_abs_z(),
                "components": curve.spec().components,
                "singular_points": curve.spec().singular_points,
            });
            Ok((report, true))
        }
        LoadedInput::LocalParams { .. } => Err(RunError::Input(
            "analyze expects a curve, not local parameters".into(),
        )),
    }
}

fn run_cohomology(cfg: &RunConfig) -> Result<(Report, bool), RunError> {
    let path = require_input(cfg)?;
    let (input, echo) = load_input(path)?;
    let mut report = Report::new("cohomology");
    report.input = echo;
    let (spec, eta): (CurveSpec, BTreeMap<String, u64>) = match input {
        LoadedInput::Spec(spec) => (spec, BTreeMap::new()),
        LoadedInput::Plane(plane, hints) => {
            let analysis =
                from_plane_curve(&plane, &hints, &expand_options(cfg)).map_err(classify_plane)?;
            // conductor exponents are known from the local analysis where the
            // points are unibranch
            let mut eta = BTreeMap::new();
            let mut id_counter = 0usize;
            for p in &analysis.points {
                for _ in 0..p.conjugate_points {
                    id_counter += 1;
                    if let Some(c) = p.invariants.conductor {
                        eta.insert(format!("p{}", id_counter), c);
                    }
                }
            }
            (analysis.spec, eta)
        }
        LoadedInput::LocalParams { .. } => {
            return Err(RunError::Input("cohomology expects a curve input".into()))
        }
    };
    let curve = validate(&spec).map_err(|e| RunError::Input(e.to_string()))?;
    let bundle = parse_bundle(cfg.bundle_degree.as_deref(), &curve)?;
    let table =
        full_table(&curve, &bundle, cfg.mode).map_err(|e| RunError::Input(e.to_string()))?;

    let mut identities: Vec<Identity> = Vec::new();
    identities.extend(check_rr_w(&table));
    identities.extend(check_rr_s(&table));
    identities.extend(
        check_serre_duality(&curve, &bundle, cfg.mode)
            .map_err(|e| RunError::Input(e.to_string()))?,
    );

    if table.has_class_dependent() {
        report.warnings.push(
            "class_dependent: some entries depend on the divisor class and are reported as intervals"
                .into(),
        );
    }

    let ample = match ample_degree_bound(&curve, &eta) {
        Ok(b) => json!(b),
        Err(e) => {
            report
                .warnings
                .push(format!("ample bound unavailable: {}", e));
            serde_json::Value::Null
        }
    };

    report.results = json!({
        "m": curve.m(),
        "genus": curve.genus(),
        "deg_L": curve.bundle_degree(&bundle).map_err(|e| RunError::Input(e.to_string()))?,
        "deg_Z_minus_absZ": curve.deg_z_minus_abs_z(),
        "mode": cfg.mode,
        "table": table.to_json(),
        "vanishing_threshold": vanishing_threshold(&curve),
        "vanishing_thresholds": vanishing_thresholds(&curve),
        "ample_degree_bound": ample,
    });
    report.identities = identities;
    let pass = report.all_pass();
    Ok((report, pass))
}

fn run_local(cfg: &RunConfig) -> Result<(Report, bool), RunError> {
    if !(64..=1024).contains(&cfg.grid) || !cfg.grid.is_power_of_two() {
        return Err(RunError::Input(format!(
            "grid size {} must be a power of two in [64, 1024]",
            cfg.grid
        )));
    }
    let s = match (cfg.s_param, cfg.input.as_deref()) {
        (Some(s), _) => s,
        (None, Some(path)) => match load_input(path)? {
            (LoadedInput::LocalParams { s }, _) => s,
            _ => {
                return Err(RunError::Input(
                    "local expects --s N or an input with {\"s\": N}".into(),
                ))
            }
        },
        (None, None) => {
            return Err(RunError::Input(
                "local expects --s N or an input with {\"s\": N}".into(),
            ))
        }
    };
    if s < 1 {
        return Err(RunError::Input("s must be >= 1".into()));
    }
    let mut report = Report::new("local");
    report.input = json!({ "s": s, "grid": cfg.grid });

    // the sixteen local groups
    let lt = local_table(s);
    let mut groups = serde_json::Map::new();
    for ((ext, p, q), v) in &lt.entries {
        let tag = match ext {
            LocalExt::W => "w",
            LocalExt::S => "s",
            LocalExt::SW => "s,w",
            LocalExt::WS => "w,s",
        };
        groups.insert(
            format!("H_{{{}}}^{{{},{}}}", tag, p, q),
            json!(v.to_string()),
        );
    }

    // membership matrix over s' in [1,6], k in [-6,6]
    let mut matrix = Vec::new();
    let mut agree = true;
    for sp in 1..=6u32 {
        let alpha = (sp - 1) as f64;
        let disk = WeightedDisk::new(alpha);
        let mut row = Vec::new();
        for k in -6..=6i64 {
            let analytic = monomial_in_l2(k, alpha);
            let quad = quadrature_membership(k, alpha, &disk)
                .map(|c| c.to_string())
                .unwrap_or_else(|e| format!("error: {}", e));
            let quad_conv = quad.starts_with("converged");
            if quad_conv != analytic {
                agree = false;
            }
            row.push(json!({
                "k": k,
                "analytic": analytic,
                "quadrature": quad,
            }));
        }
        matrix.push(json!({ "s": sp, "entries": row }));
    }

    // Cauchy solver residual at the configured grid
    let f = GridFunction::sample(cfg.grid, 0.6, poly_bump_dbar);
    let u0 = GridFunction::sample(cfg.grid, 0.6, poly_bump);
    let u = cauchy_transform(&f).map_err(|e| RunError::Math(e.to_string()))?;
    let rel_err = u
        .sub(&u0)
        .map_err(|e| RunError::Math(e.to_string()))?
        .l2_norm()
        / u0.l2_norm();
    let residual = verify_dbar_solution(&u, &f).map_err(|e| RunError::Math(e.to_string()))?;

    // cut-off values
    let mut cutoffs = Vec::new();
    for k in 1..=3u32 {
        let c = cutoff_norm(k, 4001, 0.01).map_err(|e| RunError::Math(e.to_string()))?;
        cutoffs.push(json!({
            "k": k,
            "analytic": c.analytic,
            "quadrature": c.quadrature,
            "rel_err": c.rel_err,
        }));
    }

    report.identities.push(Identity {
        name: "membership_matrix_matches_threshold".into(),
        lhs: "quadrature classification over s in [1,6], k in [-6,6]".into(),
        rhs: "analytic rule k + (s-1) > -1".into(),
        pass: agree,
    });
    report.identities.push(Identity {
        name: "cauchy_solver_error".into(),
        lhs: format!("relative L2 error {:.3e} at grid {}", rel_err, cfg.grid),
        rhs: "<= 1e-2".into(),
        pass: rel_err <= 1e-2,
    });

    report.results = json!({
        "s": s,
        "local_table": serde_json::Value::Object(groups),
        "weak_gain": s - 1,
        "membership_matrix": matrix,
        "cauchy": {
            "grid": cfg.grid,
            "relative_solution_error": rel_err,
            "dbar_residual": residual.value,
            "residual_is_absolute": residual.absolute,
        },
        "cutoff": cutoffs,
    });
    let pass = report.all_pass();
    Ok((report, pass))
}

fn run_verify(cfg: &RunConfig) -> Result<(Report, bool), RunError> {
    let mut report = Report::new("verify");
    report.input = json!({ "seed": cfg.seed });
    let results = verify::run_all(cfg.seed);
    let pass = results.iter().all(|c| c.pass);
    report.identities = results
        .iter()
        .map(|c| Identity {
            name: format!("criterion_{}", c.index),
            lhs: c.detail.clone(),
            rhs: c.name.clone(),
            pass: c.pass,
        })
        .collect();
    report.results = json!({
        "criteria": results,
        "all_pass": pass,
    });
    Ok((report, pass))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_tmp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    #[test]
    fn analyze_cuspidal_cubic_file() {
        let f = write_tmp(r#"{"plane_curve": "y^2*z - x^3"}"#);
        let mut cfg = RunConfig::new(Command::Analyze);
        cfg.input = Some(f.path().to_path_buf());
        let (report, pass) = execute(&cfg).unwrap();
        assert!(pass);
        let r = &report.results;
        assert_eq!(r["genus"], 0);
        assert_eq!(r["m"], 1);
        assert_eq!(r["deg_Z_minus_absZ"], 1);
        let pts = r["singular_points"].as_array().unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0]["invariants"]["delta"], 1);
        assert_eq!(pts[0]["invariants"]["multiplicity"], 2);
    }

    #[test]
    fn analyze_rejects_non_squarefree_with_input_error() {
        let f = write_tmp(r#"{"plane_curve": "x^2*y - 2*x*y*z + y*z^2"}"#);
        let mut cfg = RunConfig::new(Command::Analyze);
        cfg.input = Some(f.path().to_path_buf());
        match execute(&cfg) {
            Err(e @ RunError::Input(_)) => assert_eq!(e.exit_code(), 2),
            other => panic!("expected input error, got {:?}", other.map(|(_, p)| p)),
        }
    }

    #[test]
    fn cohomology_from_spec_with_bundle_flag() {
        let f = write_tmp(
            r#"{"components": [{"id": "c1", "genus": 0}],
                "singular_points": [{"id": "p1", "branches": [{"component": "c1", "s": 2}]}]}"#,
        );
        let mut cfg = RunConfig::new(Command::Cohomology);
        cfg.input = Some(f.path().to_path_buf());
        cfg.bundle_degree = Some("c1=0".into());
        let (report, pass) = execute(&cfg).unwrap();
        assert!(pass, "identities failed: {:?}", report.identities);
        assert_eq!(report.results["table"]["h_w^{0,0}"]["lo"], 2);
        assert_eq!(report.results["table"]["h_s^{1,1}"]["lo"], 2);
        assert_eq!(report.results["vanishing_threshold"], -3);
    }

    #[test]
    fn class_dependent_entries_produce_a_warning() {
        let f = write_tmp(r#"{"components": [{"id": "c1", "genus": 1}], "singular_points": []}"#);
        let mut cfg = RunConfig::new(Command::Cohomology);
        cfg.input = Some(f.path().to_path_buf());
        cfg.bundle_degree = Some("c1=0".into());
        cfg.mode = Mode::Exact;
        let (report, _) = execute(&cfg).unwrap();
        assert!(report
            .warnings
            .iter()
            .any(|w| w.contains("class_dependent")));
        assert_eq!(report.results["table"]["h_w^{0,0}"]["exact"], false);
        // generic mode collapses the interval and the warning disappears
        cfg.mode = Mode::Generic;
        let (report, _) = execute(&cfg).unwrap();
        assert!(report.warnings.is_empty());
    }

    #[test]
    fn reports_are_byte_identical() {
        let f = write_tmp(r#"{"plane_curve": "y^2*z - x^3 - x^2*z"}"#);
        let mut cfg = RunConfig::new(Command::Analyze);
        cfg.input = Some(f.path().to_path_buf());
        let (r1, _) = execute(&cfg).unwrap();
        let (r2, _) = execute(&cfg).unwrap();
        assert_eq!(r1.to_structured(), r2.to_structured());
    }

    #[test]
    fn local_requires_power_of_two_grid() {
        let mut cfg = RunConfig::new(Command::Local);
        cfg.s_param = Some(2);
        cfg.grid = 100;
        assert!(matches!(execute(&cfg), Err(RunError::Input(_))));
    }

    #[test]
    fn bundle_file_roundtrip() {
        let spec =
            write_tmp(r#"{"components": [{"id": "c1", "genus": 1}], "singular_points": []}"#);
        let bundle = write_tmp(r#"{"degrees": {"c1": 5}}"#);
        let mut cfg = RunConfig::new(Command::Cohomology);
        cfg.input = Some(spec.path().to_path_buf());
        cfg.bundle_degree = Some(format!("@{}", bundle.path().display()));
        cfg.mode = Mode::Exact;
        let (report, pass) = execute(&cfg).unwrap();
        assert!(pass);
        assert_eq!(report.results["deg_L"], 5);
        // deg 5 > 2g-2 = 0: h_s^{0,0} = 1 - 1 + 5 = 5
        assert_eq!(report.results["table"]["h_s^{0,0}"]["lo"], 5);
    }
}
