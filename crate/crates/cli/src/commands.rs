use std::path::Path;

use dirac_soliton::verify::{run_verification, CheckStatus, VerifyReport};
use dirac_soliton::{
    band_edges, dispersion, lyapunov_numeric_sweep, lyapunov_regularized, lyapunov_trace, oracle::DEFAULT_STEPS,
    scalar::linspace, BandKind, Periodized, Regime, SolitonPotential, TabulatedPotential,
};
use serde_json::{json, Value};

use crate::config::{CommonArgs, Defaults, Format, RunConfig};
use crate::error::{CliError, Result};
use crate::output::{num, Artifact, Cell};

/// Largest accepted `|D_closed − D_oracle|` at an edge under `--verify`.
pub const EDGE_ORACLE_TOLERANCE: f64 = 1e-6;

/// Edges feeding `dispersion` are bisected at least this tightly so that the
/// end points satisfy `cos 2Ka = D/2` to 1e-12.
pub const DISPERSION_TOL: f64 = 1e-13;

/// A rendered artifact and whether a verification inside it failed.
pub struct Outcome {
    pub artifact: Artifact,
    pub config: RunConfig,
    pub failure: Option<String>,
}

fn reject_potential_file(args: &CommonArgs, command: &str) -> Result<()> {
    match args.potential_file {
        Some(_) => Err(CliError::validation(
            "--potential-file",
            format!("only `lyapunov` accepts a tabulated potential, not `{command}`"),
        )),
        None => Ok(()),
    }
}

pub fn potential(args: &CommonArgs) -> Result<Outcome> {
    reject_potential_file(args, "potential")?;
    let params = args.params()?;
    let reach = args.periods as f64 * params.half_period();
    let config = args.resolve(Defaults {
        e_min: -reach,
        e_max: reach,
        samples: 200 * args.periods + 1,
        format: Format::Csv,
    })?;
    let s1 = Periodized::new(SolitonPotential::new(config.params), config.params.half_period());
    let mut artifact = Artifact::new("potential", vec!["x", "s1"]);
    // the x range is fixed by --periods; --emin/--emax do not apply here
    for x in linspace(-reach, reach, config.samples) {
        artifact.push(vec![
            Cell::Num(x),
            Cell::Num(dirac_soliton::ScalarPotential::value(&s1, x)),
        ]);
    }
    Ok(Outcome {
        artifact,
        config,
        failure: None,
    })
}

/// Reads a two-column `x,S` CSV. A first row that does not parse as numbers is
/// taken as a header; `#` starts a comment.
pub fn read_potential_file(path: &Path) -> Result<TabulatedPotential<f64>> {
    let fail = |message: String| CliError::PotentialFile {
        path: path.to_path_buf(),
        message,
    };
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let (mut xs, mut values) = (Vec::new(), Vec::new());
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| fail(e.to_string()))?;
        if record.len() != 2 {
            return Err(fail(format!(
                "row {}: expected 2 columns, found {}",
                i + 1,
                record.len()
            )));
        }
        let parsed = (record[0].parse::<f64>(), record[1].parse::<f64>());
        match parsed {
            (Ok(x), Ok(s)) => {
                xs.push(x);
                values.push(s);
            }
            _ if i == 0 => continue,
            _ => return Err(fail(format!("row {}: not a number pair: {:?}", i + 1, record))),
        }
    }
    TabulatedPotential::new(xs, values, path.display().to_string()).map_err(|e| fail(e.to_string()))
}

pub fn lyapunov(args: &CommonArgs) -> Result<Outcome> {
    let config = args.resolve(Defaults {
        e_min: 0.0,
        e_max: 7.0,
        samples: 701,
        format: Format::Csv,
    })?;
    let p = config.params;
    let mut artifact = Artifact::new("lyapunov", vec!["e", "d", "regime"]);
    let mut rows = Vec::with_capacity(config.samples);
    match &args.potential_file {
        None => {
            let trace = lyapunov_trace(&p, config.e_min, config.e_max, config.samples)?;
            for s in trace.samples {
                artifact.push(vec![
                    Cell::Num(s.energy),
                    Cell::Num(s.value),
                    Cell::Text(s.regime.as_str().into()),
                ]);
                rows.push(
                    json!({"e": num(s.energy), "d": num(s.value), "regime": s.regime.as_str(), "limit": s.limit}),
                );
            }
        }
        Some(path) => {
            let table = read_potential_file(path)?;
            let periodic = Periodized::new(table, p.half_period());
            let energies = linspace(config.e_min, config.e_max, config.samples);
            let values = lyapunov_numeric_sweep(&periodic, p.mass(), &energies, p.half_period(), DEFAULT_STEPS)?;
            for (e, d) in energies.into_iter().zip(values) {
                let regime = Regime::classify(p.mass(), e).as_str();
                artifact.push(vec![Cell::Num(e), Cell::Num(d), Cell::Text(regime.into())]);
                rows.push(json!({"e": num(e), "d": num(d), "regime": regime, "limit": false}));
            }
        }
    }
    artifact.json_data = Some(Value::Array(rows));
    Ok(Outcome {
        artifact,
        config,
        failure: None,
    })
}

fn kind_str(kind: BandKind) -> &'static str {
    match kind {
        BandKind::Allowed => "allowed",
        BandKind::Forbidden => "forbidden",
    }
}

pub fn bands(args: &CommonArgs) -> Result<Outcome> {
    reject_potential_file(args, "bands")?;
    let config = args.resolve(Defaults {
        e_min: 0.0,
        e_max: 7.0,
        samples: 2,
        format: Format::Json,
    })?;
    let p = config.params;
    let reach = config.e_min.abs().max(config.e_max.abs());
    let table = band_edges(&p, reach, config.tol)?;
    let inside = |e: f64| e >= config.e_min && e <= config.e_max;
    let edges: Vec<f64> = table.edges.iter().copied().filter(|e| inside(*e)).collect();

    let mut artifact = Artifact::new("bands", vec!["e_lo", "e_hi", "kind"]);
    let mut bands_json = Vec::new();
    for b in &table.bands {
        let lo = b.lo.max(config.e_min);
        let hi = b.hi.min(config.e_max);
        if hi <= lo {
            continue;
        }
        let closed = b.closed && inside(b.lo) && inside(b.hi);
        artifact.push(vec![Cell::Num(lo), Cell::Num(hi), Cell::Text(kind_str(b.kind).into())]);
        bands_json.push(json!({"e_lo": num(lo), "e_hi": num(hi), "kind": kind_str(b.kind), "closed": closed}));
    }

    let mut data = json!({
        "e_min": num(config.e_min),
        "e_max": num(config.e_max),
        "tol": num(config.tol),
        "edges": edges.iter().map(|e| num(*e)).collect::<Vec<_>>(),
        "bands": bands_json,
    });
    let mut failure = None;
    if args.verify {
        let oracle = Periodized::new(SolitonPotential::new(p), p.half_period());
        let mut checks = Vec::new();
        let mut worst = 0.0f64;
        let numerics = lyapunov_numeric_sweep(&oracle, p.mass(), &edges, p.half_period(), DEFAULT_STEPS)?;
        for (&e, numeric) in edges.iter().zip(numerics) {
            let closed = lyapunov_regularized(&p, e)?.value;
            let residual = (closed - numeric).abs();
            worst = worst.max(residual);
            checks.push(
                json!({"edge": num(e), "d_closed": num(closed), "d_oracle": num(numeric), "residual": num(residual)}),
            );
        }
        let passed = worst < EDGE_ORACLE_TOLERANCE;
        data["verification"] = json!({
            "threshold": num(EDGE_ORACLE_TOLERANCE),
            "max_residual": num(worst),
            "passed": passed,
            "edges": checks,
        });
        if !passed {
            failure = Some(format!(
                "max |D_closed − D_oracle| at the edges is {worst:e}, threshold {EDGE_ORACLE_TOLERANCE:e}"
            ));
        }
    }
    artifact.json_data = Some(data);
    Ok(Outcome {
        artifact,
        config,
        failure,
    })
}

pub fn dispersion_cmd(args: &CommonArgs) -> Result<Outcome> {
    reject_potential_file(args, "dispersion")?;
    let config = args.resolve(Defaults {
        e_min: 0.0,
        e_max: 7.0,
        samples: 201,
        format: Format::Csv,
    })?;
    let p = config.params;
    let reach = config.e_min.abs().max(config.e_max.abs());
    let table = band_edges(&p, reach, config.tol.min(DISPERSION_TOL))?;
    let band = table.allowed_band(args.band_index).ok_or_else(|| {
        let count = table.bands.iter().filter(|b| b.kind == BandKind::Allowed && b.closed && b.hi > 0.0).count();
        CliError::validation(
            "--band-index",
            format!(
                "index {} out of range: {count} closed allowed bands with E > 0 below {reach} (use 0..{count} or a negative index)",
                args.band_index
            ),
        )
    })?;
    let points = dispersion(&p, (band.lo, band.hi), config.samples)?;
    let mut artifact = Artifact::new("dispersion", vec!["k", "e"]);
    for q in &points {
        artifact.push(vec![Cell::Num(q.wavenumber), Cell::Num(q.energy)]);
    }
    let rows: Vec<Value> = points
        .iter()
        .map(|q| json!({"k": num(q.wavenumber), "e": num(q.energy)}))
        .collect();
    artifact.json_data = Some(json!({
        "band_index": args.band_index,
        "e_lo": num(band.lo),
        "e_hi": num(band.hi),
        "points": rows,
    }));
    Ok(Outcome {
        artifact,
        config,
        failure: None,
    })
}

fn status_str(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "fail",
        CheckStatus::Skip => "skip",
    }
}

pub fn report_artifact(report: &VerifyReport) -> Artifact {
    let mut artifact = Artifact::new("verify", vec!["name", "measured", "threshold", "status"]);
    for c in &report.checks {
        artifact.push(vec![
            Cell::Text(c.name.clone()),
            Cell::Num(c.measured),
            Cell::Num(c.threshold),
            Cell::Text(status_str(c.status).into()),
        ]);
    }
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "description": c.description,
                "measured": num(c.measured),
                "threshold": num(c.threshold),
                "status": status_str(c.status),
            })
        })
        .collect();
    artifact.json_data = Some(json!({"passed": report.passed(), "checks": checks}));
    artifact
}

pub fn verify(args: &CommonArgs) -> Result<Outcome> {
    reject_potential_file(args, "verify")?;
    let config = args.resolve(Defaults {
        e_min: 0.0,
        e_max: 7.0,
        samples: 2,
        format: Format::Json,
    })?;
    let report = run_verification(&config.params);
    let failure = (!report.passed()).then(|| {
        let failed: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| c.status == CheckStatus::Fail)
            .map(|c| c.name.as_str())
            .collect();
        failed.join(", ")
    });
    Ok(Outcome {
        artifact: report_artifact(&report),
        config,
        failure,
    })
}
