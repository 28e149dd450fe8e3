//! Report builders for the subcommands. Each returns the exact stdout text
//! (LF line endings); exit-code policy lives in [`crate::CliError`].

use std::sync::Arc;

use metgraph::canonical::{canonical_measure, cycle_rank_sum, foster_sum, tau};
use metgraph::potential::{effective_resistance, j_function, solve_current, PotentialError};
use metgraph::spectral::{compute_spectrum, verify_min_identity, SpectralError};
use metgraph::WeightedGraph;

use crate::format::{measure_csv, sig, spectrum_csv, verdict};
use crate::parse::parse_point;
use crate::CliError;

/// Scalar reports come in two shapes: plain lines, or `key,value` CSV.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Plain,
    Csv,
}

fn lines(format: OutputFormat, rows: &[(&str, String)]) -> String {
    let mut out = String::new();
    for (key, value) in rows {
        match format {
            OutputFormat::Plain => out += &format!("{key} {value}\n"),
            OutputFormat::Csv => out += &format!("{key},{value}\n"),
        }
    }
    out
}

/// `validate`: structural invariants report.
pub fn validate(graph: &Arc<WeightedGraph>, format: OutputFormat) -> String {
    let bridges = (0..graph.edge_count())
        .filter(|&e| graph.is_bridge(e))
        .count();
    let valences: Vec<usize> = (0..graph.vertex_count())
        .map(|v| graph.valence(v))
        .collect();
    lines(
        format,
        &[
            ("vertices", graph.vertex_count().to_string()),
            ("edges", graph.edge_count().to_string()),
            ("total_length", sig(graph.total_length())),
            ("cycle_rank", graph.cycle_rank().to_string()),
            ("bridges", bridges.to_string()),
            (
                "valence_min",
                valences.iter().min().copied().unwrap_or(0).to_string(),
            ),
            (
                "valence_max",
                valences.iter().max().copied().unwrap_or(0).to_string(),
            ),
            ("status", "OK".to_string()),
        ],
    )
}

/// `resistance --from --to`: the effective resistance as a bare number.
pub fn resistance(
    graph: &Arc<WeightedGraph>,
    from: &str,
    to: &str,
    format: OutputFormat,
) -> Result<String, CliError> {
    let x = parse_point(graph, from)?;
    let y = parse_point(graph, to)?;
    let r = effective_resistance(graph, x, y);
    Ok(match format {
        OutputFormat::Plain => format!("{}\n", sig(r)),
        OutputFormat::Csv => format!("resistance,{}\n", sig(r)),
    })
}

/// `jfun --y --z [--at]`: one value, or the potential at every vertex.
pub fn jfun(
    graph: &Arc<WeightedGraph>,
    y: &str,
    z: &str,
    at: Option<&str>,
    format: OutputFormat,
) -> Result<String, CliError> {
    let yp = parse_point(graph, y)?;
    let zp = parse_point(graph, z)?;
    let j = j_function(graph, yp, zp);
    match at {
        Some(spec) => {
            let x = parse_point(graph, spec)?;
            Ok(match format {
                OutputFormat::Plain => format!("{}\n", sig(j.value(x))),
                OutputFormat::Csv => format!("j,{}\n", sig(j.value(x))),
            })
        }
        None => {
            let header = match format {
                OutputFormat::Plain => String::new(),
                OutputFormat::Csv => "point,value\n".to_string(),
            };
            let mut out = header;
            for v in 0..graph.vertex_count() {
                let value = sig(j.value(graph.vertex_point(v)));
                match format {
                    OutputFormat::Plain => out += &format!("{} {value}\n", graph.vertex_name(v)),
                    OutputFormat::Csv => out += &format!("{},{value}\n", graph.vertex_name(v)),
                }
            }
            Ok(out)
        }
    }
}

/// `current --source --sink --amps --ground`: per-edge currents on the
/// refined model, in stored-orientation sign convention.
pub fn current(
    graph: &Arc<WeightedGraph>,
    source: &str,
    sink: &str,
    amps: f64,
    ground: &str,
    format: OutputFormat,
) -> Result<String, CliError> {
    if amps <= 0.0 || !amps.is_finite() {
        return Err(CliError::Input(format!(
            "--amps must be positive, got {amps}"
        )));
    }
    let a = parse_point(graph, source)?;
    let b = parse_point(graph, sink)?;
    let g = parse_point(graph, ground)?;
    let sol = solve_current(graph, a, b, amps, g).map_err(|err| match err {
        PotentialError::SourceEqualsSink => CliError::Input(err.to_string()),
        PotentialError::MassNotZero { .. } => CliError::Internal(err.to_string()),
    })?;
    let fine = sol.fine().clone();
    let mut out = match format {
        OutputFormat::Plain => String::new(),
        OutputFormat::Csv => "edge,current\n".to_string(),
    };
    for e in 0..fine.edge_count() {
        let id = &fine.edge(e).id;
        let i = sig(sol.current_on_edge(e));
        match format {
            OutputFormat::Plain => out += &format!("{id} {i}\n"),
            OutputFormat::Csv => out += &format!("{id},{i}\n"),
        }
    }
    Ok(out)
}

/// `canonical`: the canonical measure in measure CSV form.
pub fn canonical(graph: &Arc<WeightedGraph>) -> String {
    measure_csv(&canonical_measure(graph))
}

/// `foster`: the Foster sum against `#V − 1`, with an advisory verdict.
pub fn foster(graph: &Arc<WeightedGraph>, tol: f64, format: OutputFormat) -> String {
    let sum = foster_sum(graph);
    let expected = (graph.vertex_count() - 1) as f64;
    lines(
        format,
        &[
            ("sum", sig(sum)),
            ("expected", sig(expected)),
            ("verdict", verdict(sum - expected, tol).to_string()),
        ],
    )
}

/// `cyclerank`: the density-mass sum against `#E − #V + 1`.
pub fn cyclerank(graph: &Arc<WeightedGraph>, tol: f64, format: OutputFormat) -> String {
    let sum = cycle_rank_sum(graph);
    let expected = graph.cycle_rank() as f64;
    lines(
        format,
        &[
            ("sum", sig(sum)),
            ("expected", sig(expected)),
            ("verdict", verdict(sum - expected, tol).to_string()),
        ],
    )
}

/// `tau [--at]`: the tau invariant, anchored at a point (default: the
/// first vertex; the result is anchor-independent).
pub fn tau_report(
    graph: &Arc<WeightedGraph>,
    at: Option<&str>,
    format: OutputFormat,
) -> Result<String, CliError> {
    let anchor = match at {
        Some(spec) => parse_point(graph, spec)?,
        None => graph.vertex_point(0),
    };
    let value = tau(graph, anchor);
    Ok(match format {
        OutputFormat::Plain => format!("{}\n", sig(value)),
        OutputFormat::Csv => format!("tau,{}\n", sig(value)),
    })
}

/// `spectrum --z [--terms] [--step] [--eigenvectors]`: spectrum CSV.
pub fn spectrum(
    graph: &Arc<WeightedGraph>,
    z: &str,
    terms: usize,
    step: f64,
    eigenvectors: bool,
) -> Result<String, CliError> {
    if step <= 0.0 || !step.is_finite() {
        return Err(CliError::Input(format!(
            "--step must be positive, got {step}"
        )));
    }
    if terms == 0 {
        return Err(CliError::Input("--terms must be at least 1".to_string()));
    }
    let zp = parse_point(graph, z)?;
    let spec = compute_spectrum(graph, zp, step, terms).map_err(|err| match err {
        SpectralError::MeshTooCoarse { .. } => CliError::Input(err.to_string()),
    })?;
    Ok(spectrum_csv(&spec, eigenvectors))
}

/// `identity --x --y [--terms]`: the analytic min-identity partial sum.
pub fn identity(
    x: f64,
    y: f64,
    terms: usize,
    tol: f64,
    format: OutputFormat,
) -> Result<String, CliError> {
    for (flag, v) in [("--x", x), ("--y", y)] {
        if !(0.0..=1.0).contains(&v) {
            return Err(CliError::Input(format!(
                "{flag} must lie in [0, 1], got {v}"
            )));
        }
    }
    if terms == 0 {
        return Err(CliError::Input("--terms must be at least 1".to_string()));
    }
    let (sum, error) = verify_min_identity(x, y, terms);
    Ok(lines(
        format,
        &[
            ("sum", sig(sum)),
            ("expected", sig(x.min(y))),
            ("abs_error", sig(error)),
            ("verdict", verdict(error, tol).to_string()),
        ],
    ))
}
