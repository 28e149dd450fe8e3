//! Deterministic text output: floats at 12 significant digits, unquoted
//! CSV, LF line endings. Identical inputs must produce byte-identical
//! reports, so nothing here depends on hash ordering or locale.

use metgraph::{GraphMeasure, GraphPoint, Spectrum, WeightedGraph};

/// Formats with 12 significant digits, trimming trailing zeros; plain
/// decimal notation in a sane exponent window, scientific outside it.
pub fn sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let scientific = format!("{:.*e}", 11, x);
    let (mantissa, exponent) = scientific.split_once('e').expect("e-notation");
    let exponent: i32 = exponent.parse().expect("numeric exponent");
    if (-5..12).contains(&exponent) {
        let digits = (11 - exponent).max(0) as usize;
        let mut plain = format!("{:.*}", digits, x);
        if plain.contains('.') {
            while plain.ends_with('0') {
                plain.pop();
            }
            if plain.ends_with('.') {
                plain.pop();
            }
        }
        plain
    } else {
        let mut m = mantissa.to_string();
        if m.contains('.') {
            while m.ends_with('0') {
                m.pop();
            }
            if m.ends_with('.') {
                m.pop();
            }
        }
        format!("{m}e{exponent}")
    }
}

/// A point label in original coordinates: the vertex name, or `<edge>:<t>`.
pub fn point_label(graph: &WeightedGraph, p: GraphPoint) -> String {
    match graph.point_vertex(p) {
        Some(v) => graph.vertex_name(v).to_string(),
        None => format!("{}:{}", graph.edge(p.edge).id, sig(p.t)),
    }
}

/// Measure CSV: header `kind,location,c0,...`, atom rows then density rows.
/// Atoms are ordered by canonical point, densities by edge index; zero
/// densities are omitted.
pub fn measure_csv(mu: &GraphMeasure) -> String {
    let graph = mu.graph();
    let width = (0..graph.edge_count())
        .map(|e| mu.density(e).len())
        .max()
        .unwrap_or(0)
        .max(1);
    let mut out = String::from("kind,location");
    for k in 0..width {
        out += &format!(",c{k}");
    }
    out.push('\n');
    let pad = |row: &mut String, used: usize| {
        for _ in used..width {
            row.push(',');
        }
        row.push('\n');
    };
    for &(p, mass) in mu.atoms() {
        let mut row = format!("atom,{},{}", point_label(graph, p), sig(mass));
        pad(&mut row, 1);
        out += &row;
    }
    for e in 0..graph.edge_count() {
        let coeffs = mu.density(e);
        if coeffs.is_empty() {
            continue;
        }
        let mut row = format!("density,{}", graph.edge(e).id);
        for c in coeffs {
            row += &format!(",{}", sig(*c));
        }
        pad(&mut row, coeffs.len());
        out += &row;
    }
    out
}

/// Parses the measure CSV back into a measure on `graph` (the inverse of
/// [`measure_csv`] up to float formatting).
pub fn parse_measure_csv(
    graph: &std::sync::Arc<WeightedGraph>,
    text: &str,
) -> Result<GraphMeasure, String> {
    let mut atoms = Vec::new();
    let mut densities = vec![Vec::new(); graph.edge_count()];
    for (idx, line) in text.lines().enumerate() {
        if idx == 0 || line.is_empty() {
            continue; // header
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() < 3 {
            return Err(format!("row {idx}: too few fields"));
        }
        let location = fields[1];
        match fields[0] {
            "atom" => {
                let point = if let Some((edge, t)) = location.split_once(':') {
                    let e = graph
                        .edge_index(edge)
                        .ok_or_else(|| format!("row {idx}: unknown edge `{edge}`"))?;
                    let t: f64 = t.parse().map_err(|_| format!("row {idx}: bad offset"))?;
                    graph.point(e, t).map_err(|e| e.to_string())?
                } else if let Some(v) = graph.vertex_index(location) {
                    graph.vertex_point(v)
                } else {
                    return Err(format!("row {idx}: unknown location `{location}`"));
                };
                let mass: f64 = fields[2]
                    .parse()
                    .map_err(|_| format!("row {idx}: bad mass"))?;
                atoms.push((point, mass));
            }
            "density" => {
                let e = graph
                    .edge_index(location)
                    .ok_or_else(|| format!("row {idx}: unknown edge `{location}`"))?;
                let coeffs: Result<Vec<f64>, _> = fields[2..]
                    .iter()
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<f64>())
                    .collect();
                densities[e] = coeffs.map_err(|_| format!("row {idx}: bad coefficient"))?;
            }
            other => return Err(format!("row {idx}: unknown kind `{other}`")),
        }
    }
    GraphMeasure::new(std::sync::Arc::clone(graph), atoms, densities).map_err(|e| e.to_string())
}

/// Spectrum CSV: `n,lambda` rows (1-based); with `eigenvectors`, a second
/// block of `n,point,value` rows over the fine model's vertices, labelled
/// in original coordinates.
pub fn spectrum_csv(spectrum: &Spectrum, eigenvectors: bool) -> String {
    let mut out = String::from("n,lambda\n");
    for n in 0..spectrum.len() {
        out += &format!("{},{}\n", n + 1, sig(spectrum.eigenvalue(n)));
    }
    if eigenvectors {
        let base = spectrum.base();
        let fine = spectrum.fine();
        out += "n,point,value\n";
        for n in 0..spectrum.len() {
            for (v, value) in spectrum.eigenvector(n).iter().enumerate() {
                let original = spectrum.refinement().unmap_point(fine.vertex_point(v));
                out += &format!(
                    "{},{},{}\n",
                    n + 1,
                    point_label(base, original),
                    sig(*value)
                );
            }
        }
    }
    out
}

/// A PASS/FAIL verdict line: advisory only, gated by the tolerance.
pub fn verdict(error: f64, tol: f64) -> &'static str {
    if error.abs() < tol {
        "PASS"
    } else {
        "FAIL"
    }
}
