//! The graph text format and the point syntax.
//!
//! Graph files are UTF-8 lines: `#` starts a comment, `vertex <name>`
//! declares a vertex, `edge <id> <u> <v> <length>` declares an edge. Names
//! match `[A-Za-z0-9_]+` and lengths are decimal literals. Declaration
//! order fixes vertex/edge indices and edge orientations.
//!
//! Points are written `<vertex>` or `<edge>:<t>` with `t` the arclength
//! offset from the edge's first endpoint.

use metgraph::{GraphError, GraphPoint, WeightedGraph};

use crate::CliError;

fn valid_name(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

/// Parses the graph text format; diagnostics carry 1-based line numbers.
pub fn parse_graph_text(text: &str) -> Result<WeightedGraph, CliError> {
    let mut vertices: Vec<(String, usize)> = Vec::new();
    let mut edges: Vec<(String, String, String, f64, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.split_once('#') {
            Some((before, _)) => before,
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "vertex" => {
                if fields.len() != 2 {
                    return Err(syntax(line_no, "expected `vertex <name>`"));
                }
                if !valid_name(fields[1]) {
                    return Err(syntax(line_no, "names match [A-Za-z0-9_]+"));
                }
                vertices.push((fields[1].to_string(), line_no));
            }
            "edge" => {
                if fields.len() != 5 {
                    return Err(syntax(line_no, "expected `edge <id> <u> <v> <length>`"));
                }
                for name in &fields[1..4] {
                    if !valid_name(name) {
                        return Err(syntax(line_no, "names match [A-Za-z0-9_]+"));
                    }
                }
                let length: f64 = fields[4]
                    .parse()
                    .map_err(|_| syntax(line_no, "length must be a decimal literal"))?;
                edges.push((
                    fields[1].to_string(),
                    fields[2].to_string(),
                    fields[3].to_string(),
                    length,
                    line_no,
                ));
            }
            other => {
                return Err(syntax(line_no, &format!("unknown directive `{other}`")));
            }
        }
    }

    let vertex_refs: Vec<&str> = vertices.iter().map(|(n, _)| n.as_str()).collect();
    let edge_refs: Vec<(&str, &str, &str, f64)> = edges
        .iter()
        .map(|(id, u, v, l, _)| (id.as_str(), u.as_str(), v.as_str(), *l))
        .collect();
    WeightedGraph::build(&vertex_refs, &edge_refs).map_err(|err| {
        let line = offending_line(&err, &vertices, &edges);
        match line {
            Some(n) => CliError::Input(format!("line {n}: {err}")),
            None => CliError::Input(err.to_string()),
        }
    })
}

fn syntax(line: usize, message: &str) -> CliError {
    CliError::Input(format!("line {line}: syntax error: {message}"))
}

fn offending_line(
    err: &GraphError,
    vertices: &[(String, usize)],
    edges: &[(String, String, String, f64, usize)],
) -> Option<usize> {
    let edge_line = |id: &str| edges.iter().find(|(e, ..)| e == id).map(|e| e.4);
    match err {
        GraphError::DuplicateName { name } => {
            // the second occurrence is the offender
            let dup_vertex = vertices
                .iter()
                .filter(|(n, _)| n == name)
                .nth(1)
                .map(|v| v.1);
            dup_vertex.or_else(|| edge_line(name))
        }
        GraphError::UnknownVertex { edge, .. }
        | GraphError::LoopEdge { edge }
        | GraphError::MultiEdge { edge }
        | GraphError::NonpositiveLength { edge }
        | GraphError::OffsetOutOfRange { edge, .. } => edge_line(edge),
        GraphError::NoVertices | GraphError::Disconnected => None,
    }
}

/// Reads and parses a graph file.
pub fn parse_graph_file(path: &std::path::Path) -> Result<WeightedGraph, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|err| CliError::Input(format!("{}: {err}", path.display())))?;
    parse_graph_text(&text)
}

/// Parses `<vertex>` or `<edge>:<t>`.
pub fn parse_point(graph: &WeightedGraph, spec: &str) -> Result<GraphPoint, CliError> {
    if let Some((edge, offset)) = spec.split_once(':') {
        let e = graph
            .edge_index(edge)
            .ok_or_else(|| CliError::Input(format!("unknown edge `{edge}`")))?;
        let t: f64 = offset
            .parse()
            .map_err(|_| CliError::Input(format!("bad offset `{offset}`")))?;
        graph
            .point(e, t)
            .map_err(|err| CliError::Input(err.to_string()))
    } else {
        let v = graph
            .vertex_index(spec)
            .ok_or_else(|| CliError::Input(format!("unknown point `{spec}`")))?;
        Ok(graph.vertex_point(v))
    }
}
