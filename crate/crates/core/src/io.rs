//! Plain-text mesh, metric and weight files, and the CSV flow trace.
//!
//! Mesh:
//! ```text
//! dim 3
//! vertices 5
//! simplex 0 1 2 3
//! ...
//! ```
//! Metric: one `r <vertex> <radius>` line per vertex. Weights: `w <i> <j> <phi>`
//! lines, unlisted edges default to 0. `#` starts a comment anywhere.

use std::fmt::Write as _;
use std::io::Write;

use crate::complex::{Dimension, Triangulation};
use crate::error::{Error, Result};
use crate::flow::FlowTrace;
use crate::geometry::{EdgeWeights, PackingMetric};

/// Content lines with comments stripped, paired with 1-based line numbers.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let content = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_usize(line: usize, token: &str) -> Result<usize> {
    token.parse().map_err(|_| {
        parse_err(
            line,
            format!("expected a non-negative integer, got `{token}`"),
        )
    })
}

fn parse_f64(line: usize, token: &str) -> Result<f64> {
    token
        .parse()
        .map_err(|_| parse_err(line, format!("expected a real number, got `{token}`")))
}

fn expect_keyword<'a>(
    it: &mut impl Iterator<Item = (usize, Vec<&'a str>)>,
    keyword: &str,
) -> Result<(usize, usize)> {
    let (line, tokens) = it
        .next()
        .ok_or_else(|| parse_err(0, format!("missing `{keyword}` record")))?;
    if tokens.len() != 2 || tokens[0] != keyword {
        return Err(parse_err(line, format!("expected `{keyword} <n>`")));
    }
    Ok((line, parse_usize(line, tokens[1])?))
}

pub fn parse_mesh(text: &str) -> Result<Triangulation> {
    let mut it = records(text);
    let (dim_line, dim) = expect_keyword(&mut it, "dim")?;
    let dimension = Dimension::from_usize(dim)
        .map_err(|_| parse_err(dim_line, format!("dimension must be 2 or 3, got {dim}")))?;
    let (_, vertex_count) = expect_keyword(&mut it, "vertices")?;
    let arity = dimension.as_usize() + 1;
    let mut simplices: Vec<Vec<usize>> = Vec::new();
    let mut seen = std::collections::HashMap::new();
    for (line, tokens) in it {
        if tokens[0] != "simplex" {
            return Err(parse_err(line, format!("unknown record `{}`", tokens[0])));
        }
        if tokens.len() != arity + 1 {
            return Err(parse_err(
                line,
                format!("expected {arity} vertex indices, got {}", tokens.len() - 1),
            ));
        }
        let s = tokens[1..]
            .iter()
            .map(|tok| parse_usize(line, tok))
            .collect::<Result<Vec<_>>>()?;
        let mut key = s.clone();
        key.sort_unstable();
        if let Some(first) = seen.insert(key, line) {
            return Err(parse_err(
                line,
                format!("duplicate simplex (first on line {first})"),
            ));
        }
        simplices.push(s);
    }
    Triangulation::new(dimension.as_usize(), vertex_count, &simplices)
}

pub fn write_mesh(t: &Triangulation) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "dim {}", t.dimension().as_usize());
    let _ = writeln!(out, "vertices {}", t.vertex_count());
    for s in t.top_simplices() {
        let idx: Vec<String> = s.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "simplex {}", idx.join(" "));
    }
    out
}

pub fn parse_metric(text: &str, vertex_count: usize) -> Result<PackingMetric> {
    let mut radii: Vec<Option<f64>> = vec![None; vertex_count];
    for (line, tokens) in records(text) {
        if tokens[0] != "r" || tokens.len() != 3 {
            return Err(parse_err(line, "expected `r <vertex> <radius>`"));
        }
        let v = parse_usize(line, tokens[1])?;
        if v >= vertex_count {
            return Err(Error::IndexOutOfRange {
                index: v,
                bound: vertex_count,
            });
        }
        let value = parse_f64(line, tokens[2])?;
        if !(value > 0.0 && value.is_finite()) {
            return Err(Error::NonPositiveRadius { vertex: v, value });
        }
        if radii[v].replace(value).is_some() {
            return Err(parse_err(line, format!("radius of vertex {v} given twice")));
        }
    }
    let radii = radii
        .into_iter()
        .enumerate()
        .map(|(v, r)| r.ok_or_else(|| parse_err(0, format!("missing radius for vertex {v}"))))
        .collect::<Result<Vec<_>>>()?;
    PackingMetric::new(radii)
}

/// Radii at 17 significant digits, which reloads bit-exactly.
pub fn write_metric(r: &PackingMetric) -> String {
    let mut out = String::new();
    for (v, x) in r.radii().iter().enumerate() {
        let _ = writeln!(out, "r {v} {}", fmt17(*x));
    }
    out
}

pub fn parse_weights(text: &str, t: &Triangulation) -> Result<EdgeWeights> {
    if t.dimension() != Dimension::Two {
        return Err(Error::WrongDimension {
            expected: 2,
            found: t.dimension().as_usize(),
        });
    }
    let mut pairs = Vec::new();
    for (line, tokens) in records(text) {
        if tokens[0] != "w" || tokens.len() != 4 {
            return Err(parse_err(line, "expected `w <i> <j> <phi>`"));
        }
        let i = parse_usize(line, tokens[1])?;
        let j = parse_usize(line, tokens[2])?;
        let phi = parse_f64(line, tokens[3])?;
        if i < t.vertex_count() && j < t.vertex_count() && !t.are_adjacent(i, j) {
            return Err(parse_err(line, format!("{i} {j} is not an edge")));
        }
        pairs.push((i, j, phi));
    }
    EdgeWeights::from_pairs(t, &pairs)
}

/// `{:.16e}`: 17 significant digits.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Trace CSV: `t,conserved,s_alpha,max_curv_dev,r_0..r_{N-1},K_0..K_{N-1}`.
pub fn write_trace_csv<W: Write>(trace: &FlowTrace, mut out: W) -> Result<()> {
    let n = trace.final_metric.len();
    let mut header = vec![
        "t".to_string(),
        "conserved".into(),
        "s_alpha".into(),
        "max_curv_dev".into(),
    ];
    header.extend((0..n).map(|i| format!("r_{i}")));
    header.extend((0..n).map(|i| format!("K_{i}")));
    writeln!(out, "{}", header.join(","))?;
    for s in &trace.samples {
        let mut row = vec![
            fmt17(s.t),
            fmt17(s.conserved),
            fmt17(s.s_alpha),
            fmt17(s.max_curvature_deviation),
        ];
        row.extend(s.radii.iter().map(|x| fmt17(*x)));
        row.extend(s.curvature.iter().map(|x| fmt17(*x)));
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}
