//! Text formats: edge streams, instances, reduction metadata and CSV reports.
//!
//! Stream file:
//!
//! ```text
//! GSTREAM 1 <num_vertices> <D|U>
//! E <u> <v>
//! ```
//!
//! Instance file:
//!
//! ```text
//! BHH 1 <variant> <n> <t> <p> <alpha> <case>
//! X <bits>
//! M <v1> ... <vt> <label>
//! Z <bits>
//! ```
//!
//! Vertices are 0-based decimals, rationals are written `num/den`, every line
//! ends in `\n` and lines starting with `#` are comments. The `Z` line is
//! optional on input and checked when present.

use std::fmt::Write as _;
use std::io;

use bhm_core::protocol::SweepReport;
use bhm_core::reductions::ReductionOutput;
use bhm_core::{BhhInstance, BitVector, CaseTag, GraphStream, Hypermatching, Params, Ratio, Variant};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {reason}")]
pub struct ParseError {
    /// 1-based; 0 when the input as a whole is unusable.
    pub line: usize,
    pub reason: String,
}

fn fail<T>(line: usize, reason: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        reason: reason.into(),
    })
}

/// Non-comment, non-blank lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(i, l)| (i, l.split_whitespace().collect()))
}

fn field<T: std::str::FromStr>(line: usize, token: &str, what: &str) -> Result<T, ParseError> {
    token
        .parse()
        .or_else(|_| fail(line, format!("bad {what} {token:?}")))
}

fn utf8(bytes: &[u8]) -> Result<&str, ParseError> {
    std::str::from_utf8(bytes).or_else(|e| {
        let line = 1 + bytes[..e.valid_up_to()].iter().filter(|&&b| b == b'\n').count();
        fail(line, "invalid UTF-8")
    })
}

pub fn serialize_stream(s: &GraphStream) -> String {
    let mut out = format!(
        "GSTREAM 1 {} {}\n",
        s.num_vertices(),
        if s.is_directed() { 'D' } else { 'U' }
    );
    for &(u, v) in s.edges() {
        let _ = writeln!(out, "E {u} {v}");
    }
    out
}

pub fn parse_stream(text: &str) -> Result<GraphStream, ParseError> {
    let mut lines = content_lines(text);
    let Some((hl, header)) = lines.next() else {
        return fail(1, "missing GSTREAM header");
    };
    let (num_vertices, directed) = match header.as_slice() {
        ["GSTREAM", "1", nv, kind] => {
            let directed = match *kind {
                "D" => true,
                "U" => false,
                other => return fail(hl, format!("expected D or U, got {other:?}")),
            };
            (field::<usize>(hl, nv, "vertex count")?, directed)
        }
        ["GSTREAM", version, ..] if *version != "1" => return fail(hl, format!("unsupported version {version}")),
        _ => return fail(hl, "malformed GSTREAM header"),
    };
    let mut stream = GraphStream::new(num_vertices, directed);
    for (ln, tokens) in lines {
        let ["E", u, v] = tokens.as_slice() else {
            return fail(ln, "expected `E <u> <v>`");
        };
        let (u, v) = (field::<usize>(ln, u, "vertex")?, field::<usize>(ln, v, "vertex")?);
        if u == v {
            return fail(ln, format!("self-loop at vertex {u}"));
        }
        if u >= num_vertices || v >= num_vertices {
            return fail(ln, format!("vertex out of range 0..{num_vertices}"));
        }
        stream.push(u, v).or_else(|e| fail(ln, e.to_string()))?;
    }
    Ok(stream)
}

pub fn parse_stream_bytes(bytes: &[u8]) -> Result<GraphStream, ParseError> {
    parse_stream(utf8(bytes)?)
}

fn bits_line(tag: char, bits: &BitVector) -> String {
    if bits.is_empty() {
        format!("{tag}\n")
    } else {
        format!("{tag} {bits}\n")
    }
}

pub fn serialize_instance(inst: &BhhInstance) -> String {
    let p = inst.params();
    let mut out = format!(
        "BHH 1 {} {} {} {} {} {}\n",
        inst.variant(),
        p.n,
        p.t,
        p.p,
        p.alpha,
        inst.case()
    );
    out.push_str(&bits_line('X', inst.x()));
    for (edge, label) in inst.m().edges().iter().zip(inst.w().iter()) {
        out.push('M');
        for v in edge {
            let _ = write!(out, " {v}");
        }
        let _ = writeln!(out, " {}", label as u8);
    }
    out.push_str(&bits_line('Z', inst.z()));
    out
}

fn parse_bits(line: usize, tokens: &[&str]) -> Result<BitVector, ParseError> {
    match tokens {
        [] => Ok(BitVector::zeros(0)),
        [bits] => BitVector::parse01(bits).or_else(|e| fail(line, e.to_string())),
        _ => fail(line, "expected one bit string"),
    }
}

pub fn parse_instance(text: &str) -> Result<BhhInstance, ParseError> {
    let mut lines = content_lines(text).peekable();
    let Some((hl, header)) = lines.next() else {
        return fail(1, "missing BHH header");
    };
    let ["BHH", "1", variant, n, t, p, alpha, case] = header.as_slice() else {
        return fail(hl, "malformed BHH header");
    };
    let variant: Variant = field(hl, variant, "variant")?;
    let (n, t): (usize, usize) = (field(hl, n, "n")?, field(hl, t, "t")?);
    let (p, alpha): (Ratio, Ratio) = (field(hl, p, "p")?, field(hl, alpha, "alpha")?);
    let case: CaseTag = field(hl, case, "case")?;
    let params = Params::new(n, t, p, alpha).or_else(|e| fail(hl, e.to_string()))?;

    let Some((xl, x_tokens)) = lines.next() else {
        return fail(hl + 1, "missing X line");
    };
    if x_tokens.first() != Some(&"X") {
        return fail(xl, "expected X line");
    }
    let x = parse_bits(xl, &x_tokens[1..])?;
    if x.len() != n {
        return fail(xl, format!("X has {} bits, expected {n}", x.len()));
    }

    let mut edges = Vec::new();
    let mut labels = Vec::new();
    let mut last = xl;
    let mut seen = vec![false; n];
    while let Some((ml, tokens)) = lines.next_if(|(_, tk)| tk.first() == Some(&"M")) {
        last = ml;
        if tokens.len() != t.saturating_add(2) {
            return fail(ml, format!("expected {t} vertices and a label"));
        }
        let edge = tokens[1..=t]
            .iter()
            .map(|tk| field::<usize>(ml, tk, "vertex"))
            .collect::<Result<Vec<_>, _>>()?;
        let label = match tokens[t + 1] {
            "0" => false,
            "1" => true,
            other => return fail(ml, format!("label must be 0 or 1, got {other:?}")),
        };
        for &v in &edge {
            if v >= n {
                return fail(ml, format!("vertex {v} outside universe of size {n}"));
            }
            if std::mem::replace(&mut seen[v], true) {
                return fail(ml, format!("vertex {v} repeated"));
            }
        }
        edges.push(edge);
        labels.push(label);
    }
    let (m, order) = Hypermatching::with_order(n, t, edges).or_else(|e| fail(last, e.to_string()))?;
    let w: BitVector = order.iter().map(|&i| labels[i]).collect();

    let z_line = match lines.next() {
        None => None,
        Some((zl, tokens)) if tokens.first() == Some(&"Z") => Some((zl, parse_bits(zl, &tokens[1..])?)),
        Some((ol, _)) => return fail(ol, "unexpected line"),
    };
    if let Some((extra, _)) = lines.next() {
        return fail(extra, "trailing content");
    }
    let end = z_line.as_ref().map_or(last, |(zl, _)| *zl);
    let inst = BhhInstance::new(params, variant, case, x, m, w).or_else(|e| fail(end, e.to_string()))?;
    if let Some((zl, z)) = z_line {
        if z.len() != inst.z().len() {
            return fail(zl, format!("Z has {} bits, expected {}", z.len(), inst.z().len()));
        }
        // Z is listed in file order; compare after canonical reordering
        let z_canon: BitVector = order.iter().map(|&i| z[i]).collect();
        if &z_canon != inst.z() {
            return fail(zl, "Z disagrees with labels XOR parities");
        }
    }
    Ok(inst)
}

pub fn parse_instance_bytes(bytes: &[u8]) -> Result<BhhInstance, ParseError> {
    parse_instance(utf8(bytes)?)
}

/// Sidecar written next to a reduced stream.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StreamMetadata {
    pub problem: String,
    pub formula: String,
    pub predicted_optimum: u64,
    pub flip_count: usize,
    pub alice_edges: usize,
    pub order: String,
    pub seed: Option<u64>,
    pub variant: String,
    pub case: String,
    pub n: usize,
    pub t: usize,
    pub p: String,
    pub alpha: String,
}

impl StreamMetadata {
    pub fn new(problem: &str, inst: &BhhInstance, out: &ReductionOutput, order: &str, seed: Option<u64>) -> Self {
        let p = inst.params();
        Self {
            problem: problem.to_string(),
            formula: out.predicted_by_formula.to_string(),
            predicted_optimum: out.predicted_optimum,
            flip_count: out.flip_count,
            alice_edges: out.alice_edges,
            order: order.to_string(),
            seed,
            variant: inst.variant().to_string(),
            case: inst.case().to_string(),
            n: p.n,
            t: p.t,
            p: p.p.to_string(),
            alpha: p.alpha.to_string(),
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("metadata is plain data")
    }

    pub fn from_toml(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }
}

#[derive(Serialize)]
struct SweepCsvRow {
    c: usize,
    trials: usize,
    success: f64,
    success_yes: f64,
    success_no: f64,
    analytic_bound: f64,
}

/// CSV with header `c,trials,success,success_yes,success_no,analytic_bound`.
pub fn write_sweep_csv<W: io::Write>(report: &SweepReport, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in &report.rows {
        w.serialize(SweepCsvRow {
            c: row.c,
            trials: row.trials,
            success: row.success,
            success_yes: row.success_yes,
            success_no: row.success_no,
            analytic_bound: row.analytic_bound,
        })?;
    }
    if report.rows.is_empty() {
        w.write_record(["c", "trials", "success", "success_yes", "success_no", "analytic_bound"])?;
    }
    w.flush()?;
    Ok(())
}
