//! Text format for constraint networks.
//!
//! ```text
//! # comment
//! cdc 3
//! 1 2 011/001/000
//! 2 1 000/110/110
//! 1 3 110/010/000|000/100/000
//! ...
//! ```
//!
//! The header names the model (`cdc` or `cdc-d`) and the variable count.
//! Each body line constrains one ordered pair, 1-based; `|` separates
//! disjunctive candidates. Matrices are nine bits, row-major from the
//! north-west tile, with optional `/` separators. Every ordered pair may
//! appear at most once, and diagonal constraints are rejected.

use std::fmt;

use crate::matrix::{CdcBasicNetwork, CdcDisjunctiveNetwork, DirectionMatrix, Model};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based line number; 0 for file-level errors.
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line > 0 {
            write!(f, "line {}: {}", self.line, self.message)
        } else {
            write!(f, "{}", self.message)
        }
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

/// A parsed network file, not yet committed to basic or disjunctive form.
#[derive(Debug, Clone)]
pub struct NetworkFile {
    pub model: Model,
    pub n: usize,
    /// `(line, i, j, candidates)` with 0-based indices.
    entries: Vec<(usize, usize, usize, Vec<DirectionMatrix>)>,
}

pub fn parse_network(text: &str) -> Result<NetworkFile, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(idx, line)| (idx + 1, line.split('#').next().unwrap_or("").trim()))
        .filter(|(_, line)| !line.is_empty());

    let (header_no, header) = lines.next().ok_or_else(|| err(0, "empty network file"))?;
    let mut parts = header.split_whitespace();
    let model: Model = parts
        .next()
        .ok_or_else(|| err(header_no, "missing model tag"))?
        .parse()
        .map_err(|e| err(header_no, e))?;
    let n: usize = parts
        .next()
        .ok_or_else(|| err(header_no, "missing variable count"))?
        .parse()
        .map_err(|_| err(header_no, "variable count must be a positive integer"))?;
    if n == 0 {
        return Err(err(header_no, "variable count must be at least 1"));
    }
    if let Some(extra) = parts.next() {
        return Err(err(header_no, format!("unexpected token {extra:?} in header")));
    }

    let mut entries = Vec::new();
    let mut seen = vec![false; n * n];
    for (line_no, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(err(line_no, "expected `i j MATRIX[|MATRIX...]`"));
        }
        let parse_index = |s: &str| -> Result<usize, ParseError> {
            let v: usize = s
                .parse()
                .map_err(|_| err(line_no, format!("invalid variable index {s:?}")))?;
            if v == 0 || v > n {
                return Err(err(line_no, format!("variable index {v} out of range 1..={n}")));
            }
            Ok(v - 1)
        };
        let i = parse_index(fields[0])?;
        let j = parse_index(fields[1])?;
        if i == j {
            return Err(err(line_no, "diagonal constraints are implicit and not allowed"));
        }
        if seen[i * n + j] {
            return Err(err(line_no, format!("duplicate constraint for pair {} {}", i + 1, j + 1)));
        }
        seen[i * n + j] = true;
        let mut candidates = Vec::new();
        for token in fields[2].split('|') {
            let m: DirectionMatrix = token.parse().map_err(|e| err(line_no, e))?;
            if !m.is_valid(model) {
                return Err(err(
                    line_no,
                    format!("matrix {m} is not a valid basic relation of model {model}"),
                ));
            }
            candidates.push(m);
        }
        candidates.sort();
        candidates.dedup();
        entries.push((line_no, i, j, candidates));
    }
    Ok(NetworkFile { model, n, entries })
}

impl NetworkFile {
    /// Requires every ordered pair to carry exactly one matrix.
    pub fn to_basic(&self) -> Result<CdcBasicNetwork, ParseError> {
        let mut net = CdcBasicNetwork::new(self.n);
        for &(line_no, i, j, ref candidates) in &self.entries {
            if candidates.len() != 1 {
                return Err(err(
                    line_no,
                    format!("pair {} {} is disjunctive; a basic network is required", i + 1, j + 1),
                ));
            }
            net.set(i, j, candidates[0]);
        }
        if !net.is_complete() {
            for i in 0..self.n {
                for j in 0..self.n {
                    if i != j && !self.entries.iter().any(|&(_, a, b, _)| (a, b) == (i, j)) {
                        return Err(err(0, format!("missing constraint for pair {} {}", i + 1, j + 1)));
                    }
                }
            }
        }
        Ok(net)
    }

    /// Missing pairs default to the model's full basic relation set.
    pub fn to_disjunctive(&self) -> CdcDisjunctiveNetwork {
        let mut net = CdcDisjunctiveNetwork::new(self.n, self.model);
        for &(_, i, j, ref candidates) in &self.entries {
            net.set_candidates(i, j, candidates.clone());
        }
        net
    }
}

/// Renders a basic network in the file format, pairs in lexicographic order.
pub fn print_basic(net: &CdcBasicNetwork, model: Model) -> String {
    let n = net.var_count();
    let mut out = format!("{model} {n}\n");
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push_str(&format!("{} {} {}\n", i + 1, j + 1, net.relation(i, j)));
            }
        }
    }
    out
}
