//! The JSON-lines coloring format and the JSON verification report.
//!
//! A coloring file is one header line followed by one record per vertex:
//!
//! ```text
//! {"m":10,"n":3,"colors":20,"construction":"case1"}
//! {"vertex":[0,1,2],"color":{"subset":[0,1,2]}}
//! {"vertex":[0,1,3],"color":{"subset":[0,1,3]}}
//! ...
//! ```
//!
//! Vertices appear in colex order when written by this tool, but readers
//! accept any order; every vertex must appear exactly once.

use std::io::{BufRead, Write};

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use kneser_b::verify::VerificationReport;
use kneser_b::{ColorLabel, Coloring, KneserParams, VertexSet};

#[derive(Debug, Serialize, Deserialize)]
pub struct Header {
    pub m: u32,
    pub n: u32,
    pub colors: u64,
    pub construction: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VertexRecord {
    pub vertex: Vec<u32>,
    pub color: ColorJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColorJson {
    Subset(Vec<u32>),
    Synthetic(u64),
}

impl From<ColorLabel> for ColorJson {
    fn from(label: ColorLabel) -> Self {
        match label {
            ColorLabel::Subset(s) => ColorJson::Subset(s.elements()),
            ColorLabel::Synthetic(k) => ColorJson::Synthetic(k),
        }
    }
}

fn set_from_elements(elements: &[u32], m: u32, what: &str) -> Result<VertexSet> {
    let mut bits = VertexSet::EMPTY;
    for &e in elements {
        if e >= m {
            bail!("{what} element {e} is outside the ground set [{m}]");
        }
        if bits.contains(e) {
            bail!("{what} lists element {e} twice");
        }
        bits = bits.insert(e);
    }
    Ok(bits)
}

impl ColorJson {
    fn to_label(&self, m: u32, n: u32) -> Result<ColorLabel> {
        match self {
            ColorJson::Synthetic(k) => Ok(ColorLabel::Synthetic(*k)),
            ColorJson::Subset(elements) => {
                let s = set_from_elements(elements, m, "subset label")?;
                if s.len() != n {
                    bail!("subset label {s} must have exactly {n} elements");
                }
                Ok(ColorLabel::Subset(s))
            }
        }
    }
}

/// Writes the header and one record per vertex, in colex order.
pub fn write_coloring(
    mut w: impl Write,
    coloring: &Coloring,
    construction: &str,
) -> Result<()> {
    let p = coloring.params();
    let header = Header {
        m: p.m(),
        n: p.n(),
        colors: coloring.color_count(),
        construction: construction.to_string(),
    };
    serde_json::to_writer(&mut w, &header)?;
    w.write_all(b"\n")?;
    for (v, &label) in kneser_b::kneser::vertices(p).zip(coloring.labels()) {
        let record = VertexRecord {
            vertex: v.elements(),
            color: label.into(),
        };
        serde_json::to_writer(&mut w, &record)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

/// Parses a coloring file back into a dense assignment. Every failure
/// carries the 1-based line number.
pub fn read_coloring(r: impl BufRead) -> Result<Coloring> {
    let mut lines = r.lines().enumerate();
    let (_, first) = lines
        .next()
        .ok_or_else(|| anyhow!("line 1: missing header"))?;
    let first = first.context("line 1: read failed")?;
    let header: Header =
        serde_json::from_str(&first).context("line 1: malformed header")?;
    let params = KneserParams::new(header.m, header.n)
        .map_err(|e| anyhow!("line 1: {e}"))?;

    let count = params.vertex_count() as usize;
    let mut labels: Vec<Option<ColorLabel>> = vec![None; count];
    let mut filled = 0usize;
    for (i, line) in lines {
        let lineno = i + 1;
        let line = line.with_context(|| format!("line {lineno}: read failed"))?;
        if line.trim().is_empty() {
            continue;
        }
        let record: VertexRecord = serde_json::from_str(&line)
            .with_context(|| format!("line {lineno}: malformed vertex record"))?;
        let vertex = set_from_elements(&record.vertex, header.m, "vertex")
            .with_context(|| format!("line {lineno}"))?;
        if vertex.len() != header.n {
            bail!("line {lineno}: vertex {vertex} is not an {}-subset", header.n);
        }
        let rank = kneser_b::combinatorics::rank(vertex, header.n)
            .expect("size just checked")
            .0 as usize;
        if labels[rank].is_some() {
            bail!("line {lineno}: vertex {vertex} appears twice");
        }
        let label = record
            .color
            .to_label(header.m, header.n)
            .with_context(|| format!("line {lineno}"))?;
        labels[rank] = Some(label);
        filled += 1;
    }
    if filled != count {
        bail!(
            "incomplete assignment: {filled} of {count} vertices colored in KG({},{})",
            header.m,
            header.n
        );
    }
    let labels: Vec<ColorLabel> = labels.into_iter().map(|l| l.unwrap()).collect();
    Coloring::from_labels(params, labels).map_err(|e| anyhow!("{e}"))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ReportJson {
    pub m: u32,
    pub n: u32,
    pub proper: bool,
    pub counterexample: Option<[Vec<u32>; 2]>,
    pub color_count: u64,
    pub bound_lower: u64,
    pub bound_upper: u64,
    pub is_b: bool,
    pub classes: Vec<ClassJson>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ClassJson {
    pub label: ColorJson,
    pub size: u64,
    pub dominating_witnesses: Vec<Vec<u32>>,
}

pub fn report_json(p: KneserParams, report: &VerificationReport) -> ReportJson {
    ReportJson {
        m: p.m(),
        n: p.n(),
        proper: report.proper,
        counterexample: report
            .counterexample
            .map(|(a, b)| [a.elements(), b.elements()]),
        color_count: report.color_count,
        bound_lower: report.bound_lower,
        bound_upper: report.bound_upper,
        is_b: report.is_b,
        classes: report
            .classes
            .iter()
            .map(|c| ClassJson {
                label: c.label.into(),
                size: c.size,
                dominating_witnesses: c
                    .dominating_witnesses
                    .iter()
                    .map(|w| w.elements())
                    .collect(),
            })
            .collect(),
    }
}
