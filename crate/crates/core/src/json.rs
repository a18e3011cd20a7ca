//! Versioned JSON documents for command-line output.
//!
//! Multisegments appear either in notation syntax or, where the structure
//! matters, as `[{line, a, b, mult}]`.

use serde::{Deserialize, Serialize};

use crate::derive::{DerivativeRewrite, EtaVector, RewriteRule};
use crate::error::{Error, Result};
use crate::matching::{MatchingInstance, MatchingWitness, Side};
use crate::mpi::{ClosureVerdict, MembershipReport};
use crate::multiseg::Multisegment;
use crate::notation::{print_multisegment, print_segment};
use crate::oracle::{Report, Window};
use crate::segment::{LineTable, Segment};
use crate::zposet::PosetGraph;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryDto {
    pub line: String,
    pub a: i64,
    pub b: i64,
    pub mult: usize,
}

pub fn multisegment_entries(m: &Multisegment, table: &LineTable) -> Vec<EntryDto> {
    m.distinct()
        .into_iter()
        .map(|(s, mult)| EntryDto { line: table.line(s.line()).name.clone(), a: s.a(), b: s.b(), mult })
        .collect()
}

pub fn entries_to_multisegment(entries: &[EntryDto], table: &LineTable) -> Result<Multisegment> {
    let mut m = Multisegment::new();
    for e in entries {
        let line = table.lookup(&e.line).ok_or_else(|| Error::UnknownLine(e.line.clone()))?;
        let s = Segment::new(line, e.a, e.b)?;
        for _ in 0..e.mult {
            m.insert(s);
        }
    }
    Ok(m)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideDto {
    pub side: Side,
    pub holds: bool,
    /// Canonical labeling of `m` the indices refer to.
    pub labels: Vec<String>,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub witness: Option<MatchingWitness>,
}

impl SideDto {
    pub fn new(inst: &MatchingInstance, witness: Option<MatchingWitness>, table: &LineTable) -> Self {
        SideDto {
            side: inst.side,
            holds: witness.is_some(),
            labels: inst.labels.iter().map(|s| print_segment(s, table)).collect(),
            left: inst.left.clone(),
            right: inst.right.clone(),
            witness,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckDoc {
    pub schema_version: u32,
    pub m: String,
    pub segment: String,
    pub lc: SideDto,
    pub rc: SideDto,
    pub irreducible: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictDto {
    pub segment: String,
    pub lc: bool,
    pub rc: bool,
    pub in_m: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipDoc {
    pub schema_version: u32,
    pub m: String,
    pub n: String,
    pub verdicts: Vec<VerdictDto>,
    pub overall: bool,
}

impl MembershipDoc {
    pub fn new(m: &Multisegment, r: &MembershipReport, table: &LineTable) -> Self {
        MembershipDoc {
            schema_version: SCHEMA_VERSION,
            m: print_multisegment(m, table),
            n: print_multisegment(&r.n, table),
            verdicts: r
                .verdicts
                .iter()
                .map(|v| VerdictDto { segment: print_segment(&v.segment, table), lc: v.lc, rc: v.rc, in_m: v.in_m })
                .collect(),
            overall: r.overall,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureDto {
    pub segment: String,
    pub side: Side,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleDto {
    pub node: String,
    pub labels: Vec<String>,
    pub failures: Vec<FailureDto>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureDoc {
    pub schema_version: u32,
    pub m: String,
    pub n: String,
    pub holds: bool,
    pub checked_nodes: usize,
    pub counterexample: Option<CounterexampleDto>,
}

impl ClosureDoc {
    pub fn new(m: &Multisegment, n: &Multisegment, v: &ClosureVerdict, table: &LineTable) -> Self {
        let counterexample = v.counterexample.as_ref().map(|cx| CounterexampleDto {
            node: print_multisegment(&cx.node, table),
            labels: m.canonical_labeling().iter().map(|s| print_segment(s, table)).collect(),
            failures: cx
                .failures
                .iter()
                .map(|f| FailureDto {
                    segment: print_segment(&f.segment, table),
                    side: f.side,
                    left: f.left.clone(),
                    right: f.right.clone(),
                })
                .collect(),
        });
        ClosureDoc {
            schema_version: SCHEMA_VERSION,
            m: print_multisegment(m, table),
            n: print_multisegment(n, table),
            holds: v.holds,
            checked_nodes: v.checked_nodes,
            counterexample,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDto {
    pub from: usize,
    pub to: usize,
    pub pair: [String; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub schema_version: u32,
    pub nodes: Vec<String>,
    pub edges: Vec<EdgeDto>,
}

impl GraphDoc {
    pub fn new(g: &PosetGraph, table: &LineTable) -> Self {
        GraphDoc {
            schema_version: SCHEMA_VERSION,
            nodes: g.nodes().iter().map(|n| print_multisegment(n, table)).collect(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeDto {
                    from: e.from,
                    to: e.to,
                    pair: [print_segment(&e.pair.0, table), print_segment(&e.pair.1, table)],
                })
                .collect(),
        }
    }
}

/// Graphviz rendering of a lower set, edges labeled by the consumed pair.
pub fn graph_dot(g: &PosetGraph, table: &LineTable) -> String {
    let mut out = String::from("digraph lower_set {\n");
    for (k, n) in g.nodes().iter().enumerate() {
        out.push_str(&format!("  n{k} [label=\"{}\"];\n", print_multisegment(n, table)));
    }
    for e in g.edges() {
        out.push_str(&format!(
            "  n{} -> n{} [label=\"{} {}\"];\n",
            e.from,
            e.to,
            print_segment(&e.pair.0, table),
            print_segment(&e.pair.1, table)
        ));
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewriteDoc {
    pub schema_version: u32,
    pub rule: RewriteRule,
    pub input: String,
    pub peeled: String,
    pub output: String,
    pub transcript: Vec<String>,
}

impl RewriteDoc {
    pub fn new(r: &DerivativeRewrite, table: &LineTable) -> Self {
        RewriteDoc {
            schema_version: SCHEMA_VERSION,
            rule: r.rule,
            input: print_multisegment(&r.input, table),
            peeled: print_multisegment(&r.peeled, table),
            output: print_multisegment(&r.output, table),
            transcript: r.transcript.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComposeDoc {
    pub schema_version: u32,
    pub holds: bool,
    pub orders_checked: usize,
    pub mismatch: Option<(usize, usize)>,
    pub steps: Vec<RewriteDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacquetDoc {
    pub schema_version: u32,
    pub segment: String,
    pub level: i64,
    pub parts: [Option<String>; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaEntryDto {
    pub segment: String,
    pub value: usize,
}

pub fn eta_entries(e: &EtaVector, table: &LineTable) -> Vec<EtaEntryDto> {
    e.entries.iter().map(|(s, v)| EtaEntryDto { segment: print_segment(s, table), value: *v }).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MxDoc {
    pub schema_version: u32,
    pub n: String,
    pub segment: String,
    /// `"saturated"` or `"literal"`.
    pub mode: String,
    pub mx: String,
    pub eta: Vec<EtaEntryDto>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParseDoc {
    pub schema_version: u32,
    pub canonical: String,
    pub entries: Vec<EntryDto>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerateDoc {
    pub schema_version: u32,
    pub window: Window,
    pub segments: usize,
    pub count: usize,
    pub multisegments: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub schema_version: u32,
    #[serde(flatten)]
    pub report: Report,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorDoc {
    pub schema_version: u32,
    pub error: String,
    pub position: Option<usize>,
    pub exit_code: i32,
}
