//! `zelcalc`: command-line access to the multisegment calculator.
//!
//! Exit codes: 0 computed and the property holds, 1 verdict negative,
//! 2 usage or parse error, 3 budget exceeded.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use zelcalc::derive::{
    compose_check, derivative_nested_zelevinsky, derivative_same_end_steinberg, eta_generic, jacquet_relative_level,
    jacquet_segment, mx_generic, mxpt_b_generic, vanishing_predicate, JacquetKind, NestedPeel,
};
use zelcalc::json::{
    eta_entries, graph_dot, multisegment_entries, CheckDoc, ClosureDoc, ComposeDoc, EnumerateDoc, ErrorDoc, GraphDoc,
    JacquetDoc, MembershipDoc, MxDoc, ParseDoc, ReportDoc, RewriteDoc, SideDto, SCHEMA_VERSION,
};
use zelcalc::matching::{Matcher, MatchingInstance};
use zelcalc::mpi::{closure_check_with, in_m};
use zelcalc::notation::{
    parse_document, parse_line_table, parse_multisegment, parse_segment, print_multisegment, print_segment,
    NotationError,
};
use zelcalc::oracle::{
    enumerate_multisegments_with_budget, enumerate_segments, run_suite, Report, RunOptions, SuiteId, Window,
    DEFAULT_ENUM_BUDGET,
};
use zelcalc::zposet::{lower_set_with_budget, DEFAULT_NODE_BUDGET};
use zelcalc::{CuspidalPoint, Error, LineTable, Multisegment, Segment, Side};

#[derive(Parser)]
#[command(
    name = "zelcalc",
    version,
    about = "Multisegment calculator: matching criteria, Zelevinsky order, derivatives"
)]
struct Cli {
    /// Emit versioned JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Instance window, e.g. `0..4,segs=3,len=5`.
    #[arg(long, global = true, env = "ZELCALC_WINDOW", value_parser = parse_window)]
    window: Option<Window>,

    /// Node budget for lower sets and enumeration.
    #[arg(long, global = true)]
    budget: Option<usize>,

    /// Declare a cuspidal line: `NAME [dim=K] [dual=NAME2]`. Repeatable.
    #[arg(long = "line", global = true, value_name = "DECL")]
    lines: Vec<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// LC, RC and irreducibility of ⟨m⟩ × ⟨D⟩, with witnesses.
    Check { m: String, d: String },
    /// Whether every segment of N gives an irreducible product with ⟨M⟩.
    Mpi { m: String, n: String },
    /// Whether the whole lower set of N stays in M for ⟨M⟩.
    Closure { m: String, n: String },
    /// The lower set of M under the Zelevinsky order.
    Poset {
        m: String,
        /// Graphviz output.
        #[arg(long)]
        dot: bool,
    },
    /// Multisegment rewrites for big derivatives.
    #[command(subcommand)]
    Derive(DeriveCommand),
    /// The mx multisegment of a generic N with respect to D.
    Mx {
        n: String,
        d: String,
        /// Shorthand for `--mode literal`.
        #[arg(long, conflicts_with = "mode")]
        unfiltered: bool,
        #[arg(long, value_enum, default_value_t = MxMode::Saturated)]
        mode: MxMode,
    },
    /// List every multisegment of the window.
    Enumerate {
        /// Print only the count.
        #[arg(long)]
        count: bool,
    },
    /// Run an exhaustive property suite over the window (`all` runs every suite).
    Selftest {
        suite: String,
        /// Use a matcher that accepts every pair (suites should then fail).
        #[arg(long)]
        corrupt: bool,
    },
    /// Parse a multisegment (or a document with `@line` preamble) and print it canonically.
    Parse { text: String },
}

#[derive(Subcommand)]
enum DeriveCommand {
    /// Jacquet factorization of a segment at a level.
    Jacquet {
        #[arg(value_enum)]
        kind: KindArg,
        d: String,
        #[arg(allow_negative_numbers = true)]
        level: i64,
        /// Read LEVEL in absolute units (multiples of the line dimension).
        #[arg(long)]
        absolute: bool,
    },
    /// Peel D from P when every segment of P ends at b(D).
    SameEnd { p: String, d: String },
    /// Peel from M when all segments lie in D ∈ M, or when all are equal.
    Nested {
        m: String,
        #[arg(long, conflicts_with = "peel", required_unless_present = "peel")]
        segment: Option<String>,
        #[arg(long)]
        peel: Option<String>,
    },
    /// Check a chain of peels against peeling their sum, in all permitted orders.
    Compose {
        m: String,
        #[arg(required = true)]
        steps: Vec<String>,
    },
    /// a(D) ≤ a(D2) ≤ b(D) ≤ b(D2).
    Vanishing { d: String, d2: String },
    /// mx at the longest segment of N ending at a point.
    Mxpt {
        n: String,
        #[arg(long, allow_negative_numbers = true)]
        end: i64,
        #[arg(long = "on", value_name = "LINE")]
        on_line: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Zelevinsky,
    Steinberg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MxMode {
    /// Keep only D-saturated entries.
    Saturated,
    /// The unfiltered formula.
    Literal,
}

fn parse_window(s: &str) -> Result<Window, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Parse { what: String, err: NotationError },
    Usage(String),
    Budget(usize),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Budget(_) => 3,
            _ => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Parse { what, err } => format!("cannot parse {what}: {err}"),
            Failure::Usage(msg) => msg.clone(),
            Failure::Budget(b) => format!("budget of {b} exceeded"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { budget } => Failure::Budget(budget),
            other => Failure::Usage(other.to_string()),
        }
    }
}

/// `true` when the property holds.
type Outcome = Result<bool, Failure>;

struct App {
    json: bool,
    table: LineTable,
    window: Window,
    node_budget: usize,
    enum_budget: u64,
}

impl App {
    fn multi(&self, what: &str, text: &str) -> Result<Multisegment, Failure> {
        parse_multisegment(text, &self.table).map_err(|err| Failure::Parse { what: format!("{what} `{text}`"), err })
    }

    fn segment(&self, what: &str, text: &str) -> Result<Segment, Failure> {
        parse_segment(text, &self.table).map_err(|err| Failure::Parse { what: format!("{what} `{text}`"), err })
    }

    fn show(&self, m: &Multisegment) -> String {
        print_multisegment(m, &self.table)
    }

    fn seg(&self, s: &Segment) -> String {
        print_segment(s, &self.table)
    }

    fn emit<T: Serialize>(&self, doc: &T, text: impl FnOnce() -> String) {
        if self.json {
            println!("{}", serde_json::to_string_pretty(doc).expect("documents serialize"));
        } else {
            print!("{}", text());
        }
    }

    fn run(&self, cmd: Command) -> Outcome {
        match cmd {
            Command::Check { m, d } => self.check(&m, &d),
            Command::Mpi { m, n } => self.mpi(&m, &n),
            Command::Closure { m, n } => self.closure(&m, &n),
            Command::Poset { m, dot } => self.poset(&m, dot),
            Command::Derive(d) => self.derive(d),
            Command::Mx { n, d, unfiltered, mode } => self.mx(&n, &d, if unfiltered { MxMode::Literal } else { mode }),
            Command::Enumerate { count } => self.enumerate(count),
            Command::Selftest { suite, corrupt } => self.selftest(&suite, corrupt),
            Command::Parse { text } => self.parse(&text),
        }
    }

    fn check(&self, m: &str, d: &str) -> Outcome {
        let (m, d) = (self.multi("M", m)?, self.segment("D", d)?);
        let matcher = Matcher::default();
        let side = |side| {
            let inst = MatchingInstance::new(side, &m, d);
            let w = matcher.decide(side, &m, &d);
            SideDto::new(&inst, w, &self.table)
        };
        let (lc, rc) = (side(Side::Lc), side(Side::Rc));
        let irreducible = lc.holds && rc.holds;
        let doc =
            CheckDoc { schema_version: SCHEMA_VERSION, m: self.show(&m), segment: self.seg(&d), lc, rc, irreducible };
        self.emit(&doc, || {
            let labels = doc.lc.labels.iter().enumerate().map(|(i, s)| format!("{i}:{s}")).collect::<Vec<_>>();
            let mut out = format!("m = {}\nD = {}\nlabels: {}\n", doc.m, doc.segment, labels.join(" "));
            for s in [&doc.lc, &doc.rc] {
                let (l, r) = if s.side == Side::Lc { ("X", "X~") } else { ("Y", "Y~") };
                out.push_str(&format!(
                    "{}: {}  {l}={:?} {r}={:?}",
                    s.side,
                    if s.holds { "holds" } else { "fails" },
                    s.left,
                    s.right
                ));
                if let Some(w) = &s.witness {
                    out.push_str(&format!("  witness {:?}", w.pairs()));
                }
                out.push('\n');
            }
            out.push_str(if irreducible { "product is irreducible\n" } else { "product is reducible\n" });
            out
        });
        Ok(irreducible)
    }

    fn mpi(&self, m: &str, n: &str) -> Outcome {
        let (m, n) = (self.multi("M", m)?, self.multi("N", n)?);
        let r = in_m(&m, &n);
        let doc = MembershipDoc::new(&m, &r, &self.table);
        self.emit(&doc, || {
            let mut out = String::new();
            for v in &doc.verdicts {
                out.push_str(&format!("{}: LC {} RC {}\n", v.segment, yes(v.lc), yes(v.rc)));
            }
            out.push_str(&format!("n in M: {}\n", yes(doc.overall)));
            out
        });
        Ok(r.overall)
    }

    fn closure(&self, m: &str, n: &str) -> Outcome {
        let (m, n) = (self.multi("M", m)?, self.multi("N", n)?);
        let v = closure_check_with(&Matcher::default(), &m, &n, self.node_budget)?;
        let doc = ClosureDoc::new(&m, &n, &v, &self.table);
        self.emit(&doc, || {
            let mut out = format!("checked {} nodes\n", doc.checked_nodes);
            match &doc.counterexample {
                None => out.push_str("closure holds\n"),
                Some(cx) => {
                    out.push_str(&format!("closure fails at {}\n", cx.node));
                    for f in &cx.failures {
                        out.push_str(&format!(
                            "  {} fails for {}: left {:?} right {:?}\n",
                            f.side, f.segment, f.left, f.right
                        ));
                    }
                }
            }
            out
        });
        Ok(v.holds)
    }

    fn poset(&self, m: &str, dot: bool) -> Outcome {
        let m = self.multi("M", m)?;
        let g = lower_set_with_budget(&m, self.node_budget)?;
        let doc = GraphDoc::new(&g, &self.table);
        self.emit(&doc, || {
            if dot {
                return graph_dot(&g, &self.table);
            }
            let mut out = format!("{} nodes, {} edges\n", doc.nodes.len(), doc.edges.len());
            for (k, n) in doc.nodes.iter().enumerate() {
                out.push_str(&format!("  {k}: {n}\n"));
            }
            for e in &doc.edges {
                out.push_str(&format!("  {} -> {} via {} {}\n", e.from, e.to, e.pair[0], e.pair[1]));
            }
            out
        });
        Ok(true)
    }

    fn derive(&self, cmd: DeriveCommand) -> Outcome {
        match cmd {
            DeriveCommand::Jacquet { kind, d, level, absolute } => {
                let d = self.segment("D", &d)?;
                let kind = match kind {
                    KindArg::Zelevinsky => JacquetKind::Zelevinsky,
                    KindArg::Steinberg => JacquetKind::Steinberg,
                };
                let relative = if absolute { jacquet_relative_level(&d, level, &self.table) } else { Some(level) };
                let parts = match relative {
                    Some(i) => {
                        let (p, q) = jacquet_segment(kind, &d, i)?;
                        [p.map(|s| self.seg(&s)), q.map(|s| self.seg(&s))]
                    }
                    None => [None, None],
                };
                let doc = JacquetDoc { schema_version: SCHEMA_VERSION, segment: self.seg(&d), level, parts };
                self.emit(&doc, || match (relative, &doc.parts) {
                    (None, _) => "zero: the line dimension does not divide the level\n".into(),
                    (Some(_), [p, q]) => format!("{} ⊠ {}\n", p.as_deref().unwrap_or("∅"), q.as_deref().unwrap_or("∅")),
                });
                Ok(true)
            }
            DeriveCommand::SameEnd { p, d } => {
                let r = derivative_same_end_steinberg(&self.multi("P", &p)?, &self.segment("D", &d)?)?;
                self.rewrite(&RewriteDoc::new(&r, &self.table))
            }
            DeriveCommand::Nested { m, segment, peel } => {
                let m = self.multi("M", &m)?;
                let peel = match (segment, peel) {
                    (Some(s), _) => NestedPeel::Segment(self.segment("D", &s)?),
                    (None, Some(n)) => NestedPeel::Multi(self.multi("N", &n)?),
                    (None, None) => return Err(Failure::Usage("one of --segment or --peel is required".into())),
                };
                let r = derivative_nested_zelevinsky(&m, &peel)?;
                self.rewrite(&RewriteDoc::new(&r, &self.table))
            }
            DeriveCommand::Compose { m, steps } => {
                let m = self.multi("M", &m)?;
                let chain = steps
                    .iter()
                    .enumerate()
                    .map(|(k, s)| self.multi(&format!("step {k}"), s))
                    .collect::<Result<Vec<_>, _>>()?;
                let r = compose_check(&m, &chain)?;
                let doc = ComposeDoc {
                    schema_version: SCHEMA_VERSION,
                    holds: r.holds,
                    orders_checked: r.orders_checked,
                    mismatch: r.mismatch,
                    steps: r.rewrites.iter().map(|x| RewriteDoc::new(x, &self.table)).collect(),
                };
                self.emit(&doc, || {
                    let mut out = String::new();
                    for s in &doc.steps {
                        out.push_str(&format!("{} - {} = {}  ({:?})\n", s.input, s.peeled, s.output, s.rule));
                    }
                    out.push_str(&format!("{} step orders checked\n", doc.orders_checked));
                    match doc.mismatch {
                        None if doc.holds => out.push_str("composition holds\n"),
                        None => out.push_str("composition fails: result differs from peeling the sum\n"),
                        Some((i, j)) => out.push_str(&format!("composition fails when swapping steps {i} and {j}\n")),
                    }
                    out
                });
                Ok(r.holds)
            }
            DeriveCommand::Vanishing { d, d2 } => {
                let (d, d2) = (self.segment("D", &d)?, self.segment("D2", &d2)?);
                let holds = vanishing_predicate(&d, &d2);
                #[derive(Serialize)]
                struct Doc {
                    schema_version: u32,
                    holds: bool,
                }
                self.emit(&Doc { schema_version: SCHEMA_VERSION, holds }, || format!("{holds}\n"));
                Ok(holds)
            }
            DeriveCommand::Mxpt { n, end, on_line } => {
                let n = self.multi("N", &n)?;
                let line = match on_line {
                    None => zelcalc::LineId::DEFAULT,
                    Some(name) => self.table.lookup(&name).ok_or(Error::UnknownLine(name))?,
                };
                let mx = mxpt_b_generic(&n, CuspidalPoint::new(line, end))?;
                #[derive(Serialize)]
                struct Doc {
                    schema_version: u32,
                    mx: String,
                }
                let doc = Doc { schema_version: SCHEMA_VERSION, mx: self.show(&mx) };
                self.emit(&doc, || format!("{}\n", doc.mx));
                Ok(true)
            }
        }
    }

    fn rewrite(&self, doc: &RewriteDoc) -> Outcome {
        self.emit(doc, || {
            let mut out = format!("{} - {} = {}\n", doc.input, doc.peeled, doc.output);
            for t in &doc.transcript {
                out.push_str(&format!("  {t}\n"));
            }
            out
        });
        Ok(true)
    }

    fn mx(&self, n: &str, d: &str, mode: MxMode) -> Outcome {
        let (n, d) = (self.multi("N", n)?, self.segment("D", d)?);
        let mx = mx_generic(&n, &d, mode == MxMode::Saturated)?;
        let eta = eta_generic(&n, &d)?;
        let doc = MxDoc {
            schema_version: SCHEMA_VERSION,
            n: self.show(&n),
            segment: self.seg(&d),
            mode: if mode == MxMode::Saturated { "saturated" } else { "literal" }.into(),
            mx: self.show(&mx),
            eta: eta_entries(&eta, &self.table),
        };
        self.emit(&doc, || {
            let eta = doc.eta.iter().map(|e| format!("{}:{}", e.segment, e.value)).collect::<Vec<_>>();
            format!("mx ({}) = {}\neta = ({})\n", doc.mode, doc.mx, eta.join(", "))
        });
        Ok(true)
    }

    fn enumerate(&self, count_only: bool) -> Outcome {
        let segs = enumerate_segments(&self.window)?;
        let all = enumerate_multisegments_with_budget(&self.window, self.enum_budget)?;
        let table = self.window.table();
        let doc = EnumerateDoc {
            schema_version: SCHEMA_VERSION,
            window: self.window.clone(),
            segments: segs.len(),
            count: all.len(),
            multisegments: if count_only {
                Vec::new()
            } else {
                all.iter().map(|m| print_multisegment(m, &table)).collect()
            },
        };
        self.emit(&doc, || {
            let mut out = String::new();
            for m in &doc.multisegments {
                out.push_str(m);
                out.push('\n');
            }
            out.push_str(&format!("{} multisegments over {} segments\n", doc.count, doc.segments));
            out
        });
        Ok(true)
    }

    fn selftest(&self, suite: &str, corrupt: bool) -> Outcome {
        let ids: Vec<SuiteId> = if suite == "all" { SuiteId::ALL.to_vec() } else { vec![suite.parse()?] };
        let opts = RunOptions { corrupt, enum_budget: self.enum_budget };
        let reports = ids.into_iter().map(|id| run_suite(id, &self.window, opts)).collect::<Result<Vec<_>, _>>()?;
        let passed = reports.iter().all(Report::passed);
        let docs: Vec<ReportDoc> =
            reports.into_iter().map(|report| ReportDoc { schema_version: SCHEMA_VERSION, report }).collect();
        let text = || {
            let mut out = String::new();
            for d in &docs {
                let r = &d.report;
                out.push_str(&format!(
                    "{} [{}]: {} checked, {} violations, {} ms\n",
                    r.suite,
                    r.window,
                    r.checked,
                    r.violations.len(),
                    r.wall_time_ms
                ));
                for v in r.violations.iter().take(10) {
                    out.push_str(&format!("  {}: {}\n", v.input, v.message));
                }
                if r.violations.len() > 10 {
                    out.push_str(&format!("  ... {} more\n", r.violations.len() - 10));
                }
                for f in r.findings.iter().rev().take(5) {
                    out.push_str(&format!("  note: {f}\n"));
                }
            }
            out
        };
        if docs.len() == 1 {
            self.emit(&docs[0], text);
        } else {
            self.emit(&docs, text);
        }
        Ok(passed)
    }

    fn parse(&self, text: &str) -> Outcome {
        let (table, m) = if text.trim_start().starts_with('@') {
            parse_document(text).map_err(|err| Failure::Parse { what: "document".into(), err })?
        } else {
            (self.table.clone(), self.multi("input", text)?)
        };
        let doc = ParseDoc {
            schema_version: SCHEMA_VERSION,
            canonical: print_multisegment(&m, &table),
            entries: multisegment_entries(&m, &table),
        };
        self.emit(&doc, || format!("{}\n", doc.canonical));
        Ok(true)
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn build(cli: &Cli) -> Result<App, Failure> {
    let decls: Vec<String> = cli.lines.iter().map(|l| format!("@line {l}")).collect();
    let table = parse_line_table(decls.iter().map(String::as_str))
        .map_err(|err| Failure::Parse { what: "line declarations".into(), err })?;
    Ok(App {
        json: cli.json,
        table,
        window: cli.window.clone().unwrap_or_default(),
        node_budget: cli.budget.unwrap_or(DEFAULT_NODE_BUDGET),
        enum_budget: cli.budget.map_or(DEFAULT_ENUM_BUDGET, |b| b as u64),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    let result = build(&cli).and_then(|app| app.run(cli.command));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            let position = match &f {
                Failure::Parse { err, .. } => err.position(),
                _ => None,
            };
            if json {
                let doc = ErrorDoc {
                    schema_version: SCHEMA_VERSION,
                    error: f.message(),
                    position,
                    exit_code: i32::from(f.code()),
                };
                println!("{}", serde_json::to_string_pretty(&doc).expect("documents serialize"));
            }
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
