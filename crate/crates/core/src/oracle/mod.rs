//! Exhaustive verification over bounded windows of instances.
//!
//! A [`Window`] fixes a finite set of segments; every suite walks all
//! multisegments built from them and re-checks one family of properties
//! against brute-force or independently coded references.

mod minimize;
mod suites;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multiseg::Multisegment;
use crate::segment::{LineTable, Segment};

pub use minimize::{minimize, Component, Instance};

/// Default cap on the number of enumerated multisegments.
pub const DEFAULT_ENUM_BUDGET: u64 = 2_000_000;

/// A finite instance space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    /// Number of self-dual, dimension-one lines.
    pub lines: usize,
    pub lo: i64,
    pub hi: i64,
    pub max_segments: usize,
    /// Bound on the relative length of a single segment.
    pub max_len: i64,
    /// Optional bound on the absolute length of a whole multisegment.
    pub max_total_abs: Option<i64>,
}

impl Default for Window {
    /// Exponents `[0,4]`, at most three segments of length at most five.
    fn default() -> Self {
        Window { lines: 1, lo: 0, hi: 4, max_segments: 3, max_len: 5, max_total_abs: None }
    }
}

impl Window {
    /// Exponents `[0,5]`: large enough to hold `{[0],[1,5]}` verbatim.
    pub fn widened() -> Self {
        Window { hi: 5, max_len: 6, ..Window::default() }
    }

    pub fn table(&self) -> LineTable {
        LineTable::with_self_dual_lines(self.lines)
    }

    fn validate(&self) -> Result<()> {
        if self.lo > self.hi {
            return Err(Error::Window(format!("empty exponent range {}..{}", self.lo, self.hi)));
        }
        if self.lines == 0 {
            return Err(Error::Window("at least one line is required".into()));
        }
        Ok(())
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{},segs={},len={},lines={}", self.lo, self.hi, self.max_segments, self.max_len, self.lines)?;
        if let Some(abs) = self.max_total_abs {
            write!(f, ",abs={abs}")?;
        }
        Ok(())
    }
}

/// `LO..HI[,segs=N][,len=N][,lines=N][,abs=N]`; omitted keys keep their
/// defaults, and `len` defaults to the width of the range.
impl FromStr for Window {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Window(format!("{msg} in '{s}'"));
        let mut parts = s.split(',').map(str::trim);
        let range = parts.next().unwrap_or_default();
        let (lo, hi) = range.split_once("..").ok_or_else(|| bad("expected LO..HI"))?;
        let lo: i64 = lo.trim().parse().map_err(|_| bad("bad lower bound"))?;
        let hi: i64 = hi.trim().parse().map_err(|_| bad("bad upper bound"))?;
        let mut w = Window { lo, hi, max_len: (hi - lo + 1).max(1), ..Window::default() };
        for kv in parts {
            let (k, v) = kv.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            let n: i64 = v.trim().parse().map_err(|_| bad("bad number"))?;
            let nonneg = || usize::try_from(n).map_err(|_| bad("negative count"));
            match k.trim() {
                "segs" => w.max_segments = nonneg()?,
                "len" => w.max_len = n,
                "lines" => w.lines = nonneg()?,
                "abs" => w.max_total_abs = Some(n),
                other => return Err(bad(&format!("unknown key '{other}'"))),
            }
        }
        w.validate()?;
        Ok(w)
    }
}

/// All segments of the window, ordered by line, then `a`, then `b`.
pub fn enumerate_segments(w: &Window) -> Result<Vec<Segment>> {
    w.validate()?;
    let table = w.table();
    let mut out = Vec::new();
    for line in table.ids() {
        for a in w.lo..=w.hi {
            for b in a..=w.hi.min(a + w.max_len - 1) {
                out.push(Segment::new(line, a, b)?);
            }
        }
    }
    Ok(out)
}

/// `C(n + k − 1, k)`, the number of size-`k` multisets over `n` items.
pub fn multiset_coefficient(n: u64, k: u64) -> u64 {
    if k == 0 {
        return 1;
    }
    if n == 0 {
        return 0;
    }
    // C(n+k-1, k) computed incrementally; each prefix is itself binomial
    (1..=k).fold(1u64, |acc, i| acc.saturating_mul(n + i - 1) / i)
}

/// Number of multisegments with at most `max_segments` entries, ignoring
/// the absolute length bound.
pub fn multisegment_count(segment_count: usize, max_segments: usize) -> u64 {
    (0..=max_segments as u64).map(|k| multiset_coefficient(segment_count as u64, k)).fold(0u64, u64::saturating_add)
}

pub fn enumerate_multisegments(w: &Window) -> Result<Vec<Multisegment>> {
    enumerate_multisegments_with_budget(w, DEFAULT_ENUM_BUDGET)
}

/// Every multisegment of the window, by size and then lexicographically.
pub fn enumerate_multisegments_with_budget(w: &Window, budget: u64) -> Result<Vec<Multisegment>> {
    let segs = enumerate_segments(w)?;
    if multisegment_count(segs.len(), w.max_segments) > budget {
        return Err(Error::BudgetExceeded { budget: budget as usize });
    }
    let table = w.table();
    let mut out = Vec::new();
    for k in 0..=w.max_segments {
        for combo in segs.iter().copied().combinations_with_replacement(k) {
            let m: Multisegment = combo.into_iter().collect();
            if w.max_total_abs.is_none_or(|cap| m.absolute_len(&table) <= cap) {
                out.push(m);
            }
        }
    }
    Ok(out)
}

/// The registered property suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteId {
    /// `M_π` is closed under `≤_Z`.
    Closure,
    /// The matching decision agrees with brute-force enumeration.
    Hall,
    /// LC, RC, irreducibility and membership commute with duality.
    Duality,
    /// The union and intersection witnesses verify; the obstruction sets
    /// are empty.
    Witness,
    /// An RC witness of `Δx` maps `Y^{Δx} ∩ X̃^{Δy}` into `X^{Δy}`.
    RightMatching,
    /// Conservation laws, minimal elements and acyclicity of lower sets.
    Poset,
    /// Subtraction rewrites, Jacquet factorizations, `𝔪𝔵` and `η`.
    Derive,
    /// Printing and parsing are mutually inverse.
    Parser,
    /// Derivative chains commute with subtraction of their sum.
    Compose,
    /// Instances where the two `𝔪𝔵` readings disagree (report only).
    MxDivergence,
}

impl SuiteId {
    pub const ALL: [SuiteId; 10] = [
        SuiteId::Closure,
        SuiteId::Hall,
        SuiteId::Duality,
        SuiteId::Witness,
        SuiteId::RightMatching,
        SuiteId::Poset,
        SuiteId::Derive,
        SuiteId::Parser,
        SuiteId::Compose,
        SuiteId::MxDivergence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteId::Closure => "closure",
            SuiteId::Hall => "hall",
            SuiteId::Duality => "duality",
            SuiteId::Witness => "witness",
            SuiteId::RightMatching => "right-matching",
            SuiteId::Poset => "poset",
            SuiteId::Derive => "derive",
            SuiteId::Parser => "parser",
            SuiteId::Compose => "compose",
            SuiteId::MxDivergence => "mx-divergence",
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteId::ALL.into_iter().find(|id| id.name() == s).ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    /// Swap the matcher for one that accepts every pair.
    pub corrupt: bool,
    pub enum_budget: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { corrupt: false, enum_budget: DEFAULT_ENUM_BUDGET }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    /// What went wrong, on the minimized instance.
    pub message: String,
    /// Minimized reproduction, `name=multisegment` pairs in notation syntax.
    pub input: String,
    /// The instance as first found.
    pub original: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: SuiteId,
    pub window: Window,
    pub checked: u64,
    pub violations: Vec<Violation>,
    /// Observations that are not failures, such as divergence instances.
    pub findings: Vec<String>,
    pub wall_time_ms: u64,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// What a suite produces before timing and normalization.
#[derive(Debug, Default)]
struct Tally {
    checked: u64,
    violations: Vec<Violation>,
    findings: Vec<String>,
}

pub fn run_suite(id: SuiteId, w: &Window, opts: RunOptions) -> Result<Report> {
    let start = Instant::now();
    let tally = suites::run(id, w, opts)?;
    let mut violations = tally.violations;
    // shrunk reproductions first, shortest first
    violations.sort_by(|x, y| {
        let key = |v: &Violation| (v.input == v.original, v.input.len(), v.input.clone(), v.message.clone());
        key(x).cmp(&key(y)).then_with(|| x.original.cmp(&y.original))
    });
    violations.dedup_by(|x, y| x.input == y.input && x.message == y.message);
    let mut findings = tally.findings;
    findings.sort();
    Ok(Report {
        suite: id,
        window: w.clone(),
        checked: tally.checked,
        violations,
        findings,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn win(lo: i64, hi: i64, segs: usize, len: i64) -> Window {
        Window { lo, hi, max_segments: segs, max_len: len, ..Window::default() }
    }

    #[test]
    fn segment_enumeration() {
        let s = enumerate_segments(&win(0, 1, 2, 2)).unwrap();
        assert_eq!(s, vec![Segment::on_default(0, 0), Segment::on_default(0, 1), Segment::on_default(1, 1)]);
        assert_eq!(enumerate_segments(&win(0, 2, 2, 1)).unwrap().len(), 3);
        assert!(matches!(enumerate_segments(&win(2, 1, 2, 1)), Err(Error::Window(_))));
    }

    #[test]
    fn multisegment_enumeration() {
        let all = enumerate_multisegments(&win(0, 1, 2, 2)).unwrap();
        assert_eq!(all.len(), 10);
        assert_eq!(all[0], Multisegment::new());
        assert_eq!(enumerate_multisegments(&win(0, 1, 0, 2)).unwrap(), vec![Multisegment::new()]);
        assert_eq!(
            enumerate_multisegments_with_budget(&win(0, 4, 3, 5), 10),
            Err(Error::BudgetExceeded { budget: 10 })
        );
    }

    #[test]
    fn counts_match_closed_form() {
        for (lo, hi, k, len) in [(0, 3, 3, 4), (0, 4, 3, 5), (-1, 2, 2, 2), (0, 0, 4, 1)] {
            let w = win(lo, hi, k, len);
            let s = enumerate_segments(&w).unwrap().len();
            assert_eq!(enumerate_multisegments(&w).unwrap().len() as u64, multisegment_count(s, k));
        }
        assert_eq!(multiset_coefficient(3, 2), 6);
        assert_eq!(multiset_coefficient(0, 0), 1);
        assert_eq!(multiset_coefficient(0, 2), 0);
    }

    #[test]
    fn absolute_cap_filters() {
        let w = Window { max_total_abs: Some(2), ..win(0, 2, 3, 3) };
        let all = enumerate_multisegments(&w).unwrap();
        assert!(all.iter().all(|m| m.relative_len() <= 2));
        assert!(all.len() < multisegment_count(6, 3) as usize);
    }

    #[test]
    fn window_syntax() {
        let w: Window = "0..4,segs=3,len=5".parse().unwrap();
        assert_eq!(w, Window::default());
        assert_eq!(w.to_string().parse::<Window>().unwrap(), w);
        let w: Window = "-1..2,lines=2,abs=6".parse().unwrap();
        assert_eq!((w.lo, w.hi, w.lines, w.max_total_abs, w.max_len), (-1, 2, 2, Some(6), 4));
        assert!("4..0".parse::<Window>().is_err());
        assert!("0-4".parse::<Window>().is_err());
        assert!("0..4,foo=1".parse::<Window>().is_err());
    }

    #[test]
    fn suite_names_round_trip() {
        for id in SuiteId::ALL {
            assert_eq!(id.name().parse::<SuiteId>().unwrap(), id);
        }
        assert_eq!("nope".parse::<SuiteId>(), Err(Error::UnknownSuite("nope".into())));
    }
}
