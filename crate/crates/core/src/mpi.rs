//! Membership in `M_π` for `π = ⟨𝔪⟩` and closure under `≤_Z`.
//!
//! `𝔫 ∈ M_π` iff `LC(𝔪, Δ)` and `RC(𝔪, Δ)` hold for every segment `Δ` of
//! `𝔫`. The set is closed downwards under the Zelevinsky order;
//! [`closure_check`] verifies this on a given lower set and
//! [`closure_by_construction`] re-derives it from explicit witnesses.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matching::{
    combine_intersection_witness, combine_union_witness, lc_sets_labeled, rc_sets_labeled, Matcher, MatchingInstance,
    MatchingWitness, Side,
};
use crate::multiseg::Multisegment;
use crate::segment::{LineTable, Segment};
use crate::zposet::{lower_set_with_budget, DEFAULT_NODE_BUDGET};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentVerdict {
    pub segment: Segment,
    pub lc: bool,
    pub rc: bool,
    pub in_m: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipReport {
    pub n: Multisegment,
    /// One entry per distinct segment of `n`, in canonical order.
    pub verdicts: Vec<SegmentVerdict>,
    pub overall: bool,
}

/// Whether `n ∈ M_{⟨m⟩}`, segment by segment.
pub fn in_m(m: &Multisegment, n: &Multisegment) -> MembershipReport {
    in_m_with(&Matcher::default(), m, n)
}

pub fn in_m_with(matcher: &Matcher, m: &Multisegment, n: &Multisegment) -> MembershipReport {
    let verdicts: Vec<SegmentVerdict> = n
        .distinct()
        .into_iter()
        .map(|(segment, _)| {
            let lc = matcher.holds(Side::Lc, m, &segment);
            let rc = matcher.holds(Side::Rc, m, &segment);
            SegmentVerdict { segment, lc, rc, in_m: lc && rc }
        })
        .collect();
    let overall = verdicts.iter().all(|v| v.in_m);
    MembershipReport { n: n.clone(), verdicts, overall }
}

/// The data behind a failed LC or RC decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailureDetail {
    pub segment: Segment,
    pub side: Side,
    pub labels: Vec<Segment>,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub node: Multisegment,
    pub report: MembershipReport,
    pub failures: Vec<FailureDetail>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureVerdict {
    pub holds: bool,
    pub checked_nodes: usize,
    pub counterexample: Option<Counterexample>,
}

/// Checks every node of the lower set of `n` for membership in `M_{⟨m⟩}`.
/// Requires `n ∈ M_{⟨m⟩}`.
pub fn closure_check(m: &Multisegment, n: &Multisegment) -> Result<ClosureVerdict> {
    closure_check_with(&Matcher::default(), m, n, DEFAULT_NODE_BUDGET)
}

pub fn closure_check_with(
    matcher: &Matcher,
    m: &Multisegment,
    n: &Multisegment,
    budget: usize,
) -> Result<ClosureVerdict> {
    if !in_m_with(matcher, m, n).overall {
        return Err(Error::Precondition("n is not in M for the given m".into()));
    }
    let graph = lower_set_with_budget(n, budget)?;
    let counterexample = graph.nodes().par_iter().find_map_first(|node| {
        let report = in_m_with(matcher, m, node);
        (!report.overall).then(|| {
            let labels = m.canonical_labeling();
            let failures = report
                .verdicts
                .iter()
                .flat_map(|v| {
                    let mut out = Vec::new();
                    for (side, ok) in [(Side::Lc, v.lc), (Side::Rc, v.rc)] {
                        if ok {
                            continue;
                        }
                        let (left, right) = match side {
                            Side::Lc => lc_sets_labeled(&labels, &v.segment),
                            Side::Rc => rc_sets_labeled(&labels, &v.segment),
                        };
                        out.push(FailureDetail { segment: v.segment, side, labels: labels.clone(), left, right });
                    }
                    out
                })
                .collect();
            Counterexample { node: node.clone(), report, failures }
        })
    });
    Ok(ClosureVerdict { holds: counterexample.is_none(), checked_nodes: graph.nodes().len(), counterexample })
}

/// Outcome of rebuilding the four matchings for one linked pair of `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairConstruction {
    pub dx: Segment,
    pub dy: Segment,
    pub union: Segment,
    pub intersection: Option<Segment>,
    /// Constructed LC witness for the union verifies.
    pub lc_union: bool,
    /// Constructed RC witness for the union (built on the dual side) verifies.
    pub rc_union: bool,
    /// `None` when the intersection is empty.
    pub lc_intersection: Option<bool>,
    pub rc_intersection: Option<bool>,
    /// Fresh matching decisions agree with the constructed witnesses.
    pub routes_agree: bool,
}

impl PairConstruction {
    pub fn ok(&self) -> bool {
        self.lc_union
            && self.rc_union
            && self.lc_intersection.unwrap_or(true)
            && self.rc_intersection.unwrap_or(true)
            && self.routes_agree
    }
}

fn decided(m: &Multisegment, side: Side, d: &Segment) -> Result<MatchingWitness> {
    Matcher::default().decide(side, m, d).ok_or_else(|| Error::Precondition(format!("{side} fails for {d}")))
}

/// LC witnesses for `Δx ∪ Δy` and `Δx ∩ Δy` built from those of `Δx`, `Δy`,
/// each paired with whether it verifies.
fn constructed_lc(m: &Multisegment, dx: &Segment, dy: &Segment) -> Result<(bool, Option<bool>)> {
    let fx = decided(m, Side::Lc, dx)?;
    let fy = decided(m, Side::Lc, dy)?;
    let fr = decided(m, Side::Rc, dx)?;
    let (union, inter) = dx.union_intersection(dy)?;
    let u = combine_union_witness(m, dx, dy, &fx, &fy, &fr)?;
    let u_ok = MatchingInstance::new(Side::Lc, m, union).verify(&u).is_ok();
    let i_ok = match inter {
        Some(i) => {
            let w = combine_intersection_witness(m, dx, dy, &fx, &fy, &fr)?;
            Some(MatchingInstance::new(Side::Lc, m, i).verify(&w).is_ok())
        }
        None => None,
    };
    Ok((u_ok, i_ok))
}

/// For every linked pair `Δx < Δy` of `n`, builds the LC witnesses of the
/// union and intersection directly, and the RC witnesses by running the same
/// construction on `m∨` (where RC turns into LC and the pair order flips).
/// Requires `n ∈ M_{⟨m⟩}`.
pub fn closure_by_construction(m: &Multisegment, n: &Multisegment, table: &LineTable) -> Result<Vec<PairConstruction>> {
    if !in_m(m, n).overall {
        return Err(Error::Precondition("n is not in M for the given m".into()));
    }
    let m_dual = m.dual(table);
    let distinct: Vec<Segment> = n.distinct().into_iter().map(|(s, _)| s).collect();
    let mut out = Vec::new();
    for dx in &distinct {
        for dy in &distinct {
            if !dx.precedes(dy) {
                continue;
            }
            let (union, inter) = dx.union_intersection(dy)?;
            let (lc_union, lc_intersection) = constructed_lc(m, dx, dy)?;
            let (rc_union, rc_intersection) = constructed_lc(&m_dual, &dy.dual(table), &dx.dual(table))?;
            let matcher = Matcher::default();
            let fresh = |d: &Segment| (matcher.holds(Side::Lc, m, d), matcher.holds(Side::Rc, m, d));
            let mut routes_agree = fresh(&union) == (lc_union, rc_union);
            if let Some(i) = inter {
                routes_agree &= fresh(&i) == (lc_intersection.unwrap_or(false), rc_intersection.unwrap_or(false));
            }
            out.push(PairConstruction {
                dx: *dx,
                dy: *dy,
                union,
                intersection: inter,
                lc_union,
                rc_union,
                lc_intersection,
                rc_intersection,
                routes_agree,
            });
        }
    }
    Ok(out)
}

/// Membership for `π = St(m)` with `m` generic: no segment of `n` is
/// juxtaposed to a segment of `m`.
pub fn fastpath_unlinked_tempered(m: &Multisegment, n: &Multisegment) -> Result<bool> {
    if !m.is_generic() {
        return Err(Error::Precondition("m has linked segments".into()));
    }
    Ok(n.iter().all(|x| m.iter().all(|y| !x.is_juxtaposed(y))))
}

/// `Δ₁ < … < Δ_r` for a ladder `m` (each segment the previous one shifted
/// right by one), or `None` when `m` is not of that form.
pub fn ladder_order(m: &Multisegment) -> Option<Vec<Segment>> {
    let mut v = m.segments().to_vec();
    if v.is_empty() {
        return None;
    }
    v.sort_by_key(|s| s.a());
    v.windows(2).all(|w| w[1] == w[0].shift_right()).then_some(v)
}

/// Membership for a Speh representation with ladder multisegment `m`:
/// every `Δ ∈ n` satisfies `Δ ≮ Δ₁` and `Δ_r ≮ Δ`.
pub fn fastpath_speh(m: &Multisegment, n: &Multisegment) -> Result<bool> {
    let ladder = ladder_order(m).ok_or_else(|| Error::Precondition("m is not a ladder of unit shifts".into()))?;
    let (first, last) = (ladder[0], ladder[ladder.len() - 1]);
    Ok(n.iter().all(|d| !d.precedes(&first) && !last.precedes(d)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(a: i64, b: i64) -> Segment {
        Segment::on_default(a, b)
    }

    fn m(v: &[(i64, i64)]) -> Multisegment {
        v.iter().map(|&(a, b)| s(a, b)).collect()
    }

    #[test]
    fn membership_examples() {
        assert!(in_m(&m(&[(0, 1)]), &m(&[(-1, 1), (0, 2)])).overall);
        let r = in_m(&m(&[(0, 0), (1, 5)]), &m(&[(1, 1)]));
        assert!(!r.overall);
        assert_eq!(r.verdicts, vec![SegmentVerdict { segment: s(1, 1), lc: false, rc: true, in_m: false }]);
        assert!(in_m(&m(&[(0, 0), (1, 5)]), &Multisegment::new()).overall);
    }

    #[test]
    fn closure_examples() {
        let v = closure_check(&m(&[(0, 1)]), &m(&[(-1, 1), (0, 2)])).unwrap();
        assert!(v.holds);
        assert_eq!(v.checked_nodes, 2);
        let v = closure_check(&m(&[(0, 1)]), &m(&[(5, 6), (8, 8)])).unwrap();
        assert!(v.holds);
        assert_eq!(v.checked_nodes, 1);
        assert!(matches!(closure_check(&m(&[(0, 0), (1, 5)]), &m(&[(1, 1)])), Err(Error::Precondition(_))));
    }

    #[test]
    fn corrupted_matcher_breaks_closure() {
        let mm = m(&[(0, 0), (1, 5)]);
        let n = m(&[(0, 1), (1, 5)]);
        let v = closure_check_with(&Matcher::corrupted(), &mm, &n, DEFAULT_NODE_BUDGET).unwrap();
        assert!(!v.holds);
        let cx = v.counterexample.unwrap();
        assert!(cx.node.contains(&s(1, 1)));
        assert!(cx.failures.iter().any(|f| f.segment == s(1, 1) && f.side == Side::Lc));
    }

    #[test]
    fn construction_on_fixture() {
        let t = LineTable::default();
        let pcs = closure_by_construction(&m(&[(0, 1)]), &m(&[(-1, 1), (0, 2)]), &t).unwrap();
        assert_eq!(pcs.len(), 1);
        assert!(pcs[0].ok());
        assert_eq!(pcs[0].union, s(-1, 2));
        assert_eq!(pcs[0].intersection, Some(s(0, 1)));
    }

    #[test]
    fn tempered_fastpath() {
        assert!(fastpath_unlinked_tempered(&m(&[(0, 0), (2, 3)]), &m(&[(5, 6)])).unwrap());
        assert!(!fastpath_unlinked_tempered(&m(&[(0, 0)]), &m(&[(1, 2)])).unwrap());
        assert!(fastpath_unlinked_tempered(&m(&[(0, 0)]), &Multisegment::new()).unwrap());
        assert!(fastpath_unlinked_tempered(&m(&[(0, 1), (1, 2)]), &Multisegment::new()).is_err());
    }

    #[test]
    fn speh_fastpath() {
        let ladder = m(&[(0, 1), (1, 2)]);
        assert!(!fastpath_speh(&ladder, &m(&[(3, 4)])).unwrap());
        assert!(fastpath_speh(&ladder, &m(&[(1, 1), (0, 1)])).unwrap());
        assert!(fastpath_speh(&ladder, &Multisegment::new()).unwrap());
        assert!(fastpath_speh(&m(&[(0, 1), (2, 3)]), &Multisegment::new()).is_err());
        assert!(fastpath_speh(&Multisegment::new(), &Multisegment::new()).is_err());
    }
}
