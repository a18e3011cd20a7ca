use std::collections::HashMap;

use itertools::Itertools;
use rayon::prelude::*;

use super::minimize::{minimize, Component, Instance};
use super::{enumerate_multisegments_with_budget, enumerate_segments, RunOptions, SuiteId, Tally, Violation, Window};
use crate::derive::{
    compose_check, derivative_nested_zelevinsky, derivative_same_end_steinberg, eta_generic, jacquet_segment,
    mx_generic, mxpt_b_generic, step_rewrite, JacquetKind, NestedPeel,
};
use crate::error::Result;
use crate::matching::{
    all_witnesses, brute_decide, combine_intersection_witness, combine_union_witness, obstruction_sets, oracle_verify,
    right_matching_failures, Matcher, Obstruction, Side, BRUTE_BOUND,
};
use crate::mpi::{closure_check_with, in_m_with};
use crate::multiseg::Multisegment;
use crate::notation::{parse_multisegment, print_multisegment, print_segment};
use crate::segment::{LineTable, Segment};
use crate::zposet::{lower_set, profile_increases, DEFAULT_NODE_BUDGET};

/// Only this many violations per run are shrunk; the rest are reported as
/// found.
const MINIMIZE_LIMIT: usize = 32;

/// Divergence findings listed individually before summarizing.
const FINDINGS_LIMIT: usize = 100;

/// `Ok(k)`: `k` checks passed (zero when the instance is out of scope).
/// `Err`: description of the failure.
type Check = std::result::Result<u64, String>;

struct Ctx {
    matcher: Matcher,
    table: LineTable,
}

impl Ctx {
    fn show(&self, m: &Multisegment) -> String {
        print_multisegment(m, &self.table)
    }

    fn seg(&self, s: &Segment) -> String {
        print_segment(s, &self.table)
    }
}

#[derive(Default)]
struct Scan {
    checked: u64,
    raw: Vec<(Instance, String)>,
    findings: Vec<String>,
}

impl Scan {
    fn record(&mut self, inst: impl FnOnce() -> Instance, outcome: Check) {
        match outcome {
            Ok(k) => self.checked += k,
            Err(msg) => {
                self.checked += 1;
                self.raw.push((inst(), msg));
            }
        }
    }

    fn merge(mut self, other: Scan) -> Scan {
        self.checked += other.checked;
        self.raw.extend(other.raw);
        self.findings.extend(other.findings);
        self
    }
}

fn par_scan<T: Sync>(items: &[T], f: impl Fn(&T) -> Scan + Sync + Send) -> Scan {
    items.par_iter().map(f).reduce(Scan::default, Scan::merge)
}

pub(super) fn run(id: SuiteId, w: &Window, opts: RunOptions) -> Result<Tally> {
    let ctx = Ctx { matcher: if opts.corrupt { Matcher::corrupted() } else { Matcher::default() }, table: w.table() };
    let segs = enumerate_segments(w)?;
    let all = enumerate_multisegments_with_budget(w, opts.enum_budget)?;
    let scan = match id {
        SuiteId::Closure => scan_closure(&ctx, &segs, &all)?,
        SuiteId::Hall => par_scan(&all, |m| over_segments(&segs, m, |i| check_hall(&ctx, i))),
        SuiteId::Duality => scan_duality(&ctx, &segs, &all),
        SuiteId::Witness => par_scan(&all, |m| over_pairs(&segs, m, |i| check_witness(&ctx, i))),
        SuiteId::RightMatching => par_scan(&all, |m| over_pairs(&segs, m, check_right_matching)),
        SuiteId::Poset => par_scan(&all, |n| {
            let mut s = Scan::default();
            let inst = Instance(vec![Component::multi("n", n)]);
            let outcome = check_poset(&ctx, &inst);
            s.record(|| inst, outcome);
            s
        }),
        SuiteId::Derive => scan_derive(&ctx, &segs, &all),
        SuiteId::Parser => par_scan(&all, |m| {
            let mut s = Scan::default();
            let inst = Instance(vec![Component::multi("m", m)]);
            let outcome = check_parser(&ctx, &inst);
            s.record(|| inst, outcome);
            s
        }),
        SuiteId::Compose => par_scan(&all, |m| {
            let mut s = Scan::default();
            let inst = Instance(vec![Component::multi("m", m)]);
            let outcome = check_compose(&ctx, &inst);
            s.record(|| inst, outcome);
            s
        }),
        SuiteId::MxDivergence => scan_mx_divergence(&ctx, &segs, &all),
    };
    Ok(finish(&ctx, id, scan))
}

/// Shrinks the first few failures and renders all of them.
fn finish(ctx: &Ctx, id: SuiteId, scan: Scan) -> Tally {
    let mut raw = scan.raw;
    raw.sort_by_cached_key(|(inst, msg)| {
        let size: usize = inst.0.iter().map(|c| c.value.len()).sum();
        (size, inst.render(&ctx.table), msg.clone())
    });
    let violations = raw
        .into_iter()
        .enumerate()
        .map(|(k, (inst, msg))| {
            let original = inst.render(&ctx.table);
            if k >= MINIMIZE_LIMIT {
                return Violation { message: msg, input: original.clone(), original };
            }
            let small = minimize(inst, |i| recheck(ctx, id, i).is_err());
            let message = recheck(ctx, id, &small).err().unwrap_or(msg);
            Violation { message, input: small.render(&ctx.table), original }
        })
        .collect();
    Tally { checked: scan.checked, violations, findings: scan.findings }
}

fn recheck(ctx: &Ctx, id: SuiteId, inst: &Instance) -> Check {
    match id {
        SuiteId::Closure => check_closure(ctx, inst),
        SuiteId::Hall => check_hall(ctx, inst),
        SuiteId::Duality if inst.0[1].single => check_duality_segment(ctx, inst),
        SuiteId::Duality => check_duality_membership(ctx, inst),
        SuiteId::Witness => check_witness(ctx, inst),
        SuiteId::RightMatching => check_right_matching(inst),
        SuiteId::Poset => check_poset(ctx, inst),
        SuiteId::Derive => match inst.0.as_slice() {
            [c] if c.single => check_jacquet(ctx, inst),
            [_] => check_rewrites(ctx, inst),
            _ => check_mx(ctx, inst),
        },
        SuiteId::Parser => check_parser(ctx, inst),
        SuiteId::Compose => check_compose(ctx, inst),
        SuiteId::MxDivergence => Ok(0),
    }
}

fn over_segments(segs: &[Segment], m: &Multisegment, check: impl Fn(&Instance) -> Check) -> Scan {
    let mut s = Scan::default();
    for d in segs {
        let inst = Instance(vec![Component::multi("m", m), Component::segment("D", d)]);
        let outcome = check(&inst);
        s.record(|| inst, outcome);
    }
    s
}

fn over_pairs(segs: &[Segment], m: &Multisegment, check: impl Fn(&Instance) -> Check) -> Scan {
    let mut s = Scan::default();
    for (dx, dy) in segs.iter().cartesian_product(segs) {
        if !dx.precedes(dy) {
            continue;
        }
        let inst = Instance(vec![Component::multi("m", m), Component::segment("Dx", dx), Component::segment("Dy", dy)]);
        let outcome = check(&inst);
        s.record(|| inst, outcome);
    }
    s
}

// ---- closure ----

/// Membership is segmentwise, so per `m` it is a mask over the window's
/// segments; lower sets are computed once per `n`.
fn scan_closure(ctx: &Ctx, segs: &[Segment], all: &[Multisegment]) -> Result<Scan> {
    let index: HashMap<Segment, usize> = segs.iter().enumerate().map(|(k, s)| (*s, k)).collect();
    let lowers: Vec<Vec<Multisegment>> =
        all.par_iter().map(|n| lower_set(n).map(|g| g.nodes().to_vec())).collect::<Result<_>>()?;
    Ok(par_scan(all, |m| {
        let mask: Vec<bool> = segs.iter().map(|d| ctx.matcher.is_irreducible_product(m, d)).collect();
        let ok = |d: &Segment| match index.get(d) {
            Some(&k) => mask[k],
            None => ctx.matcher.is_irreducible_product(m, d),
        };
        let mut s = Scan::default();
        for (n, lower) in all.iter().zip(&lowers) {
            if !n.iter().all(ok) {
                continue;
            }
            s.checked += 1;
            if let Some(bad) = lower.iter().find(|node| !node.iter().all(ok)) {
                let inst = Instance(vec![Component::multi("m", m), Component::multi("n", n)]);
                s.raw.push((inst, format!("{} lies below n but is not in M", ctx.show(bad))));
            }
        }
        s
    }))
}

fn check_closure(ctx: &Ctx, inst: &Instance) -> Check {
    let (m, n) = (inst.multi(0), inst.multi(1));
    match closure_check_with(&ctx.matcher, m, n, DEFAULT_NODE_BUDGET) {
        Ok(v) => match v.counterexample {
            None => Ok(1),
            Some(cx) => Err(format!("{} lies below n but is not in M", ctx.show(&cx.node))),
        },
        Err(_) => Ok(0),
    }
}

// ---- hall ----

fn check_hall(ctx: &Ctx, inst: &Instance) -> Check {
    let (m, d) = (inst.multi(0), inst.seg(1));
    let mut k = 0;
    for side in [Side::Lc, Side::Rc] {
        let brute = match brute_decide(side, m, &d, BRUTE_BOUND) {
            Ok(b) => b,
            Err(_) => continue,
        };
        let fast = ctx.matcher.decide(side, m, &d);
        match (&fast, &brute) {
            (Some(f), _) if !oracle_verify(side, m, &d, f) => {
                return Err(format!("{side}: decided witness {:?} does not verify", f.pairs()));
            }
            (Some(_), None) => return Err(format!("{side}: decide finds a witness, brute force none")),
            (None, Some(_)) => return Err(format!("{side}: brute force finds a witness, decide none")),
            (Some(f), Some(b)) if f != b => {
                return Err(format!("{side}: witness {:?} differs from brute force {:?}", f.pairs(), b.pairs()));
            }
            _ => k += 1,
        }
    }
    Ok(k)
}

// ---- duality ----

fn scan_duality(ctx: &Ctx, segs: &[Segment], all: &[Multisegment]) -> Scan {
    let small: Vec<&Multisegment> = all.iter().filter(|n| n.len() <= 2).collect();
    par_scan(all, |m| {
        let mut s = over_segments(segs, m, |i| check_duality_segment(ctx, i));
        for n in &small {
            let inst = Instance(vec![Component::multi("m", m), Component::multi("n", n)]);
            let outcome = check_duality_membership(ctx, &inst);
            s.record(|| inst, outcome);
        }
        s
    })
}

fn check_duality_segment(ctx: &Ctx, inst: &Instance) -> Check {
    let (m, d) = (inst.multi(0), inst.seg(1));
    let (md, dd) = (m.dual(&ctx.table), d.dual(&ctx.table));
    if md.dual(&ctx.table) != *m {
        return Err("dual is not an involution".into());
    }
    let h = |side, mm: &Multisegment, dd: &Segment| ctx.matcher.holds(side, mm, dd);
    if h(Side::Lc, m, &d) != h(Side::Rc, &md, &dd) {
        return Err(format!("LC(m, D) differs from RC(m∨, {})", ctx.seg(&dd)));
    }
    if h(Side::Rc, m, &d) != h(Side::Lc, &md, &dd) {
        return Err(format!("RC(m, D) differs from LC(m∨, {})", ctx.seg(&dd)));
    }
    if ctx.matcher.is_irreducible_product(m, &d) != ctx.matcher.is_irreducible_product(&md, &dd) {
        return Err("irreducibility is not preserved by duality".into());
    }
    Ok(3)
}

fn check_duality_membership(ctx: &Ctx, inst: &Instance) -> Check {
    let (m, n) = (inst.multi(0), inst.multi(1));
    let lhs = in_m_with(&ctx.matcher, m, n).overall;
    let rhs = in_m_with(&ctx.matcher, &m.dual(&ctx.table), &n.dual(&ctx.table)).overall;
    if lhs == rhs {
        Ok(1)
    } else {
        Err(format!("n ∈ M is {lhs} but n∨ ∈ M(m∨) is {rhs}"))
    }
}

// ---- witness construction ----

/// Runs the LC construction for `dx < dy` on every triple of witnesses and
/// checks the outputs and obstruction sets.
fn lc_construction(ctx: &Ctx, m: &Multisegment, dx: &Segment, dy: &Segment, tag: &str) -> Check {
    let hyp =
        ctx.matcher.holds(Side::Lc, m, dx) && ctx.matcher.holds(Side::Lc, m, dy) && ctx.matcher.holds(Side::Rc, m, dx);
    if !hyp {
        return Ok(0);
    }
    let all = |side, d: &Segment| all_witnesses(side, m, d, BRUTE_BOUND).unwrap_or_default();
    let (fxs, fys, frs) = (all(Side::Lc, dx), all(Side::Lc, dy), all(Side::Rc, dx));
    let (union, inter) = dx.union_intersection(dy).map_err(|e| e.to_string())?;
    let mut k = 0;
    for ((fx, fy), fr) in fxs.iter().cartesian_product(&fys).cartesian_product(&frs) {
        let ctx_msg =
            |what: &str| format!("{tag}: {what} for f_x={:?} f_y={:?} f_r={:?}", fx.pairs(), fy.pairs(), fr.pairs());
        let u = combine_union_witness(m, dx, dy, fx, fy, fr).map_err(|e| ctx_msg(&e.to_string()))?;
        if !oracle_verify(Side::Lc, m, &union, &u) {
            return Err(ctx_msg(&format!("union witness {:?} does not verify", u.pairs())));
        }
        if let Some(i) = inter {
            let v = combine_intersection_witness(m, dx, dy, fx, fy, fr).map_err(|e| ctx_msg(&e.to_string()))?;
            if !oracle_verify(Side::Lc, m, &i, &v) {
                return Err(ctx_msg(&format!("intersection witness {:?} does not verify", v.pairs())));
            }
        }
        for kind in [Obstruction::N, Obstruction::O] {
            let set = obstruction_sets(kind, m, dx, dy, fy).map_err(|e| ctx_msg(&e.to_string()))?;
            if !set.is_empty() {
                return Err(ctx_msg(&format!("obstruction set {kind:?} = {set:?}")));
            }
        }
        k += 1;
    }
    Ok(k)
}

/// The LC side directly; the RC side as the LC side of the dual instance,
/// where the pair order flips.
fn check_witness(ctx: &Ctx, inst: &Instance) -> Check {
    let (m, dx, dy) = (inst.multi(0), inst.seg(1), inst.seg(2));
    if !dx.precedes(&dy) {
        return Ok(0);
    }
    let lc = lc_construction(ctx, m, &dx, &dy, "LC")?;
    let t = &ctx.table;
    let rc = lc_construction(ctx, &m.dual(t), &dy.dual(t), &dx.dual(t), "RC via dual")?;
    Ok(lc + rc)
}

fn check_right_matching(inst: &Instance) -> Check {
    let (m, dx, dy) = (inst.multi(0), inst.seg(1), inst.seg(2));
    if !dx.precedes(&dy) {
        return Ok(0);
    }
    let frs = all_witnesses(Side::Rc, m, &dx, BRUTE_BOUND).unwrap_or_default();
    for fr in &frs {
        let bad = right_matching_failures(m, &dx, &dy, fr).map_err(|e| e.to_string())?;
        if !bad.is_empty() {
            return Err(format!("f_r={:?} sends {bad:?} outside X^Dy", fr.pairs()));
        }
    }
    Ok(frs.len() as u64)
}

// ---- poset ----

fn check_poset(ctx: &Ctx, inst: &Instance) -> Check {
    let n = inst.multi(0);
    let g = lower_set(n).map_err(|e| e.to_string())?;
    let (abs, support) = (n.absolute_len(&ctx.table), n.support());
    for (k, node) in g.nodes().iter().enumerate() {
        if node.absolute_len(&ctx.table) != abs {
            return Err(format!("absolute length changes at {}", ctx.show(node)));
        }
        if node.support() != support {
            return Err(format!("support changes at {}", ctx.show(node)));
        }
        if (g.out_degree(k) == 0) != node.is_generic() {
            return Err(format!("{} is minimal iff generic fails", ctx.show(node)));
        }
    }
    for e in g.edges() {
        let (from, to) = (&g.nodes()[e.from], &g.nodes()[e.to]);
        if !profile_increases(from, to) {
            return Err(format!("length profile does not rise from {} to {}", ctx.show(from), ctx.show(to)));
        }
    }
    Ok(g.nodes().len() as u64)
}

// ---- derivatives ----

fn scan_derive(ctx: &Ctx, segs: &[Segment], all: &[Multisegment]) -> Scan {
    let generic: Vec<&Multisegment> = all.iter().filter(|n| n.is_generic()).collect();
    let mut s = par_scan(all, |m| {
        let mut s = Scan::default();
        let inst = Instance(vec![Component::multi("m", m)]);
        let outcome = check_rewrites(ctx, &inst);
        s.record(|| inst, outcome);
        s
    });
    for d in segs {
        let inst = Instance(vec![Component::segment("D", d)]);
        let outcome = check_jacquet(ctx, &inst);
        s.record(|| inst, outcome);
    }
    s.merge(par_scan(&generic, |n| {
        let mut s = Scan::default();
        for d in segs {
            let inst = Instance(vec![Component::multi("n", n), Component::segment("D", d)]);
            let outcome = check_mx(ctx, &inst);
            s.record(|| inst, outcome);
        }
        s
    }))
}

fn check_rewrites(ctx: &Ctx, inst: &Instance) -> Check {
    let m = inst.multi(0);
    let mut k = 0;
    let mut expect =
        |rewrite: Result<crate::derive::DerivativeRewrite>, hyp: bool, peeled: &Multisegment, rule: &str| match (
            rewrite, hyp,
        ) {
            (Ok(r), true) => {
                if !r.is_conservative() || r.peeled != *peeled {
                    return Err(format!("{rule}: input ≠ output + peeled for {}", ctx.show(peeled)));
                }
                k += 1;
                Ok(())
            }
            (Err(_), false) => Ok(()),
            (Ok(_), false) => Err(format!("{rule}: accepted {} without its hypotheses", ctx.show(peeled))),
            (Err(e), true) => Err(format!("{rule}: rejected {}: {e}", ctx.show(peeled))),
        };
    for (d, _) in m.distinct() {
        let one = Multisegment::from(d);
        let same_end = m.iter().all(|s| s.line() == d.line() && s.b() == d.b());
        expect(derivative_same_end_steinberg(m, &d), same_end, &one, "same-end")?;
        let nested = m.iter().all(|s| d.contains(s));
        expect(derivative_nested_zelevinsky(m, &NestedPeel::Segment(d)), nested, &one, "nested")?;
    }
    if let Some(first) = m.segments().first() {
        let equal = m.iter().all(|s| s == first);
        for j in 0..=m.len() {
            let peel: Multisegment = std::iter::repeat_n(*first, j).collect();
            expect(derivative_nested_zelevinsky(m, &NestedPeel::Multi(peel.clone())), equal, &peel, "equal")?;
        }
    }
    Ok(k)
}

fn check_jacquet(ctx: &Ctx, inst: &Instance) -> Check {
    let d = inst.seg(0);
    let len = d.relative_len();
    let mut k = 0;
    for kind in [JacquetKind::Zelevinsky, JacquetKind::Steinberg] {
        for i in 0..=len {
            let (p, q) = jacquet_segment(kind, &d, i).map_err(|e| e.to_string())?;
            let size = |s: &Option<Segment>| s.map_or(0, |s| s.relative_len());
            let mut pts: Vec<_> = p.iter().chain(q.iter()).flat_map(|s| s.points().collect::<Vec<_>>()).collect();
            pts.sort();
            let whole: Vec<_> = d.points().collect();
            if (size(&p), size(&q)) != (len - i, i) || pts != whole {
                return Err(format!("{kind:?} at level {i} does not split {}", ctx.seg(&d)));
            }
            k += 1;
        }
        if jacquet_segment(kind, &d, len + 1).is_ok() {
            return Err(format!("{kind:?} accepts level {}", len + 1));
        }
    }
    Ok(k)
}

fn check_mx(ctx: &Ctx, inst: &Instance) -> Check {
    let (n, d) = (inst.multi(0), inst.seg(1));
    let mx = mx_generic(n, &d, true).map_err(|e| e.to_string())?;
    if let Some(bad) = mx.iter().find(|s| !s.is_saturated_by(&d)) {
        return Err(format!("{} in mx is not saturated", ctx.seg(bad)));
    }
    let eta = eta_generic(n, &d).map_err(|e| e.to_string())?;
    let total: usize = eta.values().iter().sum();
    if total != mx.len() || eta.entries.iter().any(|(s, v)| mx.multiplicity(s) != *v) {
        return Err("eta disagrees with mx multiplicities".into());
    }
    // mxpt at the end of D, when some segment of n ends there
    let slice = n.slice_b(d.end());
    if let Some(longest) = slice.iter().max_by_key(|s| s.relative_len()) {
        let got = mxpt_b_generic(n, d.end()).map_err(|e| e.to_string())?;
        if got != mx_generic(n, longest, true).map_err(|e| e.to_string())? {
            return Err("mxpt differs from mx at the longest segment".into());
        }
    }
    Ok(1)
}

// ---- parser ----

fn check_parser(ctx: &Ctx, inst: &Instance) -> Check {
    let m = inst.multi(0);
    let t = &ctx.table;
    let printed = print_multisegment(m, t);
    let back = parse_multisegment(&printed, t).map_err(|e| format!("'{printed}' fails to parse: {e}"))?;
    if back != *m {
        return Err(format!("'{printed}' parses to {}", print_multisegment(&back, t)));
    }
    // a non-canonical spelling: reversed, spaced, explicit endpoints and lines
    if !m.is_empty() {
        let spelled =
            m.iter().rev().map(|s| format!("[ {} , {} ]_{}", s.a(), s.b(), t.line(s.line()).name)).join(" +  ");
        let reparsed = parse_multisegment(&spelled, t).map_err(|e| format!("'{spelled}' fails to parse: {e}"))?;
        if print_multisegment(&reparsed, t) != printed {
            return Err(format!("'{spelled}' does not print canonically"));
        }
        let s = m.segments()[0];
        if s.a() < s.b() {
            let swapped = format!("[{},{}]", s.b(), s.a());
            if parse_multisegment(&swapped, t).ok().is_some() {
                return Err(format!("'{swapped}' is accepted"));
            }
        }
        let truncated = &printed[..printed.len() - 1];
        if let Ok(x) = parse_multisegment(truncated, t) {
            return Err(format!("'{truncated}' is accepted as {}", print_multisegment(&x, t)));
        }
    }
    Ok(1)
}

// ---- composition ----

/// Single steps admissible at `cur`: each distinct segment, and each group
/// of at least two copies when all segments are equal.
fn steps(cur: &Multisegment) -> Vec<Multisegment> {
    let mut out: Vec<Multisegment> = cur.distinct().into_iter().map(|(s, _)| Multisegment::from(s)).collect();
    if let Some(first) = cur.segments().first() {
        if cur.iter().all(|s| s == first) {
            out.extend((2..=cur.len()).map(|j| std::iter::repeat_n(*first, j).collect()));
        }
    }
    out.retain(|st| step_rewrite(cur, st).is_ok());
    out
}

fn check_compose(ctx: &Ctx, inst: &Instance) -> Check {
    let m = inst.multi(0);
    let mut k = 0;
    let mut stack: Vec<(Multisegment, Vec<Multisegment>)> = vec![(m.clone(), Vec::new())];
    while let Some((cur, chain)) = stack.pop() {
        if !chain.is_empty() {
            let r = compose_check(m, &chain).map_err(|e| e.to_string())?;
            if !r.holds {
                let shown = chain.iter().map(|c| ctx.show(c)).join(", ");
                return Err(format!("chain [{shown}] fails, mismatch {:?}", r.mismatch));
            }
            k += 1;
        }
        if chain.len() == 3 {
            continue;
        }
        for st in steps(&cur) {
            let next = cur.subtract(&st).expect("step is a sub-multisegment");
            let mut c = chain.clone();
            c.push(st);
            stack.push((next, c));
        }
    }
    Ok(k)
}

// ---- mx modes ----

fn scan_mx_divergence(ctx: &Ctx, segs: &[Segment], all: &[Multisegment]) -> Scan {
    let generic: Vec<&Multisegment> = all.iter().filter(|n| n.is_generic()).collect();
    let mut s = par_scan(&generic, |n| {
        let mut s = Scan::default();
        for d in segs {
            s.checked += 1;
            let (a, b) = (mx_generic(n, d, true), mx_generic(n, d, false));
            if let (Ok(a), Ok(b)) = (a, b) {
                if a != b {
                    s.findings.push(format!(
                        "n={}; D={}: saturated {} vs literal {}",
                        ctx.show(n),
                        ctx.seg(d),
                        ctx.show(&a),
                        ctx.show(&b)
                    ));
                }
            }
        }
        s
    });
    let total = s.findings.len();
    s.findings.sort();
    s.findings.truncate(FINDINGS_LIMIT);
    s.findings.push(format!("divergent instances: {total} of {}", s.checked));
    s
}
