//! The worked examples and theorem checks behind `verify-paper`.
//!
//! Items 1 to 4 and 9 read their objects (`L4`, `L5`, `X6`, `C3` and every
//! frame) from the workspace, so a corrupted fixture shows up as a FAIL.
//! Items 5 to 8 run over generated corpora.

use std::cell::OnceCell;
use std::collections::BTreeSet;
use std::fmt::Write;

use crate::budget::Budget;
use crate::classical::{self, Poset};
use crate::completions::{directed_completion, round_ideal_completion, round_ideal_cross_check};
use crate::corpus::{classical_lorders, standard_corpus};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::frame::{validate_frame, Elt, Frame, FrameDescription};
use crate::lorder::{
    algebraicity_report, continuity_report, enumerate_ideals, lorder_isomorphic, sub, sub_raw,
    way_below, ContinuityReport, EnumMode, LOrderedSet, LSubset, UpDown,
};
use crate::ltop::{
    is_super_compact, local_super_compactness, scott_topology, scott_topology_directed_form,
    cross_checkable, LTopology, LscMode, SuperCompactVerdict,
};
use crate::points::{
    check_sobrification, enumerate_points, is_sober, open_order, point_of_subset, point_violation,
    sobrify,
};
use crate::workspace::{Kind, Workspace};

pub const ITEMS: [(usize, &str); 9] = [
    (1, "ideals, way-below and continuity of X6"),
    (2, "Scott opens of (L, e_L) are (a ∧ id) ∨ b"),
    (3, "id ∨ c is not super-compact in σ(L5)"),
    (4, "L4 is a directed completion of X6"),
    (5, "Scott/specialization round trip on continuous L-dcpos"),
    (6, "algebraic L-dcpos and strong local super-compactness"),
    (7, "round-ideal completion agrees with the point completion"),
    (8, "chain(2) agrees with the classical oracle"),
    (9, "frame, topology and point axioms"),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(Vec<String>),
    /// Stopped by a budget; neither a pass nor a fail.
    Budget(Error),
}

#[derive(Clone, Debug)]
pub struct ItemResult {
    pub item: usize,
    pub title: &'static str,
    pub outcome: Outcome,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub items: Vec<ItemResult>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|r| r.outcome == Outcome::Pass)
    }

    pub fn any_budget(&self) -> bool {
        self.items.iter().any(|r| matches!(r.outcome, Outcome::Budget(_)))
    }

    pub fn failed(&self) -> Vec<usize> {
        self.items.iter().filter(|r| matches!(r.outcome, Outcome::Fail(_))).map(|r| r.item).collect()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for r in &self.items {
            let tag = match &r.outcome {
                Outcome::Pass => "PASS",
                Outcome::Fail(_) => "FAIL",
                Outcome::Budget(_) => "BUDGET",
            };
            writeln!(out, "{tag} item {}: {}", r.item, r.title).unwrap();
            for n in &r.notes {
                writeln!(out, "    {n}").unwrap();
            }
            match &r.outcome {
                Outcome::Pass => {}
                Outcome::Fail(ws) => {
                    for w in ws.iter().take(10) {
                        writeln!(out, "    witness: {w}").unwrap();
                    }
                    if ws.len() > 10 {
                        writeln!(out, "    ... {} more", ws.len() - 10).unwrap();
                    }
                }
                Outcome::Budget(e) => writeln!(out, "    {e}").unwrap(),
            }
        }
        let pass = self.items.iter().filter(|r| r.outcome == Outcome::Pass).count();
        writeln!(out, "{pass}/{} items passed", self.items.len()).unwrap();
        out
    }
}

/// Collects failures and notes for one item.
#[derive(Default)]
struct Check {
    fails: Vec<String>,
    notes: Vec<String>,
}

impl Check {
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.fails.push(what());
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

struct Analyzed {
    label: String,
    order: LOrderedSet,
    report: ContinuityReport,
}

struct Ctx<'a> {
    ws: &'a Workspace,
    budget: Budget,
    corpus: OnceCell<Vec<Analyzed>>,
}

impl Ctx<'_> {
    fn corpus(&self) -> Result<&[Analyzed]> {
        if let Some(c) = self.corpus.get() {
            return Ok(c);
        }
        let mut out = Vec::new();
        for entry in standard_corpus() {
            let report = continuity_report(&entry.order, &self.budget)?;
            out.push(Analyzed { label: entry.label, order: entry.order, report });
        }
        Ok(self.corpus.get_or_init(|| out))
    }
}

/// Runs all nine items.
pub fn verify_paper(ws: &Workspace) -> VerifyReport {
    verify_items(ws, &[1, 2, 3, 4, 5, 6, 7, 8, 9])
}

/// Runs the listed items, in order.
pub fn verify_items(ws: &Workspace, items: &[usize]) -> VerifyReport {
    let ctx = Ctx { ws, budget: ws.budget, corpus: OnceCell::new() };
    let mut out = Vec::new();
    for &item in items {
        let Some(&(_, title)) = ITEMS.iter().find(|(i, _)| *i == item) else {
            continue;
        };
        let mut c = Check::default();
        let res = match item {
            1 => item1(&ctx, &mut c),
            2 => item2(&ctx, &mut c),
            3 => item3(&ctx, &mut c),
            4 => item4(&ctx, &mut c),
            5 => item5(&ctx, &mut c),
            6 => item6(&ctx, &mut c),
            7 => item7(&ctx, &mut c),
            8 => item8(&ctx, &mut c),
            _ => item9(&ctx, &mut c),
        };
        let outcome = match res {
            Err(e) if e.is_budget() => Outcome::Budget(e),
            Err(e) => {
                c.fails.push(format!("error: {e}"));
                Outcome::Fail(c.fails)
            }
            Ok(()) if c.fails.is_empty() => Outcome::Pass,
            Ok(()) => Outcome::Fail(c.fails),
        };
        out.push(ItemResult { item, title, outcome, notes: c.notes });
    }
    VerifyReport { items: out }
}

fn names(f: &Frame, v: &[Elt]) -> Vec<String> {
    v.iter().map(|&e| f.name_of(e).to_string()).collect()
}

fn item1(ctx: &Ctx, c: &mut Check) -> Result<()> {
    let p = ctx.ws.lorder("X6")?;
    let l4 = ctx.ws.frame("L4")?;
    c.expect(p.frame().same_structure(&l4), || "X6 is not over L4".into());
    let f = p.frame();
    let carrier: Vec<&str> = p.carrier().names().iter().map(String::as_str).collect();
    c.expect(carrier == ["x", "y"], || format!("carrier is {carrier:?}"));
    let ideals = enumerate_ideals(&p, EnumMode::Ideals, &ctx.budget)?;
    let got: BTreeSet<(Vec<String>, Option<String>)> = ideals
        .iter()
        .map(|i| (names(f, i.set.values()), i.sup.map(|s| p.carrier().name(s).to_string())))
        .collect();
    let row = |x: &str, y: &str, s: Option<&str>| (vec![x.to_string(), y.to_string()], s.map(String::from));
    // columns I1..I4: y takes 1, a, b, 0
    let want: BTreeSet<_> =
        [row("1", "1", Some("y")), row("1", "a", None), row("1", "b", None), row("1", "0", Some("x"))].into();
    c.expect(got == want, || format!("ideals {got:?}, expected {want:?}"));
    c.note(format!("{} ideals", ideals.len()));
    let wb = |i: usize| way_below(&p, i, &ctx.budget).map(|w| names(f, w.values()));
    c.expect(wb(0)? == ["1", "0"], || format!("⇓x = {:?}", wb(0).unwrap_or_default()));
    c.expect(wb(1)? == ["1", "1"], || format!("⇓y = {:?}", wb(1).unwrap_or_default()));
    let r = continuity_report(&p, &ctx.budget)?;
    c.expect(r.is_continuous, || "X6 is not continuous".into());
    c.expect(!r.is_ldcpo, || "X6 is an L-dcpo".into());
    Ok(())
}

/// The opens `(a ∧ id) ∨ b` for `b ≤ a`, with their pairs.
pub fn frame_scott_family(f: &Frame) -> Vec<((Elt, Elt), Vec<Elt>)> {
    let mut out = Vec::new();
    for a in f.elements() {
        for b in f.elements().filter(|&b| f.leq(b, a)) {
            out.push(((b, a), f.elements().map(|x| f.join(f.meet(a, x), b)).collect()));
        }
    }
    out
}

fn item2(ctx: &Ctx, c: &mut Check) -> Result<()> {
    for (name, count) in [("C3", 6), ("L4", 9), ("L5", 14)] {
        let f = ctx.ws.frame(name)?;
        let p = LOrderedSet::from_frame(&f);
        let t = scott_topology(&p, &ctx.budget)?;
        let family = frame_scott_family(&f);
        let formula: usize = f.elements().map(|a| f.down(a).len()).sum();
        let distinct: BTreeSet<&Vec<Elt>> = family.iter().map(|(_, v)| v).collect();
        c.expect(distinct.len() == family.len(), || format!("{name}: two pairs give the same open"));
        for ((b, a), v) in &family {
            c.expect(t.position(v).is_some(), || {
                format!("{name}: ({} ∧ id) ∨ {} is not Scott open", f.name_of(*a), f.name_of(*b))
            });
        }
        c.expect(t.len() == family.len(), || format!("{name}: {} opens, {} pairs", t.len(), family.len()));
        c.expect(t.len() == formula, || format!("{name}: {} opens, Σ|↓a| = {formula}", t.len()));
        c.expect(t.len() == count, || format!("{name}: {} opens, expected {count}", t.len()));
        if cross_checkable(&p) {
            let d = scott_topology_directed_form(&p, &ctx.budget)?;
            c.expect(d == t, || format!("{name}: directed-set form disagrees"));
        }
        c.note(format!("{name}: {} opens", t.len()));
    }
    Ok(())
}

fn item3(ctx: &Ctx, c: &mut Check) -> Result<()> {
    let f = ctx.ws.frame("L5")?;
    let p = LOrderedSet::from_frame(&f);
    let t = scott_topology(&p, &ctx.budget)?;
    let shift = |k: &str| -> Result<LSubset> {
        let k = f.elt(k)?;
        p.subset(f.elements().map(|x| f.join(x, k)).collect())
    };
    let (a, b, cc) = (shift("c")?, shift("a")?, shift("b")?);
    for (n, s) in [("A", &a), ("B", &b), ("C", &cc)] {
        c.expect(t.contains(s), || format!("{n} = {} is not Scott open", s.render()));
    }
    let lhs = f.join(sub(&a, &b)?, sub(&a, &cc)?);
    let bc = b.join(&cc)?;
    let rhs = sub(&a, &bc)?;
    c.expect(f.name_of(lhs) == "c", || format!("sub(A,B) ∨ sub(A,C) = {}", f.name_of(lhs)));
    c.expect(rhs == f.top(), || format!("sub(A,B ∨ C) = {}", f.name_of(rhs)));
    c.expect(bc == a, || "B ∨ C ≠ A".into());
    match is_super_compact(&t, &a)? {
        SuperCompactVerdict::Pair(i, j) => {
            let (u, v) = (t.open(i), t.open(j));
            let pair_ok = (u == b && v == cc) || (u == cc && v == b);
            c.expect(pair_ok, || format!("witness pair ({}, {})", u.render(), v.render()));
            c.note(format!("witness: sub(A, {} ∨ {}) ≠ join of subs", u.render(), v.render()));
        }
        v => c.expect(false, || format!("verdict {v:?}")),
    }
    Ok(())
}

fn item4(ctx: &Ctx, c: &mut Check) -> Result<()> {
    let x = ctx.ws.lorder("X6")?;
    let l = ctx.ws.lorder("L4")?;
    let sx = scott_topology(&x, &ctx.budget)?;
    let sl = scott_topology(&l, &ctx.budget)?;
    c.note(format!("|σ(X6)| = {}, |σ(L4)| = {}", sx.len(), sl.len()));
    let iso = lorder_isomorphic(&open_order(&sl), &open_order(&sx), &ctx.budget)?;
    c.expect(iso.is_found(), || format!("(σ(L4), sub) ≇ (σ(X6), sub): {iso:?}"));
    let sob = check_sobrification(&sx, &sl, &ctx.budget)?;
    c.expect(sob.holds, || format!("Σ L4 is not a sobrification of Σ X6: {:?}", sob.reason));
    let done = directed_completion(&x, &ctx.budget)?;
    c.expect(done.certificates.all(), || format!("certificates {:?}", done.certificates));
    let iso = lorder_isomorphic(&done.completion, &l, &ctx.budget)?;
    c.expect(iso.is_found(), || format!("completion ≇ (L4, e): {iso:?}"));
    let pts = enumerate_points(&sx, &ctx.budget)?;
    c.expect(pts.len() == 4, || format!("{} points", pts.len()));
    c.expect(x.len() == 2, || format!("{} carrier elements", x.len()));
    let sober = is_sober(&sx, &ctx.budget)?;
    c.expect(!sober.sober, || "Σ X6 is sober".into());
    c.note(format!("pt σ(X6) has {} points, X6 has {}", pts.len(), x.len()));
    Ok(())
}

fn small_corpus_frame(label: &str) -> bool {
    ["C2/", "C3/", "L4/"].iter().any(|p| label.starts_with(p))
}

fn item5(ctx: &Ctx, c: &mut Check) -> Result<()> {
    let mut count = 0;
    for a in ctx.corpus()? {
        if !a.report.is_continuous_ldcpo || a.order.len() > 4 || !small_corpus_frame(&a.label) {
            continue;
        }
        count += 1;
        let t = scott_topology(&a.order, &ctx.budget)?;
        let back = t.specialization()?;
        c.expect(back.matrix() == a.order.matrix(), || format!("{}: Ω σ(P) ≠ P", a.label));
        let again = scott_topology(&back, &ctx.budget)?;
        c.expect(again == t, || format!("{}: σ Ω(X) ≠ O(X)", a.label));
        let lsc = local_super_compactness(&t, LscMode::Plain, &ctx.budget)?;
        c.expect(lsc.holds, || format!("{}: Σ P is not locally super-compact", a.label));
        let sober = is_sober(&t, &ctx.budget)?;
        c.expect(sober.sober, || format!("{}: Σ P is not sober", a.label));
    }
    c.expect(count >= 20, || format!("only {count} continuous L-dcpos"));
    c.note(format!("{count} continuous L-dcpos"));
    Ok(())
}

fn item6(ctx: &Ctx, c: &mut Check) -> Result<()> {
    let mut count = 0;
    for a in ctx.corpus()? {
        if !a.report.is_ldcpo {
            continue;
        }
        let alg = algebraicity_report(&a.order, &ctx.budget)?;
        if !alg.is_algebraic {
            continue;
        }
        count += 1;
        let t = scott_topology(&a.order, &ctx.budget)?;
        let base: Vec<LSubset> = alg.compact.iter().map(|&y| a.order.principal(y, UpDown::Up)).collect();
        for b in &base {
            c.expect(t.contains(b), || format!("{}: ↑k = {} is not open", a.label, b.render()));
            c.expect(is_super_compact(&t, b)?.holds(), || {
                format!("{}: ↑k = {} is not super-compact", a.label, b.render())
            });
        }
        if base.iter().all(|b| t.contains(b)) {
            c.expect(t.is_base(&base)?, || format!("{}: {{↑k}} is not a base", a.label));
        }
        let strong = local_super_compactness(&t, LscMode::Strong, &ctx.budget)?;
        c.expect(strong.holds, || format!("{}: not strong locally super-compact", a.label));
        let pts = enumerate_points(&t, &ctx.budget)?;
        let palg = algebraicity_report(&pts.order, &ctx.budget)?;
        c.expect(palg.is_algebraic, || format!("{}: (pt σ(P), sub) is not algebraic", a.label));
        let f = t.frame();
        for sc in &strong.super_compact {
            let pa = point_of_subset(&t, sc)?;
            let pos = t.position(sc.values()).expect("super-compact opens are opens");
            for q in &pts.points {
                c.expect(sub_raw(f, pa.values(), q.values()) == q.values()[pos], || {
                    format!("{}: sub([A], p) ≠ p(A) for A = {}", a.label, sc.render())
                });
            }
        }
    }
    c.note(format!("{count} algebraic L-dcpos"));
    c.expect(count > 0, || "no algebraic instances".into());
    Ok(())
}

fn item7(ctx: &Ctx, c: &mut Check) -> Result<()> {
    let mut count = 0;
    for a in ctx.corpus()? {
        if !a.report.is_continuous {
            continue;
        }
        count += 1;
        let done = directed_completion(&a.order, &ctx.budget)?;
        let ri = round_ideal_completion(&a.order, &ctx.budget)?;
        let iso = lorder_isomorphic(&ri.order, &done.completion, &ctx.budget)?;
        c.expect(iso.is_found(), || format!("{}: RI(P) ≇ completion", a.label));
        let cross = round_ideal_cross_check(&a.order, &done, &ri, &ctx.budget)?;
        c.expect(cross.mutually_inverse, || format!("{}: f and g are not mutually inverse", a.label));
        c.expect(cross.order_isomorphism, || format!("{}: f is not an order isomorphism", a.label));
    }
    c.note(format!("{count} continuous instances"));
    Ok(())
}

fn item8(ctx: &Ctx, c: &mut Check) -> Result<()> {
    let mut count = 0;
    for n in 1..=5 {
        for (i, (p, q)) in classical_lorders(n).into_iter().zip(classical::posets_up_to_iso(n)).enumerate() {
            count += 1;
            let label = format!("n{n}/#{i}");
            let f = p.frame().clone();
            let t = scott_topology(&p, &ctx.budget)?;
            let mut ours: Vec<u32> = t.raw_opens().iter().map(|o| classical::crisp(&f, o)).collect();
            ours.sort_unstable();
            let mut theirs = q.scott_opens();
            theirs.sort_unstable();
            c.expect(ours == theirs, || format!("{label}: Scott opens differ"));
            let space = q.scott_space();
            let sober = is_sober(&t, &ctx.budget)?;
            c.expect(sober.sober == space.is_sober(), || format!("{label}: sobriety differs"));
            let sob = sobrify(&t, &ctx.budget)?;
            let cs = space.sobrification();
            c.expect(sob.space.len() == cs.len(), || {
                format!("{label}: {} points vs {} irreducible closed sets", sob.space.len(), cs.len())
            });
            c.expect(Poset::from_lorder(&sob.space.order).isomorphic(&cs.specialization()), || {
                format!("{label}: sobrifications differ")
            });
            let r = continuity_report(&p, &ctx.budget)?;
            for x in 0..n {
                let w = classical::crisp(&f, r.way_below(x).values());
                c.expect(w == q.way_below_set(x), || format!("{label}: ⇓{x} differs"));
            }
            c.expect(r.is_continuous == q.is_continuous(), || format!("{label}: continuity differs"));
            c.expect(r.is_ldcpo == q.is_dcpo(), || format!("{label}: dcpo differs"));
            if r.is_ldcpo {
                let alg = algebraicity_report(&p, &ctx.budget)?;
                c.expect(alg.is_algebraic == q.is_algebraic(), || format!("{label}: algebraicity differs"));
            }
            if r.is_continuous {
                let done = directed_completion(&p, &ctx.budget)?;
                let ours = Poset::from_lorder(&done.completion);
                c.expect(ours.isomorphic(&classical::directed_completion(&q)), || {
                    format!("{label}: directed completions differ")
                });
            }
        }
    }
    c.expect(count >= 60, || format!("only {count} posets"));
    c.note(format!("{count} posets"));
    Ok(())
}

/// Meet-distributivity witness check against the raw order of a
/// description, independent of the frame code.
fn distributivity_witness_holds(d: &FrameDescription, err: &Error) -> bool {
    let Error::NotDistributive { a, b, c, lhs, rhs } = err else {
        return false;
    };
    let n = d.elements.len();
    let idx = |s: &str| d.elements.iter().position(|e| e == s);
    let mut leq = vec![vec![false; n]; n];
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
    }
    for (l, u) in &d.relation {
        if let (Some(l), Some(u)) = (idx(l), idx(u)) {
            leq[l][u] = true;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if leq[i][k] && leq[k][j] {
                    leq[i][j] = true;
                }
            }
        }
    }
    let bound = |x: usize, y: usize, lower: bool| {
        let cands: Vec<usize> =
            (0..n).filter(|&z| if lower { leq[z][x] && leq[z][y] } else { leq[x][z] && leq[y][z] }).collect();
        cands.iter().copied().find(|&z| cands.iter().all(|&w| if lower { leq[w][z] } else { leq[z][w] }))
    };
    let meet = |x, y| bound(x, y, true);
    let join = |x, y| bound(x, y, false);
    let (Some(a), Some(b), Some(c), Some(lhs), Some(rhs)) = (idx(a), idx(b), idx(c), idx(lhs), idx(rhs)) else {
        return false;
    };
    let l = join(b, c).and_then(|bc| meet(a, bc));
    let r = match (meet(a, b), meet(a, c)) {
        (Some(ab), Some(ac)) => join(ab, ac),
        _ => None,
    };
    l == Some(lhs) && r == Some(rhs) && lhs != rhs
}

fn item9(ctx: &Ctx, c: &mut Check) -> Result<()> {
    let mut frames = Vec::new();
    for name in ctx.ws.names(Kind::Frame) {
        let f = ctx.ws.frame(&name)?;
        c.expect(f.len() <= 16, || format!("{name} has {} elements", f.len()));
        for a in f.elements() {
            for b in f.elements() {
                for x in f.elements() {
                    c.expect(f.leq(f.meet(a, x), b) == f.leq(x, f.heyting(a, b)), || {
                        format!("{name}: adjunction fails at {}, {}, {}", f.name_of(a), f.name_of(b), f.name_of(x))
                    });
                    let lhs = f.meet(a, f.join(b, x));
                    let rhs = f.join(f.meet(a, b), f.meet(a, x));
                    c.expect(lhs == rhs, || format!("{name}: distributivity fails"));
                }
            }
        }
        frames.push(f);
    }
    c.note(format!("{} frames", frames.len()));
    for d in [fixtures::m3_description(), fixtures::n5_description()] {
        match validate_frame(&d) {
            Ok(_) => c.expect(false, || format!("{} accepted", d.name)),
            Err(e) => {
                c.expect(distributivity_witness_holds(&d, &e), || format!("{}: bad witness {e}", d.name));
                c.note(format!("{} rejected: {e}", d.name));
            }
        }
    }
    let mut spaces: Vec<(String, LTopology)> = Vec::new();
    for f in &frames {
        spaces.push((format!("σ({})", f.name()), scott_topology(&LOrderedSet::from_frame(f), &ctx.budget)?));
    }
    for name in ctx.ws.names(Kind::Lorder) {
        spaces.push((format!("σ({name})"), scott_topology(&ctx.ws.lorder(&name)?, &ctx.budget)?));
    }
    for name in ctx.ws.names(Kind::Space) {
        spaces.push((name.clone(), ctx.ws.space(&name)?));
    }
    for a in ctx.corpus()? {
        spaces.push((format!("σ({})", a.label), scott_topology(&a.order, &ctx.budget)?));
    }
    let mut npoints = 0;
    let nspaces = spaces.len();
    for (label, t) in spaces {
        c.expect(t.axiom_violation().is_none(), || format!("{label}: {:?}", t.axiom_violation()));
        let pts = enumerate_points(&t, &ctx.budget)?;
        c.expect(pts.spectral.axiom_violation().is_none(), || format!("pt {label}: spectral topology"));
        for p in &pts.points {
            npoints += 1;
            c.expect(point_violation(&t, p).is_none(), || format!("{label}: {:?}", point_violation(&t, p)));
        }
    }
    c.note(format!("{nspaces} topologies, {npoints} points"));
    Ok(())
}
