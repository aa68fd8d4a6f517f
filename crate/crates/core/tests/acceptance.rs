//! Acceptance suite. Prints one PASS/FAIL line per criterion and fails if
//! any criterion fails. Tolerances are exact throughout.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use fvdom_core::classical::{self, Poset};
use fvdom_core::commands::{run_command, Status};
use fvdom_core::completions::{directed_completion, round_ideal_completion, round_ideal_cross_check};
use fvdom_core::corpus::{classical_lorders, standard_corpus, CorpusEntry};
use fvdom_core::fixtures::{self, BUNDLED_JSON};
use fvdom_core::frame::{validate_frame, FrameDescription};
use fvdom_core::lorder::{
    algebraicity_report, continuity_report, enumerate_ideals, lorder_isomorphic, sub, way_below,
    EnumMode, LOrderedSet, LSubset, UpDown,
};
use fvdom_core::ltop::{
    is_super_compact, local_super_compactness, scott_topology, LTopology, LscMode, SuperCompactVerdict,
};
use fvdom_core::points::{
    check_sobrification, enumerate_points, is_sober, open_order, point_of_subset, sobrify, Point,
};
use fvdom_core::verify::{verify_items, Outcome};
use fvdom_core::workspace::{Kind, Workspace};
use fvdom_core::{Budget, Elt, Error, Frame};

type Fails = Vec<String>;

fn expect(fails: &mut Fails, ok: bool, what: impl FnOnce() -> String) {
    if !ok {
        fails.push(what());
    }
}

fn budget() -> Budget {
    Budget::default()
}

// ---- independent oracles, written against the frame operations only ----

/// All vectors in `L^n`.
fn all_vectors(f: &Frame, n: usize) -> Vec<Vec<Elt>> {
    let els: Vec<Elt> = f.elements().collect();
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| els.iter().map(move |&e| [v.clone(), vec![e]].concat())).collect();
    }
    out
}

fn join_all(f: &Frame, it: impl IntoIterator<Item = Elt>) -> Elt {
    it.into_iter().fold(f.bottom(), |a, b| f.join(a, b))
}

fn meet_all(f: &Frame, it: impl IntoIterator<Item = Elt>) -> Elt {
    it.into_iter().fold(f.top(), |a, b| f.meet(a, b))
}

/// Ideals of `p` with their suprema, straight from the definitions.
fn brute_ideals(p: &LOrderedSet) -> Vec<(Vec<Elt>, Option<usize>)> {
    let f = p.frame();
    let n = p.len();
    let mut out = Vec::new();
    for d in all_vectors(f, n) {
        let lower = (0..n).all(|x| (0..n).all(|y| f.leq(f.meet(d[y], p.e(x, y)), d[x])));
        let nonempty = join_all(f, d.iter().copied()) == f.top();
        let directed = (0..n).all(|x| {
            (0..n).all(|y| {
                let ub = join_all(f, (0..n).map(|z| f.meet(d[z], f.meet(p.e(x, z), p.e(y, z)))));
                f.leq(f.meet(d[x], d[y]), ub)
            })
        });
        if !(lower && nonempty && directed) {
            continue;
        }
        let sup = (0..n).find(|&s| {
            (0..n).all(|y| p.e(s, y) == meet_all(f, (0..n).map(|x| f.heyting(d[x], p.e(x, y)))))
        });
        out.push((d, sup));
    }
    out
}

/// Scott opens from the definition: upper sets with
/// `A(⊔I) = ⋁ A(x) ∧ I(x)` for every ideal with a supremum.
fn brute_scott(p: &LOrderedSet) -> BTreeSet<Vec<Elt>> {
    let f = p.frame();
    let n = p.len();
    let ideals: Vec<_> = brute_ideals(p).into_iter().filter_map(|(d, s)| s.map(|s| (d, s))).collect();
    all_vectors(f, n)
        .into_iter()
        .filter(|a| {
            (0..n).all(|x| (0..n).all(|y| f.leq(f.meet(a[x], p.e(x, y)), a[y])))
                && ideals.iter().all(|(d, s)| a[*s] == join_all(f, (0..n).map(|x| f.meet(a[x], d[x]))))
        })
        .collect()
}

fn opens_set(t: &LTopology) -> BTreeSet<Vec<Elt>> {
    t.raw_opens().iter().cloned().collect()
}

fn position(t: &LTopology, v: &[Elt]) -> Option<usize> {
    t.raw_opens().iter().position(|o| o.as_slice() == v)
}

/// (O1) constants, (O2) binary meets, (O3) joins; finite joins reduce to
/// binary joins plus the empty join, which is the constant `⊥`.
fn topology_violation(t: &LTopology) -> Option<String> {
    let f = t.frame();
    let n = t.carrier().len();
    let opens = opens_set(t);
    for a in f.elements() {
        if !opens.contains(&vec![a; n]) {
            return Some(format!("constant {} missing", f.name_of(a)));
        }
    }
    for u in &opens {
        for v in &opens {
            let m: Vec<Elt> = (0..n).map(|i| f.meet(u[i], v[i])).collect();
            let j: Vec<Elt> = (0..n).map(|i| f.join(u[i], v[i])).collect();
            if !opens.contains(&m) || !opens.contains(&j) {
                return Some("not closed under binary meets or joins".into());
            }
        }
    }
    None
}

fn sub_vec(f: &Frame, a: &[Elt], b: &[Elt]) -> Elt {
    meet_all(f, a.iter().zip(b).map(|(&x, &y)| f.heyting(x, y)))
}

/// (Lpt1) joins, (Lpt2') binary meets, (Lpt3) constants, and being an upper
/// set of `(O(X), sub)`.
fn point_violation(t: &LTopology, p: &Point) -> Option<String> {
    let f = t.frame();
    let n = t.carrier().len();
    let opens = t.raw_opens();
    let v = p.values();
    let at = |u: &[Elt]| v[position(t, u).expect("open")];
    for c in f.elements() {
        if at(&vec![c; n]) != c {
            return Some(format!("p({}_L) ≠ {}", f.name_of(c), f.name_of(c)));
        }
    }
    for (i, u) in opens.iter().enumerate() {
        for (j, w) in opens.iter().enumerate() {
            let m: Vec<Elt> = (0..n).map(|k| f.meet(u[k], w[k])).collect();
            let jn: Vec<Elt> = (0..n).map(|k| f.join(u[k], w[k])).collect();
            if at(&m) != f.meet(v[i], v[j]) {
                return Some("meets".into());
            }
            if at(&jn) != f.join(v[i], v[j]) {
                return Some("joins".into());
            }
            if !f.leq(f.meet(v[i], sub_vec(f, u, w)), v[j]) {
                return Some("not upper".into());
            }
        }
    }
    None
}

/// Meet and join in the order generated by a description, for checking
/// non-distributivity witnesses without the frame code.
fn lattice_ops(d: &FrameDescription) -> impl Fn(&str, &str, bool) -> Option<String> + '_ {
    let n = d.elements.len();
    let idx = move |s: &str| d.elements.iter().position(|e| e == s);
    let mut leq = vec![vec![false; n]; n];
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
    }
    for (l, u) in &d.relation {
        leq[idx(l).unwrap()][idx(u).unwrap()] = true;
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
    move |x: &str, y: &str, meet: bool| {
        let (x, y) = (idx(x)?, idx(y)?);
        let c: Vec<usize> =
            (0..n).filter(|&z| if meet { leq[z][x] && leq[z][y] } else { leq[x][z] && leq[y][z] }).collect();
        c.iter()
            .copied()
            .find(|&z| c.iter().all(|&w| if meet { leq[w][z] } else { leq[z][w] }))
            .map(|z| d.elements[z].clone())
    }
}

// ---- corpus ----

fn continuous_corpus() -> Vec<(CorpusEntry, bool)> {
    standard_corpus()
        .into_iter()
        .filter_map(|e| {
            let r = continuity_report(&e.order, &budget()).unwrap();
            r.is_continuous.then_some((e, r.is_ldcpo))
        })
        .collect()
}

// ---- criteria ----

fn c1(fails: &mut Fails) {
    let ws = Workspace::bundled();
    let p = ws.lorder("X6").unwrap();
    let f = p.frame().clone();
    let name = |e: Elt| f.name_of(e).to_string();
    let ideals = enumerate_ideals(&p, EnumMode::Ideals, &budget()).unwrap();
    let got: BTreeSet<(Vec<String>, Option<String>)> = ideals
        .iter()
        .map(|i| (i.set.values().iter().map(|&e| name(e)).collect(), i.sup.map(|s| p.carrier().name(s).into())))
        .collect();
    let table = [("1", Some("y")), ("a", None), ("b", None), ("0", Some("x"))];
    let want: BTreeSet<(Vec<String>, Option<String>)> =
        table.iter().map(|(y, s)| (vec!["1".into(), y.to_string()], s.map(String::from))).collect();
    expect(fails, ideals.len() == 4, || format!("{} ideals", ideals.len()));
    expect(fails, got == want, || format!("ideal table {got:?}"));
    let brute: BTreeSet<_> = brute_ideals(&p).into_iter().collect();
    let ours: BTreeSet<_> = ideals.iter().map(|i| (i.set.values().to_vec(), i.sup)).collect();
    expect(fails, brute == ours, || "ideals differ from the brute-force oracle".into());
    let wb = |x| way_below(&p, x, &budget()).unwrap().values().iter().map(|&e| name(e)).collect::<Vec<_>>();
    expect(fails, wb(0) == ["1", "0"], || format!("⇓x = {:?}", wb(0)));
    expect(fails, wb(1) == ["1", "1"], || format!("⇓y = {:?}", wb(1)));
    let r = continuity_report(&p, &budget()).unwrap();
    expect(fails, r.is_continuous, || "not continuous".into());
    expect(fails, !r.is_ldcpo, || "is an L-dcpo".into());
}

fn c2(fails: &mut Fails) {
    let ws = Workspace::bundled();
    for (name, count) in [("C3", Some(6)), ("L4", Some(9)), ("L5", None)] {
        let start = Instant::now();
        let f = ws.frame(name).unwrap();
        let p = LOrderedSet::from_frame(&f);
        let t = scott_topology(&p, &budget()).unwrap();
        let mut pairs = Vec::new();
        for a in f.elements() {
            for b in f.elements().filter(|&b| f.leq(b, a)) {
                pairs.push(f.elements().map(|x| f.join(f.meet(a, x), b)).collect::<Vec<Elt>>());
            }
        }
        let family: BTreeSet<Vec<Elt>> = pairs.iter().cloned().collect();
        let formula: usize = f.elements().map(|a| f.elements().filter(|&b| f.leq(b, a)).count()).sum();
        expect(fails, family.len() == pairs.len(), || format!("{name}: pairs not unique"));
        expect(fails, opens_set(&t) == family, || format!("{name}: σ ≠ {{(a ∧ id) ∨ b}}"));
        expect(fails, t.len() == formula, || format!("{name}: {} opens, formula {formula}", t.len()));
        if let Some(c) = count {
            expect(fails, t.len() == c, || format!("{name}: {} opens, expected {c}", t.len()));
        }
        expect(fails, brute_scott(&p) == opens_set(&t), || format!("{name}: brute-force Scott opens differ"));
        let el = start.elapsed();
        expect(fails, el < Duration::from_secs(5), || format!("{name}: {el:?}"));
    }
}

fn c3(fails: &mut Fails) {
    let f = fixtures::five_element();
    let p = LOrderedSet::from_frame(&f);
    let t = scott_topology(&p, &budget()).unwrap();
    let shift = |k: &str| {
        let k = f.elt(k).unwrap();
        p.subset(f.elements().map(|x| f.join(x, k)).collect()).unwrap()
    };
    let (a, b, c) = (shift("c"), shift("a"), shift("b"));
    let lhs = f.join(sub(&a, &b).unwrap(), sub(&a, &c).unwrap());
    let rhs = sub(&a, &b.join(&c).unwrap()).unwrap();
    expect(fails, f.name_of(lhs) == "c", || format!("sub(A,B) ∨ sub(A,C) = {}", f.name_of(lhs)));
    expect(fails, rhs == f.top(), || format!("sub(A,B ∨ C) = {}", f.name_of(rhs)));
    match is_super_compact(&t, &a).unwrap() {
        SuperCompactVerdict::Pair(i, j) => {
            let w = (t.open(i), t.open(j));
            expect(fails, w == (b.clone(), c.clone()) || w == (c.clone(), b.clone()), || {
                format!("witness ({}, {})", w.0.render(), w.1.render())
            });
        }
        v => fails.push(format!("verdict {v:?}")),
    }
}

fn c4(fails: &mut Fails) {
    let ws = Workspace::bundled();
    let x = ws.lorder("X6").unwrap();
    let l = ws.lorder("L4").unwrap();
    let sx = scott_topology(&x, &budget()).unwrap();
    let sl = scott_topology(&l, &budget()).unwrap();
    let iso = lorder_isomorphic(&open_order(&sl), &open_order(&sx), &budget()).unwrap();
    expect(fails, iso.is_found(), || "(σ(L4), sub) ≇ (σ(X6), sub)".into());
    let v = check_sobrification(&sx, &sl, &budget()).unwrap();
    expect(fails, v.holds, || format!("not a sobrification: {:?}", v.reason));
    let c = directed_completion(&x, &budget()).unwrap();
    let iso = lorder_isomorphic(&c.completion, &l, &budget()).unwrap();
    expect(fails, iso.is_found(), || "completion ≇ (L4, e)".into());
    let pts = enumerate_points(&sx, &budget()).unwrap();
    expect(fails, pts.len() == 4 && x.len() == 2, || format!("{} points, {} elements", pts.len(), x.len()));
}

fn c5(fails: &mut Fails) {
    let mut count = 0;
    for (e, ldcpo) in continuous_corpus() {
        let small = ["C2/", "C3/", "L4/"].iter().any(|s| e.label.starts_with(s));
        if !ldcpo || e.order.len() > 4 || !small {
            continue;
        }
        count += 1;
        let p = &e.order;
        let t = scott_topology(p, &budget()).unwrap();
        expect(fails, brute_scott(p) == opens_set(&t), || format!("{}: Scott opens differ from oracle", e.label));
        let back = t.specialization().unwrap();
        expect(fails, back.matrix() == p.matrix(), || format!("{}: Ω σ(P) ≠ P", e.label));
        let again = scott_topology(&back, &budget()).unwrap();
        expect(fails, opens_set(&again) == opens_set(&t), || format!("{}: σ Ω X ≠ O(X)", e.label));
        let lsc = local_super_compactness(&t, LscMode::Plain, &budget()).unwrap();
        expect(fails, lsc.holds, || format!("{}: not locally super-compact", e.label));
        expect(fails, is_sober(&t, &budget()).unwrap().sober, || format!("{}: not sober", e.label));
    }
    expect(fails, count >= 20, || format!("only {count} instances"));
    println!("    {count} continuous L-dcpos");
}

fn c6(fails: &mut Fails) {
    let mut count = 0;
    for (e, ldcpo) in continuous_corpus() {
        if !ldcpo {
            continue;
        }
        let p = &e.order;
        let alg = algebraicity_report(p, &budget()).unwrap();
        if !alg.is_algebraic {
            continue;
        }
        count += 1;
        let t = scott_topology(p, &budget()).unwrap();
        let base: Vec<LSubset> = alg.compact.iter().map(|&y| p.principal(y, UpDown::Up)).collect();
        expect(fails, base.iter().all(|b| t.contains(b)), || format!("{}: some ↑k is not open", e.label));
        expect(fails, base.iter().all(|b| is_super_compact(&t, b).unwrap().holds()), || {
            format!("{}: some ↑k is not super-compact", e.label)
        });
        expect(fails, t.is_base(&base).unwrap(), || format!("{}: {{↑k}} is not a base", e.label));
        let strong = local_super_compactness(&t, LscMode::Strong, &budget()).unwrap();
        expect(fails, strong.holds, || format!("{}: not strong locally super-compact", e.label));
        let pts = enumerate_points(&t, &budget()).unwrap();
        expect(fails, algebraicity_report(&pts.order, &budget()).unwrap().is_algebraic, || {
            format!("{}: point order not algebraic", e.label)
        });
        let f = t.frame();
        for a in t.opens().into_iter().filter(|a| is_super_compact(&t, a).unwrap().holds()) {
            let pa = point_of_subset(&t, &a).unwrap();
            let i = position(&t, a.values()).unwrap();
            for q in &pts.points {
                expect(fails, sub_vec(f, pa.values(), q.values()) == q.values()[i], || {
                    format!("{}: sub([A], p) ≠ p(A)", e.label)
                });
            }
        }
    }
    expect(fails, count > 0, || "no algebraic instances".into());
    println!("    {count} algebraic L-dcpos");
}

fn c7(fails: &mut Fails) {
    let mut count = 0;
    for (e, _) in continuous_corpus() {
        count += 1;
        let c = directed_completion(&e.order, &budget()).unwrap();
        let ri = round_ideal_completion(&e.order, &budget()).unwrap();
        expect(fails, lorder_isomorphic(&ri.order, &c.completion, &budget()).unwrap().is_found(), || {
            format!("{}: RI(P) ≇ completion", e.label)
        });
        let x = round_ideal_cross_check(&e.order, &c, &ri, &budget()).unwrap();
        expect(fails, x.mutually_inverse && x.order_isomorphism, || format!("{}: f, g", e.label));
    }
    println!("    {count} continuous instances");
}

fn c8(fails: &mut Fails) {
    let mut count = 0;
    for n in 1..=5 {
        for (i, (p, q)) in classical_lorders(n).into_iter().zip(classical::posets_up_to_iso(n)).enumerate() {
            count += 1;
            let l = format!("n{n}/#{i}");
            let f = p.frame().clone();
            let crisp = |v: &[Elt]| classical::crisp(&f, v);
            let ideals: BTreeSet<u32> = enumerate_ideals(&p, EnumMode::Ideals, &budget())
                .unwrap()
                .iter()
                .map(|i| crisp(i.set.values()))
                .collect();
            expect(fails, ideals == q.ideals().into_iter().collect(), || format!("{l}: ideals"));
            let t = scott_topology(&p, &budget()).unwrap();
            let ours: BTreeSet<u32> = t.raw_opens().iter().map(|o| crisp(o)).collect();
            expect(fails, ours == q.scott_opens().into_iter().collect(), || format!("{l}: Scott opens"));
            let space = q.scott_space();
            expect(fails, is_sober(&t, &budget()).unwrap().sober == space.is_sober(), || format!("{l}: sober"));
            let s = sobrify(&t, &budget()).unwrap();
            let cs = space.sobrification();
            expect(fails, Poset::from_lorder(&s.space.order).isomorphic(&cs.specialization()), || {
                format!("{l}: sobrification")
            });
            let r = continuity_report(&p, &budget()).unwrap();
            for x in 0..n {
                expect(fails, crisp(r.way_below(x).values()) == q.way_below_set(x), || format!("{l}: ⇓{x}"));
            }
            expect(fails, r.is_continuous == q.is_continuous(), || format!("{l}: continuity"));
            expect(fails, r.is_ldcpo == q.is_dcpo(), || format!("{l}: dcpo"));
            if r.is_ldcpo {
                let a = algebraicity_report(&p, &budget()).unwrap();
                expect(fails, a.is_algebraic == q.is_algebraic(), || format!("{l}: algebraicity"));
            }
            if r.is_continuous {
                let c = directed_completion(&p, &budget()).unwrap();
                expect(fails, Poset::from_lorder(&c.completion).isomorphic(&classical::directed_completion(&q)), || {
                    format!("{l}: directed completion")
                });
            }
        }
    }
    expect(fails, count >= 60, || format!("{count} posets"));
    println!("    {count} posets");
}

fn c9(fails: &mut Fails) {
    let ws = Workspace::bundled();
    let mut frames: Vec<Arc<Frame>> = Vec::new();
    for name in ws.names(Kind::Frame) {
        let f = ws.frame(&name).unwrap();
        expect(fails, f.len() <= 16, || format!("{name}: too large"));
        for a in f.elements() {
            for b in f.elements() {
                let h = f.heyting(a, b);
                expect(fails, f.leq(f.meet(a, h), b) && f.leq(b, h), || format!("{name}: a ∧ (a → b) ≤ b ≤ a → b"));
                for c in f.elements() {
                    expect(fails, f.leq(f.meet(a, c), b) == f.leq(c, h), || format!("{name}: adjunction"));
                }
            }
        }
        frames.push(f);
    }
    for d in [fixtures::m3_description(), fixtures::n5_description()] {
        match validate_frame(&d) {
            Err(Error::NotDistributive { a, b, c, lhs, rhs }) => {
                let op = lattice_ops(&d);
                let l = op(&b, &c, false).and_then(|bc| op(&a, &bc, true));
                let r = match (op(&a, &b, true), op(&a, &c, true)) {
                    (Some(ab), Some(ac)) => op(&ab, &ac, false),
                    _ => None,
                };
                expect(fails, l.as_ref() == Some(&lhs) && r.as_ref() == Some(&rhs) && lhs != rhs, || {
                    format!("{}: witness {a},{b},{c}", d.name)
                });
            }
            other => fails.push(format!("{}: {other:?}", d.name)),
        }
    }
    let mut spaces: Vec<LTopology> =
        frames.iter().map(|f| scott_topology(&LOrderedSet::from_frame(f), &budget()).unwrap()).collect();
    spaces.push(ws.space("SX6").unwrap());
    for e in standard_corpus() {
        spaces.push(scott_topology(&e.order, &budget()).unwrap());
    }
    let mut npoints = 0;
    for t in &spaces {
        expect(fails, topology_violation(t).is_none(), || format!("topology: {:?}", topology_violation(t)));
        let pts = enumerate_points(t, &budget()).unwrap();
        expect(fails, topology_violation(&pts.spectral).is_none(), || "spectral topology".into());
        for p in &pts.points {
            npoints += 1;
            expect(fails, point_violation(t, p).is_none(), || format!("point: {:?}", point_violation(t, p)));
        }
    }
    println!("    {} topologies, {npoints} points", spaces.len());
}

/// Single-value mutations of the bundled fixtures, as JSON pointer and new value.
fn mutations() -> Vec<(&'static str, serde_json::Value)> {
    use serde_json::json;
    vec![
        ("/lorders/X6/e/x/y", json!("a")),
        ("/lorders/X6/e/x/y", json!("b")),
        ("/lorders/X6/e/x/y", json!("0")),
        ("/lorders/X6/e/y/x", json!("a")),
        ("/lorders/X6/e/y/x", json!("b")),
        ("/lorders/X6/e/y/x", json!("1")),
        ("/frames/L4/covers/0/0", json!("b")),
        ("/frames/L4/covers/3/0", json!("a")),
        ("/frames/L4/elements/1", json!("d")),
        ("/frames/L5/covers/2/1", json!("1")),
        ("/frames/L5/covers/4/1", json!("b")),
        ("/frames/C3/chain", json!(4)),
        ("/frames/C3/chain", json!(2)),
    ]
}

fn c10(fails: &mut Fails) {
    let ws = Workspace::bundled();
    let r = run_command(&ws, "verify-paper", &[]).unwrap();
    expect(fails, r.status == Status::Holds, || format!("verify-paper:\n{}", r.text));
    let mut tiny = Workspace::bundled();
    tiny.budget = Budget { enumeration: 1, search: 1 };
    let r = verify_items(&tiny, &[1]);
    expect(fails, matches!(r.items[0].outcome, Outcome::Budget(_)), || "budget 1 is not a budget outcome".into());
    let base: serde_json::Value = serde_json::from_str(BUNDLED_JSON).unwrap();
    let muts = mutations();
    expect(fails, muts.len() >= 10, || "fewer than 10 mutations".into());
    for (path, value) in muts {
        let mut doc = base.clone();
        let slot = doc.pointer_mut(path).expect("mutation path exists");
        expect(fails, *slot != value, || format!("{path}: mutation changes nothing"));
        *slot = value.clone();
        let ws = match Workspace::from_str("mutant", &doc.to_string()) {
            Ok(ws) => ws,
            Err(e) => {
                fails.push(format!("{path} = {value}: does not load: {e}"));
                continue;
            }
        };
        let r = verify_items(&ws, &[1, 2, 3, 4, 9]);
        let failed = r.failed();
        expect(fails, !failed.is_empty(), || format!("{path} = {value}: no FAIL\n{}", r.render()));
        println!("    {path} = {value}: FAIL on items {failed:?}");
    }
}

// Runs without the libtest harness so the report is never captured.
fn main() -> std::process::ExitCode {
    type Criterion = (usize, &'static str, u64, fn(&mut Fails));
    let criteria: [Criterion; 10] = [
        (1, "X6 ideals, way-below and continuity", 5, c1),
        (2, "Scott opens of (L, e_L) on C3, L4, L5", 15, c2),
        (3, "id ∨ c is not super-compact in σ(L5)", 1, c3),
        (4, "L4 is the directed completion of X6", 30, c4),
        (5, "Scott/specialization round trip", 300, c5),
        (6, "algebraic suite", 300, c6),
        (7, "round-ideal cross-validation", 300, c7),
        (8, "classical degeneration oracle", 600, c8),
        (9, "axiom suites", 60, c9),
        (10, "verify-paper and fixture mutations", 600, c10),
    ];
    let mut failed = Vec::new();
    for (n, title, limit, run) in criteria {
        let start = Instant::now();
        let mut fails = Fails::new();
        if let Err(e) = catch_unwind(AssertUnwindSafe(|| run(&mut fails))) {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            fails.push(format!("panicked: {}", msg.unwrap_or_default()));
        }
        let el = start.elapsed();
        if el > Duration::from_secs(limit) {
            fails.push(format!("took {el:?}, limit {limit} s"));
        }
        let tag = if fails.is_empty() { "PASS" } else { "FAIL" };
        println!("{tag} criterion {n}: {title} ({:.2} s, limit {limit} s)", el.as_secs_f64());
        for f in fails.iter().take(20) {
            println!("    {f}");
        }
        if !fails.is_empty() {
            failed.push(n);
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed.len(), criteria.len());
    if failed.is_empty() {
        std::process::ExitCode::SUCCESS
    } else {
        std::process::ExitCode::FAILURE
    }
}
