//! The `fvdom` commands as functions from a workspace to a text report.

use std::fmt::Write;

use crate::completions::{
    check_directed_completion, directed_completion, round_ideal_completion, round_ideal_cross_check,
};
use crate::dot::{frame_dot, lorder_dot, open_lattice_dot};
use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::lorder::{
    algebraicity_report, continuity_report, lorder_isomorphic, Directedness, IsoOutcome, LMap,
    LOrderedSet, LSubset,
};
use crate::ltop::{scott_topology, LTopology};
use crate::points::{
    check_sobrification, is_sober, open_order, quasihomeo_check, sobrify, PointSpace, QuasiMode,
};
use crate::verify::{frame_scott_family, verify_items, ITEMS};
use crate::workspace::{Kind, Workspace};

pub const COMMANDS: [&str; 10] =
    ["frame-check", "analyze", "scott", "sobrify", "points", "complete", "ri-complete", "iso", "quasi", "verify-paper"];

/// How a command ended; maps to the process exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    /// Success or a true verdict.
    Holds,
    /// A false verdict.
    Fails,
    /// Finished, but some check could not complete within its budget.
    Incomplete,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Holds => 0,
            Status::Fails => 1,
            Status::Incomplete => 2,
        }
    }

    fn of(b: bool) -> Status {
        if b {
            Status::Holds
        } else {
            Status::Fails
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub text: String,
    pub status: Status,
    /// A DOT rendering of the command's main object, when there is one.
    pub dot: Option<String>,
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn usage(command: &str, shape: &str) -> Error {
    Error::Usage(format!("usage: fvdom {command} {shape}"))
}

pub fn run_command(ws: &Workspace, command: &str, args: &[String]) -> Result<Report> {
    let one = |shape: &str| -> Result<&str> {
        match args {
            [a] => Ok(a.as_str()),
            _ => Err(usage(command, shape)),
        }
    };
    match command {
        "frame-check" => frame_check(ws, args),
        "analyze" => analyze(ws, one("<lorder>")?),
        "scott" => scott(ws, one("<lorder>")?),
        "points" => points(ws, one("<space>")?),
        "sobrify" => match args {
            [x] => sobrify_cmd(ws, x),
            [x, y] => sobrification_check(ws, x, y),
            _ => Err(usage(command, "<space> [<candidate sobrification>]")),
        },
        "complete" => match args {
            [p] => complete(ws, p),
            [p, q, j] => completion_check(ws, p, q, j),
            _ => Err(usage(command, "<lorder> [<lorder> <map>]")),
        },
        "ri-complete" => ri_complete(ws, one("<lorder>")?),
        "iso" => match args {
            [a, b] => iso(ws, a, b),
            _ => Err(usage(command, "<lorder|space> <lorder|space>")),
        },
        "quasi" => match args {
            [f] => quasi(ws, f, QuasiMode::Quasi),
            [f, m] if m == "strict" => quasi(ws, f, QuasiMode::Strict),
            _ => Err(usage(command, "<map> [strict]")),
        },
        "verify-paper" => verify(ws, args),
        other => Err(Error::UnknownCommand(other.to_string())),
    }
}

fn table(header: &[String], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let width: Vec<usize> = (0..cols)
        .map(|c| rows.iter().map(|r| r[c].chars().count()).chain([header[c].chars().count()]).max().unwrap_or(0))
        .collect();
    let line = |cells: &[String]| {
        let mut s = String::from(" ");
        for (c, cell) in cells.iter().enumerate() {
            let pad = width[c] - cell.chars().count();
            write!(s, " {cell}{}", " ".repeat(pad)).unwrap();
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(header);
    for r in rows {
        out.push_str(&line(r));
    }
    out
}

fn matrix_text(p: &LOrderedSet) -> String {
    let f = p.frame();
    let names = p.carrier().names();
    let mut header = vec!["e".to_string()];
    header.extend(names.iter().cloned());
    let rows: Vec<Vec<String>> = (0..p.len())
        .map(|x| {
            let mut r = vec![names[x].clone()];
            r.extend((0..p.len()).map(|y| f.name_of(p.e(x, y)).to_string()));
            r
        })
        .collect();
    table(&header, &rows)
}

fn frame_text(f: &Frame) -> String {
    let mut out = String::new();
    writeln!(out, "  elements: {}", f.names().join(", ")).unwrap();
    let covers: Vec<String> =
        f.covers().iter().map(|&(a, b)| format!("{} < {}", f.name_of(a), f.name_of(b))).collect();
    writeln!(out, "  covers: {}", covers.join(", ")).unwrap();
    writeln!(out, "  implication a → b (rows a, columns b):").unwrap();
    let mut header = vec!["→".to_string()];
    header.extend(f.names().iter().cloned());
    let rows: Vec<Vec<String>> = f
        .elements()
        .map(|a| {
            let mut r = vec![f.name_of(a).to_string()];
            r.extend(f.elements().map(|b| f.name_of(f.heyting(a, b)).to_string()));
            r
        })
        .collect();
    out.push_str(&table(&header, &rows));
    out
}

fn is_validation_error(e: &Error) -> bool {
    matches!(
        e,
        Error::NotAPartialOrder(..)
            | Error::NotComplete(_)
            | Error::NotDistributive { .. }
            | Error::ElementNotFound(_)
            | Error::DuplicateElement(_)
            | Error::BadBuilderSpec(_)
    )
}

fn frame_check(ws: &Workspace, args: &[String]) -> Result<Report> {
    let names: Vec<String> = if args.is_empty() { ws.names(Kind::Frame) } else { args.to_vec() };
    let mut text = String::new();
    let mut ok = true;
    let mut dot = None;
    for name in &names {
        if ws.kind_of(name) != Some(Kind::Frame) {
            return Err(Error::UnresolvedReference(format!("unknown frame `{name}`")));
        }
        match ws.frame(name) {
            Ok(f) => {
                writeln!(text, "frame {name}: valid, {} elements", f.len()).unwrap();
                text.push_str(&frame_text(&f));
                dot.get_or_insert_with(|| frame_dot(&f));
            }
            Err(e) if is_validation_error(&e) => {
                ok = false;
                writeln!(text, "frame {name}: invalid: {e}").unwrap();
            }
            Err(e) => return Err(e),
        }
    }
    Ok(Report { text, status: Status::of(ok), dot })
}

fn directedness_text(p: &LOrderedSet, d: Directedness) -> String {
    match d {
        Directedness::Directed => "directed".into(),
        Directedness::Empty => "not directed: empty".into(),
        Directedness::Pair(x, y) => {
            format!("not directed: no common upper bound for {}, {}", p.carrier().name(x), p.carrier().name(y))
        }
    }
}

fn sup_name(p: &LOrderedSet, s: Option<usize>) -> String {
    s.map_or_else(|| "none".to_string(), |s| p.carrier().name(s).to_string())
}

fn values_row(f: &Frame, v: &LSubset) -> Vec<String> {
    v.values().iter().map(|&e| f.name_of(e).to_string()).collect()
}

fn analyze(ws: &Workspace, name: &str) -> Result<Report> {
    let p = ws.lorder(name)?;
    let f = p.frame().clone();
    let b = &ws.budget;
    let r = continuity_report(&p, b)?;
    let mut text = String::new();
    writeln!(text, "lorder {name} over {}: {} elements", f.name(), p.len()).unwrap();
    text.push_str(&matrix_text(&p));
    writeln!(text, "ideals ({}):", r.ideals.len()).unwrap();
    let mut header = vec!["".to_string()];
    header.extend(p.carrier().names().iter().cloned());
    header.push("sup".into());
    let rows: Vec<Vec<String>> = r
        .ideals
        .iter()
        .enumerate()
        .map(|(i, id)| {
            let mut row = vec![format!("I{}", i + 1)];
            row.extend(values_row(&f, &id.set));
            row.push(sup_name(&p, id.sup));
            row
        })
        .collect();
    text.push_str(&table(&header, &rows));
    writeln!(text, "way-below:").unwrap();
    let rows: Vec<Vec<String>> = r
        .elements
        .iter()
        .map(|d| {
            let mut row = vec![format!("⇓{}", p.carrier().name(d.element))];
            row.extend(values_row(&f, &d.way_below));
            row.push(sup_name(&p, d.sup));
            row.push(directedness_text(&p, d.directedness));
            row
        })
        .collect();
    let mut header = header.clone();
    header.push("".into());
    text.push_str(&table(&header, &rows));
    writeln!(text, "continuous={}", yes(r.is_continuous)).unwrap();
    writeln!(text, "dcpo={}", yes(r.is_ldcpo)).unwrap();
    if let Some(w) = &r.ldcpo_witness {
        writeln!(text, "  directed L-subset without supremum: {}", w.render()).unwrap();
    }
    writeln!(text, "continuous-dcpo={}", yes(r.is_continuous_ldcpo)).unwrap();
    if r.is_ldcpo {
        let a = algebraicity_report(&p, b)?;
        let k: Vec<&str> = a.compact.iter().map(|&x| p.carrier().name(x)).collect();
        writeln!(text, "compact: {{{}}}", k.join(", ")).unwrap();
        writeln!(text, "algebraic={}", yes(a.is_algebraic)).unwrap();
    }
    Ok(Report { text, status: Status::Holds, dot: Some(lorder_dot(name, &p)) })
}

fn opens_text(t: &LTopology) -> String {
    let mut out = String::new();
    for (i, o) in t.opens().iter().enumerate() {
        writeln!(out, "  U{i} = {}", o.render()).unwrap();
    }
    out
}

fn scott(ws: &Workspace, name: &str) -> Result<Report> {
    let p = ws.lorder(name)?;
    let t = scott_topology(&p, &ws.budget)?;
    let mut text = String::new();
    writeln!(text, "σ({name}): {} opens", t.len()).unwrap();
    if ws.kind_of(name) == Some(Kind::Frame) {
        let f = p.frame();
        let family = frame_scott_family(f);
        for (i, o) in t.opens().iter().enumerate() {
            let pairs: Vec<String> = family
                .iter()
                .filter(|(_, v)| v.as_slice() == o.values())
                .map(|((b, a), _)| format!("(b, a) = ({}, {})", f.name_of(*b), f.name_of(*a)))
                .collect();
            let tag = if pairs.is_empty() { "no pair".to_string() } else { pairs.join("; ") };
            writeln!(text, "  U{i} = {}  {tag}", o.render()).unwrap();
        }
        let unique = t.len() == family.len()
            && t.opens().iter().all(|o| family.iter().filter(|(_, v)| v.as_slice() == o.values()).count() == 1);
        writeln!(text, "every open is (a ∧ id) ∨ b for a unique b ≤ a: {}", yes(unique)).unwrap();
    } else {
        text.push_str(&opens_text(&t));
    }
    Ok(Report { text, status: Status::Holds, dot: Some(open_lattice_dot(&format!("σ({name})"), &t)) })
}

fn points_text(s: &PointSpace, out: &mut String) {
    let f = s.topology.frame();
    let eta = s.eta();
    for (i, p) in s.points.iter().enumerate() {
        let principal: Vec<&str> = (0..eta.source().len())
            .filter(|&x| eta.apply(x) == i)
            .map(|x| s.topology.carrier().name(x))
            .collect();
        let tag = if principal.is_empty() {
            String::new()
        } else {
            format!("  = [{}]", principal.join("] = ["))
        };
        writeln!(out, "  {} = {}{tag}", s.carrier.name(i), p.render(f)).unwrap();
    }
}

fn points(ws: &Workspace, name: &str) -> Result<Report> {
    let t = ws.space(name)?;
    let r = is_sober(&t, &ws.budget)?;
    let mut text = String::new();
    writeln!(text, "space {name}: {} points, {} opens", t.carrier().len(), t.len()).unwrap();
    text.push_str(&opens_text(&t));
    writeln!(text, "pt O({name}): {} points (values on U0..U{})", r.space.len(), t.len().saturating_sub(1)).unwrap();
    points_text(&r.space, &mut text);
    for &(x, y) in &r.collisions {
        writeln!(text, "  [{}] = [{}]", t.carrier().name(x), t.carrier().name(y)).unwrap();
    }
    writeln!(text, "sober={}", yes(r.sober)).unwrap();
    let dot = lorder_dot(&format!("pt({name})"), &r.space.order);
    Ok(Report { text, status: Status::Holds, dot: Some(dot) })
}

fn sobrify_cmd(ws: &Workspace, name: &str) -> Result<Report> {
    let t = ws.space(name)?;
    let s = sobrify(&t, &ws.budget)?;
    let mut text = String::new();
    writeln!(text, "sobrification of {name}: {} points", s.space.len()).unwrap();
    points_text(&s.space, &mut text);
    writeln!(text, "η = {}", s.eta.render()).unwrap();
    writeln!(text, "order:").unwrap();
    text.push_str(&matrix_text(&s.space.order));
    writeln!(text, "sober={}", yes(s.verified_sober)).unwrap();
    writeln!(text, "η quasihomeomorphism={}", yes(s.verified_quasi)).unwrap();
    let ok = s.verified_sober && s.verified_quasi;
    let dot = lorder_dot(&format!("pt({name})"), &s.space.order);
    Ok(Report { text, status: Status::of(ok), dot: Some(dot) })
}

fn sobrification_check(ws: &Workspace, x: &str, y: &str) -> Result<Report> {
    let sx = ws.space(x)?;
    let sy = ws.space(y)?;
    let v = check_sobrification(&sx, &sy, &ws.budget)?;
    let mut text = String::new();
    writeln!(text, "{y} is a sobrification of {x}: {}", yes(v.holds)).unwrap();
    if let Some(c) = &v.certificate {
        writeln!(text, "  (O({y}), sub) ≅ (O({x}), sub) via {}", c.render()).unwrap();
    }
    if let Some(r) = &v.reason {
        writeln!(text, "  reason: {r}").unwrap();
    }
    Ok(Report { text, status: Status::of(v.holds), dot: None })
}

/// Workspace L-orders, frames included, isomorphic to `q`.
fn known_isomorphs(ws: &Workspace, q: &LOrderedSet) -> Result<Vec<(String, LMap)>> {
    let mut out = Vec::new();
    for kind in [Kind::Frame, Kind::Lorder] {
        for name in ws.names(kind) {
            let Ok(r) = ws.lorder(&name) else { continue };
            if r.len() != q.len() || !r.frame().same_structure(q.frame()) {
                continue;
            }
            if let IsoOutcome::Found(m) = lorder_isomorphic(q, &r, &ws.budget)? {
                out.push((name, m));
            }
        }
    }
    Ok(out)
}

fn complete(ws: &Workspace, name: &str) -> Result<Report> {
    let p = ws.lorder(name)?;
    let c = directed_completion(&p, &ws.budget)?;
    let mut text = String::new();
    writeln!(text, "directed completion of {name}: {} elements", c.completion.len()).unwrap();
    points_text(&c.space, &mut text);
    text.push_str(&matrix_text(&c.completion));
    writeln!(text, "embedding j = {}", c.embedding.render()).unwrap();
    let cert = &c.certificates;
    writeln!(text, "certificates:").unwrap();
    writeln!(text, "  continuous L-dcpo: {}", yes(cert.continuous_ldcpo)).unwrap();
    writeln!(text, "  Scott topology = spectral topology: {}", yes(cert.scott_equals_spectral)).unwrap();
    writeln!(text, "  locally super-compact: {}", yes(cert.locally_super_compact)).unwrap();
    writeln!(text, "  sober: {}", yes(cert.sober)).unwrap();
    writeln!(text, "  j Scott continuous: {}", yes(cert.embedding_scott_continuous)).unwrap();
    for (other, m) in known_isomorphs(ws, &c.completion)? {
        let shown = if ws.kind_of(&other) == Some(Kind::Frame) { format!("({other}, e_{other})") } else { other };
        writeln!(text, "isomorphic to {shown} via {}", m.render()).unwrap();
    }
    let dot = lorder_dot(&format!("completion({name})"), &c.completion);
    Ok(Report { text, status: Status::of(cert.all()), dot: Some(dot) })
}

fn completion_check(ws: &Workspace, p: &str, q: &str, j: &str) -> Result<Report> {
    let pp = ws.lorder(p)?;
    let qq = ws.lorder(q)?;
    let m = ws.map(j)?;
    if m.source != p || m.target != q {
        return Err(Error::CarrierMismatch(format!("map {j} runs from {} to {}, not {p} to {q}", m.source, m.target)));
    }
    let v = check_directed_completion(&pp, &qq, &m.map, &ws.budget)?;
    let mut text = String::new();
    writeln!(text, "({q}, {j}) is a directed completion of {p}: {}", yes(v.holds)).unwrap();
    writeln!(text, "  {q} continuous L-dcpo: {}", yes(v.q_continuous_ldcpo)).unwrap();
    writeln!(text, "  {j} Scott continuous: {}", yes(v.j_scott_continuous)).unwrap();
    if let Some(s) = v.sobrification {
        writeln!(text, "  Σ {q} is a sobrification of Σ {p}: {}", yes(s)).unwrap();
    }
    if let Some(q) = v.j_quasihomeomorphism {
        writeln!(text, "  {j} quasihomeomorphism: {}", yes(q)).unwrap();
    }
    if let Some(c) = &v.certificate {
        writeln!(text, "  certificate: {}", c.render()).unwrap();
    }
    for r in &v.reasons {
        writeln!(text, "  reason: {r}").unwrap();
    }
    Ok(Report { text, status: Status::of(v.holds), dot: None })
}

fn ri_complete(ws: &Workspace, name: &str) -> Result<Report> {
    let p = ws.lorder(name)?;
    let ri = round_ideal_completion(&p, &ws.budget)?;
    let c = directed_completion(&p, &ws.budget)?;
    let x = round_ideal_cross_check(&p, &c, &ri, &ws.budget)?;
    let mut text = String::new();
    writeln!(text, "round ideals of {name}: {}", ri.members.len()).unwrap();
    for (i, m) in ri.members.iter().enumerate() {
        writeln!(text, "  {} = {}", ri.order.carrier().name(i), m.render()).unwrap();
    }
    text.push_str(&matrix_text(&ri.order));
    writeln!(text, "f: points → round ideals = {}", x.to_round_ideals.render()).unwrap();
    writeln!(text, "g: round ideals → points = {}", x.to_points.render()).unwrap();
    writeln!(text, "mutually inverse: {}", yes(x.mutually_inverse)).unwrap();
    writeln!(text, "order isomorphism: {}", yes(x.order_isomorphism)).unwrap();
    let ok = x.mutually_inverse && x.order_isomorphism;
    Ok(Report { text, status: Status::of(ok), dot: Some(lorder_dot(&format!("RI({name})"), &ri.order)) })
}

fn iso(ws: &Workspace, a: &str, b: &str) -> Result<Report> {
    let spaces = ws.kind_of(a) == Some(Kind::Space) && ws.kind_of(b) == Some(Kind::Space);
    let (pa, pb, what) = if spaces {
        let (ta, tb) = (ws.space(a)?, ws.space(b)?);
        (open_order(&ta), open_order(&tb), format!("(O({a}), sub) ≅ (O({b}), sub)"))
    } else {
        (ws.lorder(a)?, ws.lorder(b)?, format!("{a} ≅ {b}"))
    };
    let r = lorder_isomorphic(&pa, &pb, &ws.budget)?;
    let mut text = String::new();
    writeln!(text, "{what}: {}", yes(r.is_found())).unwrap();
    match &r {
        IsoOutcome::Found(m) => writeln!(text, "  via {}", m.render()).unwrap(),
        IsoOutcome::Absent(why) => writeln!(text, "  {why}").unwrap(),
    }
    Ok(Report { text, status: Status::of(r.is_found()), dot: None })
}

fn quasi(ws: &Workspace, name: &str, mode: QuasiMode) -> Result<Report> {
    let m = ws.map(name)?;
    let s = ws.space(&m.source)?;
    let t = ws.space(&m.target)?;
    let v = quasihomeo_check(&m.map, &s, &t, mode)?;
    let mut text = String::new();
    let what = match mode {
        QuasiMode::Quasi => "quasihomeomorphism",
        QuasiMode::Strict => "strict quasihomeomorphism",
    };
    writeln!(text, "{name}: {} → {} is a {what}: {}", m.source, m.target, yes(v.holds)).unwrap();
    if let Some(w) = &v.witness {
        writeln!(text, "  witness: {w}").unwrap();
    }
    if let Some(c) = v.t0_consistency {
        writeln!(text, "  embedding and surjectivity agree: {}", yes(c)).unwrap();
    }
    Ok(Report { text, status: Status::of(v.holds), dot: None })
}

fn verify(ws: &Workspace, args: &[String]) -> Result<Report> {
    let items: Vec<usize> = if args.is_empty() {
        ITEMS.iter().map(|(i, _)| *i).collect()
    } else {
        args.iter()
            .map(|a| match a.parse::<usize>() {
                Ok(i) if ITEMS.iter().any(|(j, _)| *j == i) => Ok(i),
                _ => Err(Error::Usage(format!("no verification item `{a}` (items are 1 to {})", ITEMS.len()))),
            })
            .collect::<Result<_>>()?
    };
    let r = verify_items(ws, &items);
    let status = if r.any_budget() {
        Status::Incomplete
    } else {
        Status::of(r.all_pass())
    };
    Ok(Report { text: r.render(), status, dot: None })
}
