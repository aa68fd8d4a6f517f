//! Finite stratified L-topological spaces.
//!
//! Opens are kept as raw value vectors in lexicographic order, so two
//! topologies on the same carrier are equal iff their open lists are.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::frame::{ensure_same_frame, Elt, Frame};
use crate::lorder::{
    ensure_same_carrier, join_raw, leq_raw, meet_raw, render_values, sub_raw, validate_lorder,
    Carrier, LOrderedSet, LSubset, UpDown, CROSS_CHECK_LIMIT,
};

#[derive(Clone, PartialEq, Eq)]
pub struct LTopology {
    frame: Arc<Frame>,
    carrier: Arc<Carrier>,
    opens: Vec<Vec<Elt>>,
}

impl fmt::Debug for LTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LTopology({} opens on {:?})", self.opens.len(), self.carrier.names())
    }
}

impl LTopology {
    /// Validates an explicit family of opens against (O1)–(O3).
    pub fn new(frame: Arc<Frame>, carrier: Arc<Carrier>, opens: Vec<LSubset>) -> Result<LTopology> {
        let mut raw = Vec::with_capacity(opens.len());
        for o in opens {
            ensure_same_frame(&frame, o.frame())?;
            ensure_same_carrier(&carrier, o.carrier())?;
            raw.push(o.into_values());
        }
        let t = LTopology::from_raw(frame, carrier, raw);
        match t.axiom_violation() {
            None => Ok(t),
            Some(msg) => Err(Error::NotATopology(msg)),
        }
    }

    /// Sorts and deduplicates without checking the axioms.
    pub(crate) fn from_raw(frame: Arc<Frame>, carrier: Arc<Carrier>, mut opens: Vec<Vec<Elt>>) -> Self {
        opens.sort();
        opens.dedup();
        LTopology { frame, carrier, opens }
    }

    /// The indiscrete stratified topology: constants only.
    pub fn constants(frame: &Arc<Frame>, carrier: &Arc<Carrier>) -> LTopology {
        let opens = frame.elements().map(|a| vec![a; carrier.len()]).collect();
        LTopology::from_raw(frame.clone(), carrier.clone(), opens)
    }

    pub fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.opens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.opens.is_empty()
    }

    pub fn raw_opens(&self) -> &[Vec<Elt>] {
        &self.opens
    }

    pub fn opens(&self) -> Vec<LSubset> {
        (0..self.opens.len()).map(|i| self.open(i)).collect()
    }

    pub fn open(&self, i: usize) -> LSubset {
        LSubset::from_raw(&self.frame, &self.carrier, self.opens[i].clone())
    }

    pub(crate) fn position(&self, v: &[Elt]) -> Option<usize> {
        self.opens.binary_search_by(|o| o.as_slice().cmp(v)).ok()
    }

    pub fn contains(&self, a: &LSubset) -> bool {
        a.frame().same_structure(&self.frame)
            && a.carrier().names() == self.carrier.names()
            && self.position(a.values()).is_some()
    }

    fn ensure_over(&self, a: &LSubset) -> Result<()> {
        ensure_same_frame(&self.frame, a.frame())?;
        ensure_same_carrier(&self.carrier, a.carrier())
    }

    /// The first violated axiom, re-checked exhaustively.
    pub fn axiom_violation(&self) -> Option<String> {
        let f = &self.frame;
        let n = self.carrier.len();
        for a in f.elements() {
            if self.position(&vec![a; n]).is_none() {
                return Some(format!("(O3) constant {} missing", f.name_of(a)));
            }
        }
        for (i, u) in self.opens.iter().enumerate() {
            for v in &self.opens[i..] {
                let m = meet_raw(f, u, v);
                if self.position(&m).is_none() {
                    return Some(format!(
                        "(O1) {} ∧ {} missing",
                        render_values(f, u),
                        render_values(f, v)
                    ));
                }
                let j = join_raw(f, u, v);
                if self.position(&j).is_none() {
                    return Some(format!(
                        "(O2) {} ∨ {} missing",
                        render_values(f, u),
                        render_values(f, v)
                    ));
                }
            }
        }
        None
    }

    /// `join_index[i][j]` is the position of `opens[i] ∨ opens[j]`.
    pub(crate) fn join_table(&self) -> Vec<Vec<usize>> {
        let f = &self.frame;
        self.opens
            .iter()
            .map(|u| {
                self.opens
                    .iter()
                    .map(|v| self.position(&join_raw(f, u, v)).expect("closed under joins"))
                    .collect()
            })
            .collect()
    }

    /// `A° = ⋁{B open : B ≤ A}`.
    pub fn interior(&self, a: &LSubset) -> Result<LSubset> {
        self.ensure_over(a)?;
        Ok(LSubset::from_raw(&self.frame, &self.carrier, self.interior_raw(a.values())))
    }

    pub(crate) fn interior_raw(&self, a: &[Elt]) -> Vec<Elt> {
        let f = &self.frame;
        let mut acc = vec![f.bottom(); a.len()];
        for o in &self.opens {
            if leq_raw(f, o, a) {
                acc = join_raw(f, &acc, o);
            }
        }
        acc
    }

    /// A pair of distinct points no open separates, if any.
    pub fn t0_violation(&self) -> Option<(usize, usize)> {
        let n = self.carrier.len();
        for x in 0..n {
            for y in (x + 1)..n {
                if self.opens.iter().all(|o| o[x] == o[y]) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn is_t0(&self) -> bool {
        self.t0_violation().is_none()
    }

    /// `Ω_L`: `e(x,y) = ⋀_A A(x) → A(y)`.
    pub fn specialization(&self) -> Result<LOrderedSet> {
        if let Some((x, y)) = self.t0_violation() {
            return Err(Error::NotT0(self.carrier.name(x).into(), self.carrier.name(y).into()));
        }
        let f = &self.frame;
        let n = self.carrier.len();
        let mut e = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                e.push(f.meet_all(self.opens.iter().map(|o| f.heyting(o[x], o[y]))));
            }
        }
        validate_lorder(f.clone(), self.carrier.clone(), e)
    }

    /// Whether `family` (a set of opens) is a base:
    /// every open `A = ⋁_{B ∈ family} sub(B,A) ∧ B`.
    pub fn is_base(&self, family: &[LSubset]) -> Result<bool> {
        for b in family {
            self.ensure_over(b)?;
        }
        let raw: Vec<&[Elt]> = family.iter().map(|b| b.values()).collect();
        Ok(self.base_failure(&raw).is_none())
    }

    fn base_failure(&self, family: &[&[Elt]]) -> Option<usize> {
        let f = &self.frame;
        let n = self.carrier.len();
        self.opens.iter().position(|a| {
            let mut acc = vec![f.bottom(); n];
            for b in family {
                let s = sub_raw(f, b, a);
                for x in 0..n {
                    acc[x] = f.join(acc[x], f.meet(s, b[x]));
                }
            }
            &acc != a
        })
    }
}

/// Least stratified L-topology containing `subbase`.
///
/// The budget bounds the number of distinct opens produced.
pub fn generate_topology(
    frame: &Arc<Frame>,
    carrier: &Arc<Carrier>,
    subbase: &[LSubset],
    budget: &Budget,
) -> Result<LTopology> {
    let n = carrier.len();
    let f = &**frame;
    let mut seen: BTreeSet<Vec<Elt>> = BTreeSet::new();
    let mut all: Vec<Vec<Elt>> = Vec::new();
    let push = |v: Vec<Elt>, seen: &mut BTreeSet<Vec<Elt>>, all: &mut Vec<Vec<Elt>>| -> Result<()> {
        if seen.insert(v.clone()) {
            all.push(v);
            budget.check_count(all.len() as u64)?;
        }
        Ok(())
    };
    for a in frame.elements() {
        push(vec![a; n], &mut seen, &mut all)?;
    }
    for s in subbase {
        ensure_same_frame(frame, s.frame())?;
        ensure_same_carrier(carrier, s.carrier())?;
        push(s.values().to_vec(), &mut seen, &mut all)?;
    }
    // Each new open is combined with every open found before it.
    let mut i = 0;
    while i < all.len() {
        for j in 0..=i {
            let m = meet_raw(f, &all[i], &all[j]);
            let jn = join_raw(f, &all[i], &all[j]);
            push(m, &mut seen, &mut all)?;
            push(jn, &mut seen, &mut all)?;
        }
        i += 1;
    }
    Ok(LTopology::from_raw(frame.clone(), carrier.clone(), all))
}

/// Why an L-subset fails to be Scott open.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScottOpenVerdict {
    Open,
    /// `A(x) ∧ e(x,y) ≰ A(y)`.
    NotUpper(usize, usize),
    /// `A(⊔I) ≠ ⋁_x A(x) ∧ I(x)` for this ideal.
    Ideal { ideal: LSubset, sup: usize },
}

impl ScottOpenVerdict {
    pub fn holds(&self) -> bool {
        *self == ScottOpenVerdict::Open
    }
}

fn scott_condition(f: &Frame, a: &[Elt], family: &[(Vec<Elt>, usize)]) -> Option<usize> {
    family.iter().position(|(d, s)| {
        let rhs = f.join_all(a.iter().zip(d).map(|(&u, &v)| f.meet(u, v)));
        a[*s] != rhs
    })
}

/// `σ_L(P)`: upper sets `A` with `A(⊔I) = ⋁_x A(x) ∧ I(x)` for all `I ∈ Idl*`.
pub fn scott_topology(p: &LOrderedSet, budget: &Budget) -> Result<LTopology> {
    let ideals = p.ideals_with_sup_raw(budget)?;
    scott_over(p, &ideals, budget)
}

/// The same topology computed over all directed L-subsets with a supremum.
/// Only used as a cross-check.
pub fn scott_topology_directed_form(p: &LOrderedSet, budget: &Budget) -> Result<LTopology> {
    let directed: Vec<(Vec<Elt>, usize)> = p
        .directed_raw_all(budget)?
        .into_iter()
        .filter_map(|(d, s)| s.map(|s| (d, s)))
        .collect();
    scott_over(p, &directed, budget)
}

fn scott_over(p: &LOrderedSet, family: &[(Vec<Elt>, usize)], budget: &Budget) -> Result<LTopology> {
    let f = p.frame().clone();
    let mut opens = Vec::new();
    p.for_each_closed_set(UpDown::Up, budget, |a| {
        if scott_condition(&f, a, family).is_none() {
            opens.push(a.to_vec());
        }
    })?;
    Ok(LTopology::from_raw(f, p.carrier().clone(), opens))
}

/// Whether `σ_L(P)` is small enough to cross-check against its directed form.
pub fn cross_checkable(p: &LOrderedSet) -> bool {
    crate::budget::saturating_pow(p.frame().len() as u64, p.len()) <= CROSS_CHECK_LIMIT
}

pub fn is_scott_open(p: &LOrderedSet, a: &LSubset, budget: &Budget) -> Result<ScottOpenVerdict> {
    p.ensure_over(a)?;
    if let Some((x, y)) = p.upper_violation(a.values()) {
        return Ok(ScottOpenVerdict::NotUpper(x, y));
    }
    let ideals = p.ideals_with_sup_raw(budget)?;
    Ok(match scott_condition(p.frame(), a.values(), &ideals) {
        None => ScottOpenVerdict::Open,
        Some(i) => ScottOpenVerdict::Ideal {
            ideal: p.subset(ideals[i].0.clone())?,
            sup: ideals[i].1,
        },
    })
}

/// Why an L-subset fails to be super-compact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SuperCompactVerdict {
    SuperCompact,
    /// `⋁_x A(x) ≠ ⊤`.
    Empty,
    /// Opens `V1, V2` (by position) with `sub(A, V1 ∨ V2) ≠ sub(A,V1) ∨ sub(A,V2)`.
    Pair(usize, usize),
}

impl SuperCompactVerdict {
    pub fn holds(&self) -> bool {
        *self == SuperCompactVerdict::SuperCompact
    }
}

/// Super-compactness reduced to nonemptiness plus binary joins of opens.
///
/// In a finite open-set lattice every join is a finite join, and
/// nonemptiness forces `sub(A, ⊥) = ⊥`, so this is exact.
pub fn is_super_compact(t: &LTopology, a: &LSubset) -> Result<SuperCompactVerdict> {
    t.ensure_over(a)?;
    let joins = t.join_table();
    Ok(super_compact_raw(t, &joins, a.values()))
}

/// Early-exit form of [`super_compact_raw`] without a witness.
fn super_compact_holds(t: &LTopology, joins: &[Vec<usize>], a: &[Elt]) -> bool {
    let f = &t.frame;
    if f.join_all(a.iter().copied()) != f.top() {
        return false;
    }
    let s: Vec<Elt> = t.opens.iter().map(|v| sub_raw(f, a, v)).collect();
    (0..s.len()).all(|i| ((i + 1)..s.len()).all(|j| s[joins[i][j]] == f.join(s[i], s[j])))
}

fn super_compact_raw(t: &LTopology, joins: &[Vec<usize>], a: &[Elt]) -> SuperCompactVerdict {
    let f = &t.frame;
    if f.join_all(a.iter().copied()) != f.top() {
        return SuperCompactVerdict::Empty;
    }
    let s: Vec<Elt> = t.opens.iter().map(|v| sub_raw(f, a, v)).collect();
    let bad = |i: usize, j: usize| s[joins[i][j]] != f.join(s[i], s[j]);
    // Prefer a pair where neither open alone attains sub(A,V1) ∨ sub(A,V2),
    // scanning from the largest opens down.
    let mut fallback = None;
    for i in (0..s.len()).rev() {
        for j in (0..i).rev() {
            if bad(j, i) {
                if !f.leq(s[i], s[j]) && !f.leq(s[j], s[i]) {
                    return SuperCompactVerdict::Pair(j, i);
                }
                fallback = Some((j, i));
            }
        }
    }
    match fallback {
        Some((i, j)) => SuperCompactVerdict::Pair(i, j),
        None => SuperCompactVerdict::SuperCompact,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LscMode {
    /// Every open is `⋁_{B ∈ SC(X)} sub(B,A) ∧ B°`.
    Plain,
    /// The super-compact opens form a base.
    Strong,
}

#[derive(Clone, Debug)]
pub struct LscReport {
    pub mode: LscMode,
    pub holds: bool,
    /// `SC(X)` in plain mode; the super-compact opens in strong mode.
    pub super_compact: Vec<LSubset>,
    /// First open not recovered from `super_compact`.
    pub failing_open: Option<LSubset>,
}

pub fn local_super_compactness(t: &LTopology, mode: LscMode, budget: &Budget) -> Result<LscReport> {
    let f = t.frame.clone();
    let n = t.carrier.len();
    let joins = t.join_table();
    let mut sc: Vec<Vec<Elt>> = Vec::new();
    match mode {
        LscMode::Plain => {
            crate::lorder::for_each_vector(&f, n, budget, |b| {
                if super_compact_holds(t, &joins, b) {
                    sc.push(b.to_vec());
                }
            })?;
        }
        LscMode::Strong => {
            for o in &t.opens {
                if super_compact_holds(t, &joins, o) {
                    sc.push(o.clone());
                }
            }
        }
    }
    let failing = match mode {
        LscMode::Plain => {
            let interiors: Vec<Vec<Elt>> = sc.iter().map(|b| t.interior_raw(b)).collect();
            t.opens.iter().position(|a| {
                let mut acc = vec![f.bottom(); n];
                for (b, bi) in sc.iter().zip(&interiors) {
                    let s = sub_raw(&f, b, a);
                    for x in 0..n {
                        acc[x] = f.join(acc[x], f.meet(s, bi[x]));
                    }
                }
                &acc != a
            })
        }
        LscMode::Strong => {
            let refs: Vec<&[Elt]> = sc.iter().map(|v| v.as_slice()).collect();
            t.base_failure(&refs)
        }
    };
    Ok(LscReport {
        mode,
        holds: failing.is_none(),
        super_compact: sc.into_iter().map(|v| LSubset::from_raw(&f, &t.carrier, v)).collect(),
        failing_open: failing.map(|i| t.open(i)),
    })
}
