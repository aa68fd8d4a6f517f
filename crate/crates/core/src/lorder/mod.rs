//! Finite L-ordered sets: up/down sets, suprema, directed L-subsets, ideals,
//! the way-below relation, continuity and algebraicity.
//!
//! All enumerations range over `L^P` by backtracking in carrier order with
//! values in frame declaration order, so results come out lexicographically
//! sorted by value vector without a separate sort.

mod iso;
mod subset;

use std::fmt;
use std::sync::Arc;

pub use iso::{lorder_isomorphic, IsoOutcome};
pub use subset::{sub, zadeh, Carrier, Direction, LMap, LSubset};
pub(crate) use subset::{
    ensure_same_carrier, join_raw, leq_raw, meet_raw, render_values, sub_raw,
};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::frame::{ensure_same_frame, Elt, Frame};

/// Below this many candidates the directed-subset forms of suprema-based
/// definitions are recomputed as cross-checks.
pub const CROSS_CHECK_LIMIT: u64 = 5_000;

/// A carrier with a validated L-valued order `e`.
#[derive(Clone, PartialEq, Eq)]
pub struct LOrderedSet {
    frame: Arc<Frame>,
    carrier: Arc<Carrier>,
    e: Vec<Elt>,
}

impl fmt::Debug for LOrderedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LOrderedSet({:?} over {})", self.carrier.names(), self.frame.name())
    }
}

/// Validates a row-major `e` matrix over `carrier × carrier`.
pub fn validate_lorder(
    frame: Arc<Frame>,
    carrier: Arc<Carrier>,
    e: Vec<Elt>,
) -> Result<LOrderedSet> {
    let n = carrier.len();
    if n == 0 {
        return Err(Error::EmptyCarrier);
    }
    if e.len() != n * n {
        return Err(Error::CarrierMismatch(format!(
            "order matrix has {} entries, expected {}",
            e.len(),
            n * n
        )));
    }
    if e.iter().any(|v| v.index() >= frame.len()) {
        return Err(Error::ElementNotFound("order value outside the frame".into()));
    }
    let f = &frame;
    let at = |x: usize, y: usize| e[x * n + y];
    for x in 0..n {
        if at(x, x) != f.top() {
            return Err(Error::NotReflexive(
                carrier.name(x).into(),
                f.name_of(at(x, x)).into(),
            ));
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = f.meet(at(x, y), at(y, z));
                if !f.leq(lhs, at(x, z)) {
                    return Err(Error::NotTransitive {
                        x: carrier.name(x).into(),
                        y: carrier.name(y).into(),
                        z: carrier.name(z).into(),
                        lhs: f.name_of(lhs).into(),
                        rhs: f.name_of(at(x, z)).into(),
                    });
                }
            }
        }
    }
    for x in 0..n {
        for y in (x + 1)..n {
            if at(x, y) == f.top() && at(y, x) == f.top() {
                return Err(Error::NotAntisymmetric(carrier.name(x).into(), carrier.name(y).into()));
            }
        }
    }
    Ok(LOrderedSet { frame, carrier, e })
}

/// Outcome of a directedness test.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Directedness {
    Directed,
    /// `⋁_x D(x) ≠ ⊤`.
    Empty,
    /// `D(x) ∧ D(y) ≰ ⋁_z D(z) ∧ e(x,z) ∧ e(y,z)`.
    Pair(usize, usize),
}

impl Directedness {
    pub fn holds(self) -> bool {
        self == Directedness::Directed
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum UpDown {
    Up,
    Down,
}

/// Which family of L-subsets to enumerate.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EnumMode {
    /// All ideals (directed lower sets).
    Ideals,
    /// All directed L-subsets.
    Directed,
    /// Ideals possessing a supremum.
    IdealsWithSup,
    /// Directed L-subsets possessing a supremum.
    DirectedWithSup,
}

/// An enumerated L-subset together with its supremum, if any.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IdealEntry {
    pub set: LSubset,
    pub sup: Option<usize>,
}

impl LOrderedSet {
    /// `(L, e_L)` with `e_L(x,y) = x → y`.
    pub fn from_frame(frame: &Arc<Frame>) -> LOrderedSet {
        let carrier = Carrier::new(frame.names().to_vec()).expect("frames are nonempty");
        let e = frame
            .elements()
            .flat_map(|x| frame.elements().map(move |y| (x, y)))
            .map(|(x, y)| frame.heyting(x, y))
            .collect();
        LOrderedSet { frame: frame.clone(), carrier, e }
    }

    pub fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn matrix(&self) -> &[Elt] {
        &self.e
    }

    #[inline]
    pub fn e(&self, x: usize, y: usize) -> Elt {
        self.e[x * self.carrier.len() + y]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.carrier.index_of(name)
    }

    pub fn subset(&self, values: Vec<Elt>) -> Result<LSubset> {
        LSubset::new(self.frame.clone(), self.carrier.clone(), values)
    }

    pub(crate) fn subset_raw(&self, values: Vec<Elt>) -> LSubset {
        LSubset::from_raw(&self.frame, &self.carrier, values)
    }

    pub(crate) fn ensure_over(&self, a: &LSubset) -> Result<()> {
        ensure_same_frame(&self.frame, a.frame())?;
        ensure_same_carrier(&self.carrier, a.carrier())
    }

    /// `↑x(y) = e(x,y)` or `↓x(y) = e(y,x)`.
    pub fn principal(&self, x: usize, dir: UpDown) -> LSubset {
        self.subset_raw(self.principal_raw(x, dir))
    }

    pub(crate) fn principal_raw(&self, x: usize, dir: UpDown) -> Vec<Elt> {
        let n = self.len();
        match dir {
            UpDown::Up => (0..n).map(|y| self.e(x, y)).collect(),
            UpDown::Down => (0..n).map(|y| self.e(y, x)).collect(),
        }
    }

    /// `↑A(x) = ⋁_y A(y) ∧ e(y,x)` or `↓A(x) = ⋁_y A(y) ∧ e(x,y)`.
    pub fn updown(&self, a: &LSubset, dir: UpDown) -> Result<LSubset> {
        self.ensure_over(a)?;
        Ok(self.subset_raw(self.updown_raw(a.values(), dir)))
    }

    pub(crate) fn updown_raw(&self, a: &[Elt], dir: UpDown) -> Vec<Elt> {
        let f = &self.frame;
        let n = self.len();
        (0..n)
            .map(|x| {
                f.join_all((0..n).map(|y| {
                    let ev = match dir {
                        UpDown::Up => self.e(y, x),
                        UpDown::Down => self.e(x, y),
                    };
                    f.meet(a[y], ev)
                }))
            })
            .collect()
    }

    /// Witness `(x,y)` with `S(x) ∧ e(x,y) ≰ S(y)`, if `S` is not an upper set.
    pub(crate) fn upper_violation(&self, s: &[Elt]) -> Option<(usize, usize)> {
        let f = &self.frame;
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                if !f.leq(f.meet(s[x], self.e(x, y)), s[y]) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Witness `(x,y)` with `S(x) ∧ e(y,x) ≰ S(y)`, if `S` is not a lower set.
    pub(crate) fn lower_violation(&self, s: &[Elt]) -> Option<(usize, usize)> {
        let f = &self.frame;
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                if !f.leq(f.meet(s[x], self.e(y, x)), s[y]) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn is_upper(&self, a: &LSubset) -> Result<bool> {
        self.ensure_over(a)?;
        Ok(self.upper_violation(a.values()).is_none())
    }

    pub fn is_lower(&self, a: &LSubset) -> Result<bool> {
        self.ensure_over(a)?;
        Ok(self.lower_violation(a.values()).is_none())
    }

    /// The unique `x` with `e(x,y) = sub(A, ↓y)` for all `y`, if it exists.
    pub fn supremum(&self, a: &LSubset) -> Result<Option<usize>> {
        self.ensure_over(a)?;
        Ok(self.sup_raw(a.values()))
    }

    /// The unique `x` with `e(y,x) = sub(A, ↑y)` for all `y`, if it exists.
    pub fn infimum(&self, a: &LSubset) -> Result<Option<usize>> {
        self.ensure_over(a)?;
        Ok(self.inf_raw(a.values()))
    }

    pub(crate) fn sup_raw(&self, a: &[Elt]) -> Option<usize> {
        let f = &self.frame;
        let n = self.len();
        let target: Vec<Elt> = (0..n)
            .map(|y| f.meet_all((0..n).map(|z| f.heyting(a[z], self.e(z, y)))))
            .collect();
        (0..n).find(|&x| (0..n).all(|y| self.e(x, y) == target[y]))
    }

    pub(crate) fn inf_raw(&self, a: &[Elt]) -> Option<usize> {
        let f = &self.frame;
        let n = self.len();
        let target: Vec<Elt> = (0..n)
            .map(|y| f.meet_all((0..n).map(|z| f.heyting(a[z], self.e(y, z)))))
            .collect();
        (0..n).find(|&x| (0..n).all(|y| self.e(y, x) == target[y]))
    }

    pub fn is_directed(&self, d: &LSubset) -> Result<Directedness> {
        self.ensure_over(d)?;
        Ok(self.directed_raw(d.values()))
    }

    pub(crate) fn directed_raw(&self, d: &[Elt]) -> Directedness {
        let f = &self.frame;
        let n = self.len();
        if f.join_all(d.iter().copied()) != f.top() {
            return Directedness::Empty;
        }
        for x in 0..n {
            for y in x..n {
                let lhs = f.meet(d[x], d[y]);
                if lhs == f.bottom() {
                    continue;
                }
                let rhs =
                    f.join_all((0..n).map(|z| f.meet(d[z], f.meet(self.e(x, z), self.e(y, z)))));
                if !f.leq(lhs, rhs) {
                    return Directedness::Pair(x, y);
                }
            }
        }
        Directedness::Directed
    }

    /// Visits every lower (or upper) set, lexicographically, pruning on the
    /// closure constraint as values are assigned.
    pub(crate) fn for_each_closed_set(
        &self,
        dir: UpDown,
        budget: &Budget,
        mut visit: impl FnMut(&[Elt]),
    ) -> Result<()> {
        budget.check_enumeration(self.frame.len(), self.len())?;
        let n = self.len();
        let f = &*self.frame;
        let mut s = vec![f.bottom(); n];
        // lower: S(j) ∧ e(i,j) ≤ S(i); upper: S(j) ∧ e(j,i) ≤ S(i)
        let edge = |a: usize, b: usize| match dir {
            UpDown::Down => self.e(a, b),
            UpDown::Up => self.e(b, a),
        };
        fn go(
            f: &Frame,
            edge: &dyn Fn(usize, usize) -> Elt,
            i: usize,
            s: &mut Vec<Elt>,
            visit: &mut dyn FnMut(&[Elt]),
        ) {
            let n = s.len();
            if i == n {
                visit(s);
                return;
            }
            for v in f.elements() {
                s[i] = v;
                let ok = (0..i).all(|j| {
                    f.leq(f.meet(s[j], edge(i, j)), v) && f.leq(f.meet(v, edge(j, i)), s[j])
                });
                if ok {
                    go(f, edge, i + 1, s, visit);
                }
            }
        }
        go(f, &edge, 0, &mut s, &mut visit);
        Ok(())
    }

    /// Visits every L-subset of the carrier, lexicographically.
    pub(crate) fn for_each_subset(&self, budget: &Budget, visit: impl FnMut(&[Elt])) -> Result<()> {
        for_each_vector(&self.frame, self.len(), budget, visit)
    }

    /// All ideals with their suprema (raw values).
    pub(crate) fn ideals_raw(&self, budget: &Budget) -> Result<Vec<(Vec<Elt>, Option<usize>)>> {
        let mut out = Vec::new();
        self.for_each_closed_set(UpDown::Down, budget, |s| {
            if self.directed_raw(s).holds() {
                out.push((s.to_vec(), self.sup_raw(s)));
            }
        })?;
        Ok(out)
    }

    /// `Idl*_L(P)`: ideals that have a supremum.
    pub(crate) fn ideals_with_sup_raw(&self, budget: &Budget) -> Result<Vec<(Vec<Elt>, usize)>> {
        Ok(self
            .ideals_raw(budget)?
            .into_iter()
            .filter_map(|(s, sup)| sup.map(|x| (s, x)))
            .collect())
    }

    /// All directed L-subsets with their suprema.
    pub(crate) fn directed_raw_all(&self, budget: &Budget) -> Result<Vec<(Vec<Elt>, Option<usize>)>> {
        let mut out = Vec::new();
        self.for_each_subset(budget, |s| {
            if self.directed_raw(s).holds() {
                out.push((s.to_vec(), self.sup_raw(s)));
            }
        })?;
        Ok(out)
    }

    /// `⇓x(y) = ⋀_{I ∈ Idl*} e(x, ⊔I) → I(y)` for every `x`, as raw rows.
    pub(crate) fn way_below_rows(&self, ideals: &[(Vec<Elt>, usize)]) -> Vec<Vec<Elt>> {
        let f = &self.frame;
        let n = self.len();
        (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| f.meet_all(ideals.iter().map(|(i, s)| f.heyting(self.e(x, *s), i[y]))))
                    .collect()
            })
            .collect()
    }

    pub(crate) fn way_below_rows_budget(&self, budget: &Budget) -> Result<Vec<Vec<Elt>>> {
        let ideals = self.ideals_with_sup_raw(budget)?;
        Ok(self.way_below_rows(&ideals))
    }
}

/// Visits every vector in `L^n`, lexicographically.
pub(crate) fn for_each_vector(
    frame: &Frame,
    n: usize,
    budget: &Budget,
    mut visit: impl FnMut(&[Elt]),
) -> Result<()> {
    budget.check_enumeration(frame.len(), n)?;
    let k = frame.len();
    let mut idx = vec![0usize; n];
    let mut s: Vec<Elt> = vec![Elt::from_index(0); n];
    loop {
        visit(&s);
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(());
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < k {
                s[pos] = Elt::from_index(idx[pos]);
                break;
            }
            idx[pos] = 0;
            s[pos] = Elt::from_index(0);
        }
    }
}

/// Exhaustive, canonically ordered enumeration of ideals or directed L-subsets.
pub fn enumerate_ideals(p: &LOrderedSet, mode: EnumMode, budget: &Budget) -> Result<Vec<IdealEntry>> {
    let raw = match mode {
        EnumMode::Ideals | EnumMode::IdealsWithSup => p.ideals_raw(budget)?,
        EnumMode::Directed | EnumMode::DirectedWithSup => p.directed_raw_all(budget)?,
    };
    let only_sup = matches!(mode, EnumMode::IdealsWithSup | EnumMode::DirectedWithSup);
    Ok(raw
        .into_iter()
        .filter(|(_, s)| !only_sup || s.is_some())
        .map(|(v, sup)| IdealEntry { set: p.subset_raw(v), sup })
        .collect())
}

#[derive(Clone, Debug)]
pub struct LdcpoVerdict {
    pub holds: bool,
    /// First ideal (canonical order) without a supremum.
    pub witness: Option<LSubset>,
    /// The same question asked of all directed L-subsets, on small instances.
    pub directed_form: Option<bool>,
}

/// Whether every ideal (equivalently every directed L-subset) has a supremum.
pub fn is_ldcpo(p: &LOrderedSet, budget: &Budget) -> Result<LdcpoVerdict> {
    let ideals = p.ideals_raw(budget)?;
    let witness = ideals.iter().find(|(_, s)| s.is_none()).map(|(v, _)| p.subset_raw(v.clone()));
    let directed_form = if small_enough(p, budget) {
        Some(p.directed_raw_all(budget)?.iter().all(|(_, s)| s.is_some()))
    } else {
        None
    };
    Ok(LdcpoVerdict { holds: witness.is_none(), witness, directed_form })
}

fn small_enough(p: &LOrderedSet, budget: &Budget) -> bool {
    let required = crate::budget::saturating_pow(p.frame.len() as u64, p.len());
    required <= CROSS_CHECK_LIMIT && required <= budget.enumeration
}

/// `⇓x`, computed over the ideals that have a supremum.
pub fn way_below(p: &LOrderedSet, x: usize, budget: &Budget) -> Result<LSubset> {
    if x >= p.len() {
        return Err(Error::ElementNotFound(format!("index {x}")));
    }
    let rows = p.way_below_rows_budget(budget)?;
    Ok(p.subset_raw(rows[x].clone()))
}

/// `⇓x(y) = ⋀_{D ∈ D*} e(x, ⊔D) → ⋁_d D(d) ∧ e(y,d)`: the directed-subset
/// form, used only as a cross-check of [`way_below`].
pub fn way_below_directed_form(p: &LOrderedSet, x: usize, budget: &Budget) -> Result<LSubset> {
    let f = p.frame.clone();
    let n = p.len();
    let directed: Vec<(Vec<Elt>, usize)> = p
        .directed_raw_all(budget)?
        .into_iter()
        .filter_map(|(d, s)| s.map(|s| (d, s)))
        .collect();
    let row = (0..n)
        .map(|y| {
            f.meet_all(directed.iter().map(|(d, s)| {
                let down = f.join_all((0..n).map(|z| f.meet(d[z], p.e(y, z))));
                f.heyting(p.e(x, *s), down)
            }))
        })
        .collect();
    Ok(p.subset_raw(row))
}

#[derive(Clone, Debug)]
pub struct WayBelowDiagnostic {
    pub element: usize,
    pub way_below: LSubset,
    pub directedness: Directedness,
    pub sup: Option<usize>,
}

impl WayBelowDiagnostic {
    pub fn is_continuous_at(&self) -> bool {
        self.directedness.holds() && self.sup == Some(self.element)
    }
}

#[derive(Clone, Debug)]
pub struct ContinuityReport {
    pub ideals: Vec<IdealEntry>,
    pub elements: Vec<WayBelowDiagnostic>,
    pub is_continuous: bool,
    pub is_ldcpo: bool,
    pub ldcpo_witness: Option<LSubset>,
    pub is_continuous_ldcpo: bool,
}

impl ContinuityReport {
    pub fn way_below(&self, x: usize) -> &LSubset {
        &self.elements[x].way_below
    }
}

pub fn continuity_report(p: &LOrderedSet, budget: &Budget) -> Result<ContinuityReport> {
    let ideals = p.ideals_raw(budget)?;
    let with_sup: Vec<(Vec<Elt>, usize)> =
        ideals.iter().filter_map(|(v, s)| s.map(|s| (v.clone(), s))).collect();
    let rows = p.way_below_rows(&with_sup);
    let elements: Vec<WayBelowDiagnostic> = rows
        .into_iter()
        .enumerate()
        .map(|(x, row)| WayBelowDiagnostic {
            element: x,
            directedness: p.directed_raw(&row),
            sup: p.sup_raw(&row),
            way_below: p.subset_raw(row),
        })
        .collect();
    let is_continuous = elements.iter().all(|d| d.is_continuous_at());
    let ldcpo_witness =
        ideals.iter().find(|(_, s)| s.is_none()).map(|(v, _)| p.subset_raw(v.clone()));
    let is_ldcpo = ldcpo_witness.is_none();
    Ok(ContinuityReport {
        ideals: ideals.into_iter().map(|(v, sup)| IdealEntry { set: p.subset_raw(v), sup }).collect(),
        elements,
        is_continuous,
        is_ldcpo,
        ldcpo_witness,
        is_continuous_ldcpo: is_continuous && is_ldcpo,
    })
}

#[derive(Clone, Debug)]
pub struct AlgebraicityReport {
    /// `K(P) = {x : ⇓x(x) = ⊤}`.
    pub compact: Vec<usize>,
    /// `k(x)(y) = e(y,x)` for compact `y`, else `⊥`.
    pub k: Vec<LSubset>,
    pub k_directedness: Vec<Directedness>,
    pub k_sup: Vec<Option<usize>>,
    pub is_algebraic: bool,
    /// `⇓x(x) = ⊤` agrees with `I(x) = e(x, ⊔I)` for all ideals `I`, for every `x`.
    pub compactness_cross_check: bool,
}

pub fn algebraicity_report(p: &LOrderedSet, budget: &Budget) -> Result<AlgebraicityReport> {
    let f = p.frame.clone();
    let n = p.len();
    let ideals = p.ideals_raw(budget)?;
    if let Some((v, _)) = ideals.iter().find(|(_, s)| s.is_none()) {
        return Err(Error::NotAnLdcpo(render_values(&f, v)));
    }
    let with_sup: Vec<(Vec<Elt>, usize)> =
        ideals.into_iter().map(|(v, s)| (v, s.expect("checked"))).collect();
    let rows = p.way_below_rows(&with_sup);
    let compact: Vec<usize> = (0..n).filter(|&x| rows[x][x] == f.top()).collect();
    let compactness_cross_check = (0..n).all(|x| {
        let via_ideals = with_sup.iter().all(|(i, s)| i[x] == p.e(x, *s));
        via_ideals == compact.contains(&x)
    });
    let mut k = Vec::with_capacity(n);
    let mut k_directedness = Vec::with_capacity(n);
    let mut k_sup = Vec::with_capacity(n);
    for x in 0..n {
        let row: Vec<Elt> = (0..n)
            .map(|y| if compact.contains(&y) { p.e(y, x) } else { f.bottom() })
            .collect();
        k_directedness.push(p.directed_raw(&row));
        k_sup.push(p.sup_raw(&row));
        k.push(p.subset_raw(row));
    }
    let is_algebraic = (0..n).all(|x| k_directedness[x].holds() && k_sup[x] == Some(x));
    Ok(AlgebraicityReport { compact, k, k_directedness, k_sup, is_algebraic, compactness_cross_check })
}
