//! Scott continuity, directed completions and round-ideal completions.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::frame::{ensure_same_frame, Elt};
use crate::lorder::{
    continuity_report, ensure_same_carrier, render_values, Carrier, ContinuityReport, LMap,
    LOrderedSet, LSubset,
};
use crate::ltop::{local_super_compactness, scott_topology, LTopology, LscMode};
use crate::points::{
    check_sobrification, enumerate_points, is_sober, pt_map, quasihomeo_check, Point, PointSpace,
    QuasiMode,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScottContinuityVerdict {
    pub holds: bool,
    /// An ideal `I ∈ Idl*(P)` with `⊔f→(I) ≠ f(⊔I)`.
    pub witness: Option<LSubset>,
    pub reason: Option<String>,
}

/// `f(⊔I) = ⊔f→(I)` for every ideal `I` of `P` that has a supremum.
pub fn is_scott_continuous(
    f: &LMap,
    p: &LOrderedSet,
    q: &LOrderedSet,
    budget: &Budget,
) -> Result<ScottContinuityVerdict> {
    ensure_same_frame(p.frame(), q.frame())?;
    ensure_same_carrier(f.source(), p.carrier())?;
    ensure_same_carrier(f.target(), q.carrier())?;
    for (ideal, s) in p.ideals_with_sup_raw(budget)? {
        let image = f.forward_raw(p.frame(), &ideal);
        let reason = match q.sup_raw(&image) {
            None => Some(format!("image {} has no supremum", render_values(p.frame(), &image))),
            Some(t) if t != f.apply(s) => Some(format!(
                "⊔ of the image is {} but f({}) = {}",
                q.carrier().name(t),
                p.carrier().name(s),
                q.carrier().name(f.apply(s))
            )),
            Some(_) => None,
        };
        if reason.is_some() {
            return Ok(ScottContinuityVerdict { holds: false, witness: Some(p.subset(ideal)?), reason });
        }
    }
    Ok(ScottContinuityVerdict { holds: true, witness: None, reason: None })
}

fn require_continuous(p: &LOrderedSet, budget: &Budget) -> Result<ContinuityReport> {
    let r = continuity_report(p, budget)?;
    match r.elements.iter().find(|d| !d.is_continuous_at()) {
        None => Ok(r),
        Some(d) => Err(Error::NotContinuous(format!(
            "⇓{} = {} is not directed with supremum {}",
            p.carrier().name(d.element),
            d.way_below.render_values(),
            p.carrier().name(d.element)
        ))),
    }
}

/// Checks re-run on a computed completion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionCertificates {
    pub continuous_ldcpo: bool,
    pub scott_equals_spectral: bool,
    pub locally_super_compact: bool,
    pub sober: bool,
    pub embedding_scott_continuous: bool,
}

impl CompletionCertificates {
    pub fn all(&self) -> bool {
        self.continuous_ldcpo
            && self.scott_equals_spectral
            && self.locally_super_compact
            && self.sober
            && self.embedding_scott_continuous
    }
}

#[derive(Clone, Debug)]
pub struct CompletionResult {
    /// The point order of `pt_L σ_L(P)`.
    pub completion: LOrderedSet,
    /// `η_P`.
    pub embedding: LMap,
    pub spectral: LTopology,
    pub space: PointSpace,
    pub scott: LTopology,
    pub certificates: CompletionCertificates,
}

/// `pt_L σ_L(P)` with `η_P`, for continuous `P`.
pub fn directed_completion(p: &LOrderedSet, budget: &Budget) -> Result<CompletionResult> {
    require_continuous(p, budget)?;
    let scott = scott_topology(p, budget)?;
    let space = enumerate_points(&scott, budget)?;
    let embedding = space.eta();
    let completion = space.order.clone();
    let spectral = space.spectral.clone();
    let certificates = CompletionCertificates {
        continuous_ldcpo: continuity_report(&completion, budget)?.is_continuous_ldcpo,
        scott_equals_spectral: scott_topology(&completion, budget)? == spectral,
        locally_super_compact: local_super_compactness(&spectral, LscMode::Plain, budget)?.holds,
        sober: is_sober(&spectral, budget)?.sober,
        embedding_scott_continuous: is_scott_continuous(&embedding, p, &completion, budget)?.holds,
    };
    Ok(CompletionResult { completion, embedding, spectral, space, scott, certificates })
}

#[derive(Clone, Debug)]
pub struct RoundIdealCompletion {
    /// Carrier `r0, r1, …` in lexicographic order of the members.
    pub order: LOrderedSet,
    pub members: Vec<LSubset>,
}

/// `RI(P) = {⋁_x D(x) ∧ ⇓x : D directed}` ordered by `sub`.
pub fn round_ideal_completion(p: &LOrderedSet, budget: &Budget) -> Result<RoundIdealCompletion> {
    let report = require_continuous(p, budget)?;
    let f = p.frame().clone();
    let n = p.len();
    let rows: Vec<&[Elt]> = (0..n).map(|x| report.way_below(x).values()).collect();
    let mut members: Vec<Vec<Elt>> = Vec::new();
    p.for_each_subset(budget, |d| {
        if p.directed_raw(d).holds() {
            let m: Vec<Elt> = (0..n)
                .map(|y| f.join_all((0..n).map(|x| f.meet(d[x], rows[x][y]))))
                .collect();
            members.push(m);
        }
    })?;
    members.sort();
    members.dedup();
    let carrier = Carrier::synthetic("r", members.len())?;
    let k = members.len();
    let mut e = Vec::with_capacity(k * k);
    for a in &members {
        for b in &members {
            e.push(crate::lorder::sub_raw(&f, a, b));
        }
    }
    let order = crate::lorder::validate_lorder(f.clone(), carrier, e)?;
    let members = members.into_iter().map(|v| p.subset_raw(v)).collect();
    Ok(RoundIdealCompletion { order, members })
}

#[derive(Clone, Debug)]
pub struct RoundIdealCrossCheck {
    /// `f(p) = ⋁_x p(⇑x) ∧ ⇓x`, from points to round ideals.
    pub to_round_ideals: LMap,
    /// `g(I)(A) = ⋁_x I(x) ∧ A(x)`, from round ideals to points.
    pub to_points: LMap,
    pub mutually_inverse: bool,
    /// `e_RI(f p, f q) = e(p,q)` for all points.
    pub order_isomorphism: bool,
}

/// Builds the explicit maps between `pt_L σ_L(P)` and `RI(P)` and checks
/// they are inverse L-order isomorphisms.
pub fn round_ideal_cross_check(
    p: &LOrderedSet,
    completion: &CompletionResult,
    ri: &RoundIdealCompletion,
    budget: &Budget,
) -> Result<RoundIdealCrossCheck> {
    let report = require_continuous(p, budget)?;
    let f = p.frame().clone();
    let n = p.len();
    let scott = &completion.scott;
    let space = &completion.space;
    // ⇑x(y) = ⇓y(x)
    let up_positions: Vec<usize> = (0..n)
        .map(|x| {
            let row: Vec<Elt> = (0..n).map(|y| report.way_below(y).value(x)).collect();
            scott.position(&row).ok_or_else(|| {
                Error::NotContinuous(format!("⇑{} is not Scott open", p.carrier().name(x)))
            })
        })
        .collect::<Result<_>>()?;
    let ri_index = |v: &[Elt]| ri.members.iter().position(|m| m.values() == v);
    let mut forward = Vec::with_capacity(space.len());
    for pt in &space.points {
        let v: Vec<Elt> = (0..n)
            .map(|y| {
                f.join_all((0..n).map(|x| f.meet(pt.0[up_positions[x]], report.way_below(x).value(y))))
            })
            .collect();
        forward.push(ri_index(&v).ok_or_else(|| {
            Error::NotContinuous(format!("f(p) = {} is not a round ideal", render_values(&f, &v)))
        })?);
    }
    let mut backward = Vec::with_capacity(ri.members.len());
    for m in &ri.members {
        let q = Point(
            scott
                .raw_opens()
                .iter()
                .map(|a| f.join_all((0..n).map(|x| f.meet(m.value(x), a[x]))))
                .collect(),
        );
        backward.push(space.index_of(&q).ok_or_else(|| {
            Error::NotContinuous(format!("g(I) = {} is not a point", q.render(&f)))
        })?);
    }
    let to_round_ideals = LMap::new(space.carrier.clone(), ri.order.carrier().clone(), forward)?;
    let to_points = LMap::new(ri.order.carrier().clone(), space.carrier.clone(), backward)?;
    let mutually_inverse = to_round_ideals.then(&to_points)? == LMap::identity(&space.carrier)
        && to_points.then(&to_round_ideals)? == LMap::identity(ri.order.carrier());
    let order = &completion.completion;
    let k = space.len();
    let order_isomorphism = (0..k).all(|a| {
        (0..k).all(|b| ri.order.e(to_round_ideals.apply(a), to_round_ideals.apply(b)) == order.e(a, b))
    });
    Ok(RoundIdealCrossCheck { to_round_ideals, to_points, mutually_inverse, order_isomorphism })
}

#[derive(Clone, Debug)]
pub struct Extension {
    pub completion: CompletionResult,
    /// `f̄` from the completion's carrier to `M`.
    pub map: LMap,
    pub scott_continuous: bool,
    /// `f̄ ∘ η_P = f`.
    pub factors: bool,
    /// `Some(true)` if no other Scott continuous map factors `f`;
    /// `None` if the search did not fit in the budget.
    pub unique: Option<bool>,
}

/// The universal extension `f̄: pt_L σ_L(P) → M` of a Scott continuous
/// `f: P → M` into a continuous L-dcpo.
pub fn extend_map(p: &LOrderedSet, m: &LOrderedSet, f: &LMap, budget: &Budget) -> Result<Extension> {
    let mr = continuity_report(m, budget)?;
    if !mr.is_continuous_ldcpo {
        let why = if !mr.is_ldcpo { "not an L-dcpo" } else { "not continuous" };
        return Err(Error::TargetNotContinuousLdcpo(why.into()));
    }
    let completion = directed_completion(p, budget)?;
    let sc = is_scott_continuous(f, p, m, budget)?;
    if !sc.holds {
        return Err(Error::NotScottContinuous(sc.reason.unwrap_or_default()));
    }
    let scott_m = scott_topology(m, budget)?;
    let sober = is_sober(&scott_m, budget)?;
    if !sober.sober {
        return Err(Error::TargetNotSober);
    }
    let eta_m_inv = sober.eta.inverse().expect("sober");
    let transported = pt_map(f, &completion.scott, &scott_m, budget)?;
    let map = transported.map.then(&eta_m_inv)?;
    let comp = &completion.completion;
    let scott_continuous = is_scott_continuous(&map, comp, m, budget)?.holds;
    let factors = completion.embedding.then(&map)? == *f;
    let unique = match unique_extension(&completion, m, f, &map, budget) {
        Ok(u) => Some(u),
        Err(e) if e.is_budget() => None,
        Err(e) => return Err(e),
    };
    Ok(Extension { completion, map, scott_continuous, factors, unique })
}

/// Exhausts maps `g` with `g ∘ η_P = f`, pruned by order preservation
/// (every Scott continuous map preserves the L-order), and reports whether
/// `expected` is the only Scott continuous one.
fn unique_extension(
    completion: &CompletionResult,
    m: &LOrderedSet,
    f: &LMap,
    expected: &LMap,
    budget: &Budget,
) -> Result<bool> {
    let c = &completion.completion;
    let k = c.len();
    let fr = c.frame().clone();
    let mut fixed: Vec<Option<usize>> = vec![None; k];
    for (x, &pt) in completion.embedding.assignment().iter().enumerate() {
        fixed[pt] = Some(f.apply(x));
    }
    let mut counter = budget.counter();
    let mut assign = vec![0usize; k];
    let mut others = 0usize;
    #[allow(clippy::too_many_arguments)]
    fn go(
        i: usize,
        c: &LOrderedSet,
        m: &LOrderedSet,
        fr: &crate::frame::Frame,
        fixed: &[Option<usize>],
        assign: &mut Vec<usize>,
        counter: &mut crate::budget::SearchCounter,
        visit: &mut dyn FnMut(&[usize]) -> Result<()>,
    ) -> Result<()> {
        let k = assign.len();
        if i == k {
            return visit(assign);
        }
        let choices: Vec<usize> = match fixed[i] {
            Some(t) => vec![t],
            None => (0..m.len()).collect(),
        };
        for t in choices {
            counter.tick()?;
            let ok = (0..i).all(|j| {
                fr.leq(c.e(i, j), m.e(t, assign[j])) && fr.leq(c.e(j, i), m.e(assign[j], t))
            });
            if ok {
                assign[i] = t;
                go(i + 1, c, m, fr, fixed, assign, counter, visit)?;
            }
        }
        Ok(())
    }
    let mut visit = |g: &[usize]| -> Result<()> {
        if g == expected.assignment() {
            return Ok(());
        }
        let map = LMap::new(c.carrier().clone(), m.carrier().clone(), g.to_vec())?;
        if is_scott_continuous(&map, c, m, budget)?.holds {
            others += 1;
        }
        Ok(())
    };
    go(0, c, m, &fr, &fixed, &mut assign, &mut counter, &mut visit)?;
    Ok(others == 0)
}

#[derive(Clone, Debug)]
pub struct CompletionVerdict {
    pub holds: bool,
    pub q_continuous_ldcpo: bool,
    pub j_scott_continuous: bool,
    /// `Σ_L Q` is a sobrification of `Σ_L P`; `None` when `Q` is not a
    /// continuous L-dcpo (its Scott space need not be sober).
    pub sobrification: Option<bool>,
    /// L-order isomorphism between the two open-set orders.
    pub certificate: Option<LMap>,
    /// `j: Σ_L P → Σ_L Q` is a quasihomeomorphism; `None` if `j` is not
    /// continuous for the Scott topologies.
    pub j_quasihomeomorphism: Option<bool>,
    pub reasons: Vec<String>,
}

/// Whether `j: P → Q` is a directed completion: `Q` a continuous L-dcpo,
/// `j` Scott continuous and `Σ_L Q` a sobrification of `Σ_L P`.
pub fn check_directed_completion(
    p: &LOrderedSet,
    q: &LOrderedSet,
    j: &LMap,
    budget: &Budget,
) -> Result<CompletionVerdict> {
    require_continuous(p, budget)?;
    let qr = continuity_report(q, budget)?;
    let mut reasons = Vec::new();
    if !qr.is_continuous_ldcpo {
        reasons.push(if qr.is_ldcpo { "Q is not continuous".into() } else { "Q is not an L-dcpo".into() });
    }
    let jsc = is_scott_continuous(j, p, q, budget)?;
    if !jsc.holds {
        reasons.push(format!("j is not Scott continuous: {}", jsc.reason.clone().unwrap_or_default()));
    }
    let sp = scott_topology(p, budget)?;
    let sq = scott_topology(q, budget)?;
    let (sobrification, certificate) = if qr.is_continuous_ldcpo {
        let v = check_sobrification(&sp, &sq, budget)?;
        if !v.holds {
            reasons.push(format!("Σ Q is not a sobrification of Σ P: {}", v.reason.unwrap_or_default()));
        }
        (Some(v.holds), v.certificate)
    } else {
        (None, None)
    };
    let j_quasihomeomorphism = match quasihomeo_check(j, &sp, &sq, QuasiMode::Quasi) {
        Ok(v) => Some(v.holds),
        Err(Error::NotContinuousMap(_)) => None,
        Err(e) => return Err(e),
    };
    let holds = qr.is_continuous_ldcpo && jsc.holds && sobrification == Some(true);
    Ok(CompletionVerdict {
        holds,
        q_continuous_ldcpo: qr.is_continuous_ldcpo,
        j_scott_continuous: jsc.holds,
        sobrification,
        certificate,
        j_quasihomeomorphism,
        reasons,
    })
}

/// `⇑x`, as an L-subset of `P` (requires the way-below relation).
pub fn way_above(p: &LOrderedSet, report: &ContinuityReport, x: usize) -> LSubset {
    let row = (0..p.len()).map(|y| report.way_below(y).value(x)).collect();
    p.subset_raw(row)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::lorder::lorder_isomorphic;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn identity_is_scott_continuous() {
        let p = fixtures::two_point_example();
        let id = LMap::identity(p.carrier());
        assert!(is_scott_continuous(&id, &p, &p, &b()).unwrap().holds);
    }

    #[test]
    fn order_reversal_on_a_chain_is_not_scott_continuous() {
        let f = fixtures::chain(2);
        let p = LOrderedSet::from_frame(&f);
        let flip = LMap::new(p.carrier().clone(), p.carrier().clone(), vec![1, 0]).unwrap();
        let v = is_scott_continuous(&flip, &p, &p, &b()).unwrap();
        assert!(!v.holds && v.witness.is_some());
    }

    #[test]
    fn completion_of_the_two_point_example() {
        let p = fixtures::two_point_example();
        let r = directed_completion(&p, &b()).unwrap();
        assert!(r.certificates.all(), "{:?}", r.certificates);
        assert_eq!(r.completion.len(), 4);
        let l4 = LOrderedSet::from_frame(&fixtures::diamond());
        assert!(lorder_isomorphic(&r.completion, &l4, &b()).unwrap().is_found());
        let ri = round_ideal_completion(&p, &b()).unwrap();
        assert!(lorder_isomorphic(&ri.order, &r.completion, &b()).unwrap().is_found());
        let x = round_ideal_cross_check(&p, &r, &ri, &b()).unwrap();
        assert!(x.mutually_inverse && x.order_isomorphism);
    }

    #[test]
    fn completion_verdicts() {
        let p = fixtures::two_point_example();
        let l4 = LOrderedSet::from_frame(&fixtures::diamond());
        let bot = l4.index_of("0").unwrap();
        let top = l4.index_of("1").unwrap();
        let j = LMap::new(p.carrier().clone(), l4.carrier().clone(), vec![bot, top]).unwrap();
        let v = check_directed_completion(&p, &l4, &j, &b()).unwrap();
        assert!(v.holds, "{:?}", v.reasons);
        let id = LMap::identity(p.carrier());
        let v = check_directed_completion(&p, &p, &id, &b()).unwrap();
        assert!(!v.holds && !v.q_continuous_ldcpo);
        let idl = LMap::identity(l4.carrier());
        assert!(check_directed_completion(&l4, &l4, &idl, &b()).unwrap().holds);
    }

    #[test]
    fn extension_of_the_unit_is_the_identity() {
        let p = fixtures::two_point_example();
        let r = directed_completion(&p, &b()).unwrap();
        let ext = extend_map(&p, &r.completion, &r.embedding, &b()).unwrap();
        assert_eq!(ext.map, LMap::identity(r.completion.carrier()));
        assert!(ext.factors && ext.scott_continuous);
        assert_eq!(ext.unique, Some(true));
    }

    #[test]
    fn extension_into_the_frame() {
        let p = fixtures::two_point_example();
        let l4 = LOrderedSet::from_frame(&fixtures::diamond());
        let j = LMap::new(p.carrier().clone(), l4.carrier().clone(), vec![0, 3]).unwrap();
        let ext = extend_map(&p, &l4, &j, &b()).unwrap();
        assert!(ext.factors && ext.scott_continuous);
        assert!(ext.map.is_bijective());
        assert_eq!(ext.unique, Some(true));
        let c = &ext.completion.completion;
        for a in 0..c.len() {
            for bb in 0..c.len() {
                assert_eq!(c.e(a, bb), l4.e(ext.map.apply(a), ext.map.apply(bb)));
            }
        }
        assert!(matches!(extend_map(&p, &p, &LMap::identity(p.carrier()), &b()), Err(Error::TargetNotContinuousLdcpo(_))));
    }
}
