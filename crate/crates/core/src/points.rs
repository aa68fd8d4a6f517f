//! Points of an open-set lattice, sobriety, sobrification and
//! quasihomeomorphisms.
//!
//! A point is stored as its vector of values on the opens of its topology,
//! indexed by the (sorted) position of each open.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::frame::{ensure_same_frame, Elt, Frame};
use crate::lorder::{
    ensure_same_carrier, join_raw, leq_raw, lorder_isomorphic, meet_raw, render_values, sub_raw,
    validate_lorder, Carrier, IsoOutcome, LMap, LOrderedSet, LSubset,
};
use crate::ltop::LTopology;

/// Values of a point on the opens of its topology, by open position.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Point(pub Vec<Elt>);

impl Point {
    pub fn values(&self) -> &[Elt] {
        &self.0
    }

    pub fn render(&self, frame: &Frame) -> String {
        render_values(frame, &self.0)
    }
}

/// `[x](A) = A(x)`.
pub fn point_of(t: &LTopology, x: usize) -> Result<Point> {
    if x >= t.carrier().len() {
        return Err(Error::ElementNotFound(format!("index {x}")));
    }
    Ok(Point(t.raw_opens().iter().map(|o| o[x]).collect()))
}

/// `[A](B) = sub(A,B)`; a point whenever `A` is super-compact.
pub fn point_of_subset(t: &LTopology, a: &LSubset) -> Result<Point> {
    ensure_same_frame(t.frame(), a.frame())?;
    ensure_same_carrier(t.carrier(), a.carrier())?;
    let f = t.frame();
    Ok(Point(t.raw_opens().iter().map(|o| sub_raw(f, a.values(), o)).collect()))
}

/// The first violated point axiom, or `None`.
///
/// Checks (Lpt1) binary meets, (Lpt2') binary joins (the empty join is the
/// constant `⊥`, covered by (Lpt3)), (Lpt3) constants, and that `p` is an
/// upper set in `(O(X), sub)`.
pub fn point_violation(t: &LTopology, p: &Point) -> Option<String> {
    let f = t.frame();
    let opens = t.raw_opens();
    let n = t.carrier().len();
    if p.0.len() != opens.len() {
        return Some(format!("{} values for {} opens", p.0.len(), opens.len()));
    }
    for a in f.elements() {
        let i = t.position(&vec![a; n]).expect("constants are open");
        if p.0[i] != a {
            return Some(format!("(Lpt3) p({}_X) = {}", f.name_of(a), f.name_of(p.0[i])));
        }
    }
    for i in 0..opens.len() {
        for j in i..opens.len() {
            let m = t.position(&meet_raw(f, &opens[i], &opens[j])).expect("open");
            if p.0[m] != f.meet(p.0[i], p.0[j]) {
                return Some(format!(
                    "(Lpt1) at {} ∧ {}",
                    render_values(f, &opens[i]),
                    render_values(f, &opens[j])
                ));
            }
            let u = t.position(&join_raw(f, &opens[i], &opens[j])).expect("open");
            if p.0[u] != f.join(p.0[i], p.0[j]) {
                return Some(format!(
                    "(Lpt2') at {} ∨ {}",
                    render_values(f, &opens[i]),
                    render_values(f, &opens[j])
                ));
            }
        }
    }
    for i in 0..opens.len() {
        for j in 0..opens.len() {
            let s = sub_raw(f, &opens[i], &opens[j]);
            if !f.leq(f.meet(p.0[i], s), p.0[j]) {
                return Some(format!(
                    "not an upper set in (O(X), sub) at {} → {}",
                    render_values(f, &opens[i]),
                    render_values(f, &opens[j])
                ));
            }
        }
    }
    None
}

/// `pt_L O(X)` with its spectral topology and the `sub` order.
#[derive(Clone, Debug)]
pub struct PointSpace {
    pub topology: LTopology,
    pub points: Vec<Point>,
    /// Synthetic carrier `p0, p1, …` in point order.
    pub carrier: Arc<Carrier>,
    /// Opens `φ(A)(p) = p(A)`.
    pub spectral: LTopology,
    /// `e(p,q) = sub(p,q)` on value vectors.
    pub order: LOrderedSet,
}

impl PointSpace {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.points.binary_search(p).ok()
    }

    /// `φ(A)` for the open at position `i` of the original topology.
    pub fn phi(&self, i: usize) -> Vec<Elt> {
        self.points.iter().map(|p| p.0[i]).collect()
    }

    /// `η_X: x ↦ [x]`.
    pub fn eta(&self) -> LMap {
        let assign = (0..self.topology.carrier().len())
            .map(|x| {
                let p = point_of(&self.topology, x).expect("in range");
                self.index_of(&p).expect("principal points are points")
            })
            .collect();
        LMap::new(self.topology.carrier().clone(), self.carrier.clone(), assign).expect("total")
    }
}

/// All points, by backtracking over values on the join-irreducible opens.
///
/// Join-irreducibles are visited in a linear extension of the pointwise
/// order, so both monotonicity and the meet condition
/// `p(J1 ∧ J2) = p(J1) ∧ p(J2)` can be checked as soon as `J1` or `J2` is
/// assigned. Every candidate is re-verified against all point axioms.
pub fn enumerate_points(t: &LTopology, budget: &Budget) -> Result<PointSpace> {
    let f = t.frame().clone();
    let opens = t.raw_opens();
    let m = opens.len();
    let n = t.carrier().len();
    let below: Vec<Vec<bool>> =
        (0..m).map(|i| (0..m).map(|j| leq_raw(&f, &opens[j], &opens[i])).collect()).collect();
    let bottom = t.position(&vec![f.bottom(); n]).expect("constants are open");
    let is_ji: Vec<bool> = (0..m)
        .map(|i| {
            if i == bottom {
                return false;
            }
            let mut acc = vec![f.bottom(); n];
            for j in 0..m {
                if j != i && below[i][j] {
                    acc = join_raw(&f, &acc, &opens[j]);
                }
            }
            acc != opens[i]
        })
        .collect();
    let rank: Vec<usize> = (0..m).map(|i| below[i].iter().filter(|&&b| b).count()).collect();
    let mut jis: Vec<usize> = (0..m).filter(|&i| is_ji[i]).collect();
    jis.sort_by_key(|&i| (rank[i], i));
    let jis_below: Vec<Vec<usize>> =
        (0..m).map(|a| jis.iter().enumerate().filter(|(_, &j)| below[a][j]).map(|(k, _)| k).collect()).collect();
    let consts: Vec<(Elt, usize)> = f
        .elements()
        .map(|a| (a, t.position(&vec![a; n]).expect("constants are open")))
        .collect();
    let bounds: Vec<(Elt, Elt)> = jis
        .iter()
        .map(|&j| {
            let lo = f.join_all(consts.iter().filter(|(_, c)| below[j][*c]).map(|(a, _)| *a));
            let hi = f.meet_all(consts.iter().filter(|(_, c)| below[*c][j]).map(|(a, _)| *a));
            (lo, hi)
        })
        .collect();
    let meet_pos: Vec<Vec<usize>> = jis
        .iter()
        .map(|&a| {
            jis.iter()
                .map(|&b| t.position(&meet_raw(&f, &opens[a], &opens[b])).expect("open"))
                .collect()
        })
        .collect();

    struct Ctx<'a> {
        f: &'a Frame,
        jis: &'a [usize],
        below: &'a [Vec<bool>],
        jis_below: &'a [Vec<usize>],
        bounds: &'a [(Elt, Elt)],
        meet_pos: &'a [Vec<usize>],
    }
    let ctx = Ctx {
        f: &f,
        jis: &jis,
        below: &below,
        jis_below: &jis_below,
        bounds: &bounds,
        meet_pos: &meet_pos,
    };
    let mut counter = budget.counter();
    let mut assigned = vec![f.bottom(); jis.len()];
    let mut found: Vec<Vec<Elt>> = Vec::new();

    fn go(
        c: &Ctx<'_>,
        k: usize,
        assigned: &mut Vec<Elt>,
        found: &mut Vec<Vec<Elt>>,
        counter: &mut crate::budget::SearchCounter,
    ) -> Result<()> {
        if k == c.jis.len() {
            found.push(assigned.clone());
            return Ok(());
        }
        let f = c.f;
        let (lo, hi) = c.bounds[k];
        for v in f.elements() {
            if !f.leq(lo, v) || !f.leq(v, hi) {
                continue;
            }
            counter.tick()?;
            let ok = (0..k).all(|l| {
                if c.below[c.jis[k]][c.jis[l]] && !f.leq(assigned[l], v) {
                    return false;
                }
                let mpos = c.meet_pos[k][l];
                let val = f.join_all(c.jis_below[mpos].iter().map(|&q| assigned[q]));
                val == f.meet(v, assigned[l])
            });
            if ok {
                assigned[k] = v;
                go(c, k + 1, assigned, found, counter)?;
            }
        }
        Ok(())
    }
    go(&ctx, 0, &mut assigned, &mut found, &mut counter)?;

    let mut points: Vec<Point> = found
        .into_iter()
        .map(|vals| {
            Point((0..m).map(|a| f.join_all(jis_below[a].iter().map(|&q| vals[q]))).collect())
        })
        .filter(|p| point_violation(t, p).is_none())
        .collect();
    points.sort();
    points.dedup();
    assemble(t, points)
}

fn assemble(t: &LTopology, points: Vec<Point>) -> Result<PointSpace> {
    let f = t.frame().clone();
    let carrier = Carrier::synthetic("p", points.len())?;
    let m = t.len();
    let spectral_opens: Vec<Vec<Elt>> =
        (0..m).map(|i| points.iter().map(|p| p.0[i]).collect()).collect();
    let spectral = LTopology::from_raw(f.clone(), carrier.clone(), spectral_opens);
    let k = points.len();
    let mut e = Vec::with_capacity(k * k);
    for p in &points {
        for q in &points {
            e.push(sub_raw(&f, &p.0, &q.0));
        }
    }
    let order = validate_lorder(f, carrier.clone(), e)?;
    Ok(PointSpace { topology: t.clone(), points, carrier, spectral, order })
}

#[derive(Clone, Debug)]
pub struct SoberReport {
    pub sober: bool,
    pub eta: LMap,
    /// Pairs of carrier elements with `[x] = [y]`.
    pub collisions: Vec<(usize, usize)>,
    /// Points (by index in the point space) not of the form `[x]`.
    pub non_principal: Vec<usize>,
    pub space: PointSpace,
}

pub fn is_sober(t: &LTopology, budget: &Budget) -> Result<SoberReport> {
    let space = enumerate_points(t, budget)?;
    let eta = space.eta();
    let a = eta.assignment();
    let mut collisions = Vec::new();
    for x in 0..a.len() {
        for y in (x + 1)..a.len() {
            if a[x] == a[y] {
                collisions.push((x, y));
            }
        }
    }
    let hit: BTreeSet<usize> = a.iter().copied().collect();
    let non_principal: Vec<usize> = (0..space.len()).filter(|i| !hit.contains(i)).collect();
    Ok(SoberReport {
        sober: collisions.is_empty() && non_principal.is_empty(),
        eta,
        collisions,
        non_principal,
        space,
    })
}

#[derive(Clone, Debug)]
pub struct Sobrification {
    pub space: PointSpace,
    pub eta: LMap,
    /// The spectral space is sober, recomputed from its own points.
    pub verified_sober: bool,
    /// `η` is a quasihomeomorphism onto the spectral space.
    pub verified_quasi: bool,
}

pub fn sobrify(t: &LTopology, budget: &Budget) -> Result<Sobrification> {
    let space = enumerate_points(t, budget)?;
    let eta = space.eta();
    let verified_sober = is_sober(&space.spectral, budget)?.sober;
    let verified_quasi = quasihomeo_check(&eta, t, &space.spectral, QuasiMode::Quasi)?.holds;
    Ok(Sobrification { space, eta, verified_sober, verified_quasi })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuasiMode {
    /// `f←: O(Y) → O(X)` is a bijection.
    Quasi,
    /// Also a subspace embedding: `f` injective with `O(X) = f←(O(Y))`.
    Strict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiVerdict {
    pub holds: bool,
    pub witness: Option<String>,
    /// For T0 spaces: whether "subspace embedding" agreed with
    /// "`f←` surjective on opens".
    pub t0_consistency: Option<bool>,
}

fn ensure_continuous(f: &LMap, s: &LTopology, t: &LTopology) -> Result<Vec<usize>> {
    ensure_same_frame(s.frame(), t.frame())?;
    ensure_same_carrier(f.source(), s.carrier())?;
    ensure_same_carrier(f.target(), t.carrier())?;
    t.raw_opens()
        .iter()
        .map(|v| {
            s.position(&f.backward_raw(v))
                .ok_or_else(|| Error::NotContinuousMap(render_values(t.frame(), v)))
        })
        .collect()
}

/// Checks `f: S → T` is a quasihomeomorphism or a strict embedding.
pub fn quasihomeo_check(f: &LMap, s: &LTopology, t: &LTopology, mode: QuasiMode) -> Result<QuasiVerdict> {
    let pre = ensure_continuous(f, s, t)?;
    let fr = t.frame();
    let mut witness = None;
    let mut hit = vec![false; s.len()];
    for (i, &j) in pre.iter().enumerate() {
        if hit[j] && witness.is_none() {
            let other = pre.iter().position(|&q| q == j).expect("seen");
            witness = Some(format!(
                "opens {} and {} have the same preimage",
                render_values(fr, &t.raw_opens()[other]),
                render_values(fr, &t.raw_opens()[i])
            ));
        }
        hit[j] = true;
    }
    let surjective = hit.iter().all(|&h| h);
    if witness.is_none() && !surjective {
        let miss = hit.iter().position(|&h| !h).expect("some miss");
        witness = Some(format!(
            "open {} is not a preimage",
            render_values(fr, &s.raw_opens()[miss])
        ));
    }
    let injective = f.is_injective();
    let embedding = injective && surjective;
    let t0_consistency = (s.is_t0() && t.is_t0()).then_some(embedding == surjective);
    let mut holds = witness.is_none();
    if mode == QuasiMode::Strict && holds && !injective {
        holds = false;
        let a = f.assignment();
        let (x, y) = (0..a.len())
            .flat_map(|x| ((x + 1)..a.len()).map(move |y| (x, y)))
            .find(|&(x, y)| a[x] == a[y])
            .expect("not injective");
        witness = Some(format!(
            "{} and {} have the same image",
            f.source().name(x),
            f.source().name(y)
        ));
    }
    Ok(QuasiVerdict { holds, witness, t0_consistency })
}

#[derive(Clone, Debug)]
pub struct PtMap {
    /// `p ↦ p ∘ f←` between the point carriers.
    pub map: LMap,
    pub source: PointSpace,
    pub target: PointSpace,
    pub continuous: bool,
    pub homeomorphism: bool,
}

pub fn pt_map(f: &LMap, s: &LTopology, t: &LTopology, budget: &Budget) -> Result<PtMap> {
    let pre = ensure_continuous(f, s, t)?;
    let source = enumerate_points(s, budget)?;
    let target = enumerate_points(t, budget)?;
    let assign = source
        .points
        .iter()
        .map(|p| {
            let q = Point(pre.iter().map(|&j| p.0[j]).collect());
            target.index_of(&q).ok_or_else(|| {
                Error::NotContinuousMap(format!("image of a point is not a point: {}", q.render(t.frame())))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let map = LMap::new(source.carrier.clone(), target.carrier.clone(), assign)?;
    let continuous = ensure_continuous(&map, &source.spectral, &target.spectral).is_ok();
    let homeomorphism = continuous && is_homeomorphism(&map, &source.spectral, &target.spectral);
    Ok(PtMap { map, source, target, continuous, homeomorphism })
}

/// A bijection whose preimage map is a bijection of opens.
pub fn is_homeomorphism(h: &LMap, s: &LTopology, t: &LTopology) -> bool {
    if !h.is_bijective() || s.len() != t.len() {
        return false;
    }
    let pre: Option<BTreeSet<usize>> =
        t.raw_opens().iter().map(|v| s.position(&h.backward_raw(v))).collect();
    matches!(pre, Some(set) if set.len() == s.len())
}

/// Backtracking search for a homeomorphism `S → T`.
///
/// A partial assignment `x_1 ↦ y_1, …, x_k ↦ y_k` survives only if the
/// projections of the opens of `T` onto `(y_1..y_k)` are exactly the
/// projections of the opens of `S` onto `(x_1..x_k)`.
pub fn find_homeomorphism(s: &LTopology, t: &LTopology, budget: &Budget) -> Result<Option<LMap>> {
    ensure_same_frame(s.frame(), t.frame())?;
    let n = s.carrier().len();
    if n != t.carrier().len() || s.len() != t.len() {
        return Ok(None);
    }
    let mut counter = budget.counter();
    let mut assign = vec![0usize; n];
    let mut used = vec![false; n];

    fn projections(opens: &[Vec<Elt>], idx: &[usize]) -> BTreeSet<Vec<Elt>> {
        opens.iter().map(|o| idx.iter().map(|&i| o[i]).collect()).collect()
    }

    fn go(
        k: usize,
        s: &LTopology,
        t: &LTopology,
        assign: &mut Vec<usize>,
        used: &mut Vec<bool>,
        counter: &mut crate::budget::SearchCounter,
    ) -> Result<bool> {
        let n = assign.len();
        if k == n {
            return Ok(true);
        }
        let xs: Vec<usize> = (0..=k).collect();
        for y in 0..n {
            if used[y] {
                continue;
            }
            counter.tick()?;
            assign[k] = y;
            if projections(s.raw_opens(), &xs) != projections(t.raw_opens(), &assign[..=k]) {
                continue;
            }
            used[y] = true;
            if go(k + 1, s, t, assign, used, counter)? {
                return Ok(true);
            }
            used[y] = false;
        }
        Ok(false)
    }

    if go(0, s, t, &mut assign, &mut used, &mut counter)? {
        let h = LMap::new(s.carrier().clone(), t.carrier().clone(), assign)?;
        debug_assert!(is_homeomorphism(&h, s, t));
        Ok(Some(h))
    } else {
        Ok(None)
    }
}

/// `(O(X), sub)` as an L-ordered set whose elements are named by their
/// value vectors.
pub fn open_order(t: &LTopology) -> LOrderedSet {
    let f = t.frame().clone();
    let names = t.raw_opens().iter().map(|o| render_values(&f, o)).collect();
    let carrier = Carrier::new(names).expect("opens are distinct and nonempty");
    let opens = t.raw_opens();
    let mut e = Vec::with_capacity(opens.len() * opens.len());
    for a in opens {
        for b in opens {
            e.push(sub_raw(&f, a, b));
        }
    }
    validate_lorder(f, carrier, e).expect("sub is an L-order")
}

#[derive(Clone, Debug)]
pub struct SobrificationVerdict {
    pub holds: bool,
    /// L-order isomorphism `(O(X), sub) → (O(Y), sub)`.
    pub certificate: Option<LMap>,
    pub reason: Option<String>,
}

/// `Y` is a sobrification of `X` iff `Y` is sober and
/// `(O(X), sub) ≅ (O(Y), sub)`.
pub fn check_sobrification(x: &LTopology, y: &LTopology, budget: &Budget) -> Result<SobrificationVerdict> {
    ensure_same_frame(x.frame(), y.frame())?;
    if !is_sober(y, budget)?.sober {
        return Err(Error::TargetNotSober);
    }
    match lorder_isomorphic(&open_order(x), &open_order(y), budget)? {
        IsoOutcome::Found(map) => Ok(SobrificationVerdict { holds: true, certificate: Some(map), reason: None }),
        IsoOutcome::Absent(reason) => Ok(SobrificationVerdict { holds: false, certificate: None, reason: Some(reason) }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::ltop::scott_topology;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn principal_points_are_points() {
        let p = fixtures::two_point_example();
        let t = scott_topology(&p, &b()).unwrap();
        let f = t.frame();
        let px = point_of(&t, 0).unwrap();
        let py = point_of(&t, 1).unwrap();
        assert_ne!(px, py);
        for q in [&px, &py] {
            assert!(point_violation(&t, q).is_none());
            let top = t.position(&[f.top(), f.top()]).unwrap();
            assert_eq!(q.0[top], f.top());
        }
    }

    #[test]
    fn two_point_example_has_four_points() {
        let p = fixtures::two_point_example();
        let t = scott_topology(&p, &b()).unwrap();
        let r = is_sober(&t, &b()).unwrap();
        assert_eq!(r.space.len(), 4);
        assert!(!r.sober);
        assert_eq!(r.non_principal.len(), 2);
        assert!(r.space.spectral.axiom_violation().is_none());
        assert_eq!(r.space.spectral.specialization().unwrap(), r.space.order);
    }

    #[test]
    fn frame_spaces_are_sober() {
        for f in [fixtures::diamond(), fixtures::five_element(), fixtures::chain(3)] {
            let p = LOrderedSet::from_frame(&f);
            let t = scott_topology(&p, &b()).unwrap();
            let r = is_sober(&t, &b()).unwrap();
            assert!(r.sober, "{}", f.name());
            assert_eq!(r.space.len(), f.len());
        }
    }

    #[test]
    fn sobrification_of_the_two_point_example() {
        let p = fixtures::two_point_example();
        let x = scott_topology(&p, &b()).unwrap();
        let l4 = LOrderedSet::from_frame(&fixtures::diamond());
        let y = scott_topology(&l4, &b()).unwrap();
        let s = sobrify(&x, &b()).unwrap();
        assert!(s.verified_sober && s.verified_quasi);
        assert!(find_homeomorphism(&s.space.spectral, &y, &b()).unwrap().is_some());
        let v = check_sobrification(&x, &y, &b()).unwrap();
        assert!(v.holds);
        let consts = LTopology::constants(x.frame(), x.carrier());
        assert!(!check_sobrification(&consts, &y, &b()).unwrap().holds);
        assert_eq!(check_sobrification(&y, &x, &b()).unwrap_err(), Error::TargetNotSober);
    }

    #[test]
    fn quasihomeomorphism_checks() {
        let p = fixtures::two_point_example();
        let x = scott_topology(&p, &b()).unwrap();
        let id = LMap::identity(x.carrier());
        assert!(quasihomeo_check(&id, &x, &x, QuasiMode::Strict).unwrap().holds);
        let constant = LMap::new(x.carrier().clone(), x.carrier().clone(), vec![1, 1]).unwrap();
        let v = quasihomeo_check(&constant, &x, &x, QuasiMode::Quasi).unwrap();
        assert!(!v.holds && v.witness.is_some());
        let s = sobrify(&x, &b()).unwrap();
        let pm = pt_map(&s.eta, &x, &s.space.spectral, &b()).unwrap();
        assert!(pm.homeomorphism);
        let swap = LMap::new(x.carrier().clone(), x.carrier().clone(), vec![1, 0]).unwrap();
        assert!(matches!(
            quasihomeo_check(&swap, &x, &x, QuasiMode::Quasi),
            Err(Error::NotContinuousMap(_))
        ));
    }
}
