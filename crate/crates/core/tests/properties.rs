//! Randomised laws for frames, generated topologies and their specialization orders.

use std::sync::Arc;

use fvdom_core::error::Error;
use fvdom_core::frame::{build_frame, validate_frame, FrameBuilder, FrameDescription};
use fvdom_core::lorder::{continuity_report, enumerate_ideals, is_ldcpo, sub, Carrier, EnumMode, LOrderedSet, LSubset};
use fvdom_core::ltop::{generate_topology, scott_topology, LTopology};
use fvdom_core::points::{enumerate_points, is_sober, point_violation, sobrify};
use fvdom_core::{Budget, Elt, Frame};
use proptest::prelude::*;

fn b() -> Budget {
    Budget::default()
}

fn elt(f: &Frame, i: usize) -> Elt {
    f.elements().nth(i).unwrap()
}

fn frame_strategy() -> impl Strategy<Value = Arc<Frame>> {
    let leaf = prop_oneof![
        (1usize..=5).prop_map(FrameBuilder::Chain),
        (0usize..=3).prop_map(FrameBuilder::Powerset),
    ];
    (leaf.clone(), proptest::option::of(leaf)).prop_map(|(a, b)| {
        let a = Arc::new(build_frame("A", &a).unwrap());
        match b {
            None => a,
            Some(b) => {
                let b = Arc::new(build_frame("B", &b).unwrap());
                Arc::new(build_frame("AxB", &FrameBuilder::Product(a, b)).unwrap())
            }
        }
    })
}

fn check_frame_laws(f: &Frame) -> Result<(), TestCaseError> {
    let els: Vec<Elt> = f.elements().collect();
    for &a in &els {
        prop_assert!(f.leq(f.bottom(), a) && f.leq(a, f.top()));
        for &c in &els {
            let m = f.meet(a, c);
            let j = f.join(a, c);
            prop_assert!(f.leq(m, a) && f.leq(m, c) && f.leq(a, j) && f.leq(c, j));
            prop_assert_eq!(m, f.meet(c, a));
            prop_assert_eq!(f.leq(a, c), m == a);
            for &x in &els {
                // Heyting adjunction
                prop_assert_eq!(f.leq(f.meet(x, a), c), f.leq(x, f.heyting(a, c)));
                prop_assert_eq!(f.meet(a, f.join(c, x)), f.join(f.meet(a, c), f.meet(a, x)));
                if f.leq(x, a) && f.leq(x, c) {
                    prop_assert!(f.leq(x, m));
                }
                if f.leq(a, x) && f.leq(c, x) {
                    prop_assert!(f.leq(j, x));
                }
            }
        }
    }
    Ok(())
}

/// Reflexive-transitive closure of a relation on `n` points.
fn closure(n: usize, rel: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut le = vec![vec![false; n]; n];
    for (i, row) in le.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(a, c) in rel {
        le[a][c] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i][k] && le[k][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    le
}

/// Least upper bound (or greatest lower bound when `up` is false) by brute force.
fn bound(le: &[Vec<bool>], a: usize, c: usize, up: bool) -> Option<usize> {
    let n = le.len();
    let r = |x: usize, y: usize| if up { le[x][y] } else { le[y][x] };
    let ub: Vec<usize> = (0..n).filter(|&u| r(a, u) && r(c, u)).collect();
    ub.iter().copied().find(|&u| ub.iter().all(|&v| r(u, v)))
}

/// `Some(distributive)` if the relation generates a lattice, `None` otherwise.
fn lattice_oracle(n: usize, rel: &[(usize, usize)]) -> Option<bool> {
    let le = closure(n, rel);
    let mut meet = vec![vec![0; n]; n];
    let mut join = vec![vec![0; n]; n];
    for a in 0..n {
        for c in 0..n {
            if a != c && le[a][c] && le[c][a] {
                return None;
            }
            meet[a][c] = bound(&le, a, c, false)?;
            join[a][c] = bound(&le, a, c, true)?;
        }
    }
    let mut dist = true;
    for a in 0..n {
        for c in 0..n {
            for x in 0..n {
                dist &= meet[a][join[c][x]] == join[meet[a][c]][meet[a][x]];
            }
        }
    }
    Some(dist)
}

fn relation_strategy() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1usize..=6).prop_flat_map(|n| {
        let pair = (0..n, 0..n);
        (Just(n), proptest::collection::vec(pair, 0..=2 * n))
    })
}

fn subset_strategy(f: Arc<Frame>, n: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(0..f.len(), n)
}

/// A random frame, carrier size and subbase; the topology is built in the test.
fn space_strategy() -> impl Strategy<Value = (Arc<Frame>, usize, Vec<Vec<usize>>)> {
    let frame = prop_oneof![(2usize..=3).prop_map(FrameBuilder::Chain), Just(FrameBuilder::Powerset(2))]
        .prop_map(|k| Arc::new(build_frame("L", &k).unwrap()));
    (frame, 1usize..=3).prop_flat_map(|(f, n)| {
        let s = proptest::collection::vec(subset_strategy(f.clone(), n), 0..=3);
        (Just(f), Just(n), s)
    })
}

fn build_space(f: &Arc<Frame>, n: usize, subbase: &[Vec<usize>]) -> LTopology {
    let c = Carrier::synthetic("x", n).unwrap();
    let subbase: Vec<LSubset> = subbase
        .iter()
        .map(|v| LSubset::new(f.clone(), c.clone(), v.iter().map(|&i| elt(f, i)).collect()).unwrap())
        .collect();
    generate_topology(f, &c, &subbase, &b()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn built_frames_satisfy_the_frame_laws(f in frame_strategy()) {
        check_frame_laws(&f)?;
    }

    #[test]
    fn validation_agrees_with_a_brute_force_lattice_check((n, rel) in relation_strategy()) {
        let name = |i: usize| format!("e{i}");
        let desc = FrameDescription {
            name: "R".into(),
            elements: (0..n).map(name).collect(),
            relation: rel.iter().map(|&(a, c)| (name(a), name(c))).collect(),
        };
        let got = validate_frame(&desc);
        match lattice_oracle(n, &rel) {
            Some(true) => {
                let f = got.expect("distributive lattice accepted");
                check_frame_laws(&f)?;
                let le = closure(n, &rel);
                for (a, row) in le.iter().enumerate() {
                    for (c, &expected) in row.iter().enumerate() {
                        let (x, y) = (f.elt(&name(a)).unwrap(), f.elt(&name(c)).unwrap());
                        prop_assert_eq!(f.leq(x, y), expected);
                    }
                }
            }
            Some(false) => prop_assert!(matches!(got, Err(Error::NotDistributive { .. })), "{:?}", got),
            None => prop_assert!(got.is_err()),
        }
    }

    #[test]
    fn generated_topologies_are_topologies((f, n, subbase) in space_strategy()) {
        let t = build_space(&f, n, &subbase);
        prop_assert_eq!(t.axiom_violation(), None);
        for s in &subbase {
            let s = LSubset::new(f.clone(), t.carrier().clone(), s.iter().map(|&i| elt(&f, i)).collect()).unwrap();
            prop_assert!(t.contains(&s));
        }
    }

    #[test]
    fn specialization_orders_behave((f, n, subbase) in space_strategy()) {
        let t = build_space(&f, n, &subbase);
        prop_assume!(t.is_t0());
        let p = t.specialization().unwrap();
        let ff = p.frame().clone();
        for x in 0..n {
            prop_assert_eq!(p.e(x, x), ff.top());
            for y in 0..n {
                for z in 0..n {
                    prop_assert!(ff.leq(ff.meet(p.e(x, y), p.e(y, z)), p.e(x, z)));
                }
            }
        }
        let r = continuity_report(&p, &b()).unwrap();
        let s = scott_topology(&p, &b()).unwrap();
        prop_assert_eq!(s.axiom_violation(), None);
        for x in 0..n {
            let w = r.way_below(x);
            for y in 0..n {
                prop_assert!(ff.leq(w.value(y), p.e(y, x)));
            }
        }
        for d in enumerate_ideals(&p, EnumMode::Ideals, &b()).unwrap() {
            prop_assert!(p.is_directed(&d.set).unwrap().holds());
        }
        if r.is_ldcpo {
            let q = s.specialization().unwrap();
            prop_assert_eq!(q.matrix(), p.matrix());
        }
        let opens = s.opens();
        for a in &opens {
            for u in &opens {
                for v in &opens {
                    let lhs = sub(a, &u.meet(v).unwrap()).unwrap();
                    prop_assert_eq!(lhs, ff.meet(sub(a, u).unwrap(), sub(a, v).unwrap()));
                }
            }
        }
    }

    #[test]
    fn point_spaces_of_generated_topologies((f, n, subbase) in space_strategy()) {
        let t = build_space(&f, n, &subbase);
        let s = enumerate_points(&t, &b()).unwrap();
        for q in &s.points {
            prop_assert_eq!(point_violation(&t, q), None);
        }
        for x in 0..n {
            prop_assert!(s.index_of(&fvdom_core::points::point_of(&t, x).unwrap()).is_some());
        }
        prop_assert!(is_ldcpo(&s.order, &b()).unwrap().holds);
        let q = s.spectral.specialization().unwrap();
        prop_assert_eq!(q.matrix(), s.order.matrix());
        let sob = sobrify(&t, &b()).unwrap();
        prop_assert!(is_sober(&sob.space.spectral, &b()).unwrap().sober);
        prop_assert_eq!(is_sober(&t, &b()).unwrap().sober, t.is_t0() && s.len() == n);
    }
}

#[test]
fn from_frame_orders_are_their_own_completions() {
    for k in [FrameBuilder::Chain(3), FrameBuilder::Powerset(2)] {
        let f = Arc::new(build_frame("L", &k).unwrap());
        let p = LOrderedSet::from_frame(&f);
        assert!(continuity_report(&p, &b()).unwrap().is_continuous_ldcpo);
    }
}
