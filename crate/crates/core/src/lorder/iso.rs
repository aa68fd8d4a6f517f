use super::{LMap, LOrderedSet};
use crate::budget::Budget;
use crate::error::Result;
use crate::frame::ensure_same_frame;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoOutcome {
    /// A bijection `σ` with `e_Q(σx, σy) = e_P(x, y)`.
    Found(LMap),
    Absent(String),
}

impl IsoOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, IsoOutcome::Found(_))
    }
}

/// Backtracking search for an L-order isomorphism, pruned by the multisets
/// of row and column values of each element.
pub fn lorder_isomorphic(p: &LOrderedSet, q: &LOrderedSet, budget: &Budget) -> Result<IsoOutcome> {
    ensure_same_frame(p.frame(), q.frame())?;
    let n = p.len();
    if n != q.len() {
        return Ok(IsoOutcome::Absent(format!("carrier sizes differ: {} vs {}", n, q.len())));
    }
    let sig = |o: &LOrderedSet, x: usize| {
        let mut row: Vec<usize> = (0..n).map(|y| o.e(x, y).index()).collect();
        let mut col: Vec<usize> = (0..n).map(|y| o.e(y, x).index()).collect();
        row.sort_unstable();
        col.sort_unstable();
        (row, col)
    };
    let sp: Vec<_> = (0..n).map(|x| sig(p, x)).collect();
    let sq: Vec<_> = (0..n).map(|x| sig(q, x)).collect();
    let mut a = sp.clone();
    let mut b = sq.clone();
    a.sort();
    b.sort();
    if a != b {
        return Ok(IsoOutcome::Absent("element signatures differ".into()));
    }
    let mut counter = budget.counter();
    let mut assign = vec![usize::MAX; n];
    let mut used = vec![false; n];

    #[allow(clippy::too_many_arguments)]
    fn go(
        i: usize,
        p: &LOrderedSet,
        q: &LOrderedSet,
        sp: &[(Vec<usize>, Vec<usize>)],
        sq: &[(Vec<usize>, Vec<usize>)],
        assign: &mut Vec<usize>,
        used: &mut Vec<bool>,
        counter: &mut crate::budget::SearchCounter,
    ) -> Result<bool> {
        let n = assign.len();
        if i == n {
            return Ok(true);
        }
        for t in 0..n {
            if used[t] || sp[i] != sq[t] || p.e(i, i) != q.e(t, t) {
                continue;
            }
            counter.tick()?;
            let ok = (0..i).all(|j| p.e(i, j) == q.e(t, assign[j]) && p.e(j, i) == q.e(assign[j], t));
            if !ok {
                continue;
            }
            assign[i] = t;
            used[t] = true;
            if go(i + 1, p, q, sp, sq, assign, used, counter)? {
                return Ok(true);
            }
            used[t] = false;
        }
        assign[i] = usize::MAX;
        Ok(false)
    }

    if go(0, p, q, &sp, &sq, &mut assign, &mut used, &mut counter)? {
        let map = LMap::new(p.carrier().clone(), q.carrier().clone(), assign)?;
        Ok(IsoOutcome::Found(map))
    } else {
        Ok(IsoOutcome::Absent("no value-preserving bijection".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::lorder::{validate_lorder, Carrier};

    #[test]
    fn renamed_copy_is_isomorphic() {
        let p = fixtures::two_point_example();
        let c = Carrier::new(vec!["v".into(), "u".into()]).unwrap();
        let m = p.matrix();
        // swap the two elements
        let e = vec![m[3], m[2], m[1], m[0]];
        let q = validate_lorder(p.frame().clone(), c, e).unwrap();
        match lorder_isomorphic(&p, &q, &Budget::default()).unwrap() {
            IsoOutcome::Found(map) => assert_eq!(map.assignment(), &[1, 0]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn discrete_and_chain_differ() {
        let p = fixtures::two_point_example();
        let f = p.frame().clone();
        let c = p.carrier().clone();
        let q = validate_lorder(f.clone(), c, vec![f.top(), f.bottom(), f.bottom(), f.top()]).unwrap();
        assert!(!lorder_isomorphic(&p, &q, &Budget::default()).unwrap().is_found());
    }
}
