//! Generated families of small L-ordered sets.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::classical::posets_up_to_iso;
use crate::fixtures;
use crate::frame::{Elt, Frame};
use crate::lorder::{validate_lorder, Carrier, LOrderedSet};

/// A corpus member with a short description of where it came from.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub label: String,
    pub order: LOrderedSet,
}

/// Every L-order on `n` points over `frame`, up to isomorphism, in a
/// deterministic order. Exhaustive over `|L|^(n(n-1))` matrices.
pub fn lorders_up_to_iso(frame: &Arc<Frame>, n: usize) -> Vec<LOrderedSet> {
    let carrier = Carrier::synthetic("x", n).expect("n > 0");
    let k = frame.len();
    let off: Vec<(usize, usize)> =
        (0..n).flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y))).collect();
    let total = (k as u64).pow(off.len() as u32);
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    for code in 0..total {
        let mut e = vec![frame.top(); n * n];
        let mut c = code;
        for &(x, y) in &off {
            e[x * n + y] = Elt::from_index((c % k as u64) as usize);
            c /= k as u64;
        }
        let Ok(p) = validate_lorder(frame.clone(), carrier.clone(), e) else {
            continue;
        };
        if seen.insert(canonical_key(&p)) {
            out.push(p);
        }
    }
    out
}

fn canonical_key(p: &LOrderedSet) -> Vec<usize> {
    let n = p.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<usize>> = None;
    fn go(perm: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
        if k == perm.len() {
            visit(perm);
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            go(perm, k + 1, visit);
            perm.swap(k, i);
        }
    }
    go(&mut perm, 0, &mut |q| {
        let mut key = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                key[q[x] * n + q[y]] = p.e(x, y).index();
            }
        }
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    });
    best.unwrap_or_default()
}

/// Classical posets on `n` points as L-orders over `chain(2)`.
pub fn classical_lorders(n: usize) -> Vec<LOrderedSet> {
    let f = fixtures::chain(2);
    let carrier = Carrier::synthetic("x", n).expect("n > 0");
    posets_up_to_iso(n)
        .into_iter()
        .map(|p| {
            let e = (0..n)
                .flat_map(|x| (0..n).map(move |y| (x, y)))
                .map(|(x, y)| if p.leq(x, y) { f.top() } else { f.bottom() })
                .collect();
            validate_lorder(f.clone(), carrier.clone(), e).expect("posets are L-orders")
        })
        .collect()
}

/// The standard corpus: all L-orders on up to three points over `chain(2)`,
/// `chain(3)` and `L4`, all classical posets on four points, and the
/// frames `(L, e_L)` for `chain(3)`, `L4` and `L5`.
pub fn standard_corpus() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for f in [fixtures::chain(2), fixtures::chain(3), fixtures::diamond()] {
        for n in 1..=3 {
            for (i, p) in lorders_up_to_iso(&f, n).into_iter().enumerate() {
                out.push(CorpusEntry { label: format!("{}/n{}/#{}", f.name(), n, i), order: p });
            }
        }
    }
    for (i, p) in classical_lorders(4).into_iter().enumerate() {
        out.push(CorpusEntry { label: format!("C2/n4/#{i}"), order: p });
    }
    for f in [fixtures::chain(3), fixtures::diamond(), fixtures::five_element()] {
        out.push(CorpusEntry { label: format!("({}, e)", f.name()), order: LOrderedSet::from_frame(&f) });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_counts_agree() {
        let f = fixtures::chain(2);
        for n in 1..=3 {
            assert_eq!(lorders_up_to_iso(&f, n).len(), classical_lorders(n).len());
        }
    }

    #[test]
    fn two_point_orders_over_the_diamond() {
        // any (u, v) except (1, 1); the swap identifies (u, v) with (v, u)
        assert_eq!(lorders_up_to_iso(&fixtures::diamond(), 2).len(), (15 + 3) / 2);
    }
}
