//! Classical (two-valued) domain theory on small finite posets, written
//! directly with bitmask sets.
//!
//! Nothing here reuses the L-valued code paths; it serves as an
//! independent reference for the `chain(2)` case.

use crate::frame::Frame;
use crate::lorder::LOrderedSet;

/// Set of elements as a bitmask; at most 32 elements.
pub type Set = u32;

fn bits(s: Set) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| s >> i & 1 == 1)
}

fn subsets(n: usize) -> impl Iterator<Item = Set> {
    0..(1u32 << n)
}

/// A finite poset; `up[x]` is the set of `y` with `x ≤ y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    up: Vec<Set>,
}

impl Poset {
    /// From an explicit relation, assumed to be a partial order.
    pub fn new(n: usize, leq: impl Fn(usize, usize) -> bool) -> Poset {
        assert!(n <= 32);
        let up = (0..n)
            .map(|x| (0..n).filter(|&y| leq(x, y)).fold(0, |s, y| s | 1 << y))
            .collect();
        Poset { n, up }
    }

    /// The crisp part `e(x,y) = ⊤` of an L-order.
    pub fn from_lorder(p: &LOrderedSet) -> Poset {
        let top = p.frame().top();
        Poset::new(p.len(), |x, y| p.e(x, y) == top)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x] >> y & 1 == 1
    }

    pub fn full(&self) -> Set {
        (1u32 << self.n) - 1
    }

    fn down_of(&self, y: usize) -> Set {
        (0..self.n).filter(|&x| self.leq(x, y)).fold(0, |s, x| s | 1 << x)
    }

    pub fn is_lower(&self, s: Set) -> bool {
        bits(s).all(|y| self.down_of(y) & !s == 0)
    }

    pub fn is_upper(&self, s: Set) -> bool {
        bits(s).all(|x| self.up[x] & !s == 0)
    }

    pub fn is_directed(&self, d: Set) -> bool {
        d != 0 && bits(d).all(|x| bits(d).all(|y| self.up[x] & self.up[y] & d != 0))
    }

    /// Least upper bound.
    pub fn sup(&self, s: Set) -> Option<usize> {
        let ubs: Vec<usize> = (0..self.n).filter(|&u| bits(s).all(|x| self.leq(x, u))).collect();
        ubs.iter().copied().find(|&u| ubs.iter().all(|&v| self.leq(u, v)))
    }

    pub fn directed_sets(&self) -> Vec<Set> {
        subsets(self.n).filter(|&d| self.is_directed(d)).collect()
    }

    pub fn ideals(&self) -> Vec<Set> {
        subsets(self.n).filter(|&d| self.is_directed(d) && self.is_lower(d)).collect()
    }

    pub fn is_dcpo(&self) -> bool {
        self.directed_sets().iter().all(|&d| self.sup(d).is_some())
    }

    /// `x ≪ y`: every directed set with a supremum above `y` meets `↑x`.
    pub fn way_below(&self, x: usize, y: usize) -> bool {
        self.directed_sets().iter().all(|&d| match self.sup(d) {
            Some(s) if self.leq(y, s) => d & self.up[x] != 0,
            _ => true,
        })
    }

    /// `{y : y ≪ x}`.
    pub fn way_below_set(&self, x: usize) -> Set {
        (0..self.n).filter(|&y| self.way_below(y, x)).fold(0, |s, y| s | 1 << y)
    }

    pub fn is_continuous(&self) -> bool {
        (0..self.n).all(|x| {
            let w = self.way_below_set(x);
            self.is_directed(w) && self.sup(w) == Some(x)
        })
    }

    pub fn compact(&self) -> Set {
        (0..self.n).filter(|&x| self.way_below(x, x)).fold(0, |s, x| s | 1 << x)
    }

    pub fn is_algebraic(&self) -> bool {
        let k = self.compact();
        self.is_dcpo()
            && (0..self.n).all(|x| {
                let kx = self.down_of(x) & k;
                self.is_directed(kx) && self.sup(kx) == Some(x)
            })
    }

    /// Upper sets inaccessible by directed suprema.
    pub fn scott_opens(&self) -> Vec<Set> {
        let directed = self.directed_sets();
        subsets(self.n)
            .filter(|&u| {
                self.is_upper(u)
                    && directed.iter().all(|&d| match self.sup(d) {
                        Some(s) if u >> s & 1 == 1 => d & u != 0,
                        _ => true,
                    })
            })
            .collect()
    }

    pub fn scott_space(&self) -> Space {
        Space::new(self.n, self.scott_opens())
    }

    /// Order isomorphism by brute force over permutations.
    pub fn isomorphic(&self, other: &Poset) -> bool {
        if self.n != other.n {
            return false;
        }
        let mut perm: Vec<usize> = (0..self.n).collect();
        permutations(&mut perm, 0, &mut |p| {
            (0..self.n).all(|x| (0..self.n).all(|y| self.leq(x, y) == other.leq(p[x], p[y])))
        })
    }
}

fn permutations(v: &mut Vec<usize>, k: usize, test: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if k == v.len() {
        return test(v);
    }
    for i in k..v.len() {
        v.swap(k, i);
        if permutations(v, k + 1, test) {
            v.swap(k, i);
            return true;
        }
        v.swap(k, i);
    }
    false
}

/// A finite topological space as a sorted list of open sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Space {
    n: usize,
    opens: Vec<Set>,
}

impl Space {
    pub fn new(n: usize, mut opens: Vec<Set>) -> Space {
        opens.sort_unstable();
        opens.dedup();
        Space { n, opens }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn opens(&self) -> &[Set] {
        &self.opens
    }

    fn full(&self) -> Set {
        (1u32 << self.n) - 1
    }

    pub fn is_topology(&self) -> bool {
        let has = |s: Set| self.opens.binary_search(&s).is_ok();
        has(0)
            && has(self.full())
            && self.opens.iter().all(|&u| self.opens.iter().all(|&v| has(u | v) && has(u & v)))
    }

    /// Closure of a point.
    fn closure(&self, x: usize) -> Set {
        self.full()
            & !self
                .opens
                .iter()
                .filter(|&&u| u >> x & 1 == 0)
                .fold(0, |acc, &u| acc | u)
    }

    /// Nonempty closed sets not covered by two closed proper subsets.
    pub fn irreducible_closed(&self) -> Vec<Set> {
        let closed: Vec<Set> = self.opens.iter().map(|&u| self.full() & !u).collect();
        let mut out: Vec<Set> = closed
            .iter()
            .copied()
            .filter(|&c| {
                c != 0
                    && closed.iter().all(|&c1| {
                        closed.iter().all(|&c2| c & !(c1 | c2) != 0 || c & !c1 == 0 || c & !c2 == 0)
                    })
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn is_t0(&self) -> bool {
        (0..self.n).all(|x| ((x + 1)..self.n).all(|y| self.opens.iter().any(|&u| (u >> x & 1) != (u >> y & 1))))
    }

    /// Every irreducible closed set is the closure of exactly one point.
    pub fn is_sober(&self) -> bool {
        let irr = self.irreducible_closed();
        let closures: Vec<Set> = (0..self.n).map(|x| self.closure(x)).collect();
        irr.iter().all(|&c| closures.iter().filter(|&&k| k == c).count() == 1)
            && self.is_t0()
    }

    /// The space of irreducible closed sets with opens `{C : C ∩ U ≠ ∅}`.
    pub fn sobrification(&self) -> Space {
        let irr = self.irreducible_closed();
        let opens = self
            .opens
            .iter()
            .map(|&u| {
                irr.iter().enumerate().filter(|(_, &c)| c & u != 0).fold(0, |s, (i, _)| s | 1 << i)
            })
            .collect();
        Space::new(irr.len(), opens)
    }

    /// `x ⊑ y` iff every open containing `x` contains `y`.
    pub fn specialization(&self) -> Poset {
        Poset::new(self.n, |x, y| self.opens.iter().all(|&u| u >> x & 1 == 0 || u >> y & 1 == 1))
    }

    /// Nonempty `A` with `A ⊆ U ∪ V ⇒ A ⊆ U or A ⊆ V` for opens `U, V`.
    pub fn is_super_compact(&self, a: Set) -> bool {
        a != 0
            && self.opens.iter().all(|&u| {
                self.opens.iter().all(|&v| a & !(u | v) != 0 || a & !u == 0 || a & !v == 0)
            })
    }
}

/// The classical directed completion of a poset: the specialization order
/// of the sobrification of its Scott space.
pub fn directed_completion(p: &Poset) -> Poset {
    p.scott_space().sobrification().specialization()
}

/// Reads an L-subset over `chain(2)` as a set: elements with value `⊤`.
pub fn crisp(frame: &Frame, values: &[crate::frame::Elt]) -> Set {
    values.iter().enumerate().filter(|(_, &v)| v == frame.top()).fold(0, |s, (i, _)| s | 1 << i)
}

/// All posets on `n ≤ 6` elements up to isomorphism, each labeled along a
/// linear extension, in a fixed order.
pub fn posets_up_to_iso(n: usize) -> Vec<Poset> {
    assert!(n <= 6);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| ((x + 1)..n).map(move |y| (x, y))).collect();
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let rel = |x: usize, y: usize| {
            x == y || pairs.iter().position(|&q| q == (x, y)).is_some_and(|i| mask >> i & 1 == 1)
        };
        let transitive = (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| !(rel(x, y) && rel(y, z)) || rel(x, z))));
        if !transitive {
            continue;
        }
        let p = Poset::new(n, rel);
        let key = canonical_key(&p);
        if seen.insert(key) {
            out.push(p);
        }
    }
    out
}

fn canonical_key(p: &Poset) -> Vec<Set> {
    let mut best: Option<Vec<Set>> = None;
    let mut perm: Vec<usize> = (0..p.n).collect();
    permutations(&mut perm, 0, &mut |q| {
        let mut up = vec![0 as Set; p.n];
        for x in 0..p.n {
            for y in 0..p.n {
                if p.leq(x, y) {
                    up[q[x]] |= 1 << q[y];
                }
            }
        }
        if best.as_ref().is_none_or(|b| up < *b) {
            best = Some(up);
        }
        false
    });
    best.unwrap_or_default()
}
