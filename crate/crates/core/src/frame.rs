//! Finite frames (complete Heyting algebras) used as truth-value tables.
//!
//! A [`Frame`] is stored extensionally: the full order relation plus
//! precomputed meet, join and implication tables, so every lattice
//! operation is a table lookup. Elements are addressed by [`Elt`], an index
//! into the declaration order of the frame's element names.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// An element of a frame, identified by its position in declaration order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Elt(pub(crate) u16);

impl Elt {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub(crate) fn from_index(i: usize) -> Elt {
        Elt(i as u16)
    }
}

/// Raw lattice description: element names plus a generating order relation
/// (covers or any subset of `≤` whose reflexive-transitive closure is `≤`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameDescription {
    pub name: String,
    pub elements: Vec<String>,
    /// Pairs `(lower, upper)`.
    pub relation: Vec<(String, String)>,
}

/// Builders for common frames.
#[derive(Clone, Debug)]
pub enum FrameBuilder {
    Chain(usize),
    Powerset(usize),
    Product(Arc<Frame>, Arc<Frame>),
    FromCovers(FrameDescription),
}

#[derive(Clone, PartialEq, Eq)]
pub struct Frame {
    name: String,
    names: Vec<String>,
    leq: Vec<bool>,
    meet: Vec<Elt>,
    join: Vec<Elt>,
    imp: Vec<Elt>,
    bottom: Elt,
    top: Elt,
    covers: Vec<(Elt, Elt)>,
}

impl fmt::Debug for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Frame({}: {:?})", self.name, self.names)
    }
}

/// Largest supported frame.
pub const MAX_FRAME_SIZE: usize = 1024;

/// Validates a raw lattice description and fills the operation tables.
///
/// Rejection names the first violated axiom. Distributivity is checked in
/// its binary form, which for finite lattices is equivalent to the infinite
/// law; the reported witness is the first failing triple in declaration
/// order.
pub fn validate_frame(desc: &FrameDescription) -> Result<Frame> {
    let n = desc.elements.len();
    if n == 0 {
        return Err(Error::NotComplete("no elements (bounds missing)".into()));
    }
    if n > MAX_FRAME_SIZE {
        return Err(Error::BadBuilderSpec(format!(
            "frame with {n} elements exceeds the limit of {MAX_FRAME_SIZE}"
        )));
    }
    for (i, a) in desc.elements.iter().enumerate() {
        if desc.elements[..i].contains(a) {
            return Err(Error::DuplicateElement(a.clone()));
        }
    }
    let idx = |s: &str| -> Result<usize> {
        desc.elements
            .iter()
            .position(|e| e == s)
            .ok_or_else(|| Error::ElementNotFound(s.to_string()))
    };
    let mut leq = vec![false; n * n];
    for i in 0..n {
        leq[i * n + i] = true;
    }
    for (lo, hi) in &desc.relation {
        let (i, j) = (idx(lo)?, idx(hi)?);
        leq[i * n + j] = true;
    }
    // Warshall closure.
    for k in 0..n {
        for i in 0..n {
            if leq[i * n + k] {
                for j in 0..n {
                    if leq[k * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if leq[i * n + j] && leq[j * n + i] {
                return Err(Error::NotAPartialOrder(
                    desc.elements[i].clone(),
                    desc.elements[j].clone(),
                ));
            }
        }
    }
    let l = |i: usize, j: usize| leq[i * n + j];
    let bottom = (0..n).find(|&b| (0..n).all(|j| l(b, j)));
    let top = (0..n).find(|&t| (0..n).all(|j| l(j, t)));
    let (bottom, top) = match (bottom, top) {
        (Some(b), Some(t)) => (b, t),
        (None, _) => return Err(Error::NotComplete("no bottom element".into())),
        (_, None) => return Err(Error::NotComplete("no top element".into())),
    };

    let mut meet = vec![Elt(0); n * n];
    let mut join = vec![Elt(0); n * n];
    for i in 0..n {
        for j in 0..n {
            let glb = (0..n)
                .filter(|&c| l(c, i) && l(c, j))
                .find(|&c| (0..n).all(|d| !(l(d, i) && l(d, j)) || l(d, c)));
            let lub = (0..n)
                .filter(|&c| l(i, c) && l(j, c))
                .find(|&c| (0..n).all(|d| !(l(i, d) && l(j, d)) || l(c, d)));
            match (glb, lub) {
                (Some(m), Some(s)) => {
                    meet[i * n + j] = Elt::from_index(m);
                    join[i * n + j] = Elt::from_index(s);
                }
                (None, _) => {
                    return Err(Error::NotComplete(format!(
                        "{} and {} have no meet",
                        desc.elements[i], desc.elements[j]
                    )))
                }
                (_, None) => {
                    return Err(Error::NotComplete(format!(
                        "{} and {} have no join",
                        desc.elements[i], desc.elements[j]
                    )))
                }
            }
        }
    }

    let m = |i: usize, j: usize| meet[i * n + j].index();
    let jn = |i: usize, j: usize| join[i * n + j].index();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let lhs = m(a, jn(b, c));
                let rhs = jn(m(a, b), m(a, c));
                if lhs != rhs {
                    return Err(Error::NotDistributive {
                        a: desc.elements[a].clone(),
                        b: desc.elements[b].clone(),
                        c: desc.elements[c].clone(),
                        lhs: desc.elements[lhs].clone(),
                        rhs: desc.elements[rhs].clone(),
                    });
                }
            }
        }
    }

    // a → b = ⋁{c : a ∧ c ≤ b}
    let mut imp = vec![Elt(0); n * n];
    for a in 0..n {
        for b in 0..n {
            let mut acc = bottom;
            for c in 0..n {
                if l(m(a, c), b) {
                    acc = jn(acc, c);
                }
            }
            imp[a * n + b] = Elt::from_index(acc);
        }
    }

    let mut covers = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && l(i, j) && !(0..n).any(|k| k != i && k != j && l(i, k) && l(k, j)) {
                covers.push((Elt::from_index(i), Elt::from_index(j)));
            }
        }
    }

    Ok(Frame {
        name: desc.name.clone(),
        names: desc.elements.clone(),
        leq,
        meet,
        join,
        imp,
        bottom: Elt::from_index(bottom),
        top: Elt::from_index(top),
        covers,
    })
}

/// Builds one of the standard frames.
pub fn build_frame(name: &str, kind: &FrameBuilder) -> Result<Frame> {
    let desc = match kind {
        FrameBuilder::Chain(k) => {
            if *k < 1 {
                return Err(Error::BadBuilderSpec("chain needs at least one element".into()));
            }
            let elements: Vec<String> = (0..*k).map(|i| chain_label(i, *k)).collect();
            let relation = elements
                .windows(2)
                .map(|w| (w[0].clone(), w[1].clone()))
                .collect();
            FrameDescription { name: name.into(), elements, relation }
        }
        FrameBuilder::Powerset(k) => {
            if *k > 10 {
                return Err(Error::BadBuilderSpec(format!("powerset({k}) is too large")));
            }
            let size = 1usize << k;
            let label = |mask: usize| {
                let items: Vec<String> =
                    (0..*k).filter(|b| mask >> b & 1 == 1).map(|b| (b + 1).to_string()).collect();
                format!("{{{}}}", items.join(","))
            };
            let elements: Vec<String> = (0..size).map(label).collect();
            let mut relation = Vec::new();
            for mask in 0..size {
                for b in 0..*k {
                    if mask >> b & 1 == 0 {
                        relation.push((label(mask), label(mask | 1 << b)));
                    }
                }
            }
            FrameDescription { name: name.into(), elements, relation }
        }
        FrameBuilder::Product(f1, f2) => {
            if f1.len() * f2.len() > MAX_FRAME_SIZE {
                return Err(Error::BadBuilderSpec("product is too large".into()));
            }
            let label = |a: Elt, b: Elt| format!("({},{})", f1.name_of(a), f2.name_of(b));
            let mut elements = Vec::new();
            for a in f1.elements() {
                for b in f2.elements() {
                    elements.push(label(a, b));
                }
            }
            let mut relation = Vec::new();
            for &(lo, hi) in f1.covers() {
                for b in f2.elements() {
                    relation.push((label(lo, b), label(hi, b)));
                }
            }
            for a in f1.elements() {
                for &(lo, hi) in f2.covers() {
                    relation.push((label(a, lo), label(a, hi)));
                }
            }
            FrameDescription { name: name.into(), elements, relation }
        }
        FrameBuilder::FromCovers(desc) => {
            let mut desc = desc.clone();
            desc.name = name.into();
            desc
        }
    };
    validate_frame(&desc)
}

fn chain_label(i: usize, k: usize) -> String {
    if i == 0 {
        return "0".into();
    }
    if i + 1 == k {
        return "1".into();
    }
    let (mut p, mut q) = (i, k - 1);
    let g = gcd(p, q);
    p /= g;
    q /= g;
    format!("{p}/{q}")
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Frame {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elt> + '_ {
        (0..self.names.len()).map(Elt::from_index)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name_of(&self, e: Elt) -> &str {
        &self.names[e.index()]
    }

    pub fn elt(&self, name: &str) -> Result<Elt> {
        self.names
            .iter()
            .position(|s| s == name)
            .map(Elt::from_index)
            .ok_or_else(|| Error::ElementNotFound(format!("{name} (in frame {})", self.name)))
    }

    pub fn top(&self) -> Elt {
        self.top
    }

    pub fn bottom(&self) -> Elt {
        self.bottom
    }

    /// Cover pairs `(lower, upper)` of the Hasse diagram, in declaration order.
    pub fn covers(&self) -> &[(Elt, Elt)] {
        &self.covers
    }

    #[inline]
    pub fn leq(&self, a: Elt, b: Elt) -> bool {
        self.leq[a.index() * self.names.len() + b.index()]
    }

    #[inline]
    pub fn meet(&self, a: Elt, b: Elt) -> Elt {
        self.meet[a.index() * self.names.len() + b.index()]
    }

    #[inline]
    pub fn join(&self, a: Elt, b: Elt) -> Elt {
        self.join[a.index() * self.names.len() + b.index()]
    }

    /// Heyting implication `a → b`, the right adjoint of `a ∧ -`.
    #[inline]
    pub fn heyting(&self, a: Elt, b: Elt) -> Elt {
        self.imp[a.index() * self.names.len() + b.index()]
    }

    pub fn meet_all(&self, it: impl IntoIterator<Item = Elt>) -> Elt {
        it.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn join_all(&self, it: impl IntoIterator<Item = Elt>) -> Elt {
        it.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Heyting implication by element names.
    pub fn heyting_named(&self, a: &str, b: &str) -> Result<&str> {
        let (a, b) = (self.elt(a)?, self.elt(b)?);
        Ok(self.name_of(self.heyting(a, b)))
    }

    /// Elements below `a`, in declaration order.
    pub fn down(&self, a: Elt) -> Vec<Elt> {
        self.elements().filter(|&b| self.leq(b, a)).collect()
    }

    /// The raw description this frame was validated from (covers only).
    pub fn description(&self) -> FrameDescription {
        FrameDescription {
            name: self.name.clone(),
            elements: self.names.clone(),
            relation: self
                .covers
                .iter()
                .map(|&(a, b)| (self.names[a.index()].clone(), self.names[b.index()].clone()))
                .collect(),
        }
    }

    /// Structural equality, ignoring the frame's own name.
    pub fn same_structure(&self, other: &Frame) -> bool {
        self.names == other.names && self.leq == other.leq
    }
}

/// Cross-frame operations are rejected rather than coerced.
pub(crate) fn ensure_same_frame(a: &Arc<Frame>, b: &Arc<Frame>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a.same_structure(b) {
        Ok(())
    } else {
        Err(Error::FrameMismatch(a.name.clone(), b.name.clone()))
    }
}

/// Searches for an order isomorphism between two frames.
///
/// Returns the image of each element of `a` in `b`.
pub fn frame_isomorphism(a: &Frame, b: &Frame) -> Option<Vec<Elt>> {
    if a.len() != b.len() {
        return None;
    }
    let n = a.len();
    let sig = |f: &Frame, x: Elt| {
        (
            f.elements().filter(|&y| f.leq(y, x)).count(),
            f.elements().filter(|&y| f.leq(x, y)).count(),
        )
    };
    let sa: Vec<_> = a.elements().map(|x| sig(a, x)).collect();
    let sb: Vec<_> = b.elements().map(|x| sig(b, x)).collect();
    let mut image = vec![Elt(0); n];
    let mut used = vec![false; n];
    fn go(
        i: usize,
        a: &Frame,
        b: &Frame,
        sa: &[(usize, usize)],
        sb: &[(usize, usize)],
        image: &mut Vec<Elt>,
        used: &mut Vec<bool>,
    ) -> bool {
        let n = a.len();
        if i == n {
            return true;
        }
        let x = Elt::from_index(i);
        for j in 0..n {
            if used[j] || sa[i] != sb[j] {
                continue;
            }
            let y = Elt::from_index(j);
            let ok = (0..i).all(|k| {
                let xk = Elt::from_index(k);
                a.leq(x, xk) == b.leq(y, image[k]) && a.leq(xk, x) == b.leq(image[k], y)
            });
            if ok {
                used[j] = true;
                image[i] = y;
                if go(i + 1, a, b, sa, sb, image, used) {
                    return true;
                }
                used[j] = false;
            }
        }
        false
    }
    if go(0, a, b, &sa, &sb, &mut image, &mut used) {
        Some(image)
    } else {
        None
    }
}
