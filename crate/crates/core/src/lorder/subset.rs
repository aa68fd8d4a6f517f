use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::frame::{ensure_same_frame, Elt, Frame};

/// A finite, nonempty, duplicate-free list of element names.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Carrier {
    names: Vec<String>,
}

impl Carrier {
    pub fn new(names: Vec<String>) -> Result<Arc<Carrier>> {
        if names.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::DuplicateElement(a.clone()));
            }
        }
        Ok(Arc::new(Carrier { names }))
    }

    /// Carrier named `{prefix}0 .. {prefix}{n-1}`.
    pub fn synthetic(prefix: &str, n: usize) -> Result<Arc<Carrier>> {
        Carrier::new((0..n).map(|i| format!("{prefix}{i}")).collect())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::ElementNotFound(name.to_string()))
    }
}

pub(crate) fn ensure_same_carrier(a: &Arc<Carrier>, b: &Arc<Carrier>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a.names == b.names {
        Ok(())
    } else {
        Err(Error::CarrierMismatch(format!("{:?} vs {:?}", a.names, b.names)))
    }
}

/// A map `A: X → L` from a finite carrier into a frame.
#[derive(Clone, PartialEq, Eq)]
pub struct LSubset {
    frame: Arc<Frame>,
    carrier: Arc<Carrier>,
    values: Vec<Elt>,
}

impl LSubset {
    pub fn new(frame: Arc<Frame>, carrier: Arc<Carrier>, values: Vec<Elt>) -> Result<LSubset> {
        if values.len() != carrier.len() {
            return Err(Error::CarrierMismatch(format!(
                "{} values for a carrier of {} elements",
                values.len(),
                carrier.len()
            )));
        }
        if values.iter().any(|v| v.index() >= frame.len()) {
            return Err(Error::ElementNotFound("value outside the frame".into()));
        }
        Ok(LSubset { frame, carrier, values })
    }

    pub(crate) fn from_raw(frame: &Arc<Frame>, carrier: &Arc<Carrier>, values: Vec<Elt>) -> LSubset {
        debug_assert_eq!(values.len(), carrier.len());
        LSubset { frame: frame.clone(), carrier: carrier.clone(), values }
    }

    pub fn constant(frame: &Arc<Frame>, carrier: &Arc<Carrier>, a: Elt) -> LSubset {
        LSubset::from_raw(frame, carrier, vec![a; carrier.len()])
    }

    /// Builds an L-subset from `(element, value)` name pairs covering the carrier.
    pub fn from_names(
        frame: &Arc<Frame>,
        carrier: &Arc<Carrier>,
        pairs: &[(&str, &str)],
    ) -> Result<LSubset> {
        let mut values: Vec<Option<Elt>> = vec![None; carrier.len()];
        for (x, v) in pairs {
            let i = carrier.index_of(x)?;
            if values[i].is_some() {
                return Err(Error::Parse(format!("element `{x}` assigned twice")));
            }
            values[i] = Some(frame.elt(v)?);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| Error::Parse(format!("no value for element `{}`", carrier.name(i))))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LSubset::from_raw(frame, carrier, values))
    }

    pub fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn values(&self) -> &[Elt] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Elt> {
        self.values
    }

    pub fn value(&self, i: usize) -> Elt {
        self.values[i]
    }

    pub fn value_of(&self, name: &str) -> Result<Elt> {
        Ok(self.values[self.carrier.index_of(name)?])
    }

    pub(crate) fn ensure_compatible(&self, other: &LSubset) -> Result<()> {
        ensure_same_frame(&self.frame, &other.frame)?;
        ensure_same_carrier(&self.carrier, &other.carrier)
    }

    /// `⋁_x A(x) = ⊤`.
    pub fn is_nonempty(&self) -> bool {
        self.frame.join_all(self.values.iter().copied()) == self.frame.top()
    }

    /// Pointwise order.
    pub fn leq(&self, other: &LSubset) -> Result<bool> {
        self.ensure_compatible(other)?;
        Ok(self.values.iter().zip(&other.values).all(|(&a, &b)| self.frame.leq(a, b)))
    }

    pub fn meet(&self, other: &LSubset) -> Result<LSubset> {
        self.ensure_compatible(other)?;
        Ok(self.zip_with(other, |f, a, b| f.meet(a, b)))
    }

    pub fn join(&self, other: &LSubset) -> Result<LSubset> {
        self.ensure_compatible(other)?;
        Ok(self.zip_with(other, |f, a, b| f.join(a, b)))
    }

    /// `a ∧ A`.
    pub fn meet_constant(&self, a: Elt) -> LSubset {
        let values = self.values.iter().map(|&v| self.frame.meet(a, v)).collect();
        LSubset::from_raw(&self.frame, &self.carrier, values)
    }

    fn zip_with(&self, other: &LSubset, op: impl Fn(&Frame, Elt, Elt) -> Elt) -> LSubset {
        let values =
            self.values.iter().zip(&other.values).map(|(&a, &b)| op(&self.frame, a, b)).collect();
        LSubset::from_raw(&self.frame, &self.carrier, values)
    }

    /// `(x ↦ v, ...)` using element names.
    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .values
            .iter()
            .enumerate()
            .map(|(i, &v)| format!("{}↦{}", self.carrier.name(i), self.frame.name_of(v)))
            .collect();
        format!("({})", parts.join(", "))
    }

    /// Values only, `(v0,v1,...)`.
    pub fn render_values(&self) -> String {
        render_values(&self.frame, &self.values)
    }
}

impl fmt::Debug for LSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub(crate) fn render_values(frame: &Frame, values: &[Elt]) -> String {
    let parts: Vec<&str> = values.iter().map(|&v| frame.name_of(v)).collect();
    format!("({})", parts.join(","))
}

/// `sub(A,B) = ⋀_x A(x) → B(x)` on raw value vectors.
#[inline]
pub(crate) fn sub_raw(frame: &Frame, a: &[Elt], b: &[Elt]) -> Elt {
    let mut acc = frame.top();
    for (&x, &y) in a.iter().zip(b) {
        acc = frame.meet(acc, frame.heyting(x, y));
        if acc == frame.bottom() {
            break;
        }
    }
    acc
}

#[inline]
pub(crate) fn leq_raw(frame: &Frame, a: &[Elt], b: &[Elt]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| frame.leq(x, y))
}

#[inline]
pub(crate) fn join_raw(frame: &Frame, a: &[Elt], b: &[Elt]) -> Vec<Elt> {
    a.iter().zip(b).map(|(&x, &y)| frame.join(x, y)).collect()
}

#[inline]
pub(crate) fn meet_raw(frame: &Frame, a: &[Elt], b: &[Elt]) -> Vec<Elt> {
    a.iter().zip(b).map(|(&x, &y)| frame.meet(x, y)).collect()
}

/// Degree of inclusion of `a` in `b`.
pub fn sub(a: &LSubset, b: &LSubset) -> Result<Elt> {
    a.ensure_compatible(b)?;
    Ok(sub_raw(&a.frame, &a.values, &b.values))
}

/// A total function between two carriers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LMap {
    source: Arc<Carrier>,
    target: Arc<Carrier>,
    assign: Vec<usize>,
}

impl LMap {
    pub fn new(source: Arc<Carrier>, target: Arc<Carrier>, assign: Vec<usize>) -> Result<LMap> {
        if assign.len() != source.len() {
            return Err(Error::CarrierMismatch("map is not total on its source".into()));
        }
        if assign.iter().any(|&t| t >= target.len()) {
            return Err(Error::ElementNotFound("map value outside the target carrier".into()));
        }
        Ok(LMap { source, target, assign })
    }

    pub fn from_names(
        source: &Arc<Carrier>,
        target: &Arc<Carrier>,
        pairs: &[(&str, &str)],
    ) -> Result<LMap> {
        let mut assign: Vec<Option<usize>> = vec![None; source.len()];
        for (x, y) in pairs {
            let i = source.index_of(x)?;
            if assign[i].is_some() {
                return Err(Error::Parse(format!("element `{x}` mapped twice")));
            }
            assign[i] = Some(target.index_of(y)?);
        }
        let assign = assign
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| Error::Parse(format!("no image for element `{}`", source.name(i))))
            })
            .collect::<Result<Vec<_>>>()?;
        LMap::new(source.clone(), target.clone(), assign)
    }

    pub fn identity(carrier: &Arc<Carrier>) -> LMap {
        LMap { source: carrier.clone(), target: carrier.clone(), assign: (0..carrier.len()).collect() }
    }

    pub fn source(&self) -> &Arc<Carrier> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Carrier> {
        &self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assign
    }

    pub fn apply(&self, i: usize) -> usize {
        self.assign[i]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &LMap) -> Result<LMap> {
        ensure_same_carrier(&self.target, &other.source)?;
        Ok(LMap {
            source: self.source.clone(),
            target: other.target.clone(),
            assign: self.assign.iter().map(|&i| other.assign[i]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.assign.iter().all(|&t| !std::mem::replace(&mut seen[t], true))
    }

    pub fn is_bijective(&self) -> bool {
        self.source.len() == self.target.len() && self.is_injective()
    }

    /// Inverse of a bijection.
    pub fn inverse(&self) -> Option<LMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.assign.len()];
        for (i, &t) in self.assign.iter().enumerate() {
            inv[t] = i;
        }
        Some(LMap { source: self.target.clone(), target: self.source.clone(), assign: inv })
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .assign
            .iter()
            .enumerate()
            .map(|(i, &t)| format!("{}↦{}", self.source.name(i), self.target.name(t)))
            .collect();
        format!("({})", parts.join(", "))
    }

    pub(crate) fn forward_raw(&self, frame: &Frame, a: &[Elt]) -> Vec<Elt> {
        let mut out = vec![frame.bottom(); self.target.len()];
        for (i, &t) in self.assign.iter().enumerate() {
            out[t] = frame.join(out[t], a[i]);
        }
        out
    }

    pub(crate) fn backward_raw(&self, b: &[Elt]) -> Vec<Elt> {
        self.assign.iter().map(|&t| b[t]).collect()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    Forward,
    Backward,
}

/// Zadeh extensions: `f→(A)(y) = ⋁_{f(x)=y} A(x)` and `f←(B) = B ∘ f`.
pub fn zadeh(f: &LMap, a: &LSubset, direction: Direction) -> Result<LSubset> {
    match direction {
        Direction::Forward => {
            ensure_same_carrier(&f.source, &a.carrier)?;
            Ok(LSubset::from_raw(&a.frame, &f.target, f.forward_raw(&a.frame, &a.values)))
        }
        Direction::Backward => {
            ensure_same_carrier(&f.target, &a.carrier)?;
            Ok(LSubset::from_raw(&a.frame, &f.source, f.backward_raw(&a.values)))
        }
    }
}
