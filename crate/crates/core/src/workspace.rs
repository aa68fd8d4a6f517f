//! Loading named objects from JSON input documents.
//!
//! A document has up to four sections, `frames`, `lorders`, `spaces` and
//! `maps`, each mapping object names to definitions. Names are global
//! across sections and files. References between objects are checked when
//! a document is loaded; the mathematical validation of each object is
//! deferred until it is used, so a broken object only affects the commands
//! that touch it.

use std::fmt;
use std::marker::PhantomData;
use std::sync::Arc;

use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::Deserialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fixtures::BUNDLED_JSON;
use crate::frame::{build_frame, Frame, FrameBuilder, FrameDescription};
use crate::lorder::{validate_lorder, Carrier, LMap, LOrderedSet, LSubset};
use crate::ltop::{generate_topology, scott_topology, LTopology};

/// A JSON object whose keys are unique, in document order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniqueMap<V>(pub Vec<(String, V)>);

impl<V> Default for UniqueMap<V> {
    fn default() -> Self {
        UniqueMap(Vec::new())
    }
}

impl<V> UniqueMap<V> {
    pub fn get(&self, k: &str) -> Option<&V> {
        self.0.iter().find(|(n, _)| n == k).map(|(_, v)| v)
    }
}

impl<'de, V: Deserialize<'de>> Deserialize<'de> for UniqueMap<V> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V_<V>(PhantomData<V>);
        impl<'de, V: Deserialize<'de>> Visitor<'de> for V_<V> {
            type Value = UniqueMap<V>;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an object with unique keys")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut m: A) -> std::result::Result<Self::Value, A::Error> {
                let mut out: Vec<(String, V)> = Vec::new();
                while let Some(k) = m.next_key::<String>()? {
                    if out.iter().any(|(n, _)| *n == k) {
                        return Err(de::Error::custom(format!("duplicate key `{k}`")));
                    }
                    let v = m.next_value()?;
                    out.push((k, v));
                }
                Ok(UniqueMap(out))
            }
        }
        d.deserialize_map(V_(PhantomData))
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawFrame {
    pub chain: Option<usize>,
    pub powerset: Option<usize>,
    pub product: Option<(String, String)>,
    pub elements: Option<Vec<String>>,
    /// Pairs `[lower, upper]`; any generating subset of the order.
    #[serde(alias = "leq")]
    pub covers: Option<Vec<(String, String)>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawLorder {
    pub frame: String,
    pub carrier: Vec<String>,
    /// Rows `x → {y → e(x,y)}`; omitted diagonal entries are `⊤`.
    pub e: UniqueMap<UniqueMap<String>>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSpace {
    pub frame: Option<String>,
    pub carrier: Option<Vec<String>>,
    pub opens: Option<Vec<UniqueMap<String>>>,
    pub subbase: Option<Vec<UniqueMap<String>>>,
    /// Name of an L-order (or frame) whose Scott topology this space is.
    pub scott: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawMap {
    pub source: String,
    pub target: String,
    pub assign: UniqueMap<String>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    #[serde(default)]
    pub frames: UniqueMap<RawFrame>,
    #[serde(default)]
    pub lorders: UniqueMap<RawLorder>,
    #[serde(default)]
    pub spaces: UniqueMap<RawSpace>,
    #[serde(default)]
    pub maps: UniqueMap<RawMap>,
}

/// What kind of object a name refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Frame,
    Lorder,
    Space,
    Map,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Frame => "frame",
            Kind::Lorder => "lorder",
            Kind::Space => "space",
            Kind::Map => "map",
        })
    }
}

/// Named objects plus the budgets used to analyze them.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub doc: Document,
    pub budget: Budget,
}

impl Workspace {
    /// The bundled example document.
    pub fn bundled() -> Workspace {
        let mut ws = Workspace::default();
        ws.add_source("bundled", BUNDLED_JSON).expect("bundled fixtures load");
        ws
    }

    pub fn from_str(label: &str, text: &str) -> Result<Workspace> {
        let mut ws = Workspace::default();
        ws.add_source(label, text)?;
        Ok(ws)
    }

    /// Parses `text` and merges its objects; all references must resolve
    /// against the merged workspace.
    pub fn add_source(&mut self, label: &str, text: &str) -> Result<()> {
        let doc: Document = serde_json::from_str(text).map_err(|e| {
            Error::Parse(format!("{label}:{}:{}: {}", e.line(), e.column(), strip_position(&e)))
        })?;
        let mut merged = self.doc.clone();
        macro_rules! merge {
            ($field:ident) => {
                for (name, v) in doc.$field.0 {
                    if merged.kind_of(&name).is_some() {
                        return Err(Error::Parse(format!("{label}: duplicate object name `{name}`")));
                    }
                    merged.$field.0.push((name, v));
                }
            };
        }
        merge!(frames);
        merge!(lorders);
        merge!(spaces);
        merge!(maps);
        merged.check_references()?;
        self.doc = merged;
        Ok(())
    }

    pub fn kind_of(&self, name: &str) -> Option<Kind> {
        self.doc.kind_of(name)
    }

    pub fn names(&self, kind: Kind) -> Vec<String> {
        let d = &self.doc;
        match kind {
            Kind::Frame => d.frames.0.iter().map(|(n, _)| n.clone()).collect(),
            Kind::Lorder => d.lorders.0.iter().map(|(n, _)| n.clone()).collect(),
            Kind::Space => d.spaces.0.iter().map(|(n, _)| n.clone()).collect(),
            Kind::Map => d.maps.0.iter().map(|(n, _)| n.clone()).collect(),
        }
    }

    pub fn frame(&self, name: &str) -> Result<Arc<Frame>> {
        self.frame_depth(name, 0)
    }

    fn frame_depth(&self, name: &str, depth: usize) -> Result<Arc<Frame>> {
        if depth > 16 {
            return Err(Error::BadBuilderSpec(format!("frame `{name}` is defined in terms of itself")));
        }
        let raw = self
            .doc
            .frames
            .get(name)
            .ok_or_else(|| Error::UnresolvedReference(format!("unknown frame `{name}`")))?;
        let given = [
            raw.chain.is_some(),
            raw.powerset.is_some(),
            raw.product.is_some(),
            raw.elements.is_some() || raw.covers.is_some(),
        ];
        if given.iter().filter(|&&g| g).count() != 1 {
            return Err(Error::BadBuilderSpec(format!(
                "frame `{name}` needs exactly one of chain, powerset, product or elements/covers"
            )));
        }
        let builder = if let Some(k) = raw.chain {
            FrameBuilder::Chain(k)
        } else if let Some(k) = raw.powerset {
            FrameBuilder::Powerset(k)
        } else if let Some((a, b)) = &raw.product {
            FrameBuilder::Product(self.frame_depth(a, depth + 1)?, self.frame_depth(b, depth + 1)?)
        } else {
            FrameBuilder::FromCovers(FrameDescription {
                name: name.into(),
                elements: raw.elements.clone().unwrap_or_default(),
                relation: raw.covers.clone().unwrap_or_default(),
            })
        };
        Ok(Arc::new(build_frame(name, &builder)?))
    }

    /// An L-order by name; a frame name denotes `(L, e_L)`.
    pub fn lorder(&self, name: &str) -> Result<LOrderedSet> {
        if self.doc.frames.get(name).is_some() {
            return Ok(LOrderedSet::from_frame(&self.frame(name)?));
        }
        let raw = self
            .doc
            .lorders
            .get(name)
            .ok_or_else(|| Error::UnresolvedReference(format!("unknown lorder `{name}`")))?;
        let frame = self.frame(&raw.frame)?;
        let carrier = Carrier::new(raw.carrier.clone())?;
        let n = carrier.len();
        let mut e: Vec<Option<crate::frame::Elt>> = vec![None; n * n];
        for (x, row) in &raw.e.0 {
            let i = carrier.index_of(x)?;
            for (y, v) in &row.0 {
                let j = carrier.index_of(y)?;
                e[i * n + j] = Some(frame.elt(v)?);
            }
        }
        let e = (0..n * n)
            .map(|k| match e[k] {
                Some(v) => Ok(v),
                None if k / n == k % n => Ok(frame.top()),
                None => Err(Error::Parse(format!(
                    "lorders.{name}: missing e({},{})",
                    carrier.name(k / n),
                    carrier.name(k % n)
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        validate_lorder(frame, carrier, e)
    }

    /// A space by name; an L-order or frame name denotes its Scott space.
    pub fn space(&self, name: &str) -> Result<LTopology> {
        let Some(raw) = self.doc.spaces.get(name) else {
            if matches!(self.kind_of(name), Some(Kind::Lorder | Kind::Frame)) {
                return scott_topology(&self.lorder(name)?, &self.budget);
            }
            return Err(Error::UnresolvedReference(format!("unknown space `{name}`")));
        };
        if let Some(p) = &raw.scott {
            if raw.opens.is_some() || raw.subbase.is_some() || raw.frame.is_some() || raw.carrier.is_some() {
                return Err(Error::Parse(format!("spaces.{name}: `scott` excludes other fields")));
            }
            return scott_topology(&self.lorder(p)?, &self.budget);
        }
        let (Some(fname), Some(names)) = (&raw.frame, &raw.carrier) else {
            return Err(Error::Parse(format!("spaces.{name}: needs `frame` and `carrier`")));
        };
        let frame = self.frame(fname)?;
        let carrier = Carrier::new(names.clone())?;
        let subsets = |list: &[UniqueMap<String>]| -> Result<Vec<LSubset>> {
            list.iter()
                .map(|m| {
                    let pairs: Vec<(&str, &str)> = m.0.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
                    LSubset::from_names(&frame, &carrier, &pairs)
                })
                .collect()
        };
        match (&raw.opens, &raw.subbase) {
            (Some(o), None) => LTopology::new(frame.clone(), carrier.clone(), subsets(o)?),
            (None, Some(s)) => generate_topology(&frame, &carrier, &subsets(s)?, &self.budget),
            (None, None) => generate_topology(&frame, &carrier, &[], &self.budget),
            (Some(_), Some(_)) => {
                Err(Error::Parse(format!("spaces.{name}: give `opens` or `subbase`, not both")))
            }
        }
    }

    /// The carrier of any frame, lorder or space, without validating it.
    pub fn carrier(&self, name: &str) -> Result<Arc<Carrier>> {
        match self.kind_of(name) {
            Some(Kind::Frame) => Ok(self.lorder(name)?.carrier().clone()),
            Some(Kind::Lorder) => {
                Carrier::new(self.doc.lorders.get(name).expect("kind").carrier.clone())
            }
            Some(Kind::Space) => {
                let raw = self.doc.spaces.get(name).expect("kind");
                match (&raw.scott, &raw.carrier) {
                    (Some(p), _) => self.carrier(p),
                    (None, Some(c)) => Carrier::new(c.clone()),
                    (None, None) => Err(Error::Parse(format!("spaces.{name}: needs `carrier`"))),
                }
            }
            Some(Kind::Map) | None => {
                Err(Error::UnresolvedReference(format!("`{name}` has no carrier")))
            }
        }
    }

    pub fn map(&self, name: &str) -> Result<NamedMap> {
        let raw = self
            .doc
            .maps
            .get(name)
            .ok_or_else(|| Error::UnresolvedReference(format!("unknown map `{name}`")))?;
        let source = self.carrier(&raw.source)?;
        let target = self.carrier(&raw.target)?;
        let pairs: Vec<(&str, &str)> = raw.assign.0.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        Ok(NamedMap {
            source: raw.source.clone(),
            target: raw.target.clone(),
            map: LMap::from_names(&source, &target, &pairs)?,
        })
    }

    /// All objects as a JSON document, in the input format.
    pub fn to_json(&self) -> String {
        self.doc.to_json()
    }
}

/// A map together with the names of the objects it runs between.
#[derive(Clone, Debug)]
pub struct NamedMap {
    pub source: String,
    pub target: String,
    pub map: LMap,
}

fn strip_position(e: &serde_json::Error) -> String {
    let s = e.to_string();
    match s.rfind(" at line ") {
        Some(i) => s[..i].to_string(),
        None => s,
    }
}

impl Document {
    pub fn kind_of(&self, name: &str) -> Option<Kind> {
        if self.frames.get(name).is_some() {
            Some(Kind::Frame)
        } else if self.lorders.get(name).is_some() {
            Some(Kind::Lorder)
        } else if self.spaces.get(name).is_some() {
            Some(Kind::Space)
        } else if self.maps.get(name).is_some() {
            Some(Kind::Map)
        } else {
            None
        }
    }

    fn check_references(&self) -> Result<()> {
        let unresolved = |at: String, what: &str, name: &str| {
            Error::UnresolvedReference(format!("{at}: unknown {what} `{name}`"))
        };
        for (n, f) in &self.frames.0 {
            if let Some((a, b)) = &f.product {
                for x in [a, b] {
                    if self.frames.get(x).is_none() {
                        return Err(unresolved(format!("frames.{n}.product"), "frame", x));
                    }
                }
            }
        }
        for (n, l) in &self.lorders.0 {
            if self.frames.get(&l.frame).is_none() {
                return Err(unresolved(format!("lorders.{n}.frame"), "frame", &l.frame));
            }
        }
        for (n, s) in &self.spaces.0 {
            if let Some(f) = &s.frame {
                if self.frames.get(f).is_none() {
                    return Err(unresolved(format!("spaces.{n}.frame"), "frame", f));
                }
            }
            if let Some(p) = &s.scott {
                if !matches!(self.kind_of(p), Some(Kind::Lorder | Kind::Frame)) {
                    return Err(unresolved(format!("spaces.{n}.scott"), "lorder", p));
                }
            }
        }
        for (n, m) in &self.maps.0 {
            for (field, x) in [("source", &m.source), ("target", &m.target)] {
                if !matches!(self.kind_of(x), Some(Kind::Frame | Kind::Lorder | Kind::Space)) {
                    return Err(unresolved(format!("maps.{n}.{field}"), "object", x));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        use serde_json::{json, Map, Value};
        let obj = |m: &UniqueMap<String>| -> Value {
            Value::Object(m.0.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect())
        };
        let mut frames = Map::new();
        for (n, f) in &self.frames.0 {
            let mut o = Map::new();
            if let Some(k) = f.chain {
                o.insert("chain".into(), json!(k));
            }
            if let Some(k) = f.powerset {
                o.insert("powerset".into(), json!(k));
            }
            if let Some((a, b)) = &f.product {
                o.insert("product".into(), json!([a, b]));
            }
            if let Some(e) = &f.elements {
                o.insert("elements".into(), json!(e));
            }
            if let Some(c) = &f.covers {
                o.insert("covers".into(), json!(c));
            }
            frames.insert(n.clone(), Value::Object(o));
        }
        let mut lorders = Map::new();
        for (n, l) in &self.lorders.0 {
            let e: Map<String, Value> = l.e.0.iter().map(|(x, row)| (x.clone(), obj(row))).collect();
            lorders.insert(n.clone(), json!({"frame": l.frame, "carrier": l.carrier, "e": e}));
        }
        let mut spaces = Map::new();
        for (n, s) in &self.spaces.0 {
            let mut o = Map::new();
            if let Some(f) = &s.frame {
                o.insert("frame".into(), json!(f));
            }
            if let Some(c) = &s.carrier {
                o.insert("carrier".into(), json!(c));
            }
            if let Some(list) = &s.opens {
                o.insert("opens".into(), Value::Array(list.iter().map(obj).collect()));
            }
            if let Some(list) = &s.subbase {
                o.insert("subbase".into(), Value::Array(list.iter().map(obj).collect()));
            }
            if let Some(p) = &s.scott {
                o.insert("scott".into(), json!(p));
            }
            spaces.insert(n.clone(), Value::Object(o));
        }
        let mut maps = Map::new();
        for (n, m) in &self.maps.0 {
            maps.insert(n.clone(), json!({"source": m.source, "target": m.target, "assign": obj(&m.assign)}));
        }
        let doc = json!({"frames": frames, "lorders": lorders, "spaces": spaces, "maps": maps});
        serde_json::to_string_pretty(&doc).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_objects_load() {
        let ws = Workspace::bundled();
        assert_eq!(ws.frame("L4").unwrap().len(), 4);
        assert_eq!(ws.frame("L5").unwrap().len(), 5);
        assert_eq!(ws.lorder("X6").unwrap(), crate::fixtures::two_point_example());
        assert_eq!(ws.space("SX6").unwrap().len(), 9);
        assert_eq!(ws.map("j6").unwrap().map.assignment(), &[0, 3]);
        assert_eq!(ws.lorder("L4").unwrap().len(), 4);
    }

    #[test]
    fn unknown_frame_is_unresolved() {
        let err = Workspace::from_str(
            "t",
            r#"{"lorders": {"P": {"frame": "Nope", "carrier": ["x"], "e": {}}}}"#,
        )
        .unwrap_err();
        assert_eq!(err, Error::UnresolvedReference("lorders.P.frame: unknown frame `Nope`".into()));
    }

    #[test]
    fn duplicates_are_parse_errors() {
        let err = Workspace::from_str("t", "{\"frames\": {\"A\": {\"chain\": 2},\n \"A\": {\"chain\": 3}}}")
            .unwrap_err();
        match err {
            Error::Parse(m) => assert!(m.starts_with("t:2:") && m.contains("duplicate key `A`"), "{m}"),
            e => panic!("{e:?}"),
        }
        let mut ws = Workspace::bundled();
        let err = ws.add_source("u", r#"{"frames": {"L4": {"chain": 2}}}"#).unwrap_err();
        assert_eq!(err, Error::Parse("u: duplicate object name `L4`".into()));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = Workspace::from_str("f.json", "{\n  \"frames\": [\n").unwrap_err();
        assert!(matches!(err, Error::Parse(ref m) if m.starts_with("f.json:2:")), "{err:?}");
    }

    #[test]
    fn missing_entries() {
        let ws = Workspace::from_str(
            "t",
            r#"{"frames": {"C": {"chain": 2}},
                "lorders": {"P": {"frame": "C", "carrier": ["x", "y"], "e": {"x": {"y": "1"}}}}}"#,
        )
        .unwrap();
        assert_eq!(ws.lorder("P").unwrap_err(), Error::Parse("lorders.P: missing e(y,x)".into()));
    }

    #[test]
    fn round_trip_through_json() {
        let ws = Workspace::bundled();
        let again = Workspace::from_str("again", &ws.to_json()).unwrap();
        assert_eq!(again.lorder("X6").unwrap(), ws.lorder("X6").unwrap());
        assert_eq!(again.space("SL4").unwrap(), ws.space("SL4").unwrap());
    }

    #[test]
    fn spaces_from_opens_and_subbase() {
        let ws = Workspace::from_str(
            "t",
            r#"{"frames": {"C": {"chain": 2}},
                "spaces": {
                  "S": {"frame": "C", "carrier": ["u", "v"],
                        "opens": [{"u": "0", "v": "0"}, {"u": "1", "v": "1"}, {"u": "0", "v": "1"}]},
                  "G": {"frame": "C", "carrier": ["u", "v"], "subbase": [{"u": "0", "v": "1"}]},
                  "B": {"frame": "C", "carrier": ["u", "v"], "opens": [{"u": "0", "v": "1"}]}
                }}"#,
        )
        .unwrap();
        assert_eq!(ws.space("S").unwrap(), ws.space("G").unwrap());
        assert!(matches!(ws.space("B"), Err(Error::NotATopology(_))));
    }
}
