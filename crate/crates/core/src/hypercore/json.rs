use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Edge, Hypergraph, Vertex};
use crate::error::{Error, Result};

/// Distinguished objects a gadget carries through gluing.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tags {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<Edge>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<Edge>,
    #[serde(rename = "S", default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<Vertex>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vertex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Vertex>,
    /// `e_1, ..., e_k` of a rainbow star.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rainbow: Vec<Edge>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub apex: Option<Vertex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vertex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<Vertex>,
    /// Declared lower bound on `dist(e, f)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distance: Option<u32>,
}

impl Tags {
    pub fn is_empty(&self) -> bool {
        *self == Tags::default()
    }

    /// Pushes every tagged vertex through `f`.
    pub fn remap(&self, f: impl Fn(Vertex) -> Vertex + Copy) -> Result<Tags> {
        let edge = |e: &Option<Edge>| e.as_ref().map(|e| e.map(f)).transpose();
        let mut s = self
            .s
            .as_ref()
            .map(|s| s.iter().map(|&v| f(v)).collect::<Vec<_>>());
        if let Some(s) = s.as_mut() {
            s.sort_unstable();
        }
        Ok(Tags {
            e: edge(&self.e)?,
            f: edge(&self.f)?,
            s,
            a: self.a.map(f),
            b: self.b.map(f),
            rainbow: self
                .rainbow
                .iter()
                .map(|e| e.map(f))
                .collect::<Result<_>>()?,
            apex: self.apex.map(f),
            x: self.x.map(f),
            y: self.y.map(f),
            distance: self.distance,
        })
    }

    /// Every tagged edge is an edge of `h` and every tagged vertex a vertex.
    pub fn validate(&self, h: &Hypergraph) -> Result<()> {
        for e in self.e.iter().chain(&self.f).chain(&self.rainbow) {
            if !h.contains_edge(e.vertices()) {
                return Err(Error::UnknownEdge(e.clone()));
            }
        }
        let verts = self
            .s
            .iter()
            .flatten()
            .chain(&self.a)
            .chain(&self.b)
            .chain(&self.apex)
            .chain(&self.x)
            .chain(&self.y);
        for &v in verts {
            h.check_vertex(v)?;
        }
        Ok(())
    }
}

/// The on-disk interchange format shared by every command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypergraphDoc {
    pub r: usize,
    pub n: usize,
    pub edges: Vec<Vec<Vertex>>,
    #[serde(default, skip_serializing_if = "Tags::is_empty")]
    pub tags: Tags,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<Vertex, String>,
}

impl HypergraphDoc {
    pub fn from_graph(h: &Hypergraph, tags: &Tags) -> Self {
        HypergraphDoc {
            r: h.uniformity(),
            n: h.vertex_count(),
            edges: h.edges().map(|e| e.vertices().to_vec()).collect(),
            tags: tags.clone(),
            labels: h.labels().clone(),
        }
    }

    pub fn to_graph(&self) -> Result<(Hypergraph, Tags)> {
        let mut h = Hypergraph::from_edges(self.r, self.n, &self.edges)?;
        for (&v, l) in &self.labels {
            h.check_vertex(v)?;
            h.set_label(v, l.clone());
        }
        self.tags.validate(&h)?;
        Ok((h, self.tags.clone()))
    }
}

impl Hypergraph {
    pub fn to_json(&self) -> String {
        self.to_json_tagged(&Tags::default())
    }

    pub fn to_json_tagged(&self, tags: &Tags) -> String {
        serde_json::to_string(&HypergraphDoc::from_graph(self, tags))
            .expect("hypergraph serializes")
    }

    pub fn from_json(s: &str) -> Result<(Hypergraph, Tags)> {
        let doc: HypergraphDoc = serde_json::from_str(s)
            .map_err(|e| Error::InvalidParameter(format!("hypergraph JSON: {e}")))?;
        doc.to_graph()
    }
}

impl Serialize for Hypergraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HypergraphDoc::from_graph(self, &Tags::default()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Hypergraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = HypergraphDoc::deserialize(d)?;
        doc.to_graph()
            .map(|(h, _)| h)
            .map_err(serde::de::Error::custom)
    }
}
