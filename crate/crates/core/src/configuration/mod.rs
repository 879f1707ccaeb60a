//! Configurations of hat-homologous saddle connections.
//!
//! Cutting a flat surface along a maximal collection of hat-homologous saddle
//! connections leaves a finite set of components. Each component remembers
//! its holonomy type, the genus of the surface obtained by capping its
//! boundary circles with discs, its interior singularities and, for every
//! boundary circle, the cyclic sequence of saddle-connection copies with the
//! order of the boundary singularity that follows each copy.

mod canonical;
mod typology;
mod validate;

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use canonical::{canonical_form, canonical_key, CanonicalKey};
pub use typology::{match_basic_type, BasicType, TypologyError};
pub use validate::{validate, Finding, Location, Rule, Severity, ValidationReport};

pub type EdgeId = u32;

/// A saddle connection; `weight` is its length after rescaling, 1 or 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SaddleConnection {
    pub id: EdgeId,
    pub weight: u8,
}

/// One copy of a saddle connection on a boundary circle, followed (in the
/// cyclic order) by a boundary singularity of angle `(order + 1) * pi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arc {
    pub edge: EdgeId,
    pub side: u8,
    pub order: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BoundaryCircle {
    pub arcs: Vec<Arc>,
}

impl BoundaryCircle {
    pub fn new(arcs: Vec<Arc>) -> Self {
        Self { arcs }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    /// Non-trivial linear holonomy.
    #[serde(rename = "-")]
    Minus,
    /// Trivial holonomy, not a cylinder.
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "o")]
    Cylinder,
}

impl Label {
    pub fn symbol(self) -> char {
        match self {
            Label::Minus => '-',
            Label::Plus => '+',
            Label::Cylinder => 'o',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Component {
    pub label: Label,
    pub genus: u32,
    pub interior: Vec<i32>,
    pub boundary: Vec<BoundaryCircle>,
}

/// Action of the hyperelliptic involution on components and saddle
/// connections. Fixed points appear as `(a, a)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Involution {
    pub components: Vec<(usize, usize)>,
    pub edges: Vec<(EdgeId, EdgeId)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Configuration {
    #[serde(default)]
    pub stratum: String,
    pub components: Vec<Component>,
    pub edges: Vec<SaddleConnection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub involution: Option<Involution>,
}

/// Position of an arc: component, circle, index in the circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcPos {
    pub component: usize,
    pub circle: usize,
    pub index: usize,
}

/// Vertex-labelled multigraph of components; loops allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentGraph {
    pub labels: Vec<Label>,
    /// `(u, v, edge id)` with `u <= v`.
    pub edges: Vec<(usize, usize, EdgeId)>,
}

impl ComponentGraph {
    pub fn valence(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b, _)| usize::from(a == v) + usize::from(b == v))
            .sum()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.labels.len();
        if n == 0 {
            return false;
        }
        let mut uf = UnionFind::new(n);
        for &(a, b, _) in &self.edges {
            uf.union(a, b);
        }
        (0..n).all(|v| uf.find(v) == uf.find(0))
    }
}

/// Plain union-find over `0..n`.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    pub(crate) fn class_count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}

impl Configuration {
    pub fn new(components: Vec<Component>, edges: Vec<SaddleConnection>) -> Self {
        Self { stratum: String::new(), components, edges, involution: None }
    }

    pub fn with_stratum(mut self, stratum: impl Into<String>) -> Self {
        self.stratum = stratum.into();
        self
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn edge(&self, id: EdgeId) -> Option<&SaddleConnection> {
        self.edges.iter().find(|e| e.id == id)
    }

    pub fn arcs(&self) -> impl Iterator<Item = (ArcPos, &Arc)> {
        self.components.iter().enumerate().flat_map(|(ci, comp)| {
            comp.boundary.iter().enumerate().flat_map(move |(bi, circle)| {
                circle
                    .arcs
                    .iter()
                    .enumerate()
                    .map(move |(ai, arc)| (ArcPos { component: ci, circle: bi, index: ai }, arc))
            })
        })
    }

    /// Locates both copies of every saddle connection. Fails unless each edge
    /// has exactly one copy of side 0 and one of side 1, and every arc names a
    /// declared edge.
    pub fn arc_index(&self) -> Result<HashMap<(EdgeId, u8), ArcPos>> {
        let mut index = HashMap::new();
        for (pos, arc) in self.arcs() {
            if arc.side > 1 {
                return Err(Error::NonOrientableGluing(format!(
                    "edge {} has side tag {}",
                    arc.edge, arc.side
                )));
            }
            if self.edge(arc.edge).is_none() {
                return Err(Error::NonOrientableGluing(format!("unknown edge {}", arc.edge)));
            }
            if index.insert((arc.edge, arc.side), pos).is_some() {
                return Err(Error::NonOrientableGluing(format!(
                    "edge {} side {} appears twice",
                    arc.edge, arc.side
                )));
            }
        }
        for e in &self.edges {
            for side in 0..2 {
                if !index.contains_key(&(e.id, side)) {
                    return Err(Error::NonOrientableGluing(format!(
                        "edge {} side {side} is missing",
                        e.id
                    )));
                }
            }
        }
        Ok(index)
    }

    /// Graph of connected components: one vertex per component, one edge per
    /// saddle connection joining the components that carry its two copies.
    pub fn graph_skeleton(&self) -> Result<ComponentGraph> {
        let index = self.arc_index()?;
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let a = index[&(e.id, 0)].component;
                let b = index[&(e.id, 1)].component;
                (a.min(b), a.max(b), e.id)
            })
            .collect();
        Ok(ComponentGraph { labels: self.components.iter().map(|c| c.label).collect(), edges })
    }

    pub fn boundary_circle_count(&self) -> usize {
        self.components.iter().map(|c| c.boundary.len()).sum()
    }

    /// Interior orders of all components, sorted descending.
    pub fn interior_order_multiset(&self) -> Vec<i32> {
        let mut v: Vec<i32> = self.components.iter().flat_map(|c| c.interior.iter().copied()).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    pub fn genus_sum(&self) -> u32 {
        self.components.iter().map(|c| c.genus).sum()
    }

    /// Boundary singularities grouped into the singular points of the glued
    /// surface.
    pub fn corner_classes(&self) -> Result<CornerClasses> {
        let index = self.arc_index()?;
        let mut ids: BTreeMap<ArcPos, usize> = BTreeMap::new();
        for (pos, _) in self.arcs() {
            let n = ids.len();
            ids.insert(pos, n);
        }
        let circle_len = |p: ArcPos| self.components[p.component].boundary[p.circle].arcs.len();
        // corner `index` follows arc `index`; an arc starts at the previous corner
        let end = |p: ArcPos| ids[&p];
        let start = |p: ArcPos| {
            let len = circle_len(p);
            ids[&ArcPos { index: (p.index + len - 1) % len, ..p }]
        };
        let mut uf = UnionFind::new(ids.len());
        for e in &self.edges {
            let p0 = index[&(e.id, 0)];
            let p1 = index[&(e.id, 1)];
            uf.union(start(p0), end(p1));
            uf.union(end(p0), start(p1));
        }
        let corners: Vec<ArcPos> = ids.keys().copied().collect();
        let class_of: Vec<usize> = (0..corners.len()).map(|i| uf.find(i)).collect();
        let mut roots: Vec<usize> = class_of.clone();
        roots.sort_unstable();
        roots.dedup();
        let class_of = class_of
            .into_iter()
            .map(|r| roots.binary_search(&r).expect("root present"))
            .collect();
        Ok(CornerClasses { corners, class_of, count: roots.len() })
    }

    /// Orders of every singularity of the glued surface: interior orders
    /// together with one entry per corner class, sorted descending.
    pub fn singularity_multiset(&self) -> Result<Vec<i32>> {
        let classes = self.corner_classes()?;
        let mut angle = vec![0i32; classes.count];
        for (i, pos) in classes.corners.iter().enumerate() {
            let arc = &self.components[pos.component].boundary[pos.circle].arcs[pos.index];
            angle[classes.class_of[i]] += arc.order + 1;
        }
        let mut all = self.interior_order_multiset();
        all.extend(angle.into_iter().map(|a| a - 2));
        all.sort_unstable_by(|a, b| b.cmp(a));
        Ok(all)
    }
}

/// Partition of the boundary corners into singular points.
#[derive(Debug, Clone)]
pub struct CornerClasses {
    /// Corner `i` is the one following the arc at `corners[i]`.
    pub corners: Vec<ArcPos>,
    pub class_of: Vec<usize>,
    pub count: usize,
}

impl CornerClasses {
    pub fn class_at(&self, pos: ArcPos) -> usize {
        let i = self.corners.binary_search(&pos).expect("corner exists");
        self.class_of[i]
    }
}

/// Shorthand constructor used by enumerators and tests.
pub fn arc(edge: EdgeId, side: u8, order: i32) -> Arc {
    Arc { edge, side, order }
}

pub fn circle(arcs: &[Arc]) -> BoundaryCircle {
    BoundaryCircle::new(arcs.to_vec())
}

#[cfg(test)]
pub(crate) mod samples;
