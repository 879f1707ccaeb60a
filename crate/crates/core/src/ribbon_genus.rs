//! Ribbon graphs and the genus of a surface assembled from a configuration.
//!
//! The pure ribbon graph has one vertex per boundary circle and one edge per
//! saddle connection; the rotation at a vertex is the cyclic order of arcs on
//! its circle. The genus of the glued surface follows from the Euler
//! characteristics of the component graph and of the ribbon graph.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::configuration::{Arc, BoundaryCircle, Component, Configuration, EdgeId, Label, UnionFind};
use crate::error::{Error, Result};

/// A dart is one end of a ribbon edge: the copy of a saddle connection with
/// the given side tag.
pub type Dart = (EdgeId, u8);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbonGraph {
    /// `(component, circle)` of each vertex.
    pub vertices: Vec<(usize, usize)>,
    pub edges: Vec<EdgeId>,
    /// Cyclic order of darts around each vertex.
    pub rotation: Vec<Vec<Dart>>,
}

impl RibbonGraph {
    /// A bare rotation system; used for graphs that do not come from a
    /// configuration.
    pub fn from_rotation(rotation: Vec<Vec<Dart>>) -> Self {
        let mut edges: Vec<EdgeId> = rotation.iter().flatten().map(|d| d.0).collect();
        edges.sort_unstable();
        edges.dedup();
        let vertices = (0..rotation.len()).map(|i| (i, 0)).collect();
        Self { vertices, edges, rotation }
    }

    fn dart_vertex(&self) -> HashMap<Dart, (usize, usize)> {
        let mut at = HashMap::new();
        for (v, darts) in self.rotation.iter().enumerate() {
            for (i, &d) in darts.iter().enumerate() {
                at.insert(d, (v, i));
            }
        }
        at
    }

    /// Connected component of each vertex, numbered from 0.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let at = self.dart_vertex();
        let mut uf = UnionFind::new(self.rotation.len());
        for &e in &self.edges {
            if let (Some(a), Some(b)) = (at.get(&(e, 0)), at.get(&(e, 1))) {
                uf.union(a.0, b.0);
            }
        }
        let roots: Vec<usize> = (0..self.rotation.len()).map(|v| uf.find(v)).collect();
        let mut distinct = roots.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let labels = roots.iter().map(|r| distinct.binary_search(r).unwrap()).collect();
        (labels, distinct.len())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.rotation.len() as i64 - self.edges.len() as i64
    }

    /// Faces of the rotation system: orbits of "cross the edge, then step to
    /// the next dart counterclockwise".
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        let at = self.dart_vertex();
        let next = |d: Dart| -> Dart {
            let opposite = (d.0, 1 - d.1);
            let (v, i) = at[&opposite];
            let darts = &self.rotation[v];
            darts[(i + 1) % darts.len()]
        };
        let mut seen = HashMap::new();
        let mut faces = Vec::new();
        for darts in &self.rotation {
            for &start in darts {
                if seen.contains_key(&start) {
                    continue;
                }
                let mut face = vec![];
                let mut d = start;
                while seen.insert(d, ()).is_none() {
                    face.push(d);
                    d = next(d);
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Genus of the closed surface carrying each connected component.
    pub fn component_genera(&self) -> Vec<i64> {
        let (labels, n) = self.component_labels();
        let at = self.dart_vertex();
        let mut v = vec![0i64; n];
        let mut e = vec![0i64; n];
        let mut f = vec![0i64; n];
        for &l in &labels {
            v[l] += 1;
        }
        for edge in &self.edges {
            if let Some(&(vert, _)) = at.get(&(*edge, 0)) {
                e[labels[vert]] += 1;
            }
        }
        for face in self.faces() {
            f[labels[at[&face[0]].0]] += 1;
        }
        (0..n).map(|c| (2 - v[c] + e[c] - f[c]) / 2).collect()
    }
}

pub fn build_ribbon(config: &Configuration) -> Result<RibbonGraph> {
    config.arc_index()?;
    let mut vertices = Vec::new();
    let mut rotation = Vec::new();
    for (ci, comp) in config.components.iter().enumerate() {
        for (bi, circle) in comp.boundary.iter().enumerate() {
            vertices.push((ci, bi));
            rotation.push(circle.arcs.iter().map(|a| (a.edge, a.side)).collect());
        }
    }
    Ok(RibbonGraph { vertices, edges: config.edges.iter().map(|e| e.id).collect(), rotation })
}

/// True iff every connected component has genus 0.
pub fn embeds_in_plane(rg: &RibbonGraph) -> bool {
    rg.component_genera().iter().all(|&g| g == 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerData {
    pub genus_sum: u32,
    /// `V - E` of the component graph.
    pub chi1: i64,
    /// `V - E` of the pure ribbon graph.
    pub chi2: i64,
    /// Connected components of the pure ribbon graph.
    pub n: usize,
    pub planar: bool,
}

pub fn euler_data(config: &Configuration) -> Result<EulerData> {
    let rg = build_ribbon(config)?;
    let (_, n) = rg.component_labels();
    Ok(EulerData {
        genus_sum: config.genus_sum(),
        chi1: config.components.len() as i64 - config.edges.len() as i64,
        chi2: rg.euler_characteristic(),
        n,
        planar: embeds_in_plane(&rg),
    })
}

pub fn euler_characteristics(config: &Configuration) -> Result<(i64, i64, usize)> {
    let d = euler_data(config)?;
    Ok((d.chi1, d.chi2, d.n))
}

/// Genus of the surface glued from the configuration.
pub fn ambient_genus(config: &Configuration) -> Result<u32> {
    let d = euler_data(config)?;
    let sum = i64::from(d.genus_sum);
    let g = if d.n == 1 && !d.planar {
        if d.chi1 != -1 || d.chi2 != -1 {
            return Err(Error::InconsistentConfiguration(format!(
                "non-planar connected ribbon graph with chi1 = {}, chi2 = {}",
                d.chi1, d.chi2
            )));
        }
        sum + 1
    } else {
        sum + (d.chi2 - d.n as i64) - (d.chi1 - 1)
    };
    if g < sum || g < 0 {
        return Err(Error::InconsistentConfiguration(format!(
            "genus {g} is below the sum {sum} of component genera"
        )));
    }
    Ok(g as u32)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Cell {
    Saddle(EdgeId),
    Handle { component: usize, index: u32 },
    Spoke { component: usize, circle: usize },
}

struct Letter {
    cell: Cell,
    forward: bool,
    tail: usize,
    head: usize,
}

/// Genus of the glued surface computed from an explicit CW structure: one
/// polygon per component (a one-vertex `4g`-gon with a spoke to each
/// boundary circle), saddle connections as edges, and vertices obtained by
/// identifying polygon corners along the attaching maps.
pub fn cell_complex_genus_oracle(config: &Configuration) -> Result<u32> {
    let mut slots = 0usize;
    let mut new_slot = || {
        slots += 1;
        slots - 1
    };
    let mut words: Vec<Vec<Letter>> = Vec::new();
    for (ci, comp) in config.components.iter().enumerate() {
        let center = new_slot();
        let mut word = Vec::new();
        for h in 0..comp.genus {
            let (a, b) = (Cell::Handle { component: ci, index: 2 * h }, Cell::Handle { component: ci, index: 2 * h + 1 });
            for (cell, forward) in [(a, true), (b, true), (a, false), (b, false)] {
                word.push(Letter { cell, forward, tail: center, head: center });
            }
        }
        for (bi, circle) in comp.boundary.iter().enumerate() {
            let len = circle.arcs.len();
            if len == 0 {
                return Err(Error::NonOrientableGluing(format!("component {ci} circle {bi} is empty")));
            }
            let corners: Vec<usize> = (0..len).map(|_| new_slot()).collect();
            let spoke = Cell::Spoke { component: ci, circle: bi };
            let entry = corners[len - 1];
            word.push(Letter { cell: spoke, forward: true, tail: center, head: entry });
            for (i, a) in circle.arcs.iter().enumerate() {
                let tail = corners[(i + len - 1) % len];
                let head = corners[i];
                word.push(Letter { cell: Cell::Saddle(a.edge), forward: a.side == 0, tail, head });
            }
            word.push(Letter { cell: spoke, forward: false, tail: entry, head: center });
        }
        words.push(word);
    }

    // every edge cell must bound exactly two polygon sides, once in each direction
    let mut uses: HashMap<Cell, Vec<&Letter>> = HashMap::new();
    for letter in words.iter().flatten() {
        uses.entry(letter.cell).or_default().push(letter);
    }
    for e in &config.edges {
        if !uses.contains_key(&Cell::Saddle(e.id)) {
            return Err(Error::NonOrientableGluing(format!("saddle connection {} is not on any boundary", e.id)));
        }
    }
    let mut uf = UnionFind::new(slots);
    for (cell, letters) in &uses {
        match letters.as_slice() {
            [x, y] if x.forward != y.forward => {
                let (f, b) = if x.forward { (x, y) } else { (y, x) };
                uf.union(f.tail, b.head);
                uf.union(f.head, b.tail);
            }
            _ => {
                return Err(Error::NonOrientableGluing(format!(
                    "{cell:?} is used {} time(s) without opposite orientations",
                    letters.len()
                )))
            }
        }
    }
    if let Cell::Saddle(id) = uses.keys().find_map(|c| match c {
        Cell::Saddle(id) if config.edge(*id).is_none() => Some(Cell::Saddle(*id)),
        _ => None,
    }).unwrap_or(Cell::Handle { component: 0, index: 0 }) {
        return Err(Error::NonOrientableGluing(format!("unknown saddle connection {id}")));
    }

    // the glued surface must be connected
    let mut comp_uf = UnionFind::new(config.components.len().max(1));
    let owner: HashMap<EdgeId, Vec<usize>> = config.arcs().fold(HashMap::new(), |mut m, (pos, a)| {
        m.entry(a.edge).or_default().push(pos.component);
        m
    });
    for comps in owner.values() {
        for w in comps.windows(2) {
            comp_uf.union(w[0], w[1]);
        }
    }
    if config.components.is_empty() || comp_uf.class_count() != 1 {
        return Err(Error::InconsistentConfiguration("glued surface is not connected".into()));
    }

    let v = uf.class_count() as i64;
    let e = uses.len() as i64;
    let f = words.len() as i64;
    let chi = v - e + f;
    if chi > 2 || chi % 2 != 0 {
        return Err(Error::InconsistentConfiguration(format!("Euler characteristic {chi}")));
    }
    Ok(((2 - chi) / 2) as u32)
}

/// Collapses a saddle connection whose copies lie on two different
/// components, gluing those components along it.
pub fn contract_edge(config: &Configuration, edge: EdgeId) -> Result<Configuration> {
    let index = config.arc_index()?;
    let p0 = index[&(edge, 0)];
    let p1 = index[&(edge, 1)];
    if p0.component == p1.component {
        return Err(Error::InconsistentConfiguration(format!("edge {edge} is a loop of the component graph")));
    }
    let rotated = |p: crate::configuration::ArcPos| -> Vec<Arc> {
        let arcs = &config.components[p.component].boundary[p.circle].arcs;
        let mut v = arcs.clone();
        v.rotate_left(p.index);
        v
    };
    // a = [e, i1 .. is], b = [e, j1 .. jt]; the corner before e on one side
    // meets the corner after e on the other
    let a = rotated(p0);
    let b = rotated(p1);
    let before_a = a.last().unwrap().order;
    let before_b = b.last().unwrap().order;
    let mut merged: Vec<Arc> = Vec::new();
    let mut extra_interior = Vec::new();
    match (a.len(), b.len()) {
        (1, 1) => extra_interior.push(a[0].order + b[0].order),
        _ => {
            let mut left: Vec<Arc> = a[1..].to_vec();
            let mut right: Vec<Arc> = b[1..].to_vec();
            if let Some(last) = left.last_mut() {
                last.order = before_a + b[0].order + 1;
            }
            if let Some(last) = right.last_mut() {
                last.order = before_b + a[0].order + 1;
            }
            // a single-arc side has one corner on both ends of e
            if left.is_empty() {
                right.last_mut().unwrap().order += b[0].order + 1;
            }
            if right.is_empty() {
                left.last_mut().unwrap().order += a[0].order + 1;
            }
            merged.extend(left);
            merged.extend(right);
        }
    }
    let ca = &config.components[p0.component];
    let cb = &config.components[p1.component];
    let mut boundary: Vec<BoundaryCircle> = Vec::new();
    boundary.extend(ca.boundary.iter().enumerate().filter(|(i, _)| *i != p0.circle).map(|(_, c)| c.clone()));
    boundary.extend(cb.boundary.iter().enumerate().filter(|(i, _)| *i != p1.circle).map(|(_, c)| c.clone()));
    if !merged.is_empty() {
        boundary.push(BoundaryCircle::new(merged));
    }
    let mut interior = ca.interior.clone();
    interior.extend(&cb.interior);
    interior.extend(extra_interior);
    let label = if ca.label == Label::Minus || cb.label == Label::Minus { Label::Minus } else { Label::Plus };
    let glued = Component { label, genus: ca.genus + cb.genus, interior, boundary };
    let mut components: Vec<Component> = config
        .components
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != p0.component && *i != p1.component)
        .map(|(_, c)| c.clone())
        .collect();
    components.push(glued);
    let edges = config.edges.iter().copied().filter(|e| e.id != edge).collect();
    Ok(Configuration { stratum: config.stratum.clone(), components, edges, involution: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configuration::samples::*;

    #[test]
    fn ribbon_of_examples() {
        let rg = build_ribbon(&pillowcase()).unwrap();
        assert_eq!(rg.vertices.len(), 2);
        assert_eq!(rg.component_labels().1, 2);
        let rg = build_ribbon(&figure_two()).unwrap();
        assert_eq!((rg.vertices.len(), rg.edges.len()), (5, 3));
        assert_eq!(rg.component_labels().1, 2);
        let rg = build_ribbon(&single_loop()).unwrap();
        assert_eq!((rg.vertices.len(), rg.edges.len()), (1, 1));
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_characteristics(&pillowcase()).unwrap(), (-1, 0, 2));
        assert_eq!(euler_characteristics(&figure_two()).unwrap(), (0, 2, 2));
        assert_eq!(euler_characteristics(&two_joined(1, 2)).unwrap(), (1, 1, 1));
    }

    #[test]
    fn planarity() {
        let interleaved = RibbonGraph::from_rotation(vec![vec![(0, 0), (1, 0), (0, 1), (1, 1)]]);
        assert!(!embeds_in_plane(&interleaved));
        let nested = RibbonGraph::from_rotation(vec![vec![(0, 0), (0, 1), (1, 0), (1, 1)]]);
        assert_eq!(nested.faces().len(), 3);
        assert!(embeds_in_plane(&nested));
        let tree = RibbonGraph::from_rotation(vec![vec![(0, 0), (1, 0)], vec![(0, 1)], vec![(1, 1)]]);
        assert!(embeds_in_plane(&tree));
    }

    #[test]
    fn ambient_genus_examples() {
        assert_eq!(ambient_genus(&pillowcase()).unwrap(), 0);
        assert_eq!(ambient_genus(&two_joined(2, 3)).unwrap(), 5);
        assert_eq!(ambient_genus(&figure_two()).unwrap(), 3);
        assert_eq!(ambient_genus(&interleaved(1)).unwrap(), 2);
        assert_eq!(ambient_genus(&nested(1)).unwrap(), 1);
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(cell_complex_genus_oracle(&pillowcase()).unwrap(), 0);
        assert_eq!(cell_complex_genus_oracle(&two_joined(2, 3)).unwrap(), 5);
        assert_eq!(cell_complex_genus_oracle(&two_joined_twice(1, 2)).unwrap(), 4);
        assert_eq!(cell_complex_genus_oracle(&figure_two()).unwrap(), 3);
        assert_eq!(cell_complex_genus_oracle(&interleaved(0)).unwrap(), 1);
    }

    #[test]
    fn oracle_rejects_bad_gluing() {
        let mut c = single_loop();
        c.components[0].boundary[0].arcs[1].side = 0;
        assert!(matches!(cell_complex_genus_oracle(&c), Err(Error::NonOrientableGluing(_))));
    }

    #[test]
    fn contraction_keeps_invariants() {
        for c in [figure_two(), two_joined(1, 1), two_joined_twice(0, 2)] {
            let before = euler_data(&c).unwrap();
            let e = c.graph_skeleton().unwrap().edges.iter().find(|(a, b, _)| a != b).unwrap().2;
            let d = contract_edge(&c, e).unwrap();
            let after = euler_data(&d).unwrap();
            assert_eq!(before.chi1, after.chi1);
            assert_eq!(before.chi2 - before.n as i64, after.chi2 - after.n as i64);
            assert_eq!(before.genus_sum, after.genus_sum);
            assert_eq!(cell_complex_genus_oracle(&c).unwrap(), cell_complex_genus_oracle(&d).unwrap());
            assert_eq!(c.singularity_multiset().unwrap(), d.singularity_multiset().unwrap());
        }
    }
}
