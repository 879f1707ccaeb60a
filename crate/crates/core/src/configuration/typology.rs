//! Admissible shapes of the graph of connected components.
//!
//! Every admissible graph is one of five basic shapes, possibly with extra
//! valence-two cylinder vertices inserted on edges: at most one per edge,
//! and never on a separating edge that touches a valence-three cylinder.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{ComponentGraph, Label, UnionFind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BasicType {
    /// Chain of `+` vertices between two valence-one `-` vertices.
    A,
    /// Cycle through exactly one `-` vertex.
    B,
    /// Chain from a valence-one `-` vertex to a cycle, meeting at valence three.
    C,
    /// Two cycles joined by a chain, no `-` vertex.
    D,
    /// Figure eight around a valence-four vertex.
    E,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypologyError {
    Empty,
    Disconnected,
    ValenceTooHigh { vertex: usize, valence: usize },
    TwoCylindersOnEdge,
    CylinderOnSeparatingEdge,
    IsolatedCylinder { vertex: usize },
    NoBasicType,
}

impl fmt::Display for TypologyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Empty => write!(f, "graph has no vertex"),
            Self::Disconnected => write!(f, "graph is disconnected"),
            Self::ValenceTooHigh { vertex, valence } => {
                write!(f, "vertex {vertex} has valence {valence} > 4")
            }
            Self::TwoCylindersOnEdge => write!(f, "two cylinder vertices placed on one edge"),
            Self::CylinderOnSeparatingEdge => write!(
                f,
                "cylinder vertex placed on a separating edge next to a valence-three cylinder"
            ),
            Self::IsolatedCylinder { vertex } => {
                write!(f, "cylinder vertex {vertex} is glued only to itself")
            }
            Self::NoBasicType => write!(f, "graph matches none of the basic types a)-e)"),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct ReducedEdge {
    a: usize,
    b: usize,
    cylinders: u32,
    alive: bool,
}

struct Reduced {
    labels: Vec<Label>,
    alive: Vec<bool>,
    edges: Vec<ReducedEdge>,
}

impl Reduced {
    fn live_edges(&self) -> impl Iterator<Item = (usize, &ReducedEdge)> {
        self.edges.iter().enumerate().filter(|(_, e)| e.alive)
    }

    fn valence(&self, v: usize) -> usize {
        self.live_edges().map(|(_, e)| usize::from(e.a == v) + usize::from(e.b == v)).sum()
    }

    fn vertices(&self) -> Vec<usize> {
        (0..self.labels.len()).filter(|&v| self.alive[v]).collect()
    }

    fn connected_without(&self, skip: Option<usize>) -> bool {
        let verts = self.vertices();
        let Some(&first) = verts.first() else { return false };
        let mut uf = UnionFind::new(self.labels.len());
        for (i, e) in self.live_edges() {
            if Some(i) != skip {
                uf.union(e.a, e.b);
            }
        }
        let root = uf.find(first);
        verts.iter().all(|&v| uf.find(v) == root)
    }

    fn is_bridge(&self, edge: usize) -> bool {
        let e = self.edges[edge];
        e.a != e.b && !self.connected_without(Some(edge))
    }
}

fn strip_cylinders(graph: &ComponentGraph) -> Result<Reduced, TypologyError> {
    let mut r = Reduced {
        labels: graph.labels.clone(),
        alive: vec![true; graph.labels.len()],
        edges: graph
            .edges
            .iter()
            .map(|&(a, b, _)| ReducedEdge { a, b, cylinders: 0, alive: true })
            .collect(),
    };
    loop {
        let candidate = (0..r.labels.len())
            .find(|&v| r.alive[v] && r.labels[v] == Label::Cylinder && r.valence(v) == 2);
        let Some(v) = candidate else { break };
        let incident: Vec<usize> =
            r.live_edges().filter(|(_, e)| e.a == v || e.b == v).map(|(i, _)| i).collect();
        if incident.len() == 1 {
            return Err(TypologyError::IsolatedCylinder { vertex: v });
        }
        let (i, j) = (incident[0], incident[1]);
        let other = |e: &ReducedEdge| if e.a == v { e.b } else { e.a };
        let (u, w) = (other(&r.edges[i]), other(&r.edges[j]));
        let cylinders = r.edges[i].cylinders + r.edges[j].cylinders + 1;
        r.edges[i].alive = false;
        r.edges[j].alive = false;
        r.alive[v] = false;
        r.edges.push(ReducedEdge { a: u.min(w), b: u.max(w), cylinders, alive: true });
    }
    Ok(r)
}

/// Matches the graph of connected components against the basic types.
pub fn match_basic_type(graph: &ComponentGraph) -> Result<BasicType, TypologyError> {
    if graph.labels.is_empty() {
        return Err(TypologyError::Empty);
    }
    if !graph.is_connected() {
        return Err(TypologyError::Disconnected);
    }
    for v in 0..graph.labels.len() {
        let valence = graph.valence(v);
        if valence > 4 {
            return Err(TypologyError::ValenceTooHigh { vertex: v, valence });
        }
    }
    let r = strip_cylinders(graph)?;
    if r.live_edges().any(|(_, e)| e.cylinders > 1) {
        return Err(TypologyError::TwoCylindersOnEdge);
    }
    for (i, e) in r.live_edges() {
        if e.cylinders == 1 {
            let near_cyl3 = [e.a, e.b]
                .iter()
                .any(|&x| r.labels[x] == Label::Cylinder && r.valence(x) == 3);
            if near_cyl3 && r.is_bridge(i) {
                return Err(TypologyError::CylinderOnSeparatingEdge);
            }
        }
    }

    let verts = r.vertices();
    let n_v = verts.len();
    let n_e = r.live_edges().count();
    let val = |v: usize| r.valence(v);
    let minus: Vec<usize> = verts.iter().copied().filter(|&v| r.labels[v] == Label::Minus).collect();
    let branch = |d: usize| -> Vec<usize> { verts.iter().copied().filter(|&v| val(v) == d).collect() };
    let plain_rest = |special: &[usize]| {
        verts
            .iter()
            .filter(|v| !special.contains(v))
            .all(|&v| r.labels[v] == Label::Plus && val(v) == 2)
    };
    let hub_ok = |v: usize| matches!(r.labels[v], Label::Plus | Label::Cylinder);

    // a) chain between two valence-one `-` vertices
    if minus.len() == 2 && minus.iter().all(|&m| val(m) == 1) && plain_rest(&minus) && n_e + 1 == n_v {
        return Ok(BasicType::A);
    }
    // b) single loop with one `-`
    if minus.len() == 1 && val(minus[0]) == 2 && plain_rest(&minus) && n_e == n_v {
        return Ok(BasicType::B);
    }
    // c) chain + loop meeting at valence three
    let threes = branch(3);
    if minus.len() == 1 && val(minus[0]) == 1 && threes.len() == 1 && hub_ok(threes[0]) && n_e == n_v {
        let special = [minus[0], threes[0]];
        if plain_rest(&special) {
            return Ok(BasicType::C);
        }
    }
    if minus.is_empty() {
        // d) two cycles joined by a chain
        if threes.len() == 2 && threes.iter().all(|&v| hub_ok(v)) && plain_rest(&threes) && n_e == n_v + 1 {
            let chain: Vec<usize> = r.live_edges().map(|(i, _)| i).filter(|&i| r.is_bridge(i)).collect();
            if !chain.is_empty() {
                let both_cyl = threes.iter().all(|&v| r.labels[v] == Label::Cylinder);
                if !both_cyl || chain.len() >= 2 {
                    return Ok(BasicType::D);
                }
            }
        }
        // e) figure eight
        let fours = branch(4);
        if fours.len() == 1 && hub_ok(fours[0]) && plain_rest(&fours) && n_e == n_v + 1 {
            return Ok(BasicType::E);
        }
    }
    Err(TypologyError::NoBasicType)
}
