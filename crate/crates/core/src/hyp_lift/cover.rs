//! Assembling the double cover of a configuration from per-component sheets,
//! then cleaning it up: arcs meeting at regular points are concatenated and
//! closed regular geodesics are glued shut.

use std::collections::{BTreeMap, HashMap};

use crate::configuration::{Arc, BoundaryCircle, Component, Configuration, Involution, Label, SaddleConnection, UnionFind};
use crate::error::{Error, Result};

/// A lifted arc. Lifted edge `2 * e + sheet` is the copy of source edge
/// number `e` (by position) starting on that sheet of its side-0 arc.
#[derive(Debug, Clone, Copy)]
pub(super) struct LiftedArc {
    pub edge: usize,
    pub side: u8,
    pub order: i32,
    /// The corner after this arc lies over a ramified pole.
    pub regular_after: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(super) enum Origin {
    Whole(usize),
    Copy(usize, u8),
}

impl Origin {
    fn image(self) -> Self {
        match self {
            Origin::Whole(i) => Origin::Whole(i),
            Origin::Copy(i, s) => Origin::Copy(i, 1 - s),
        }
    }
}

#[derive(Debug, Clone)]
pub(super) struct LiftedComponent {
    pub label: Label,
    pub genus: u32,
    pub interior: Vec<i32>,
    pub circles: Vec<Vec<LiftedArc>>,
    pub origin: Origin,
}

/// A maximal run of lifted arcs between singular corners.
struct Run {
    pieces: Vec<(usize, u8)>,
    /// `None` for a circle without singular corners.
    order: Option<i32>,
    component: usize,
}

fn runs_of(circle: &[LiftedArc], component: usize) -> Vec<Run> {
    let Some(last_singular) = circle.iter().rposition(|a| !a.regular_after) else {
        let pieces = circle.iter().map(|a| (a.edge, a.side)).collect();
        return vec![Run { pieces, order: None, component }];
    };
    let mut rotated = circle.to_vec();
    rotated.rotate_left(last_singular + 1);
    let mut runs = Vec::new();
    let mut pieces = Vec::new();
    for a in rotated {
        pieces.push((a.edge, a.side));
        if !a.regular_after {
            runs.push(Run { pieces: std::mem::take(&mut pieces), order: Some(a.order), component });
        }
    }
    runs
}

fn combine(a: Label, b: Label) -> Label {
    match (a, b) {
        (Label::Cylinder, Label::Cylinder) => Label::Cylinder,
        (Label::Minus, _) | (_, Label::Minus) => Label::Minus,
        _ => Label::Plus,
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Turns lifted sheets into a configuration. `weights[e]` is the weight of
/// source edge number `e`.
pub(super) fn assemble(parts: Vec<LiftedComponent>, weights: &[u8], stratum: String) -> Result<Configuration> {
    let lifted_edges = 2 * weights.len();
    let mut runs: Vec<Run> = Vec::new();
    let mut circle_runs: Vec<Vec<usize>> = Vec::new();
    for (ci, part) in parts.iter().enumerate() {
        for circle in &part.circles {
            let start = runs.len();
            runs.extend(runs_of(circle, ci));
            circle_runs.push((start..runs.len()).collect());
        }
    }
    let mut circle_of_run = vec![0usize; runs.len()];
    for (k, list) in circle_runs.iter().enumerate() {
        for &r in list {
            circle_of_run[r] = k;
        }
    }

    let mut edge_uf = UnionFind::new(lifted_edges);
    for run in &runs {
        for w in run.pieces.windows(2) {
            edge_uf.union(w[0].0, w[1].0);
        }
    }
    let mut by_class: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (r, run) in runs.iter().enumerate() {
        let root = edge_uf.find(run.pieces[0].0);
        by_class.entry(root).or_default().push(r);
    }
    let length = |r: usize| -> u32 { runs[r].pieces.iter().map(|p| u32::from(weights[p.0 / 2])).sum() };
    for (root, list) in &by_class {
        if list.len() != 2 {
            return Err(Error::UnliftableConfiguration(format!(
                "merged saddle connection {root} has {} copies",
                list.len()
            )));
        }
        if length(list[0]) != length(list[1]) {
            return Err(Error::UnliftableConfiguration("copies of a merged saddle connection differ in length".into()));
        }
    }

    // closed regular geodesics: drop them and glue their two sides
    let mut comp_uf = UnionFind::new(parts.len());
    let mut genus: Vec<u32> = parts.iter().map(|p| p.genus).collect();
    let mut label: Vec<Label> = parts.iter().map(|p| p.label).collect();
    let mut dropped_circles = vec![false; circle_runs.len()];
    let mut dropped_class = HashMap::new();
    for (root, list) in &by_class {
        let (x, y) = (list[0], list[1]);
        match (runs[x].order, runs[y].order) {
            (None, None) => {}
            (Some(_), Some(_)) => continue,
            _ => return Err(Error::UnliftableConfiguration("closed geodesic glued to a saddle connection".into())),
        }
        dropped_class.insert(*root, ());
        dropped_circles[circle_of_run[x]] = true;
        dropped_circles[circle_of_run[y]] = true;
        let (a, b) = (comp_uf.find(runs[x].component), comp_uf.find(runs[y].component));
        if a == b {
            genus[a] += 1;
        } else {
            comp_uf.union(a, b);
            let r = comp_uf.find(a);
            let other = if r == a { b } else { a };
            genus[r] += genus[other];
            label[r] = combine(label[a], label[b]);
        }
    }

    // final numbering: components by least member, edges by least lifted edge
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for ci in 0..parts.len() {
        groups.entry(comp_uf.find(ci)).or_default().push(ci);
    }
    let group_list: Vec<(usize, Vec<usize>)> = groups.into_iter().collect();
    let mut group_index = vec![0usize; parts.len()];
    for (gi, (_, members)) in group_list.iter().enumerate() {
        for &m in members {
            group_index[m] = gi;
        }
    }
    let mut kept: Vec<(usize, usize)> = by_class
        .iter()
        .filter(|(root, _)| !dropped_class.contains_key(*root))
        .map(|(root, list)| (list.iter().flat_map(|&r| runs[r].pieces.iter().map(|p| p.0)).min().unwrap(), *root))
        .collect();
    kept.sort_unstable();
    let new_id: HashMap<usize, u32> = kept.iter().enumerate().map(|(i, &(_, root))| (root, i as u32)).collect();
    let mut side_seen: HashMap<usize, u8> = HashMap::new();

    let mut components: Vec<Component> = group_list
        .iter()
        .map(|(root, members)| Component {
            label: label[*root],
            genus: genus[*root],
            interior: members.iter().flat_map(|&m| parts[m].interior.iter().copied()).collect(),
            boundary: vec![],
        })
        .collect();
    for (k, list) in circle_runs.iter().enumerate() {
        if dropped_circles[k] {
            continue;
        }
        let mut arcs = Vec::new();
        for &r in list {
            let root = edge_uf.find(runs[r].pieces[0].0);
            let side = side_seen.entry(root).and_modify(|s| *s += 1).or_insert(0);
            arcs.push(Arc { edge: new_id[&root], side: *side, order: runs[r].order.expect("singular run") });
        }
        components[group_index[runs[list[0]].component]].boundary.push(BoundaryCircle::new(arcs));
    }

    let mut lengths: Vec<u32> = vec![0; kept.len()];
    for (root, list) in &by_class {
        if let Some(&id) = new_id.get(root) {
            lengths[id as usize] = length(list[0]);
        }
    }
    let g = lengths.iter().copied().fold(0, gcd).max(1);
    let mut edges = Vec::new();
    for (id, len) in lengths.iter().enumerate() {
        let w = len / g;
        if w > 2 {
            return Err(Error::UnliftableConfiguration(format!("lifted saddle connection of relative length {w}")));
        }
        edges.push(SaddleConnection { id: id as u32, weight: w as u8 });
    }

    let origin_group: HashMap<(usize, u8, bool), usize> = parts
        .iter()
        .enumerate()
        .map(|(ci, p)| {
            let key = match p.origin {
                Origin::Whole(i) => (i, 0, true),
                Origin::Copy(i, s) => (i, s, false),
            };
            (key, group_index[ci])
        })
        .collect();
    let mut comp_pairs = Vec::new();
    for (ci, p) in parts.iter().enumerate() {
        let key = match p.origin.image() {
            Origin::Whole(i) => (i, 0, true),
            Origin::Copy(i, s) => (i, s, false),
        };
        let (a, b) = (group_index[ci], origin_group[&key]);
        comp_pairs.push((a.min(b), a.max(b)));
    }
    comp_pairs.sort_unstable();
    comp_pairs.dedup();
    let mut edge_pairs = Vec::new();
    for e in 0..lifted_edges {
        let (ra, rb) = (edge_uf.find(e), edge_uf.find(e ^ 1));
        if let (Some(&a), Some(&b)) = (new_id.get(&ra), new_id.get(&rb)) {
            edge_pairs.push((a.min(b), a.max(b)));
        }
    }
    edge_pairs.sort_unstable();
    edge_pairs.dedup();

    let mut cfg = Configuration::new(components, edges).with_stratum(stratum);
    cfg.involution = Some(Involution { components: comp_pairs, edges: edge_pairs });
    Ok(cfg)
}
