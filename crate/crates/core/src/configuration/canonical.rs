//! Canonical form used for deduplication.
//!
//! Components are sorted by (label, genus, interior orders, boundary shape);
//! each circle is rotated to its lexicographically least sequence of
//! (order, weight); saddle connections are renumbered by first appearance,
//! the first copy met becoming side 0. Remaining ties are broken by trying
//! every admissible choice and keeping the least encoding.

use std::collections::HashMap;

use itertools::Itertools;

use super::{Arc, BoundaryCircle, Component, Configuration, EdgeId, Involution, Label, SaddleConnection};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<i64>);

type Shape = Vec<(i32, u8)>;

fn label_rank(l: Label) -> i64 {
    match l {
        Label::Minus => 0,
        Label::Plus => 1,
        Label::Cylinder => 2,
    }
}

fn weight_of(config: &Configuration, edge: EdgeId) -> u8 {
    config.edge(edge).map_or(0, |e| e.weight)
}

fn rotations_of_min(seq: &Shape) -> (Shape, Vec<usize>) {
    let n = seq.len();
    let rotated = |r: usize| -> Shape { (0..n).map(|i| seq[(r + i) % n]).collect() };
    let best = (0..n).map(rotated).min().unwrap_or_default();
    let starts = (0..n).filter(|&r| rotated(r) == best).collect();
    (best, starts)
}

struct CompInfo {
    key: (i64, u32, Vec<i32>, Vec<Shape>),
    /// (circle order, rotation start per circle in that order)
    layouts: Vec<(Vec<usize>, Vec<usize>)>,
}

fn permutations_within_groups(groups: &[Vec<usize>]) -> Vec<Vec<usize>> {
    groups
        .iter()
        .map(|g| g.iter().copied().permutations(g.len()).collect::<Vec<_>>())
        .multi_cartesian_product()
        .map(|parts| parts.concat())
        .collect::<Vec<_>>()
        .into_iter()
        .chain(groups.is_empty().then(Vec::new))
        .collect()
}

fn group_by_key<K: PartialEq>(order: &[usize], key: impl Fn(usize) -> K) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &i in order {
        match groups.last_mut() {
            Some(g) if key(g[0]) == key(i) => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    groups
}

fn comp_info(config: &Configuration, comp: &Component) -> CompInfo {
    let shapes: Vec<(Shape, Vec<usize>)> = comp
        .boundary
        .iter()
        .map(|c| {
            let seq: Shape = c.arcs.iter().map(|a| (a.order, weight_of(config, a.edge))).collect();
            rotations_of_min(&seq)
        })
        .collect();
    let mut circle_order: Vec<usize> = (0..shapes.len()).collect();
    circle_order.sort_by(|&a, &b| shapes[a].0.cmp(&shapes[b].0));
    let groups = group_by_key(&circle_order, |i| shapes[i].0.clone());
    let mut layouts = Vec::new();
    for order in permutations_within_groups(&groups) {
        let rots: Vec<Vec<usize>> = order.iter().map(|&c| shapes[c].1.clone()).collect();
        for starts in rots.into_iter().multi_cartesian_product() {
            layouts.push((order.clone(), starts));
        }
    }
    if layouts.is_empty() {
        layouts.push((vec![], vec![]));
    }
    let mut interior = comp.interior.clone();
    interior.sort_unstable_by(|a, b| b.cmp(a));
    let mut sorted_shapes: Vec<Shape> = shapes.into_iter().map(|s| s.0).collect();
    sorted_shapes.sort();
    CompInfo { key: (label_rank(comp.label), comp.genus, interior, sorted_shapes), layouts }
}

struct Choice {
    comp_order: Vec<usize>,
    layouts: Vec<usize>,
}

/// Old (edge, side) to new (edge, side).
type SideMap = HashMap<(EdgeId, u8), (EdgeId, u8)>;

fn encode(config: &Configuration, infos: &[CompInfo], choice: &Choice) -> (Vec<i64>, SideMap) {
    let mut relabel: HashMap<EdgeId, EdgeId> = HashMap::new();
    let mut first_side: HashMap<EdgeId, u8> = HashMap::new();
    let mut out = Vec::new();
    let mut arc_map = HashMap::new();
    for &ci in &choice.comp_order {
        let comp = &config.components[ci];
        let info = &infos[ci];
        let (order, starts) = &info.layouts[choice.layouts[ci]];
        out.push(info.key.0);
        out.push(i64::from(info.key.1));
        out.push(info.key.2.len() as i64);
        out.extend(info.key.2.iter().map(|&k| i64::from(k)));
        out.push(order.len() as i64);
        for (&c, &start) in order.iter().zip(starts) {
            let arcs = &comp.boundary[c].arcs;
            out.push(arcs.len() as i64);
            for i in 0..arcs.len() {
                let a = arcs[(start + i) % arcs.len()];
                let next = relabel.len() as EdgeId;
                let id = *relabel.entry(a.edge).or_insert(next);
                let side = match first_side.get(&a.edge) {
                    None => {
                        first_side.insert(a.edge, a.side);
                        0
                    }
                    Some(&s) => u8::from(s != a.side),
                };
                arc_map.insert((a.edge, a.side), (id, side));
                out.extend([i64::from(id), i64::from(side), i64::from(a.order), i64::from(weight_of(config, a.edge))]);
            }
        }
    }
    (out, arc_map)
}

fn best_choice(config: &Configuration) -> (Vec<i64>, Choice, Vec<CompInfo>) {
    let infos: Vec<CompInfo> = config.components.iter().map(|c| comp_info(config, c)).collect();
    let mut order: Vec<usize> = (0..infos.len()).collect();
    order.sort_by(|&a, &b| infos[a].key.cmp(&infos[b].key));
    let groups = group_by_key(&order, |i| infos[i].key.clone());
    let comp_orders = permutations_within_groups(&groups);
    let layout_ranges: Vec<Vec<usize>> = infos.iter().map(|i| (0..i.layouts.len()).collect()).collect();
    let mut layout_choices: Vec<Vec<usize>> = layout_ranges.into_iter().multi_cartesian_product().collect();
    if layout_choices.is_empty() {
        layout_choices.push(vec![]);
    }
    let mut best: Option<(Vec<i64>, Choice)> = None;
    for comp_order in &comp_orders {
        for layouts in &layout_choices {
            let choice = Choice { comp_order: comp_order.clone(), layouts: layouts.clone() };
            let (code, _) = encode(config, &infos, &choice);
            if best.as_ref().is_none_or(|(b, _)| code < *b) {
                best = Some((code, choice));
            }
        }
    }
    let (code, choice) = best.expect("at least one choice");
    (code, choice, infos)
}

/// Relabelling-invariant key; equal keys mean isomorphic configurations.
pub fn canonical_key(config: &Configuration) -> CanonicalKey {
    let (mut code, _, _) = best_choice(config);
    // edges that appear on no circle still count
    let mut stray: Vec<i64> = config
        .edges
        .iter()
        .filter(|e| !config.arcs().any(|(_, a)| a.edge == e.id))
        .map(|e| i64::from(e.weight))
        .collect();
    stray.sort_unstable();
    code.push(-1);
    code.extend(stray);
    CanonicalKey(code)
}

/// The configuration rewritten in canonical form.
pub fn canonical_form(config: &Configuration) -> Configuration {
    let (_, choice, infos) = best_choice(config);
    let (_, arc_map) = encode(config, &infos, &choice);
    let mut components = Vec::with_capacity(config.components.len());
    for &ci in &choice.comp_order {
        let comp = &config.components[ci];
        let (order, starts) = &infos[ci].layouts[choice.layouts[ci]];
        let boundary = order
            .iter()
            .zip(starts)
            .map(|(&c, &start)| {
                let arcs = &comp.boundary[c].arcs;
                BoundaryCircle::new(
                    (0..arcs.len())
                        .map(|i| {
                            let a = arcs[(start + i) % arcs.len()];
                            let (edge, side) = arc_map[&(a.edge, a.side)];
                            Arc { edge, side, order: a.order }
                        })
                        .collect(),
                )
            })
            .collect();
        components.push(Component { boundary, interior: infos[ci].key.2.clone(), ..comp.clone() });
    }
    let id_map: HashMap<EdgeId, EdgeId> = arc_map.iter().map(|(&(old, _), &(new, _))| (old, new)).collect();
    let mut edges: Vec<SaddleConnection> = config
        .edges
        .iter()
        .filter_map(|e| id_map.get(&e.id).map(|&id| SaddleConnection { id, weight: e.weight }))
        .collect();
    edges.sort();
    let position: HashMap<usize, usize> = choice.comp_order.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    let involution = config.involution.as_ref().map(|inv| {
        let norm = |a: usize, b: usize| (a.min(b), a.max(b));
        let mut components: Vec<(usize, usize)> =
            inv.components.iter().map(|&(a, b)| norm(position[&a], position[&b])).collect();
        components.sort_unstable();
        components.dedup();
        let mut edges: Vec<(EdgeId, EdgeId)> = inv
            .edges
            .iter()
            .filter_map(|&(a, b)| Some((*id_map.get(&a)?, *id_map.get(&b)?)))
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        Involution { components, edges }
    });
    Configuration { stratum: config.stratum.clone(), components, edges, involution }
}

#[cfg(test)]
mod tests {
    use super::super::samples::*;

    use super::*;

    #[test]
    fn relabelling_invariance() {
        let c = figure_two();
        let mut d = c.clone();
        // swap sides of edge 1, rename 2 -> 7, reorder components and rotate a circle
        for comp in &mut d.components {
            for circle in &mut comp.boundary {
                for a in &mut circle.arcs {
                    if a.edge == 1 {
                        a.side ^= 1;
                    }
                    if a.edge == 2 {
                        a.edge = 7;
                    }
                }
            }
        }
        d.edges[2].id = 7;
        d.components.swap(0, 2);
        d.components[1].boundary[1].arcs.rotate_left(1);
        assert_eq!(canonical_key(&c), canonical_key(&d));
        assert_eq!(canonical_form(&c), canonical_form(&d));
    }

    #[test]
    fn distinguishes_rotation_systems() {
        assert_ne!(canonical_key(&interleaved(1)), canonical_key(&nested(1)));
    }

    #[test]
    fn canonical_form_is_idempotent() {
        for c in [pillowcase(), figure_two(), single_loop(), two_joined_twice(1, 2)] {
            let f = canonical_form(&c);
            assert_eq!(canonical_form(&f), f);
            assert_eq!(canonical_key(&f), canonical_key(&c));
        }
    }
}
