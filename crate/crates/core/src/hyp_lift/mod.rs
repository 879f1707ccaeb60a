//! Lifting genus-zero configurations through the double covers that produce
//! hyperelliptic connected components.
//!
//! Each component of the base configuration is a sphere with holes. Its
//! preimage is connected when it contains a branch point or when some
//! boundary circle has odd monodromy, the monodromy of a circle being the
//! parity of the branch points on its far side. Sheets of neighbouring
//! components are matched along saddle connections so that the total
//! monodromy around every boundary singularity agrees with its ramification.

mod cover;

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::configuration::{canonical_key, Component, Configuration, CornerClasses, EdgeId, Label, SaddleConnection};
use crate::cp1_enum::enumerate_cp1;
use crate::error::{Error, Result};
use crate::strata::{classify_components, Kind, LiftContext, StratumSignature};
use cover::{LiftedArc, LiftedComponent, Origin};

/// Orders over a singularity of order `k` in the double cover. A ramified
/// pole lifts to a regular point, reported as `0`.
pub fn lift_order(k: i32, ramified: bool) -> Vec<i32> {
    if ramified {
        vec![2 * k + 2]
    } else {
        vec![k, k]
    }
}

/// Boundary of the connected double cover of a disc whose single boundary
/// circle is one arc ending at a singularity of order `a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryShape {
    /// Corner orders of each lifted circle.
    pub circles: Vec<Vec<i32>>,
}

pub fn lift_single_boundary_component(interior_lift_orders: &[i32], a: i32) -> BoundaryShape {
    let half: i32 = interior_lift_orders.iter().sum::<i32>() / 2;
    if (half + a).rem_euclid(2) == 0 {
        BoundaryShape { circles: vec![vec![a], vec![a]] }
    } else {
        BoundaryShape { circles: vec![vec![a, a]] }
    }
}

/// Record of one single-boundary component whose lift is connected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingleBoundaryLift {
    pub interior_lift_orders: Vec<i32>,
    pub a: i32,
    /// Number of lifted boundary circles.
    pub circles: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftTrace {
    pub single_boundary: Vec<SingleBoundaryLift>,
}

/// Which singularities of a base configuration are branch points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ramification {
    pub interior: Vec<Vec<bool>>,
    pub corner: Vec<bool>,
}

/// Stratum of the double cover.
pub fn target_signature(ctx: &LiftContext) -> Result<StratumSignature> {
    let orders = ctx
        .slots
        .iter()
        .flat_map(|s| if s.ramified && s.order == -1 { vec![] } else { lift_order(s.order, s.ramified) })
        .collect::<Vec<_>>();
    StratumSignature::quadratic(orders)
}

fn class_orders(cfg: &Configuration, classes: &CornerClasses) -> Vec<i32> {
    let mut angle = vec![0i32; classes.count];
    for (i, pos) in classes.corners.iter().enumerate() {
        angle[classes.class_of[i]] += cfg.components[pos.component].boundary[pos.circle].arcs[pos.index].order + 1;
    }
    angle.into_iter().map(|a| a - 2).collect()
}

/// Ways to place `r` ramified points among sites of given capacities.
fn distributions(r: usize, caps: &[usize]) -> Vec<Vec<usize>> {
    let Some((&first, rest)) = caps.split_first() else {
        return if r == 0 { vec![vec![]] } else { vec![] };
    };
    let mut out = Vec::new();
    for take in 0..=first.min(r) {
        for mut tail in distributions(r - take, rest) {
            tail.insert(0, take);
            out.push(tail);
        }
    }
    out
}

/// Every assignment of branch points compatible with the context, up to
/// permuting equal interior singularities of a component.
pub fn ramification_assignments(cfg: &Configuration, ctx: &LiftContext) -> Result<Vec<Ramification>> {
    let classes = cfg.corner_classes()?;
    let corner_orders = class_orders(cfg, &classes);
    let mut values: Vec<i32> = ctx.slots.iter().map(|s| s.order).collect();
    values.dedup();
    let mut all = vec![Ramification {
        interior: cfg.components.iter().map(|c| vec![false; c.interior.len()]).collect(),
        corner: vec![false; classes.count],
    }];
    for v in values {
        let needed = ctx.slots.iter().filter(|s| s.order == v).count();
        let ramified = ctx.slots.iter().filter(|s| s.order == v && s.ramified).count();
        // sites: one per component interior, then one per corner class
        let mut caps: Vec<usize> = cfg.components.iter().map(|c| c.interior.iter().filter(|&&k| k == v).count()).collect();
        let corner_sites: Vec<usize> = (0..classes.count).filter(|&c| corner_orders[c] == v).collect();
        caps.extend(corner_sites.iter().map(|_| 1));
        if caps.iter().sum::<usize>() != needed {
            return Err(Error::UnliftableConfiguration(format!(
                "configuration has {} singularities of order {v}, the source stratum {needed}",
                caps.iter().sum::<usize>()
            )));
        }
        let mut next = Vec::new();
        for base in &all {
            for dist in distributions(ramified, &caps) {
                let mut r = base.clone();
                for (ci, comp) in cfg.components.iter().enumerate() {
                    let mut left = dist[ci];
                    for (j, &k) in comp.interior.iter().enumerate() {
                        if k == v && left > 0 {
                            r.interior[ci][j] = true;
                            left -= 1;
                        }
                    }
                }
                for (n, &c) in corner_sites.iter().enumerate() {
                    r.corner[c] = dist[cfg.components.len() + n] == 1;
                }
                next.push(r);
            }
        }
        all = next;
    }
    Ok(all)
}

struct Monodromy {
    /// `mu[i][c]` for circle `c` of component `i`.
    mu: Vec<Vec<bool>>,
    /// Ramified interior points of each component.
    branch: Vec<usize>,
}

fn monodromy(cfg: &Configuration, classes: &CornerClasses, ram: &Ramification) -> Result<Monodromy> {
    let index = cfg.arc_index()?;
    let branch: Vec<usize> = ram.interior.iter().map(|v| v.iter().filter(|&&b| b).count()).collect();
    let mut mu = Vec::new();
    for (i, comp) in cfg.components.iter().enumerate() {
        let mut row = Vec::new();
        for (c, circle) in comp.boundary.iter().enumerate() {
            let mut seen_comp = HashSet::new();
            let mut seen_class = HashSet::new();
            let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
            let enter = |pos: crate::configuration::ArcPos, queue: &mut VecDeque<(usize, usize)>| -> Result<()> {
                if pos.component == i {
                    if pos.circle != c {
                        return Err(Error::UnliftableConfiguration("base surface is not a sphere".into()));
                    }
                    return Ok(());
                }
                queue.push_back((pos.component, pos.circle));
                Ok(())
            };
            for (n, a) in circle.arcs.iter().enumerate() {
                seen_class.insert(classes.class_at(crate::configuration::ArcPos { component: i, circle: c, index: n }));
                enter(index[&(a.edge, 1 - a.side)], &mut queue)?;
            }
            let mut parity = 0usize;
            while let Some((j, _)) = queue.pop_front() {
                if !seen_comp.insert(j) {
                    continue;
                }
                parity += branch[j];
                for (cj, cc) in cfg.components[j].boundary.iter().enumerate() {
                    for (n, a) in cc.arcs.iter().enumerate() {
                        seen_class.insert(classes.class_at(crate::configuration::ArcPos { component: j, circle: cj, index: n }));
                        let other = index[&(a.edge, 1 - a.side)];
                        if other.component == i && other.circle != c {
                            return Err(Error::UnliftableConfiguration("base surface is not a sphere".into()));
                        }
                        if other.component != i {
                            queue.push_back((other.component, other.circle));
                        }
                    }
                }
            }
            parity += seen_class.iter().filter(|&&k| ram.corner[k]).count();
            row.push(parity % 2 == 1);
        }
        let odd = row.iter().filter(|&&m| m).count() + branch[i];
        if odd % 2 == 1 {
            return Err(Error::UnliftableConfiguration(format!("component {i} has an odd number of branch points")));
        }
        mu.push(row);
    }
    Ok(Monodromy { mu, branch })
}

/// Sheet transitions along source edges, indexed by edge position.
fn transitions(cfg: &Configuration, classes: &CornerClasses, ram: &Ramification, mono: &Monodromy) -> Result<Vec<u8>> {
    let position: HashMap<EdgeId, usize> = cfg.edges.iter().enumerate().map(|(i, e)| (e.id, i)).collect();
    // per class: edges crossed after each corner, and the fixed sheet flips
    let mut crossings: Vec<Vec<usize>> = vec![vec![]; classes.count];
    let mut flips = vec![0u8; classes.count];
    for (k, pos) in classes.corners.iter().enumerate() {
        let circle = &cfg.components[pos.component].boundary[pos.circle].arcs;
        let after = &circle[(pos.index + 1) % circle.len()];
        let class = classes.class_of[k];
        crossings[class].push(position[&after.edge]);
        if pos.index + 1 == circle.len() && mono.mu[pos.component][pos.circle] {
            flips[class] ^= 1;
        }
    }
    let n = cfg.edges.len();
    if n > 20 {
        return Err(Error::UnliftableConfiguration("too many saddle connections".into()));
    }
    for mask in 0u32..1 << n {
        let ok = (0..classes.count).all(|v| {
            let sum = crossings[v].iter().fold(flips[v], |acc, &e| acc ^ (mask >> e & 1) as u8);
            sum == u8::from(ram.corner[v])
        });
        if ok {
            return Ok((0..n).map(|e| (mask >> e & 1) as u8).collect());
        }
    }
    Err(Error::UnliftableConfiguration("no consistent choice of sheets".into()))
}

fn circle_parity(circle: &[crate::configuration::Arc]) -> bool {
    circle.iter().map(|a| a.order).sum::<i32>().rem_euclid(2) == 1
}

/// Lift for one ramification assignment, with the single-boundary trace.
pub fn lift_with(cfg: &Configuration, ctx: &LiftContext, ram: &Ramification) -> Result<(Configuration, LiftTrace)> {
    let classes = cfg.corner_classes()?;
    let mono = monodromy(cfg, &classes, ram)?;
    let t = transitions(cfg, &classes, ram, &mono)?;
    let position: HashMap<EdgeId, usize> = cfg.edges.iter().enumerate().map(|(i, e)| (e.id, i)).collect();
    let corner_orders = class_orders(cfg, &classes);
    let regular: Vec<bool> = (0..classes.count).map(|c| ram.corner[c] && corner_orders[c] == -1).collect();
    let lifted_arc = |pos: crate::configuration::ArcPos, a: &crate::configuration::Arc, sheet: u8| -> LiftedArc {
        let e = position[&a.edge];
        let copy = if a.side == 0 { sheet } else { sheet ^ t[e] };
        LiftedArc { edge: 2 * e + copy as usize, side: a.side, order: a.order, regular_after: regular[classes.class_at(pos)] }
    };
    let mut parts = Vec::new();
    let mut trace = LiftTrace::default();
    for (i, comp) in cfg.components.iter().enumerate() {
        let arcs_on = |c: usize, sheet: u8| -> Vec<LiftedArc> {
            comp.boundary[c]
                .arcs
                .iter()
                .enumerate()
                .map(|(n, a)| lifted_arc(crate::configuration::ArcPos { component: i, circle: c, index: n }, a, sheet))
                .collect()
        };
        let connected = mono.branch[i] > 0 || mono.mu[i].iter().any(|&m| m);
        if !connected {
            for sheet in 0..2u8 {
                parts.push(LiftedComponent {
                    label: comp.label,
                    genus: comp.genus,
                    interior: comp.interior.clone(),
                    circles: (0..comp.boundary.len()).map(|c| arcs_on(c, sheet)).collect(),
                    origin: Origin::Copy(i, sheet),
                });
            }
            continue;
        }
        let mut circles = Vec::new();
        for c in 0..comp.boundary.len() {
            if mono.mu[i][c] {
                let mut both = arcs_on(c, 0);
                both.extend(arcs_on(c, 1));
                circles.push(both);
            } else {
                circles.push(arcs_on(c, 0));
                circles.push(arcs_on(c, 1));
            }
        }
        let mut interior = Vec::new();
        let mut trace_orders = Vec::new();
        for (&k, &r) in comp.interior.iter().zip(&ram.interior[i]) {
            let lifted = lift_order(k, r);
            trace_orders.extend(&lifted);
            if !(r && k == -1) {
                interior.extend(lifted);
            }
        }
        let m = comp.boundary.len() as i64;
        let chi = 2 * (2 - 2 * i64::from(comp.genus) - m) - mono.branch[i] as i64;
        let twice_genus = 2 - chi - circles.len() as i64;
        if twice_genus < 0 || twice_genus % 2 != 0 {
            return Err(Error::UnliftableConfiguration(format!("component {i} lifts to Euler characteristic {chi}")));
        }
        let holonomy_matches = comp.interior.iter().zip(&ram.interior[i]).all(|(&k, &r)| (k.rem_euclid(2) == 1) == r)
            && comp.boundary.iter().zip(&mono.mu[i]).all(|(c, &mu)| circle_parity(&c.arcs) == mu);
        let label = match comp.label {
            Label::Cylinder => Label::Cylinder,
            _ if holonomy_matches => Label::Plus,
            _ => Label::Minus,
        };
        if let [single] = comp.boundary.as_slice() {
            if let [a] = single.arcs.as_slice() {
                trace.single_boundary.push(SingleBoundaryLift {
                    interior_lift_orders: trace_orders,
                    a: a.order,
                    circles: circles.len(),
                });
            }
        }
        parts.push(LiftedComponent { label, genus: (twice_genus / 2) as u32, interior, circles, origin: Origin::Whole(i) });
    }
    let weights: Vec<u8> = cfg.edges.iter().map(|e| e.weight).collect();
    let lifted = cover::assemble(parts, &weights, target_signature(ctx)?.to_string())?;
    Ok((lifted, trace))
}

/// Every lift of a base configuration, one per ramification assignment.
pub fn lift_all(cfg: &Configuration, ctx: &LiftContext) -> Result<Vec<(Configuration, LiftTrace)>> {
    ramification_assignments(cfg, ctx)?.iter().map(|ram| lift_with(cfg, ctx, ram)).collect()
}

/// The lift of a base configuration under the first ramification assignment.
pub fn lift_configuration(cfg: &Configuration, ctx: &LiftContext) -> Result<Configuration> {
    lift_all(cfg, ctx)?
        .into_iter()
        .next()
        .map(|(c, _)| c)
        .ok_or_else(|| Error::UnliftableConfiguration("no ramification assignment".into()))
}

/// Cuts a cylinder of the base configuration along `count` closed geodesics,
/// each through a marked point.
pub fn split_cylinder(cfg: &Configuration, cylinder: usize, count: usize) -> Configuration {
    let cyl = &cfg.components[cylinder];
    let width: u32 = cyl.boundary[0].arcs.iter().map(|a| u32::from(cfg.edge(a.edge).map_or(1, |e| e.weight))).sum();
    let first = cfg.edges.iter().map(|e| e.id + 1).max().unwrap_or(0);
    let ids: Vec<EdgeId> = (first..first + count as EdgeId).collect();
    let mut edges = cfg.edges.clone();
    edges.extend(ids.iter().map(|&id| SaddleConnection { id, weight: width as u8 }));
    let loop_circle = |id: EdgeId, side: u8| crate::configuration::circle(&[crate::configuration::arc(id, side, 0)]);
    let mut components: Vec<Component> = cfg.components.clone();
    let piece = |boundary| Component { label: Label::Cylinder, genus: 0, interior: vec![], boundary };
    components[cylinder] = piece(vec![cyl.boundary[0].clone(), loop_circle(ids[0], 0)]);
    for w in ids.windows(2) {
        components.push(piece(vec![loop_circle(w[0], 1), loop_circle(w[1], 0)]));
    }
    components.push(piece(vec![loop_circle(ids[count - 1], 1), cyl.boundary[1].clone()]));
    Configuration { stratum: cfg.stratum.clone(), components, edges, involution: None }
}

/// Base configurations whose cylinders carry closed geodesics through
/// ramified marked points.
fn marked_point_sources(ctx: &LiftContext) -> Result<Vec<Configuration>> {
    let marked = ctx.slots.iter().filter(|s| s.order == 0 && s.ramified).count();
    let mut out = Vec::new();
    for t in 1..=marked {
        let mut rest: Vec<i32> = ctx.source.orders().to_vec();
        for _ in 0..t {
            let i = rest.iter().position(|&k| k == 0).expect("marked point present");
            rest.remove(i);
        }
        let sig = StratumSignature::quadratic(rest)?;
        for (_, cfg) in enumerate_cp1(&sig)? {
            let cylinders: Vec<usize> = (0..cfg.components.len()).filter(|&i| cfg.components[i].label == Label::Cylinder).collect();
            for c in cylinders {
                out.push(split_cylinder(&cfg, c, t));
            }
        }
    }
    Ok(out)
}

/// All lifts of all base configurations for one context, with traces.
pub fn enumerate_for_context(ctx: &LiftContext) -> Result<Vec<(Configuration, LiftTrace)>> {
    let mut sources: Vec<Configuration> = enumerate_cp1(&ctx.source)?.into_iter().map(|(_, c)| c).collect();
    sources.extend(marked_point_sources(ctx)?);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for src in &sources {
        for (cfg, trace) in lift_all(src, ctx)? {
            if seen.insert(canonical_key(&cfg)) {
                out.push((cfg, trace));
            }
        }
    }
    Ok(out)
}

/// Configurations of ĥomologous saddle connections that occur in the
/// hyperelliptic component of a quadratic stratum.
pub fn enumerate_hyperelliptic(sig: &StratumSignature) -> Result<Vec<Configuration>> {
    Ok(enumerate_hyperelliptic_traced(sig)?.into_iter().map(|(c, _)| c).collect())
}

pub fn enumerate_hyperelliptic_traced(sig: &StratumSignature) -> Result<Vec<(Configuration, LiftTrace)>> {
    if sig.kind() != Kind::Quadratic {
        return Err(Error::NotQuadratic);
    }
    let info = classify_components(sig)?;
    if !info.has_hyperelliptic || info.matches.is_empty() {
        return Err(Error::NoHyperellipticComponent(sig.to_string()));
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for ctx in &info.matches {
        for (mut cfg, trace) in enumerate_for_context(ctx)? {
            cfg.stratum = sig.to_string();
            if seen.insert(canonical_key(&cfg)) {
                out.push((cfg, trace));
            }
        }
    }
    Ok(out)
}
