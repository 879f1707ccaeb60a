use std::fmt;

use serde::{Deserialize, Serialize};

use super::{match_basic_type, BasicType, Configuration, Label};

/// Validation rules, checked in this order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rule {
    /// Each saddle connection has exactly two copies, sides 0 and 1.
    V1,
    /// Gauss–Bonnet with boundary on each component.
    V2,
    /// Cylinder shape.
    V3,
    /// `+` components have positive genus and even interior orders.
    V4,
    /// Graph of components is an admissible basic type.
    V5,
    /// Single-arc circles never carry an order-0 singularity.
    V6,
    /// Two-arc circle parities.
    V7,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Location {
    Configuration,
    Component(usize),
    Circle { component: usize, circle: usize },
    Edge(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub rule: Rule,
    pub severity: Severity,
    pub message: String,
    pub location: Location,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    /// Graph type when V5 could be evaluated and matched.
    pub basic_type: Option<BasicType>,
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn violates(&self, rule: Rule) -> bool {
        self.findings.iter().any(|f| f.rule == rule && f.severity == Severity::Error)
    }
}

struct Collector(Vec<Finding>);

impl Collector {
    fn error(&mut self, rule: Rule, location: Location, message: String) {
        self.0.push(Finding { rule, severity: Severity::Error, message, location });
    }
}

/// Checks a configuration against every well-formedness rule and reports all
/// violations. Mathematical invalidity never produces an `Err`.
pub fn validate(config: &Configuration) -> ValidationReport {
    let mut out = Collector(Vec::new());

    // V1
    for e in &config.edges {
        if !(1..=2).contains(&e.weight) {
            out.error(Rule::V1, Location::Edge(e.id), format!("length weight {} not in {{1, 2}}", e.weight));
        }
    }
    let mut ids: Vec<u32> = config.edges.iter().map(|e| e.id).collect();
    ids.sort_unstable();
    if ids.windows(2).any(|w| w[0] == w[1]) {
        out.error(Rule::V1, Location::Configuration, "duplicate saddle connection id".into());
    }
    for (ci, comp) in config.components.iter().enumerate() {
        if comp.boundary.is_empty() {
            out.error(Rule::V1, Location::Component(ci), "component has no boundary".into());
        }
        for (bi, c) in comp.boundary.iter().enumerate() {
            let loc = Location::Circle { component: ci, circle: bi };
            if c.arcs.is_empty() {
                out.error(Rule::V1, loc, "empty boundary circle".into());
            }
            if c.arcs.iter().any(|a| a.order < 0) {
                out.error(Rule::V1, loc, "negative boundary singularity order".into());
            }
        }
        if comp.interior.iter().any(|&k| k < -1) {
            out.error(Rule::V1, Location::Component(ci), "interior order below -1".into());
        }
    }
    let bookkeeping = config.arc_index();
    if let Err(e) = &bookkeeping {
        out.error(Rule::V1, Location::Configuration, e.to_string());
    }

    for (ci, comp) in config.components.iter().enumerate() {
        let loc = Location::Component(ci);
        let m = comp.boundary.len() as i64;
        let interior: i64 = comp.interior.iter().map(|&k| i64::from(k)).sum();
        let boundary: i64 = comp.boundary.iter().flat_map(|c| &c.arcs).map(|a| i64::from(a.order)).sum();
        let expected = 4 * i64::from(comp.genus) + 2 * m - 4;
        // V2
        if interior + boundary != expected {
            out.error(
                Rule::V2,
                loc,
                format!("interior {interior} + boundary {boundary} != 4g + 2m - 4 = {expected}"),
            );
        }
        // V3
        if comp.label == Label::Cylinder {
            if comp.genus != 0 || !comp.interior.is_empty() || comp.boundary.len() != 2 {
                out.error(Rule::V3, loc, "cylinder must have genus 0, no interior singularity and two circles".into());
            } else {
                if comp.boundary.iter().flat_map(|c| &c.arcs).any(|a| a.order != 0) {
                    out.error(Rule::V3, loc, "cylinder boundary singularities must have order 0".into());
                }
                let lengths: Vec<u32> = comp
                    .boundary
                    .iter()
                    .map(|c| c.arcs.iter().map(|a| config.edge(a.edge).map_or(0, |e| u32::from(e.weight))).sum())
                    .collect();
                if lengths[0] != lengths[1] {
                    out.error(Rule::V3, loc, format!("cylinder circles have lengths {} and {}", lengths[0], lengths[1]));
                }
            }
        }
        // V4
        if comp.label == Label::Plus {
            if comp.genus == 0 {
                out.error(Rule::V4, loc, "non-cylinder component with trivial holonomy has genus 0".into());
            }
            if comp.interior.iter().any(|k| k % 2 != 0) {
                out.error(Rule::V4, loc, "trivial holonomy component has an odd interior order".into());
            }
        }
        if comp.label != Label::Cylinder {
            for (bi, c) in comp.boundary.iter().enumerate() {
                let cloc = Location::Circle { component: ci, circle: bi };
                match c.arcs.as_slice() {
                    // V6
                    [a] if a.order == 0 => {
                        out.error(Rule::V6, cloc, "single-arc circle with an order-0 singularity bounds a cylinder".into())
                    }
                    // V7
                    [a, b] => {
                        if a.order == 0 && b.order == 0 {
                            out.error(Rule::V7, cloc, "two-arc circle with both orders 0".into());
                        }
                        if comp.label == Label::Plus && (a.order - b.order) % 2 != 0 {
                            out.error(Rule::V7, cloc, "two-arc circle on a + component with mixed parity".into());
                        }
                    }
                    _ => {}
                }
            }
        }
    }

    // V5
    let mut basic_type = None;
    if bookkeeping.is_ok() {
        let graph = config.graph_skeleton().expect("bookkeeping checked");
        match match_basic_type(&graph) {
            Ok(t) => basic_type = Some(t),
            Err(e) => out.error(Rule::V5, Location::Configuration, e.to_string()),
        }
    }

    let mut findings = out.0;
    findings.sort_by_key(|f| f.rule);
    let ok = findings.iter().all(|f| f.severity != Severity::Error);
    ValidationReport { ok, basic_type, findings }
}
