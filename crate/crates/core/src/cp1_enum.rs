//! Configurations of ĥomologous saddle connections on genus-zero quadratic
//! strata `Q(k_1, .., k_r, -1^s)`.
//!
//! There are five shapes. A: a single saddle connection joining two
//! singularities. B: one closed saddle connection cutting the sphere into two
//! discs. C: two closed saddle connections bounding a cylinder. D: a cylinder
//! whose far boundary is a short loop between two poles. E: the pillowcase.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::configuration::canonical_key;
use crate::configuration::{arc, circle, Component, Configuration, Label, SaddleConnection};
use crate::error::{Error, Result};
use crate::strata::{genus_of, is_nonempty, Kind, StratumSignature};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyTag {
    A,
    B,
    C,
    D,
    E,
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl std::str::FromStr for FamilyTag {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Self::A),
            "B" => Ok(Self::B),
            "C" => Ok(Self::C),
            "D" => Ok(Self::D),
            "E" => Ok(Self::E),
            other => Err(format!("unknown family `{other}`, expected one of A, B, C, D, E")),
        }
    }
}

/// One disc of a B or C configuration.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Side {
    /// Order of the boundary singularity.
    pub a: i32,
    /// Non-pole interior orders.
    pub part: Vec<i32>,
    pub poles: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FamilyParams {
    A { k: i32, k_prime: i32 },
    B { k: i32, sides: [Side; 2] },
    C { sides: [Side; 2] },
    D { k: i32 },
    E {},
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cp1Family {
    pub tag: FamilyTag,
    pub params: FamilyParams,
}

/// Every sub-multiset of a sorted multiset, each once, as (taken, left).
pub fn sub_multisets(items: &[i32]) -> Vec<(Vec<i32>, Vec<i32>)> {
    let mut groups: Vec<(i32, usize)> = Vec::new();
    for &x in items {
        match groups.last_mut() {
            Some((v, n)) if *v == x => *n += 1,
            _ => groups.push((x, 1)),
        }
    }
    let mut out = vec![(vec![], vec![])];
    for (v, n) in groups {
        out = out
            .into_iter()
            .flat_map(|(taken, left)| {
                (0..=n).map(move |t| {
                    let mut taken = taken.clone();
                    let mut left = left.clone();
                    taken.extend(std::iter::repeat_n(v, t));
                    left.extend(std::iter::repeat_n(v, n - t));
                    (taken, left)
                })
            })
            .collect();
    }
    out
}

fn remove_one(items: &[i32], x: i32) -> Vec<i32> {
    let mut v = items.to_vec();
    if let Some(i) = v.iter().position(|&y| y == x) {
        v.remove(i);
    }
    v
}

fn poles(n: usize) -> impl Iterator<Item = i32> {
    std::iter::repeat_n(-1, n)
}

fn disc(side: &Side, edge: u32, edge_side: u8) -> Component {
    Component {
        label: Label::Minus,
        genus: 0,
        interior: side.part.iter().copied().chain(poles(side.poles)).collect(),
        boundary: vec![circle(&[arc(edge, edge_side, side.a)])],
    }
}

fn weights(ws: &[u8]) -> Vec<SaddleConnection> {
    ws.iter().enumerate().map(|(i, &w)| SaddleConnection { id: i as u32, weight: w }).collect()
}

fn side(a: i32, part: Vec<i32>) -> Side {
    let poles = (part.iter().sum::<i32>() + a + 2) as usize;
    Side { a, part, poles }
}

/// Family A: one saddle connection between singularities of orders `k`, `k'`.
pub fn family_a(nonpoles: &[i32], s: usize, k: i32, k_prime: i32) -> Configuration {
    let mut rest: Vec<i32> = nonpoles.iter().copied().chain(poles(s)).collect();
    rest = remove_one(&rest, k);
    rest = remove_one(&rest, k_prime);
    let comp = Component {
        label: Label::Minus,
        genus: 0,
        interior: rest,
        boundary: vec![circle(&[arc(0, 0, k + 1), arc(0, 1, k_prime + 1)])],
    };
    Configuration::new(vec![comp], weights(&[1]))
}

pub fn family_b(sides: &[Side; 2]) -> Configuration {
    Configuration::new(vec![disc(&sides[0], 0, 0), disc(&sides[1], 0, 1)], weights(&[1]))
}

pub fn family_c(sides: &[Side; 2]) -> Configuration {
    let cylinder = Component {
        label: Label::Cylinder,
        genus: 0,
        interior: vec![],
        boundary: vec![circle(&[arc(0, 1, 0)]), circle(&[arc(1, 1, 0)])],
    };
    Configuration::new(vec![disc(&sides[0], 0, 0), disc(&sides[1], 1, 0), cylinder], weights(&[1, 1]))
}

pub fn family_d(nonpoles: &[i32], s: usize, k: i32) -> Configuration {
    let sphere = Component {
        label: Label::Minus,
        genus: 0,
        interior: remove_one(nonpoles, k).into_iter().chain(poles(s - 2)).collect(),
        boundary: vec![circle(&[arc(0, 0, k)])],
    };
    let cylinder = Component {
        label: Label::Cylinder,
        genus: 0,
        interior: vec![],
        boundary: vec![circle(&[arc(0, 1, 0)]), circle(&[arc(1, 0, 0), arc(1, 1, 0)])],
    };
    Configuration::new(vec![sphere, cylinder], weights(&[2, 1]))
}

pub fn pillowcase() -> Configuration {
    let cylinder = Component {
        label: Label::Cylinder,
        genus: 0,
        interior: vec![],
        boundary: vec![circle(&[arc(0, 0, 0), arc(0, 1, 0)]), circle(&[arc(1, 0, 0), arc(1, 1, 0)])],
    };
    Configuration::new(vec![cylinder], weights(&[1, 1]))
}

fn dedup_values(items: impl IntoIterator<Item = i32>) -> Vec<i32> {
    let mut v: Vec<i32> = items.into_iter().collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v.dedup();
    v
}

/// Both ways of splitting `rest` between two discs with boundary orders
/// `a1`, `a2`, with mirror images removed when the discs coincide.
fn two_sides(a1: i32, a2: i32, rest: &[i32]) -> Vec<[Side; 2]> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (p, q) in sub_multisets(rest) {
        let pair = [side(a1, p), side(a2, q)];
        let mut key = [(pair[0].a, pair[0].part.clone()), (pair[1].a, pair[1].part.clone())];
        key.sort();
        if seen.insert(key) {
            out.push(pair);
        }
    }
    out
}

/// All configurations of a genus-zero quadratic stratum.
pub fn enumerate_cp1(sig: &StratumSignature) -> Result<Vec<(Cp1Family, Configuration)>> {
    if sig.kind() != Kind::Quadratic {
        return Err(Error::NotQuadratic);
    }
    if genus_of(sig)? != 0 {
        return Err(Error::NotGenusZero(sig.to_string()));
    }
    if !is_nonempty(sig)? {
        return Err(Error::EmptyStratum(sig.to_string()));
    }
    let s = sig.pole_count();
    let nonpoles: Vec<i32> = sig.orders().iter().copied().filter(|&k| k >= 0).collect();
    let count = |k: i32| nonpoles.iter().filter(|&&x| x == k).count() + if k == -1 { s } else { 0 };
    let mut raw: Vec<(Cp1Family, Configuration)> = Vec::new();
    let mut push = |tag, params, cfg| raw.push((Cp1Family { tag, params }, cfg));

    let endpoints = dedup_values(nonpoles.iter().copied().filter(|&k| k != 0).chain((s > 0).then_some(-1)));
    for (i, &k) in endpoints.iter().enumerate() {
        for &k_prime in &endpoints[i..] {
            if (k, k_prime) == (-1, -1) || (k == k_prime && count(k) < 2) {
                continue;
            }
            push(FamilyTag::A, FamilyParams::A { k, k_prime }, family_a(&nonpoles, s, k, k_prime));
        }
    }

    for k in dedup_values(nonpoles.iter().copied().filter(|&k| k >= 2)) {
        let rest = remove_one(&nonpoles, k);
        for a1 in (1..k).rev().filter(|&a1| a1 >= k - a1) {
            for sides in two_sides(a1, k - a1, &rest) {
                assert_eq!(sides[0].poles + sides[1].poles, s);
                push(FamilyTag::B, FamilyParams::B { k, sides: sides.clone() }, family_b(&sides));
            }
        }
    }

    let positive = dedup_values(nonpoles.iter().copied().filter(|&k| k >= 1));
    for (i, &a1) in positive.iter().enumerate() {
        for &a2 in &positive[i..] {
            if a1 == a2 && count(a1) < 2 {
                continue;
            }
            let rest = remove_one(&remove_one(&nonpoles, a1), a2);
            for sides in two_sides(a1, a2, &rest) {
                assert_eq!(sides[0].poles + sides[1].poles, s);
                push(FamilyTag::C, FamilyParams::C { sides: sides.clone() }, family_c(&sides));
            }
        }
    }

    if s >= 2 {
        for &k in &positive {
            push(FamilyTag::D, FamilyParams::D { k }, family_d(&nonpoles, s, k));
        }
    }

    if nonpoles.is_empty() && s == 4 {
        push(FamilyTag::E, FamilyParams::E {}, pillowcase());
    }

    let stratum = sig.to_string();
    let mut seen = HashSet::new();
    Ok(raw
        .into_iter()
        .filter(|(_, cfg)| seen.insert(canonical_key(cfg)))
        .map(|(fam, cfg)| (fam, cfg.with_stratum(stratum.clone())))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configuration::validate;
    use crate::ribbon_genus::ambient_genus;

    fn tags(sig: &str) -> Vec<FamilyTag> {
        enumerate_cp1(&sig.parse().unwrap()).unwrap().into_iter().map(|(f, _)| f.tag).collect()
    }

    #[test]
    fn spec_counts() {
        use FamilyTag::*;
        assert_eq!(tags("Q(-1^4)"), vec![E]);
        assert_eq!(tags("Q(1,1,-1^6)"), vec![A, A, C, D]);
        assert_eq!(tags("Q(2,-1^6)"), vec![A, B, D]);
    }

    #[test]
    fn outputs_are_valid_spheres() {
        for sig in ["Q(-1^4)", "Q(1,-1^5)", "Q(3,1,-1^8)", "Q(2,2,-1^8)", "Q(4,0,-1^8)", "Q(1,0,0,-1^5)"] {
            let sig: StratumSignature = sig.parse().unwrap();
            for (fam, cfg) in enumerate_cp1(&sig).unwrap() {
                let report = validate(&cfg);
                assert!(report.ok, "{sig} {fam:?} {:?}", report.findings);
                assert_eq!(ambient_genus(&cfg).unwrap(), 0);
                assert_eq!(cfg.singularity_multiset().unwrap(), sig.orders(), "{sig} {fam:?}");
                assert_eq!(cfg.stratum, sig.to_string());
            }
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(enumerate_cp1(&"Q(2,2)".parse().unwrap()), Err(Error::NotGenusZero(_))));
        assert!(matches!(enumerate_cp1(&"H(0)".parse().unwrap()), Err(Error::NotQuadratic)));
    }

    #[test]
    fn multiset_splits() {
        assert_eq!(sub_multisets(&[2, 2, 1]).len(), 6);
        assert_eq!(sub_multisets(&[]).len(), 1);
    }

    #[test]
    fn deterministic() {
        let sig: StratumSignature = "Q(2,1,1,-1^8)".parse().unwrap();
        assert_eq!(enumerate_cp1(&sig).unwrap(), enumerate_cp1(&sig).unwrap());
    }
}
