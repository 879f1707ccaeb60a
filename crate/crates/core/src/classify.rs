//! Decision predicates for configurations in strata with a hyperelliptic
//! connected component.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::configuration::{canonical_key, validate, CanonicalKey, Configuration, Label};
use crate::error::{Error, Result};
use crate::hyp_lift::enumerate_hyperelliptic;
use crate::ribbon_genus::ambient_genus;
use crate::strata::{classify_components, genus_of, is_nonempty, StratumSignature};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuickTest {
    NotHyperelliptic,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Realizable {
    Yes,
    Unknown,
}

/// A hyperelliptic component never has four or more components in the
/// complement of a collection, nor three unless one is a cylinder.
pub fn quick_test(cfg: &Configuration) -> QuickTest {
    let n = cfg.components.len();
    let has_cylinder = cfg.components.iter().any(|c| c.label == Label::Cylinder);
    if n >= 4 || (n >= 3 && !has_cylinder) {
        QuickTest::NotHyperelliptic
    } else {
        QuickTest::Inconclusive
    }
}

type Table = Arc<HashSet<CanonicalKey>>;

fn cache() -> &'static RwLock<HashMap<StratumSignature, Table>> {
    static CACHE: OnceLock<RwLock<HashMap<StratumSignature, Table>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Canonical keys of every configuration of the hyperelliptic component,
/// computed once per stratum.
pub fn hyperelliptic_table(sig: &StratumSignature) -> Result<Table> {
    if let Some(t) = cache().read().expect("cache lock").get(sig) {
        return Ok(Arc::clone(t));
    }
    let keys: HashSet<CanonicalKey> = enumerate_hyperelliptic(sig)?.iter().map(canonical_key).collect();
    let table = Arc::new(keys);
    cache().write().expect("cache lock").entry(sig.clone()).or_insert_with(|| Arc::clone(&table));
    Ok(table)
}

pub fn admissible_in_hyperelliptic(cfg: &Configuration, sig: &StratumSignature) -> Result<bool> {
    let table = hyperelliptic_table(sig)?;
    Ok(table.contains(&canonical_key(cfg)))
}

/// Configurations admissible for a stratum with a hyperelliptic component
/// and genus at least 5 also occur in some other component.
pub fn realizable_in_non_hyperelliptic(cfg: &Configuration, sig: &StratumSignature) -> Realizable {
    let check = || -> Result<bool> {
        if !is_nonempty(sig)? || genus_of(sig)? < 5 || !classify_components(sig)?.has_hyperelliptic {
            return Ok(false);
        }
        if !validate(cfg).ok {
            return Ok(false);
        }
        Ok(cfg.singularity_multiset()? == sig.orders() && ambient_genus(cfg)? == genus_of(sig)?)
    };
    match check() {
        Ok(true) => Realizable::Yes,
        _ => Realizable::Unknown,
    }
}

/// Verdict printed by the command line front end.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub quick_test: QuickTest,
    pub admissible_in_hyperelliptic: bool,
    pub realizable_in_non_hyperelliptic: Realizable,
}

pub fn verdict(cfg: &Configuration, sig: &StratumSignature) -> Result<Verdict> {
    if !classify_components(sig)?.has_hyperelliptic {
        return Err(Error::NoHyperellipticComponent(sig.to_string()));
    }
    Ok(Verdict {
        quick_test: quick_test(cfg),
        admissible_in_hyperelliptic: admissible_in_hyperelliptic(cfg, sig)?,
        realizable_in_non_hyperelliptic: realizable_in_non_hyperelliptic(cfg, sig),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configuration::{arc, circle, Component, SaddleConnection};
    use crate::configuration::samples::pillowcase;

    fn sphere(interior: Vec<i32>, a: i32, edge: u32, side: u8) -> Component {
        Component { label: Label::Minus, genus: 0, interior, boundary: vec![circle(&[arc(edge, side, a)])] }
    }

    fn chain(n: usize) -> Configuration {
        // - + + ... -   joined by closed saddle connections
        let mut comps = vec![sphere(vec![-1; 3], 1, 0, 0)];
        for i in 1..n - 1 {
            comps.push(Component {
                label: Label::Plus,
                genus: 1,
                interior: vec![],
                boundary: vec![circle(&[arc(i as u32 - 1, 1, 0)]), circle(&[arc(i as u32, 0, 0)])],
            });
        }
        comps.push(sphere(vec![-1; 3], 1, n as u32 - 2, 1));
        let edges = (0..n as u32 - 1).map(|id| SaddleConnection { id, weight: 1 }).collect();
        Configuration::new(comps, edges)
    }

    #[test]
    fn quick_test_examples() {
        assert_eq!(quick_test(&chain(4)), QuickTest::NotHyperelliptic);
        assert_eq!(quick_test(&chain(3)), QuickTest::NotHyperelliptic);
        assert_eq!(quick_test(&pillowcase()), QuickTest::Inconclusive);
        let sig: StratumSignature = "Q(2,-1^6)".parse().unwrap();
        let c = crate::cp1_enum::enumerate_cp1(&"Q(1,1,-1^6)".parse().unwrap()).unwrap();
        let three = c.iter().find(|(_, cfg)| cfg.components.len() == 3).unwrap();
        assert_eq!(quick_test(&three.1), QuickTest::Inconclusive);
        assert!(sig.orders().len() > 1);
    }

    #[test]
    fn closure_and_memo() {
        let sig: StratumSignature = "Q(3,3,2)".parse().unwrap();
        for cfg in enumerate_hyperelliptic(&sig).unwrap() {
            assert!(admissible_in_hyperelliptic(&cfg, &sig).unwrap());
        }
        let a = hyperelliptic_table(&sig).unwrap();
        let b = hyperelliptic_table(&sig).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
    }

    #[test]
    fn connection_between_unpaired_singularities() {
        // a simple saddle connection from a zero of order 3 to one of order 1
        let sig: StratumSignature = "Q(3,3,1,1)".parse().unwrap();
        let cfg = Configuration::new(
            vec![Component {
                label: Label::Minus,
                genus: 3,
                interior: vec![3, 1],
                boundary: vec![circle(&[arc(0, 0, 4), arc(0, 1, 2)])],
            }],
            vec![SaddleConnection { id: 0, weight: 1 }],
        );
        assert!(validate(&cfg).ok);
        assert_eq!(cfg.singularity_multiset().unwrap(), sig.orders());
        assert_eq!(ambient_genus(&cfg).unwrap(), genus_of(&sig).unwrap());
        assert!(!admissible_in_hyperelliptic(&cfg, &sig).unwrap());
        assert!(!admissible_in_hyperelliptic(&chain(4), &sig).unwrap());
    }

    #[test]
    fn realizability() {
        let sig: StratumSignature = "Q(9,9,1,1)".parse().unwrap();
        assert_eq!(genus_of(&sig).unwrap(), 6);
        let cfg = enumerate_hyperelliptic(&sig).unwrap().remove(0);
        assert_eq!(realizable_in_non_hyperelliptic(&cfg, &sig), Realizable::Yes);
        let small: StratumSignature = "Q(3,3,2)".parse().unwrap();
        let cfg = enumerate_hyperelliptic(&small).unwrap().remove(0);
        assert_eq!(realizable_in_non_hyperelliptic(&cfg, &small), Realizable::Unknown);
        let none: StratumSignature = "Q(12,8)".parse().unwrap();
        assert_eq!(realizable_in_non_hyperelliptic(&cfg, &none), Realizable::Unknown);
    }
}
