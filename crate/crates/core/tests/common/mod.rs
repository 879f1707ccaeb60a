//! Shared oracles for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use saddle_config::configuration::{arc, circle, validate, Component, Configuration, Label, SaddleConnection};

type Side = (i32, Vec<i32>);

fn unordered(x: Side, y: Side) -> (Side, Side) {
    if x <= y {
        (x, y)
    } else {
        (y, x)
    }
}

/// Every split of `rest` into two sides, by index mask.
fn splits(rest: &[i32]) -> Vec<(Vec<i32>, Vec<i32>)> {
    (0u32..1 << rest.len())
        .map(|mask| {
            let (mut a, mut b) = (vec![], vec![]);
            for (i, &x) in rest.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    a.push(x)
                } else {
                    b.push(x)
                }
            }
            a.sort_unstable();
            b.sort_unstable();
            (a, b)
        })
        .collect()
}

fn without(list: &[i32], skip: &[usize]) -> Vec<i32> {
    list.iter().enumerate().filter(|(i, _)| !skip.contains(i)).map(|(_, &x)| x).collect()
}

/// Counts of families A, B, C, D, E for `Q(nonpoles, -1^s)`.
pub fn brute_counts(nonpoles: &[i32], s: usize) -> [usize; 5] {
    let endpoints: Vec<i32> = nonpoles.iter().copied().filter(|&k| k != 0).collect();
    let mut singular: Vec<i32> = endpoints.clone();
    singular.extend(std::iter::repeat_n(-1, s));

    let mut a = BTreeSet::new();
    for i in 0..singular.len() {
        for j in i + 1..singular.len() {
            let (x, y) = (singular[i].min(singular[j]), singular[i].max(singular[j]));
            if (x, y) != (-1, -1) {
                a.insert((x, y));
            }
        }
    }

    let mut b = BTreeSet::new();
    for (i, &k) in nonpoles.iter().enumerate() {
        if k < 2 {
            continue;
        }
        let rest = without(nonpoles, &[i]);
        for a1 in 1..k {
            for (p, q) in splits(&rest) {
                let sides = unordered((a1, p), (k - a1, q));
                let poles: i32 = [&sides.0, &sides.1].iter().map(|(ai, part)| part.iter().sum::<i32>() + ai + 2).sum();
                assert_eq!(poles as usize, s);
                b.insert((k, sides));
            }
        }
    }

    let mut c = BTreeSet::new();
    for i in 0..nonpoles.len() {
        for j in i + 1..nonpoles.len() {
            let (x, y) = (nonpoles[i], nonpoles[j]);
            if x <= 0 || y <= 0 {
                continue;
            }
            for (p, q) in splits(&without(nonpoles, &[i, j])) {
                c.insert(unordered((x, p), (y, q)));
            }
        }
    }

    let d: BTreeSet<i32> = if s >= 2 { endpoints.iter().copied().filter(|&k| k >= 1).collect() } else { BTreeSet::new() };
    let e = usize::from(nonpoles.is_empty() && s == 4);
    [a.len(), b.len(), c.len(), d.len(), e]
}

/// Genus-zero strata without marked points and with `sum |k| <= bound`.
pub fn small_strata(bound: i32) -> Vec<(Vec<i32>, usize)> {
    fn parts(n: i32, max: i32, acc: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        out.push(acc.clone());
        for k in (1..=max.min(n)).rev() {
            acc.push(k);
            parts(n - k, k, acc, out);
            acc.pop();
        }
    }
    let mut all = vec![];
    parts(bound, bound, &mut vec![], &mut all);
    all.into_iter()
        .filter_map(|p| {
            let s = p.iter().sum::<i32>() as usize + 4;
            let total = p.iter().sum::<i32>() + s as i32;
            (total <= bound).then_some((p, s))
        })
        .collect()
}


/// Interior orders that close up Gauss–Bonnet for a component, if the label
/// allows it.
fn interior_for(label: Label, genus: u32, circles: &[Vec<i32>]) -> Option<Vec<i32>> {
    let m = circles.len() as i32;
    let boundary: i32 = circles.iter().flatten().sum();
    let need = 4 * genus as i32 + 2 * m - 4 - boundary;
    match label {
        Label::Cylinder => (genus == 0 && m == 2 && boundary == 0).then(Vec::new),
        Label::Plus if need >= 0 && need % 2 == 0 => Some(if need > 0 { vec![need] } else { vec![] }),
        Label::Plus => None,
        Label::Minus if need >= 0 => Some(if need > 0 { vec![need] } else { vec![] }),
        Label::Minus => Some(vec![-1; need.unsigned_abs() as usize]),
    }
}

/// One random gluing: arcs are shuffled onto circles, circles onto
/// components, then labels are tried until the configuration validates.
pub fn random_gluing(rng: &mut ChaCha8Rng) -> Option<Configuration> {
    // single components are favoured: they carry the non-planar rotations
    let ncomp = [1, 1, 1, 2, 2, 3][rng.gen_range(0..6usize)];
    let nedges = rng.gen_range(1..=3u32);
    let darts = 2 * nedges as usize;
    if ncomp > darts {
        return None;
    }
    let ncircles = rng.gen_range(ncomp..=darts.min(ncomp + 2));
    let mut pool: Vec<(u32, u8)> = (0..nedges).flat_map(|e| [(e, 0), (e, 1)]).collect();
    pool.shuffle(rng);
    let mut cuts: Vec<usize> = (1..darts).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(ncircles - 1).collect();
    cuts.sort_unstable();
    let mut bounds = vec![0];
    bounds.extend(cuts);
    bounds.push(darts);
    let mut owner: Vec<usize> = (0..ncircles).map(|c| if c < ncomp { c } else { rng.gen_range(0..ncomp) }).collect();
    owner.shuffle(rng);
    let circles: Vec<Vec<(u32, u8, i32)>> = bounds
        .windows(2)
        .map(|w| {
            let len = w[1] - w[0];
            pool[w[0]..w[1]]
                .iter()
                .map(|&(e, s)| (e, s, if len == 1 { rng.gen_range(1..=2) } else { rng.gen_range(0..=2) }))
                .collect()
        })
        .collect();
    let genera: Vec<u32> = (0..ncomp).map(|_| rng.gen_range(0..=2)).collect();
    let edges: Vec<SaddleConnection> = (0..nedges).map(|id| SaddleConnection { id, weight: 1 }).collect();
    let labels = [Label::Minus, Label::Plus, Label::Cylinder];
    for code in 0..3usize.pow(ncomp as u32) {
        let mut comps = Vec::new();
        for (ci, &genus) in genera.iter().enumerate() {
            let label = labels[code / 3usize.pow(ci as u32) % 3];
            let mine: Vec<&Vec<(u32, u8, i32)>> = circles.iter().zip(&owner).filter(|(_, &o)| o == ci).map(|(c, _)| c).collect();
            let orders: Vec<Vec<i32>> = mine.iter().map(|c| c.iter().map(|a| a.2).collect()).collect();
            let genus = if label == Label::Cylinder { 0 } else { genus };
            let mut boundary: Vec<_> = mine.iter().map(|c| circle(&c.iter().map(|&(e, s, o)| arc(e, s, o)).collect::<Vec<_>>())).collect();
            if label == Label::Cylinder {
                for b in &mut boundary {
                    for a in &mut b.arcs {
                        a.order = 0;
                    }
                }
            }
            let orders = if label == Label::Cylinder { orders.iter().map(|c| vec![0; c.len()]).collect() } else { orders };
            let Some(interior) = interior_for(label, genus, &orders) else { break };
            comps.push(Component { label, genus, interior, boundary });
        }
        if comps.len() != ncomp {
            continue;
        }
        let cfg = Configuration::new(comps, edges.clone());
        if validate(&cfg).ok {
            return Some(cfg);
        }
    }
    None
}

/// `count` distinct valid gluings from a fixed seed.
pub fn random_valid_gluings(seed: u64, count: usize) -> Vec<Configuration> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for _ in 0..200_000 {
        if out.len() == count {
            break;
        }
        if let Some(cfg) = random_gluing(&mut rng) {
            if seen.insert(format!("{:?}", saddle_config::configuration::canonical_key(&cfg))) {
                out.push(cfg);
            }
        }
    }
    out
}
