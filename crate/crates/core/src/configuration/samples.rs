//! Hand-built configurations shared by unit tests.

use super::*;

pub fn edges(weights: &[u8]) -> Vec<SaddleConnection> {
    weights.iter().enumerate().map(|(i, &w)| SaddleConnection { id: i as EdgeId, weight: w }).collect()
}

/// One cylinder, two loops; lies in `Q(-1^4)`.
pub fn pillowcase() -> Configuration {
    Configuration::new(
        vec![Component {
            label: Label::Cylinder,
            genus: 0,
            interior: vec![],
            boundary: vec![circle(&[arc(0, 0, 0), arc(0, 1, 0)]), circle(&[arc(1, 0, 0), arc(1, 1, 0)])],
        }],
        edges(&[1, 1]),
    )
}

/// Three components `-`, `+`, `+` joined by three saddle connections.
pub fn figure_two() -> Configuration {
    Configuration::new(
        vec![
            Component {
                label: Label::Minus,
                genus: 0,
                interior: vec![-1, -1, -1, -1],
                boundary: vec![circle(&[arc(0, 0, 2)])],
            },
            Component {
                label: Label::Plus,
                genus: 1,
                interior: vec![],
                boundary: vec![circle(&[arc(0, 1, 2)]), circle(&[arc(1, 0, 0), arc(2, 0, 2)])],
            },
            Component {
                label: Label::Plus,
                genus: 1,
                interior: vec![],
                boundary: vec![circle(&[arc(1, 1, 2)]), circle(&[arc(2, 1, 2)])],
            },
        ],
        edges(&[1, 1, 1]),
    )
}

/// A single `-` component whose one circle carries both copies of one edge.
pub fn single_loop() -> Configuration {
    Configuration::new(
        vec![Component {
            label: Label::Minus,
            genus: 0,
            interior: vec![-1; 6],
            boundary: vec![circle(&[arc(0, 0, 2), arc(0, 1, 2)])],
        }],
        edges(&[1]),
    )
}

fn balancing_interior(genus: u32, boundary_sum: i32, circles: i32) -> Vec<i32> {
    let target = 4 * genus as i32 + 2 * circles - 4 - boundary_sum;
    match target {
        t if t < 0 => vec![-1; (-t) as usize],
        0 => vec![],
        t => vec![t],
    }
}

/// Two `-` components with one circle each, joined by one edge.
pub fn two_joined(g1: u32, g2: u32) -> Configuration {
    let comp = |g: u32, side: u8| Component {
        label: Label::Minus,
        genus: g,
        interior: balancing_interior(g, 2, 1),
        boundary: vec![circle(&[arc(0, side, 2)])],
    };
    Configuration::new(vec![comp(g1, 0), comp(g2, 1)], edges(&[1]))
}

/// Two components joined by two edges; the second has two circles.
pub fn two_joined_twice(g1: u32, g2: u32) -> Configuration {
    Configuration::new(
        vec![
            Component {
                label: Label::Minus,
                genus: g1,
                interior: balancing_interior(g1, 2, 1),
                boundary: vec![circle(&[arc(0, 0, 1), arc(1, 0, 1)])],
            },
            Component {
                label: Label::Minus,
                genus: g2,
                interior: balancing_interior(g2, 4, 2),
                boundary: vec![circle(&[arc(0, 1, 2)]), circle(&[arc(1, 1, 2)])],
            },
        ],
        edges(&[1, 1]),
    )
}

/// One `-` component, one circle with two interleaved loops `a b a b`.
pub fn interleaved(genus: u32) -> Configuration {
    Configuration::new(
        vec![Component {
            label: Label::Minus,
            genus,
            interior: balancing_interior(genus, 4, 1),
            boundary: vec![circle(&[arc(0, 0, 1), arc(1, 0, 1), arc(0, 1, 1), arc(1, 1, 1)])],
        }],
        edges(&[1, 1]),
    )
}

/// One `-` component, one circle with two nested loops `a a b b`.
pub fn nested(genus: u32) -> Configuration {
    Configuration::new(
        vec![Component {
            label: Label::Minus,
            genus,
            interior: balancing_interior(genus, 4, 1),
            boundary: vec![circle(&[arc(0, 0, 1), arc(0, 1, 1), arc(1, 0, 1), arc(1, 1, 1)])],
        }],
        edges(&[1, 1]),
    )
}
