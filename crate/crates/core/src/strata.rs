//! Strata of quadratic and Abelian differentials.
//!
//! A stratum is named by the multiset of orders of its singularities. For
//! quadratic differentials an order of `-1` is a simple pole and `0` a marked
//! point; the orders of a genus `g` surface sum to `4g - 4`. For Abelian
//! differentials they sum to `2g - 2`.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    Abelian,
    Quadratic,
}

/// Multiset of singularity orders, kept sorted in descending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StratumSignature {
    kind: Kind,
    orders: Vec<i32>,
}

impl StratumSignature {
    pub fn new(kind: Kind, mut orders: Vec<i32>) -> Result<Self> {
        let min = match kind {
            Kind::Quadratic => -1,
            Kind::Abelian => 0,
        };
        if let Some(bad) = orders.iter().find(|&&k| k < min) {
            return Err(Error::ParseSignature(
                format!("{orders:?}"),
                format!("order {bad} is below {min}"),
            ));
        }
        orders.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { kind, orders })
    }

    pub fn quadratic(orders: impl Into<Vec<i32>>) -> Result<Self> {
        Self::new(Kind::Quadratic, orders.into())
    }

    pub fn abelian(orders: impl Into<Vec<i32>>) -> Result<Self> {
        Self::new(Kind::Abelian, orders.into())
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// Orders, sorted descending.
    pub fn orders(&self) -> &[i32] {
        &self.orders
    }

    pub fn pole_count(&self) -> usize {
        self.orders.iter().filter(|&&k| k == -1).count()
    }

    /// Same stratum with marked points removed.
    pub fn without_marked_points(&self) -> Self {
        Self {
            kind: self.kind,
            orders: self.orders.iter().copied().filter(|&k| k != 0).collect(),
        }
    }

    fn order_sum(&self) -> i64 {
        self.orders.iter().map(|&k| i64::from(k)).sum()
    }
}

impl fmt::Display for StratumSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.kind {
            Kind::Abelian => 'H',
            Kind::Quadratic => 'Q',
        };
        let body = self
            .orders
            .iter()
            .dedup_with_count()
            .map(|(count, k)| {
                if count >= 3 {
                    format!("{k}^{count}")
                } else {
                    vec![k.to_string(); count].join(",")
                }
            })
            .join(",");
        write!(f, "{prefix}({body})")
    }
}

impl FromStr for StratumSignature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = |msg: &str| Error::ParseSignature(s.to_string(), msg.to_string());
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut chars = text.chars();
        let kind = match chars.next() {
            Some('Q') | Some('q') => Kind::Quadratic,
            Some('H') | Some('h') => Kind::Abelian,
            _ => return Err(err("expected leading `Q` or `H`")),
        };
        let rest = chars.as_str();
        let inner = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| err("expected parenthesised order list"))?;
        let mut orders = Vec::new();
        if !(inner.is_empty() || inner == "∅") {
            for item in inner.split(',') {
                let (base, exp) = match item.split_once('^') {
                    Some((b, e)) => (b, e),
                    None => (item, "1"),
                };
                let k: i32 = base.parse().map_err(|_| err("bad order"))?;
                let n: usize = exp.parse().map_err(|_| err("bad multiplicity"))?;
                orders.extend(std::iter::repeat_n(k, n));
            }
        }
        Self::new(kind, orders)
    }
}

impl Serialize for StratumSignature {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for StratumSignature {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Genus from Gauss–Bonnet. Marked points contribute nothing.
pub fn genus_of(sig: &StratumSignature) -> Result<u32> {
    let sum = sig.order_sum();
    let (divisor, form) = match sig.kind {
        Kind::Quadratic => (4, "4g-4"),
        Kind::Abelian => (2, "2g-2"),
    };
    if sum.rem_euclid(divisor) != 0 {
        return Err(Error::NonIntegralGenus { sum, form });
    }
    let g = sum / divisor + 1;
    if g < 0 {
        return Err(Error::NegativeGenus(sum));
    }
    Ok(g as u32)
}

/// Quadratic strata are nonempty except `Q(∅)`, `Q(1,-1)`, `Q(3,1)` and `Q(4)`
/// (marked points ignored). Abelian strata with integral genus are nonempty.
pub fn is_nonempty(sig: &StratumSignature) -> Result<bool> {
    genus_of(sig)?;
    if sig.kind == Kind::Abelian {
        return Ok(true);
    }
    let core = sig.without_marked_points();
    let empty: [&[i32]; 4] = [&[], &[1, -1], &[3, 1], &[4]];
    Ok(!empty.contains(&core.orders()))
}

/// Which classical list a hyperelliptic component comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum HypFamily {
    /// `Q(k1,k1,k2,k2)`, cover ramified over the poles.
    Lanneau1,
    /// `Q(k1,k1,2k2+2)`, ramified over the poles and the zero of order `k2`.
    Lanneau2,
    /// `Q(2k1+2,2k2+2)`, ramified over every singularity.
    Lanneau3,
    /// `H(2g-2)`.
    KZ1,
    /// `H(g-1,g-1)`.
    KZ2,
}

/// One singularity of the genus-zero base surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Slot {
    pub order: i32,
    pub ramified: bool,
}

/// Ramification data of a canonical double cover over a genus-zero stratum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LiftContext {
    pub source: StratumSignature,
    pub family: HypFamily,
    /// Every singularity of `source`, sorted by (order desc, ramified).
    pub slots: Vec<Slot>,
}

impl LiftContext {
    fn build(family: HypFamily, first: Slot, second: Option<Slot>, poles: usize) -> Self {
        let mut slots = vec![first];
        slots.extend(second);
        slots.extend(std::iter::repeat_n(Slot { order: -1, ramified: true }, poles));
        slots.sort_by(|a, b| b.order.cmp(&a.order).then(a.ramified.cmp(&b.ramified)));
        let source = StratumSignature {
            kind: Kind::Quadratic,
            orders: slots.iter().map(|s| s.order).collect(),
        };
        Self { source, family, slots }
    }

    /// Lanneau source `Q(k1,k2,-1^s)` with `s = k1 + k2 + 4`.
    pub fn lanneau(family: HypFamily, k1: i32, k2: i32) -> Self {
        let (r1, r2) = match family {
            HypFamily::Lanneau1 => (false, false),
            HypFamily::Lanneau2 => (false, true),
            _ => (true, true),
        };
        let s = (k1 + k2 + 4) as usize;
        Self::build(
            family,
            Slot { order: k1, ramified: r1 },
            Some(Slot { order: k2, ramified: r2 }),
            s,
        )
    }

    /// The singularities whose preimage is a single point.
    pub fn ramified_orders(&self) -> Vec<i32> {
        self.slots.iter().filter(|s| s.ramified).map(|s| s.order).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentClassification {
    pub has_hyperelliptic: bool,
    pub entirely_hyperelliptic_connected: bool,
    pub source: Option<LiftContext>,
    pub family: Option<HypFamily>,
    /// All matching templates, ordered by family.
    pub matches: Vec<LiftContext>,
}

const CONNECTED_QUADRATIC: [&[i32]; 5] = [&[1, 1, -1, -1], &[2, -1, -1], &[1, 1, 1, 1], &[2, 1, 1], &[2, 2]];
const CONNECTED_ABELIAN: [&[i32]; 4] = [&[0], &[0, 0], &[1, 1], &[2]];

fn is_odd(k: i32) -> bool {
    k.rem_euclid(2) == 1
}

/// `v = 2k + 2` with `k` even and non-negative.
fn half_lift_even(v: i32) -> Option<i32> {
    (v >= 2 && v.rem_euclid(4) == 2).then_some((v - 2) / 2)
}

fn lanneau_matches(orders: &[i32]) -> Vec<LiftContext> {
    let mut out = Vec::new();
    // orders are sorted descending
    if let [a, b, c, d] = *orders {
        if a == b && c == d && is_odd(a) && is_odd(c) && a >= 1 && c >= -1 {
            out.push(LiftContext::lanneau(HypFamily::Lanneau1, c, a));
        }
    }
    if orders.len() == 3 {
        for i in 0..3 {
            let Some(k2) = half_lift_even(orders[i]) else { continue };
            let rest: Vec<i32> = (0..3).filter(|&j| j != i).map(|j| orders[j]).collect();
            if rest[0] == rest[1] && is_odd(rest[0]) && rest[0] >= -1 {
                out.push(LiftContext::lanneau(HypFamily::Lanneau2, rest[0], k2));
                break;
            }
        }
    }
    if let [a, b] = *orders {
        if let (Some(k1), Some(k2)) = (half_lift_even(b), half_lift_even(a)) {
            out.push(LiftContext::lanneau(HypFamily::Lanneau3, k1, k2));
        }
    }
    out
}

fn kz_matches(orders: &[i32]) -> Vec<LiftContext> {
    let mut out = Vec::new();
    match *orders {
        [n] if n >= 0 && n % 2 == 0 => {
            let g = (n + 2) / 2;
            let s = (2 * g + 1) as usize;
            out.push(LiftContext::build(
                HypFamily::KZ1,
                Slot { order: 2 * g - 3, ramified: true },
                None,
                s,
            ));
        }
        [a, b] if a == b && a >= 0 => {
            let g = a + 1;
            let s = (2 * g + 2) as usize;
            out.push(LiftContext::build(
                HypFamily::KZ2,
                Slot { order: 2 * g - 2, ramified: false },
                None,
                s,
            ));
        }
        _ => {}
    }
    out
}

/// Detects the hyperelliptic connected component of a stratum, if any.
pub fn classify_components(sig: &StratumSignature) -> Result<ComponentClassification> {
    if !is_nonempty(sig)? {
        return Err(Error::EmptyStratum(sig.to_string()));
    }
    let (matches, connected) = match sig.kind {
        Kind::Quadratic => (
            lanneau_matches(sig.orders()),
            CONNECTED_QUADRATIC.contains(&sig.orders()),
        ),
        Kind::Abelian => (kz_matches(sig.orders()), CONNECTED_ABELIAN.contains(&sig.orders())),
    };
    let has = !matches.is_empty();
    Ok(ComponentClassification {
        has_hyperelliptic: has,
        entirely_hyperelliptic_connected: has && connected,
        source: matches.first().cloned(),
        family: matches.first().map(|m| m.family),
        matches,
    })
}
