//! Exact direction sectors: the angular encoding of planar cones.
//!
//! A cone over a rectangle union reduces to a finite union of closed
//! direction sectors, so every claim about cones becomes a sector membership
//! question decided by integer cross products.

use std::cmp::Ordering;
use std::fmt;

use num::bigint::BigInt;
use num::Integer;
use num::traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::rational::Rational;
use crate::rect::{Rect, RectSet};
use crate::Result;

/// A nonzero direction in the plane, stored as a primitive integer vector
/// (coprime coordinates, orientation preserved).
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Direction {
    dx: BigInt,
    dy: BigInt,
}

impl Direction {
    pub fn new(dx: BigInt, dy: BigInt) -> Result<Self> {
        if dx.is_zero() && dy.is_zero() {
            return Err(Error::ZeroDirection);
        }
        let g = dx.gcd(&dy);
        Ok(Direction {
            dx: dx / &g,
            dy: dy / g,
        })
    }

    pub fn from_ints(dx: i64, dy: i64) -> Result<Self> {
        Self::new(BigInt::from(dx), BigInt::from(dy))
    }

    /// Direction of the point `(x, y)` seen from the origin.
    pub fn from_point(x: &Rational, y: &Rational) -> Result<Self> {
        // clear denominators: (a/b, c/d) -> (a·d, c·b)
        Self::new(x.numer() * y.denom(), y.numer() * x.denom())
    }

    /// Direction of the line `y = m·x`, oriented towards positive x.
    pub fn from_slope(m: &Rational) -> Self {
        Direction::new(m.denom().clone(), m.numer().clone()).expect("denominator positive")
    }

    pub fn vertical() -> Self {
        Direction::from_ints(0, 1).unwrap()
    }

    pub fn antipode(&self) -> Self {
        Direction {
            dx: -&self.dx,
            dy: -&self.dy,
        }
    }

    pub fn dx(&self) -> &BigInt {
        &self.dx
    }

    pub fn dy(&self) -> &BigInt {
        &self.dy
    }

    pub fn cross(&self, other: &Direction) -> BigInt {
        &self.dx * &other.dy - &self.dy * &other.dx
    }

    pub fn dot(&self, other: &Direction) -> BigInt {
        &self.dx * &other.dx + &self.dy * &other.dy
    }

    /// Slope `dy/dx`; `None` for vertical directions.
    pub fn slope(&self) -> Option<Rational> {
        if self.dx.is_zero() {
            None
        } else {
            Some(Rational::from_bigints(self.dy.clone(), self.dx.clone()).expect("dx nonzero"))
        }
    }

    /// Angular class relative to the reference direction (1, 0):
    /// 0 for angles in [0, π), 1 for [π, 2π).
    fn half(&self) -> u8 {
        if self.dy.is_positive() || (self.dy.is_zero() && self.dx.is_positive()) {
            0
        } else {
            1
        }
    }

    /// Total circular order of directions starting at angle 0.
    pub fn angle_cmp(&self, other: &Direction) -> Ordering {
        match self.half().cmp(&other.half()) {
            Ordering::Equal => {
                let c = self.cross(other);
                if c.is_positive() {
                    Ordering::Less
                } else if c.is_negative() {
                    Ordering::Greater
                } else {
                    Ordering::Equal
                }
            }
            ord => ord,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.dx, self.dy)
    }
}

impl Serialize for Direction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        (self.dx.to_string(), self.dy.to_string()).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Direction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let (dx, dy): (String, String) = Deserialize::deserialize(deserializer)?;
        let dx: BigInt = dx.parse().map_err(D::Error::custom)?;
        let dy: BigInt = dy.parse().map_err(D::Error::custom)?;
        Direction::new(dx, dy).map_err(D::Error::custom)
    }
}

/// Angular position class of `d` measured counterclockwise from `f`:
/// 0 coincident, 1 in (0, π), 2 antipodal, 3 in (π, 2π).
fn pos_class(f: &Direction, d: &Direction) -> u8 {
    let c = f.cross(d);
    if c.is_positive() {
        1
    } else if c.is_negative() {
        3
    } else if f.dot(d).is_positive() {
        0
    } else {
        2
    }
}

/// Orders `a` and `b` by their counterclockwise angle from `f`.
fn cmp_from(f: &Direction, a: &Direction, b: &Direction) -> Ordering {
    let (ca, cb) = (pos_class(f, a), pos_class(f, b));
    match ca.cmp(&cb) {
        Ordering::Equal if ca == 1 || ca == 3 => {
            let c = a.cross(b);
            if c.is_positive() {
                Ordering::Less
            } else if c.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        }
        ord => ord,
    }
}

/// Membership of `d` in the open arc swept counterclockwise from `a` to `b`
/// (any extent below a full turn).
fn in_open_arc(a: &Direction, b: &Direction, d: &Direction) -> bool {
    pos_class(a, d) != 0 && cmp_from(a, d, b) == Ordering::Less
}

/// A closed sector of directions swept counterclockwise from `from` to `to`,
/// subtending less than a half-turn. Membership is decided by two cross
/// products (plus a dot product in the degenerate single-ray case).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Sector {
    pub from: Direction,
    pub to: Direction,
}

impl Sector {
    pub fn new(from: Direction, to: Direction) -> Result<Self> {
        if pos_class(&from, &to) >= 2 {
            return Err(Error::SectorTooWide);
        }
        Ok(Sector { from, to })
    }

    pub fn contains(&self, d: &Direction) -> bool {
        let c1 = self.from.cross(d);
        let c2 = d.cross(&self.to);
        if c1.is_negative() || c2.is_negative() {
            return false;
        }
        if self.from.cross(&self.to).is_zero() {
            // degenerate single ray: exclude the antipode
            self.from.dot(d).is_positive()
        } else {
            true
        }
    }

    /// Does this closed sector meet the open sector `(u, v)` (swept
    /// counterclockwise, subtending less than a half-turn)?
    pub fn intersects_open(&self, u: &Direction, v: &Direction) -> bool {
        in_open_arc(u, v, &self.from)
            || in_open_arc(u, v, &self.to)
            || (self.contains(u) && self.contains(v))
    }

    fn is_degenerate(&self) -> bool {
        self.from.cross(&self.to).is_zero()
    }
}

/// The closed sector of directions whose rays meet the rectangle: the angular
/// hull of the four corner directions. Errors if the origin lies in the
/// rectangle (the cone over it would be the full plane).
pub fn rect_sector(r: &Rect) -> Result<Sector> {
    if r.contains_origin() {
        return Err(Error::OriginInRect(r.describe()));
    }
    let corners: Vec<Direction> = r
        .corners()
        .iter()
        .map(|(x, y)| Direction::from_point(x, y))
        .collect::<Result<_>>()?;
    let from = corners
        .iter()
        .find(|f| corners.iter().all(|c| pos_class(f, c) <= 1))
        .expect("rect avoiding the origin spans less than a half-turn")
        .clone();
    let to = corners
        .iter()
        .max_by(|a, b| cmp_from(&from, a, b))
        .unwrap()
        .clone();
    Sector::new(from, to)
}

/// Canonical union of sectors: sorted by angle, overlapping or touching
/// sectors merged. A merge that would reach a half-turn is split so every
/// stored sector keeps the two-cross-product membership test.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SectorSet {
    sectors: Vec<Sector>,
}

impl SectorSet {
    pub fn empty() -> Self {
        SectorSet {
            sectors: Vec::new(),
        }
    }

    pub fn from_sectors(mut raw: Vec<Sector>) -> Self {
        raw.sort_by(|a, b| {
            a.from
                .angle_cmp(&b.from)
                .then_with(|| cmp_from(&a.from, &a.to, &b.to))
        });
        raw.dedup();
        let mut out: Vec<Sector> = Vec::new();
        let mut cur: Option<Sector> = None;
        for s in raw {
            match cur.take() {
                None => cur = Some(s),
                Some(c) => {
                    if cmp_from(&c.from, &s.from, &c.to) != Ordering::Greater {
                        // s starts inside the current arc
                        if cmp_from(&c.from, &s.to, &c.to) == Ordering::Greater {
                            if pos_class(&c.from, &s.to) >= 2 {
                                // split at the old end to stay below a half-turn
                                out.push(Sector {
                                    from: c.from,
                                    to: c.to.clone(),
                                });
                                cur = Some(Sector {
                                    from: c.to,
                                    to: s.to,
                                });
                            } else {
                                cur = Some(Sector {
                                    from: c.from,
                                    to: s.to,
                                });
                            }
                        } else {
                            cur = Some(c);
                        }
                    } else {
                        out.push(c);
                        cur = Some(s);
                    }
                }
            }
        }
        if let Some(c) = cur {
            out.push(c);
        }
        // wrap-around merge between the last and first arcs
        loop {
            if out.len() < 2 {
                break;
            }
            let last = out.last().unwrap().clone();
            let first = out[0].clone();
            if cmp_from(&last.from, &first.from, &last.to) == Ordering::Greater {
                break;
            }
            if cmp_from(&last.from, &first.to, &last.to) != Ordering::Greater {
                // first lies entirely inside last
                out.remove(0);
                continue;
            }
            if pos_class(&last.from, &first.to) < 2 {
                out.last_mut().unwrap().to = first.to;
                out.remove(0);
                continue;
            }
            // would reach a half-turn: trim the overlap so the arcs touch
            out[0] = Sector {
                from: last.to,
                to: first.to,
            };
            break;
        }
        SectorSet { sectors: out }
    }

    pub fn sectors(&self) -> &[Sector] {
        &self.sectors
    }

    pub fn is_empty(&self) -> bool {
        self.sectors.is_empty()
    }

    pub fn union(&self, other: &SectorSet) -> SectorSet {
        let mut raw = self.sectors.clone();
        raw.extend(other.sectors.iter().cloned());
        SectorSet::from_sectors(raw)
    }

    pub fn contains(&self, d: &Direction) -> bool {
        self.sectors.iter().any(|s| s.contains(d))
    }

    /// For a direction outside the set: the pair of neighboring sector
    /// boundaries bracketing it (the open gap it sits in).
    pub fn gap_containing(&self, d: &Direction) -> Option<(Direction, Direction)> {
        if self.contains(d) {
            return None;
        }
        let n = self.sectors.len();
        if n == 0 {
            return None;
        }
        for i in 0..n {
            let a = &self.sectors[i].to;
            let b = &self.sectors[(i + 1) % n].from;
            if n == 1 && self.sectors[0].is_degenerate() {
                // single ray: everything else is the gap
                return Some((a.clone(), b.clone()));
            }
            if in_open_arc(a, b, d) {
                return Some((a.clone(), b.clone()));
            }
        }
        None
    }
}

/// Canonical union of the sectors of all components. Errors with the
/// offending component if the origin lies in one (full-plane cone), flagged
/// rather than silently merged.
pub fn cone_sectors(k: &RectSet) -> Result<SectorSet> {
    let mut raw = Vec::with_capacity(k.len());
    for r in k.parts() {
        raw.push(rect_sector(r)?);
    }
    Ok(SectorSet::from_sectors(raw))
}
