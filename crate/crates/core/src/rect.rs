//! Axis-aligned closed rectangles and unions thereof.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::interval::{Interval, IntervalSet};
use crate::rational::Rational;

/// Closed axis-aligned rectangle; degenerate (segment or point) rectangles
/// are allowed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Rect {
    pub x: Interval,
    pub y: Interval,
}

impl Rect {
    pub fn new(x: Interval, y: Interval) -> Self {
        Rect { x, y }
    }

    pub fn from_strs(xlo: &str, xhi: &str, ylo: &str, yhi: &str) -> crate::Result<Self> {
        Ok(Rect {
            x: Interval::new(xlo.parse()?, xhi.parse()?)?,
            y: Interval::new(ylo.parse()?, yhi.parse()?)?,
        })
    }

    pub fn contains_origin(&self) -> bool {
        let zero = Rational::zero();
        self.x.contains(&zero) && self.y.contains(&zero)
    }

    pub fn contains_point(&self, px: &Rational, py: &Rational) -> bool {
        self.x.contains(px) && self.y.contains(py)
    }

    pub fn contains_rect(&self, other: &Rect) -> bool {
        self.x.contains_interval(&other.x) && self.y.contains_interval(&other.y)
    }

    /// Closed intersection test (touching counts).
    pub fn intersects(&self, other: &Rect) -> bool {
        self.x.0 <= other.x.1 && other.x.0 <= self.x.1 && self.y.0 <= other.y.1 && other.y.0 <= self.y.1
    }

    pub fn corners(&self) -> [(Rational, Rational); 4] {
        [
            (self.x.0.clone(), self.y.0.clone()),
            (self.x.1.clone(), self.y.0.clone()),
            (self.x.1.clone(), self.y.1.clone()),
            (self.x.0.clone(), self.y.1.clone()),
        ]
    }

    pub fn scale(&self, factor: &Rational) -> Rect {
        let map = |iv: &Interval| {
            let a = factor * &iv.0;
            let b = factor * &iv.1;
            if a <= b {
                Interval(a, b)
            } else {
                Interval(b, a)
            }
        };
        Rect {
            x: map(&self.x),
            y: map(&self.y),
        }
    }

    pub fn translate(&self, dx: &Rational, dy: &Rational) -> Rect {
        Rect {
            x: Interval(&self.x.0 + dx, &self.x.1 + dx),
            y: Interval(&self.y.0 + dy, &self.y.1 + dy),
        }
    }

    /// Does the line `y = m·x + q` meet this rectangle? Exact.
    pub fn hit_by_line(&self, m: &Rational, q: &Rational) -> bool {
        // values of m·x over the x-range
        let (v0, v1) = (m * &self.x.0, m * &self.x.1);
        let (vmin, vmax) = if v0 <= v1 { (v0, v1) } else { (v1, v0) };
        // line meets the rect iff the q-interval conditions hold
        q + &vmax >= self.y.0 && q + &vmin <= self.y.1
    }

    pub fn intersect(&self, other: &Rect) -> Option<Rect> {
        let xlo = self.x.0.clone().max(other.x.0.clone());
        let xhi = self.x.1.clone().min(other.x.1.clone());
        let ylo = self.y.0.clone().max(other.y.0.clone());
        let yhi = self.y.1.clone().min(other.y.1.clone());
        if xlo <= xhi && ylo <= yhi {
            Some(Rect {
                x: Interval(xlo, xhi),
                y: Interval(ylo, yhi),
            })
        } else {
            None
        }
    }

    /// Closed set difference `self ∖ other`, decomposed into at most four
    /// rectangles. Only slices with positive extent are emitted, so a
    /// rectangle entirely covered by `other` yields nothing.
    pub fn subtract(&self, other: &Rect) -> Vec<Rect> {
        if !self.intersects(other) {
            return vec![self.clone()];
        }
        let mut out = Vec::new();
        if self.x.0 < other.x.0 {
            out.push(Rect {
                x: Interval(self.x.0.clone(), other.x.0.clone()),
                y: self.y.clone(),
            });
        }
        if other.x.1 < self.x.1 {
            out.push(Rect {
                x: Interval(other.x.1.clone(), self.x.1.clone()),
                y: self.y.clone(),
            });
        }
        let mx = Interval(
            self.x.0.clone().max(other.x.0.clone()),
            self.x.1.clone().min(other.x.1.clone()),
        );
        if self.y.0 < other.y.0 {
            out.push(Rect {
                x: mx.clone(),
                y: Interval(self.y.0.clone(), other.y.0.clone()),
            });
        }
        if other.y.1 < self.y.1 {
            out.push(Rect {
                x: mx,
                y: Interval(other.y.1.clone(), self.y.1.clone()),
            });
        }
        out
    }

    pub fn describe(&self) -> String {
        format!(
            "[{},{}]x[{},{}]",
            self.x.0, self.x.1, self.y.0, self.y.1
        )
    }
}

impl Serialize for Rect {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        // [xlo, xhi, ylo, yhi]
        (&self.x.0, &self.x.1, &self.y.0, &self.y.1).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Rect {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let (xlo, xhi, ylo, yhi): (Rational, Rational, Rational, Rational) =
            Deserialize::deserialize(deserializer)?;
        if xlo > xhi || ylo > yhi {
            return Err(D::Error::custom("rectangle bounds out of order"));
        }
        Ok(Rect {
            x: Interval(xlo, xhi),
            y: Interval(ylo, yhi),
        })
    }
}

/// A finite union of pairwise disjoint rectangles which are exactly the
/// connected components of the union. Built from products of normalized
/// interval sets, so disjointness holds by construction.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RectSet {
    parts: Vec<Rect>,
}

impl RectSet {
    pub fn empty() -> Self {
        RectSet { parts: Vec::new() }
    }

    /// Canonical order: sorted by (x.lo, y.lo).
    pub fn from_parts(mut parts: Vec<Rect>) -> Self {
        parts.sort_by(|a, b| {
            a.x.0
                .cmp(&b.x.0)
                .then_with(|| a.y.0.cmp(&b.y.0))
                .then_with(|| a.x.1.cmp(&b.x.1))
                .then_with(|| a.y.1.cmp(&b.y.1))
        });
        RectSet { parts }
    }

    pub fn parts(&self) -> &[Rect] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn scale(&self, factor: &Rational) -> RectSet {
        RectSet::from_parts(self.parts.iter().map(|r| r.scale(factor)).collect())
    }

    pub fn component_containing_origin(&self) -> Option<&Rect> {
        self.parts.iter().find(|r| r.contains_origin())
    }

    /// Componentwise inclusion: every part of `self` inside some part of
    /// `other`. Valid because parts are connected components.
    pub fn is_subset_of(&self, other: &RectSet) -> bool {
        self.parts
            .iter()
            .all(|r| other.parts.iter().any(|o| o.contains_rect(r)))
    }

    pub fn union(&self, other: &RectSet) -> RectSet {
        let mut parts = self.parts.clone();
        parts.extend(other.parts.iter().cloned());
        RectSet::from_parts(parts)
    }
}

/// One rectangle per pair of components of the factors; these are exactly the
/// connected components of the product set.
pub fn product_rectset(x: &IntervalSet, y: &IntervalSet) -> RectSet {
    let mut parts = Vec::with_capacity(x.len() * y.len());
    for ix in x.parts() {
        for iy in y.parts() {
            parts.push(Rect::new(ix.clone(), iy.clone()));
        }
    }
    RectSet::from_parts(parts)
}

/// Is the closed region `target` covered by the union of `cover`? Exact, via
/// repeated rectangle subtraction.
pub fn rect_covered_by(target: &Rect, cover: &[Rect]) -> bool {
    let mut remaining = vec![target.clone()];
    for c in cover {
        if remaining.is_empty() {
            return true;
        }
        let mut next = Vec::with_capacity(remaining.len());
        for piece in &remaining {
            next.extend(piece.subtract(c));
        }
        remaining = next;
    }
    remaining.is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rect(xlo: &str, xhi: &str, ylo: &str, yhi: &str) -> Rect {
        Rect::from_strs(xlo, xhi, ylo, yhi).unwrap()
    }

    #[test]
    fn product_examples() {
        let unit = IntervalSet::from_endpoints(&[("0", "1")]).unwrap();
        let p = product_rectset(&unit, &unit);
        assert_eq!(p.parts(), &[rect("0", "1", "0", "1")]);

        let a1 = IntervalSet::from_endpoints(&[("0", "1/7"), ("6/7", "1")]).unwrap();
        let p = product_rectset(&a1, &a1);
        assert_eq!(p.len(), 4);
        for r in p.parts() {
            assert_eq!(r.x.length(), "1/7".parse().unwrap());
            assert_eq!(r.y.length(), "1/7".parse().unwrap());
        }

        let f1 = IntervalSet::from_endpoints(&[
            ("-2", "-12/7"),
            ("-8/7", "-5/7"),
            ("-2/7", "2/7"),
            ("5/7", "8/7"),
            ("12/7", "2"),
        ])
        .unwrap();
        assert_eq!(product_rectset(&f1, &f1).len(), 25);
    }

    #[test]
    fn line_hit_predicate() {
        let r = rect("1", "2", "1", "2");
        // y = x passes through the square
        assert!(r.hit_by_line(&"1".parse().unwrap(), &"0".parse().unwrap()));
        // y = x + 5 passes above
        assert!(!r.hit_by_line(&"1".parse().unwrap(), &"5".parse().unwrap()));
        // y = -x + 3 crosses the anti-diagonal
        assert!(r.hit_by_line(&"-1".parse().unwrap(), &"3".parse().unwrap()));
    }

    #[test]
    fn subtraction_cover() {
        let big = rect("0", "2", "0", "1");
        assert!(rect_covered_by(
            &big,
            &[rect("0", "1", "0", "1"), rect("1", "2", "0", "1")]
        ));
        assert!(!rect_covered_by(
            &big,
            &[rect("0", "1", "0", "1"), rect("3/2", "2", "0", "1")]
        ));
        // degenerate segment on a boundary is covered
        let seg = rect("0", "0", "0", "1");
        assert!(rect_covered_by(&seg, &[rect("0", "1", "0", "1")]));
    }

    #[test]
    fn json_encoding() {
        let r = rect("-2/7", "2/7", "5/7", "8/7");
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"["-2/7","2/7","5/7","8/7"]"#
        );
    }
}
