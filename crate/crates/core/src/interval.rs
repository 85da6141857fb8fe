//! Normalized one-dimensional interval-set algebra: Minkowski sums,
//! difference sets and the exact Hausdorff distance.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::rational::Rational;
use crate::Result;

/// A closed interval `[lo, hi]`; a point interval `lo == hi` is permitted.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Interval(pub Rational, pub Rational);

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInterval {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Ok(Interval(lo, hi))
    }

    pub fn point(p: Rational) -> Self {
        Interval(p.clone(), p)
    }

    pub fn lo(&self) -> &Rational {
        &self.0
    }

    pub fn hi(&self) -> &Rational {
        &self.1
    }

    pub fn length(&self) -> Rational {
        &self.1 - &self.0
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.0 <= *x && *x <= self.1
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.0 <= other.0 && other.1 <= self.1
    }

    pub fn midpoint(&self) -> Rational {
        (&self.0 + &self.1).half()
    }

    /// Distance from a point to this interval (0 inside).
    pub fn distance_to(&self, x: &Rational) -> Rational {
        if *x < self.0 {
            &self.0 - x
        } else if *x > self.1 {
            x - &self.1
        } else {
            Rational::zero()
        }
    }
}

/// A finite union of disjoint closed intervals, sorted by `lo` with a strict
/// gap between consecutive parts; the parts are exactly the connected
/// components of the union.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntervalSet {
    parts: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet { parts: Vec::new() }
    }

    /// Merges overlapping or touching intervals; closed intervals touching at
    /// a point form one component.
    pub fn normalize(raw: Vec<Interval>) -> Self {
        let mut raw = raw;
        raw.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
        let mut parts: Vec<Interval> = Vec::with_capacity(raw.len());
        for iv in raw {
            match parts.last_mut() {
                Some(last) if iv.0 <= last.1 => {
                    if iv.1 > last.1 {
                        last.1 = iv.1;
                    }
                }
                _ => parts.push(iv),
            }
        }
        IntervalSet { parts }
    }

    pub fn from_endpoints(pairs: &[(&str, &str)]) -> Result<Self> {
        let mut raw = Vec::with_capacity(pairs.len());
        for (lo, hi) in pairs {
            raw.push(Interval::new(lo.parse()?, hi.parse()?)?);
        }
        Ok(Self::normalize(raw))
    }

    pub fn singleton(lo: Rational, hi: Rational) -> Result<Self> {
        Ok(IntervalSet {
            parts: vec![Interval::new(lo, hi)?],
        })
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn contains_point(&self, x: &Rational) -> bool {
        // binary search on the sorted parts
        let idx = self.parts.partition_point(|iv| iv.1 < *x);
        self.parts.get(idx).is_some_and(|iv| iv.contains(x))
    }

    /// The component containing `x`, if any.
    pub fn component_containing(&self, x: &Rational) -> Option<&Interval> {
        let idx = self.parts.partition_point(|iv| iv.1 < *x);
        self.parts.get(idx).filter(|iv| iv.contains(x))
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        let mut raw = self.parts.clone();
        raw.extend(other.parts.iter().cloned());
        IntervalSet::normalize(raw)
    }

    pub fn intersection(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        let (mut i, mut j) = (0usize, 0usize);
        while i < self.parts.len() && j < other.parts.len() {
            let a = &self.parts[i];
            let b = &other.parts[j];
            let lo = a.0.clone().max(b.0.clone());
            let hi = a.1.clone().min(b.1.clone());
            if lo <= hi {
                out.push(Interval(lo, hi));
            }
            if a.1 <= b.1 {
                i += 1;
            } else {
                j += 1;
            }
        }
        // pieces of distinct parts stay disjoint, already normalized
        IntervalSet { parts: out }
    }

    /// Exact inclusion test `self ⊆ other`. Each part of `self` is connected,
    /// so it must lie inside a single part of `other`.
    pub fn is_subset_of(&self, other: &IntervalSet) -> bool {
        self.parts.iter().all(|iv| {
            other
                .component_containing(&iv.0)
                .is_some_and(|c| c.contains_interval(iv))
        })
    }

    /// `{scale·x + shift : x ∈ self}`; for `scale == 0` the single point
    /// `{shift}` when nonempty.
    pub fn affine(&self, scale: &Rational, shift: &Rational) -> IntervalSet {
        if self.is_empty() {
            return IntervalSet::empty();
        }
        if scale.is_zero() {
            return IntervalSet {
                parts: vec![Interval::point(shift.clone())],
            };
        }
        let map = |iv: &Interval| {
            let a = scale * &iv.0 + shift;
            let b = scale * &iv.1 + shift;
            if a <= b {
                Interval(a, b)
            } else {
                Interval(b, a)
            }
        };
        let mut parts: Vec<Interval> = self.parts.iter().map(map).collect();
        if scale.is_negative() {
            parts.reverse();
        }
        IntervalSet { parts }
    }

    pub fn negate(&self) -> IntervalSet {
        self.affine(&-Rational::one(), &Rational::zero())
    }

    /// Pairwise interval sums `[a.lo+b.lo, a.hi+b.hi]`, normalized.
    /// Empty input gives empty output.
    pub fn minkowski_sum(&self, other: &IntervalSet) -> IntervalSet {
        let mut raw = Vec::with_capacity(self.parts.len() * other.parts.len());
        for a in &self.parts {
            for b in &other.parts {
                raw.push(Interval(&a.0 + &b.0, &a.1 + &b.1));
            }
        }
        IntervalSet::normalize(raw)
    }

    /// `diff(S) = {x − y : x, y ∈ S} = S ⊕ (−S)`; symmetric about 0 and
    /// contains 0 whenever `S` is nonempty.
    pub fn diff_set(&self) -> IntervalSet {
        self.minkowski_sum(&self.negate())
    }

    /// Gaps between consecutive parts, as open-interval endpoints.
    pub fn gaps(&self) -> Vec<Interval> {
        self.parts
            .windows(2)
            .map(|w| Interval(w[0].1.clone(), w[1].0.clone()))
            .collect()
    }

    pub fn min_gap(&self) -> Option<Rational> {
        self.gaps().iter().map(|g| g.length()).min()
    }

    /// Distance from a point to the set; `None` when empty.
    pub fn distance_to_point(&self, x: &Rational) -> Option<Rational> {
        if self.is_empty() {
            return None;
        }
        let idx = self.parts.partition_point(|iv| iv.1 < *x);
        let mut best: Option<Rational> = None;
        for iv in self.parts[idx.saturating_sub(1)..(idx + 1).min(self.parts.len())].iter() {
            let d = iv.distance_to(x);
            best = Some(match best {
                Some(b) => b.min(d),
                None => d,
            });
        }
        best
    }

    /// Directed Hausdorff distance `sup_{a ∈ self} d(a, other)`.
    ///
    /// The supremum is attained at an endpoint of a part of `self` or at a
    /// gap midpoint of `other` lying inside `self`, so a finite candidate
    /// scan is exact.
    fn directed_hausdorff(&self, other: &IntervalSet) -> Rational {
        let mut candidates: Vec<Rational> = Vec::new();
        for iv in &self.parts {
            candidates.push(iv.0.clone());
            candidates.push(iv.1.clone());
        }
        for gap in other.gaps() {
            let mid = gap.midpoint();
            if self.contains_point(&mid) {
                candidates.push(mid);
            }
        }
        candidates
            .into_iter()
            .map(|x| other.distance_to_point(&x).expect("nonempty"))
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Exact Hausdorff distance between two nonempty sets.
    pub fn hausdorff_distance(&self, other: &IntervalSet) -> Result<Rational> {
        if self.is_empty() {
            return Err(Error::EmptySet("left"));
        }
        if other.is_empty() {
            return Err(Error::EmptySet("right"));
        }
        Ok(self
            .directed_hausdorff(other)
            .max(other.directed_hausdorff(self)))
    }

    pub fn bounds(&self) -> Option<(Rational, Rational)> {
        let first = self.parts.first()?;
        let last = self.parts.last()?;
        Some((first.0.clone(), last.1.clone()))
    }
}
