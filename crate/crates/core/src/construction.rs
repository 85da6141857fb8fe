//! The two-similitude Cantor construction and the sets derived from it.
//!
//! `A_i` keeps, inside each interval of `A_{i-1}`, the two extreme
//! subintervals of relative length `β = 1/(8−ε)`. `E_i = A_i ∪ −A_i`,
//! `F_i = diff(E_i)`, `G_i` is the origin component of `F_i × F_i`, and
//! `F̃_i` is the layer of `F_i × F_i` components between `G_{i-1}` and `G_i`.

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::certificate::{Certificate, Verdict};
use crate::error::Error;
use crate::interval::{Interval, IntervalSet};
use crate::rational::Rational;
use crate::rect::{product_rectset, Rect, RectSet};
use crate::Result;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConstructionParams {
    pub epsilon: Rational,
    pub depth: u32,
}

impl ConstructionParams {
    /// Admissible range: `0 < ε < 7`, so the similarity ratio
    /// `β = 1/(8−ε)` satisfies `0 < β < 1`.
    pub fn new(epsilon: Rational, depth: u32) -> Result<Self> {
        if !epsilon.is_positive() || epsilon >= Rational::from_int(7) {
            return Err(Error::InvalidEpsilon(epsilon.to_string()));
        }
        Ok(ConstructionParams { epsilon, depth })
    }

    pub fn with_depth(&self, depth: u32) -> Self {
        ConstructionParams {
            epsilon: self.epsilon.clone(),
            depth,
        }
    }

    /// The similarity ratio `β = 1/(8−ε)`.
    pub fn beta(&self) -> Rational {
        (Rational::from_int(8) - &self.epsilon).recip()
    }

    pub fn json(&self) -> serde_json::Value {
        json!({ "epsilon": self.epsilon, "depth": self.depth })
    }
}

/// `A_depth`: starts from `[0,1]`, keeps the two `β`-scaled extreme children
/// of every interval. Exactly `2^depth` components of length `β^depth` (for
/// `ε < 6`; larger ε makes children touch or overlap and merge).
pub fn build_a(p: &ConstructionParams) -> IntervalSet {
    let beta = p.beta();
    let mut set = IntervalSet::singleton(Rational::zero(), Rational::one()).expect("unit interval");
    for _ in 0..p.depth {
        let mut raw = Vec::with_capacity(2 * set.len());
        for iv in set.parts() {
            let child = &beta * iv.length();
            raw.push(Interval(iv.0.clone(), &iv.0 + &child));
            raw.push(Interval(&iv.1 - &child, iv.1.clone()));
        }
        set = IntervalSet::normalize(raw);
    }
    set
}

/// `E_depth = A_depth ∪ (−A_depth)`; at depth ≥ 1 the two middle children
/// merge at the origin, leaving `2^(depth+1) − 1` components.
pub fn build_e(p: &ConstructionParams) -> IntervalSet {
    let a = build_a(p);
    a.union(&a.negate())
}

/// `F_depth = diff(E_depth)`; symmetric about 0 and contained in `[−2,2]`.
pub fn build_f(p: &ConstructionParams) -> IntervalSet {
    build_e(p).diff_set()
}

/// `G_depth`: the origin component of `F_depth × F_depth`, a single square
/// (components of a product are products of components). Depth 0 yields the
/// degenerate ambient square `[−2,2]²`.
pub fn build_g(p: &ConstructionParams) -> Rect {
    let f = build_f(p);
    let c0 = f
        .component_containing(&Rational::zero())
        .expect("diff set contains 0")
        .clone();
    Rect::new(c0.clone(), c0)
}

/// Whether the depth-0 degenerate case applies (used by callers that flag it).
pub fn is_degenerate_depth(p: &ConstructionParams) -> bool {
    p.depth == 0
}

/// `F̃_depth`, computed at the component level: all components of
/// `F_1 × F_1` except `G_1`; for depth ≥ 2, the components of
/// `F_depth × F_depth` contained in `G_{depth-1}` other than `G_depth`.
pub fn build_ftilde(p: &ConstructionParams) -> Result<RectSet> {
    if p.depth == 0 {
        return Err(Error::DepthTooSmall { min: 1, got: 0 });
    }
    let f = build_f(p);
    let g = build_g(p);
    let central: IntervalSet = if p.depth == 1 {
        f
    } else {
        let prev = build_g(&p.with_depth(p.depth - 1));
        // components of F_depth inside the previous origin window
        IntervalSet::normalize(
            f.parts()
                .iter()
                .filter(|iv| prev.x.contains_interval(iv))
                .cloned()
                .collect(),
        )
    };
    let parts = product_rectset(&central, &central)
        .parts()
        .iter()
        .filter(|r| **r != g)
        .cloned()
        .collect();
    Ok(RectSet::from_parts(parts))
}

/// Certifies the homothety `F̃_{i+1} = β · F̃_i` by exact rectangle-set
/// equality for every `1 ≤ i < depth`.
pub fn verify_homothety(p: &ConstructionParams) -> Result<Certificate> {
    if p.depth < 1 {
        return Err(Error::DepthTooSmall { min: 1, got: p.depth });
    }
    let beta = p.beta();
    let mut prev = build_ftilde(&p.with_depth(1))?;
    for i in 1..p.depth {
        let next = build_ftilde(&p.with_depth(i + 1))?;
        let scaled = prev.scale(&beta);
        if next != scaled {
            return Ok(Certificate::new(
                "homothety",
                p.json(),
                Verdict::Fail,
                json!({
                    "first_failing_level": i,
                    "expected": scaled,
                    "actual": next,
                }),
            ));
        }
        prev = next;
    }
    Ok(Certificate::new(
        "homothety",
        p.json(),
        Verdict::Pass,
        json!({
            "levels_checked": p.depth.saturating_sub(1),
            "ratio": beta,
            "ftilde_components": prev.len(),
        }),
    ))
}
