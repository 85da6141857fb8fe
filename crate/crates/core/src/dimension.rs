//! Box-counting dimension of the construction and its products.
//!
//! Each level replaces every piece with `N` copies scaled by `β = 1/(8−ε)`,
//! so the similarity dimension is `ln N / ln(8−ε)`, independent of depth.

use serde::Serialize;

use crate::construction::ConstructionParams;
use crate::error::Error;
use crate::rational::Rational;
use crate::Result;

/// Per-factor branch counts: 2 for the base set, 4 for the planar product,
/// 8 for the triple product.
pub const SUPPORTED_BRANCHES: [u32; 3] = [2, 4, 8];

#[derive(Clone, Debug, Serialize)]
pub struct DimensionReport {
    /// Pieces per level: 2, 4 or 8.
    pub branches: u32,
    /// Similarity ratio β as an exact rational.
    pub ratio: Rational,
    pub depth: u32,
    /// Number of boxes of side `β^depth`, as a decimal string (exact).
    pub box_count: String,
    /// `ln(branches) / ln(8−ε)`.
    pub dimension_value: f64,
    /// The dimension bound the set must clear: 1/3, 2/3 or 1.
    pub threshold: f64,
    /// Exact comparison `dimension > threshold`, decided without floats:
    /// `ln N / ln(8−ε) > log_8 N` iff `8−ε < 8` iff `ε > 0`.
    pub exceeds_threshold: bool,
}

/// Builds the report for a factor with `branches` pieces per level.
pub fn dimension_report(branches: u32, p: &ConstructionParams) -> Result<DimensionReport> {
    if !SUPPORTED_BRANCHES.contains(&branches) {
        return Err(Error::UnsupportedBranches(branches));
    }
    let base = Rational::from_int(8) - &p.epsilon;
    let dimension_value = (branches as f64).ln() / base.to_f64().ln();
    // threshold is log_8 of the branch count: 1/3, 2/3, 1
    let threshold = match branches {
        2 => 1.0 / 3.0,
        4 => 2.0 / 3.0,
        _ => 1.0,
    };
    let box_count = num::BigInt::from(branches).pow(p.depth).to_string();
    Ok(DimensionReport {
        branches,
        ratio: p.beta(),
        depth: p.depth,
        box_count,
        dimension_value,
        threshold,
        // base < 8 exactly when ε > 0, which params guarantee
        exceeds_threshold: base < Rational::from_int(8),
    })
}

/// CSV row matching the field order of the JSON encoding.
pub fn csv_header() -> &'static str {
    "branches,ratio,depth,box_count,dimension_value,threshold,exceeds_threshold"
}

pub fn csv_row(r: &DimensionReport) -> String {
    format!(
        "{},{},{},{},{:.15},{:.15},{}",
        r.branches, r.ratio, r.depth, r.box_count, r.dimension_value, r.threshold, r.exceeds_threshold
    )
}
