use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid rational `{0}`")]
    ParseRational(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("invalid interval: lo {lo} > hi {hi}")]
    InvalidInterval { lo: String, hi: String },
    #[error("epsilon {0} outside the admissible range (0, 7)")]
    InvalidEpsilon(String),
    #[error("depth must be at least {min}, got {got}")]
    DepthTooSmall { min: u32, got: u32 },
    #[error("undefined distance: {0} set is empty")]
    EmptySet(&'static str),
    #[error("sector is full plane: origin lies in the rectangle {0}")]
    OriginInRect(String),
    #[error("overlapping rectangles {0} and {1}")]
    OverlappingRects(String, String),
    #[error("blow-up center {center} not in the set; nearest component is {nearest}")]
    CenterNotInSet { center: String, nearest: String },
    #[error("unsupported branch count {0}; expected 2, 4 or 8")]
    UnsupportedBranches(u32),
    #[error("invalid slope band: need 0 < lo < hi")]
    InvalidBand,
    #[error("zero direction vector")]
    ZeroDirection,
    #[error("sector subtends a half-turn or more")]
    SectorTooWide,
    #[error("scale must be positive, got {0}")]
    NonPositiveScale(String),
}
