//! Exact rational geometry for Cantor-type difference sets and planar cones.
//!
//! Everything except the floating evaluation of dimension formulas is computed
//! in arbitrary-precision rational arithmetic, so every set equality, inclusion
//! and sector membership decided here is exact rather than sampled.

pub mod blowup;
pub mod certificate;
pub mod claims;
pub mod construction;
pub mod dimension;
pub mod error;
pub mod interval;
pub mod rational;
pub mod rect;
pub mod sector;
pub mod svg;

pub use certificate::{Certificate, Verdict};
pub use construction::ConstructionParams;
pub use error::Error;
pub use interval::{Interval, IntervalSet};
pub use rational::Rational;
pub use rect::{Rect, RectSet};
pub use sector::{Direction, Sector, SectorSet};

pub type Result<T> = std::result::Result<T, Error>;
