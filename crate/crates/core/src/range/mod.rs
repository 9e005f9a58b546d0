//! Higher-rank numerical ranges.

mod geometry;
mod rank_k;

pub use geometry::{clip, convex_hull, region_distance, ConvexRegion, HalfPlane, RegionKind};
pub use rank_k::{rank_k_analytic, rank_k_numeric, ELLIPSE_VERTICES};
