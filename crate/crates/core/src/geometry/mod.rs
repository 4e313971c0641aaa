//! Exact 3D lattice polytopes, plane charts, slices and 2D normal fans.

mod fan;
mod hull;
mod polygon;
mod polytope;

pub use fan::{fan_coarsens, normal_fan2, NormalFan2};
pub use hull::{affine_dimension, convex_hull3};
pub use polygon::{
    convex_hull2, facet_polygon, is_lattice_polygon, orient2, polygon_contains, rational_polygon_contains, slice,
    Chart, EmbeddedPolygon, Point2, RationalPoint2, RationalPolygon,
};
pub(crate) use polytope::scan_box;
pub use polytope::{minkowski_sum, minkowski_sum_points, Edge, Facet, Polytope3, RayExit};
