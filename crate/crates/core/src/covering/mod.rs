//! Covers of centrally symmetric smooth 3-polytopes by lattice parallelepipeds and
//! unimodular simplices.

mod cayley;
mod cover;
mod piece;
mod push;
mod square;
mod triangulate;
mod verify;

pub use cayley::{cayley_cover, lozenge_containing, CayleyCover, Cell, TriangleGrid};
pub use cover::{cover_point, cover_polytope, is_unimodular_triangle_facet, require_cs_smooth};
pub use piece::{
    CoverPiece, CoveringCertificate, Parallelepiped, PieceShape, PieceTest, Provenance, Simplex, UnitSquare,
};
pub use push::{facet_dilation_ratio, push_facet, DilationRatio, PushedFacet};
pub use square::{extend_triangle_to_square, square_to_cs_parallelepiped};
pub use triangulate::{full_triangulation2, locate_triangle, twice_area, Triangle2};
pub use verify::{decompose_via_cover, verify_cover, CoverIndex, CoverReport};
