use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::analysis::{check_centrally_symmetric, check_smooth};
use crate::covering::cayley::CayleyCover;
use crate::covering::piece::{CoverPiece, CoveringCertificate, PieceShape, Provenance};
use crate::covering::push::facet_dilation_ratio;
use crate::covering::square::{extend_triangle_to_square, square_to_cs_parallelepiped};
use crate::covering::triangulate::{full_triangulation2, locate_triangle, Triangle2};
use crate::error::{Error, Result};
use crate::geometry::{facet_polygon, EmbeddedPolygon, Polytope3};
use crate::lattice::{qi, RationalPoint};

/// Fails unless `p` is smooth and satisfies `P = −P`.
pub fn require_cs_smooth(p: &Polytope3) -> Result<()> {
    let sm = check_smooth(p);
    if !sm.is_smooth {
        let v: Vec<String> = sm.offending_vertices.iter().map(|o| o.vertex.to_string()).collect();
        return Err(Error::NotSmooth(format!("offending vertices {}", v.join(", "))));
    }
    if !check_centrally_symmetric(p).origin_centered {
        return Err(Error::NotCentrallySymmetric);
    }
    Ok(())
}

pub fn is_unimodular_triangle_facet(p: &Polytope3, fi: usize) -> bool {
    let v = p.facet_vertices(fi);
    v.len() == 3 && (&v[1] - &v[0]).cross(&(&v[2] - &v[0])).content().is_one()
}

/// Per-facet data of the construction, built for the representative `F` of `{F, −F}`.
#[allow(clippy::large_enum_variant)]
enum FacetPlan {
    Squares {
        polygon: EmbeddedPolygon,
        triangles: Vec<Triangle2>,
    },
    Cayley(CayleyCover),
}

fn plan(p: &Polytope3, fi: usize) -> Result<FacetPlan> {
    if is_unimodular_triangle_facet(p, fi) {
        let ratio = facet_dilation_ratio(p, fi)?;
        let f = p.facet_vertices(fi);
        let f: [_; 3] = f.try_into().expect("triangle");
        let r = ratio.r.to_usize().ok_or_else(|| Error::InvalidParameter("dilation ratio too large".into()))?;
        Ok(FacetPlan::Cayley(CayleyCover::new(&f, &ratio.pushed, r)?))
    } else {
        let polygon = facet_polygon(p, fi);
        let triangles = full_triangulation2(&polygon)?;
        Ok(FacetPlan::Squares { polygon, triangles })
    }
}

fn representative(p: &Polytope3, fi: usize) -> (usize, usize) {
    let j = p.antipodal_facet(fi).expect("centrally symmetric polytopes pair their facets");
    (fi.min(j), fi.max(j))
}

/// Covers `P` facet pair by facet pair; duplicates are dropped by vertex set, keeping the
/// first occurrence.
pub fn cover_polytope(p: &Polytope3) -> Result<CoveringCertificate> {
    require_cs_smooth(p)?;
    let mut pieces = Vec::new();
    for fi in 0..p.facets().len() {
        let (rep, anti) = representative(p, fi);
        if rep != fi {
            continue;
        }
        match plan(p, fi)? {
            FacetPlan::Squares { polygon, triangles } => {
                for t in &triangles {
                    let sq = extend_triangle_to_square(&polygon, t)?;
                    let b = square_to_cs_parallelepiped(&sq)?;
                    pieces.push(CoverPiece::boxed(b, Provenance::SquareExtension, fi));
                }
            }
            FacetPlan::Cayley(cay) => {
                pieces.extend(cay.pieces(fi));
                for s in &cay.simplices {
                    pieces.push(CoverPiece::simplex(s.negate(), Provenance::CayleyPrism, anti));
                }
                for c in cay.grid.cells() {
                    let b = square_to_cs_parallelepiped(&cay.grid.lozenge(c))?;
                    pieces.push(CoverPiece::boxed(b, Provenance::PushedFacetLozenge, fi));
                }
            }
        }
    }
    let mut seen = HashSet::new();
    pieces.retain(|pc| seen.insert(pc.key()));
    if let Some(i) = pieces.iter().position(|pc| !pc.is_inside(p)) {
        return Err(Error::DegeneratePiece(format!("piece {i} leaves the polytope")));
    }
    Ok(CoveringCertificate {
        host: p.clone(),
        pieces,
    })
}

/// A single piece of the construction containing `x`, following the ray from the origin.
pub fn cover_point(p: &Polytope3, x: &RationalPoint) -> Result<CoverPiece> {
    require_cs_smooth(p)?;
    if !p.contains(x) {
        return Err(Error::OutsideDilate {
            point: x.to_string(),
            n: "1".into(),
        });
    }
    let piece = if x.is_zero() {
        let (rep, _) = representative(p, 0);
        piece_on_facet(p, rep, x, &x.clone())?
    } else {
        let exit = p.ray_exit(x)?;
        let k = exit.facets[0];
        let (rep, _) = representative(p, k);
        if rep == k {
            piece_on_facet(p, k, x, &exit.point)?
        } else {
            let piece = piece_on_facet(p, rep, &-x, &-&exit.point)?;
            match piece.shape {
                PieceShape::Simplex(s) => CoverPiece::simplex(s.negate(), piece.provenance, k),
                PieceShape::Box(_) => piece,
            }
        }
    };
    if !piece.contains(x) || !piece.is_inside(p) {
        return Err(Error::Uncovered(x.to_string()));
    }
    Ok(piece)
}

/// The piece for a point `y` whose ray leaves through facet `fi` at `exit`.
fn piece_on_facet(p: &Polytope3, fi: usize, y: &RationalPoint, exit: &RationalPoint) -> Result<CoverPiece> {
    match plan(p, fi)? {
        FacetPlan::Squares { polygon, triangles } => {
            let t = if y.is_zero() {
                0
            } else {
                locate_triangle(&triangles, &polygon.chart.coords(exit)).ok_or_else(|| Error::Uncovered(exit.to_string()))?
            };
            let sq = extend_triangle_to_square(&polygon, &triangles[t])?;
            Ok(CoverPiece::boxed(square_to_cs_parallelepiped(&sq)?, Provenance::SquareExtension, fi))
        }
        FacetPlan::Cayley(cay) => {
            let f = &p.facets()[fi];
            let top = qi(&(&f.offset + BigInt::one()));
            let ay = f.normal.eval_rational(y);
            if !y.is_zero() && ay <= top {
                let i = cay.locate(y).ok_or_else(|| Error::Uncovered(y.to_string()))?;
                return Ok(CoverPiece::simplex(cay.simplices[i].clone(), Provenance::CayleyPrism, fi));
            }
            let pushed = if y.is_zero() {
                cay.grid.g0.to_rational()
            } else {
                y.scale(&(top / ay))
            };
            let (a, b) = cay.grid.coords(&pushed);
            let c = cay.grid.locate(&a, &b).ok_or_else(|| Error::Uncovered(pushed.to_string()))?;
            let bx = square_to_cs_parallelepiped(&cay.grid.lozenge(c))?;
            Ok(CoverPiece::boxed(bx, Provenance::PushedFacetLozenge, fi))
        }
    }
}
