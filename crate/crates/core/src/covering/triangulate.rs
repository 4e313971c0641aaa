//! Unimodular triangulations of lattice polygons using every lattice point.
//!
//! The triangulation is the regular one induced by lifting `(s, t)` to height
//! `s² + st + t²`. Lattice points all lie on the strictly convex paraboloid, so each of
//! them is a vertex of the lower hull and the cells contain no other lattice points; a
//! cell that is not a triangle (cocircular points) is fanned from its smallest vertex.

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::geometry::{convex_hull2, convex_hull3, polygon_contains, EmbeddedPolygon, Point2, RationalPoint2};
use crate::lattice::LatticePoint;

pub type Triangle2 = [Point2; 3];

fn lift(p: &Point2) -> LatticePoint {
    let h = &p.s * &p.s + &p.s * &p.t + &p.t * &p.t;
    LatticePoint::new(p.s.clone(), p.t.clone(), h)
}

fn fan(cell: &[Point2], out: &mut Vec<Triangle2>) {
    let rq: Vec<RationalPoint2> = cell.iter().map(Point2::to_rational).collect();
    let order = convex_hull2(&rq);
    for w in 1..order.len() - 1 {
        out.push([cell[order[0]].clone(), cell[order[w]].clone(), cell[order[w + 1]].clone()]);
    }
}

/// Triangles are counterclockwise, start at their smallest vertex, and are sorted.
pub fn full_triangulation2(f: &EmbeddedPolygon) -> Result<Vec<Triangle2>> {
    if !f.is_two_dimensional() {
        return Err(Error::LowDimensional {
            vertices: f.vertices2d.len(),
        });
    }
    let pts = f.lattice_points();
    let mut out = Vec::new();
    if pts.len() == 3 {
        fan(&pts, &mut out);
        return Ok(out);
    }
    let lifted: Vec<LatticePoint> = pts.iter().map(lift).collect();
    match convex_hull3(&lifted) {
        Ok(h) => {
            for facet in h.facets() {
                if !facet.normal.coeffs().z.is_positive() {
                    continue;
                }
                let cell: Vec<Point2> = facet
                    .vertices
                    .iter()
                    .map(|&i| {
                        let v = h.vertex(i);
                        Point2 {
                            s: v.x.clone(),
                            t: v.y.clone(),
                        }
                    })
                    .collect();
                fan(&cell, &mut out);
            }
        }
        Err(_) => fan(&pts, &mut out),
    }
    out.sort();
    debug_assert!(out.iter().all(|t| t[1].sub(&t[0]).cross(&t[2].sub(&t[0])).is_one()));
    Ok(out)
}

/// Twice the signed area of a chart triangle.
pub fn twice_area(t: &Triangle2) -> num_bigint::BigInt {
    t[1].sub(&t[0]).cross(&t[2].sub(&t[0]))
}

/// First triangle of `tris` containing `p`.
pub fn locate_triangle(tris: &[Triangle2], p: &RationalPoint2) -> Option<usize> {
    tris.iter().position(|t| polygon_contains(t, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Chart;
    use crate::lattice::LinearForm;
    use num_bigint::BigInt;
    use num_traits::Zero;

    fn poly(pts: &[(i64, i64)]) -> EmbeddedPolygon {
        let chart = Chart::for_plane(&LinearForm(LatticePoint::new(0, 0, -1)), &BigInt::zero()).unwrap();
        let p: Vec<Point2> = pts.iter().map(|&(s, t)| Point2::new(s, t)).collect();
        EmbeddedPolygon::from_chart_vertices(chart, BigInt::zero(), &p)
    }

    fn check(f: &EmbeddedPolygon, expected: usize) {
        let tris = full_triangulation2(f).unwrap();
        assert_eq!(tris.len(), expected);
        for t in &tris {
            assert_eq!(twice_area(t), BigInt::one());
        }
        // every lattice point is a vertex; total area matches
        let mut used: Vec<Point2> = tris.iter().flat_map(|t| t.iter().cloned()).collect();
        used.sort();
        used.dedup();
        assert_eq!(used, f.lattice_points());
        assert_eq!(BigInt::from(tris.len()), f.twice_area());
    }

    #[test]
    fn examples() {
        check(&poly(&[(0, 0), (1, 0), (1, 1), (0, 1)]), 2);
        check(&poly(&[(0, 0), (2, 0), (2, 2), (0, 2)]), 8);
        let t = poly(&[(0, 0), (1, 0), (0, 1)]);
        check(&t, 1);
        assert_eq!(full_triangulation2(&t).unwrap()[0], [Point2::new(0, 0), Point2::new(1, 0), Point2::new(0, 1)]);
    }

    #[test]
    fn grid_triangles_stay_in_unit_cells() {
        for t in full_triangulation2(&poly(&[(0, 0), (2, 0), (2, 2), (0, 2)])).unwrap() {
            let s_span = t.iter().map(|p| &p.s).max().unwrap() - t.iter().map(|p| &p.s).min().unwrap();
            let t_span = t.iter().map(|p| &p.t).max().unwrap() - t.iter().map(|p| &p.t).min().unwrap();
            assert!(s_span.is_one() && t_span.is_one());
        }
    }

    #[test]
    fn odd_shapes() {
        check(&poly(&[(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)]), 6);
        check(&poly(&[(0, 0), (3, 0), (0, 3)]), 9);
        check(&poly(&[(0, 0), (4, 1), (1, 2)]), 7);
        // the four corners share one lifted height, the origin sits on an edge
        check(&poly(&[(1, 0), (0, 1), (-1, 1), (1, -1)]), 3);
    }
}
