//! Normal fans of polygons in a plane chart.

use crate::error::{Error, Result};
use crate::geometry::polygon::{angle_cmp, primitive2, Chart, EmbeddedPolygon, Point2, RationalPoint2, RationalPolygon};

/// Primitive outer edge normals of a polygon, sorted by angle from the positive `s` axis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalFan2 {
    pub rays: Vec<Point2>,
}

impl NormalFan2 {
    pub fn from_rays(mut rays: Vec<Point2>) -> NormalFan2 {
        rays.sort_by(angle_cmp);
        rays.dedup();
        NormalFan2 { rays }
    }

    pub fn contains_ray(&self, r: &Point2) -> bool {
        self.rays.iter().any(|x| x == r)
    }
}

fn fan_of(coords: &[RationalPoint2]) -> Result<NormalFan2> {
    let n = coords.len();
    if n < 3 {
        return Err(Error::LowDimensional { vertices: n });
    }
    let rays = (0..n)
        .map(|i| {
            let e = coords[(i + 1) % n].sub(&coords[i]);
            let d = primitive2(&e);
            // outer normal of a counterclockwise edge
            Point2 { s: d.t, t: -d.s }
        })
        .collect();
    Ok(NormalFan2::from_rays(rays))
}

pub fn normal_fan2(f: &EmbeddedPolygon) -> Result<NormalFan2> {
    let c: Vec<RationalPoint2> = f.vertices2d.iter().map(Point2::to_rational).collect();
    fan_of(&c)
}

impl RationalPolygon {
    /// Normal fan in the coordinates of `chart` (a chart of a plane parallel to this one).
    pub fn normal_fan_in(&self, chart: &Chart) -> Result<NormalFan2> {
        fan_of(&self.coords_in(chart))
    }

    /// Outer normals in `chart`, also for degenerate slices: none for a point, the two
    /// normals of a segment.
    pub fn normal_rays_in(&self, chart: &Chart) -> Vec<Point2> {
        let c = self.coords_in(chart);
        match c.len() {
            0 | 1 => Vec::new(),
            2 => {
                let d = primitive2(&c[1].sub(&c[0]));
                let n = Point2 { s: d.t, t: -d.s };
                vec![n.neg(), n]
            }
            _ => fan_of(&c).map(|f| f.rays).unwrap_or_default(),
        }
    }

    pub fn normal_fan(&self) -> Result<NormalFan2> {
        self.normal_fan_in(&self.chart())
    }
}

/// Whether every ray of `coarse` is a ray of `fine`.
pub fn fan_coarsens(coarse: &NormalFan2, fine: &NormalFan2) -> bool {
    coarse.rays.iter().all(|r| fine.contains_ray(r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{convex_hull3, slice};
    use crate::lattice::{q, LatticePoint, LinearForm};
    use num_bigint::BigInt;

    fn square_fan() -> NormalFan2 {
        let chart = Chart::for_plane(&LinearForm(LatticePoint::new(0, 0, -1)), &BigInt::from(0)).unwrap();
        let pts = [Point2::new(0, 0), Point2::new(1, 0), Point2::new(1, 1), Point2::new(0, 1)];
        normal_fan2(&EmbeddedPolygon::from_chart_vertices(chart, BigInt::from(0), &pts)).unwrap()
    }

    fn triangle_fan() -> NormalFan2 {
        let chart = Chart::for_plane(&LinearForm(LatticePoint::new(0, 0, -1)), &BigInt::from(0)).unwrap();
        let pts = [Point2::new(0, 0), Point2::new(1, 0), Point2::new(0, 1)];
        normal_fan2(&EmbeddedPolygon::from_chart_vertices(chart, BigInt::from(0), &pts)).unwrap()
    }

    #[test]
    fn square_and_triangle_rays() {
        assert_eq!(
            square_fan().rays,
            vec![Point2::new(1, 0), Point2::new(0, 1), Point2::new(-1, 0), Point2::new(0, -1)]
        );
        // (1,1),(-1,0),(0,-1) is the circular order starting from angle 0
        assert_eq!(
            triangle_fan().rays,
            vec![Point2::new(1, 1), Point2::new(-1, 0), Point2::new(0, -1)]
        );
        assert!(!fan_coarsens(&square_fan(), &triangle_fan()));
        assert!(fan_coarsens(&square_fan(), &square_fan()));
    }

    #[test]
    fn cube_slices_coarsen() {
        let mut v = Vec::new();
        for x in [-1, 1] {
            for y in [-1, 1] {
                for z in [-1, 1] {
                    v.push(LatticePoint::new(x, y, z));
                }
            }
        }
        let c = convex_hull3(&v).unwrap();
        let a = LinearForm(LatticePoint::new(1, 1, 1));
        let hex = slice(&c, &a, &q(0, 1)).unwrap().normal_fan().unwrap();
        assert_eq!(hex.rays.len(), 6);
        let tri = slice(&c, &a, &q(1, 1)).unwrap().normal_fan().unwrap();
        assert_eq!(tri.rays.len(), 3);
        assert!(fan_coarsens(&tri, &hex));
        assert!(!fan_coarsens(&hex, &tri));
        let f1 = slice(&c, &a, &q(-1, 2)).unwrap().normal_fan().unwrap();
        let f2 = slice(&c, &a, &q(1, 3)).unwrap().normal_fan().unwrap();
        assert_eq!(f1, f2);
        assert_eq!(
            slice(&c, &a, &q(3, 1)).unwrap().normal_fan(),
            Err(Error::LowDimensional { vertices: 1 })
        );
    }
}
