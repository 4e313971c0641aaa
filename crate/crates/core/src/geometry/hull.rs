//! Incremental 3D convex hull with exact integer orientation predicates.
//!
//! The hull is built as a triangulated surface; coplanar triangles are then merged by
//! their primitive inward normal, and the facet planes together with the input points are
//! handed to [`Polytope3::from_planes`] which rebuilds the face lattice.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::polytope::Polytope3;
use crate::lattice::{det_columns, primitive, LatticePoint, LinearForm};

fn orient(a: &LatticePoint, b: &LatticePoint, c: &LatticePoint, p: &LatticePoint) -> BigInt {
    det_columns(&(b - a), &(c - a), &(p - a))
}

/// Affine dimension of a point set (−1 for the empty set).
pub fn affine_dimension(points: &[LatticePoint]) -> isize {
    match initial_simplex(points) {
        Ok(_) => 3,
        Err(d) => d,
    }
}

/// Indices of four affinely independent points, or the affine dimension if there are none.
fn initial_simplex(pts: &[LatticePoint]) -> std::result::Result<[usize; 4], isize> {
    if pts.is_empty() {
        return Err(-1);
    }
    let i0 = 0;
    let Some(i1) = (1..pts.len()).find(|&i| pts[i] != pts[i0]) else {
        return Err(0);
    };
    let d1 = &pts[i1] - &pts[i0];
    let Some(i2) = (1..pts.len()).find(|&i| !d1.cross(&(&pts[i] - &pts[i0])).is_zero()) else {
        return Err(1);
    };
    let Some(i3) = (1..pts.len()).find(|&i| !orient(&pts[i0], &pts[i1], &pts[i2], &pts[i]).is_zero())
    else {
        return Err(2);
    };
    Ok([i0, i1, i2, i3])
}

/// Facet planes `(a, c)` (primitive inward `a`, `a·x ≥ c`) of the convex hull of `points`.
pub(crate) fn hull_planes(points: &[LatticePoint]) -> Result<Vec<(LinearForm, BigInt)>> {
    let simplex = initial_simplex(points).map_err(|d| Error::DegenerateInput {
        dimension: d.max(0) as usize,
    })?;
    let pts = points;
    let [i0, i1, i2, i3] = simplex;
    let mut faces: Vec<Option<[usize; 3]>> = Vec::new();
    let add_oriented = |faces: &mut Vec<Option<[usize; 3]>>, f: [usize; 3], inside: usize| {
        let o = orient(&pts[f[0]], &pts[f[1]], &pts[f[2]], &pts[inside]);
        if o.is_positive() {
            faces.push(Some([f[0], f[2], f[1]]));
        } else {
            faces.push(Some(f));
        }
    };
    add_oriented(&mut faces, [i0, i1, i2], i3);
    add_oriented(&mut faces, [i0, i1, i3], i2);
    add_oriented(&mut faces, [i0, i2, i3], i1);
    add_oriented(&mut faces, [i1, i2, i3], i0);

    for (pi, p) in pts.iter().enumerate() {
        if simplex.contains(&pi) {
            continue;
        }
        let visible: Vec<usize> = faces
            .iter()
            .enumerate()
            .filter_map(|(fi, f)| {
                let f = (*f)?;
                orient(&pts[f[0]], &pts[f[1]], &pts[f[2]], p)
                    .is_positive()
                    .then_some(fi)
            })
            .collect();
        if visible.is_empty() {
            continue;
        }
        let mut directed: HashSet<(usize, usize)> = HashSet::new();
        for &fi in &visible {
            let f = faces[fi].unwrap();
            for k in 0..3 {
                directed.insert((f[k], f[(k + 1) % 3]));
            }
        }
        let mut horizon: Vec<(usize, usize)> = Vec::new();
        for &fi in &visible {
            let f = faces[fi].unwrap();
            for k in 0..3 {
                let e = (f[k], f[(k + 1) % 3]);
                if !directed.contains(&(e.1, e.0)) {
                    horizon.push(e);
                }
            }
        }
        for &fi in &visible {
            faces[fi] = None;
        }
        for (a, b) in horizon {
            faces.push(Some([a, b, pi]));
        }
    }

    let mut planes: BTreeSet<(LinearForm, BigInt)> = BTreeSet::new();
    for f in faces.into_iter().flatten() {
        let (a, b, c) = (&pts[f[0]], &pts[f[1]], &pts[f[2]]);
        // outward normal is (b-a)x(c-a); inward is its negation
        let n = (b - a).cross(&(c - a));
        let inward = primitive(&-n)?;
        let off = inward.dot(a);
        planes.insert((LinearForm(inward), off));
    }
    Ok(planes.into_iter().collect())
}

/// Convex hull of a finite set of lattice points spanning `R³`.
pub fn convex_hull3(points: &[LatticePoint]) -> Result<Polytope3> {
    let uniq: Vec<LatticePoint> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let planes = hull_planes(&uniq)?;
    Polytope3::from_planes(&uniq, planes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64, z: i64) -> LatticePoint {
        LatticePoint::new(x, y, z)
    }

    fn cube_points() -> Vec<LatticePoint> {
        let mut v = Vec::new();
        for x in [-1, 1] {
            for y in [-1, 1] {
                for z in [-1, 1] {
                    v.push(p(x, y, z));
                }
            }
        }
        v
    }

    #[test]
    fn cube_hull() {
        let c = convex_hull3(&cube_points()).unwrap();
        assert_eq!(c.vertices().len(), 8);
        assert_eq!(c.facets().len(), 6);
        assert_eq!(c.edges().len(), 12);
    }

    #[test]
    fn simplex_hull() {
        let s = convex_hull3(&[p(0, 0, 0), p(1, 0, 0), p(0, 0, 1), p(1, 2, 1)]).unwrap();
        assert_eq!(s.vertices().len(), 4);
        assert_eq!(s.facets().len(), 4);
        assert_eq!(s.edges().len(), 6);
    }

    #[test]
    fn interior_and_boundary_points_dropped() {
        let mut pts = cube_points();
        pts.push(p(0, 0, 0));
        pts.push(p(1, 0, 0));
        pts.push(p(1, 1, 0));
        pts.push(p(0, 1, 1));
        let c = convex_hull3(&pts).unwrap();
        assert_eq!(c.vertices().len(), 8);
        assert_eq!(c.facets().len(), 6);
    }

    #[test]
    fn degenerate_inputs_report_dimension() {
        assert_eq!(
            convex_hull3(&[p(0, 0, 0), p(1, 0, 0), p(0, 1, 0), p(1, 1, 0)]).unwrap_err(),
            Error::DegenerateInput { dimension: 2 }
        );
        assert_eq!(
            convex_hull3(&[p(0, 0, 0), p(2, 2, 2), p(1, 1, 1)]).unwrap_err(),
            Error::DegenerateInput { dimension: 1 }
        );
        assert_eq!(
            convex_hull3(&[p(3, 3, 3)]).unwrap_err(),
            Error::DegenerateInput { dimension: 0 }
        );
    }

    #[test]
    fn coplanar_grid_faces_are_merged() {
        // a 3x3x3 block of lattice points: lots of coplanar and collinear input
        let mut pts = Vec::new();
        for x in 0..3 {
            for y in 0..3 {
                for z in 0..3 {
                    pts.push(p(x, y, z));
                }
            }
        }
        let c = convex_hull3(&pts).unwrap();
        assert_eq!(c.vertices().len(), 8);
        assert_eq!(c.facets().len(), 6);
        assert_eq!(c.edges().len(), 12);
    }
}
