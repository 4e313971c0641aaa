use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::covering::piece::{Parallelepiped, UnitSquare};
use crate::covering::triangulate::{twice_area, Triangle2};
use crate::error::{Error, Result};
use crate::geometry::{polygon_contains, EmbeddedPolygon, Point2};
use crate::lattice::det_columns;

/// Orders the triangle as `(v1, v2, v3)`: `v1` has the shortest pair of incident edges
/// (ties by lexicographic order), the other two follow lexicographically.
fn label(t: &Triangle2) -> [Point2; 3] {
    let score = |i: usize| -> BigInt {
        let a = &t[i];
        t.iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, b)| b.sub(a).norm2())
            .sum()
    };
    let mut idx = [0usize, 1, 2];
    idx.sort_by(|&i, &j| score(i).cmp(&score(j)).then_with(|| t[i].cmp(&t[j])));
    let first = idx[0];
    let mut rest: Vec<usize> = (0..3).filter(|&i| i != first).collect();
    rest.sort_by(|&i, &j| t[i].cmp(&t[j]));
    [t[first].clone(), t[rest[0]].clone(), t[rest[1]].clone()]
}

/// Completes a unimodular triangle of `f` to a unit square inside `f`. The completions
/// `q_k = v_i + v_j − v_k` are tried for `k = 1, 2, 3`.
pub fn extend_triangle_to_square(f: &EmbeddedPolygon, t: &Triangle2) -> Result<UnitSquare> {
    if !twice_area(t).abs().is_one() {
        return Err(Error::NotUnimodular(format!("triangle {t:?}")));
    }
    if t.iter().any(|p| !polygon_contains(&f.vertices2d, &p.to_rational())) {
        return Err(Error::InvalidParameter(format!("triangle {t:?} is not contained in the polygon")));
    }
    let mut tv = t.to_vec();
    tv.sort();
    let mut fv = f.vertices2d.clone();
    fv.sort();
    if tv == fv {
        return Err(Error::InvalidParameter("the triangle is the whole polygon".into()));
    }
    let v = label(t);
    for k in 0..3 {
        let (a, b) = (&v[(k + 1) % 3], &v[(k + 2) % 3]);
        let q = a.add(b).sub(&v[k]);
        if polygon_contains(&f.vertices2d, &q.to_rational()) {
            let anchor = f.chart.to_3d(&v[k]);
            let sq = UnitSquare {
                d1: &f.chart.to_3d(a) - &anchor,
                d2: &f.chart.to_3d(b) - &anchor,
                anchor,
                host_plane: (f.chart.normal.clone(), f.level.clone()),
            };
            debug_assert!(sq.is_valid());
            return Ok(sq);
        }
    }
    Err(Error::SquareExtensionFailed(format!("{t:?}")))
}

/// `conv(D, −D)` as a parallelepiped.
pub fn square_to_cs_parallelepiped(d: &UnitSquare) -> Result<Parallelepiped> {
    if det_columns(&d.anchor, &d.d1, &d.d2).is_zero() {
        return Err(Error::DegeneratePiece(format!(
            "square at {} spans a plane through the origin",
            d.anchor
        )));
    }
    let far = &(&d.anchor + &d.d1) + &d.d2;
    let e3 = &(&d.anchor.scale(&BigInt::from(2)) + &d.d1) + &d.d2;
    let b = Parallelepiped::new(-&far, d.d1.clone(), d.d2.clone(), e3)?;
    let mut want: Vec<_> = d.corners().iter().flat_map(|c| [c.clone(), -c]).collect();
    want.sort();
    if b.vertices() != want {
        return Err(Error::DegeneratePiece(format!("conv(D, -D) for the square at {}", d.anchor)));
    }
    Ok(b)
}
