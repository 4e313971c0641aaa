//! Hull of a point cloud, its slices along a direction and their normal fans.

use num_bigint::BigInt;
use num_rational::BigRational;
use polycover::geometry::convex_hull3;
use polycover::lattice::{LatticePoint, LinearForm};

fn main() -> polycover::Result<()> {
    let mut pts = Vec::new();
    for (x, y, z) in [(0, 0, 0), (3, 0, 0), (0, 3, 0), (0, 0, 3), (1, 1, 1), (3, 3, 3), (2, 1, 0)] {
        pts.push(LatticePoint::new(x, y, z));
    }
    let p = convex_hull3(&pts)?;
    println!("{} vertices, {} edges, {} facets", p.vertices().len(), p.edges().len(), p.facets().len());
    for f in p.facets() {
        println!("  {} · x >= {}  ({} vertices)", f.normal.coeffs(), f.offset, f.vertices.len());
    }
    println!("{} lattice points", p.lattice_points().len());

    let a = LinearForm::new(LatticePoint::new(1, 1, 1));
    let sv = p.special_values(&a);
    println!("special values of x+y+z: {sv:?}");
    for (num, den) in [(1, 2), (3, 2), (4, 1), (9, 2)] {
        let c = BigRational::new(BigInt::from(num), BigInt::from(den));
        let s = polycover::geometry::slice(&p, &a, &c)?;
        let rays = s.normal_fan().map(|f| f.rays.len()).unwrap_or(0);
        println!("  c = {c}: {} vertices, {rays} fan rays", s.vertices.len());
    }
    Ok(())
}
