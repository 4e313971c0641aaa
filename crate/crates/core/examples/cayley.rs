//! Unimodular simplices covering conv(F, rF) for the standard triangle, and lozenges of rF.

use polycover::analysis::normalized_volume;
use polycover::covering::{cayley_cover, lozenge_containing};
use polycover::geometry::convex_hull3;
use polycover::lattice::{LatticePoint, RationalPoint};

fn p(x: i64, y: i64, z: i64) -> LatticePoint {
    LatticePoint::new(x, y, z)
}

fn main() -> polycover::Result<()> {
    let f = [p(0, 0, 0), p(1, 0, 0), p(0, 1, 0)];
    for r in 1..=4 {
        let fp = [p(0, 0, 1), p(r, 0, 1), p(0, r, 1)];
        let pieces = cayley_cover(&f, &fp, r as usize, 0)?;
        let host = convex_hull3(&[f.to_vec(), fp.to_vec()].concat())?;
        println!("r = {r}: {} simplices, normalized volume {}", pieces.len(), normalized_volume(&host));
    }
    let fp = [p(0, 0, 1), p(2, 0, 1), p(0, 2, 1)];
    for x in [[(3, 2), (1, 4), (1, 1)], [(1, 2), (1, 2), (1, 1)], [(2, 1), (0, 1), (1, 1)]] {
        let x = RationalPoint::from_fractions(x);
        let l = lozenge_containing(&fp, 2, &x)?;
        println!("lozenge for {x}: {:?}", l.corners().iter().map(ToString::to_string).collect::<Vec<_>>());
    }
    Ok(())
}
