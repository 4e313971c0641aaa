//! Write every lattice point of 2P as a sum of two lattice points of P using a cover.

use num_bigint::BigInt;
use polycover::covering::{cover_polytope, CoverIndex};
use polycover::generators::{chisel, cube, ChiselSpec};
use polycover::lattice::LatticePoint;

fn main() -> polycover::Result<()> {
    let p = chisel(&cube(2)?, &ChiselSpec::antipodal(LatticePoint::new(2, 2, 2)))?;
    let cert = cover_polytope(&p)?;
    let mut idx = CoverIndex::new(&cert);
    let targets = p.dilate(&BigInt::from(2)).lattice_points();
    for t in &targets {
        let w = idx.decompose(t, 2)?;
        assert_eq!(&w.sum(), t);
    }
    println!("decomposed all {} points of 2P", targets.len());
    for t in [LatticePoint::new(4, 3, 1), LatticePoint::new(-1, 4, 0), LatticePoint::new(1, 1, 1)] {
        let w = idx.decompose(&t, 2)?;
        println!("{t} = {} + {}", w.parts[0], w.parts[1]);
    }
    Ok(())
}
