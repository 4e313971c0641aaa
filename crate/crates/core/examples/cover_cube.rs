//! Cover the cube [-1,1]³ by parallelepipeds, verify it and break it.

use polycover::covering::{cover_point, cover_polytope, verify_cover};
use polycover::generators::cube;
use polycover::lattice::RationalPoint;

fn main() -> polycover::Result<()> {
    let c = cube(1)?;
    let cert = cover_polytope(&c)?;
    println!("{} pieces", cert.pieces.len());
    for pc in &cert.pieces {
        let v = pc.vertices();
        println!("  {} facet {}: {} .. {}", pc.provenance, pc.facet, v[0], v[7]);
    }
    let rep = verify_cover(&cert, 4)?;
    println!("verified on the 1/4 grid: {}", rep.passed());

    let x = RationalPoint::from_fractions([(1, 2), (1, 2), (1, 1)]);
    let pc = cover_point(&c, &x)?;
    println!("piece for {x}: {:?}", pc.key().iter().map(ToString::to_string).collect::<Vec<_>>());

    let mut broken = cert.clone();
    broken.pieces.remove(0);
    let rep = verify_cover(&broken, 4)?;
    println!("without piece 0: passed {}, witness {:?}", rep.passed(), rep.witness().map(|w| w.to_string()));
    Ok(())
}
