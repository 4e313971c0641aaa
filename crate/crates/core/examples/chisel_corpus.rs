//! Antipodal chiseling and the seeded random corpus.

use num_bigint::BigInt;
use polycover::covering::{cover_polytope, verify_cover};
use polycover::generators::{chisel, corpus, cube, eligible_chisel_vertices, ChiselSpec};
use polycover::lattice::LatticePoint;

fn main() -> polycover::Result<()> {
    let c = cube(3)?;
    println!("cube(3) chisel candidates: {}", eligible_chisel_vertices(&c).len());
    let q = chisel(&c, &ChiselSpec::antipodal(LatticePoint::new(3, 3, 3)))?;
    println!("after one pair: {} vertices, {} facets", q.vertices().len(), q.facets().len());
    let deep = ChiselSpec {
        vertex: LatticePoint::new(3, -3, 3),
        depth: BigInt::from(2),
        antipodal: true,
    };
    let d = chisel(&q, &deep)?;
    println!(
        "depth 2 at (3,-3,3): smooth {}",
        polycover::analysis::check_smooth(&d).is_smooth
    );

    for (name, p) in corpus() {
        let cert = cover_polytope(&p)?;
        let ok = verify_cover(&cert, 2)?.passed();
        println!("{name}: {} facets, {} pieces, verified {ok}", p.facets().len(), cert.pieces.len());
    }
    Ok(())
}
