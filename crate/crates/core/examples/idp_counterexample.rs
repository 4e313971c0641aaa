//! The smallest failure of IDP: a lattice simplex whose double has a lattice point that is
//! not a sum of two of its lattice points.

use polycover::analysis::{decompose_exhaustive, idp_check, minkowski_pair_check};
use polycover::generators::counterexample_simplex;
use polycover::lattice::LatticePoint;

fn main() -> polycover::Result<()> {
    let s = counterexample_simplex();
    println!("lattice points: {:?}", s.lattice_points().iter().map(ToString::to_string).collect::<Vec<_>>());
    let r = idp_check(&s, 3)?;
    println!("IDP up to n={}: {}", r.checked_up_to, r.is_idp_up_to);
    if let Some((n, w)) = r.failure {
        println!("first failure at n={n}: {w}");
    }
    let (ok, w) = minkowski_pair_check(&s, &s);
    println!("P∩Z³ + P∩Z³ = 2P∩Z³: {ok}, missing {w:?}");
    match decompose_exhaustive(&s, &LatticePoint::new(1, 1, 1), 2) {
        Ok(w) => println!("unexpected witness {:?}", w.parts),
        Err(e) => println!("(1,1,1) in 2P: {e}"),
    }
    Ok(())
}
