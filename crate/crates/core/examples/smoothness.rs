//! Smoothness and central symmetry reports, plus vertex parallelepipeds.

use polycover::analysis::{check_centrally_symmetric, check_smooth, vertex_parallelepiped_empty};
use polycover::generators::{counterexample_simplex, cube};
use polycover::geometry::Polytope3;

fn report(name: &str, p: &Polytope3) -> polycover::Result<()> {
    let sm = check_smooth(p);
    let cs = check_centrally_symmetric(p);
    println!("{name}: simple {}, smooth {}, P = -P {}", sm.is_simple, sm.is_smooth, cs.origin_centered);
    for o in &sm.offending_vertices {
        println!("  vertex {} edge determinant {:?}", o.vertex, o.determinant);
    }
    for vi in 0..p.vertices().len() {
        if !vertex_parallelepiped_empty(p, vi)? {
            println!("  parallelepiped at {} has extra lattice points", p.vertex(vi));
        }
    }
    Ok(())
}

fn main() -> polycover::Result<()> {
    report("cube(2)", &cube(2)?)?;
    report("counterexample", &counterexample_simplex())?;
    Ok(())
}
