//! Polytope and certificate text files and OFF export.

use polycover::covering::cover_polytope;
use polycover::generators::{chisel, cube, ChiselSpec};
use polycover::io::{certificate_to_off, read_certificate, read_polytope, write_certificate, write_polytope};
use polycover::lattice::LatticePoint;

fn main() -> polycover::Result<()> {
    let p = chisel(&cube(1)?, &ChiselSpec::antipodal(LatticePoint::new(1, 1, 1)))?;
    let text = write_polytope(&p, Some("chiseled cube"));
    print!("{text}");
    assert_eq!(read_polytope(&text)?.polytope, p);

    let cert = cover_polytope(&p)?;
    let ct = write_certificate(&cert);
    println!("certificate: {} lines", ct.lines().count());
    for line in ct.lines().filter(|l| l.starts_with("piece")).take(3) {
        println!("  {line}");
    }
    assert_eq!(read_certificate(&ct)?, cert);

    let (off, warnings) = certificate_to_off(&cert);
    println!("OFF export: {} meshes, {} warnings", polycover::io::off_block_count(&off), warnings.len());
    Ok(())
}
