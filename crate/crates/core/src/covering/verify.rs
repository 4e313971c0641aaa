use num_bigint::BigInt;
use rayon::prelude::*;

use crate::analysis::{decompose_in_parallelepiped, decompose_in_simplex, DecompositionWitness};
use crate::covering::cover::cover_point;
use crate::covering::piece::{CoverPiece, CoveringCertificate, PieceShape, PieceTest};
use crate::error::{Error, Result};
use crate::geometry::Polytope3;
use crate::lattice::{LatticePoint, RationalPoint};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoverReport {
    pub grid_denominator: u32,
    /// `(piece, vertex)` pairs violating a host inequality.
    pub outside_vertices: Vec<(usize, LatticePoint)>,
    pub uncovered_lattice: Vec<LatticePoint>,
    pub uncovered_grid: Vec<RationalPoint>,
    /// Non-unimodular simplices and degenerate boxes.
    pub bad_pieces: Vec<(usize, String)>,
}

impl CoverReport {
    pub fn passed(&self) -> bool {
        self.outside_vertices.is_empty()
            && self.uncovered_lattice.is_empty()
            && self.uncovered_grid.is_empty()
            && self.bad_pieces.is_empty()
    }

    /// A point no piece contains, if any.
    pub fn witness(&self) -> Option<RationalPoint> {
        self.uncovered_lattice
            .first()
            .map(LatticePoint::to_rational)
            .or_else(|| self.uncovered_grid.first().cloned())
    }
}

/// Membership tests for all pieces with a move-to-front search order.
struct Finder<'a> {
    tests: &'a [PieceTest],
    order: Vec<usize>,
}

impl<'a> Finder<'a> {
    fn new(tests: &'a [PieceTest]) -> Self {
        Finder {
            tests,
            order: (0..tests.len()).collect(),
        }
    }

    fn find(&mut self, p: &LatticePoint, n: &BigInt) -> Option<usize> {
        let k = self.order.iter().position(|&i| self.tests[i].contains_scaled(p, n))?;
        let i = self.order[k];
        self.order[..=k].rotate_right(1);
        Some(i)
    }
}

fn uncovered(tests: &[PieceTest], points: &[LatticePoint], n: &BigInt) -> Vec<LatticePoint> {
    points
        .par_chunks(512)
        .flat_map_iter(|chunk| {
            let mut f = Finder::new(tests);
            chunk
                .iter()
                .filter(|p| f.find(p, n).is_none())
                .cloned()
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Checks piece containment, lattice and `(1/N)`-grid coverage, and piece shapes.
pub fn verify_cover(cert: &CoveringCertificate, grid_denominator: u32) -> Result<CoverReport> {
    if grid_denominator == 0 {
        return Err(Error::InvalidParameter("grid denominator must be at least 1".into()));
    }
    let host = &cert.host;
    let mut report = CoverReport {
        grid_denominator,
        ..Default::default()
    };
    for (i, pc) in cert.pieces.iter().enumerate() {
        for v in pc.vertices() {
            if !host.contains_lattice(&v) {
                report.outside_vertices.push((i, v));
            }
        }
        match &pc.shape {
            PieceShape::Simplex(s) if !s.is_unimodular() => {
                report.bad_pieces.push((i, format!("simplex with determinant {}", s.det())))
            }
            PieceShape::Box(b) if b.det() == BigInt::from(0) => report.bad_pieces.push((i, "degenerate box".into())),
            _ => {}
        }
    }
    let tests: Vec<PieceTest> = cert.pieces.iter().map(CoverPiece::test).collect();
    let one = BigInt::from(1);
    report.uncovered_lattice = uncovered(&tests, &host.lattice_points(), &one);
    let n = BigInt::from(grid_denominator);
    report.uncovered_grid = uncovered(&tests, &host.dilate(&n).lattice_points(), &n)
        .into_iter()
        .map(|p| RationalPoint::from_scaled(&p, &n))
        .collect();
    Ok(report)
}

/// Repeated cover-based decompositions against one certificate.
pub struct CoverIndex<'a> {
    cert: &'a CoveringCertificate,
    tests: Vec<PieceTest>,
    order: Vec<usize>,
}

impl<'a> CoverIndex<'a> {
    pub fn new(cert: &'a CoveringCertificate) -> Self {
        let tests: Vec<PieceTest> = cert.pieces.iter().map(CoverPiece::test).collect();
        let order = (0..tests.len()).collect();
        CoverIndex { cert, tests, order }
    }

    /// Index of a certificate piece containing `p / n`.
    pub fn find(&mut self, p: &LatticePoint, n: &BigInt) -> Option<usize> {
        let mut f = Finder {
            tests: &self.tests,
            order: std::mem::take(&mut self.order),
        };
        let hit = f.find(p, n);
        self.order = f.order;
        hit
    }

    pub fn decompose(&mut self, p: &LatticePoint, n: usize) -> Result<DecompositionWitness> {
        let host = &self.cert.host;
        let nb = BigInt::from(n);
        if n == 0 || !host.contains_scaled(p, &nb) {
            return Err(Error::OutsideDilate {
                point: p.to_string(),
                n: n.to_string(),
            });
        }
        let piece = match self.find(p, &nb) {
            Some(i) => self.cert.pieces[i].clone(),
            None => cover_point(host, &RationalPoint::from_scaled(p, &nb))?,
        };
        let w = match &piece.shape {
            PieceShape::Simplex(s) => decompose_in_simplex(s, p, n)?,
            PieceShape::Box(b) => decompose_in_parallelepiped(b, p, n)?,
        };
        if !w.verify(p, |x| host.contains_lattice(x)) {
            return Err(Error::NoDecomposition(format!("{p} via piece {:?}", piece.key())));
        }
        Ok(w)
    }
}

/// `p = p_1 + … + p_n` with `p_i ∈ P ∩ Z³`, found inside a certificate piece.
pub fn decompose_via_cover(
    p: &Polytope3,
    cert: &CoveringCertificate,
    point: &LatticePoint,
    n: usize,
) -> Result<DecompositionWitness> {
    if &cert.host != p {
        return Err(Error::InvalidParameter("certificate belongs to a different polytope".into()));
    }
    CoverIndex::new(cert).decompose(point, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::cover::cover_polytope;
    use crate::generators::{chisel, cube, ChiselSpec};

    #[test]
    fn deleting_pieces_is_detected() {
        let cert = cover_polytope(&cube(1).unwrap()).unwrap();
        for i in 0..cert.pieces.len() {
            let mut m = cert.clone();
            m.pieces.remove(i);
            let rep = verify_cover(&m, 4).unwrap();
            assert!(!rep.passed());
            let w = rep.witness().unwrap();
            assert!(m.pieces.iter().all(|pc| !pc.contains(&w)));
        }
    }

    #[test]
    fn nudged_vertex_is_detected() {
        let mut cert = cover_polytope(&cube(1).unwrap()).unwrap();
        if let PieceShape::Box(b) = &mut cert.pieces[0].shape {
            b.anchor = &b.anchor + &LatticePoint::new(1, 0, 0);
        }
        let rep = verify_cover(&cert, 2).unwrap();
        assert!(!rep.outside_vertices.is_empty());
        assert!(verify_cover(&cert, 0).is_err());
    }

    #[test]
    fn decompositions() {
        let c = cube(1).unwrap();
        let cert = cover_polytope(&c).unwrap();
        let w = decompose_via_cover(&c, &cert, &LatticePoint::new(2, 2, 2), 2).unwrap();
        assert_eq!(w.parts, vec![LatticePoint::new(1, 1, 1); 2]);
        let target = LatticePoint::new(1, 0, 2);
        let w = decompose_via_cover(&c, &cert, &target, 2).unwrap();
        assert_eq!(w.sum(), target);
        assert!(matches!(
            decompose_via_cover(&c, &cert, &LatticePoint::new(3, 0, 0), 2),
            Err(Error::OutsideDilate { .. })
        ));

        let q = chisel(&cube(2).unwrap(), &ChiselSpec::antipodal(LatticePoint::new(2, 2, 2))).unwrap();
        let cert = cover_polytope(&q).unwrap();
        let mut idx = CoverIndex::new(&cert);
        for pt in q.dilate(&BigInt::from(2)).lattice_points() {
            let w = idx.decompose(&pt, 2).unwrap();
            assert!(w.verify(&pt, |x| q.contains_lattice(x)));
        }
    }
}
