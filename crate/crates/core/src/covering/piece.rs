use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::{scan_box, Polytope3};
use crate::lattice::{det_columns, LatticePoint, LinearForm, RationalPoint};

/// A lattice parallelogram of lattice area 1 in a lattice plane.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnitSquare {
    pub anchor: LatticePoint,
    pub d1: LatticePoint,
    pub d2: LatticePoint,
    pub host_plane: (LinearForm, BigInt),
}

impl UnitSquare {
    pub fn corners(&self) -> [LatticePoint; 4] {
        [
            self.anchor.clone(),
            &self.anchor + &self.d1,
            &(&self.anchor + &self.d1) + &self.d2,
            &self.anchor + &self.d2,
        ]
    }

    /// Corners on the plane, and `d1 × d2 = ±normal` (area 1 in every lattice chart).
    pub fn is_valid(&self) -> bool {
        let (a, c) = &self.host_plane;
        let cr = self.d1.cross(&self.d2);
        self.corners().iter().all(|p| &a.eval(p) == c) && (&cr == a.coeffs() || cr == -a.coeffs())
    }
}

/// `anchor + [0,1]·e1 + [0,1]·e2 + [0,1]·e3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Parallelepiped {
    pub anchor: LatticePoint,
    pub e1: LatticePoint,
    pub e2: LatticePoint,
    pub e3: LatticePoint,
}

impl Parallelepiped {
    pub fn new(anchor: LatticePoint, e1: LatticePoint, e2: LatticePoint, e3: LatticePoint) -> Result<Self> {
        if det_columns(&e1, &e2, &e3).is_zero() {
            return Err(Error::DegeneratePiece(format!("edges {e1}, {e2}, {e3} are dependent")));
        }
        Ok(Parallelepiped { anchor, e1, e2, e3 })
    }

    /// The unit cube `[0,1]³` translated by `anchor`.
    pub fn unit_cube(anchor: LatticePoint) -> Self {
        Parallelepiped {
            anchor,
            e1: LatticePoint::new(1, 0, 0),
            e2: LatticePoint::new(0, 1, 0),
            e3: LatticePoint::new(0, 0, 1),
        }
    }

    pub fn det(&self) -> BigInt {
        det_columns(&self.e1, &self.e2, &self.e3)
    }

    /// The 8 corners, lexicographically sorted.
    pub fn vertices(&self) -> Vec<LatticePoint> {
        let mut out = Vec::with_capacity(8);
        for m in 0..8u8 {
            let mut p = self.anchor.clone();
            if m & 1 != 0 {
                p = &p + &self.e1;
            }
            if m & 2 != 0 {
                p = &p + &self.e2;
            }
            if m & 4 != 0 {
                p = &p + &self.e3;
            }
            out.push(p);
        }
        out.sort();
        out
    }

    pub fn negate(&self) -> Parallelepiped {
        let far = &(&(&self.anchor + &self.e1) + &self.e2) + &self.e3;
        Parallelepiped {
            anchor: -&far,
            e1: self.e1.clone(),
            e2: self.e2.clone(),
            e3: self.e3.clone(),
        }
    }

    pub fn test(&self) -> PieceTest {
        PieceTest::new(&self.anchor, [&self.e1, &self.e2, &self.e3], true)
    }

    pub fn contains_scaled(&self, p: &LatticePoint, n: &BigInt) -> bool {
        self.test().contains_scaled(p, n)
    }

    pub fn contains(&self, x: &RationalPoint) -> bool {
        let (p, n) = x.to_scaled();
        self.contains_scaled(&p, &n)
    }

    pub fn lattice_points(&self) -> Vec<LatticePoint> {
        lattice_points_of(&self.vertices(), &self.test())
    }
}

/// A lattice tetrahedron.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Simplex {
    pub vertices: [LatticePoint; 4],
}

impl Simplex {
    pub fn new(vertices: [LatticePoint; 4]) -> Self {
        Simplex { vertices }
    }

    pub fn edges(&self) -> [LatticePoint; 3] {
        let v = &self.vertices;
        [&v[1] - &v[0], &v[2] - &v[0], &v[3] - &v[0]]
    }

    pub fn det(&self) -> BigInt {
        let [a, b, c] = self.edges();
        det_columns(&a, &b, &c)
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    pub fn negate(&self) -> Simplex {
        Simplex {
            vertices: self.vertices.clone().map(|v| -v),
        }
    }

    pub fn test(&self) -> PieceTest {
        let [a, b, c] = self.edges();
        PieceTest::new(&self.vertices[0], [&a, &b, &c], false)
    }

    pub fn contains_scaled(&self, p: &LatticePoint, n: &BigInt) -> bool {
        self.test().contains_scaled(p, n)
    }

    pub fn contains(&self, x: &RationalPoint) -> bool {
        let (p, n) = x.to_scaled();
        self.contains_scaled(&p, &n)
    }

    pub fn lattice_points(&self) -> Vec<LatticePoint> {
        lattice_points_of(&self.vertices, &self.test())
    }
}

fn lattice_points_of(vertices: &[LatticePoint], t: &PieceTest) -> Vec<LatticePoint> {
    let mut lo = vertices[0].clone();
    let mut hi = vertices[0].clone();
    for v in vertices {
        lo = LatticePoint::new(lo.x.min(v.x.clone()), lo.y.min(v.y.clone()), lo.z.min(v.z.clone()));
        hi = LatticePoint::new(hi.x.max(v.x.clone()), hi.y.max(v.y.clone()), hi.z.max(v.z.clone()));
    }
    let one = BigInt::one();
    scan_box(&lo, &hi, |p| t.contains_scaled(p, &one))
}

/// Precomputed membership test for a simplex or parallelepiped with base `b` and edges
/// `e_i`: with dual vectors `c_i` (so `c_i·e_j = δ_ij·d`, `d > 0`) a point `x = b + Σ λ_i e_i`
/// has `c_i·(x−b) = λ_i·d`.
#[derive(Clone, Debug)]
pub struct PieceTest {
    base: LatticePoint,
    duals: [LatticePoint; 3],
    d: BigInt,
    is_box: bool,
}

impl PieceTest {
    fn new(base: &LatticePoint, e: [&LatticePoint; 3], is_box: bool) -> Self {
        let mut duals = [e[1].cross(e[2]), e[2].cross(e[0]), e[0].cross(e[1])];
        let mut d = e[0].dot(&duals[0]);
        if d.is_negative() {
            d = -d;
            duals = duals.map(|c| -c);
        }
        PieceTest {
            base: base.clone(),
            duals,
            d,
            is_box,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.d.is_zero()
    }

    /// Whether `p / n` lies in the piece.
    pub fn contains_scaled(&self, p: &LatticePoint, n: &BigInt) -> bool {
        if self.d.is_zero() {
            return false;
        }
        let rel = p - &self.base.scale(n);
        let nd = n * &self.d;
        let mut sum = BigInt::zero();
        for c in &self.duals {
            let l = c.dot(&rel);
            if l.is_negative() {
                return false;
            }
            if self.is_box {
                if l > nd {
                    return false;
                }
            } else {
                sum += l;
            }
        }
        self.is_box || sum <= nd
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    SquareExtension,
    CayleyPrism,
    PushedFacetLozenge,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::SquareExtension => "square-extension",
            Provenance::CayleyPrism => "cayley-prism",
            Provenance::PushedFacetLozenge => "pushed-facet-lozenge",
        }
    }

    pub fn parse(s: &str) -> Option<Provenance> {
        match s {
            "square-extension" => Some(Provenance::SquareExtension),
            "cayley-prism" => Some(Provenance::CayleyPrism),
            "pushed-facet-lozenge" => Some(Provenance::PushedFacetLozenge),
            _ => None,
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PieceShape {
    Simplex(Simplex),
    Box(Parallelepiped),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoverPiece {
    pub shape: PieceShape,
    pub provenance: Provenance,
    /// Index of the host facet whose construction produced the piece.
    pub facet: usize,
}

impl CoverPiece {
    pub fn simplex(s: Simplex, provenance: Provenance, facet: usize) -> Self {
        CoverPiece {
            shape: PieceShape::Simplex(s),
            provenance,
            facet,
        }
    }

    pub fn boxed(b: Parallelepiped, provenance: Provenance, facet: usize) -> Self {
        CoverPiece {
            shape: PieceShape::Box(b),
            provenance,
            facet,
        }
    }

    pub fn is_box(&self) -> bool {
        matches!(self.shape, PieceShape::Box(_))
    }

    pub fn vertices(&self) -> Vec<LatticePoint> {
        match &self.shape {
            PieceShape::Simplex(s) => s.vertices.to_vec(),
            PieceShape::Box(b) => b.vertices(),
        }
    }

    /// Sorted vertex set; equal keys mean equal point sets.
    pub fn key(&self) -> Vec<LatticePoint> {
        let mut v = self.vertices();
        v.sort();
        v
    }

    pub fn test(&self) -> PieceTest {
        match &self.shape {
            PieceShape::Simplex(s) => s.test(),
            PieceShape::Box(b) => b.test(),
        }
    }

    pub fn contains(&self, x: &RationalPoint) -> bool {
        let (p, n) = x.to_scaled();
        self.test().contains_scaled(&p, &n)
    }

    pub fn lattice_points(&self) -> Vec<LatticePoint> {
        match &self.shape {
            PieceShape::Simplex(s) => s.lattice_points(),
            PieceShape::Box(b) => b.lattice_points(),
        }
    }

    pub fn is_inside(&self, host: &Polytope3) -> bool {
        self.vertices().iter().all(|v| host.contains_lattice(v))
    }
}

/// A finite list of pieces asserted to cover `host`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringCertificate {
    pub host: Polytope3,
    pub pieces: Vec<CoverPiece>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64, z: i64) -> LatticePoint {
        LatticePoint::new(x, y, z)
    }

    #[test]
    fn box_membership() {
        let b = Parallelepiped::new(p(-1, -1, -1), p(1, 0, 0), p(0, 1, 0), p(1, 1, 2)).unwrap();
        assert_eq!(b.det(), BigInt::from(2));
        assert!(b.contains(&p(0, 0, 0).to_rational()));
        assert!(b.contains(&p(1, 1, 1).to_rational()));
        assert!(!b.contains(&p(1, 0, 0).to_rational()));
        for v in b.vertices() {
            assert!(b.contains(&v.to_rational()));
        }
        // half-open lattice count is |det|; closed parallelepiped adds boundary points
        assert!(b.lattice_points().len() >= 8);
        assert_eq!(b.negate().vertices(), {
            let mut v: Vec<LatticePoint> = b.vertices().iter().map(|x| -x).collect();
            v.sort();
            v
        });
    }

    #[test]
    fn simplex_membership() {
        let s = Simplex::new([p(0, 0, 0), p(1, 0, 0), p(0, 1, 0), p(0, 0, 1)]);
        assert!(s.is_unimodular());
        assert_eq!(s.lattice_points().len(), 4);
        assert!(s.contains(&RationalPoint::from_fractions([(1, 4), (1, 4), (1, 4)])));
        assert!(!s.contains(&RationalPoint::from_fractions([(1, 2), (1, 2), (1, 4)])));
        let s2 = Simplex::new([p(0, 0, 0), p(1, 0, 0), p(0, 0, 1), p(1, 2, 1)]);
        assert_eq!(s2.det().abs(), BigInt::from(2));
    }

    #[test]
    fn degenerate_box_rejected() {
        assert!(matches!(
            Parallelepiped::new(p(0, 0, 0), p(1, 0, 0), p(0, 1, 0), p(1, 1, 0)),
            Err(Error::DegeneratePiece(_))
        ));
    }
}
