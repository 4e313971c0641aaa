//! Covers of Cayley polytopes `conv(F, F')` for a unimodular triangle `F` and a translate
//! `F' = rF + t` one lattice level away, and unit lozenges inside `F'`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::covering::piece::{CoverPiece, Provenance, Simplex, UnitSquare};
use crate::error::{Error, Result};
use crate::lattice::{det_columns, primitive, qi, LatticePoint, LinearForm, RationalPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cell {
    /// `{(i,j), (i+1,j), (i,j+1)}`
    Up(usize, usize),
    /// `{(i+1,j+1), (i,j+1), (i+1,j)}`
    Down(usize, usize),
}

/// The triangle `g0 + r·conv(0, u, v)` with its subdivision into `r²` unit triangles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleGrid {
    pub g0: LatticePoint,
    pub u: LatticePoint,
    pub v: LatticePoint,
    pub r: usize,
    pub plane: (LinearForm, BigInt),
}

impl TriangleGrid {
    pub fn new(g0: LatticePoint, u: LatticePoint, v: LatticePoint, r: usize) -> Result<Self> {
        let a = primitive(&u.cross(&v)).map_err(|_| Error::BadCayleyInput("collinear triangle edges".into()))?;
        let c = a.dot(&g0);
        Ok(TriangleGrid {
            g0,
            u,
            v,
            r,
            plane: (LinearForm(a), c),
        })
    }

    /// Small triangles: all up cells, then all down cells, each lexicographically.
    pub fn cells(&self) -> Vec<Cell> {
        let r = self.r;
        let mut out = Vec::with_capacity(r * r);
        for i in 0..r {
            for j in 0..r - i {
                out.push(Cell::Up(i, j));
            }
        }
        for i in 0..r.saturating_sub(1) {
            for j in 0..r - 1 - i {
                out.push(Cell::Down(i, j));
            }
        }
        out
    }

    pub fn point(&self, i: usize, j: usize) -> LatticePoint {
        &(&self.g0 + &self.u.scale(&BigInt::from(i))) + &self.v.scale(&BigInt::from(j))
    }

    /// Cell corners labelled like `F = (f0, f0+u, f0+v)`; down cells carry the point
    /// reflected labels of `−F`.
    pub fn labels(&self, c: Cell) -> [LatticePoint; 3] {
        match c {
            Cell::Up(i, j) => {
                let b = self.point(i, j);
                [b.clone(), &b + &self.u, &b + &self.v]
            }
            Cell::Down(i, j) => {
                let s = self.point(i + 1, j + 1);
                [s.clone(), &s - &self.u, &s - &self.v]
            }
        }
    }

    /// `(α, β)` with `x ≡ g0 + α·u + β·v` modulo the plane normal.
    pub fn coords(&self, x: &RationalPoint) -> (BigRational, BigRational) {
        let (num, den) = x.to_scaled();
        let rel = &num - &self.g0.scale(&den);
        let n = self.u.cross(&self.v);
        let base = det_columns(&self.u, &self.v, &n) * &den;
        (
            BigRational::new(det_columns(&rel, &self.v, &n), base.clone()),
            BigRational::new(det_columns(&self.u, &rel, &n), base),
        )
    }

    pub fn on_plane(&self, x: &RationalPoint) -> bool {
        self.plane.0.eval_rational(x) == qi(&self.plane.1)
    }

    pub fn contains(&self, x: &RationalPoint) -> bool {
        let (a, b) = self.coords(x);
        self.on_plane(x) && !a.is_negative() && !b.is_negative() && a + b <= qi(&BigInt::from(self.r))
    }

    pub fn cell_contains(c: Cell, a: &BigRational, b: &BigRational) -> bool {
        match c {
            Cell::Up(i, j) => {
                let (x, y) = (a - qi(&i.into()), b - qi(&j.into()));
                !x.is_negative() && !y.is_negative() && x + y <= BigRational::one()
            }
            Cell::Down(i, j) => {
                let (x, y) = (qi(&(i + 1).into()) - a, qi(&(j + 1).into()) - b);
                !x.is_negative() && !y.is_negative() && x + y <= BigRational::one()
            }
        }
    }

    /// First cell (canonical order) containing the grid point `(α, β)`.
    pub fn locate(&self, a: &BigRational, b: &BigRational) -> Option<Cell> {
        self.cells().into_iter().find(|&c| Self::cell_contains(c, a, b))
    }

    /// A unit lozenge inside the big triangle that contains cell `c` (needs `r ≥ 2`).
    pub fn lozenge(&self, c: Cell) -> UnitSquare {
        let (anchor, d1, d2) = match c {
            Cell::Up(i, j) if i + j + 2 <= self.r => (self.point(i, j), self.u.clone(), self.v.clone()),
            Cell::Up(i, j) if i >= 1 => (self.point(i, j), self.u.clone(), &self.v - &self.u),
            Cell::Up(i, j) => (self.point(i, j), self.v.clone(), &self.u - &self.v),
            Cell::Down(i, j) => (self.point(i, j), self.u.clone(), self.v.clone()),
        };
        UnitSquare {
            anchor,
            d1,
            d2,
            host_plane: self.plane.clone(),
        }
    }
}

/// The cover of `conv(F, F')` by `3r²` unimodular simplices, three per prism
/// `conv(F, R)` over the unit triangles `R` of `F'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyCover {
    pub f: [LatticePoint; 3],
    pub grid: TriangleGrid,
    pub simplices: Vec<Simplex>,
    level_f: BigInt,
    level_g: BigInt,
}

impl CayleyCover {
    pub fn new(f: &[LatticePoint; 3], fp: &[LatticePoint; 3], r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::BadCayleyInput("dilation ratio must be at least 1".into()));
        }
        let u = &f[1] - &f[0];
        let v = &f[2] - &f[0];
        let cross = u.cross(&v);
        if !cross.content().is_one() {
            return Err(Error::BadCayleyInput(format!("{f:?} is not a unimodular triangle")));
        }
        let rb = BigInt::from(r);
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let g0 = perms
            .iter()
            .find(|p| &fp[p[1]] - &fp[p[0]] == u.scale(&rb) && &fp[p[2]] - &fp[p[0]] == v.scale(&rb))
            .map(|p| fp[p[0]].clone())
            .ok_or_else(|| Error::BadCayleyInput(format!("{fp:?} is not {r} times {f:?} up to translation")))?;
        let (level_f, level_g) = (cross.dot(&f[0]), cross.dot(&g0));
        if !(&level_g - &level_f).abs().is_one() {
            return Err(Error::BadCayleyInput("triangles are not at lattice distance 1".into()));
        }
        let grid = TriangleGrid::new(g0, u, v, r)?;
        let mut simplices = Vec::with_capacity(3 * r * r);
        for c in grid.cells() {
            let [r0, r1, r2] = grid.labels(c);
            let [f0, f1, f2] = f.clone();
            for s in [
                [f0.clone(), f1.clone(), f2, r2.clone()],
                [f0.clone(), f1, r1.clone(), r2.clone()],
                [f0, r0, r1, r2],
            ] {
                let s = Simplex::new(s);
                if !s.is_unimodular() {
                    return Err(Error::BadCayleyInput(format!("prism simplex {:?} is not unimodular", s.vertices)));
                }
                simplices.push(s);
            }
        }
        Ok(CayleyCover {
            f: f.clone(),
            grid,
            simplices,
            level_f,
            level_g,
        })
    }

    pub fn pieces(&self, facet: usize) -> Vec<CoverPiece> {
        self.simplices
            .iter()
            .map(|s| CoverPiece::simplex(s.clone(), Provenance::CayleyPrism, facet))
            .collect()
    }

    /// Index of a simplex containing `x`. The point is first pushed to `F'` along the
    /// homothety lines through the center of similarity, which finds its prism; the
    /// staircase split of an inverted prism leaves gaps that other prisms cover, so the
    /// remaining simplices are scanned as a fallback.
    pub fn locate(&self, x: &RationalPoint) -> Option<usize> {
        let n = self.grid.u.cross(&self.grid.v);
        let lx = x.dot_int(&n);
        let (lf, lg) = (qi(&self.level_f), qi(&self.level_g));
        let lam = (&lx - &lf) / (&lg - &lf);
        if lam.is_negative() || lam > BigRational::one() {
            return None;
        }
        let r = self.grid.r;
        let y = if r == 1 {
            let shift = (&self.grid.g0 - &self.f[0]).to_rational();
            x + &shift.scale(&(BigRational::one() - &lam))
        } else {
            let rr = qi(&BigInt::from(r));
            let s = &self.f[0].to_rational().scale(&rr) - &self.grid.g0.to_rational();
            let s = s.scale(&(BigRational::one() / (&rr - BigRational::one())));
            let ls = s.dot_int(&n);
            let mu = (&lg - &ls) / (&lx - &ls);
            &s + &(x - &s).scale(&mu)
        };
        let (a, b) = self.grid.coords(&y);
        if let Some(c) = self.grid.locate(&a, &b) {
            let k = self.grid.cells().iter().position(|&d| d == c).unwrap();
            if let Some(i) = (3 * k..3 * k + 3).find(|&i| self.simplices[i].contains(x)) {
                return Some(i);
            }
        }
        self.simplices.iter().position(|s| s.contains(x))
    }
}

pub fn cayley_cover(f: &[LatticePoint; 3], fp: &[LatticePoint; 3], r: usize, facet: usize) -> Result<Vec<CoverPiece>> {
    Ok(CayleyCover::new(f, fp, r)?.pieces(facet))
}

/// A unit lozenge of the triangle `fp = rF` containing `x`.
pub fn lozenge_containing(fp: &[LatticePoint; 3], r: usize, x: &RationalPoint) -> Result<UnitSquare> {
    if r <= 1 {
        return Err(Error::RatioTooSmall(r.to_string()));
    }
    let rb = BigInt::from(r);
    let (eu, ev) = (&fp[1] - &fp[0], &fp[2] - &fp[0]);
    if !(eu.content() % &rb).is_zero() || !(ev.content() % &rb).is_zero() {
        return Err(Error::InvalidParameter(format!("{fp:?} is not a {r}-fold dilate")));
    }
    let div = |w: &LatticePoint| LatticePoint::new(&w.x / &rb, &w.y / &rb, &w.z / &rb);
    let grid = TriangleGrid::new(fp[0].clone(), div(&eu), div(&ev), r)?;
    if !grid.contains(x) {
        return Err(Error::OutsidePolygon(x.to_string()));
    }
    let (a, b) = grid.coords(x);
    let c = grid.locate(&a, &b).expect("point of the triangle lies in a cell");
    Ok(grid.lozenge(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::normalized_volume;
    use crate::geometry::convex_hull3;

    fn p(x: i64, y: i64, z: i64) -> LatticePoint {
        LatticePoint::new(x, y, z)
    }

    fn cayley(r: i64) -> ([LatticePoint; 3], [LatticePoint; 3]) {
        ([p(0, 0, 1), p(1, 0, 1), p(0, 1, 1)], [p(0, 0, 0), p(r, 0, 0), p(0, r, 0)])
    }

    #[test]
    fn counts_and_unimodularity() {
        for r in 1..=3usize {
            let (f, g) = cayley(r as i64);
            let cov = cayley_cover(&f, &g, r, 0).unwrap();
            assert_eq!(cov.len(), 3 * r * r);
            for piece in &cov {
                assert_eq!(piece.key().len(), 4);
                assert!(matches!(&piece.shape, crate::covering::PieceShape::Simplex(s) if s.is_unimodular()));
            }
            let mut pts = f.to_vec();
            pts.extend(g.iter().cloned());
            let q = convex_hull3(&pts).unwrap();
            let rr = (r * r + r + 1) as i64;
            assert_eq!(normalized_volume(&q), BigInt::from(rr));
        }
    }

    #[test]
    fn union_covers_grid() {
        for r in 1..=3usize {
            let (f, g) = cayley(r as i64);
            let cov = CayleyCover::new(&f, &g, r).unwrap();
            let mut pts = f.to_vec();
            pts.extend(g.iter().cloned());
            let q = convex_hull3(&pts).unwrap();
            let n = BigInt::from(4);
            for x in q.dilate(&n).lattice_points() {
                let xr = RationalPoint::from_scaled(&x, &n);
                let i = cov.locate(&xr).unwrap_or_else(|| panic!("{xr} uncovered for r = {r}"));
                assert!(cov.simplices[i].contains(&xr));
            }
        }
    }

    #[test]
    fn bad_inputs() {
        let (f, _) = cayley(2);
        let skew = [p(0, 0, 0), p(2, 0, 0), p(0, 3, 0)];
        assert!(matches!(cayley_cover(&f, &skew, 2, 0), Err(Error::BadCayleyInput(_))));
        let far = [p(0, 0, -1), p(2, 0, -1), p(0, 2, -1)];
        assert!(matches!(cayley_cover(&f, &far, 2, 0), Err(Error::BadCayleyInput(_))));
        let big = [p(0, 0, 1), p(2, 0, 1), p(0, 1, 1)];
        assert!(matches!(cayley_cover(&big, &far, 2, 0), Err(Error::BadCayleyInput(_))));
    }

    #[test]
    fn lozenge_examples() {
        let fp = [p(0, 0, 1), p(2, 0, 1), p(0, 2, 1)];
        let corners = |sq: &UnitSquare| {
            let mut c: Vec<LatticePoint> = sq.corners().to_vec();
            c.sort();
            c
        };
        let x = RationalPoint::from_fractions([(3, 2), (1, 4), (1, 1)]);
        let sq = lozenge_containing(&fp, 2, &x).unwrap();
        assert_eq!(corners(&sq), vec![p(0, 1, 1), p(1, 0, 1), p(1, 1, 1), p(2, 0, 1)]);
        let x = RationalPoint::from_fractions([(1, 2), (1, 2), (1, 1)]);
        let sq = lozenge_containing(&fp, 2, &x).unwrap();
        assert_eq!(corners(&sq), vec![p(0, 0, 1), p(0, 1, 1), p(1, 0, 1), p(1, 1, 1)]);
        for v in &fp {
            let sq = lozenge_containing(&fp, 2, &v.to_rational()).unwrap();
            assert!(sq.corners().contains(v));
            assert!(sq.is_valid());
        }
        assert!(matches!(lozenge_containing(&fp, 1, &x), Err(Error::RatioTooSmall(_))));
        let out = RationalPoint::from_fractions([(3, 2), (3, 2), (1, 1)]);
        assert!(matches!(lozenge_containing(&fp, 2, &out), Err(Error::OutsidePolygon(_))));
    }

    #[test]
    fn lozenges_stay_inside() {
        for r in 2..=5usize {
            let g = TriangleGrid::new(p(0, 0, 0), p(1, 0, 0), p(0, 1, 0), r).unwrap();
            for c in g.cells() {
                let sq = g.lozenge(c);
                for corner in sq.corners() {
                    assert!(g.contains(&corner.to_rational()), "{c:?} r={r}");
                }
                assert!(sq.is_valid());
            }
        }
    }
}
