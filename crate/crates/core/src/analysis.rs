//! Smoothness, symmetry and IDP checks, plus explicit decompositions in simplices and
//! parallelepipeds.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::covering::{Parallelepiped, Simplex};
use crate::error::{Error, Result};
use crate::geometry::{minkowski_sum, minkowski_sum_points, Polytope3};
use crate::lattice::{det_columns, is_unimodular_basis, LatticePoint, RationalPoint};

pub fn check_simple(p: &Polytope3) -> bool {
    (0..p.vertices().len()).all(|i| p.vertex_edges(i).len() == 3)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OffendingVertex {
    pub vertex: LatticePoint,
    pub directions: Vec<LatticePoint>,
    /// `None` when the vertex is not simple.
    pub determinant: Option<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothnessReport {
    pub is_simple: bool,
    pub is_smooth: bool,
    pub offending_vertices: Vec<OffendingVertex>,
}

pub fn check_smooth(p: &Polytope3) -> SmoothnessReport {
    let mut offending = Vec::new();
    let mut simple = true;
    for (i, v) in p.vertices().iter().enumerate() {
        let dirs = p.edge_directions(i);
        if dirs.len() != 3 {
            simple = false;
            offending.push(OffendingVertex {
                vertex: v.clone(),
                directions: dirs,
                determinant: None,
            });
            continue;
        }
        if !is_unimodular_basis(&dirs[0], &dirs[1], &dirs[2]) {
            let det = det_columns(&dirs[0], &dirs[1], &dirs[2]);
            offending.push(OffendingVertex {
                vertex: v.clone(),
                directions: dirs,
                determinant: Some(det),
            });
        }
    }
    SmoothnessReport {
        is_simple: simple,
        is_smooth: offending.is_empty(),
        offending_vertices: offending,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryReport {
    pub symmetric: bool,
    pub center: Option<RationalPoint>,
    pub origin_centered: bool,
}

/// Detects `P = 2c − P`; `c = 0` is the case the covering needs.
pub fn check_centrally_symmetric(p: &Polytope3) -> SymmetryReport {
    let vs = p.vertices();
    let twice_c = &vs[0] + &vs[vs.len() - 1];
    let symmetric = vs.iter().all(|v| p.vertex_index(&(&twice_c - v)).is_some());
    if !symmetric {
        return SymmetryReport {
            symmetric: false,
            center: None,
            origin_centered: false,
        };
    }
    SymmetryReport {
        symmetric: true,
        center: Some(RationalPoint::from_scaled(&twice_c, &BigInt::from(2))),
        origin_centered: twice_c.is_zero(),
    }
}

/// The parallelepiped spanned at vertex `vi` by its primitive edge directions.
pub fn vertex_parallelepiped(p: &Polytope3, vi: usize) -> Result<Parallelepiped> {
    let dirs = p.edge_directions(vi);
    if dirs.len() != 3 {
        return Err(Error::NotSimpleVertex(p.vertex(vi).to_string()));
    }
    let [a, b, c]: [LatticePoint; 3] = dirs.try_into().unwrap();
    Parallelepiped::new(p.vertex(vi).clone(), a, b, c)
}

pub fn vertex_parallelepiped_empty(p: &Polytope3, vi: usize) -> Result<bool> {
    let q = vertex_parallelepiped(p, vi)?;
    Ok(q.lattice_points().len() == 8)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdpReport {
    pub checked_up_to: usize,
    pub is_idp_up_to: bool,
    /// Smallest failing `n` and the lexicographically smallest point of `nP ∩ Z³` that is
    /// not a sum of `n` lattice points of `P`.
    pub failure: Option<(usize, LatticePoint)>,
}

/// Rounds `p / k` towards the nearest lattice point, a good first guess for a summand.
fn guess_summand(p: &LatticePoint, k: &BigInt) -> LatticePoint {
    let r = |x: &BigInt| -> BigInt { (x * BigInt::from(2) + k).div_floor(&(k * BigInt::from(2))) };
    LatticePoint::new(r(&p.x), r(&p.y), r(&p.z))
}

/// Checks `nP ∩ Z³ = n·(P ∩ Z³)` for `n = 2..=n_max`.
pub fn idp_check(p: &Polytope3, n_max: usize) -> Result<IdpReport> {
    if n_max < 2 {
        return Err(Error::InvalidParameter(format!("n_max must be at least 2, got {n_max}")));
    }
    let s1: Vec<LatticePoint> = p.lattice_points();
    let s1_set: HashSet<LatticePoint> = s1.iter().cloned().collect();
    let mut prev: HashSet<LatticePoint> = s1_set.clone();
    for k in 2..=n_max {
        let kb = BigInt::from(k);
        let targets = p.dilate(&kb).lattice_points();
        let decomposable: Vec<bool> = targets
            .par_iter()
            .map(|t| {
                let g = guess_summand(t, &kb);
                if s1_set.contains(&g) && prev.contains(&(t - &g)) {
                    return true;
                }
                s1.iter().any(|q| prev.contains(&(t - q)))
            })
            .collect();
        if let Some(i) = decomposable.iter().position(|ok| !ok) {
            return Ok(IdpReport {
                checked_up_to: n_max,
                is_idp_up_to: false,
                failure: Some((k, targets[i].clone())),
            });
        }
        prev = targets.into_iter().collect();
    }
    Ok(IdpReport {
        checked_up_to: n_max,
        is_idp_up_to: true,
        failure: None,
    })
}

/// Whether `(P+Q) ∩ Z³ = (P ∩ Z³) + (Q ∩ Z³)`, with the smallest witness otherwise.
pub fn minkowski_pair_check(p: &Polytope3, q: &Polytope3) -> (bool, Option<LatticePoint>) {
    let sum = minkowski_sum(p, q);
    let sumset: HashSet<LatticePoint> = minkowski_sum_points(&p.lattice_points(), &q.lattice_points())
        .into_iter()
        .collect();
    match sum.lattice_points().into_iter().find(|x| !sumset.contains(x)) {
        Some(w) => (false, Some(w)),
        None => (true, None),
    }
}

/// `n` lattice points summing to a target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionWitness {
    pub n: usize,
    pub parts: Vec<LatticePoint>,
}

impl DecompositionWitness {
    pub fn sum(&self) -> LatticePoint {
        self.parts.iter().fold(LatticePoint::zero(), |acc, x| &acc + x)
    }

    /// Parts count, sum and membership.
    pub fn verify(&self, target: &LatticePoint, member: impl Fn(&LatticePoint) -> bool) -> bool {
        self.parts.len() == self.n && &self.sum() == target && self.parts.iter().all(member)
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    Ok(())
}

/// Barycentric decomposition in a unimodular simplex.
pub fn decompose_in_simplex(s: &Simplex, p: &LatticePoint, n: usize) -> Result<DecompositionWitness> {
    check_n(n)?;
    let det = s.det();
    if !det.abs().is_one() {
        return Err(Error::NotUnimodular(format!("simplex with determinant {det}")));
    }
    let nb = BigInt::from(n);
    let [e1, e2, e3] = s.edges();
    let rel = p - &s.vertices[0].scale(&nb);
    // Cramer's rule; det = ±1 keeps everything integral
    let l1 = det_columns(&rel, &e2, &e3) * &det;
    let l2 = det_columns(&e1, &rel, &e3) * &det;
    let l3 = det_columns(&e1, &e2, &rel) * &det;
    let l0 = &nb - &l1 - &l2 - &l3;
    let lambdas = [l0, l1, l2, l3];
    if lambdas.iter().any(Signed::is_negative) {
        return Err(Error::OutsideDilate {
            point: p.to_string(),
            n: n.to_string(),
        });
    }
    let mut parts = Vec::with_capacity(n);
    for (v, l) in s.vertices.iter().zip(&lambdas) {
        for _ in 0..l.to_usize().expect("bounded by n") {
            parts.push(v.clone());
        }
    }
    Ok(DecompositionWitness { n, parts })
}

/// Greedy search with backtracking over `Q ∩ Z³` in lexicographic order.
pub fn decompose_in_parallelepiped(q: &Parallelepiped, p: &LatticePoint, n: usize) -> Result<DecompositionWitness> {
    check_n(n)?;
    let test = q.test();
    if !test.contains_scaled(p, &BigInt::from(n)) {
        return Err(Error::OutsideDilate {
            point: p.to_string(),
            n: n.to_string(),
        });
    }
    let pts = q.lattice_points();
    let member = |x: &LatticePoint, k: usize| test.contains_scaled(x, &BigInt::from(k));
    let parts = search(&pts, p, n, &member, &mut HashSet::new()).ok_or_else(|| Error::NoDecomposition(p.to_string()))?;
    Ok(DecompositionWitness { n, parts })
}

/// Exhaustive decomposition in an arbitrary lattice polytope.
pub fn decompose_exhaustive(poly: &Polytope3, p: &LatticePoint, n: usize) -> Result<DecompositionWitness> {
    check_n(n)?;
    if !poly.contains_scaled(p, &BigInt::from(n)) {
        return Err(Error::OutsideDilate {
            point: p.to_string(),
            n: n.to_string(),
        });
    }
    let pts = poly.lattice_points();
    let member = |x: &LatticePoint, k: usize| poly.contains_scaled(x, &BigInt::from(k));
    let parts = search(&pts, p, n, &member, &mut HashSet::new())
        .ok_or_else(|| Error::NoDecomposition(format!("{p} as a sum of {n} lattice points")))?;
    Ok(DecompositionWitness { n, parts })
}

/// Parts `q_1 ≤ … ≤ q_n` from `pts` summing to `target`; `member(x, k)` tests `x ∈ kQ`.
/// `dead` memoizes `(point, k)` pairs without a decomposition.
fn search(
    pts: &[LatticePoint],
    target: &LatticePoint,
    k: usize,
    member: &impl Fn(&LatticePoint, usize) -> bool,
    dead: &mut HashSet<(LatticePoint, usize)>,
) -> Option<Vec<LatticePoint>> {
    if k == 1 {
        return pts.binary_search(target).is_ok().then(|| vec![target.clone()]);
    }
    if dead.contains(&(target.clone(), k)) {
        return None;
    }
    for q in pts {
        let rest = target - q;
        if !member(&rest, k - 1) {
            continue;
        }
        if let Some(mut tail) = search(pts, &rest, k - 1, member, dead) {
            tail.insert(0, q.clone());
            return Some(tail);
        }
    }
    dead.insert((target.clone(), k));
    None
}

/// Normalized volume (`3!` times Euclidean volume) of a polytope, by coning facets from a
/// vertex.
pub fn normalized_volume(p: &Polytope3) -> BigInt {
    let apex = p.vertex(0);
    let mut total = BigInt::zero();
    for f in p.facets() {
        if f.vertices.contains(&0) {
            continue;
        }
        let vs: Vec<&LatticePoint> = f.vertices.iter().map(|&i| p.vertex(i)).collect();
        for w in 1..vs.len() - 1 {
            let d = det_columns(&(vs[0] - apex), &(vs[w] - apex), &(vs[w + 1] - apex));
            total += d.abs();
        }
    }
    total
}

/// Euclidean volume of `p` as an exact rational.
pub fn euclidean_volume(p: &Polytope3) -> BigRational {
    BigRational::new(normalized_volume(p), BigInt::from(6))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::convex_hull3;

    fn p(x: i64, y: i64, z: i64) -> LatticePoint {
        LatticePoint::new(x, y, z)
    }

    fn cube() -> Polytope3 {
        let mut v = Vec::new();
        for x in [-1, 1] {
            for y in [-1, 1] {
                for z in [-1, 1] {
                    v.push(p(x, y, z));
                }
            }
        }
        convex_hull3(&v).unwrap()
    }

    fn counterexample() -> Polytope3 {
        convex_hull3(&[p(0, 0, 0), p(1, 0, 0), p(0, 0, 1), p(1, 2, 1)]).unwrap()
    }

    fn unimodular() -> Polytope3 {
        convex_hull3(&[p(0, 0, 0), p(1, 0, 0), p(0, 1, 0), p(0, 0, 1)]).unwrap()
    }

    #[test]
    fn simplicity() {
        assert!(check_simple(&cube()));
        assert!(check_simple(&counterexample()));
        let pyr = convex_hull3(&[p(1, 1, 0), p(1, -1, 0), p(-1, 1, 0), p(-1, -1, 0), p(0, 0, 1)]).unwrap();
        assert!(!check_simple(&pyr));
        let r = check_smooth(&pyr);
        assert!(!r.is_simple && !r.is_smooth);
        assert!(r.offending_vertices.iter().any(|o| o.vertex == p(0, 0, 1) && o.determinant.is_none()));
    }

    #[test]
    fn smoothness() {
        let r = check_smooth(&cube());
        assert!(r.is_smooth && r.is_simple && r.offending_vertices.is_empty());
        let r = check_smooth(&counterexample());
        assert!(!r.is_smooth);
        let origin = r.offending_vertices.iter().find(|o| o.vertex.is_zero()).unwrap();
        assert_eq!(origin.determinant.as_ref().unwrap().abs(), BigInt::from(2));
    }

    #[test]
    fn symmetry() {
        let r = check_centrally_symmetric(&cube());
        assert!(r.symmetric && r.origin_centered);
        assert_eq!(r.center, Some(RationalPoint::zero()));
        let r = check_centrally_symmetric(&counterexample());
        assert!(!r.symmetric && r.center.is_none());
        let t = cube().translate(&p(1, 0, 0));
        let r = check_centrally_symmetric(&t);
        assert!(r.symmetric && !r.origin_centered);
        assert_eq!(r.center, Some(p(1, 0, 0).to_rational()));
    }

    #[test]
    fn vertex_parallelepipeds() {
        let c = cube();
        let vi = c.vertex_index(&p(1, 1, 1)).unwrap();
        assert_eq!(vertex_parallelepiped_empty(&c, vi), Ok(true));
        let s = counterexample();
        let o = s.vertex_index(&p(0, 0, 0)).unwrap();
        assert_eq!(vertex_parallelepiped_empty(&s, o), Ok(false));
        // the extra point found by enumeration
        let extra: Vec<LatticePoint> = vertex_parallelepiped(&s, o)
            .unwrap()
            .lattice_points()
            .into_iter()
            .filter(|x| !vertex_parallelepiped(&s, o).unwrap().vertices().contains(x))
            .collect();
        assert!(!extra.is_empty());
        let pyr = convex_hull3(&[p(1, 1, 0), p(1, -1, 0), p(-1, 1, 0), p(-1, -1, 0), p(0, 0, 1)]).unwrap();
        let apex = pyr.vertex_index(&p(0, 0, 1)).unwrap();
        assert!(matches!(vertex_parallelepiped_empty(&pyr, apex), Err(Error::NotSimpleVertex(_))));
    }

    #[test]
    fn idp_examples() {
        let r = idp_check(&counterexample(), 2).unwrap();
        assert_eq!(r.failure, Some((2, p(1, 1, 1))));
        assert!(!r.is_idp_up_to);
        let r = idp_check(&cube(), 3).unwrap();
        assert!(r.is_idp_up_to && r.failure.is_none());
        assert!(idp_check(&unimodular(), 4).unwrap().is_idp_up_to);
        assert!(idp_check(&cube(), 1).is_err());
    }

    #[test]
    fn minkowski_pairs() {
        assert_eq!(minkowski_pair_check(&counterexample(), &counterexample()), (false, Some(p(1, 1, 1))));
        assert_eq!(minkowski_pair_check(&cube(), &cube()), (true, None));
    }

    #[test]
    fn simplex_decomposition() {
        let s = Simplex::new([p(0, 0, 0), p(1, 0, 0), p(0, 1, 0), p(0, 0, 1)]);
        let w = decompose_in_simplex(&s, &p(1, 1, 0), 2).unwrap();
        let mut parts = w.parts.clone();
        parts.sort();
        assert_eq!(parts, vec![p(0, 1, 0), p(1, 0, 0)]);
        let w = decompose_in_simplex(&s, &p(0, 0, 0), 3).unwrap();
        assert_eq!(w.parts, vec![p(0, 0, 0); 3]);
        assert!(matches!(decompose_in_simplex(&s, &p(2, 2, 0), 3), Err(Error::OutsideDilate { .. })));
        let bad = Simplex::new([p(0, 0, 0), p(1, 0, 0), p(0, 0, 1), p(1, 2, 1)]);
        assert!(matches!(decompose_in_simplex(&bad, &p(1, 1, 1), 2), Err(Error::NotUnimodular(_))));
    }

    #[test]
    fn parallelepiped_decomposition() {
        let q = Parallelepiped::unit_cube(p(0, 0, 0));
        let w = decompose_in_parallelepiped(&q, &p(1, 2, 1), 2).unwrap();
        assert!(w.verify(&p(1, 2, 1), |x| q.contains(&x.to_rational())));
        let cs = Parallelepiped::new(p(-1, -1, -1), p(1, 0, 0), p(0, 1, 0), p(1, 1, 2)).unwrap();
        let w = decompose_in_parallelepiped(&cs, &p(0, 0, 0), 1).unwrap();
        assert_eq!(w.parts, vec![p(0, 0, 0)]);
        assert!(matches!(
            decompose_in_parallelepiped(&q, &p(3, 0, 0), 2),
            Err(Error::OutsideDilate { .. })
        ));
    }

    #[test]
    fn exhaustive_reports_impossibility() {
        assert!(matches!(
            decompose_exhaustive(&counterexample(), &p(1, 1, 1), 2),
            Err(Error::NoDecomposition(_))
        ));
        let w = decompose_exhaustive(&cube(), &p(1, 0, 2), 2).unwrap();
        assert!(w.verify(&p(1, 0, 2), |x| cube().contains_lattice(x)));
    }

    #[test]
    fn volumes() {
        assert_eq!(normalized_volume(&cube()), BigInt::from(48));
        assert_eq!(normalized_volume(&unimodular()), BigInt::one());
        assert_eq!(normalized_volume(&counterexample()), BigInt::from(2));
    }
}
