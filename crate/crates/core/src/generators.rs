//! Test polytopes: dilated cubes, antipodal chiseling, the non-IDP simplex and seeded
//! random chisel sequences.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{check_centrally_symmetric, check_smooth};
use crate::covering::is_unimodular_triangle_facet;
use crate::error::{Error, Result};
use crate::geometry::{convex_hull3, Polytope3};
use crate::lattice::{is_unimodular_basis, LatticePoint};

/// `n·[−1,1]³`.
pub fn cube(n: i64) -> Result<Polytope3> {
    if n <= 0 {
        return Err(Error::InvalidParameter(format!("cube size must be positive, got {n}")));
    }
    let mut v = Vec::with_capacity(8);
    for x in [-n, n] {
        for y in [-n, n] {
            for z in [-n, n] {
                v.push(LatticePoint::new(x, y, z));
            }
        }
    }
    let c = convex_hull3(&v)?;
    debug_assert!(check_smooth(&c).is_smooth && check_centrally_symmetric(&c).origin_centered);
    Ok(c)
}

/// `conv((0,0,0), (1,0,0), (0,0,1), (1,2,1))`: a lattice simplex without IDP.
pub fn counterexample_simplex() -> Polytope3 {
    convex_hull3(&[
        LatticePoint::new(0, 0, 0),
        LatticePoint::new(1, 0, 0),
        LatticePoint::new(0, 0, 1),
        LatticePoint::new(1, 2, 1),
    ])
    .expect("full-dimensional")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiselSpec {
    pub vertex: LatticePoint,
    pub depth: BigInt,
    /// Also cut `−vertex`.
    pub antipodal: bool,
}

impl ChiselSpec {
    pub fn antipodal(vertex: LatticePoint) -> Self {
        ChiselSpec {
            vertex,
            depth: BigInt::one(),
            antipodal: true,
        }
    }
}

/// Checks the chisel preconditions at `v` and returns the new cut points.
fn cut_points(p: &Polytope3, v: &LatticePoint, depth: &BigInt) -> Result<Vec<LatticePoint>> {
    let vi = p.vertex_index(v).ok_or_else(|| Error::NotAVertex(v.to_string()))?;
    let dirs = p.edge_directions(vi);
    if dirs.len() != 3 {
        return Err(Error::NotSimpleVertex(v.to_string()));
    }
    if !is_unimodular_basis(&dirs[0], &dirs[1], &dirs[2]) {
        return Err(Error::NotSmooth(format!("vertex {v}")));
    }
    let min_len = depth + BigInt::one();
    if p.vertex_edges(vi).iter().any(|&e| p.edge_lattice_length(e) < min_len) {
        return Err(Error::ChiselTooDeep {
            vertex: v.to_string(),
            depth: depth.to_string(),
        });
    }
    Ok(dirs.iter().map(|u| v + &u.scale(depth)).collect())
}

fn chisel_one(p: &Polytope3, v: &LatticePoint, depth: &BigInt) -> Result<Polytope3> {
    let cuts = cut_points(p, v, depth)?;
    let mut pts: Vec<LatticePoint> = p.vertices().iter().filter(|w| *w != v).cloned().collect();
    pts.extend(cuts.iter().cloned());
    let q = convex_hull3(&pts)?;
    if depth.is_one() {
        let ok = q.facets().iter().enumerate().any(|(fi, f)| {
            f.vertices.len() == 3
                && is_unimodular_triangle_facet(&q, fi)
                && cuts.iter().all(|c| q.facet_vertices(fi).contains(c))
        });
        if !ok {
            return Err(Error::NotSmooth(format!("chisel at {v} did not produce a unimodular triangle")));
        }
    }
    Ok(q)
}

/// Cuts off `conv(v, v + depth·u_1, v + depth·u_2, v + depth·u_3)`. For depth 1 the new
/// facets are checked to be unimodular triangles and the result smooth.
pub fn chisel(p: &Polytope3, spec: &ChiselSpec) -> Result<Polytope3> {
    if !spec.depth.is_positive() {
        return Err(Error::InvalidParameter(format!("chisel depth {} must be positive", spec.depth)));
    }
    let neg = -&spec.vertex;
    if spec.antipodal && p.vertex_index(&neg).is_none() {
        return Err(Error::NotAVertex(neg.to_string()));
    }
    let mut q = chisel_one(p, &spec.vertex, &spec.depth)?;
    if spec.antipodal {
        q = chisel_one(&q, &neg, &spec.depth)?;
    }
    if spec.depth.is_one() {
        let sm = check_smooth(&q);
        if !sm.is_smooth {
            return Err(Error::NotSmooth(format!("chisel at {} broke smoothness", spec.vertex)));
        }
    }
    Ok(q)
}

/// Vertices `v` with `v > −v` where an antipodal depth-1 chisel is allowed, ascending.
pub fn eligible_chisel_vertices(p: &Polytope3) -> Vec<LatticePoint> {
    let one = BigInt::one();
    p.vertices()
        .iter()
        .filter(|v| {
            let neg = -*v;
            **v > neg
                && p.vertex_index(&neg).is_some()
                && cut_points(p, v, &one).is_ok()
                && !p.neighbors(p.vertex_index(v).unwrap()).contains(&p.vertex_index(&neg).unwrap())
        })
        .cloned()
        .collect()
}

/// `cube(n)` followed by up to `chisels` antipodal depth-1 chisels at vertex pairs drawn
/// with ChaCha8 seeded by `seed`.
pub fn random_cs_smooth(seed: u64, n: i64, chisels: usize) -> Result<Polytope3> {
    let mut p = cube(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..chisels {
        let mut candidates = eligible_chisel_vertices(&p);
        let mut next = None;
        while !candidates.is_empty() {
            let k = rng.gen_range(0..candidates.len());
            let v = candidates.remove(k);
            if let Ok(q) = chisel(&p, &ChiselSpec::antipodal(v)) {
                next = Some(q);
                break;
            }
        }
        match next {
            Some(q) => p = q,
            None => break,
        }
    }
    if !check_smooth(&p).is_smooth || !check_centrally_symmetric(&p).origin_centered {
        return Err(Error::NotSmooth(format!("random polytope for seed {seed}")));
    }
    Ok(p)
}

/// A named corpus of centrally symmetric smooth polytopes: `cube(1..=3)` and 23 seeded
/// random chisel sequences.
pub fn corpus() -> Vec<(String, Polytope3)> {
    let mut out = Vec::new();
    for n in 1..=3 {
        out.push((format!("cube({n})"), cube(n).expect("positive size")));
    }
    for seed in 0..23u64 {
        let n = 2 + (seed % 2) as i64;
        let c = 1 + (seed % 4) as usize;
        let p = random_cs_smooth(seed, n, c).expect("generator output is validated");
        out.push((format!("random(seed={seed}, n={n}, chisels={c})"), p));
    }
    out
}
