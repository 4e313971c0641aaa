use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::hull;
use crate::lattice::{primitive, qi, LatticePoint, LinearForm, RationalPoint};

/// A facet `{x : normal·x = offset}` of a polytope lying in `{normal·x ≥ offset}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    /// Primitive inward normal.
    pub normal: LinearForm,
    pub offset: BigInt,
    /// Vertex indices, counterclockwise seen from outside, starting at the
    /// lexicographically smallest vertex.
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub ends: [usize; 2],
    pub facets: [usize; 2],
}

/// A 3-dimensional lattice polytope with both representations and the incidences
/// between vertices, edges and facets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope3 {
    vertices: Vec<LatticePoint>,
    facets: Vec<Facet>,
    edges: Vec<Edge>,
    vertex_edges: Vec<Vec<usize>>,
}

/// Result of shooting the ray `t·v` from an interior origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayExit {
    pub t: BigRational,
    pub point: RationalPoint,
    /// All facets attaining the exit parameter, ascending.
    pub facets: Vec<usize>,
}

/// Orders coplanar points in strictly convex position counterclockwise around `normal`.
fn order_ccw(points: &[&LatticePoint], normal: &LatticePoint) -> Vec<usize> {
    let k = BigInt::from(points.len());
    let sum = points
        .iter()
        .fold(LatticePoint::zero(), |acc, p| &acc + *p);
    let d: Vec<LatticePoint> = points.iter().map(|p| &p.scale(&k) - &sum).collect();
    let r = d[0].clone();
    let half = |v: &LatticePoint| -> u8 {
        let cr = r.cross(v).dot(normal);
        if cr.is_positive() || (cr.is_zero() && r.dot(v).is_positive()) {
            0
        } else {
            1
        }
    };
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&i, &j| {
        let (hi, hj) = (half(&d[i]), half(&d[j]));
        if hi != hj {
            return hi.cmp(&hj);
        }
        let c = d[i].cross(&d[j]).dot(normal);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    });
    idx
}

impl Polytope3 {
    /// Rebuilds the face lattice from facet planes and a point set containing the vertices.
    pub(crate) fn from_planes(points: &[LatticePoint], planes: Vec<(LinearForm, BigInt)>) -> Result<Self> {
        let mut vertices: Vec<LatticePoint> = points
            .iter()
            .filter(|p| planes.iter().filter(|(a, c)| &a.eval(p) == c).count() >= 3)
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        vertices.sort();
        let mut facets = Vec::with_capacity(planes.len());
        for (a, c) in planes {
            let on: Vec<usize> = (0..vertices.len()).filter(|&i| a.eval(&vertices[i]) == c).collect();
            let pts: Vec<&LatticePoint> = on.iter().map(|&i| &vertices[i]).collect();
            let outward = -a.coeffs();
            let order = order_ccw(&pts, &outward);
            let mut cyc: Vec<usize> = order.into_iter().map(|k| on[k]).collect();
            let start = cyc.iter().enumerate().min_by_key(|(_, &v)| v).map(|(i, _)| i).unwrap_or(0);
            cyc.rotate_left(start);
            facets.push(Facet {
                normal: a,
                offset: c,
                vertices: cyc,
            });
        }
        let mut edge_map: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (fi, f) in facets.iter().enumerate() {
            let n = f.vertices.len();
            for k in 0..n {
                let (a, b) = (f.vertices[k], f.vertices[(k + 1) % n]);
                edge_map.entry((a.min(b), a.max(b))).or_default().push(fi);
            }
        }
        let mut edges = Vec::with_capacity(edge_map.len());
        for ((a, b), fs) in edge_map {
            if fs.len() != 2 {
                return Err(Error::DegenerateInput { dimension: 2 });
            }
            edges.push(Edge {
                ends: [a, b],
                facets: [fs[0], fs[1]],
            });
        }
        let mut vertex_edges = vec![Vec::new(); vertices.len()];
        for (ei, e) in edges.iter().enumerate() {
            vertex_edges[e.ends[0]].push(ei);
            vertex_edges[e.ends[1]].push(ei);
        }
        let p = Polytope3 {
            vertices,
            facets,
            edges,
            vertex_edges,
        };
        debug_assert_eq!(p.euler_characteristic(), 2);
        Ok(p)
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex(&self, i: usize) -> &LatticePoint {
        &self.vertices[i]
    }

    pub fn vertex_index(&self, v: &LatticePoint) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }

    pub fn euler_characteristic(&self) -> isize {
        self.vertices.len() as isize - self.edges.len() as isize + self.facets.len() as isize
    }

    /// Edges incident to vertex `i`.
    pub fn vertex_edges(&self, i: usize) -> &[usize] {
        &self.vertex_edges[i]
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        self.vertex_edges[i]
            .iter()
            .map(|&e| {
                let [a, b] = self.edges[e].ends;
                if a == i {
                    b
                } else {
                    a
                }
            })
            .collect()
    }

    /// Primitive edge directions leaving vertex `i`, in neighbor order.
    pub fn edge_directions(&self, i: usize) -> Vec<LatticePoint> {
        self.neighbors(i)
            .into_iter()
            .map(|j| primitive(&(&self.vertices[j] - &self.vertices[i])).expect("distinct vertices"))
            .collect()
    }

    /// Lattice length (number of lattice steps) of edge `e`.
    pub fn edge_lattice_length(&self, e: usize) -> BigInt {
        let [a, b] = self.edges[e].ends;
        (&self.vertices[b] - &self.vertices[a]).content()
    }

    pub fn contains(&self, x: &RationalPoint) -> bool {
        self.facets
            .iter()
            .all(|f| f.normal.eval_rational(x) >= qi(&f.offset))
    }

    /// Whether `p ∈ n·P`, i.e. `p / n ∈ P`.
    pub fn contains_scaled(&self, p: &LatticePoint, n: &BigInt) -> bool {
        self.facets
            .iter()
            .all(|f| f.normal.eval(p) >= &f.offset * n)
    }

    pub fn contains_lattice(&self, p: &LatticePoint) -> bool {
        self.facets.iter().all(|f| f.normal.eval(p) >= f.offset)
    }

    /// Componentwise bounding box of the vertices.
    pub fn bounding_box(&self) -> (LatticePoint, LatticePoint) {
        let mut lo = self.vertices[0].clone();
        let mut hi = self.vertices[0].clone();
        for v in &self.vertices[1..] {
            lo = LatticePoint::new(lo.x.clone().min(v.x.clone()), lo.y.clone().min(v.y.clone()), lo.z.clone().min(v.z.clone()));
            hi = LatticePoint::new(hi.x.clone().max(v.x.clone()), hi.y.clone().max(v.y.clone()), hi.z.clone().max(v.z.clone()));
        }
        (lo, hi)
    }

    /// All lattice points, lexicographically sorted.
    pub fn lattice_points(&self) -> Vec<LatticePoint> {
        let (lo, hi) = self.bounding_box();
        scan_box(&lo, &hi, |p| self.contains_lattice(p))
    }

    /// The dilate `k·P` for `k ≥ 1`.
    pub fn dilate(&self, k: &BigInt) -> Polytope3 {
        assert!(k.is_positive(), "dilation factor must be positive");
        Polytope3 {
            vertices: self.vertices.iter().map(|v| v.scale(k)).collect(),
            facets: self
                .facets
                .iter()
                .map(|f| Facet {
                    normal: f.normal.clone(),
                    offset: &f.offset * k,
                    vertices: f.vertices.clone(),
                })
                .collect(),
            edges: self.edges.clone(),
            vertex_edges: self.vertex_edges.clone(),
        }
    }

    pub fn translate(&self, t: &LatticePoint) -> Polytope3 {
        let pts: Vec<LatticePoint> = self.vertices.iter().map(|v| v + t).collect();
        hull::convex_hull3(&pts).expect("translate preserves dimension")
    }

    pub fn negate(&self) -> Polytope3 {
        let pts: Vec<LatticePoint> = self.vertices.iter().map(|v| -v).collect();
        hull::convex_hull3(&pts).expect("negation preserves dimension")
    }

    /// Index of the facet `-F` when it exists.
    pub fn antipodal_facet(&self, fi: usize) -> Option<usize> {
        let f = &self.facets[fi];
        let neg = f.normal.neg();
        self.facets
            .iter()
            .position(|g| g.normal == neg && g.offset == f.offset)
    }

    pub fn facet_vertices(&self, fi: usize) -> Vec<LatticePoint> {
        self.facets[fi].vertices.iter().map(|&i| self.vertices[i].clone()).collect()
    }

    /// `{a(v)}` over the vertices, deduplicated and ascending.
    pub fn special_values(&self, a: &LinearForm) -> Vec<BigInt> {
        self.vertices
            .iter()
            .map(|v| a.eval(v))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// `(min, max)` of `a` over the polytope.
    pub fn form_range(&self, a: &LinearForm) -> (BigInt, BigInt) {
        let vals = self.special_values(a);
        (vals[0].clone(), vals[vals.len() - 1].clone())
    }

    /// Whether the origin lies in the interior.
    pub fn origin_interior(&self) -> bool {
        self.facets.iter().all(|f| f.offset.is_negative())
    }

    /// Where the ray `{t·v : t ≥ 0}` leaves the polytope.
    pub fn ray_exit(&self, v: &RationalPoint) -> Result<RayExit> {
        if v.is_zero() {
            return Err(Error::ZeroDirection);
        }
        if !self.origin_interior() {
            return Err(Error::OriginNotInterior);
        }
        let mut best: Option<BigRational> = None;
        let mut hits: Vec<usize> = Vec::new();
        for (fi, f) in self.facets.iter().enumerate() {
            let av = f.normal.eval_rational(v);
            if !av.is_negative() {
                continue;
            }
            let t = qi(&f.offset) / av;
            match &best {
                Some(b) if &t > b => {}
                Some(b) if &t == b => hits.push(fi),
                _ => {
                    best = Some(t);
                    hits = vec![fi];
                }
            }
        }
        let t = best.expect("bounded polytope: some facet faces every direction");
        Ok(RayExit {
            point: v.scale(&t),
            t,
            facets: hits,
        })
    }
}

/// Lattice points of the box `[lo, hi]` passing `keep`, in lexicographic order.
pub(crate) fn scan_box(lo: &LatticePoint, hi: &LatticePoint, mut keep: impl FnMut(&LatticePoint) -> bool) -> Vec<LatticePoint> {
    let mut out = Vec::new();
    let mut x = lo.x.clone();
    while x <= hi.x {
        let mut y = lo.y.clone();
        while y <= hi.y {
            let mut z = lo.z.clone();
            while z <= hi.z {
                let p = LatticePoint::new(x.clone(), y.clone(), z.clone());
                if keep(&p) {
                    out.push(p);
                }
                z += BigInt::one();
            }
            y += BigInt::one();
        }
        x += BigInt::one();
    }
    out
}

/// `{a + b}` deduplicated and sorted.
pub fn minkowski_sum_points(a: &[LatticePoint], b: &[LatticePoint]) -> Vec<LatticePoint> {
    let mut s = BTreeSet::new();
    for p in a {
        for q in b {
            s.insert(p + q);
        }
    }
    s.into_iter().collect()
}

/// Convex hull of pairwise vertex sums.
pub fn minkowski_sum(p: &Polytope3, q: &Polytope3) -> Polytope3 {
    let pts = minkowski_sum_points(p.vertices(), q.vertices());
    hull::convex_hull3(&pts).expect("sum of full-dimensional polytopes is full-dimensional")
}
