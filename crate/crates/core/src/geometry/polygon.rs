use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::polytope::Polytope3;
use crate::lattice::{det_columns, plane_lattice_basis, qi, LatticePoint, LinearForm, RationalPoint};

/// A lattice point of a 2D chart.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Point2 {
    pub s: BigInt,
    pub t: BigInt,
}

impl Point2 {
    pub fn new(s: impl Into<BigInt>, t: impl Into<BigInt>) -> Self {
        Point2 { s: s.into(), t: t.into() }
    }

    pub fn to_rational(&self) -> RationalPoint2 {
        RationalPoint2 {
            s: qi(&self.s),
            t: qi(&self.t),
        }
    }

    pub fn sub(&self, o: &Point2) -> Point2 {
        Point2 {
            s: &self.s - &o.s,
            t: &self.t - &o.t,
        }
    }

    pub fn add(&self, o: &Point2) -> Point2 {
        Point2 {
            s: &self.s + &o.s,
            t: &self.t + &o.t,
        }
    }

    pub fn neg(&self) -> Point2 {
        Point2 {
            s: -&self.s,
            t: -&self.t,
        }
    }

    pub fn cross(&self, o: &Point2) -> BigInt {
        &self.s * &o.t - &self.t * &o.s
    }

    pub fn norm2(&self) -> BigInt {
        &self.s * &self.s + &self.t * &self.t
    }
}

impl fmt::Debug for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.s, self.t)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint2 {
    pub s: BigRational,
    pub t: BigRational,
}

impl RationalPoint2 {
    pub fn new(s: BigRational, t: BigRational) -> Self {
        RationalPoint2 { s, t }
    }

    pub fn sub(&self, o: &RationalPoint2) -> RationalPoint2 {
        RationalPoint2 {
            s: &self.s - &o.s,
            t: &self.t - &o.t,
        }
    }

    pub fn cross(&self, o: &RationalPoint2) -> BigRational {
        &self.s * &o.t - &self.t * &o.s
    }

    pub fn is_integral(&self) -> bool {
        self.s.is_integer() && self.t.is_integer()
    }
}

impl fmt::Debug for RationalPoint2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.s, self.t)
    }
}

/// Orientation of `c` relative to the directed line `a → b` (twice the signed area).
pub fn orient2(a: &RationalPoint2, b: &RationalPoint2, c: &RationalPoint2) -> BigRational {
    b.sub(a).cross(&c.sub(a))
}

/// An affine lattice chart `(s, t) ↦ origin + s·u + t·v` of the plane `{normal·x = level}`.
///
/// `(u, v)` is a basis of the direction lattice and is oriented counterclockwise when seen
/// from the side `-normal` points to (the outside, for facet planes).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chart {
    pub origin: LatticePoint,
    pub u: LatticePoint,
    pub v: LatticePoint,
    pub normal: LinearForm,
}

impl Chart {
    pub fn for_plane(normal: &LinearForm, level: &BigInt) -> Result<Chart> {
        let b = plane_lattice_basis(normal, level)?;
        let (u, v) = if b.u.cross(&b.v).dot(normal.coeffs()).is_negative() {
            (b.u, b.v)
        } else {
            (b.v, b.u)
        };
        Ok(Chart {
            origin: b.origin,
            u,
            v,
            normal: normal.clone(),
        })
    }

    pub fn to_3d(&self, p: &Point2) -> LatticePoint {
        &(&self.origin + &self.u.scale(&p.s)) + &self.v.scale(&p.t)
    }

    pub fn to_3d_rational(&self, p: &RationalPoint2) -> RationalPoint {
        let o = self.origin.to_rational();
        let a = self.u.to_rational().scale(&p.s);
        let b = self.v.to_rational().scale(&p.t);
        &(&o + &a) + &b
    }

    /// Chart coordinates of the projection of `x` (along the normal) onto the plane.
    pub fn coords(&self, x: &RationalPoint) -> RationalPoint2 {
        self.linear_coords(&(x - &self.origin.to_rational()))
    }

    /// Coordinates of a direction vector in the basis `(u, v)`, dropping its normal part.
    pub fn linear_coords(&self, d: &RationalPoint) -> RationalPoint2 {
        let (num, den) = d.to_scaled();
        let n = self.normal.coeffs();
        let base = det_columns(&self.u, &self.v, n);
        let s = det_columns(&num, &self.v, n);
        let t = det_columns(&self.u, &num, n);
        let den = &den * &base;
        RationalPoint2 {
            s: BigRational::new(s, den.clone()),
            t: BigRational::new(t, den),
        }
    }

    pub fn lattice_coords(&self, x: &LatticePoint) -> Option<Point2> {
        let c = self.coords(&x.to_rational());
        c.is_integral().then(|| Point2 {
            s: c.s.to_integer(),
            t: c.t.to_integer(),
        })
    }
}

/// Convex hull of 2D points: counterclockwise, no collinear points, starting at the
/// lexicographic minimum. Returns indices into `pts`.
pub fn convex_hull2(pts: &[RationalPoint2]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    idx.sort_by(|&a, &b| pts[a].cmp(&pts[b]));
    idx.dedup_by(|a, b| pts[*a] == pts[*b]);
    if idx.len() <= 2 {
        return idx;
    }
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2
            && !orient2(&pts[lower[lower.len() - 2]], &pts[lower[lower.len() - 1]], &pts[i]).is_positive()
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2
            && !orient2(&pts[upper[upper.len() - 2]], &pts[upper[upper.len() - 1]], &pts[i]).is_positive()
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() == 2 && pts[lower[0]] == pts[lower[1]] {
        lower.pop();
    }
    lower
}

/// A lattice polygon living in a lattice plane of `R³`, with an exact lattice chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedPolygon {
    /// Counterclockwise chart coordinates of the vertices, starting at the lexicographic
    /// minimum.
    pub vertices2d: Vec<Point2>,
    pub chart: Chart,
    pub level: BigInt,
}

impl EmbeddedPolygon {
    pub fn from_chart_vertices(chart: Chart, level: BigInt, pts: &[Point2]) -> EmbeddedPolygon {
        let rq: Vec<RationalPoint2> = pts.iter().map(Point2::to_rational).collect();
        let hull = convex_hull2(&rq);
        EmbeddedPolygon {
            vertices2d: hull.into_iter().map(|i| pts[i].clone()).collect(),
            chart,
            level,
        }
    }

    pub fn vertices3d(&self) -> Vec<LatticePoint> {
        self.vertices2d.iter().map(|p| self.chart.to_3d(p)).collect()
    }

    pub fn is_two_dimensional(&self) -> bool {
        self.vertices2d.len() >= 3
    }

    /// Twice the Euclidean area in chart coordinates (= normalized lattice area).
    pub fn twice_area(&self) -> BigInt {
        let n = self.vertices2d.len();
        (0..n).fold(BigInt::zero(), |acc, i| {
            acc + self.vertices2d[i].cross(&self.vertices2d[(i + 1) % n])
        })
    }

    pub fn is_unimodular_triangle(&self) -> bool {
        self.vertices2d.len() == 3 && self.twice_area().is_one()
    }

    pub fn contains2(&self, p: &RationalPoint2) -> bool {
        polygon_contains(&self.vertices2d, p)
    }

    /// Lattice points in chart coordinates, lexicographically sorted.
    pub fn lattice_points(&self) -> Vec<Point2> {
        let lo_s = self.vertices2d.iter().map(|p| &p.s).min().unwrap().clone();
        let hi_s = self.vertices2d.iter().map(|p| &p.s).max().unwrap().clone();
        let lo_t = self.vertices2d.iter().map(|p| &p.t).min().unwrap().clone();
        let hi_t = self.vertices2d.iter().map(|p| &p.t).max().unwrap().clone();
        let mut out = Vec::new();
        let mut s = lo_s;
        while s <= hi_s {
            let mut t = lo_t.clone();
            while t <= hi_t {
                let p = Point2 { s: s.clone(), t: t.clone() };
                if self.contains2(&p.to_rational()) {
                    out.push(p);
                }
                t += BigInt::one();
            }
            s += BigInt::one();
        }
        out
    }
}

/// Membership in a counterclockwise convex lattice polygon (boundary included). Handles
/// degenerate point and segment polygons.
pub fn polygon_contains(verts: &[Point2], p: &RationalPoint2) -> bool {
    let rv: Vec<RationalPoint2> = verts.iter().map(Point2::to_rational).collect();
    rational_polygon_contains(&rv, p)
}

pub fn rational_polygon_contains(rv: &[RationalPoint2], p: &RationalPoint2) -> bool {
    match rv.len() {
        0 => false,
        1 => &rv[0] == p,
        2 => {
            orient2(&rv[0], &rv[1], p).is_zero() && {
                let lo = rv[0].clone().min(rv[1].clone());
                let hi = rv[0].clone().max(rv[1].clone());
                &lo <= p && p <= &hi
            }
        }
        n => (0..n).all(|i| !orient2(&rv[i], &rv[(i + 1) % n], p).is_negative()),
    }
}

/// The facet `fi` of `p` as an embedded lattice polygon.
pub fn facet_polygon(p: &Polytope3, fi: usize) -> EmbeddedPolygon {
    let f = &p.facets()[fi];
    let chart = Chart::for_plane(&f.normal, &f.offset).expect("facet normals are primitive");
    let pts: Vec<Point2> = f
        .vertices
        .iter()
        .map(|&i| chart.lattice_coords(p.vertex(i)).expect("lattice chart"))
        .collect();
    EmbeddedPolygon::from_chart_vertices(chart, f.offset.clone(), &pts)
}

/// A convex polygon with rational vertices in the plane `{form·x = level}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolygon {
    /// Counterclockwise in the chart of `form`, starting at the lexicographically smallest
    /// vertex. May degenerate to a segment or a point.
    pub vertices: Vec<RationalPoint>,
    pub form: LinearForm,
    pub level: BigRational,
}

impl RationalPolygon {
    pub fn is_two_dimensional(&self) -> bool {
        self.vertices.len() >= 3
    }

    /// The linear chart of the direction plane shared by all slices of `form`.
    pub fn chart(&self) -> Chart {
        Chart::for_plane(&self.form, &BigInt::zero()).expect("slice forms are primitive")
    }

    pub fn coords_in(&self, chart: &Chart) -> Vec<RationalPoint2> {
        self.vertices.iter().map(|x| chart.linear_coords(x)).collect()
    }

    pub fn lattice_vertices(&self) -> Option<Vec<LatticePoint>> {
        self.vertices.iter().map(RationalPoint::to_lattice).collect()
    }
}

/// `P ∩ {a(x) = c}`.
pub fn slice(p: &Polytope3, a: &LinearForm, c: &BigRational) -> Result<RationalPolygon> {
    if a.coeffs().is_zero() {
        return Err(Error::ZeroVector);
    }
    let (lo, hi) = p.form_range(a);
    if c < &qi(&lo) || c > &qi(&hi) {
        return Err(Error::EmptySlice {
            level: c.to_string(),
            min: lo.to_string(),
            max: hi.to_string(),
        });
    }
    let g = a.coeffs().content();
    let form = LinearForm(LatticePoint::new(&a.0.x / &g, &a.0.y / &g, &a.0.z / &g));
    let level = c / qi(&g);

    let vals: Vec<BigRational> = p.vertices().iter().map(|v| qi(&a.eval(v))).collect();
    let mut pts: Vec<RationalPoint> = Vec::new();
    for (i, v) in p.vertices().iter().enumerate() {
        if &vals[i] == c {
            pts.push(v.to_rational());
        }
    }
    for e in p.edges() {
        let [i, j] = e.ends;
        let (vi, vj) = (&vals[i], &vals[j]);
        if (vi < c && c < vj) || (vj < c && c < vi) {
            let lam = (c - vi) / (vj - vi);
            let d = (p.vertex(j) - p.vertex(i)).to_rational().scale(&lam);
            pts.push(&p.vertex(i).to_rational() + &d);
        }
    }
    pts.sort();
    pts.dedup();
    let chart = Chart::for_plane(&form, &BigInt::zero())?;
    let coords: Vec<RationalPoint2> = pts.iter().map(|x| chart.linear_coords(x)).collect();
    let hull = convex_hull2(&coords);
    let mut vertices: Vec<RationalPoint> = hull.into_iter().map(|i| pts[i].clone()).collect();
    if let Some(start) = vertices.iter().enumerate().min_by(|a, b| a.1.cmp(b.1)).map(|(i, _)| i) {
        vertices.rotate_left(start);
    }
    Ok(RationalPolygon { vertices, form, level })
}

pub fn is_lattice_polygon(q: &RationalPolygon) -> bool {
    q.vertices.iter().all(RationalPoint::is_integral)
}

/// Integer rescaling of a rational 2D vector to its primitive direction.
pub(crate) fn primitive2(v: &RationalPoint2) -> Point2 {
    let d = v.s.denom().lcm(v.t.denom());
    let s = v.s.numer() * (&d / v.s.denom());
    let t = v.t.numer() * (&d / v.t.denom());
    let g = s.gcd(&t);
    Point2 { s: s / &g, t: t / &g }
}

pub(crate) fn angle_cmp(a: &Point2, b: &Point2) -> Ordering {
    let half = |p: &Point2| -> u8 {
        if p.t.is_positive() || (p.t.is_zero() && p.s.is_positive()) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| {
        let c = a.cross(b);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}
