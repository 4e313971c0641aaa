//! Exact integer and rational linear algebra on `Z³` and `Q³`.
//!
//! Everything is arbitrary precision. Chisel sequences and dilations make
//! coordinates grow, and a silent overflow would falsify a certificate.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A point (or vector) of the integer lattice `Z³`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LatticePoint {
    pub x: BigInt,
    pub y: BigInt,
    pub z: BigInt,
}

impl LatticePoint {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>, z: impl Into<BigInt>) -> Self {
        LatticePoint {
            x: x.into(),
            y: y.into(),
            z: z.into(),
        }
    }

    pub fn zero() -> Self {
        LatticePoint::default()
    }

    pub fn from_coords(c: [BigInt; 3]) -> Self {
        let [x, y, z] = c;
        LatticePoint { x, y, z }
    }

    pub fn coords(&self) -> [&BigInt; 3] {
        [&self.x, &self.y, &self.z]
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn dot(&self, other: &LatticePoint) -> BigInt {
        &self.x * &other.x + &self.y * &other.y + &self.z * &other.z
    }

    pub fn cross(&self, other: &LatticePoint) -> LatticePoint {
        LatticePoint {
            x: &self.y * &other.z - &self.z * &other.y,
            y: &self.z * &other.x - &self.x * &other.z,
            z: &self.x * &other.y - &self.y * &other.x,
        }
    }

    pub fn scale(&self, k: &BigInt) -> LatticePoint {
        LatticePoint {
            x: &self.x * k,
            y: &self.y * k,
            z: &self.z * k,
        }
    }

    /// gcd of the absolute values of the coordinates (0 for the zero vector).
    pub fn content(&self) -> BigInt {
        self.x.gcd(&self.y).gcd(&self.z)
    }

    pub fn to_rational(&self) -> RationalPoint {
        RationalPoint {
            x: BigRational::from_integer(self.x.clone()),
            y: BigRational::from_integer(self.y.clone()),
            z: BigRational::from_integer(self.z.clone()),
        }
    }

    /// Squared Euclidean norm.
    pub fn norm2(&self) -> BigInt {
        self.dot(self)
    }
}

impl fmt::Debug for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

macro_rules! lattice_binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl<'a> $tr<&'a LatticePoint> for &'a LatticePoint {
            type Output = LatticePoint;
            fn $m(self, o: &'a LatticePoint) -> LatticePoint {
                LatticePoint { x: &self.x $op &o.x, y: &self.y $op &o.y, z: &self.z $op &o.z }
            }
        }
        impl $tr<LatticePoint> for LatticePoint {
            type Output = LatticePoint;
            fn $m(self, o: LatticePoint) -> LatticePoint {
                LatticePoint { x: self.x $op o.x, y: self.y $op o.y, z: self.z $op o.z }
            }
        }
        impl<'a> $tr<&'a LatticePoint> for LatticePoint {
            type Output = LatticePoint;
            fn $m(self, o: &'a LatticePoint) -> LatticePoint {
                LatticePoint { x: self.x $op &o.x, y: self.y $op &o.y, z: self.z $op &o.z }
            }
        }
    };
}
lattice_binop!(Add, add, +);
lattice_binop!(Sub, sub, -);

impl Neg for LatticePoint {
    type Output = LatticePoint;
    fn neg(self) -> LatticePoint {
        LatticePoint {
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }
}

impl Neg for &LatticePoint {
    type Output = LatticePoint;
    fn neg(self) -> LatticePoint {
        LatticePoint {
            x: -&self.x,
            y: -&self.y,
            z: -&self.z,
        }
    }
}

/// A point of `Q³`; every coordinate is kept in lowest terms with a positive
/// denominator, so derived equality is exact equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint {
    pub x: BigRational,
    pub y: BigRational,
    pub z: BigRational,
}

impl RationalPoint {
    pub fn new(x: BigRational, y: BigRational, z: BigRational) -> Self {
        RationalPoint { x, y, z }
    }

    /// Convenience constructor from `(numerator, denominator)` pairs.
    pub fn from_fractions(c: [(i64, i64); 3]) -> Self {
        let q = |(n, d): (i64, i64)| BigRational::new(BigInt::from(n), BigInt::from(d));
        RationalPoint {
            x: q(c[0]),
            y: q(c[1]),
            z: q(c[2]),
        }
    }

    pub fn zero() -> Self {
        RationalPoint {
            x: BigRational::zero(),
            y: BigRational::zero(),
            z: BigRational::zero(),
        }
    }

    pub fn coords(&self) -> [&BigRational; 3] {
        [&self.x, &self.y, &self.z]
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer() && self.z.is_integer()
    }

    pub fn to_lattice(&self) -> Option<LatticePoint> {
        if self.is_integral() {
            Some(LatticePoint {
                x: self.x.to_integer(),
                y: self.y.to_integer(),
                z: self.z.to_integer(),
            })
        } else {
            None
        }
    }

    /// The point `p / n`.
    pub fn from_scaled(p: &LatticePoint, n: &BigInt) -> Self {
        RationalPoint {
            x: BigRational::new(p.x.clone(), n.clone()),
            y: BigRational::new(p.y.clone(), n.clone()),
            z: BigRational::new(p.z.clone(), n.clone()),
        }
    }

    /// Writes the point as `p / d` with `p` integral and `d > 0` minimal.
    pub fn to_scaled(&self) -> (LatticePoint, BigInt) {
        let d = self.x.denom().lcm(self.y.denom()).lcm(self.z.denom());
        let num = |q: &BigRational| q.numer() * (&d / q.denom());
        (
            LatticePoint {
                x: num(&self.x),
                y: num(&self.y),
                z: num(&self.z),
            },
            d,
        )
    }

    pub fn dot_int(&self, a: &LatticePoint) -> BigRational {
        &self.x * BigRational::from_integer(a.x.clone())
            + &self.y * BigRational::from_integer(a.y.clone())
            + &self.z * BigRational::from_integer(a.z.clone())
    }

    pub fn scale(&self, k: &BigRational) -> RationalPoint {
        RationalPoint {
            x: &self.x * k,
            y: &self.y * k,
            z: &self.z * k,
        }
    }

    pub fn add_int(&self, v: &LatticePoint) -> RationalPoint {
        self + &v.to_rational()
    }
}

impl fmt::Debug for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

impl<'a> Add<&'a RationalPoint> for &'a RationalPoint {
    type Output = RationalPoint;
    fn add(self, o: &'a RationalPoint) -> RationalPoint {
        RationalPoint {
            x: &self.x + &o.x,
            y: &self.y + &o.y,
            z: &self.z + &o.z,
        }
    }
}

impl<'a> Sub<&'a RationalPoint> for &'a RationalPoint {
    type Output = RationalPoint;
    fn sub(self, o: &'a RationalPoint) -> RationalPoint {
        RationalPoint {
            x: &self.x - &o.x,
            y: &self.y - &o.y,
            z: &self.z - &o.z,
        }
    }
}

impl Neg for &RationalPoint {
    type Output = RationalPoint;
    fn neg(self) -> RationalPoint {
        RationalPoint {
            x: -&self.x,
            y: -&self.y,
            z: -&self.z,
        }
    }
}

impl<'a> Mul<&'a BigRational> for &'a RationalPoint {
    type Output = RationalPoint;
    fn mul(self, k: &'a BigRational) -> RationalPoint {
        self.scale(k)
    }
}

/// A 3×3 integer matrix stored by columns.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntMatrix3 {
    pub cols: [LatticePoint; 3],
}

impl IntMatrix3 {
    pub fn from_columns(c0: LatticePoint, c1: LatticePoint, c2: LatticePoint) -> Self {
        IntMatrix3 { cols: [c0, c1, c2] }
    }

    pub fn identity() -> Self {
        IntMatrix3::from_columns(
            LatticePoint::new(1, 0, 0),
            LatticePoint::new(0, 1, 0),
            LatticePoint::new(0, 0, 1),
        )
    }

    /// Entry in row `i`, column `j`.
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        self.cols[j].coords()[i]
    }

    pub fn det(&self) -> BigInt {
        det3(self)
    }

    pub fn mul_vec(&self, v: &LatticePoint) -> LatticePoint {
        &(&self.cols[0].scale(&v.x) + &self.cols[1].scale(&v.y)) + &self.cols[2].scale(&v.z)
    }

    pub fn mul(&self, other: &IntMatrix3) -> IntMatrix3 {
        IntMatrix3 {
            cols: [
                self.mul_vec(&other.cols[0]),
                self.mul_vec(&other.cols[1]),
                self.mul_vec(&other.cols[2]),
            ],
        }
    }
}

/// A linear functional `x ↦ a·x` with integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LinearForm(pub LatticePoint);

impl LinearForm {
    pub fn new(a: LatticePoint) -> Self {
        LinearForm(a)
    }

    pub fn coeffs(&self) -> &LatticePoint {
        &self.0
    }

    pub fn eval(&self, x: &LatticePoint) -> BigInt {
        self.0.dot(x)
    }

    pub fn eval_rational(&self, x: &RationalPoint) -> BigRational {
        x.dot_int(&self.0)
    }

    pub fn is_primitive(&self) -> bool {
        self.0.content().is_one()
    }

    pub fn neg(&self) -> LinearForm {
        LinearForm(-&self.0)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `v / gcd(v)`; the direction is preserved.
pub fn primitive(v: &LatticePoint) -> Result<LatticePoint> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let g = v.content();
    Ok(LatticePoint {
        x: &v.x / &g,
        y: &v.y / &g,
        z: &v.z / &g,
    })
}

pub fn det3(m: &IntMatrix3) -> BigInt {
    let [a, b, c] = &m.cols;
    a.dot(&b.cross(c))
}

pub fn det_columns(a: &LatticePoint, b: &LatticePoint, c: &LatticePoint) -> BigInt {
    a.dot(&b.cross(c))
}

/// True iff `e1, e2, e3` is a basis of `Z³`.
pub fn is_unimodular_basis(e1: &LatticePoint, e2: &LatticePoint, e3: &LatticePoint) -> bool {
    det_columns(e1, e2, e3).abs().is_one()
}

fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    let (mut g, mut x, mut y) = (e.gcd, e.x, e.y);
    if g.is_negative() {
        g = -g;
        x = -x;
        y = -y;
    }
    debug_assert_eq!(a * &x + b * &y, g);
    (g, x, y)
}

/// Column Hermite normal form: returns `(H, U)` with `H = M·U`, `U` unimodular and `H`
/// lower triangular (column echelon for singular `M`) with positive pivots and the
/// entries left of each pivot reduced into `[0, pivot)`.
pub fn hnf(m: &IntMatrix3) -> (IntMatrix3, IntMatrix3) {
    let mut h: [[BigInt; 3]; 3] = std::array::from_fn(|j| m.cols[j].coords().map(Clone::clone));
    let mut u: [[BigInt; 3]; 3] =
        std::array::from_fn(|j| std::array::from_fn(|i| if i == j { BigInt::one() } else { BigInt::zero() }));

    // column ops act on h[col] and u[col] simultaneously
    fn combine(cols: &mut [[BigInt; 3]; 3], k: usize, j: usize, x: &BigInt, y: &BigInt, p: &BigInt, q: &BigInt) {
        // new_k = x*col_k + y*col_j ; new_j = p*col_k + q*col_j
        let ck = cols[k].clone();
        let cj = cols[j].clone();
        for i in 0..3 {
            cols[k][i] = x * &ck[i] + y * &cj[i];
            cols[j][i] = p * &ck[i] + q * &cj[i];
        }
    }

    let mut k = 0usize;
    for row in 0..3 {
        if k == 3 {
            break;
        }
        for j in (k + 1)..3 {
            if h[j][row].is_zero() {
                continue;
            }
            let a = h[k][row].clone();
            let b = h[j][row].clone();
            let (g, x, y) = ext_gcd(&a, &b);
            let p = -(&b / &g);
            let q = &a / &g;
            combine(&mut h, k, j, &x, &y, &p, &q);
            combine(&mut u, k, j, &x, &y, &p, &q);
        }
        if h[k][row].is_zero() {
            continue;
        }
        if h[k][row].is_negative() {
            for i in 0..3 {
                h[k][i] = -&h[k][i];
                u[k][i] = -&u[k][i];
            }
        }
        let pivot = h[k][row].clone();
        for j in 0..k {
            let qt = h[j][row].div_floor(&pivot);
            if qt.is_zero() {
                continue;
            }
            for i in 0..3 {
                let t = &qt * &h[k][i];
                h[j][i] -= t;
                let t = &qt * &u[k][i];
                u[j][i] -= t;
            }
        }
        k += 1;
    }
    let to_mat = |c: [[BigInt; 3]; 3]| {
        let [c0, c1, c2] = c;
        IntMatrix3::from_columns(
            LatticePoint::from_coords(c0),
            LatticePoint::from_coords(c1),
            LatticePoint::from_coords(c2),
        )
    };
    (to_mat(h), to_mat(u))
}

/// Lattice data of the plane `{a(x) = c}`: a lattice point on it and a basis of the
/// rank-2 lattice `{a(x) = 0} ∩ Z³`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PlaneBasis {
    pub origin: LatticePoint,
    pub u: LatticePoint,
    pub v: LatticePoint,
    /// A lattice point with `a(w) = 1`; `(w, u, v)` is a basis of `Z³`.
    pub transversal: LatticePoint,
}

/// Sign-normalise: the first nonzero coordinate becomes positive.
fn sign_normalize(v: LatticePoint) -> LatticePoint {
    let first = v.coords().into_iter().find(|c| !c.is_zero()).cloned();
    match first {
        Some(c) if c.is_negative() => -v,
        _ => v,
    }
}

/// Gauss–Lagrange reduction of a 2D lattice basis embedded in `Z³`.
fn reduce_pair(mut u: LatticePoint, mut v: LatticePoint) -> (LatticePoint, LatticePoint) {
    loop {
        if v.norm2() < u.norm2() {
            std::mem::swap(&mut u, &mut v);
        }
        let nu = u.norm2();
        // rounded quotient <v,u>/<u,u>
        let two = BigInt::from(2);
        let q = (&two * v.dot(&u) + &nu).div_floor(&(&two * &nu));
        if q.is_zero() {
            break;
        }
        v = &v - &u.scale(&q);
        if v.norm2() >= nu {
            break;
        }
    }
    (u, v)
}

pub fn plane_lattice_basis(a: &LinearForm, c: &BigInt) -> Result<PlaneBasis> {
    if !a.is_primitive() {
        return Err(Error::NotPrimitive(a.to_string()));
    }
    let zero = LatticePoint::zero();
    let row = |i: usize| LatticePoint::new(a.0.coords()[i].clone(), 0, 0);
    let m = IntMatrix3::from_columns(row(0), row(1), row(2));
    let (h, u) = hnf(&m);
    debug_assert!(h.get(0, 0).is_one());
    let w = u.cols[0].clone();
    let (b1, b2) = reduce_pair(u.cols[1].clone(), u.cols[2].clone());
    let (b1, b2) = (sign_normalize(b1), sign_normalize(b2));
    let (bu, bv) = if b1 >= b2 { (b1, b2) } else { (b2, b1) };
    debug_assert!(bu != zero && bv != zero);
    debug_assert!(a.eval(&bu).is_zero() && a.eval(&bv).is_zero());
    Ok(PlaneBasis {
        origin: w.scale(c),
        u: bu,
        v: bv,
        transversal: w,
    })
}

/// Integer floor / ceil helpers for rationals.
pub fn floor_q(q: &BigRational) -> BigInt {
    q.floor().to_integer()
}

pub fn ceil_q(q: &BigRational) -> BigInt {
    q.ceil().to_integer()
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64, z: i64) -> LatticePoint {
        LatticePoint::new(x, y, z)
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive(&p(2, 4, 6)).unwrap(), p(1, 2, 3));
        assert_eq!(primitive(&p(1, 0, 0)).unwrap(), p(1, 0, 0));
        assert_eq!(primitive(&p(-3, 0, 6)).unwrap(), p(-1, 0, 2));
        assert_eq!(primitive(&p(0, 0, 0)), Err(Error::ZeroVector));
    }

    #[test]
    fn det_examples() {
        assert_eq!(det3(&IntMatrix3::identity()), BigInt::one());
        let m = IntMatrix3::from_columns(p(1, 0, 0), p(0, 1, 0), p(1, 1, 2));
        assert_eq!(det3(&m), BigInt::from(2));
        let m = IntMatrix3::from_columns(p(1, 0, 0), p(0, 0, 1), p(1, 2, 1));
        // cofactor expansion along the first column: 1*(0*1 - 1*2) = -2
        assert_eq!(det3(&m), BigInt::from(-2));
    }

    #[test]
    fn unimodular_examples() {
        assert!(is_unimodular_basis(&p(1, 0, 0), &p(0, 1, 0), &p(0, 0, 1)));
        assert!(!is_unimodular_basis(&p(1, 0, 0), &p(0, 0, 1), &p(1, 2, 1)));
        assert!(is_unimodular_basis(&p(1, 0, 0), &p(0, 1, 0), &p(1, 1, 1)));
    }

    fn is_hnf(h: &IntMatrix3) -> bool {
        for i in 0..3 {
            for j in (i + 1)..3 {
                if !h.get(i, j).is_zero() {
                    return false;
                }
            }
            let d = h.get(i, i);
            if d.is_zero() {
                continue;
            }
            if d.is_negative() {
                return false;
            }
            for j in 0..i {
                let e = h.get(i, j);
                if e.is_negative() || e >= d {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn hnf_examples() {
        let (h, u) = hnf(&IntMatrix3::identity());
        assert_eq!(h, IntMatrix3::identity());
        assert_eq!(u, IntMatrix3::identity());

        let d2 = IntMatrix3::from_columns(p(2, 0, 0), p(0, 2, 0), p(0, 0, 2));
        let (h, _) = hnf(&d2);
        assert_eq!(h, d2);

        let m = IntMatrix3::from_columns(p(1, 0, 0), p(0, 0, 1), p(1, 2, 1));
        let (h, u) = hnf(&m);
        assert!(is_hnf(&h));
        assert_eq!(m.mul(&u), h);
        assert!(det3(&u).abs().is_one());
        let diag = h.get(0, 0) * h.get(1, 1) * h.get(2, 2);
        assert_eq!(diag.abs(), BigInt::from(2));
    }

    #[test]
    fn plane_basis_examples() {
        let b = plane_lattice_basis(&LinearForm(p(0, 0, 1)), &BigInt::one()).unwrap();
        assert_eq!(b.origin, p(0, 0, 1));
        assert_eq!(b.u, p(1, 0, 0));
        assert_eq!(b.v, p(0, 1, 0));

        let a = LinearForm(p(1, 1, 1));
        let b = plane_lattice_basis(&a, &BigInt::zero()).unwrap();
        assert!(a.eval(&b.u).is_zero() && a.eval(&b.v).is_zero());
        // a lattice basis of a primitive plane has cross product equal to ±a
        let cr = b.u.cross(&b.v);
        assert!(cr == p(1, 1, 1) || cr == p(-1, -1, -1));
        assert!(det_columns(&b.transversal, &b.u, &b.v).abs().is_one());

        assert!(matches!(
            plane_lattice_basis(&LinearForm(p(2, 0, 0)), &BigInt::one()),
            Err(Error::NotPrimitive(_))
        ));
    }

    #[test]
    fn rational_scaling_roundtrip() {
        let x = RationalPoint::from_fractions([(1, 2), (-3, 4), (5, 1)]);
        let (num, d) = x.to_scaled();
        assert_eq!(d, BigInt::from(4));
        assert_eq!(num, p(2, -3, 20));
        assert_eq!(RationalPoint::from_scaled(&num, &d), x);
    }
}
