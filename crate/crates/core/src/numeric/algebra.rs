//! Floating-point `su(3)` with the inner product `<X, Y> = -Re tr(XY)`.
//!
//! All norms in this module use that normalization, so `|I_1|^2 = 2` and
//! `|I_2|^2 = 8`. Every formula downstream is scale covariant.

use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use nalgebra::Matrix3;
use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type M3 = Matrix3<Complex64>;

/// Tolerance for the membership checks on construction.
pub const MEMBERSHIP_TOL: f64 = 1e-12;

const SQRT2: f64 = std::f64::consts::SQRT_2;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn serialize_m3<S: Serializer>(m: &M3, s: S) -> std::result::Result<S::Ok, S::Error> {
    // row-major [[ [re, im], ... ], ...]
    let rows: Vec<Vec<[f64; 2]>> = (0..3)
        .map(|i| (0..3).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect();
    rows.serialize(s)
}

/// An element of `su(3)`: skew-Hermitian, traceless.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Su3Element(#[serde(serialize_with = "serialize_m3")] M3);

impl Su3Element {
    pub fn new(m: M3) -> Result<Self> {
        let skew = (m + m.adjoint()).norm();
        let tr = m.trace().norm();
        if skew > MEMBERSHIP_TOL * (1.0 + m.norm()) || tr > MEMBERSHIP_TOL * (1.0 + m.norm()) {
            return Err(Error::InvalidArgument(format!(
                "not in su(3): |X + X^*| = {skew:e}, |tr X| = {tr:e}"
            )));
        }
        Ok(Self(m))
    }

    /// Wraps a matrix known to lie in `su(3)` up to rounding.
    pub(crate) fn from_raw(m: M3) -> Self {
        Self(m)
    }

    pub fn zero() -> Self {
        Self(M3::zeros())
    }

    pub fn matrix(&self) -> &M3 {
        &self.0
    }

    /// Coordinates in the orthonormal basis returned by [`adapted_basis`].
    pub fn coords(&self) -> [f64; 8] {
        let basis = adapted_basis();
        std::array::from_fn(|k| inner(self, &basis[k]))
    }

    pub fn from_coords(x: &[f64; 8]) -> Self {
        let basis = adapted_basis();
        let mut m = M3::zeros();
        for (xk, e) in x.iter().zip(basis.iter()) {
            m += e.0 * c(*xk, 0.0);
        }
        Self(m)
    }

    pub fn norm_sq(&self) -> f64 {
        inner(self, self)
    }
}

impl Add for Su3Element {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self(self.0 + o.0)
    }
}

impl Sub for Su3Element {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self(self.0 - o.0)
    }
}

impl Neg for Su3Element {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

impl Mul<Su3Element> for f64 {
    type Output = Su3Element;
    fn mul(self, x: Su3Element) -> Su3Element {
        Su3Element(x.0 * c(self, 0.0))
    }
}

/// An element of `SU(3)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Su3GroupElement(#[serde(serialize_with = "serialize_m3")] M3);

impl Su3GroupElement {
    pub fn new(m: M3) -> Result<Self> {
        let unit = (m.adjoint() * m - M3::identity()).norm();
        let det = (m.determinant() - c(1.0, 0.0)).norm();
        if unit > MEMBERSHIP_TOL * 10.0 || det > MEMBERSHIP_TOL * 10.0 {
            return Err(Error::InvalidArgument(format!(
                "not in SU(3): |g^*g - 1| = {unit:e}, |det g - 1| = {det:e}"
            )));
        }
        Ok(Self(m))
    }

    pub(crate) fn from_raw(m: M3) -> Self {
        Self(m)
    }

    pub fn identity() -> Self {
        Self(M3::identity())
    }

    pub fn matrix(&self) -> &M3 {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.adjoint())
    }

    /// `g X g^-1`.
    pub fn ad(&self, x: &Su3Element) -> Su3Element {
        Su3Element(self.0 * x.0 * self.0.adjoint())
    }
}

impl Mul for Su3GroupElement {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self(self.0 * o.0)
    }
}

pub fn inner(x: &Su3Element, y: &Su3Element) -> f64 {
    -(x.0 * y.0).trace().re
}

pub fn bracket(x: &Su3Element, y: &Su3Element) -> Su3Element {
    Su3Element(x.0 * y.0 - y.0 * x.0)
}

pub fn i1() -> Su3Element {
    Su3Element(M3::from_diagonal(&nalgebra::Vector3::new(
        c(0.0, 1.0),
        c(0.0, -1.0),
        c(0.0, 0.0),
    )))
}

pub fn j1() -> Su3Element {
    let z = c(0.0, 0.0);
    let o = c(1.0, 0.0);
    Su3Element(M3::new(z, o, z, -o, z, z, z, z, z))
}

pub fn k1() -> Su3Element {
    let z = c(0.0, 0.0);
    let i = c(0.0, 1.0);
    Su3Element(M3::new(z, i, z, i, z, z, z, z, z))
}

pub fn i2() -> Su3Element {
    2.0 * i1()
}

pub fn j2() -> Su3Element {
    let z = c(0.0, 0.0);
    let r = c(SQRT2, 0.0);
    Su3Element(M3::new(z, z, r, z, z, -r, -r, r, z))
}

pub fn k2() -> Su3Element {
    let z = c(0.0, 0.0);
    let r = c(0.0, SQRT2);
    Su3Element(M3::new(z, z, r, z, z, r, r, r, z))
}

/// `diag(i, i, -2i)`, the generator of the left circle `diag(z, z, z^-2)`.
pub fn diag_a() -> Su3Element {
    Su3Element(M3::from_diagonal(&nalgebra::Vector3::new(
        c(0.0, 1.0),
        c(0.0, 1.0),
        c(0.0, -2.0),
    )))
}

/// Conjugates the standard `so(3)` onto `K = span{I_2, J_2, K_2}`.
pub fn g0() -> Su3GroupElement {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let z = c(0.0, 0.0);
    Su3GroupElement(M3::new(
        c(h, 0.0),
        c(0.0, -h),
        z,
        c(h, 0.0),
        c(0.0, h),
        z,
        z,
        z,
        c(0.0, -1.0),
    ))
}

/// `g_z`, a point on the singular circle of `SU(3)//SU(2)`.
pub fn g_z(z: Complex64) -> Result<Su3GroupElement> {
    let u = z / z.norm();
    if !u.is_finite() {
        return Err(Error::InvalidArgument("g_z needs z != 0".into()));
    }
    let o = c(0.0, 0.0);
    Ok(Su3GroupElement(M3::new(
        o,
        c(1.0, 0.0),
        o,
        -u.conj(),
        o,
        o,
        o,
        o,
        u,
    )))
}

fn k_basis() -> [Su3Element; 3] {
    [i2(), j2(), k2()]
}

/// Orthogonal projection onto `K`.
pub fn project_k(x: &Su3Element) -> Su3Element {
    let mut out = Su3Element::zero();
    for e in k_basis() {
        out = out + (inner(x, &e) / e.norm_sq()) * e;
    }
    out
}

/// An orthonormal basis of `su(3)` whose first three vectors span `K`.
pub fn adapted_basis() -> &'static [Su3Element; 8] {
    static BASIS: OnceLock<[Su3Element; 8]> = OnceLock::new();
    BASIS.get_or_init(|| {
        let mut out: Vec<Su3Element> = k_basis()
            .iter()
            .map(|e| (1.0 / e.norm_sq().sqrt()) * *e)
            .collect();
        for cand in spanning_set() {
            let mut v = cand;
            for _ in 0..2 {
                for e in &out {
                    v = v - inner(&v, e) * *e;
                }
            }
            let n = v.norm_sq().sqrt();
            if n > 1e-6 {
                out.push((1.0 / n) * v);
            }
            if out.len() == 8 {
                break;
            }
        }
        out.try_into().expect("su(3) has dimension 8")
    })
}

fn spanning_set() -> Vec<Su3Element> {
    let mut out = Vec::new();
    for (j, k) in [(0, 1), (0, 2), (1, 2)] {
        let mut d = M3::zeros();
        d[(j, j)] = c(0.0, 1.0);
        d[(k, k)] = c(0.0, -1.0);
        out.push(Su3Element(d));
        let mut r = M3::zeros();
        r[(j, k)] = c(1.0, 0.0);
        r[(k, j)] = c(-1.0, 0.0);
        out.push(Su3Element(r));
        let mut s = M3::zeros();
        s[(j, k)] = c(0.0, 1.0);
        s[(k, j)] = c(0.0, 1.0);
        out.push(Su3Element(s));
    }
    out
}

/// The Cheeger-deformed left-invariant metric: `K` scaled by `nu`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CheegerMetric {
    nu: f64,
}

impl CheegerMetric {
    /// `nu` in `(0, 1)`; `nu = 1` is accepted as the undeformed metric.
    pub fn new(nu: f64) -> Result<Self> {
        if !(nu > 0.0 && nu <= 1.0) {
            return Err(Error::InvalidArgument(format!("nu must lie in (0, 1), got {nu}")));
        }
        Ok(Self { nu })
    }

    /// From the Cheeger parameter `lambda > 0`, `nu = lambda / (1 + lambda)`.
    pub fn from_lambda(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) {
            return Err(Error::InvalidArgument(format!("lambda must be positive, got {lambda}")));
        }
        Self::new(lambda / (1.0 + lambda))
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// Diagonal of the metric in [`adapted_basis`] coordinates.
    pub fn weights(&self) -> [f64; 8] {
        let n = self.nu;
        [n, n, n, 1.0, 1.0, 1.0, 1.0, 1.0]
    }
}

impl Default for CheegerMetric {
    fn default() -> Self {
        Self { nu: 0.5 }
    }
}

pub fn inner_nu(x: &Su3Element, y: &Su3Element, m: &CheegerMetric) -> f64 {
    let (xk, yk) = (project_k(x), project_k(y));
    inner(&(*x - xk), &(*y - yk)) + m.nu * inner(&xk, &yk)
}

/// `exp(t I_1)` and its images under the two embeddings of `SU(2)`.
pub fn psi_torus(t: f64) -> (M3, M3) {
    let e = |k: f64| Complex64::from_polar(1.0, k * t);
    let one = c(1.0, 0.0);
    (
        M3::from_diagonal(&nalgebra::Vector3::new(e(1.0), e(-1.0), one)),
        M3::from_diagonal(&nalgebra::Vector3::new(e(2.0), e(-2.0), one)),
    )
}

/// `(psi_1(h), psi_2(h))` for the unit quaternion `h = q0 + q1 I + q2 J + q3 K`.
///
/// `psi_2` is the adjoint representation on `K`; since `ad(V)^3 = -4|v|^2 ad(V)`
/// on that copy the exponential collapses to `1 + q0 V + V^2 / 2`.
pub fn psi_quaternion(q: [f64; 4]) -> (M3, M3) {
    let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    let [q0, q1, q2, q3] = q.map(|x| x / n);
    let o = c(0.0, 0.0);
    let p1 = M3::new(
        c(q0, q1),
        c(q2, q3),
        o,
        c(-q2, q3),
        c(q0, -q1),
        o,
        o,
        o,
        c(1.0, 0.0),
    );
    let v = (q1 * i2() + q2 * j2() + q3 * k2()).0;
    let p2 = M3::identity() + v * c(q0, 0.0) + v * v * c(0.5, 0.0);
    (p1, p2)
}
