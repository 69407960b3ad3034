//! The quaternion algebra, its complexification, imaginary units and the
//! slice coordinates `x = alpha + I beta` used everywhere else in the crate.
//!
//! Quaternions serialize as `[w, x, y, z]`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default absolute comparison tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Element `w + x i + y j + z k` of the real quaternions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    #[inline]
    pub const fn real(w: f64) -> Self {
        Self::new(w, 0.0, 0.0, 0.0)
    }

    /// Quaternion with zero real part and the given vector part.
    #[inline]
    pub const fn pure(v: [f64; 3]) -> Self {
        Self::new(0.0, v[0], v[1], v[2])
    }

    #[inline]
    pub fn components(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    #[inline]
    pub fn vector(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    /// Real part `Re(x)`.
    #[inline]
    pub fn re(self) -> f64 {
        self.w
    }

    /// Imaginary part `Im(x)` as a pure quaternion.
    #[inline]
    pub fn im(self) -> Quaternion {
        Self::new(0.0, self.x, self.y, self.z)
    }

    /// Quaternionic conjugate `x^c`.
    #[inline]
    pub fn conj(self) -> Quaternion {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Euclidean norm of the vector part.
    #[inline]
    pub fn im_norm(self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    /// Euclidean scalar product `g(p, q)` of the `R^4` components.
    #[inline]
    pub fn dot(self, other: Quaternion) -> f64 {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    #[inline]
    pub fn is_real(self) -> bool {
        self.x == 0.0 && self.y == 0.0 && self.z == 0.0
    }

    pub fn inverse(self) -> Result<Quaternion> {
        let n = self.norm_sqr();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.conj() / n)
    }

    /// Distance `‖self - other‖`.
    #[inline]
    pub fn dist(self, other: Quaternion) -> f64 {
        (self - other).norm()
    }

    pub fn approx_eq(self, other: Quaternion, tol: f64) -> bool {
        self.dist(other) <= tol
    }

    pub fn is_finite(self) -> bool {
        self.components().iter().all(|c| c.is_finite())
    }

    /// Embeds `a + b i` of the complex plane into the slice `C_J`.
    #[inline]
    pub fn from_slice(z: Complex64, unit: ImaginaryUnit) -> Quaternion {
        Quaternion::real(z.re) + unit.get() * z.im
    }
}

impl From<[f64; 4]> for Quaternion {
    fn from(c: [f64; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }
}

impl From<Quaternion> for [f64; 4] {
    fn from(q: Quaternion) -> Self {
        q.components()
    }
}

impl From<f64> for Quaternion {
    fn from(w: f64) -> Self {
        Quaternion::real(w)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}, {}]", self.w, self.x, self.y, self.z)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, o: Quaternion) {
        *self = *self + o;
    }
}

impl SubAssign for Quaternion {
    #[inline]
    fn sub_assign(&mut self, o: Quaternion) {
        *self = *self - o;
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Hamilton product.
impl Mul for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, o: Quaternion) -> Quaternion {
        Quaternion::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, s: f64) -> Quaternion {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    #[inline]
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn div(self, s: f64) -> Quaternion {
        Quaternion::new(self.w / s, self.x / s, self.y / s, self.z / s)
    }
}

/// Hamilton product of two quaternions.
pub fn quat_mul(p: Quaternion, q: Quaternion) -> Quaternion {
    p * q
}

/// `p^{-1} = p^c / ‖p‖²`.
pub fn quat_inverse(p: Quaternion) -> Result<Quaternion> {
    p.inverse()
}

// ── Imaginary units ──────────────────────────────────────────────────

/// A point of the unit sphere `S = { q : q² = -1 }` of pure unit quaternions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(into = "[f64; 4]")]
pub struct ImaginaryUnit(Quaternion);

impl ImaginaryUnit {
    pub const I: ImaginaryUnit = ImaginaryUnit(Quaternion::I);
    pub const J: ImaginaryUnit = ImaginaryUnit(Quaternion::J);
    pub const K: ImaginaryUnit = ImaginaryUnit(Quaternion::K);

    /// Validates `Re(u) = 0` and `‖u‖ = 1` within `tol`, then renormalizes.
    pub fn new(u: Quaternion, tol: f64) -> Result<Self> {
        if u.w.abs() > tol {
            return Err(Error::field("unit", format!("real part {} must vanish", u.w)));
        }
        let n = u.im_norm();
        if (n - 1.0).abs() > tol {
            return Err(Error::field("unit", format!("norm {n} must be 1")));
        }
        Ok(Self(u.im() / n))
    }

    /// Normalizes the vector part of `v`; `None` when it vanishes.
    pub fn normalize(v: Quaternion) -> Option<Self> {
        let n = v.im_norm();
        if n == 0.0 || !n.is_finite() {
            None
        } else {
            Some(Self(v.im() / n))
        }
    }

    /// `I(θ, φ) = (sinθ cosφ, sinθ sinφ, cosθ)`.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Self(Quaternion::pure([st * cp, st * sp, ct]))
    }

    /// Inverse of [`ImaginaryUnit::from_angles`], `θ ∈ [0, π]`, `φ ∈ (-π, π]`.
    pub fn angles(self) -> (f64, f64) {
        let q = self.0;
        (q.z.clamp(-1.0, 1.0).acos(), q.y.atan2(q.x))
    }

    #[inline]
    pub fn get(self) -> Quaternion {
        self.0
    }

    /// Deterministic unit orthogonal to `self`: the first of `i, j, k` not
    /// parallel to it, Gram–Schmidt orthogonalized.
    pub fn orthogonal(self) -> ImaginaryUnit {
        let u = self.0;
        for e in [Quaternion::I, Quaternion::J, Quaternion::K] {
            let d = e.dot(u);
            if d.abs() < 0.9 {
                return ImaginaryUnit::normalize(e - u * d).expect("non-parallel axis");
            }
        }
        unreachable!("a unit vector is parallel to at most one axis")
    }
}

impl Neg for ImaginaryUnit {
    type Output = ImaginaryUnit;
    fn neg(self) -> ImaginaryUnit {
        ImaginaryUnit(-self.0)
    }
}

impl From<ImaginaryUnit> for Quaternion {
    fn from(u: ImaginaryUnit) -> Quaternion {
        u.0
    }
}

impl From<ImaginaryUnit> for [f64; 4] {
    fn from(u: ImaginaryUnit) -> Self {
        u.0.components()
    }
}

impl<'de> Deserialize<'de> for ImaginaryUnit {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let q = Quaternion::deserialize(d)?;
        ImaginaryUnit::new(q, DEFAULT_TOL).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for ImaginaryUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

// ── Complexified quaternions ─────────────────────────────────────────

/// Element `p + √-1 q` of `H ⊗ C`. Stem function values live here.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ComplexifiedQuaternion {
    pub re: Quaternion,
    pub im: Quaternion,
}

impl ComplexifiedQuaternion {
    pub const ZERO: ComplexifiedQuaternion = ComplexifiedQuaternion {
        re: Quaternion::ZERO,
        im: Quaternion::ZERO,
    };

    #[inline]
    pub const fn new(re: Quaternion, im: Quaternion) -> Self {
        Self { re, im }
    }

    #[inline]
    pub const fn from_quaternion(q: Quaternion) -> Self {
        Self::new(q, Quaternion::ZERO)
    }

    /// `x^c = p^c + √-1 q^c`.
    #[inline]
    pub fn conj_quat(self) -> Self {
        Self::new(self.re.conj(), self.im.conj())
    }

    /// `x̄ = p - √-1 q`.
    #[inline]
    pub fn conj_complex(self) -> Self {
        Self::new(self.re, -self.im)
    }

    /// Multiplication by the central complex scalar `a + √-1 b`.
    #[inline]
    pub fn scale(self, c: Complex64) -> Self {
        Self::new(self.re * c.re - self.im * c.im, self.im * c.re + self.re * c.im)
    }

    /// Multiplies by `√-1`.
    #[inline]
    pub fn times_sqrt_neg_one(self) -> Self {
        Self::new(-self.im, self.re)
    }

    #[inline]
    pub fn norm(self) -> f64 {
        (self.re.norm_sqr() + self.im.norm_sqr()).sqrt()
    }

    /// Induced slice value `re + J im` at the unit `J`.
    #[inline]
    pub fn induce(self, unit: Quaternion) -> Quaternion {
        self.re + unit * self.im
    }
}

impl Add for ComplexifiedQuaternion {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for ComplexifiedQuaternion {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.re - o.re, self.im - o.im)
    }
}

impl AddAssign for ComplexifiedQuaternion {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Neg for ComplexifiedQuaternion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

/// `(x + √-1 y)(z + √-1 w) = xz - yw + √-1 (xw + yz)`.
impl Mul for ComplexifiedQuaternion {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        Self::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }
}

impl Mul<f64> for ComplexifiedQuaternion {
    type Output = Self;
    #[inline]
    fn mul(self, s: f64) -> Self {
        Self::new(self.re * s, self.im * s)
    }
}

// ── Slice coordinates ────────────────────────────────────────────────

/// `x = alpha + unit * beta` with `beta > 0` for non-real `x`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SliceCoordinates {
    pub alpha: f64,
    pub beta: f64,
    pub unit: ImaginaryUnit,
}

impl SliceCoordinates {
    /// Builds coordinates, flipping `(beta, unit) -> (-beta, -unit)` when
    /// `beta < 0`.
    pub fn new(alpha: f64, beta: f64, unit: ImaginaryUnit) -> Self {
        if beta < 0.0 {
            Self {
                alpha,
                beta: -beta,
                unit: -unit,
            }
        } else {
            Self { alpha, beta, unit }
        }
    }

    pub fn to_quaternion(self) -> Quaternion {
        Quaternion::real(self.alpha) + self.unit.get() * self.beta
    }

    /// The point `alpha + i beta` of the upper half plane.
    pub fn base(self) -> Complex64 {
        Complex64::new(self.alpha, self.beta)
    }
}

/// `(alpha, beta, I)` with `alpha = Re p`, `beta = ‖Im p‖`, `I = Im p / beta`.
pub fn to_slice_coords(p: Quaternion) -> Result<SliceCoordinates> {
    let beta = p.im_norm();
    if beta == 0.0 {
        return Err(Error::OnRealAxis(p));
    }
    Ok(SliceCoordinates {
        alpha: p.w,
        beta,
        unit: ImaginaryUnit(p.im() / beta),
    })
}

pub fn from_slice_coords(c: SliceCoordinates) -> Quaternion {
    c.to_quaternion()
}

// ── Characteristic polynomial, Cassini pseudometric ──────────────────

/// Real monic quadratic `x² + c1 x + c0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealQuadratic {
    pub c0: f64,
    pub c1: f64,
}

impl RealQuadratic {
    pub const C2: f64 = 1.0;

    /// Evaluates at a quaternion; the coefficients are central so the
    /// pointwise value equals the induced slice function.
    pub fn eval(&self, x: Quaternion) -> Quaternion {
        x * x + x * self.c1 + Quaternion::real(self.c0)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        z * z + z * self.c1 + self.c0
    }

    /// Coefficients `[c0, c1, 1]` in increasing degree.
    pub fn coefficients(&self) -> [f64; 3] {
        [self.c0, self.c1, 1.0]
    }
}

/// `Δ_y(x) = x² - x (y + y^c) + y y^c`.
pub fn characteristic_poly(y: Quaternion) -> RealQuadratic {
    RealQuadratic {
        c0: y.norm_sqr(),
        c1: -2.0 * y.w,
    }
}

/// `u(x, y) = sqrt ‖Δ_y(x)‖`.
pub fn cassini_u(x: Quaternion, y: Quaternion) -> f64 {
    characteristic_poly(y).eval(x).norm().sqrt()
}

/// `Ψ(x) = (x - x0)(x - x0^c)^{-1}`, for `x` on the sphere of `x0`.
pub fn stereographic_project(x: Quaternion, x0: Quaternion) -> Result<Quaternion> {
    let den = x - x0.conj();
    if den.norm() <= 1e-14 * (1.0 + x0.norm()) {
        return Err(Error::Pole(x));
    }
    Ok((x - x0) * den.inverse()?)
}

/// `true` when `p` lies in `C_J^⊥ = span(K, JK)`: `|Re p| ≤ tol` and
/// `|g(Im p, J)| ≤ tol` with `tol = rel (1 + ‖p‖)`.
pub fn in_orthogonal_plane(p: Quaternion, unit: ImaginaryUnit, rel: f64) -> bool {
    let tol = rel * (1.0 + p.norm());
    p.w.abs() <= tol && p.im().dot(unit.get()).abs() <= tol
}

#[cfg(test)]
mod tests {
    use super::*;

    const I: Quaternion = Quaternion::I;
    const J: Quaternion = Quaternion::J;
    const K: Quaternion = Quaternion::K;
    const ONE: Quaternion = Quaternion::ONE;

    #[test]
    fn hamilton_relations() {
        assert_eq!(I * J, K);
        assert_eq!(J * K, I);
        assert_eq!(K * I, J);
        for e in [I, J, K] {
            assert_eq!(e * e, -ONE);
        }
        assert_eq!((ONE + I) * (ONE + J), ONE + I + J + K);
        let p = Quaternion::new(2.0, 0.0, 0.0, 1.0);
        assert!((p * p.inverse().unwrap()).approx_eq(ONE, 1e-15));
    }

    #[test]
    fn inverses() {
        assert_eq!(I.inverse().unwrap(), -I);
        assert_eq!((J * 2.0).inverse().unwrap(), -J / 2.0);
        let q = Quaternion::new(1.0, 1.0, 1.0, 1.0);
        assert!(q
            .inverse()
            .unwrap()
            .approx_eq(Quaternion::new(1.0, -1.0, -1.0, -1.0) / 4.0, 1e-15));
        assert!(matches!(Quaternion::ZERO.inverse(), Err(Error::ZeroInverse)));
    }

    #[test]
    fn slice_coordinates() {
        let c = to_slice_coords(I).unwrap();
        assert_eq!((c.alpha, c.beta), (0.0, 1.0));
        assert_eq!(c.unit.get(), I);

        let c = to_slice_coords(Quaternion::new(3.0, 0.0, 0.0, -4.0)).unwrap();
        assert_eq!((c.alpha, c.beta), (3.0, 4.0));
        assert_eq!(c.unit.get(), -K);

        assert!(matches!(
            to_slice_coords(Quaternion::real(5.0)),
            Err(Error::OnRealAxis(_))
        ));

        let flipped = SliceCoordinates::new(1.0, -2.0, ImaginaryUnit::J);
        assert_eq!(flipped.beta, 2.0);
        assert_eq!(flipped.unit.get(), -J);
        assert_eq!(
            flipped.to_quaternion(),
            SliceCoordinates::new(1.0, 2.0, -ImaginaryUnit::J).to_quaternion()
        );
    }

    #[test]
    fn characteristic_polynomials() {
        assert_eq!(characteristic_poly(I), RealQuadratic { c0: 1.0, c1: 0.0 });
        assert_eq!(characteristic_poly(ONE + J * 2.0), RealQuadratic { c0: 5.0, c1: -2.0 });
        assert_eq!(characteristic_poly(J), characteristic_poly(K));
        assert!(characteristic_poly(I).eval(K).norm() < 1e-15);
    }

    #[test]
    fn cassini() {
        assert_eq!(cassini_u(J, I), 0.0);
        assert!((cassini_u(I * 2.0, I) - 3f64.sqrt()).abs() < 1e-15);
        assert_eq!(cassini_u(Quaternion::ZERO, I), 1.0);
    }

    #[test]
    fn stereographic() {
        assert_eq!(stereographic_project(I, I).unwrap(), Quaternion::ZERO);
        // x0 = i, x = j: t = 0, u = 1, v = 0 gives (1/1) * i j = k.
        assert!(stereographic_project(J, I).unwrap().approx_eq(K, 1e-15));
        // x = k: t = u = 0, v = 1 gives (i) * k = -j.
        let p = stereographic_project(K, I).unwrap();
        assert!(p.approx_eq(-J, 1e-15));
        assert!(in_orthogonal_plane(p, ImaginaryUnit::I, 1e-12));
        assert!(matches!(stereographic_project(-I, I), Err(Error::Pole(_))));
    }

    #[test]
    fn complexified_product() {
        let a = ComplexifiedQuaternion::new(ONE + I, J);
        let b = ComplexifiedQuaternion::new(K, ONE * 2.0);
        let prod = a * b;
        assert_eq!(prod.re, (ONE + I) * K - J * 2.0);
        assert_eq!(prod.im, (ONE + I) * 2.0 + J * K);
        assert_eq!(a.conj_quat().conj_complex(), a.conj_complex().conj_quat());
    }

    #[test]
    fn unit_validation() {
        assert!(ImaginaryUnit::new(Quaternion::new(0.0, 0.0, 2.0, 0.0), 1e-9).is_err());
        assert!(ImaginaryUnit::new(Quaternion::new(0.1, 1.0, 0.0, 0.0), 1e-9).is_err());
        let u = ImaginaryUnit::from_angles(0.3, 1.2);
        let (t, p) = u.angles();
        assert!((t - 0.3).abs() < 1e-14 && (p - 1.2).abs() < 1e-14);
        for v in [ImaginaryUnit::I, ImaginaryUnit::J, ImaginaryUnit::K, u] {
            let k = v.orthogonal();
            assert!(k.get().dot(v.get()).abs() < 1e-15);
            assert!((k.get().norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn serde_array_form() {
        let q = Quaternion::new(1.0, -2.0, 0.5, 3.0);
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, "[1.0,-2.0,0.5,3.0]");
        assert_eq!(serde_json::from_str::<Quaternion>(&s).unwrap(), q);
    }
}
