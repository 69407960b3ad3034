use serde::{Deserialize, Serialize};

use super::{slice_derivative, spherical_derivative, spherical_derivative_function};
use crate::error::{Error, Result};
use crate::quaternion::{characteristic_poly, Quaternion};
use crate::slicefn::{SliceFunction, StemFunction};

/// Truncated series `Σ_{n <= N} S_{y,n}(x) s_n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphericalExpansion {
    pub center: Quaternion,
    pub coeffs: Vec<Quaternion>,
}

impl SphericalExpansion {
    pub fn truncation(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
}

/// `S_{y,2m}(x) = Δ_y(x)^m`, `S_{y,2m+1}(x) = Δ_y(x)^m (x - y)`.
pub fn spherical_monomial(y: Quaternion, n: usize, x: Quaternion) -> Quaternion {
    let delta = characteristic_poly(y).eval(x);
    let mut acc = Quaternion::ONE;
    for _ in 0..n / 2 {
        acc = acc * delta;
    }
    if n % 2 == 1 {
        acc = acc * (x - y);
    }
    acc
}

/// Coefficients `s_0..s_N` by repeated division by `Δ_y`: writing
/// `f = c0 + x c1 + Δ_y q` gives `s_{2m} = c0 + y c1`, `s_{2m+1} = c1`.
pub fn expansion_coefficients(f: &SliceFunction, y: Quaternion, n: usize) -> Result<SphericalExpansion> {
    let StemFunction::Polynomial(coeffs) = f.stem() else {
        return Err(Error::NotPolynomial);
    };
    if y.is_real() {
        return Err(Error::RealCenter(y));
    }
    let delta = characteristic_poly(y);
    let mut p = coeffs.clone();
    let mut s = Vec::with_capacity(n + 1);
    while s.len() <= n {
        let (q, c0, c1) = divide_by_quadratic(&p, delta.c1, delta.c0);
        s.push(c0 + y * c1);
        if s.len() <= n {
            s.push(c1);
        }
        p = q;
    }
    Ok(SphericalExpansion { center: y, coeffs: s })
}

/// `p = (x² + b x + c) q + r0 + x r1` for right-coefficient `p`.
fn divide_by_quadratic(p: &[Quaternion], b: f64, c: f64) -> (Vec<Quaternion>, Quaternion, Quaternion) {
    let mut r = p.to_vec();
    if r.len() < 2 {
        r.resize(2, Quaternion::ZERO);
    }
    let mut q = vec![Quaternion::ZERO; r.len().saturating_sub(2)];
    for k in (2..r.len()).rev() {
        let lead = r[k];
        q[k - 2] = lead;
        r[k - 1] -= lead * b;
        r[k - 2] -= lead * c;
        r[k] = Quaternion::ZERO;
    }
    (q, r[0], r[1])
}

pub fn evaluate_expansion(e: &SphericalExpansion, x: Quaternion) -> Quaternion {
    let delta = characteristic_poly(e.center).eval(x);
    let shift = x - e.center;
    let mut power = Quaternion::ONE;
    let mut sum = Quaternion::ZERO;
    for (n, &s) in e.coeffs.iter().enumerate() {
        if n % 2 == 0 {
            sum += power * s;
        } else {
            sum += power * shift * s;
            power = power * delta;
        }
    }
    sum
}

/// `(s0, s1, s2)` for any stem: `s0 = f(y)`, `s1 = ∂_s f(y)`,
/// `s2 = (2 Im y)^{-1}(∂f/∂x(y) - s1)`.
pub fn leading_coefficients(f: &SliceFunction, y: Quaternion) -> Result<[Quaternion; 3]> {
    if y.is_real() {
        return Err(Error::RealCenter(y));
    }
    let s0 = f.evaluate(y)?;
    let s1 = spherical_derivative(f, y)?;
    let d = slice_derivative(f, y)?;
    let s2 = (y.im() * 2.0).inverse()? * (d - s1);
    Ok([s0, s1, s2])
}

/// The closed expression `½ Im(y)^{-2}(2 Im(y) ∂f/∂x(y) - f(y) + f(y^c))`.
pub fn s2_display(f: &SliceFunction, y: Quaternion) -> Result<Quaternion> {
    if y.is_real() {
        return Err(Error::RealCenter(y));
    }
    let im = y.im();
    let inv_sq = (im * im).inverse()?;
    let d = slice_derivative(f, y)?;
    Ok(inv_sq * (im * d * 2.0 - f.evaluate(y)? + f.evaluate(y.conj())?) * 0.5)
}

/// `(∂/∂x ∂_s f)(y)`.
pub fn s2_corollary(f: &SliceFunction, y: Quaternion) -> Result<Quaternion> {
    slice_derivative(&spherical_derivative_function(f), y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slicefn::CircularDomain;

    const I: Quaternion = Quaternion::I;

    fn square() -> SliceFunction {
        SliceFunction::polynomial(
            vec![Quaternion::ZERO, Quaternion::ZERO, Quaternion::ONE],
            CircularDomain::default(),
        )
        .unwrap()
    }

    #[test]
    fn monomials() {
        let x = Quaternion::new(0.3, 0.1, 2.0, -1.0);
        assert_eq!(spherical_monomial(I, 0, x), Quaternion::ONE);
        assert!(spherical_monomial(I, 2, I * 2.0).approx_eq(Quaternion::real(-3.0), 1e-15));
        assert_eq!(spherical_monomial(I, 1, Quaternion::J), Quaternion::J - I);
    }

    #[test]
    fn square_at_i() {
        let e = expansion_coefficients(&square(), I, 5).unwrap();
        let expected = [-1.0, 0.0, 1.0, 0.0, 0.0, 0.0].map(Quaternion::real);
        assert_eq!(e.coeffs, expected.to_vec());
        let x = Quaternion::new(1.0, 0.0, 0.0, 1.0);
        assert!(evaluate_expansion(&e, x).approx_eq(Quaternion::K * 2.0, 1e-14));
        let lead = leading_coefficients(&square(), I).unwrap();
        assert!(lead[2].approx_eq(Quaternion::ONE, 1e-14));
        assert!(s2_corollary(&square(), I).unwrap().approx_eq(Quaternion::ONE, 1e-9));
        assert!(s2_display(&square(), I)
            .unwrap()
            .approx_eq(Quaternion::real(2.0), 1e-14));
    }

    #[test]
    fn linear_at_its_zero() {
        let y0 = Quaternion::new(1.0, 0.0, 1.0, 0.0);
        let f = SliceFunction::polynomial(vec![-y0, Quaternion::ONE], CircularDomain::default()).unwrap();
        let e = expansion_coefficients(&f, y0, 3).unwrap();
        assert!(e.coeffs[0].norm() < 1e-15);
        assert_eq!(e.coeffs[1], Quaternion::ONE);
        let trunc = expansion_coefficients(&f, y0, 0).unwrap();
        assert_eq!(trunc.truncation(), 0);
        assert_eq!(evaluate_expansion(&trunc, Quaternion::K), trunc.coeffs[0]);
    }

    #[test]
    fn real_center_rejected() {
        assert!(matches!(
            expansion_coefficients(&square(), Quaternion::real(1.0), 3),
            Err(Error::RealCenter(_))
        ));
    }

    #[test]
    fn serialized_shape() {
        let e = expansion_coefficients(&square(), I, 1).unwrap();
        let v = serde_json::to_value(&e).unwrap();
        assert_eq!(v["center"], serde_json::json!([0.0, 1.0, 0.0, 0.0]));
        assert_eq!(v["coeffs"].as_array().unwrap().len(), 2);
    }
}
