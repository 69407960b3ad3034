//! Slice and spherical derivatives, spherical expansions, holomorphic
//! multiplicity and valence.

mod expansion;
pub mod holomorphic;

use num_complex::Complex64;

use crate::error::Result;
use crate::quaternion::{ComplexifiedQuaternion as Hc, Quaternion};
use crate::slicefn::stem::fd_step;
use crate::slicefn::{ClosureStem, Location, SliceFunction, StemFunction};

pub use expansion::{
    evaluate_expansion, expansion_coefficients, leading_coefficients, s2_corollary, s2_display, spherical_monomial,
    SphericalExpansion,
};
pub use holomorphic::{holomorphic_multiplicity, valence, HolomorphicPoly, Multiplicity, Region};

fn induce_at(value: Hc, loc: Location) -> Quaternion {
    match loc {
        Location::Real(_) => value.re,
        Location::Slice(c) => value.induce(c.unit.get()),
    }
}

/// `∂f/∂x = I(∂F/∂z)`.
pub fn slice_derivative(f: &SliceFunction, x: Quaternion) -> Result<Quaternion> {
    let loc = f.locate(x)?;
    Ok(induce_at(f.stem().dz(loc.base()), loc))
}

/// `∂f/∂x^c = I(∂F/∂z̄)`; vanishes identically exactly for slice regular `f`.
pub fn conj_slice_derivative(f: &SliceFunction, x: Quaternion) -> Result<Quaternion> {
    let loc = f.locate(x)?;
    Ok(induce_at(f.stem().dzbar(loc.base()), loc))
}

/// `∂_s f(α + Jβ) = F2(α + iβ) / β`, extended to real points by the
/// slice derivative.
pub fn spherical_derivative(f: &SliceFunction, x: Quaternion) -> Result<Quaternion> {
    let loc = f.locate(x)?;
    Ok(spherical_at(f.stem(), loc))
}

pub(crate) fn spherical_at(stem: &StemFunction, loc: Location) -> Quaternion {
    match loc {
        Location::Real(a) => stem.dz(Complex64::new(a, 0.0)).re,
        Location::Slice(c) => stem.value(c.base()).im / c.beta,
    }
}

/// `∂_s f` from the defining quotient `½ Im(x)^{-1}(f(x) - f(x^c))`.
pub fn spherical_derivative_by_quotient(f: &SliceFunction, x: Quaternion) -> Result<Quaternion> {
    let fx = f.evaluate(x)?;
    let fxc = f.evaluate(x.conj())?;
    Ok(x.im().inverse()? * (fx - fxc) * 0.5)
}

/// `∂_s f` as a slice function: the real stem `G = F2 / β` with partials
/// `G_α = F2_α / β`, `G_β = F2_β / β - F2 / β²`.
pub fn spherical_derivative_function(f: &SliceFunction) -> SliceFunction {
    let stem = f.stem().clone();
    let partial_stem = stem.clone();
    let g = move |z: Complex64| -> Hc {
        if z.im == 0.0 {
            Hc::from_quaternion(stem.partials(z).1.im)
        } else {
            Hc::from_quaternion(stem.value(z).im / z.im)
        }
    };
    let g_for_fd = g.clone();
    let closure = ClosureStem::new("spherical derivative", g).with_partials(move |z| {
        if z.im.abs() < 1e-8 {
            let h = fd_step(z);
            let da = (g_for_fd(z + h) - g_for_fd(z - h)) * (0.5 / h);
            return (da, Hc::ZERO);
        }
        let v = partial_stem.value(z).im;
        let (da, db) = partial_stem.partials(z);
        let b = z.im;
        (
            Hc::from_quaternion(da.im / b),
            Hc::from_quaternion(db.im / b - v / (b * b)),
        )
    });
    SliceFunction::new(StemFunction::Closure(closure), *f.domain())
        .expect("a spherical derivative stem is real and even")
}

/// `‖∂f/∂x - 2 Im(x) (∂/∂x ∂_s f)(x) - ∂_s f(x)‖`.
pub fn mixed_derivative_identity_residual(f: &SliceFunction, x: Quaternion) -> Result<f64> {
    let d = slice_derivative(f, x)?;
    let s = spherical_derivative(f, x)?;
    let ds = slice_derivative(&spherical_derivative_function(f), x)?;
    Ok((d - x.im() * ds * 2.0 - s).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slicefn::CircularDomain;

    fn square() -> SliceFunction {
        SliceFunction::polynomial(
            vec![Quaternion::ZERO, Quaternion::ZERO, Quaternion::ONE],
            CircularDomain::default(),
        )
        .unwrap()
    }

    #[test]
    fn power_rule_and_regularity() {
        let f = square();
        let i = Quaternion::I;
        assert!(slice_derivative(&f, i).unwrap().approx_eq(i * 2.0, 1e-15));
        assert!(
            conj_slice_derivative(&f, Quaternion::new(0.3, 0.2, -1.0, 0.1))
                .unwrap()
                .norm()
                < 1e-15
        );
        assert!(slice_derivative(&f, Quaternion::real(0.5))
            .unwrap()
            .approx_eq(Quaternion::ONE, 1e-15));
    }

    #[test]
    fn conjugate_stem_is_not_regular() {
        let conj = ClosureStem::from_components(
            "conj z",
            |z: Complex64| Quaternion::real(z.re),
            |z: Complex64| Quaternion::real(-z.im),
        );
        let f = SliceFunction::new(StemFunction::Closure(conj), CircularDomain::default()).unwrap();
        let r = conj_slice_derivative(&f, Quaternion::I).unwrap();
        assert!(r.approx_eq(Quaternion::ONE, 1e-8), "{r}");
        assert!(slice_derivative(&f, Quaternion::I).unwrap().norm() < 1e-8);
    }

    #[test]
    fn spherical_derivative_of_square() {
        let f = square();
        let x = Quaternion::new(1.0, 0.0, 2.0, 0.0);
        assert!(spherical_derivative(&f, x)
            .unwrap()
            .approx_eq(Quaternion::real(2.0), 1e-14));
        assert!(spherical_derivative_by_quotient(&f, x)
            .unwrap()
            .approx_eq(Quaternion::real(2.0), 1e-14));
        assert!(mixed_derivative_identity_residual(&f, x).unwrap() < 1e-12);
        let c = SliceFunction::constant(Quaternion::K, CircularDomain::default()).unwrap();
        assert_eq!(spherical_derivative(&c, x).unwrap(), Quaternion::ZERO);
        assert!(mixed_derivative_identity_residual(&c, x).unwrap() < 1e-15);
    }

    #[test]
    fn spherical_of_spherical_vanishes() {
        let f = SliceFunction::polynomial(
            vec![Quaternion::I, Quaternion::K, Quaternion::J, Quaternion::ONE],
            CircularDomain::default(),
        )
        .unwrap();
        let g = spherical_derivative_function(&f);
        let x = Quaternion::new(0.2, 0.5, -0.4, 0.3);
        assert!(spherical_derivative(&g, x).unwrap().norm() < 1e-15);
    }
}
