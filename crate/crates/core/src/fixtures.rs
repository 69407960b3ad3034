//! Worked-example functions used by tests, examples and the verify command.

use crate::quaternion::{ImaginaryUnit, Quaternion};
use crate::slicefn::{slice_product, CircularDomain, SliceFunction, StemFunction};

/// Domain avoiding the real axis whose 64-node grid contains `alpha = 0`
/// and `beta = 1`.
pub const FIXTURE_DOMAIN: CircularDomain = CircularDomain {
    alpha: [-1.6, 1.55],
    beta: [0.05, 3.2],
};

/// Domain touching the real axis for polynomial fixtures.
pub const POLY_DOMAIN: CircularDomain = CircularDomain {
    alpha: [-2.0, 2.0],
    beta: [0.0, 2.0],
};

/// Slice constant function equal to 2 on `C_i^+` and 0 on `C_{-i}^+`, i.e.
/// `1 - I i`.
pub fn exe1() -> SliceFunction {
    let stem = StemFunction::two_slice(
        ImaginaryUnit::I,
        -ImaginaryUnit::I,
        vec![Quaternion::real(2.0)],
        vec![Quaternion::ZERO],
    )
    .expect("distinct units");
    SliceFunction::new(stem, FIXTURE_DOMAIN).expect("valid fixture")
}

/// `h = (x + j) · (1 - I i)`, so `h(α + Iβ) = α + βi + j + I(β - αi + k)`.
pub fn h() -> SliceFunction {
    let left = SliceFunction::polynomial(vec![Quaternion::J, Quaternion::ONE], FIXTURE_DOMAIN).expect("valid fixture");
    slice_product(&left, &exe1()).expect("shared domain")
}

/// `h` with its linear carrier coefficient perturbed by `eps` along `j`.
pub fn h_perturbed(eps: f64) -> SliceFunction {
    let StemFunction::TwoSlice(t) = h().stem().clone() else {
        unreachable!("h is two-slice")
    };
    let mut c = t.carrier().to_vec();
    c[1].re += Quaternion::J * eps;
    let stem = StemFunction::TwoSlice(crate::slicefn::TwoSliceStem::from_carrier(t.units().0, c));
    SliceFunction::new(stem, FIXTURE_DOMAIN).expect("valid fixture")
}

/// `x (1 - I J)`: equal to `2x` on `C_J^+` and to 0 on `C_{-J}^+`.
pub fn final_example(j: ImaginaryUnit) -> SliceFunction {
    let stem = StemFunction::two_slice(
        j,
        -j,
        vec![Quaternion::ZERO, Quaternion::real(2.0)],
        vec![Quaternion::ZERO],
    )
    .expect("distinct units");
    SliceFunction::new(stem, FIXTURE_DOMAIN).expect("valid fixture")
}

/// Unit fixed for the final example.
pub const FINAL_J: ImaginaryUnit = ImaginaryUnit::J;

pub fn square() -> SliceFunction {
    poly(&[Quaternion::ZERO, Quaternion::ZERO, Quaternion::ONE])
}

/// `x³ + x k`.
pub fn cubic_xk() -> SliceFunction {
    poly(&[Quaternion::ZERO, Quaternion::K, Quaternion::ZERO, Quaternion::ONE])
}

/// `Δ_i = x² + 1`.
pub fn delta_i() -> SliceFunction {
    poly(&[Quaternion::ONE, Quaternion::ZERO, Quaternion::ONE])
}

pub fn identity() -> SliceFunction {
    poly(&[Quaternion::ZERO, Quaternion::ONE])
}

fn poly(c: &[Quaternion]) -> SliceFunction {
    SliceFunction::polynomial(c.to_vec(), POLY_DOMAIN).expect("valid fixture")
}

/// Closed-form unit `I(z)` of the zero surface `S_h` over `z = α + iβ`.
pub fn s_h_unit(alpha: f64, beta: f64) -> Quaternion {
    let r = alpha * alpha + beta * beta;
    Quaternion::new(0.0, -(r - 1.0), -2.0 * beta, 2.0 * alpha) / (r + 1.0)
}
