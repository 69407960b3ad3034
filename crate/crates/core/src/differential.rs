//! The real differential `v1 + v2 ↦ v1 ∂f/∂x + v2 ∂_s f` with
//! `v1 ∈ C_J`, `v2 ∈ C_J^⊥`, and its rank.

use nalgebra::Matrix4;
use serde::{Deserialize, Serialize};

use crate::calculus::{conj_slice_derivative, leading_coefficients, slice_derivative, spherical_derivative};
use crate::error::{Error, Result};
use crate::quaternion::{ImaginaryUnit, Quaternion};
use crate::slicefn::{Location, SliceFunction};

/// Below this norm `∂_s f` counts as zero.
pub const SPHERICAL_ZERO: f64 = 1e-10;
const SVD_REL_TOL: f64 = 1e-8;
const DIRECTIONAL_STEP: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RankClass {
    Rank0,
    Rank2,
    Rank4,
}

impl RankClass {
    pub fn rank(self) -> usize {
        match self {
            RankClass::Rank0 => 0,
            RankClass::Rank2 => 2,
            RankClass::Rank4 => 4,
        }
    }
}

/// `matrix[r][c]` is component `r` (along 1, i, j, k) of the image of
/// `basis[c]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealDifferential {
    pub point: Quaternion,
    pub basis: [Quaternion; 4],
    pub matrix: [[f64; 4]; 4],
    pub rank: usize,
}

impl RealDifferential {
    pub fn apply(&self, v: [f64; 4]) -> Quaternion {
        let mut out = [0.0; 4];
        for (r, row) in self.matrix.iter().enumerate() {
            out[r] = row.iter().zip(v).map(|(m, x)| m * x).sum();
        }
        out.into()
    }

    pub fn column(&self, c: usize) -> Quaternion {
        Quaternion::new(
            self.matrix[0][c],
            self.matrix[1][c],
            self.matrix[2][c],
            self.matrix[3][c],
        )
    }
}

/// Adapted basis `(1, J, K, JK)` at `x`; real points use `J = i`.
pub fn adapted_basis(x: Quaternion) -> [Quaternion; 4] {
    let j = Location::of(x).unit_or(ImaginaryUnit::I);
    let k = j.orthogonal();
    [Quaternion::ONE, j.get(), k.get(), j.get() * k.get()]
}

pub fn real_differential(f: &SliceFunction, x: Quaternion) -> Result<RealDifferential> {
    let d = slice_derivative(f, x)?;
    let s = spherical_derivative(f, x)?;
    let basis = adapted_basis(x);
    let images = [basis[0] * d, basis[1] * d, basis[2] * s, basis[3] * s];
    let mut matrix = [[0.0; 4]; 4];
    for (c, img) in images.iter().enumerate() {
        for (r, v) in img.components().into_iter().enumerate() {
            matrix[r][c] = v;
        }
    }
    let rank = svd_rank(&matrix);
    Ok(RealDifferential {
        point: x,
        basis,
        matrix,
        rank,
    })
}

/// Number of singular values above `1e-8 σ_max`.
pub fn svd_rank(matrix: &[[f64; 4]; 4]) -> usize {
    let m = Matrix4::from_fn(|r, c| matrix[r][c]);
    let sv = m.singular_values();
    let max = sv.max();
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > SVD_REL_TOL * max).count()
}

/// `p ∈ C_J^⊥` iff `Re p` and the `J` component both vanish.
pub fn in_orthogonal_complement(p: Quaternion, j: ImaginaryUnit) -> bool {
    let tol = 1e-8 * (1.0 + p.norm());
    p.re().abs() <= tol && p.im().dot(j.get()).abs() <= tol
}

/// `p = ∂f/∂x (∂_s f)^{-1}`, or `None` when `∂_s f` vanishes.
pub fn derivative_ratio(f: &SliceFunction, x: Quaternion) -> Result<Option<Quaternion>> {
    let s = spherical_derivative(f, x)?;
    if s.norm() < SPHERICAL_ZERO {
        return Ok(None);
    }
    Ok(Some(slice_derivative(f, x)? * s.inverse()?))
}

pub fn rank_classify(f: &SliceFunction, x: Quaternion) -> Result<RankClass> {
    match derivative_ratio(f, x)? {
        None => {
            let d = slice_derivative(f, x)?;
            Ok(if d.norm() >= SPHERICAL_ZERO {
                RankClass::Rank2
            } else {
                RankClass::Rank0
            })
        }
        Some(p) => {
            let j = Location::of(x).unit_or(ImaginaryUnit::I);
            Ok(if in_orthogonal_complement(p, j) {
                RankClass::Rank2
            } else {
                RankClass::Rank4
            })
        }
    }
}

pub fn is_singular(f: &SliceFunction, x: Quaternion) -> Result<bool> {
    Ok(rank_classify(f, x)? != RankClass::Rank4)
}

/// `‖p Im(x) + Im(x) p‖` for `p = ∂f/∂x (∂_s f)^{-1}`; vanishes on the
/// singular set off the real axis.
pub fn anticommutation_residual(f: &SliceFunction, x: Quaternion) -> Result<Option<f64>> {
    Ok(derivative_ratio(f, x)?.map(|p| {
        let im = x.im();
        (p * im + im * p).norm()
    }))
}

/// Central difference of `f` along `v` against `v s1 + (x v - v x^c) s2`.
pub fn directional_derivative_residual(f: &SliceFunction, x: Quaternion, v: Quaternion) -> Result<f64> {
    let [_, s1, s2] = leading_coefficients(f, x)?;
    let t = DIRECTIONAL_STEP;
    let fd = (f.evaluate_extended(x + v * t) - f.evaluate_extended(x - v * t)) / (2.0 * t);
    let formula = v * s1 + (x * v - v * x.conj()) * s2;
    Ok((fd - formula).norm())
}

/// `∂f/∂x`, `∂f/∂x^c` and `∂_s f` at a non-real point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SliceFormValue {
    pub point: Quaternion,
    pub slice: Quaternion,
    pub conj: Quaternion,
    pub spherical: Quaternion,
    pub unit: ImaginaryUnit,
}

impl SliceFormValue {
    /// `d_sl f(dα, dβ) = d_sl x ∂f/∂x + d_sl x^c ∂f/∂x^c` with
    /// `d_sl x = dα + J dβ`.
    pub fn slice_action(&self, d_alpha: f64, d_beta: f64) -> Quaternion {
        let j = self.unit.get();
        let dx = Quaternion::real(d_alpha) + j * d_beta;
        dx * self.slice + dx.conj() * self.conj
    }

    /// `d_sp f(v) = v ∂_s f` for `v` tangent to the sphere.
    pub fn spherical_action(&self, v: Quaternion) -> Quaternion {
        v * self.spherical
    }
}

pub fn slice_spherical_forms(f: &SliceFunction, x: Quaternion) -> Result<SliceFormValue> {
    let Location::Slice(c) = f.locate(x)? else {
        return Err(Error::OnRealAxis(x));
    };
    Ok(SliceFormValue {
        point: x,
        slice: slice_derivative(f, x)?,
        conj: conj_slice_derivative(f, x)?,
        spherical: spherical_derivative(f, x)?,
        unit: c.unit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::quaternion::SliceCoordinates;

    #[test]
    fn identity_is_full_rank() {
        let f = fixtures::identity();
        let x = Quaternion::new(0.2, 0.3, -0.5, 0.1);
        let df = real_differential(&f, x).unwrap();
        for c in 0..4 {
            assert!(df.column(c).approx_eq(df.basis[c], 1e-14));
        }
        assert_eq!(df.rank, 4);
        assert_eq!(rank_classify(&f, x).unwrap(), RankClass::Rank4);
        assert!(!is_singular(&f, x).unwrap());
        let real = real_differential(&f, Quaternion::real(0.5)).unwrap();
        assert_eq!(real.rank, 4);
    }

    #[test]
    fn constant_is_rank_zero() {
        let f = SliceFunction::constant(Quaternion::K, fixtures::POLY_DOMAIN).unwrap();
        let x = Quaternion::new(0.0, 1.0, 0.0, 0.0);
        assert_eq!(real_differential(&f, x).unwrap().rank, 0);
        assert_eq!(rank_classify(&f, x).unwrap(), RankClass::Rank0);
    }

    #[test]
    fn h_on_lower_semislice_is_rank_two() {
        let h = fixtures::h();
        let x = Quaternion::new(0.3, -0.8, 0.0, 0.0);
        assert_eq!(rank_classify(&h, x).unwrap(), RankClass::Rank2);
        assert_eq!(real_differential(&h, x).unwrap().rank, 2);
    }

    #[test]
    fn delta_i_on_its_sphere() {
        let f = fixtures::delta_i();
        let x = Quaternion::J;
        let class = rank_classify(&f, x).unwrap();
        assert_eq!(class.rank(), real_differential(&f, x).unwrap().rank);
    }

    #[test]
    fn square_directional() {
        let f = fixtures::square();
        let r = directional_derivative_residual(&f, Quaternion::I, Quaternion::J).unwrap();
        assert!(r < 1e-8, "{r}");
    }

    #[test]
    fn conjugate_stem_forms() {
        use crate::slicefn::{ClosureStem, StemFunction};
        use num_complex::Complex64;
        let conj = ClosureStem::from_components(
            "conj z",
            |z: Complex64| Quaternion::real(z.re),
            |z: Complex64| Quaternion::real(-z.im),
        );
        let f = SliceFunction::new(StemFunction::Closure(conj), fixtures::POLY_DOMAIN).unwrap();
        let unit = ImaginaryUnit::from_angles(0.4, 1.0);
        let x = SliceCoordinates::new(0.1, 0.7, unit).to_quaternion();
        let forms = slice_spherical_forms(&f, x).unwrap();
        assert!(forms.slice_action(1.0, 0.0).approx_eq(Quaternion::ONE, 1e-8));
        assert!(forms.slice_action(0.0, 1.0).approx_eq(-unit.get(), 1e-8));
        assert!(matches!(
            slice_spherical_forms(&f, Quaternion::real(0.5)),
            Err(Error::OnRealAxis(_))
        ));
    }

    #[test]
    fn serialized_shape() {
        let df = real_differential(&fixtures::identity(), Quaternion::I).unwrap();
        let v = serde_json::to_value(&df).unwrap();
        for key in ["point", "basis", "matrix", "rank"] {
            assert!(v.get(key).is_some(), "{key}");
        }
    }
}
