use num_complex::Complex64;

use super::stem::{convolve, ClosureStem, StemFunction, TwoSliceStem};
use super::SliceFunction;
use crate::error::{Error, Result};
use crate::quaternion::{ComplexifiedQuaternion as Hc, ImaginaryUnit, Quaternion};

/// Stem product `FG = F1G1 - F2G2 + √-1(F1G2 + F2G1)`.
///
/// Closed-form stems multiply by coefficient convolution, left coefficients
/// on the left. A two-slice factor keeps the product two-slice.
pub fn slice_product(f: &SliceFunction, g: &SliceFunction) -> Result<SliceFunction> {
    if f.domain() != g.domain() {
        return Err(Error::DomainMismatch);
    }
    let stem = match (f.stem(), g.stem()) {
        (StemFunction::Polynomial(a), StemFunction::Polynomial(b)) => {
            let mut c = vec![Quaternion::ZERO; a.len() + b.len().max(1) - 1];
            for (m, &x) in a.iter().enumerate() {
                for (n, &y) in b.iter().enumerate() {
                    c[m + n] += x * y;
                }
            }
            StemFunction::Polynomial(c)
        }
        (sf, sg) => match (sf.carrier(), sg.carrier()) {
            (Some(a), Some(b)) => {
                let unit = two_slice_unit(sf).or_else(|| two_slice_unit(sg));
                StemFunction::TwoSlice(TwoSliceStem::from_carrier(
                    unit.unwrap_or(ImaginaryUnit::I),
                    convolve(&a, &b),
                ))
            }
            _ => {
                let (sf, sg) = (sf.clone(), sg.clone());
                let (pf, pg) = (sf.clone(), sg.clone());
                StemFunction::Closure(
                    ClosureStem::new("product", move |z| sf.value(z) * sg.value(z)).with_partials(move |z| {
                        let (fv, gv) = (pf.value(z), pg.value(z));
                        let (fa, fb) = pf.partials(z);
                        let (ga, gb) = pg.partials(z);
                        (fa * gv + fv * ga, fb * gv + fv * gb)
                    }),
                )
            }
        },
    };
    Ok(SliceFunction::from_parts(stem, *f.domain()))
}

fn two_slice_unit(s: &StemFunction) -> Option<ImaginaryUnit> {
    match s {
        StemFunction::TwoSlice(t) => Some(t.units().0),
        _ => None,
    }
}

/// `f^c = I(F^c)` with `F^c = F1^c + √-1 F2^c`.
pub fn conjugate(f: &SliceFunction) -> SliceFunction {
    let stem = match f.stem() {
        StemFunction::Polynomial(a) => StemFunction::Polynomial(a.iter().map(|q| q.conj()).collect()),
        StemFunction::TwoSlice(t) => StemFunction::TwoSlice(TwoSliceStem::from_carrier(
            t.units().0,
            t.carrier().iter().map(|a| a.conj_quat()).collect(),
        )),
        StemFunction::Closure(c) => {
            let base = StemFunction::Closure(c.clone());
            let inner = base.clone();
            StemFunction::Closure(
                ClosureStem::new(format!("{}^c", c.label()), move |z| base.value(z).conj_quat()).with_partials(
                    move |z| {
                        let (a, b) = inner.partials(z);
                        (a.conj_quat(), b.conj_quat())
                    },
                ),
            )
        }
    };
    SliceFunction::from_parts(stem, *f.domain())
}

/// Normal function `N(f) = f · f^c`. Polynomial results have their
/// vanishing vector parts snapped to exact zeros.
pub fn normal(f: &SliceFunction) -> SliceFunction {
    let n = slice_product(f, &conjugate(f)).expect("same domain");
    match n.stem() {
        StemFunction::Polynomial(c) => {
            let scale = c.iter().map(|q| q.norm()).fold(1.0, f64::max);
            let real = c
                .iter()
                .map(|q| {
                    debug_assert!(q.im_norm() <= 1e-9 * scale, "normal function has a vector part");
                    Quaternion::real(q.w)
                })
                .collect::<Vec<_>>();
            SliceFunction::from_parts(StemFunction::Polynomial(real), *f.domain())
        }
        _ => n,
    }
}

/// Stem of `N(f)` as a complex polynomial `Σ z^n (p_n + i q_n)`.
pub fn normal_polynomial(f: &SliceFunction) -> Result<Vec<Complex64>> {
    let c = f.stem().carrier().ok_or(Error::NotPolynomial)?;
    let conj: Vec<Hc> = c.iter().map(|a| a.conj_quat()).collect();
    Ok(convolve(&c, &conj)
        .into_iter()
        .map(|a| Complex64::new(a.re.w, a.im.w))
        .collect())
}

/// `‖(f·g)(x) - f(x) g(f(x)^{-1} x f(x))‖`.
pub fn prodcomp_check(f: &SliceFunction, g: &SliceFunction, x: Quaternion) -> Result<f64> {
    let fg = slice_product(f, g)?;
    let fx = f.evaluate(x)?;
    if fx.norm() < 1e-14 {
        return Err(Error::NotApplicable("f(x) = 0"));
    }
    let moved = fx.inverse()? * x * fx;
    let rhs = fx * g.evaluate_extended(moved);
    Ok((fg.evaluate(x)? - rhs).norm())
}
