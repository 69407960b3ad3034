//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slicereg::{ImaginaryUnit, Quaternion, SliceCoordinates, SliceFunction};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn quaternion(r: &mut ChaCha8Rng, scale: f64) -> Quaternion {
    Quaternion::new(
        r.gen_range(-scale..scale),
        r.gen_range(-scale..scale),
        r.gen_range(-scale..scale),
        r.gen_range(-scale..scale),
    )
}

pub fn unit(r: &mut ChaCha8Rng) -> ImaginaryUnit {
    loop {
        let v = Quaternion::new(
            0.0,
            r.gen_range(-1.0..1.0),
            r.gen_range(-1.0..1.0),
            r.gen_range(-1.0..1.0),
        );
        let n = v.norm();
        if n > 0.1 && n <= 1.0 {
            return ImaginaryUnit::normalize(v).unwrap();
        }
    }
}

/// A point `α + Iβ` of the domain of `f` with `β ∈ [0.3, 2]` (clipped to the domain).
pub fn point(r: &mut ChaCha8Rng, f: &SliceFunction) -> Quaternion {
    let d = f.domain();
    let alpha = r.gen_range(d.alpha[0]..d.alpha[1]);
    let (lo, hi) = (d.beta[0].max(0.3), d.beta[1].min(2.0));
    let beta = r.gen_range(lo..hi);
    SliceCoordinates::new(alpha, beta, unit(r)).to_quaternion()
}

/// Closed-form `S_h` unit over `α + iβ`, written out independently.
pub fn s_h(alpha: f64, beta: f64) -> Quaternion {
    let d = alpha * alpha + beta * beta + 1.0;
    Quaternion::new(
        0.0,
        -(alpha * alpha + beta * beta - 1.0) / d,
        -2.0 * beta / d,
        2.0 * alpha / d,
    )
}

/// Central difference of `f` along `v`.
pub fn fd(f: &SliceFunction, x: Quaternion, v: Quaternion) -> Quaternion {
    let t = 1e-6;
    (f.evaluate_extended(x + v * t) - f.evaluate_extended(x - v * t)) / (2.0 * t)
}

/// `Σ a_n x^n` with coefficients on the right, by Horner.
pub fn eval_poly(c: &[Quaternion], x: Quaternion) -> Quaternion {
    c.iter().rev().fold(Quaternion::ZERO, |acc, &a| x * acc + a)
}

/// Coefficientwise slice product of polynomials.
pub fn poly_mul(a: &[Quaternion], b: &[Quaternion]) -> Vec<Quaternion> {
    let mut out = vec![Quaternion::ZERO; a.len() + b.len() - 1];
    for (i, &p) in a.iter().enumerate() {
        for (j, &q) in b.iter().enumerate() {
            out[i + j] += p * q;
        }
    }
    out
}

pub fn poly_conj(a: &[Quaternion]) -> Vec<Quaternion> {
    a.iter().map(|q| q.conj()).collect()
}

pub fn max_dist(a: &[Quaternion], b: &[Quaternion]) -> f64 {
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| {
            let x = a.get(k).copied().unwrap_or(Quaternion::ZERO);
            let y = b.get(k).copied().unwrap_or(Quaternion::ZERO);
            x.dist(y)
        })
        .fold(0.0, f64::max)
}

pub fn poly_coeffs(f: &SliceFunction) -> Vec<Quaternion> {
    match f.stem() {
        slicereg::StemFunction::Polynomial(c) => c.clone(),
        _ => panic!("expected a polynomial stem"),
    }
}

pub fn random_poly(r: &mut ChaCha8Rng, max_degree: usize) -> Vec<Quaternion> {
    let deg = r.gen_range(1..=max_degree);
    (0..=deg).map(|_| quaternion(r, 1.0)).collect()
}
