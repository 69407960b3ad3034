//! Sampling evidence for injectivity, and the closed-form inverse of
//! `h = (x + j)·(1 - Ii)` off `S_h ∪ C_{-i}^+`.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::quaternion::{to_slice_coords, ImaginaryUnit, Quaternion, SliceCoordinates};
use crate::slicefn::SliceFunction;

/// Quantization cell for image bucketing.
pub const COLLISION_CELL: f64 = 1e-6;
/// Images closer than this collide...
pub const IMAGE_EPS: f64 = 1e-8;
/// ...provided the preimages are at least this far apart.
pub const PREIMAGE_EPS: f64 = 1e-4;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleRegion {
    /// The whole circular domain, off the real axis.
    Domain,
    /// The domain minus units within `margin` of `unit`.
    OffSemislice { unit: ImaginaryUnit, margin: f64 },
    /// The semislice `D_I^+`.
    Semislice { unit: ImaginaryUnit },
    /// Explicit sample points.
    Points(Vec<Quaternion>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InjectivityReport {
    pub samples: usize,
    /// Samples taking part in at least one collision.
    pub colliding_samples: usize,
    pub collision_pairs: u64,
    /// Smallest image distance over pairs with distinct preimages.
    pub min_image_separation: f64,
}

impl InjectivityReport {
    pub fn collisions(&self) -> u64 {
        self.collision_pairs
    }
}

fn random_unit(rng: &mut ChaCha8Rng) -> ImaginaryUnit {
    let z: f64 = rng.gen_range(-1.0..=1.0);
    let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let r = (1.0 - z * z).max(0.0).sqrt();
    ImaginaryUnit::normalize(Quaternion::new(0.0, r * phi.cos(), r * phi.sin(), z)).expect("unit vector")
}

/// Seeded sample points of `region` inside the domain of `f`, with `β > 0`.
pub fn sample_points(f: &SliceFunction, region: &SampleRegion, n: usize, seed: u64) -> Vec<Quaternion> {
    if let SampleRegion::Points(p) = region {
        return p.clone();
    }
    let d = f.domain();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let beta_lo = d.beta[0].max(1e-3 * (d.beta[1] - d.beta[0]));
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let alpha = rng.gen_range(d.alpha[0]..=d.alpha[1]);
        let beta = rng.gen_range(beta_lo..=d.beta[1]);
        let unit = match region {
            SampleRegion::Semislice { unit } => *unit,
            SampleRegion::OffSemislice { unit, margin } => {
                let u = random_unit(&mut rng);
                if u.get().dist(unit.get()) < *margin {
                    continue;
                }
                u
            }
            _ => random_unit(&mut rng),
        };
        out.push(SliceCoordinates::new(alpha, beta, unit).to_quaternion());
    }
    out
}

pub fn injectivity_sample(
    f: &SliceFunction,
    region: &SampleRegion,
    n_samples: usize,
    seed: u64,
) -> Result<InjectivityReport> {
    let xs = sample_points(f, region, n_samples, seed);
    let ys: Vec<Quaternion> = xs.iter().map(|&x| f.evaluate(x)).collect::<Result<_>>()?;
    Ok(collision_report(&xs, &ys))
}

fn cell_key(q: Quaternion) -> [i64; 4] {
    q.components().map(|c| (c / COLLISION_CELL).floor() as i64)
}

pub(crate) fn collision_report(xs: &[Quaternion], ys: &[Quaternion]) -> InjectivityReport {
    let mut buckets: HashMap<[i64; 4], Vec<usize>> = HashMap::new();
    for (i, &y) in ys.iter().enumerate() {
        buckets.entry(cell_key(y)).or_default().push(i);
    }
    let mut colliding = vec![false; xs.len()];
    let mut pairs = 0u64;
    for (i, &y) in ys.iter().enumerate() {
        let key = cell_key(y);
        for off in 0..81 {
            let mut k = key;
            let mut o = off;
            for c in &mut k {
                *c += (o % 3) as i64 - 1;
                o /= 3;
            }
            let Some(bucket) = buckets.get(&k) else { continue };
            for &j in bucket.iter().filter(|&&j| j > i) {
                if ys[j].dist(y) < IMAGE_EPS && xs[j].dist(xs[i]) > PREIMAGE_EPS {
                    pairs += 1;
                    colliding[i] = true;
                    colliding[j] = true;
                }
            }
        }
    }
    let min_sep = super::pool().install(|| {
        (0..ys.len())
            .into_par_iter()
            .map(|i| {
                ((i + 1)..ys.len())
                    .filter(|&j| xs[j].dist(xs[i]) > PREIMAGE_EPS)
                    .map(|j| ys[j].dist(ys[i]))
                    .fold(f64::INFINITY, f64::min)
            })
            .reduce(|| f64::INFINITY, f64::min)
    });
    InjectivityReport {
        samples: xs.len(),
        colliding_samples: colliding.iter().filter(|&&c| c).count(),
        collision_pairs: pairs,
        min_image_separation: min_sep,
    }
}

/// Outcome of inverting `h`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Preimage {
    Point(Quaternion),
    /// `q = 0`: every point of `S_h`.
    ZeroSurface,
    /// `q = 2j`: every point of `C_{-i}^+`.
    ConstantSemislice,
    OutsideImage,
}

/// `h(α + Iβ)` in components, with `I = Ai + Bj + Ck`.
pub fn forward_final_example(x: Quaternion) -> Quaternion {
    let c = to_slice_coords(x).unwrap_or(SliceCoordinates::new(x.re(), 0.0, ImaginaryUnit::I));
    let (alpha, beta) = (c.alpha, c.beta);
    let [_, a, b, cc] = c.unit.get().components();
    Quaternion::new(
        alpha * (a + 1.0) - cc,
        beta * (a + 1.0) + b,
        beta * b - alpha * cc + 1.0 - a,
        alpha * b + beta * cc,
    )
}

/// The unique preimage under `h` of `q` off `S_h ∪ C_{-i}^+`.
///
/// The unit comes from `A = (q0²+q1²-q2²-q3²)/‖q‖²`,
/// `B = 2(q0q3+q1q2)/‖q‖²`, `C = 2(q1q3-q0q2)/‖q‖²` and `(α, β)` from the
/// closed forms below; `q` lies in the image iff `β > 0`.
pub fn inverse_map_final_example(q: Quaternion) -> Preimage {
    const EPS: f64 = 1e-12;
    if q.norm() <= EPS {
        return Preimage::ZeroSurface;
    }
    if q.dist(Quaternion::J * 2.0) <= EPS {
        return Preimage::ConstantSemislice;
    }
    let [q0, q1, q2, q3] = q.components();
    let planar = q0 * q0 + q1 * q1;
    if planar <= EPS * EPS {
        return Preimage::OutsideImage;
    }
    let n2 = q.norm_sqr();
    let a = (q0 * q0 + q1 * q1 - q2 * q2 - q3 * q3) / n2;
    let b = 2.0 * (q0 * q3 + q1 * q2) / n2;
    let c = 2.0 * (q1 * q3 - q0 * q2) / n2;
    let alpha = (q0 * n2 + 2.0 * (q1 * q3 - q0 * q2)) / (2.0 * planar);
    let beta = (q1 * n2 - 2.0 * (q0 * q3 + q1 * q2)) / (2.0 * planar);
    if !(beta > 0.0 && q1 > b) {
        return Preimage::OutsideImage;
    }
    match ImaginaryUnit::normalize(Quaternion::new(0.0, a, b, c)) {
        Some(u) => Preimage::Point(SliceCoordinates::new(alpha, beta, u).to_quaternion()),
        None => Preimage::OutsideImage,
    }
}
