//! Grid scanners. Every scan visits the nodes of a [`GridSpec`] in parallel,
//! merges the per-node records and sorts them canonically, so results do not
//! depend on scheduling.

mod export;
mod inject;
mod refine;
mod singular;
mod zeros;

use std::cmp::Ordering;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quaternion::{ImaginaryUnit, Quaternion};
use crate::slicefn::CircularDomain;

pub use export::{export_cloud, write_csv, write_json, ExportFormat};
pub use inject::{
    forward_final_example, injectivity_sample, inverse_map_final_example, sample_points, InjectivityReport, Preimage,
    SampleRegion,
};
pub use singular::{singular_cell_occupancy, singular_scan, singular_units, CellOccupancy, SingularUnits};
pub use zeros::{
    classify_sphere, constant_surface_extract, degenerate_scan, scan_zeros, total_multiplicity,
    total_multiplicity_near, ConstantSurfaceReport, SphereClass, ZeroKind, ZeroRecord,
};

/// Environment variable capping scan parallelism.
pub const THREADS_ENV: &str = "SLICEREG_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub alpha_steps: usize,
    pub beta_steps: usize,
    pub theta_steps: usize,
    pub phi_steps: usize,
    pub tol: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            alpha_steps: 64,
            beta_steps: 64,
            theta_steps: 32,
            phi_steps: 64,
            tol: 1e-6,
        }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        for (name, n) in [
            ("grid.alpha_steps", self.alpha_steps),
            ("grid.beta_steps", self.beta_steps),
            ("grid.theta_steps", self.theta_steps),
            ("grid.phi_steps", self.phi_steps),
        ] {
            if n < 2 {
                return Err(Error::field(name, "needs at least 2 steps"));
            }
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::field("grid.tol", "must be positive"));
        }
        Ok(())
    }

    pub fn alpha(&self, d: &CircularDomain, k: usize) -> f64 {
        lerp(d.alpha, k, self.alpha_steps)
    }

    pub fn beta(&self, d: &CircularDomain, k: usize) -> f64 {
        lerp(d.beta, k, self.beta_steps)
    }

    pub fn cell(&self, d: &CircularDomain) -> (f64, f64) {
        (
            (d.alpha[1] - d.alpha[0]) / (self.alpha_steps - 1) as f64,
            (d.beta[1] - d.beta[0]) / (self.beta_steps - 1) as f64,
        )
    }

    /// Nodes `α + iβ` with `β > 0`, row-major in `(α, β)`.
    pub fn base_nodes(&self, d: &CircularDomain) -> Vec<(usize, usize, Complex64)> {
        let mut out = Vec::with_capacity(self.alpha_steps * self.beta_steps);
        for a in 0..self.alpha_steps {
            for b in 0..self.beta_steps {
                let beta = self.beta(d, b);
                if beta > 0.0 {
                    out.push((a, b, Complex64::new(self.alpha(d, a), beta)));
                }
            }
        }
        out
    }

    /// Unit of sphere node `(t, p)`: `θ = π t/(T-1)`, `φ = 2π p/P`.
    pub fn sphere_unit(&self, t: usize, p: usize) -> ImaginaryUnit {
        let theta = std::f64::consts::PI * t as f64 / (self.theta_steps - 1) as f64;
        let phi = 2.0 * std::f64::consts::PI * p as f64 / self.phi_steps as f64;
        ImaginaryUnit::from_angles(theta, phi)
    }

    pub fn sphere_units(&self) -> Vec<ImaginaryUnit> {
        let mut out = Vec::with_capacity(self.theta_steps * self.phi_steps);
        for t in 0..self.theta_steps {
            for p in 0..self.phi_steps {
                out.push(self.sphere_unit(t, p));
            }
        }
        out
    }
}

/// Inclusive node `k` of `n`; roundoff next to zero snaps to zero so that
/// nodes like `α = 0` are exact.
fn lerp(r: [f64; 2], k: usize, n: usize) -> f64 {
    if k + 1 == n {
        return r[1];
    }
    let v = r[0] + k as f64 * ((r[1] - r[0]) / (n - 1) as f64);
    if v.abs() <= 1e-14 * (r[0].abs() + r[1].abs()) {
        0.0
    } else {
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    ZeroSurface,
    ConstantSurface,
    SingularSet,
    DegenerateSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointKind {
    Real,
    Spherical,
    SIsolated,
    SurfaceMember,
    Rank0,
    Rank2,
    Degenerate,
}

impl PointKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PointKind::Real => "real",
            PointKind::Spherical => "spherical",
            PointKind::SIsolated => "s_isolated",
            PointKind::SurfaceMember => "surface_member",
            PointKind::Rank0 => "rank0",
            PointKind::Rank2 => "rank2",
            PointKind::Degenerate => "degenerate",
        }
    }
}

/// A point `α + Iβ`, or the whole sphere `α + Sβ` when `unit` is `None`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CloudPoint {
    pub alpha: f64,
    pub beta: f64,
    pub unit: Option<ImaginaryUnit>,
    pub kind: PointKind,
}

impl CloudPoint {
    pub fn point(&self) -> Option<Quaternion> {
        self.unit
            .map(|u| Quaternion::real(self.alpha) + u.get() * self.beta)
            .or_else(|| (self.beta == 0.0).then(|| Quaternion::real(self.alpha)))
    }

    pub fn base(&self) -> Complex64 {
        Complex64::new(self.alpha, self.beta)
    }
}

pub(crate) fn canonical_cmp(a: &CloudPoint, b: &CloudPoint) -> Ordering {
    let key = |p: &CloudPoint| {
        let u = p.unit.map(|u| u.get().vector()).unwrap_or([f64::NEG_INFINITY; 3]);
        [p.alpha, p.beta, u[0], u[1], u[2]]
    };
    let (ka, kb) = (key(a), key(b));
    ka.iter()
        .zip(kb.iter())
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or_else(|| a.kind.as_str().cmp(b.kind.as_str()))
}

/// Sorts canonically and drops near duplicates of the same kind.
pub(crate) fn canonicalize(points: &mut Vec<CloudPoint>, tol: f64) {
    points.sort_by(canonical_cmp);
    let mut kept: Vec<CloudPoint> = Vec::with_capacity(points.len());
    for p in points.drain(..) {
        let duplicate = kept.iter().rev().take_while(|q| p.alpha - q.alpha <= tol).any(|q| {
            q.kind == p.kind
                && (q.beta - p.beta).abs() <= tol
                && match (q.unit, p.unit) {
                    (None, None) => true,
                    (Some(u), Some(v)) => u.get().dist(v.get()) <= tol,
                    _ => false,
                }
        });
        if !duplicate {
            kept.push(p);
        }
    }
    *points = kept;
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CloudMetadata {
    pub grid: GridSpec,
    pub domain: CircularDomain,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<Quaternion>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceCloud {
    pub provenance: Provenance,
    pub points: Vec<CloudPoint>,
    pub metadata: CloudMetadata,
    pub warnings: Vec<String>,
}

impl SurfaceCloud {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Points lying on the sphere over `z` (within `tol`).
    pub fn at_base(&self, z: Complex64, tol: f64) -> impl Iterator<Item = &CloudPoint> {
        self.points
            .iter()
            .filter(move |p| (p.alpha - z.re).abs() <= tol && (p.beta - z.im).abs() <= tol)
    }
}

/// Thread pool sized by `SLICEREG_THREADS`, defaulting to all cores.
pub(crate) fn pool() -> rayon::ThreadPool {
    let threads = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or(0);
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
}

pub(crate) fn par_flat_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Vec<R> + Sync + Send,
{
    pool().install(|| items.par_iter().flat_map_iter(&f).collect())
}
