//! The singular set `N_f`: points where the real differential drops rank.
//!
//! Off the real axis and off degenerate spheres, `x = α + Iβ` is singular
//! iff `p = ∂f/∂x (∂_s f)^{-1}` lies in `C_I^⊥`. With `∂f/∂x = D1 + I D2`,
//! `T = (∂_s f)^{-1}`, `a = D1 T` and `b = D2 T`, this is the pair of linear
//! conditions `u·b⃗ = a0`, `u·a⃗ = -b0` on the unit vector `u` of `I`: a line
//! meeting the sphere in at most two points, or a circle when the two planes
//! coincide.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::refine::{real_minima, vanishing_bases};
use super::{canonicalize, par_flat_map, CloudMetadata, CloudPoint, GridSpec, PointKind, Provenance, SurfaceCloud};
use crate::error::Result;
use crate::quaternion::{ImaginaryUnit, Quaternion};
use crate::slicefn::SliceFunction;

const WHOLE_SPHERE: f64 = 1e-10;
const TANGENT: f64 = 1e-9;
/// Grid hits closer than this to a closed-form unit are already covered.
const SNAP: f64 = 1e-2;

/// Singular units on one sphere `α + Sβ`.
#[derive(Clone, Debug, PartialEq)]
pub enum SingularUnits {
    None,
    Points(Vec<ImaginaryUnit>),
    /// A circle of units, sampled.
    Circle(Vec<ImaginaryUnit>),
    /// `∂_s f` vanishes: the whole sphere is singular.
    WholeSphere(PointKind),
}

/// The linear conditions on `u` at base `z`, or `None` on a degenerate sphere.
struct Conditions {
    n1: [f64; 3],
    c1: f64,
    n2: [f64; 3],
    c2: f64,
    scale: f64,
}

impl Conditions {
    fn at(f: &SliceFunction, z: Complex64) -> Option<Self> {
        let s = f.stem_value(z).im / z.im;
        if s.norm() < WHOLE_SPHERE {
            return None;
        }
        let t = s.inverse().expect("nonzero");
        let d = f.stem().dz(z);
        let (a, b) = (d.re * t, d.im * t);
        Some(Self {
            n1: b.vector(),
            c1: a.re(),
            n2: a.vector(),
            c2: -b.re(),
            scale: 1.0 + a.norm() + b.norm(),
        })
    }

    fn residual(&self, u: [f64; 3]) -> f64 {
        (dot(self.n1, u) - self.c1).abs().max((dot(self.n2, u) - self.c2).abs())
    }

    fn solve(&self, circle_samples: usize) -> SingularUnits {
        let (n1, n2) = (self.n1, self.n2);
        let tol = TANGENT * self.scale;
        let d = cross(n1, n2);
        let dd = dot(d, d);
        if dd > tol * tol {
            let (m11, m22, m12) = (dot(n1, n1), dot(n2, n2), dot(n1, n2));
            let p0 = add(
                mul(n1, (self.c1 * m22 - self.c2 * m12) / dd),
                mul(n2, (self.c2 * m11 - self.c1 * m12) / dd),
            );
            let gap = 1.0 - dot(p0, p0);
            if gap.abs() <= tol {
                return points(&[p0]);
            }
            if gap < 0.0 {
                return SingularUnits::None;
            }
            let r = (gap / dd).sqrt();
            return points(&[add(p0, mul(d, r)), add(p0, mul(d, -r))]);
        }
        // Parallel normals: one plane if consistent, otherwise nothing.
        let (n, c) = if dot(n1, n1) >= dot(n2, n2) {
            (n1, self.c1)
        } else {
            (n2, self.c2)
        };
        let nn = dot(n, n).sqrt();
        if nn <= tol {
            return if self.c1.abs() <= tol && self.c2.abs() <= tol {
                SingularUnits::WholeSphere(PointKind::Rank2)
            } else {
                SingularUnits::None
            };
        }
        if self.residual(mul(n, c / (nn * nn))) > tol {
            return SingularUnits::None;
        }
        let axis = mul(n, 1.0 / nn);
        let h = c / nn;
        if h.abs() > 1.0 + tol {
            return SingularUnits::None;
        }
        let rho = (1.0 - h * h).max(0.0).sqrt();
        if rho <= tol {
            return points(&[mul(axis, h.signum())]);
        }
        let e1 = ImaginaryUnit::normalize(Quaternion::pure(axis))
            .expect("unit axis")
            .orthogonal()
            .get()
            .vector();
        let e2 = cross(axis, e1);
        let units = (0..circle_samples)
            .filter_map(|k| {
                let t = 2.0 * std::f64::consts::PI * k as f64 / circle_samples as f64;
                let u = add(mul(axis, h), add(mul(e1, rho * t.cos()), mul(e2, rho * t.sin())));
                ImaginaryUnit::normalize(Quaternion::pure(u))
            })
            .collect();
        SingularUnits::Circle(units)
    }
}

fn points(us: &[[f64; 3]]) -> SingularUnits {
    SingularUnits::Points(
        us.iter()
            .filter_map(|&u| ImaginaryUnit::normalize(Quaternion::pure(u)))
            .collect(),
    )
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn add(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn mul(a: [f64; 3], s: f64) -> [f64; 3] {
    [a[0] * s, a[1] * s, a[2] * s]
}

fn degenerate_kind(f: &SliceFunction, z: Complex64) -> PointKind {
    let d = f.stem().dz(z);
    if d.re.norm() < WHOLE_SPHERE && d.im.norm() < WHOLE_SPHERE {
        PointKind::Rank0
    } else {
        PointKind::Rank2
    }
}

/// Singular units on the sphere over `z` (`β > 0`).
pub fn singular_units(f: &SliceFunction, z: Complex64, circle_samples: usize) -> SingularUnits {
    let z = Complex64::new(z.re, z.im.abs());
    match Conditions::at(f, z) {
        None => SingularUnits::WholeSphere(degenerate_kind(f, z)),
        Some(c) => c.solve(circle_samples),
    }
}

fn cloud_points(z: Complex64, s: SingularUnits) -> Vec<CloudPoint> {
    let mk = |unit, kind| CloudPoint {
        alpha: z.re,
        beta: z.im,
        unit,
        kind,
    };
    match s {
        SingularUnits::None => Vec::new(),
        SingularUnits::Points(us) | SingularUnits::Circle(us) => {
            us.into_iter().map(|u| mk(Some(u), PointKind::Rank2)).collect()
        }
        SingularUnits::WholeSphere(kind) => vec![mk(None, kind)],
    }
}

/// Grid units flagged singular by the linear conditions.
fn grid_hits(c: &Conditions, units: &[ImaginaryUnit], tol: f64) -> Vec<ImaginaryUnit> {
    units
        .iter()
        .copied()
        .filter(|u| c.residual(u.get().vector()) <= tol * c.scale)
        .collect()
}

pub fn singular_scan(f: &SliceFunction, grid: &GridSpec) -> Result<SurfaceCloud> {
    grid.validate()?;
    let d = *f.domain();
    let units = grid.sphere_units();
    let nodes = grid.base_nodes(&d);
    let per_node: Vec<(Vec<CloudPoint>, Vec<String>)> = par_flat_map(&nodes, |&(_, _, z)| {
        let Some(c) = Conditions::at(f, z) else {
            return vec![(
                cloud_points(z, SingularUnits::WholeSphere(degenerate_kind(f, z))),
                Vec::new(),
            )];
        };
        let solved = c.solve(grid.phi_steps);
        let mut pts = cloud_points(z, solved);
        let mut warnings = Vec::new();
        for u in grid_hits(&c, &units, grid.tol) {
            let covered = pts.iter().any(|p| p.unit.is_none_or(|v| v.get().dist(u.get()) <= SNAP));
            if !covered {
                warnings.push(format!(
                    "grid unit {u} at z = {}{:+}i is singular but off the closed-form solution",
                    z.re, z.im
                ));
                pts.push(CloudPoint {
                    alpha: z.re,
                    beta: z.im,
                    unit: Some(u),
                    kind: PointKind::Rank2,
                });
            }
        }
        vec![(pts, warnings)]
    });
    let mut points = Vec::new();
    let mut warnings = Vec::new();
    for (p, w) in per_node {
        points.extend(p);
        warnings.extend(w);
    }

    // Degenerate spheres between grid nodes.
    let spherical = |z: Complex64| f.stem_value(z).im / z.im;
    for z in vanishing_bases(&spherical, &d, grid) {
        points.push(CloudPoint {
            alpha: z.re,
            beta: z.im,
            unit: None,
            kind: degenerate_kind(f, z),
        });
    }

    // On the real axis the differential is multiplication by F'(α).
    if f.allows_real() {
        let g = |a: f64| f.stem().dz(Complex64::new(a, 0.0)).re.norm();
        for a in real_minima(g, d.alpha, 8 * grid.alpha_steps) {
            if g(a) <= grid.tol {
                points.push(CloudPoint {
                    alpha: a,
                    beta: 0.0,
                    unit: None,
                    kind: PointKind::Rank0,
                });
            }
        }
    }

    canonicalize(&mut points, 1e-9);
    warnings.sort();
    warnings.dedup();
    Ok(SurfaceCloud {
        provenance: Provenance::SingularSet,
        points,
        metadata: CloudMetadata {
            grid: *grid,
            domain: d,
            value: None,
        },
        warnings,
    })
}

/// Occupancy of the `(β, θ, φ)` sample grid by singular points, per `α` node.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellOccupancy {
    /// Cells per `α` node: `(B-1)(T-1)P`, with `φ` periodic.
    pub cells_per_alpha: usize,
    /// Number of cells with all 8 corners singular, per `α` node.
    pub full_cells: Vec<usize>,
    /// Fraction of singular sample points over the whole grid.
    pub singular_fraction: f64,
}

impl CellOccupancy {
    pub fn total_full(&self) -> usize {
        self.full_cells.iter().sum()
    }
}

/// Heuristic evidence that `N_f` has empty interior: 3D cells in
/// `(β, θ, φ)` whose corners are all singular at the sample tolerance.
pub fn singular_cell_occupancy(f: &SliceFunction, grid: &GridSpec) -> Result<CellOccupancy> {
    grid.validate()?;
    let d = *f.domain();
    let units = grid.sphere_units();
    let (nb, nt, np) = (grid.beta_steps, grid.theta_steps, grid.phi_steps);
    let alphas: Vec<usize> = (0..grid.alpha_steps).collect();
    let per_alpha: Vec<(usize, usize)> = par_flat_map(&alphas, |&a| {
        let alpha = grid.alpha(&d, a);
        let mut flags = vec![false; nb * nt * np];
        for b in 0..nb {
            let beta = grid.beta(&d, b);
            if beta <= 0.0 {
                continue;
            }
            let z = Complex64::new(alpha, beta);
            match Conditions::at(f, z) {
                None => flags[b * nt * np..(b + 1) * nt * np].fill(true),
                Some(c) => {
                    for (k, u) in units.iter().enumerate() {
                        flags[b * nt * np + k] = c.residual(u.get().vector()) <= grid.tol * c.scale;
                    }
                }
            }
        }
        let at = |b: usize, t: usize, p: usize| flags[(b * nt + t) * np + p % np];
        let mut full = 0;
        for b in 0..nb - 1 {
            for t in 0..nt - 1 {
                for p in 0..np {
                    let all = (0..8).all(|c| at(b + (c & 1), t + ((c >> 1) & 1), p + (c >> 2)));
                    full += all as usize;
                }
            }
        }
        vec![(full, flags.iter().filter(|&&x| x).count())]
    });
    let total = (grid.alpha_steps * nb * nt * np) as f64;
    Ok(CellOccupancy {
        cells_per_alpha: (nb - 1) * (nt - 1) * np,
        full_cells: per_alpha.iter().map(|x| x.0).collect(),
        singular_fraction: per_alpha.iter().map(|x| x.1).sum::<usize>() as f64 / total,
    })
}
