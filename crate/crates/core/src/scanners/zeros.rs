//! Zero sets, constant surfaces, degenerate spheres and total multiplicity.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::refine::{real_minima, vanishing_bases};
use super::{canonicalize, par_flat_map, CloudMetadata, CloudPoint, GridSpec, PointKind, Provenance, SurfaceCloud};
use crate::calculus::holomorphic::locate_roots;
use crate::calculus::{HolomorphicPoly, Region};
use crate::error::{Error, Result};
use crate::quaternion::{characteristic_poly, ComplexifiedQuaternion as Hc, ImaginaryUnit, Quaternion};
use crate::slicefn::{normal_polynomial, SliceFunction, StemFunction};

const ROOT_CELLS: usize = 64;
const DEDUPE_TOL: f64 = 1e-6;
const DIVISIBILITY_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroKind {
    Real,
    /// The whole sphere `α + Sβ`.
    Spherical,
    /// The only zero on its sphere, with no zeros on neighbouring spheres.
    SIsolated,
    /// The only zero on its sphere, on a two-dimensional family of such zeros.
    SurfaceMember,
}

impl ZeroKind {
    fn point_kind(self) -> PointKind {
        match self {
            ZeroKind::Real => PointKind::Real,
            ZeroKind::Spherical => PointKind::Spherical,
            ZeroKind::SIsolated => PointKind::SIsolated,
            ZeroKind::SurfaceMember => PointKind::SurfaceMember,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroRecord {
    /// The zero itself; `α + iβ` stands for a spherical zero.
    pub point: Quaternion,
    pub kind: ZeroKind,
    pub alpha: f64,
    pub beta: f64,
    pub unit: Option<ImaginaryUnit>,
}

impl ZeroRecord {
    fn new(z: Complex64, kind: ZeroKind, unit: Option<ImaginaryUnit>) -> Self {
        let point = match unit {
            Some(u) => Quaternion::real(z.re) + u.get() * z.im,
            None => Quaternion::new(z.re, z.im, 0.0, 0.0),
        };
        Self {
            point,
            kind,
            alpha: z.re,
            beta: z.im,
            unit,
        }
    }

    pub fn base(&self) -> Complex64 {
        Complex64::new(self.alpha, self.beta)
    }

    pub fn cloud_point(&self) -> CloudPoint {
        CloudPoint {
            alpha: self.alpha,
            beta: self.beta,
            unit: self.unit,
            kind: self.kind.point_kind(),
        }
    }

    fn from_cloud_point(p: &CloudPoint) -> Self {
        let kind = match p.kind {
            PointKind::Real => ZeroKind::Real,
            PointKind::Spherical => ZeroKind::Spherical,
            PointKind::SurfaceMember => ZeroKind::SurfaceMember,
            _ => ZeroKind::SIsolated,
        };
        Self::new(p.base(), kind, p.unit)
    }
}

/// How the zero set meets one sphere.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SphereClass {
    Empty,
    WholeSphere,
    SinglePoint(ImaginaryUnit),
}

/// Zero set on `α + Sβ` from the stem value: both components vanish, or the
/// candidate `I = -F1 F2^{-1}` is a unit.
pub(crate) fn classify_value(v: Hc, tol: f64) -> SphereClass {
    let (f1, f2) = (v.re, v.im);
    if f1.norm() <= tol && f2.norm() <= tol {
        return SphereClass::WholeSphere;
    }
    if f2.norm() <= tol {
        return SphereClass::Empty;
    }
    let cand = -(f1 * f2.inverse().expect("nonzero"));
    if (cand.norm() - 1.0).abs() <= tol && cand.re().abs() <= tol {
        match ImaginaryUnit::normalize(cand.im()) {
            Some(u) => SphereClass::SinglePoint(u),
            None => SphereClass::Empty,
        }
    } else {
        SphereClass::Empty
    }
}

pub fn classify_sphere(f: &SliceFunction, z: Complex64, grid: &GridSpec) -> SphereClass {
    classify_value(f.stem_value(Complex64::new(z.re, z.im.abs())), grid.tol)
}

/// Stem of `N(f)` evaluated in the upper half plane:
/// `‖F1‖² - ‖F2‖² + 2 i g(F1, F2)`.
fn normal_stem(f: &SliceFunction) -> Box<dyn Fn(Complex64) -> Complex64 + Sync + '_> {
    match normal_polynomial(f) {
        Ok(c) => {
            let p = HolomorphicPoly::new(c);
            Box::new(move |z| p.eval(z))
        }
        Err(_) => Box::new(move |z| {
            let v = f.stem_value(z);
            Complex64::new(v.re.norm_sqr() - v.im.norm_sqr(), 2.0 * v.re.dot(v.im))
        }),
    }
}

pub fn scan_zeros(f: &SliceFunction, grid: &GridSpec) -> Result<Vec<ZeroRecord>> {
    grid.validate()?;
    let d = *f.domain();
    let nodes = grid.base_nodes(&d);
    let classes: Vec<(usize, usize, Complex64, SphereClass)> = par_flat_map(&nodes, |&(a, b, z)| {
        vec![(a, b, z, classify_value(f.stem_value(z), grid.tol))]
    });

    let (na, nb) = (grid.alpha_steps, grid.beta_steps);
    let mut single = vec![false; na * nb];
    for &(a, b, _, c) in &classes {
        single[a * nb + b] = matches!(c, SphereClass::SinglePoint(_));
    }
    let neighbour_hit = |a: usize, b: usize| {
        let mut hit = false;
        if a > 0 {
            hit |= single[(a - 1) * nb + b];
        }
        if a + 1 < na {
            hit |= single[(a + 1) * nb + b];
        }
        if b > 0 {
            hit |= single[a * nb + b - 1];
        }
        if b + 1 < nb {
            hit |= single[a * nb + b + 1];
        }
        hit
    };

    let mut points: Vec<CloudPoint> = Vec::new();
    for &(a, b, z, c) in &classes {
        match c {
            SphereClass::Empty => {}
            SphereClass::WholeSphere => points.push(ZeroRecord::new(z, ZeroKind::Spherical, None).cloud_point()),
            SphereClass::SinglePoint(u) => {
                let kind = if neighbour_hit(a, b) {
                    ZeroKind::SurfaceMember
                } else {
                    ZeroKind::SIsolated
                };
                points.push(ZeroRecord::new(z, kind, Some(u)).cloud_point());
            }
        }
    }

    // Zeros between nodes are roots of the normal stem.
    let n = normal_stem(f);
    let n_scale = classes.iter().map(|&(_, _, z, _)| n(z).norm()).fold(0.0, f64::max);
    if n_scale > grid.tol {
        let h = |z: Complex64| {
            let s = crate::slicefn::stem::fd_step(z);
            (n(z + s) - n(z - s)) / (2.0 * s)
        };
        let region = Region::Rect {
            re: d.alpha,
            im: d.beta,
        };
        for root in locate_roots(&n, h, region, ROOT_CELLS) {
            let z = root.z;
            if z.im <= 1e-9 {
                continue;
            }
            match classify_value(f.stem_value(z), grid.tol.max(1e-6)) {
                SphereClass::WholeSphere => points.push(ZeroRecord::new(z, ZeroKind::Spherical, None).cloud_point()),
                SphereClass::SinglePoint(u) => {
                    let near_surface = points.iter().any(|p| {
                        p.kind == PointKind::SurfaceMember
                            && (p.base() - z).norm() <= 1.5 * grid.cell(&d).0.max(grid.cell(&d).1)
                    });
                    let kind = if near_surface {
                        ZeroKind::SurfaceMember
                    } else {
                        ZeroKind::SIsolated
                    };
                    points.push(ZeroRecord::new(z, kind, Some(u)).cloud_point());
                }
                SphereClass::Empty => {}
            }
        }
    }

    if f.allows_real() {
        let g = |a: f64| f.stem_value(Complex64::new(a, 0.0)).re.norm();
        for a in real_minima(g, d.alpha, 8 * grid.alpha_steps) {
            if g(a) <= grid.tol {
                points.push(ZeroRecord::new(Complex64::new(a, 0.0), ZeroKind::Real, None).cloud_point());
            }
        }
    }

    canonicalize_zero_points(&mut points);
    Ok(points.iter().map(ZeroRecord::from_cloud_point).collect())
}

/// Drops repeated hits of one zero: node hits, refined roots and
/// multiplicities can all report it.
fn canonicalize_zero_points(points: &mut Vec<CloudPoint>) {
    canonicalize(points, DEDUPE_TOL);
    let mut kept: Vec<CloudPoint> = Vec::with_capacity(points.len());
    for p in points.drain(..) {
        let dup = kept.iter().any(|q| {
            (q.base() - p.base()).norm() <= DEDUPE_TOL
                && match (q.unit, p.unit) {
                    (Some(u), Some(v)) => u.get().dist(v.get()) <= DEDUPE_TOL,
                    (None, None) => true,
                    _ => false,
                }
        });
        if !dup {
            kept.push(p);
        }
    }
    *points = kept;
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstantSurfaceReport {
    /// Zeros of `f - q` off the flagged semislices.
    pub cloud: SurfaceCloud,
    /// Units `I` with `f ≡ q` on the sampled semislice `D_I^+`.
    pub semislices: Vec<ImaginaryUnit>,
    /// Largest `|g(F1,F1) - g(F2,F2)|` or `|g(F1,F2)|` over reported points.
    pub surfzero_residual: f64,
}

/// Level set `f = q`: zeros of `f - q`, semislices where `f ≡ q`, and the
/// surface system residuals on reported points.
pub fn constant_surface_extract(f: &SliceFunction, q: Quaternion, grid: &GridSpec) -> Result<ConstantSurfaceReport> {
    let g = f.sub_constant(q);
    let records = scan_zeros(&g, grid)?;
    let d = *f.domain();

    let mut candidates = grid.sphere_units();
    for r in &records {
        if let Some(u) = r.unit {
            if !candidates.iter().any(|c| c.get().dist(u.get()) <= 1e-9) {
                candidates.push(u);
            }
        }
    }
    let nodes = grid.base_nodes(&d);
    let mut semislices: Vec<ImaginaryUnit> = par_flat_map(&candidates, |&u| {
        let constant = nodes
            .iter()
            .all(|&(_, _, z)| g.value_raw(z.re, z.im, u).norm() <= grid.tol);
        if constant {
            vec![u]
        } else {
            Vec::new()
        }
    });
    semislices.sort_by(|a, b| {
        let (x, y) = (a.get().vector(), b.get().vector());
        x.iter()
            .zip(&y)
            .map(|(p, q)| p.total_cmp(q))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    semislices.dedup_by(|a, b| a.get().dist(b.get()) <= 1e-6);

    let on_semislice = |r: &ZeroRecord| {
        r.unit
            .map(|u| semislices.iter().any(|s| s.get().dist(u.get()) <= 1e-6))
            .unwrap_or(false)
    };
    let mut residual: f64 = 0.0;
    let mut points = Vec::new();
    for r in records.iter().filter(|r| !on_semislice(r)) {
        let v = g.stem_value(r.base());
        residual = residual
            .max((v.re.norm_sqr() - v.im.norm_sqr()).abs())
            .max(v.re.dot(v.im).abs());
        points.push(r.cloud_point());
    }
    Ok(ConstantSurfaceReport {
        cloud: SurfaceCloud {
            provenance: Provenance::ConstantSurface,
            points,
            metadata: CloudMetadata {
                grid: *grid,
                domain: d,
                value: Some(q),
            },
            warnings: Vec::new(),
        },
        semislices,
        surfzero_residual: residual,
    })
}

/// Spheres where `∂_s f` vanishes; `f` is constant on each of them.
pub fn degenerate_scan(f: &SliceFunction, grid: &GridSpec) -> Result<SurfaceCloud> {
    grid.validate()?;
    let d = *f.domain();
    let spherical = |z: Complex64| f.stem_value(z).im / z.im;
    let mut points: Vec<CloudPoint> = vanishing_bases(&spherical, &d, grid)
        .into_iter()
        .map(|z| CloudPoint {
            alpha: z.re,
            beta: z.im,
            unit: None,
            kind: PointKind::Degenerate,
        })
        .collect();
    if f.allows_real() {
        let g = |a: f64| f.stem().dz(Complex64::new(a, 0.0)).re.norm();
        for a in real_minima(g, d.alpha, 8 * grid.alpha_steps) {
            if g(a) <= grid.tol {
                points.push(CloudPoint {
                    alpha: a,
                    beta: 0.0,
                    unit: None,
                    kind: PointKind::Degenerate,
                });
            }
        }
    }
    canonicalize(&mut points, 1e-9);
    Ok(SurfaceCloud {
        provenance: Provenance::DegenerateSet,
        points,
        metadata: CloudMetadata {
            grid: *grid,
            domain: d,
            value: None,
        },
        warnings: Vec::new(),
    })
}

fn normal_scaled(f: &SliceFunction) -> Result<(Vec<Complex64>, f64)> {
    let n = normal_polynomial(f)?;
    let scale = n.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale == 0.0 || HolomorphicPoly::new(n.clone()).degree(1e-12).is_none() {
        return Err(Error::UndefinedMultiplicity);
    }
    Ok((n, scale))
}

/// Largest `n` with `Δ_{x0}^n | N(f)`; `0` when `f(x0) != 0`.
///
/// Stems that never reach the real axis use the order of `z0` as a root of
/// the stem of `N(f)`, which agrees with the divisibility count whenever
/// `N(f)` has real coefficients.
pub fn total_multiplicity(f: &SliceFunction, x0: Quaternion) -> Result<u32> {
    let (n, scale) = normal_scaled(f)?;
    if f.evaluate_extended(x0).norm() > 1e-8 * (1.0 + scale.sqrt()) {
        return Ok(0);
    }
    match f.stem() {
        StemFunction::Polynomial(_) => {
            let delta = characteristic_poly(x0);
            let mut p: Vec<f64> = n.iter().map(|c| c.re).collect();
            let mut count = 0;
            while p.len() >= 3 {
                let (q, r0, r1) = divide_real(&p, delta.c1, delta.c0);
                let norm = p.iter().map(|c| c.abs()).fold(0.0, f64::max);
                if r0.abs().max(r1.abs()) > DIVISIBILITY_TOL * norm.max(1.0) {
                    break;
                }
                count += 1;
                p = q;
            }
            Ok(count)
        }
        _ => {
            let z0 = Complex64::new(x0.re(), x0.im_norm());
            Ok(root_order(&HolomorphicPoly::new(n), z0, scale))
        }
    }
}

fn divide_real(p: &[f64], b: f64, c: f64) -> (Vec<f64>, f64, f64) {
    let mut r = p.to_vec();
    let mut q = vec![0.0; r.len() - 2];
    for k in (2..r.len()).rev() {
        let lead = r[k];
        q[k - 2] = lead;
        r[k - 1] -= lead * b;
        r[k - 2] -= lead * c;
    }
    (q, r[0], r[1])
}

fn root_order(p: &HolomorphicPoly, z0: Complex64, scale: f64) -> u32 {
    let mut d = p.clone();
    let mut factorial = 1.0;
    for k in 0..p.0.len() {
        if k > 0 {
            d = d.derivative();
            factorial *= k as f64;
        }
        if (d.eval(z0) / factorial).norm() > DIVISIBILITY_TOL * scale {
            return k as u32;
        }
    }
    p.0.len() as u32
}

/// Sum of total multiplicities of the zeros of `f` on spheres with base in
/// the disc `|z - center| < radius` of the upper half plane.
pub fn total_multiplicity_near(f: &SliceFunction, center: Complex64, radius: f64) -> Result<u32> {
    let (n, _) = normal_scaled(f)?;
    let p = HolomorphicPoly::new(n);
    let dp = p.derivative();
    let region = Region::Disc { center, radius };
    Ok(locate_roots(|z| p.eval(z), |z| dp.eval(z), region, ROOT_CELLS)
        .iter()
        .filter(|r| r.z.im > 0.0)
        .map(|r| r.order)
        .sum())
}
