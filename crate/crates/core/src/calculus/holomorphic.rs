//! Complex polynomials, multiplicities, and argument-principle root location.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

const DERIVATIVE_TOL: f64 = 1e-10;
const SCAN_CELLS: usize = 64;
const EDGE_SAMPLES: usize = 16;
const NEWTON_STEPS: usize = 50;
/// Grid lines sit off round fractions so roots at simple points avoid them.
const GRID_JITTER: f64 = std::f64::consts::FRAC_1_PI;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HolomorphicPoly(pub Vec<Complex64>);

impl HolomorphicPoly {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        Self(coeffs)
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.0
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> HolomorphicPoly {
        HolomorphicPoly(self.0.iter().enumerate().skip(1).map(|(n, &c)| c * n as f64).collect())
    }

    pub fn scale(&self) -> f64 {
        self.0.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Degree after dropping leading coefficients below `tol` relative to the
    /// largest one; `None` for the zero polynomial.
    pub fn degree(&self, tol: f64) -> Option<usize> {
        let cut = tol * self.scale().max(f64::MIN_POSITIVE);
        self.0.iter().rposition(|c| c.norm() > cut)
    }

    pub fn sub_constant(&self, w: Complex64) -> HolomorphicPoly {
        let mut c = self.0.clone();
        if c.is_empty() {
            c.push(Complex64::new(0.0, 0.0));
        }
        c[0] -= w;
        HolomorphicPoly(c)
    }
}

/// `n(x; g)`, or an unbounded count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Multiplicity {
    Finite(u32),
    Infinite,
}

impl Multiplicity {
    pub fn finite(self) -> Option<u32> {
        match self {
            Multiplicity::Finite(k) => Some(k),
            Multiplicity::Infinite => None,
        }
    }
}

impl std::fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Multiplicity::Finite(k) => write!(f, "{k}"),
            Multiplicity::Infinite => write!(f, "inf"),
        }
    }
}

/// Smallest `k >= 1` with `g^(k)(x) != 0`.
pub fn holomorphic_multiplicity(g: &HolomorphicPoly, x: Complex64) -> Multiplicity {
    let mut d = g.derivative();
    for k in 1..g.0.len().max(1) {
        if d.eval(x).norm() > DERIVATIVE_TOL {
            return Multiplicity::Finite(k as u32);
        }
        d = d.derivative();
    }
    Multiplicity::Infinite
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    Rect { re: [f64; 2], im: [f64; 2] },
    Disc { center: Complex64, radius: f64 },
}

impl Region {
    pub fn contains(&self, z: Complex64) -> bool {
        match *self {
            Region::Rect { re, im } => (re[0]..=re[1]).contains(&z.re) && (im[0]..=im[1]).contains(&z.im),
            Region::Disc { center, radius } => (z - center).norm() < radius,
        }
    }

    fn bounding_box(&self) -> ([f64; 2], [f64; 2]) {
        match *self {
            Region::Rect { re, im } => (re, im),
            Region::Disc { center, radius } => (
                [center.re - radius, center.re + radius],
                [center.im - radius, center.im + radius],
            ),
        }
    }
}

/// `v_g(w) = Σ_{g(z) = w} n(z; g)` over the region.
pub fn valence(g: &HolomorphicPoly, w: Complex64, region: Region) -> Multiplicity {
    let p = g.sub_constant(w);
    match p.degree(1e-14) {
        None => Multiplicity::Infinite,
        Some(0) => Multiplicity::Finite(0),
        Some(_) => {
            let dp = p.derivative();
            let roots = locate_roots(|z| p.eval(z), |z| dp.eval(z), region, SCAN_CELLS);
            Multiplicity::Finite(roots.iter().map(|r| r.order).sum())
        }
    }
}

/// A root with the winding number of the cell that enclosed it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootHit {
    pub z: Complex64,
    pub order: u32,
}

/// Roots of `g` in the region: winding numbers over a `cells x cells` grid,
/// then Newton refinement from each enclosing cell's center.
pub fn locate_roots<G, D>(g: G, dg: D, region: Region, cells: usize) -> Vec<RootHit>
where
    G: Fn(Complex64) -> Complex64,
    D: Fn(Complex64) -> Complex64,
{
    let (re, im) = region.bounding_box();
    let pad_re = (re[1] - re[0]) / cells as f64;
    let pad_im = (im[1] - im[0]) / cells as f64;
    let re0 = re[0] - pad_re * GRID_JITTER;
    let im0 = im[0] - pad_im * GRID_JITTER;
    let n = cells + 1;
    let node = |a: usize, b: usize| Complex64::new(re0 + a as f64 * pad_re, im0 + b as f64 * pad_im);

    let mut hits = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let corners = [node(a, b), node(a + 1, b), node(a + 1, b + 1), node(a, b + 1)];
            let winding = cell_winding(&g, &corners);
            if winding <= 0 {
                continue;
            }
            let center = (corners[0] + corners[2]) * 0.5;
            let z = newton(&g, &dg, center, pad_re.max(pad_im));
            let z = if in_cell(z, &corners, 0.5) { z } else { center };
            if region.contains(z) {
                hits.push(RootHit {
                    z,
                    order: winding as u32,
                });
            }
        }
    }
    hits
}

fn in_cell(z: Complex64, c: &[Complex64; 4], slack: f64) -> bool {
    let w = (c[1].re - c[0].re) * slack;
    let h = (c[3].im - c[0].im) * slack;
    z.re >= c[0].re - w && z.re <= c[1].re + w && z.im >= c[0].im - h && z.im <= c[3].im + h
}

fn cell_winding<G: Fn(Complex64) -> Complex64>(g: &G, corners: &[Complex64; 4]) -> i64 {
    let mut total = 0.0;
    let mut prev = g(corners[0]);
    for e in 0..4 {
        let (a, b) = (corners[e], corners[(e + 1) % 4]);
        for s in 1..=EDGE_SAMPLES {
            let z = a + (b - a) * (s as f64 / EDGE_SAMPLES as f64);
            let v = g(z);
            if v.norm() == 0.0 || prev.norm() == 0.0 {
                prev = v;
                continue;
            }
            let mut d = v.arg() - prev.arg();
            if d > PI {
                d -= 2.0 * PI;
            } else if d < -PI {
                d += 2.0 * PI;
            }
            total += d;
            prev = v;
        }
    }
    (total / (2.0 * PI)).round() as i64
}

pub(crate) fn newton<G, D>(g: &G, dg: &D, start: Complex64, scale: f64) -> Complex64
where
    G: Fn(Complex64) -> Complex64,
    D: Fn(Complex64) -> Complex64,
{
    let mut z = start;
    for _ in 0..NEWTON_STEPS {
        let d = dg(z);
        if d.norm() == 0.0 {
            break;
        }
        let step = g(z) / d;
        let step = if step.norm() > scale {
            step * (scale / step.norm())
        } else {
            step
        };
        z -= step;
        if step.norm() <= 1e-16 * (1.0 + z.norm()) {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn multiplicities() {
        let z2 = HolomorphicPoly::from_real(&[0.0, 0.0, 1.0]);
        assert_eq!(holomorphic_multiplicity(&z2, c(0.0, 0.0)), Multiplicity::Finite(2));
        let z = HolomorphicPoly::from_real(&[0.0, 1.0]);
        assert_eq!(holomorphic_multiplicity(&z, c(0.7, -3.0)), Multiplicity::Finite(1));
        // (z - 1)^3 + 5 = z^3 - 3z^2 + 3z + 4
        let cubic = HolomorphicPoly::from_real(&[4.0, 3.0, -3.0, 1.0]);
        assert_eq!(holomorphic_multiplicity(&cubic, c(1.0, 0.0)), Multiplicity::Finite(3));
        let constant = HolomorphicPoly::from_real(&[2.0]);
        assert_eq!(holomorphic_multiplicity(&constant, c(0.0, 0.0)), Multiplicity::Infinite);
    }

    #[test]
    fn valences() {
        let z2 = HolomorphicPoly::from_real(&[0.0, 0.0, 1.0]);
        let disc = Region::Disc {
            center: c(0.0, 0.0),
            radius: 2.0,
        };
        assert_eq!(valence(&z2, c(1.0, 0.0), disc), Multiplicity::Finite(2));
        assert_eq!(valence(&z2, c(0.0, 0.0), disc), Multiplicity::Finite(2));
        assert_eq!(valence(&z2, c(9.0, 0.0), disc), Multiplicity::Finite(0));
        let constant = HolomorphicPoly::from_real(&[3.0]);
        assert_eq!(valence(&constant, c(3.0, 0.0), disc), Multiplicity::Infinite);
        let upper = Region::Rect {
            re: [-2.0, 2.0],
            im: [0.5, 2.0],
        };
        let shifted = HolomorphicPoly::from_real(&[1.0, 0.0, 1.0]);
        assert_eq!(valence(&shifted, c(0.0, 0.0), upper), Multiplicity::Finite(1));
    }

    #[test]
    fn roots_are_refined() {
        let p = HolomorphicPoly::from_real(&[-2.0, 0.0, 1.0]);
        let dp = p.derivative();
        let region = Region::Rect {
            re: [0.0, 3.0],
            im: [-1.0, 1.0],
        };
        let roots = locate_roots(|z| p.eval(z), |z| dp.eval(z), region, 32);
        assert_eq!(roots.len(), 1);
        assert!((roots[0].z - c(2f64.sqrt(), 0.0)).norm() < 1e-14);
    }
}
