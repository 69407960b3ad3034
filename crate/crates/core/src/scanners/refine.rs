//! Local refinement shared by the scanners.

use num_complex::Complex64;
use rayon::prelude::*;

use super::GridSpec;
use crate::quaternion::Quaternion;
use crate::slicefn::CircularDomain;

const GOLDEN: f64 = 0.618_033_988_749_894_8;

/// Local minimizers of a nonnegative `g` on `[a0, a1]`: sampled at `n`
/// points, then golden-section refined on each bracketing pair of cells.
pub(crate) fn real_minima<G: Fn(f64) -> f64>(g: G, range: [f64; 2], n: usize) -> Vec<f64> {
    let n = n.max(3);
    let xs: Vec<f64> = (0..n)
        .map(|k| range[0] + (range[1] - range[0]) * k as f64 / (n - 1) as f64)
        .collect();
    let vs: Vec<f64> = xs.iter().map(|&x| g(x)).collect();
    let mut out = Vec::new();
    for k in 0..n {
        let left = if k == 0 { f64::INFINITY } else { vs[k - 1] };
        let right = if k + 1 == n { f64::INFINITY } else { vs[k + 1] };
        if vs[k] <= left && vs[k] < right {
            let lo = xs[k.saturating_sub(1)];
            let hi = xs[(k + 1).min(n - 1)];
            out.push(golden_section(&g, lo, hi));
        }
    }
    out
}

fn golden_section<G: Fn(f64) -> f64>(g: &G, mut lo: f64, mut hi: f64) -> f64 {
    let mut x1 = hi - GOLDEN * (hi - lo);
    let mut x2 = lo + GOLDEN * (hi - lo);
    let (mut g1, mut g2) = (g(x1), g(x2));
    for _ in 0..200 {
        if hi - lo <= 1e-15 * (1.0 + lo.abs()) {
            break;
        }
        if g1 <= g2 {
            hi = x2;
            x2 = x1;
            g2 = g1;
            x1 = hi - GOLDEN * (hi - lo);
            g1 = g(x1);
        } else {
            lo = x1;
            x1 = x2;
            g1 = g2;
            x2 = lo + GOLDEN * (hi - lo);
            g2 = g(x2);
        }
    }
    if g1 <= g2 {
        x1
    } else {
        x2
    }
}

/// Bases `z` in `D+` (with `β > 0`) where the quaternion-valued `g`
/// vanishes: grid nodes below `tol`, plus Gauss–Newton refinements started
/// from the remaining local minima of `‖g‖`.
pub(crate) fn vanishing_bases<G>(g: &G, d: &CircularDomain, grid: &GridSpec) -> Vec<Complex64>
where
    G: Fn(Complex64) -> Quaternion + Sync,
{
    let (na, nb) = (grid.alpha_steps, grid.beta_steps);
    let nodes: Vec<(usize, usize)> = (0..na).flat_map(|a| (0..nb).map(move |b| (a, b))).collect();
    let norms: Vec<f64> = super::pool().install(|| {
        nodes
            .par_iter()
            .map(|&(a, b)| {
                let beta = grid.beta(d, b);
                if beta > 0.0 {
                    g(Complex64::new(grid.alpha(d, a), beta)).norm()
                } else {
                    f64::INFINITY
                }
            })
            .collect()
    });
    let at = |a: usize, b: usize| norms[a * nb + b];
    let (ca, cb) = grid.cell(d);
    let found: Vec<Complex64> = super::pool().install(|| {
        nodes
            .par_iter()
            .filter_map(|&(a, b)| {
                let v = at(a, b);
                if !v.is_finite() {
                    return None;
                }
                let z = Complex64::new(grid.alpha(d, a), grid.beta(d, b));
                if v <= grid.tol {
                    return Some(z);
                }
                let lo_a = a.saturating_sub(1);
                let lo_b = b.saturating_sub(1);
                for x in lo_a..=(a + 1).min(na - 1) {
                    for y in lo_b..=(b + 1).min(nb - 1) {
                        if (x, y) != (a, b) && at(x, y) < v {
                            return None;
                        }
                    }
                }
                let r = gauss_newton(g, z, ca.max(cb))?;
                let inside = r.im > 0.0 && d.contains_base(r.re, r.im);
                (inside && g(r).norm() <= grid.tol).then_some(r)
            })
            .collect()
    });
    dedupe_bases(found, 1e-7)
}

pub(crate) fn dedupe_bases(mut zs: Vec<Complex64>, tol: f64) -> Vec<Complex64> {
    zs.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let mut out: Vec<Complex64> = Vec::with_capacity(zs.len());
    for z in zs {
        if !out
            .iter()
            .rev()
            .take_while(|w| z.re - w.re <= tol)
            .any(|w| (w - z).norm() <= tol)
        {
            out.push(z);
        }
    }
    out
}

/// Least-squares zero of `g: R² -> R⁴` near `start`, steps capped at `scale`.
fn gauss_newton<G: Fn(Complex64) -> Quaternion>(g: &G, start: Complex64, scale: f64) -> Option<Complex64> {
    let mut z = start;
    for _ in 0..60 {
        let r = g(z).components();
        let h = 1e-7 * z.norm().max(1.0);
        let ja = g(z + h) - g(z - h);
        let jb = g(z + Complex64::new(0.0, h)) - g(z - Complex64::new(0.0, h));
        let (ja, jb) = ((ja / (2.0 * h)).components(), (jb / (2.0 * h)).components());
        let dot = |u: &[f64; 4], v: &[f64; 4]| u.iter().zip(v).map(|(x, y)| x * y).sum::<f64>();
        let (m11, m12, m22) = (dot(&ja, &ja), dot(&ja, &jb), dot(&jb, &jb));
        let (g1, g2) = (dot(&ja, &r), dot(&jb, &r));
        let damp = 1e-14 * (m11 + m22);
        let det = (m11 + damp) * (m22 + damp) - m12 * m12;
        if det.abs() < 1e-300 {
            return None;
        }
        let da = -((m22 + damp) * g1 - m12 * g2) / det;
        let db = -((m11 + damp) * g2 - m12 * g1) / det;
        let mut step = Complex64::new(da, db);
        if step.norm() > scale {
            step *= scale / step.norm();
        }
        z += step;
        if !(z.re.is_finite() && z.im.is_finite()) || (z - start).norm() > 4.0 * scale {
            return None;
        }
        if step.norm() <= 1e-15 * (1.0 + z.norm()) {
            break;
        }
    }
    Some(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minima_of_parabola() {
        let m = real_minima(|x| (x - 0.3).powi(2), [-1.0, 1.0], 17);
        assert_eq!(m.len(), 1);
        assert!((m[0] - 0.3).abs() < 1e-7);
    }

    #[test]
    fn vanishing_line() {
        let d = CircularDomain::new([-2.0, 2.0], [0.0, 2.0]).unwrap();
        let grid = GridSpec {
            alpha_steps: 16,
            beta_steps: 8,
            ..GridSpec::default()
        };
        let g = |z: Complex64| Quaternion::real(2.0 * z.re);
        let zs = vanishing_bases(&g, &d, &grid);
        assert_eq!(zs.len(), 7);
        assert!(zs.iter().all(|z| z.re.abs() < 1e-12));
    }
}
