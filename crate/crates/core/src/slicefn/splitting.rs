use num_complex::Complex64;

use super::SliceFunction;
use crate::error::{Error, Result};
use crate::quaternion::{ImaginaryUnit, Quaternion, SliceCoordinates};

/// `f_J = f1 + f2 K` on the slice `C_J`, with `f1, f2` valued in `C_J`.
///
/// Complex numbers `a + ib` stand for `a + Jb`.
#[derive(Clone, Debug)]
pub struct Splitting {
    f: SliceFunction,
    j: ImaginaryUnit,
    k: ImaginaryUnit,
}

pub fn splitting_decompose(f: &SliceFunction, j: ImaginaryUnit, k: ImaginaryUnit) -> Result<Splitting> {
    let g = j.get().dot(k.get());
    if g.abs() > 1e-9 {
        return Err(Error::NotOrthogonal(g));
    }
    Ok(Splitting { f: f.clone(), j, k })
}

impl Splitting {
    pub fn restriction(&self, z: Complex64) -> Quaternion {
        self.f
            .value_at(super::Location::Slice(SliceCoordinates::new(z.re, z.im, self.j)))
    }

    /// Both components at `z`.
    pub fn components(&self, z: Complex64) -> (Complex64, Complex64) {
        let q = self.restriction(z);
        let (j, k) = (self.j.get(), self.k.get());
        let jk = j * k;
        (Complex64::new(q.w, q.dot(j)), Complex64::new(q.dot(k), q.dot(jk)))
    }

    pub fn f1(&self, z: Complex64) -> Complex64 {
        self.components(z).0
    }

    pub fn f2(&self, z: Complex64) -> Complex64 {
        self.components(z).1
    }

    /// Largest `|∂g/∂z̄|` over both components by central differences.
    pub fn cauchy_riemann_residual(&self, z: Complex64) -> f64 {
        let h = super::stem::fd_step(z);
        let ih = Complex64::new(0.0, h);
        let (a1, a2) = self.components(z + h);
        let (b1, b2) = self.components(z - h);
        let (c1, c2) = self.components(z + ih);
        let (d1, d2) = self.components(z - ih);
        let dzbar = |pa: Complex64, ma: Complex64, pb: Complex64, mb: Complex64| {
            let da = (pa - ma) / (2.0 * h);
            let db = (pb - mb) / (2.0 * h);
            ((da + Complex64::i() * db) * 0.5).norm()
        };
        dzbar(a1, b1, c1, d1).max(dzbar(a2, b2, c2, d2))
    }

    pub fn units(&self) -> (ImaginaryUnit, ImaginaryUnit) {
        (self.j, self.k)
    }
}
