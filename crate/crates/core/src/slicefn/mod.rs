//! Slice functions on circular domains.

mod algebra;
mod splitting;
pub mod stem;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quaternion::{ComplexifiedQuaternion as Hc, ImaginaryUnit, Quaternion, SliceCoordinates};

pub use algebra::{conjugate, normal, normal_polynomial, prodcomp_check, slice_product};
pub use splitting::{splitting_decompose, Splitting};
pub use stem::{ClosureStem, StemFunction, TwoSliceStem};

const PARITY_PROBES: usize = 16;
const PARITY_TOL: f64 = 1e-8;
const PREDICATE_PROBES: usize = 64;
const PREDICATE_TOL: f64 = 1e-9;

/// Rectangle `D+ = [a0, a1] x [b0, b1]` in `(alpha, beta)` with `b0 >= 0`;
/// its circularization is the domain `Ω_D`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircularDomain {
    pub alpha: [f64; 2],
    pub beta: [f64; 2],
}

impl Default for CircularDomain {
    fn default() -> Self {
        Self {
            alpha: [-2.0, 2.0],
            beta: [0.0, 2.0],
        }
    }
}

impl CircularDomain {
    pub fn new(alpha: [f64; 2], beta: [f64; 2]) -> Result<Self> {
        let d = Self { alpha, beta };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = self.alpha.iter().chain(&self.beta).all(|v| v.is_finite());
        if !finite || self.alpha[0] >= self.alpha[1] {
            return Err(Error::field("domain.alpha", "expected finite [a0, a1] with a0 < a1"));
        }
        if self.beta[0] < 0.0 || self.beta[0] >= self.beta[1] {
            return Err(Error::field(
                "domain.beta",
                "expected finite [b0, b1] with 0 <= b0 < b1",
            ));
        }
        Ok(())
    }

    pub fn intersects_real(&self) -> bool {
        self.beta[0] == 0.0
    }

    pub fn contains_base(&self, alpha: f64, beta: f64) -> bool {
        let beta = beta.abs();
        (self.alpha[0]..=self.alpha[1]).contains(&alpha) && (self.beta[0]..=self.beta[1]).contains(&beta)
    }

    /// `x ∈ Ω_D` iff `(Re x, ‖Im x‖)` lies in the rectangle.
    pub fn contains(&self, x: Quaternion) -> bool {
        self.contains_base(x.re(), x.im_norm())
    }

    /// Point of `D+` at fractional position `(s, t) ∈ [0, 1]²`.
    pub fn lerp(&self, s: f64, t: f64) -> Complex64 {
        Complex64::new(
            self.alpha[0] + s * (self.alpha[1] - self.alpha[0]),
            self.beta[0] + t * (self.beta[1] - self.beta[0]),
        )
    }
}

/// Where a quaternion sits relative to the slice structure.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Location {
    Real(f64),
    Slice(SliceCoordinates),
}

impl Location {
    pub fn of(x: Quaternion) -> Location {
        match crate::quaternion::to_slice_coords(x) {
            Ok(c) => Location::Slice(c),
            Err(_) => Location::Real(x.re()),
        }
    }

    pub fn base(self) -> Complex64 {
        match self {
            Location::Real(a) => Complex64::new(a, 0.0),
            Location::Slice(c) => c.base(),
        }
    }

    /// Unit of the slice; real points use `fallback`.
    pub fn unit_or(self, fallback: ImaginaryUnit) -> ImaginaryUnit {
        match self {
            Location::Real(_) => fallback,
            Location::Slice(c) => c.unit,
        }
    }
}

/// The slice function `f = I(F)` induced by a stem on a circular domain.
#[derive(Clone, Debug)]
pub struct SliceFunction {
    stem: StemFunction,
    domain: CircularDomain,
}

impl SliceFunction {
    /// Validates the domain and spot-checks the parity of closure stems.
    pub fn new(stem: StemFunction, domain: CircularDomain) -> Result<Self> {
        domain.validate()?;
        if let StemFunction::Closure(_) = &stem {
            check_parity(&stem, &domain)?;
        }
        Ok(Self { stem, domain })
    }

    pub fn polynomial(coeffs: impl Into<Vec<Quaternion>>, domain: CircularDomain) -> Result<Self> {
        Self::new(StemFunction::polynomial(coeffs), domain)
    }

    pub fn constant(c: Quaternion, domain: CircularDomain) -> Result<Self> {
        Self::new(StemFunction::constant(c), domain)
    }

    pub fn identity(domain: CircularDomain) -> Result<Self> {
        Self::polynomial(vec![Quaternion::ZERO, Quaternion::ONE], domain)
    }

    pub(crate) fn from_parts(stem: StemFunction, domain: CircularDomain) -> Self {
        Self { stem, domain }
    }

    pub fn stem(&self) -> &StemFunction {
        &self.stem
    }

    pub fn domain(&self) -> &CircularDomain {
        &self.domain
    }

    /// Real points are admissible only when both the domain and the stem
    /// reach the real axis.
    pub fn allows_real(&self) -> bool {
        self.domain.intersects_real() && self.stem.allows_real()
    }

    pub fn contains(&self, x: Quaternion) -> bool {
        self.domain.contains(x) && (!x.is_real() || self.allows_real())
    }

    pub fn locate(&self, x: Quaternion) -> Result<Location> {
        if !self.contains(x) {
            return Err(Error::OutOfDomain(x));
        }
        Ok(Location::of(x))
    }

    pub fn stem_value(&self, z: Complex64) -> Hc {
        self.stem.value(z)
    }

    /// `f(α + Jβ) = F1(α + iβ) + J F2(α + iβ)`.
    pub fn evaluate(&self, x: Quaternion) -> Result<Quaternion> {
        self.locate(x).map(|loc| self.value_at(loc))
    }

    /// Evaluates the defining formula without the rectangle check.
    pub fn evaluate_extended(&self, x: Quaternion) -> Quaternion {
        self.value_at(Location::of(x))
    }

    pub fn value_at(&self, loc: Location) -> Quaternion {
        match loc {
            Location::Real(a) => self.stem.value(Complex64::new(a, 0.0)).re,
            Location::Slice(c) => self.value_raw(c.alpha, c.beta, c.unit),
        }
    }

    /// The defining formula at `(α, β, J)` taken literally, for any sign of `β`.
    pub fn value_raw(&self, alpha: f64, beta: f64, unit: ImaginaryUnit) -> Quaternion {
        self.stem.value(Complex64::new(alpha, beta)).induce(unit.get())
    }

    /// Slice derivative as a slice function, `I(∂F/∂z)`.
    pub fn derivative(&self) -> SliceFunction {
        Self::from_parts(self.stem.derivative(), self.domain)
    }

    /// `f - q`.
    pub fn sub_constant(&self, q: Quaternion) -> SliceFunction {
        Self::from_parts(self.stem.sub_constant(q), self.domain)
    }

    /// `f` is real iff both stem components take real values.
    pub fn is_real(&self) -> bool {
        let real = |a: &Hc| {
            a.re.im_norm() <= PREDICATE_TOL * (1.0 + a.norm()) && a.im.im_norm() <= PREDICATE_TOL * (1.0 + a.norm())
        };
        match self.stem.carrier() {
            Some(c) => c.iter().all(real),
            None => self.probes().iter().all(|&z| real(&self.stem.value(z))),
        }
    }

    /// Slice constant iff `∂f/∂x ≡ 0`.
    pub fn is_slice_constant(&self) -> bool {
        match self.stem.carrier() {
            Some(c) => c.iter().skip(1).all(|a| a.norm() <= PREDICATE_TOL),
            None => self
                .probes()
                .iter()
                .all(|&z| self.stem.dz(z).norm() <= 1e-6 * (1.0 + self.stem.value(z).norm())),
        }
    }

    fn probes(&self) -> Vec<Complex64> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x511ce);
        (0..PREDICATE_PROBES)
            .map(|_| self.domain.lerp(rng.gen(), rng.gen_range(0.05..1.0)))
            .collect()
    }
}

fn check_parity(stem: &StemFunction, domain: &CircularDomain) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..PARITY_PROBES {
        let z = domain.lerp(rng.gen(), rng.gen_range(0.05..1.0));
        let up = stem.value(z);
        let down = stem.value(z.conj());
        let residual = (up.re - down.re).norm() + (up.im + down.im).norm();
        if residual.is_nan() || residual > PARITY_TOL * (1.0 + up.norm()) {
            return Err(Error::Parity {
                at: format!("{z}"),
                residual,
            });
        }
    }
    Ok(())
}

/// Representation formula on the sphere of `target`:
/// `(I-K)(J-K)^{-1} vJ - (I-J)(J-K)^{-1} vK`.
pub fn representation_reconstruct(
    v_j: Quaternion,
    v_k: Quaternion,
    j: ImaginaryUnit,
    k: ImaginaryUnit,
    target: SliceCoordinates,
) -> Result<Quaternion> {
    let diff = j.get() - k.get();
    if diff.norm() < 1e-12 {
        return Err(Error::DegeneratePair);
    }
    let m = diff.inverse()?;
    let i = target.unit.get();
    Ok((i - k.get()) * m * v_j - (i - j.get()) * m * v_k)
}

/// The `K = -J` form `½(vJ + v_{-J} - IJ(vJ - v_{-J}))`.
pub fn representation_reconstruct_opposite(
    v_j: Quaternion,
    v_minus_j: Quaternion,
    j: ImaginaryUnit,
    target: SliceCoordinates,
) -> Quaternion {
    let ij = target.unit.get() * j.get();
    (v_j + v_minus_j - ij * (v_j - v_minus_j)) * 0.5
}
