//! Stem functions `F = F1 + √-1 F2 : D -> H ⊗ C`.
//!
//! Polynomial and two-slice stems share one closed form: a polynomial
//! `Σ z^n A_n` with complexified coefficients valid on the closed upper half
//! plane. The lower half plane is reached through `F(z̄) = conj(F(z))`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quaternion::{ComplexifiedQuaternion as Hc, ImaginaryUnit, Quaternion};

pub type StemEval = Arc<dyn Fn(Complex64) -> Hc + Send + Sync>;
pub type StemPartialsEval = Arc<dyn Fn(Complex64) -> (Hc, Hc) + Send + Sync>;

/// Central finite-difference step `1e-6 max(1, |z|)`.
pub fn fd_step(z: Complex64) -> f64 {
    1e-6 * z.norm().max(1.0)
}

/// Horner evaluation of `Σ z^n A_n` together with its `z`-derivative.
pub(crate) fn horner<I>(coeffs: I, z: Complex64) -> (Hc, Hc)
where
    I: DoubleEndedIterator<Item = Hc>,
{
    let mut value = Hc::ZERO;
    let mut deriv = Hc::ZERO;
    for a in coeffs.rev() {
        deriv = deriv.scale(z) + value;
        value = value.scale(z) + a;
    }
    (value, deriv)
}

/// Two holomorphic semislice maps `g_J, g_K` (polynomials in `z` with right
/// quaternion coefficients) glued by the representation formula.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoSliceStem {
    j: ImaginaryUnit,
    k: ImaginaryUnit,
    g_j: Vec<Quaternion>,
    g_k: Vec<Quaternion>,
    carrier: Vec<Hc>,
}

impl TwoSliceStem {
    /// Recovers `F2 = (J-K)^{-1}(g_J - g_K)` and `F1 = g_J - J F2`
    /// coefficientwise.
    pub fn new(j: ImaginaryUnit, k: ImaginaryUnit, g_j: Vec<Quaternion>, g_k: Vec<Quaternion>) -> Result<Self> {
        let diff = j.get() - k.get();
        if diff.norm() < 1e-12 {
            return Err(Error::DegeneratePair);
        }
        let m = diff.inverse()?;
        let len = g_j.len().max(g_k.len()).max(1);
        let carrier = (0..len)
            .map(|n| {
                let c = g_j.get(n).copied().unwrap_or_default();
                let d = g_k.get(n).copied().unwrap_or_default();
                Hc::new(m * (j.get() * c - k.get() * d), m * (c - d))
            })
            .collect();
        Ok(Self {
            j,
            k,
            g_j,
            g_k,
            carrier,
        })
    }

    /// Re-expresses a complexified polynomial through its restrictions to
    /// `C_J^+` and `C_{-J}^+`: `c_n = p_n + J q_n`, `d_n = p_n - J q_n`.
    pub fn from_carrier(j: ImaginaryUnit, carrier: Vec<Hc>) -> Self {
        let u = j.get();
        let g_j = carrier.iter().map(|a| a.re + u * a.im).collect();
        let g_k = carrier.iter().map(|a| a.re - u * a.im).collect();
        Self {
            j,
            k: -j,
            g_j,
            g_k,
            carrier,
        }
    }

    pub fn units(&self) -> (ImaginaryUnit, ImaginaryUnit) {
        (self.j, self.k)
    }

    pub fn g_j(&self) -> &[Quaternion] {
        &self.g_j
    }

    pub fn g_k(&self) -> &[Quaternion] {
        &self.g_k
    }

    pub fn carrier(&self) -> &[Hc] {
        &self.carrier
    }
}

/// Stem given by evaluators; partials fall back to central differences.
#[derive(Clone)]
pub struct ClosureStem {
    value: StemEval,
    partials: Option<StemPartialsEval>,
    label: String,
}

impl ClosureStem {
    pub fn new<F>(label: impl Into<String>, value: F) -> Self
    where
        F: Fn(Complex64) -> Hc + Send + Sync + 'static,
    {
        Self {
            value: Arc::new(value),
            partials: None,
            label: label.into(),
        }
    }

    /// Builds the stem from separate component evaluators `F1`, `F2`.
    pub fn from_components<F1, F2>(label: impl Into<String>, f1: F1, f2: F2) -> Self
    where
        F1: Fn(Complex64) -> Quaternion + Send + Sync + 'static,
        F2: Fn(Complex64) -> Quaternion + Send + Sync + 'static,
    {
        Self::new(label, move |z| Hc::new(f1(z), f2(z)))
    }

    /// Supplies analytic `(∂F/∂α, ∂F/∂β)`.
    pub fn with_partials<P>(mut self, partials: P) -> Self
    where
        P: Fn(Complex64) -> (Hc, Hc) + Send + Sync + 'static,
    {
        self.partials = Some(Arc::new(partials));
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn has_partials(&self) -> bool {
        self.partials.is_some()
    }
}

impl fmt::Debug for ClosureStem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ClosureStem")
            .field("label", &self.label)
            .field("analytic_partials", &self.partials.is_some())
            .finish()
    }
}

#[derive(Clone, Debug)]
pub enum StemFunction {
    /// `F(z) = Σ z^n a_n`, so `F1 = Σ Re(z^n) a_n`, `F2 = Σ Im(z^n) a_n`.
    Polynomial(Vec<Quaternion>),
    TwoSlice(TwoSliceStem),
    Closure(ClosureStem),
}

impl StemFunction {
    pub fn polynomial(coeffs: impl Into<Vec<Quaternion>>) -> Self {
        StemFunction::Polynomial(coeffs.into())
    }

    pub fn constant(c: Quaternion) -> Self {
        StemFunction::Polynomial(vec![c])
    }

    pub fn two_slice(j: ImaginaryUnit, k: ImaginaryUnit, g_j: Vec<Quaternion>, g_k: Vec<Quaternion>) -> Result<Self> {
        TwoSliceStem::new(j, k, g_j, g_k).map(StemFunction::TwoSlice)
    }

    /// Whether evaluation on the real axis is meaningful.
    pub fn allows_real(&self) -> bool {
        !matches!(self, StemFunction::TwoSlice(_))
    }

    pub fn is_polynomial(&self) -> bool {
        matches!(self, StemFunction::Polynomial(_))
    }

    /// Closed-form complexified coefficients, when the stem has them.
    pub fn carrier(&self) -> Option<Vec<Hc>> {
        match self {
            StemFunction::Polynomial(c) => Some(c.iter().copied().map(Hc::from_quaternion).collect()),
            StemFunction::TwoSlice(t) => Some(t.carrier.clone()),
            StemFunction::Closure(_) => None,
        }
    }

    fn carrier_eval(&self, z: Complex64) -> Option<(Hc, Hc)> {
        match self {
            StemFunction::Polynomial(c) => Some(horner(c.iter().copied().map(Hc::from_quaternion), z)),
            StemFunction::TwoSlice(t) => Some(horner(t.carrier.iter().copied(), z)),
            StemFunction::Closure(_) => None,
        }
    }

    /// `F(z)`, for any `z` of the domain (lower half plane through parity).
    pub fn value(&self, z: Complex64) -> Hc {
        match self {
            StemFunction::Closure(c) => (c.value)(z),
            _ if z.im < 0.0 => self.value(z.conj()).conj_complex(),
            _ => self.carrier_eval(z).map(|(v, _)| v).unwrap_or_default(),
        }
    }

    /// `(∂F/∂α, ∂F/∂β)` at `z`.
    pub fn partials(&self, z: Complex64) -> (Hc, Hc) {
        match self {
            StemFunction::Closure(c) => match &c.partials {
                Some(p) => p(z),
                None => {
                    let h = fd_step(z);
                    let v = &c.value;
                    let da = (v(z + h) - v(z - h)) * (0.5 / h);
                    let db = (v(z + Complex64::new(0.0, h)) - v(z - Complex64::new(0.0, h))) * (0.5 / h);
                    (da, db)
                }
            },
            _ if z.im < 0.0 => {
                let (da, db) = self.partials(z.conj());
                (da.conj_complex(), -db.conj_complex())
            }
            _ => {
                let (_, d) = self.carrier_eval(z).unwrap_or_default();
                (d, d.times_sqrt_neg_one())
            }
        }
    }

    /// `∂F/∂z = ½(∂F/∂α - √-1 ∂F/∂β)`.
    pub fn dz(&self, z: Complex64) -> Hc {
        let (da, db) = self.partials(z);
        (da - db.times_sqrt_neg_one()) * 0.5
    }

    /// `∂F/∂z̄ = ½(∂F/∂α + √-1 ∂F/∂β)`.
    pub fn dzbar(&self, z: Complex64) -> Hc {
        let (da, db) = self.partials(z);
        (da + db.times_sqrt_neg_one()) * 0.5
    }

    /// Stem of the slice derivative, `∂F/∂z`.
    pub fn derivative(&self) -> StemFunction {
        match self {
            StemFunction::Polynomial(c) => {
                StemFunction::Polynomial(c.iter().enumerate().skip(1).map(|(n, &a)| a * n as f64).collect())
            }
            StemFunction::TwoSlice(t) => {
                StemFunction::TwoSlice(TwoSliceStem::from_carrier(t.j, derive_carrier(&t.carrier)))
            }
            StemFunction::Closure(_) => {
                let base = self.clone();
                StemFunction::Closure(ClosureStem::new("d/dz", move |z| base.dz(z)))
            }
        }
    }

    /// Subtracts a constant from `F1`.
    pub fn sub_constant(&self, q: Quaternion) -> StemFunction {
        match self {
            StemFunction::Polynomial(c) => {
                let mut c = if c.is_empty() {
                    vec![Quaternion::ZERO]
                } else {
                    c.clone()
                };
                c[0] -= q;
                StemFunction::Polynomial(c)
            }
            StemFunction::TwoSlice(t) => {
                let mut carrier = t.carrier.clone();
                carrier[0].re -= q;
                StemFunction::TwoSlice(TwoSliceStem::from_carrier(t.j, carrier))
            }
            StemFunction::Closure(c) => {
                let base = c.clone();
                let mut out = ClosureStem::new(format!("{} - q", c.label), move |z| {
                    let mut v = (base.value)(z);
                    v.re -= q;
                    v
                });
                out.partials = c.partials.clone();
                if out.partials.is_none() {
                    let inner = StemFunction::Closure(c.clone());
                    out.partials = Some(Arc::new(move |z| inner.partials(z)));
                }
                StemFunction::Closure(out)
            }
        }
    }
}

pub(crate) fn derive_carrier(c: &[Hc]) -> Vec<Hc> {
    let d: Vec<Hc> = c.iter().enumerate().skip(1).map(|(n, &a)| a * n as f64).collect();
    if d.is_empty() {
        vec![Hc::ZERO]
    } else {
        d
    }
}

pub(crate) fn convolve(a: &[Hc], b: &[Hc]) -> Vec<Hc> {
    if a.is_empty() || b.is_empty() {
        return vec![Hc::ZERO];
    }
    let mut out = vec![Hc::ZERO; a.len() + b.len() - 1];
    for (m, &x) in a.iter().enumerate() {
        for (n, &y) in b.iter().enumerate() {
            out[m + n] += x * y;
        }
    }
    out
}
