//! JSON function specs.
//!
//! ```json
//! {"type": "polynomial", "coeffs": [[0,0,1,0], [1,0,0,0]]}
//! {"type": "twoslice", "J": [0,1,0,0], "K": [0,-1,0,0],
//!  "gJ": {"constant": [2,0,0,0]}, "gK": {"coeffs": [[0,0,0,0]]},
//!  "domain": {"alpha": [-1.6, 1.55], "beta": [0.05, 3.2]}}
//! {"type": "fixture", "name": "h"}
//! ```
//!
//! Quaternions are `[w, x, y, z]`. `domain` is optional; fixtures default to
//! their own domain and the other kinds to `α ∈ [-2, 2]`, `β ∈ [0, 2]`.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::fixtures;
use crate::quaternion::{ImaginaryUnit, Quaternion};
use crate::slicefn::{CircularDomain, SliceFunction, StemFunction};

/// Tolerance on `Re J = 0`, `‖J‖ = 1` for spec units.
pub const UNIT_TOL: f64 = 1e-9;

#[derive(Debug, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum Spec {
    Polynomial {
        coeffs: Vec<Quaternion>,
        domain: Option<CircularDomain>,
    },
    #[serde(rename = "twoslice")]
    TwoSlice {
        #[serde(rename = "J")]
        j: Quaternion,
        #[serde(rename = "K")]
        k: Quaternion,
        #[serde(rename = "gJ")]
        g_j: Polynomial,
        #[serde(rename = "gK")]
        g_k: Polynomial,
        domain: Option<CircularDomain>,
    },
    Fixture {
        name: String,
        domain: Option<CircularDomain>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
enum Polynomial {
    Constant(Quaternion),
    Coeffs(Vec<Quaternion>),
}

impl Polynomial {
    fn into_coeffs(self) -> Vec<Quaternion> {
        match self {
            Polynomial::Constant(c) => vec![c],
            Polynomial::Coeffs(c) => c,
        }
    }
}

/// Names accepted by `{"type": "fixture"}`.
pub const FIXTURE_NAMES: [&str; 7] = [
    "exe1",
    "h",
    "final_example",
    "square",
    "cubic_xk",
    "delta_i",
    "identity",
];

pub fn fixture(name: &str) -> Result<SliceFunction> {
    Ok(match name {
        "exe1" => fixtures::exe1(),
        "h" => fixtures::h(),
        "final_example" => fixtures::final_example(fixtures::FINAL_J),
        "square" => fixtures::square(),
        "cubic_xk" => fixtures::cubic_xk(),
        "delta_i" => fixtures::delta_i(),
        "identity" => fixtures::identity(),
        _ => {
            return Err(Error::field(
                "name",
                format!("unknown fixture {name:?}, expected one of {}", FIXTURE_NAMES.join(", ")),
            ))
        }
    })
}

fn unit(field: &str, q: Quaternion) -> Result<ImaginaryUnit> {
    ImaginaryUnit::new(q, UNIT_TOL).map_err(|e| match e {
        Error::InvalidField { message, .. } => Error::field(field, message),
        other => other,
    })
}

fn nonempty(field: &str, c: &[Quaternion]) -> Result<()> {
    if c.is_empty() {
        return Err(Error::field(field, "needs at least one coefficient"));
    }
    if let Some(q) = c.iter().find(|q| !q.is_finite()) {
        return Err(Error::field(field, format!("non-finite coefficient {q}")));
    }
    Ok(())
}

pub fn parse_function_spec(text: &str) -> Result<SliceFunction> {
    let spec: Spec = serde_json::from_str(text)?;
    match spec {
        Spec::Polynomial { coeffs, domain } => {
            nonempty("coeffs", &coeffs)?;
            SliceFunction::polynomial(coeffs, domain.unwrap_or_default())
        }
        Spec::TwoSlice { j, k, g_j, g_k, domain } => {
            let (j, k) = (unit("J", j)?, unit("K", k)?);
            let (g_j, g_k) = (g_j.into_coeffs(), g_k.into_coeffs());
            nonempty("gJ", &g_j)?;
            nonempty("gK", &g_k)?;
            let stem = StemFunction::two_slice(j, k, g_j, g_k).map_err(|e| match e {
                Error::DegeneratePair => Error::field("K", "must differ from J"),
                other => other,
            })?;
            SliceFunction::new(stem, domain.unwrap_or_default())
        }
        Spec::Fixture { name, domain } => {
            let f = fixture(&name)?;
            match domain {
                Some(d) => SliceFunction::new(f.stem().clone(), d),
                None => Ok(f),
            }
        }
    }
}
