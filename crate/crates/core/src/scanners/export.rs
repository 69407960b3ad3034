//! Bit-stable CSV and JSON exports of surface clouds.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::SurfaceCloud;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExportFormat {
    Csv,
    Json,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(ExportFormat::Csv),
            "json" => Ok(ExportFormat::Json),
            _ => Err(Error::field("format", format!("expected csv or json, got {s:?}"))),
        }
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Rows `alpha,beta,ux,uy,uz,kind`; whole spheres leave the unit empty.
pub fn write_csv<W: Write>(cloud: &SurfaceCloud, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["alpha", "beta", "ux", "uy", "uz", "kind"])?;
    for p in &cloud.points {
        let [ux, uy, uz] = match p.unit {
            Some(u) => u.get().vector().map(num),
            None => [String::new(), String::new(), String::new()],
        };
        w.write_record([num(p.alpha), num(p.beta), ux, uy, uz, p.kind.as_str().to_string()])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// The cloud with its grid, domain and tolerance metadata.
pub fn write_json<W: Write>(cloud: &SurfaceCloud, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, cloud)?;
    out.write_all(b"\n").map_err(serde_json::Error::io)?;
    Ok(())
}

pub fn export_cloud(cloud: &SurfaceCloud, path: &Path, format: ExportFormat) -> Result<()> {
    let io = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = File::create(path).map_err(io)?;
    let mut w = BufWriter::new(file);
    match format {
        ExportFormat::Csv => write_csv(cloud, &mut w).map_err(|e| reattach(e, path))?,
        ExportFormat::Json => write_json(cloud, &mut w).map_err(|e| reattach(e, path))?,
    }
    w.flush().map_err(io)
}

/// Writer failures during an export are IO failures on `path`.
fn reattach(e: Error, path: &Path) -> Error {
    let source = match e {
        Error::Csv(c) if c.is_io_error() => match c.into_kind() {
            csv::ErrorKind::Io(io) => io,
            _ => unreachable!("checked above"),
        },
        Error::Json(j) if j.is_io() => std::io::Error::from(j),
        other => return other,
    };
    Error::Io {
        path: path.to_path_buf(),
        source,
    }
}
