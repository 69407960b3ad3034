//! Command-line front end. Every command parses its inputs, calls one
//! library operation and prints the result; no numerics live here.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::calculus::{conj_slice_derivative, expansion_coefficients, slice_derivative, spherical_derivative};
use crate::differential::{rank_classify, real_differential};
use crate::error::Error;
use crate::fnspec::{fixture, parse_function_spec};
use crate::quaternion::{ImaginaryUnit, Quaternion};
use crate::scanners::{
    constant_surface_extract, degenerate_scan, export_cloud, injectivity_sample, scan_zeros, singular_scan, write_csv,
    CloudMetadata, ExportFormat, GridSpec, Provenance, SampleRegion, SurfaceCloud,
};
use crate::slicefn::SliceFunction;
use crate::verify::{verify_paper_examples, verify_with_h};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "slicereg",
    version,
    about = "Calculus and scanners for quaternionic slice regular functions",
    after_help = "Scans honour SLICEREG_THREADS (default: all cores)."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate f at a point.
    Eval(PointArgs),
    /// Slice, conjugate slice and spherical derivatives at a point.
    Derive(PointArgs),
    /// Spherical expansion coefficients of a polynomial at a non-real center.
    Expand {
        #[command(flatten)]
        at: PointArgs,
        /// Highest coefficient index.
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
    /// Real differential, its rank and the rank class.
    Rank(PointArgs),
    /// Zero set of f.
    ScanZeros(ScanArgs),
    /// Singular set of f.
    ScanSingular(ScanArgs),
    /// Degenerate spheres of f.
    ScanDegenerate(ScanArgs),
    /// Level set f = q, with semislices where f is constantly q.
    ConstantSurfaces {
        #[command(flatten)]
        scan: ScanArgs,
        /// The value q as w,x,y,z.
        #[arg(long, value_parser = parse_quaternion, allow_hyphen_values = true)]
        value: Quaternion,
    },
    /// Sample f for image collisions.
    InjectCheck {
        #[command(flatten)]
        func: FnArgs,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Leave out units near this one, as w,x,y,z.
        #[arg(long, value_parser = parse_quaternion, allow_hyphen_values = true)]
        exclude: Option<Quaternion>,
        /// Unit distance kept from --exclude.
        #[arg(long, default_value_t = 1e-2)]
        margin: f64,
        #[arg(long)]
        json: bool,
    },
    /// Reproduce the worked examples; exits 1 on any failed check.
    Verify {
        /// Check this function in the role of h instead of the built-in one.
        #[command(flatten)]
        func: FnArgs,
        #[arg(long)]
        json: bool,
    },
    /// Run a scan and write its cloud to a file.
    Export {
        #[command(flatten)]
        scan: ScanArgs,
        #[arg(long, value_enum, default_value_t = CloudKind::Zeros)]
        cloud: CloudKind,
        /// Level value for --cloud constant, as w,x,y,z.
        #[arg(long, value_parser = parse_quaternion, allow_hyphen_values = true)]
        value: Option<Quaternion>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CloudKind {
    Zeros,
    Singular,
    Degenerate,
    Constant,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for ExportFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => ExportFormat::Csv,
            FormatArg::Json => ExportFormat::Json,
        }
    }
}

#[derive(Debug, Args)]
pub struct FnArgs {
    /// JSON function spec.
    #[arg(long = "fn", value_name = "PATH", conflicts_with = "fixture")]
    pub spec: Option<PathBuf>,
    /// Built-in function: exe1, h, final_example, square, cubic_xk, delta_i, identity.
    #[arg(long)]
    pub fixture: Option<String>,
}

#[derive(Debug, Args)]
pub struct PointArgs {
    #[command(flatten)]
    pub func: FnArgs,
    /// The point as w,x,y,z.
    #[arg(long, value_parser = parse_quaternion, allow_hyphen_values = true)]
    pub point: Quaternion,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub func: FnArgs,
    /// Base grid as ALPHAxBETA steps.
    #[arg(long, value_parser = parse_pair, default_value = "64x64")]
    pub grid: (usize, usize),
    /// Sphere grid as THETAxPHI steps.
    #[arg(long, value_parser = parse_pair, default_value = "32x64")]
    pub sphere: (usize, usize),
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    /// Write the cloud here instead of printing it.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
    /// Print JSON instead of CSV.
    #[arg(long)]
    pub json: bool,
}

impl ScanArgs {
    fn grid(&self) -> GridSpec {
        GridSpec {
            alpha_steps: self.grid.0,
            beta_steps: self.grid.1,
            theta_steps: self.sphere.0,
            phi_steps: self.sphere.1,
            tol: self.tol,
        }
    }
}

fn parse_quaternion(s: &str) -> Result<Quaternion, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(format!("expected w,x,y,z, got {s:?}"));
    }
    let mut c = [0.0; 4];
    for (slot, p) in c.iter_mut().zip(&parts) {
        *slot = p.parse().map_err(|_| format!("not a number: {p:?}"))?;
    }
    Ok(c.into())
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected AxB, got {s:?}"))?;
    let n = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("not a count: {t:?}"));
    Ok((n(a)?, n(b)?))
}

/// Command failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Io { .. } => EXIT_IO,
            Error::Csv(ref c) if c.is_io_error() => EXIT_IO,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &std::path::Path, e: std::io::Error) -> Failure {
    Error::Io {
        path: path.to_path_buf(),
        source: e,
    }
    .into()
}

fn load(func: &FnArgs) -> Result<SliceFunction, Failure> {
    match (&func.spec, &func.fixture) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
            parse_function_spec(&text).map_err(|e| Failure {
                code: EXIT_USAGE,
                message: format!("{}: {e}", path.display()),
            })
        }
        (None, Some(name)) => Ok(fixture(name)?),
        (None, None) => Err(Failure {
            code: EXIT_USAGE,
            message: "a function is required: pass --fn <PATH> or --fixture <NAME>".into(),
        }),
    }
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

/// Runs one command; returns the exit code and the text for stdout.
pub fn execute(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Eval(p) => {
            let f = load(&p.func)?;
            let v = f.evaluate(p.point)?;
            Ok(if p.json {
                json(&serde_json::json!({ "point": p.point, "value": v }))
            } else {
                format!("{v}\n")
            })
        }
        Command::Derive(p) => {
            let f = load(&p.func)?;
            let slice = slice_derivative(&f, p.point)?;
            let conj = conj_slice_derivative(&f, p.point)?;
            let spherical = spherical_derivative(&f, p.point)?;
            Ok(if p.json {
                json(&serde_json::json!({
                    "point": p.point, "slice": slice, "conj_slice": conj, "spherical": spherical,
                }))
            } else {
                format!("slice      {slice}\nconj_slice {conj}\nspherical  {spherical}\n")
            })
        }
        Command::Expand { at, order } => {
            let f = load(&at.func)?;
            let e = expansion_coefficients(&f, at.point, order)?;
            Ok(if at.json {
                json(&e)
            } else {
                let mut s = String::new();
                for (n, c) in e.coeffs.iter().enumerate() {
                    let _ = writeln!(s, "s{n} {c}");
                }
                s
            })
        }
        Command::Rank(p) => {
            let f = load(&p.func)?;
            let d = real_differential(&f, p.point)?;
            let class = rank_classify(&f, p.point)?;
            Ok(if p.json {
                json(&serde_json::json!({ "differential": d, "class": class, "singular": d.rank < 4 }))
            } else {
                let mut s = String::new();
                for row in &d.matrix {
                    let cells: Vec<String> = row.iter().map(|v| format!("{v:>12.6e}")).collect();
                    let _ = writeln!(s, "{}", cells.join(" "));
                }
                let _ = writeln!(s, "rank {} ({class:?}), singular: {}", d.rank, d.rank < 4);
                s
            })
        }
        Command::ScanZeros(a) => {
            let f = load(&a.func)?;
            let grid = a.grid();
            let records = scan_zeros(&f, &grid)?;
            let cloud = SurfaceCloud {
                provenance: Provenance::ZeroSurface,
                points: records.iter().map(|r| r.cloud_point()).collect(),
                metadata: CloudMetadata {
                    grid,
                    domain: *f.domain(),
                    value: None,
                },
                warnings: Vec::new(),
            };
            emit(&a, &cloud)
        }
        Command::ScanSingular(a) => {
            let f = load(&a.func)?;
            emit(&a, &singular_scan(&f, &a.grid())?)
        }
        Command::ScanDegenerate(a) => {
            let f = load(&a.func)?;
            emit(&a, &degenerate_scan(&f, &a.grid())?)
        }
        Command::ConstantSurfaces { scan, value } => {
            let f = load(&scan.func)?;
            let report = constant_surface_extract(&f, value, &scan.grid())?;
            if scan.out.is_some() {
                let mut s = emit(&scan, &report.cloud)?;
                for u in &report.semislices {
                    let _ = writeln!(s, "semislice {u}");
                }
                Ok(s)
            } else if scan.json {
                Ok(json(&report))
            } else {
                let mut s = String::new();
                for u in &report.semislices {
                    let _ = writeln!(s, "semislice {u}");
                }
                let _ = writeln!(s, "surface residual {:e}", report.surfzero_residual);
                Ok(s + &csv_text(&report.cloud)?)
            }
        }
        Command::InjectCheck {
            func,
            samples,
            seed,
            exclude,
            margin,
            json: as_json,
        } => {
            let f = load(&func)?;
            let region = match exclude {
                Some(q) => SampleRegion::OffSemislice {
                    unit: ImaginaryUnit::new(q, 1e-9).map_err(|e| Failure {
                        code: EXIT_USAGE,
                        message: format!("--exclude: {e}"),
                    })?,
                    margin,
                },
                None => SampleRegion::Domain,
            };
            let r = injectivity_sample(&f, &region, samples, seed)?;
            Ok(if as_json {
                json(&r)
            } else {
                format!(
                    "samples {}\ncollision pairs {}\ncolliding samples {}\nmin image separation {:e}\n",
                    r.samples, r.collision_pairs, r.colliding_samples, r.min_image_separation
                )
            })
        }
        Command::Verify { func, json: as_json } => {
            let report = if func.spec.is_some() || func.fixture.is_some() {
                verify_with_h(&load(&func)?)
            } else {
                verify_paper_examples()
            };
            let text = if as_json {
                json(&serde_json::json!({ "passed": report.passed(), "checks": report.checks, "notes": report.notes }))
            } else {
                let mut s = String::new();
                for c in &report.checks {
                    let verdict = if c.passed { "PASS" } else { "FAIL" };
                    if c.numeric {
                        let _ = writeln!(
                            s,
                            "{verdict} {:<30} {:.3e} < {:.0e}  {}",
                            c.name, c.residual, c.threshold, c.detail
                        );
                    } else {
                        let _ = writeln!(s, "{verdict} {:<30} {}", c.name, c.detail);
                    }
                }
                for n in &report.notes {
                    let _ = writeln!(s, "NOTE {:<30} {}", n.name, n.detail);
                }
                s
            };
            if report.passed() {
                Ok(text)
            } else {
                Err(Failure {
                    code: EXIT_VERIFY,
                    message: text,
                })
            }
        }
        Command::Export { scan, cloud, value } => {
            let Some(path) = scan.out.clone() else {
                return Err(Failure {
                    code: EXIT_USAGE,
                    message: "export needs --out <PATH>".into(),
                });
            };
            let f = load(&scan.func)?;
            let grid = scan.grid();
            let c = match cloud {
                CloudKind::Zeros => {
                    let records = scan_zeros(&f, &grid)?;
                    SurfaceCloud {
                        provenance: Provenance::ZeroSurface,
                        points: records.iter().map(|r| r.cloud_point()).collect(),
                        metadata: CloudMetadata {
                            grid,
                            domain: *f.domain(),
                            value: None,
                        },
                        warnings: Vec::new(),
                    }
                }
                CloudKind::Singular => singular_scan(&f, &grid)?,
                CloudKind::Degenerate => degenerate_scan(&f, &grid)?,
                CloudKind::Constant => {
                    let q = value.ok_or_else(|| Failure {
                        code: EXIT_USAGE,
                        message: "--cloud constant needs --value w,x,y,z".into(),
                    })?;
                    constant_surface_extract(&f, q, &grid)?.cloud
                }
            };
            export_cloud(&c, &path, scan.format.into())?;
            Ok(format!("wrote {} points to {}\n", c.len(), path.display()))
        }
    }
}

fn csv_text(cloud: &SurfaceCloud) -> Result<String, Failure> {
    let mut buf = Vec::new();
    write_csv(cloud, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

fn emit(a: &ScanArgs, cloud: &SurfaceCloud) -> Result<String, Failure> {
    let mut s = String::new();
    for w in &cloud.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    match &a.out {
        Some(path) => {
            export_cloud(cloud, path, a.format.into())?;
            let _ = writeln!(s, "wrote {} points to {}", cloud.len(), path.display());
            Ok(s)
        }
        None if a.json => Ok(json(cloud)),
        None => Ok(s + &csv_text(cloud)?),
    }
}

/// Parses `args`, runs the command and writes its output; returns the exit
/// code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == EXIT_OK { stdout } else { stderr };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match execute(cli) {
        Ok(text) => match stdout.write_all(text.as_bytes()) {
            Ok(()) => EXIT_OK,
            Err(_) => EXIT_IO,
        },
        Err(f) => {
            // A failed verification still prints its report to stdout.
            if f.code == EXIT_VERIFY {
                let _ = stdout.write_all(f.message.as_bytes());
            } else {
                let _ = writeln!(stderr, "error: {}", f.message);
            }
            f.code
        }
    }
}
