use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use kneejet::export::{write_datasets, write_mesh, write_point_cloud};
use kneejet::fmt::{round_tie_to_zero, REPORT_DECIMALS};
use kneejet::jet::{em_field, nonlinear_connection};
use kneejet::knee::knee_field;
use kneejet::quadric::{classify_level_set, em_energy_quadric, sample_surface, LevelSet};
use kneejet::report::{knee_report_json, knee_report_text, SurfaceReport};
use kneejet::{run_knee_pipeline, JetReport, PipelineConfig, PolyVectorField};

#[derive(Parser)]
#[command(
    name = "kneejet",
    version,
    about = "Jet geometry of polynomial ODEs and the knee case study"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Connection, torsion, field strength and energy of a field file.
    Analyze {
        #[arg(long)]
        field: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Reproduce the knee pipeline and compare against the reference tables.
    KneeReport {
        #[arg(long)]
        out: PathBuf,
        /// Use the anthropometric I_zz = 0.005334.
        #[arg(long)]
        izz_variant: bool,
        /// Energy level for the ellipsoid checks.
        #[arg(long, default_value_t = 1.0, value_parser = positive)]
        level: f64,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Classify and sample a constant-energy surface.
    Surface {
        #[arg(long)]
        out: PathBuf,
        /// Energy level.
        #[arg(long, default_value_t = 1.0, value_parser = non_negative, allow_negative_numbers = true)]
        k: f64,
        /// Sampling grid as POLARxAZIMUTH.
        #[arg(long, default_value = "24x48", value_parser = resolution)]
        res: (usize, usize),
        /// Field file; defaults to the bundled knee field.
        #[arg(long)]
        field: Option<PathBuf>,
        /// Round field-strength coefficients to this many decimals
        /// (default 4 for the bundled field, none for --field).
        #[arg(long)]
        round: Option<usize>,
    },
}

#[derive(Args)]
struct TolArgs {
    #[arg(long, value_parser = non_negative)]
    tol_femoral_omega: Option<f64>,
    #[arg(long, value_parser = non_negative)]
    tol_angles: Option<f64>,
    #[arg(long, value_parser = non_negative)]
    tol_tibial_omega: Option<f64>,
    #[arg(long, value_parser = non_negative)]
    tol_tibial_torque: Option<f64>,
    #[arg(long, value_parser = non_negative)]
    tol_regression: Option<f64>,
    #[arg(long, value_parser = non_negative)]
    tol_ode: Option<f64>,
    #[arg(long, value_parser = non_negative)]
    tol_em_field: Option<f64>,
    #[arg(long, value_parser = non_negative)]
    tol_torsion: Option<f64>,
    #[arg(long, value_parser = non_negative)]
    tol_maxwell: Option<f64>,
    #[arg(long, value_parser = non_negative)]
    tol_center: Option<f64>,
    #[arg(long, value_parser = non_negative)]
    tol_energy_diagonal: Option<f64>,
    #[arg(long, value_parser = non_negative)]
    tol_semi_axes: Option<f64>,
    #[arg(long, value_parser = non_negative)]
    tol_spheroid: Option<f64>,
}

impl TolArgs {
    fn overrides(&self) -> [(&'static str, Option<f64>); 13] {
        [
            ("femoral-omega", self.tol_femoral_omega),
            ("angles", self.tol_angles),
            ("tibial-omega", self.tol_tibial_omega),
            ("tibial-torque", self.tol_tibial_torque),
            ("regression", self.tol_regression),
            ("ode", self.tol_ode),
            ("em-field", self.tol_em_field),
            ("torsion", self.tol_torsion),
            ("maxwell", self.tol_maxwell),
            ("center", self.tol_center),
            ("energy-diagonal", self.tol_energy_diagonal),
            ("semi-axes", self.tol_semi_axes),
            ("spheroid", self.tol_spheroid),
        ]
    }
}

fn non_negative(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() && v >= 0.0 {
        Ok(v)
    } else {
        Err(format!("expected a finite value >= 0, got {s}"))
    }
}

fn positive(s: &str) -> std::result::Result<f64, String> {
    match non_negative(s)? {
        v if v > 0.0 => Ok(v),
        _ => Err(format!("expected a value > 0, got {s}")),
    }
}

fn resolution(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected <int>x<int>, got {s}"))?;
    let a: usize = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b: usize = b.trim().parse().map_err(|e| format!("{e}"))?;
    if a < 2 || b < 3 {
        return Err("resolution needs at least 2 polar and 3 azimuthal samples".into());
    }
    Ok((a, b))
}

/// Run outcome: `Ok(true)` when every check passed.
type Outcome = Result<bool>;

fn prepare_out(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)
        .with_context(|| format!("cannot create output directory {}", dir.display()))
}

fn write(path: PathBuf, text: &str) -> Result<()> {
    fs::write(&path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn analyze(field: &Path, out: &Path) -> Outcome {
    let f = PolyVectorField::load(field).with_context(|| format!("reading {}", field.display()))?;
    let report = JetReport::from_field(&f)?;
    prepare_out(out)?;
    write(out.join("analysis.txt"), &report.to_text())?;
    write(out.join("analysis.json"), &report.to_json())?;
    print!("{}", report.to_text());
    Ok(true)
}

fn knee_report(out: &Path, izz_variant: bool, level: f64, tol: &TolArgs) -> Outcome {
    let mut config = PipelineConfig {
        izz_variant,
        level,
        ..Default::default()
    };
    for (name, value) in tol.overrides() {
        if let Some(v) = value {
            config.tolerances.set(name, v)?;
        }
    }
    prepare_out(out)?;
    let report = run_knee_pipeline(&config)?;
    let text = knee_report_text(&report);
    write(out.join("knee_report.txt"), &text)?;
    write(out.join("knee_report.json"), &knee_report_json(&report))?;
    let data = out.join("data");
    prepare_out(&data)?;
    write_datasets(&data).context("writing dataset tables")?;
    print!("{text}");
    Ok(report.passes())
}

fn surface(
    out: &Path,
    k: f64,
    res: (usize, usize),
    field: Option<&Path>,
    round: Option<usize>,
) -> Outcome {
    let (f, round) = match field {
        Some(p) => (
            PolyVectorField::load(p).with_context(|| format!("reading {}", p.display()))?,
            round,
        ),
        None => (knee_field(), Some(round.unwrap_or(REPORT_DECIMALS))),
    };
    let mut em = em_field(&nonlinear_connection(&f.jacobian())?);
    if let Some(d) = round {
        em = em.map_coeffs(|c| round_tie_to_zero(c, d));
    }
    let q = em_energy_quadric(&em)?;
    let level = classify_level_set(&q, k)?;
    prepare_out(out)?;
    let (nv, nf) = match &level {
        LevelSet::Ellipsoid { center, .. } if center.len() == 3 => {
            let mesh = sample_surface(&level, res)?;
            write_point_cloud(&out.join("points.csv"), &mesh).context("writing point cloud")?;
            write_mesh(&out.join("surface.off"), &mesh).context("writing mesh")?;
            (mesh.vertices.len(), mesh.faces.len())
        }
        LevelSet::Ellipsoid { .. } => {
            eprintln!("note: surface sampling is only available in three dimensions");
            (0, 0)
        }
        LevelSet::Empty => bail!("level {k} is empty"),
        LevelSet::SinglePoint { .. } => (0, 0),
    };
    let report = SurfaceReport::new(k, &level, nv, nf);
    write(out.join("surface.txt"), &report.to_text())?;
    write(out.join("surface.json"), &report.to_json())?;
    print!("{}", report.to_text());
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Analyze { field, out } => analyze(field, out),
        Command::KneeReport {
            out,
            izz_variant,
            level,
            tol,
        } => knee_report(out, *izz_variant, *level, tol),
        Command::Surface {
            out,
            k,
            res,
            field,
            round,
        } => surface(out, *k, *res, field.as_deref(), *round),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("error: acceptance tolerances violated");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
