//! Text and JSON renderings of analysis results.
//!
//! Polynomials are printed with report-precision coefficients in both
//! renderings; plain numbers in JSON keep 6 significant digits. JSON keys
//! follow struct field order, so output is byte-stable.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::Result;
use crate::fmt::{report, structured};
use crate::gait::pipeline::{KneeReport, Table, Tolerance};
use crate::jet::{
    cartan_connection, curvature, em_field, maxwell_cyclic_sum, nonlinear_connection, torsion,
    yang_mills_polynomial, SkewField, Vanishing,
};
use crate::poly::Polynomial;
use crate::quadric::LevelSet;
use crate::vectorfield::{PolyMatrix, PolyVectorField};

/// Version string embedded in text reports.
pub const VERSION: &str = concat!("kneejet ", env!("CARGO_PKG_VERSION"));

fn poly_str(p: &Polynomial, names: &[String]) -> String {
    p.render(names, report)
}

fn matrix_strs(m: &PolyMatrix, names: &[String]) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| poly_str(m.get(i, j), names))
                .collect()
        })
        .collect()
}

fn sig_vec(v: &[f64]) -> Vec<f64> {
    v.iter().map(|&x| structured(x)).collect()
}

fn sig_rows(rows: &[[f64; 3]]) -> Vec<[f64; 3]> {
    rows.iter().map(|r| r.map(structured)).collect()
}

fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroObject {
    pub name: String,
    pub dim: usize,
    pub identically_zero: bool,
}

impl ZeroObject {
    fn new(name: &str, v: &Vanishing) -> Self {
        ZeroObject {
            name: name.into(),
            dim: v.dim(),
            identically_zero: v.is_zero(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MaxwellEntry {
    pub indices: [usize; 3],
    pub cyclic_sum: String,
    /// Largest coefficient magnitude of the expanded cyclic sum.
    pub max_abs_coefficient: f64,
    /// Largest `|sum|` over the probe points.
    pub max_abs_residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MaxwellSummary {
    pub triples: usize,
    pub probe_points: usize,
    pub max_abs_residual: f64,
    pub entries: Vec<MaxwellEntry>,
}

/// Jet objects of a vector field, ready for rendering.
///
/// Matrix and tensor indices in the renderings are 1-based.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JetReport {
    pub dim: usize,
    pub variables: Vec<String>,
    pub field: Vec<String>,
    pub connection: Vec<Vec<String>>,
    pub torsion: Vec<Vec<Vec<String>>>,
    pub em_field: Vec<Vec<String>>,
    pub yang_mills_energy: String,
    pub zero_objects: Vec<ZeroObject>,
    pub maxwell: MaxwellSummary,
}

/// Points at which the Maxwell sums are evaluated: the origin, `±e_i`,
/// `±2 e_i` and the all-ones vector scaled by 3 and -7.
pub fn maxwell_probe_points(dim: usize) -> Vec<Vec<f64>> {
    let mut pts = vec![vec![0.0; dim]];
    for i in 0..dim {
        for s in [1.0, -1.0, 2.0, -2.0] {
            let mut p = vec![0.0; dim];
            p[i] = s;
            pts.push(p);
        }
    }
    pts.push(vec![3.0; dim]);
    pts.push(vec![-7.0; dim]);
    pts
}

fn maxwell_summary(f: &SkewField, names: &[String]) -> Result<MaxwellSummary> {
    let n = f.dim();
    let probes = maxwell_probe_points(f.nvars());
    let mut entries = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let sum = maxwell_cyclic_sum(f, (i, j, k))?;
                let coef = sum
                    .terms()
                    .iter()
                    .map(|m| m.coeff.abs())
                    .fold(0.0, f64::max);
                let resid = probes.iter().map(|x| sum.eval(x).abs()).fold(0.0, f64::max);
                entries.push(MaxwellEntry {
                    indices: [i + 1, j + 1, k + 1],
                    cyclic_sum: poly_str(&sum, names),
                    max_abs_coefficient: structured(coef),
                    max_abs_residual: structured(resid),
                });
            }
        }
    }
    Ok(MaxwellSummary {
        triples: entries.len(),
        probe_points: probes.len(),
        max_abs_residual: entries
            .iter()
            .map(|e| e.max_abs_residual)
            .fold(0.0, f64::max),
        entries,
    })
}

impl JetReport {
    pub fn from_field(field: &PolyVectorField) -> Result<Self> {
        let names = field.variables().to_vec();
        let n = nonlinear_connection(&field.jacobian())?;
        let t = torsion(&n);
        let f = em_field(&n);
        Ok(JetReport {
            dim: field.dim(),
            variables: names.clone(),
            field: field
                .components()
                .iter()
                .map(|p| poly_str(p, &names))
                .collect(),
            connection: matrix_strs(n.matrix(), &names),
            torsion: t.slices().iter().map(|s| matrix_strs(s, &names)).collect(),
            em_field: matrix_strs(f.matrix(), &names),
            yang_mills_energy: poly_str(&yang_mills_polynomial(&f), &names),
            zero_objects: vec![
                ZeroObject::new("cartan_connection", &cartan_connection(field.dim())),
                ZeroObject::new("curvature", &curvature(field.dim())),
            ],
            maxwell: maxwell_summary(&f, &names)?,
        })
    }

    pub fn to_json(&self) -> String {
        to_json_string(self)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{VERSION}: jet analysis");
        let _ = writeln!(
            s,
            "dimension {}, variables {}",
            self.dim,
            self.variables.join(", ")
        );
        s.push_str("\nField X\n");
        for (i, c) in self.field.iter().enumerate() {
            let _ = writeln!(s, "  X_{} = {c}", i + 1);
        }
        s.push_str("\nNonlinear connection N\n");
        write_matrix(&mut s, "N", &self.connection);
        s.push_str("\nTorsion T_k = dN/dx_k\n");
        for (k, slice) in self.torsion.iter().enumerate() {
            write_matrix(&mut s, &format!("T_{}", k + 1), slice);
        }
        s.push_str("\nElectromagnetic field F\n");
        write_matrix(&mut s, "F", &self.em_field);
        let _ = writeln!(s, "\nYang-Mills energy\n  EYM = {}", self.yang_mills_energy);
        s.push_str("\nZero objects\n");
        for z in &self.zero_objects {
            let _ = writeln!(
                s,
                "  {} (dim {}): {}",
                z.name,
                z.dim,
                if z.identically_zero {
                    "identically zero"
                } else {
                    "non-zero"
                }
            );
        }
        let m = &self.maxwell;
        let _ = writeln!(
            s,
            "\nMaxwell cyclic sums: {} triples, {} probe points, max |residual| {:e}",
            m.triples, m.probe_points, m.max_abs_residual
        );
        for e in &m.entries {
            let [i, j, k] = e.indices;
            let _ = writeln!(
                s,
                "  ({i},{j},{k}): {} (max |residual| {:e})",
                e.cyclic_sum, e.max_abs_residual
            );
        }
        s
    }
}

fn write_matrix(s: &mut String, name: &str, m: &[Vec<String>]) {
    for (i, row) in m.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            if e != "0" {
                let _ = writeln!(s, "  {name}({},{}) = {e}", i + 1, j + 1);
            }
        }
    }
    if m.iter().flatten().all(|e| e == "0") {
        let _ = writeln!(s, "  {name} = 0");
    }
}

#[derive(Serialize)]
struct LevelJson {
    kind: &'static str,
    center: Option<Vec<f64>>,
    semi_axes: Option<Vec<f64>>,
    /// Row-major; column `i` is the direction of `semi_axes[i]`.
    axes: Option<Vec<Vec<f64>>>,
}

impl LevelJson {
    fn new(l: &LevelSet) -> Self {
        match l {
            LevelSet::Empty => LevelJson {
                kind: l.kind(),
                center: None,
                semi_axes: None,
                axes: None,
            },
            LevelSet::SinglePoint { center } => LevelJson {
                kind: l.kind(),
                center: Some(sig_vec(center)),
                semi_axes: None,
                axes: None,
            },
            LevelSet::Ellipsoid {
                center,
                semi_axes,
                axes,
            } => LevelJson {
                kind: l.kind(),
                center: Some(sig_vec(center)),
                semi_axes: Some(sig_vec(semi_axes)),
                axes: Some(
                    (0..axes.nrows())
                        .map(|r| {
                            (0..axes.ncols())
                                .map(|c| structured(axes[(r, c)]))
                                .collect()
                        })
                        .collect(),
                ),
            },
        }
    }
}

/// Classification of one level set, as written by the surface workflow.
pub struct SurfaceReport {
    level: f64,
    set: LevelSet,
    vertices: usize,
    faces: usize,
}

#[derive(Serialize)]
struct SurfaceJson {
    level: f64,
    #[serde(flatten)]
    set: LevelJson,
    vertices: usize,
    faces: usize,
}

impl SurfaceReport {
    pub fn new(level: f64, set: &LevelSet, vertices: usize, faces: usize) -> Self {
        SurfaceReport {
            level,
            set: set.clone(),
            vertices,
            faces,
        }
    }

    pub fn to_json(&self) -> String {
        to_json_string(&SurfaceJson {
            level: structured(self.level),
            set: LevelJson::new(&self.set),
            vertices: self.vertices,
            faces: self.faces,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{VERSION}: level set EYM = {}", report(self.level));
        let _ = writeln!(s, "kind: {}", self.set.kind());
        if let Some(c) = self.set.center() {
            let _ = writeln!(s, "center: {}", join(c));
        }
        if let LevelSet::Ellipsoid { semi_axes, .. } = &self.set {
            let _ = writeln!(s, "semi-axes: {}", join(semi_axes));
        }
        if self.vertices > 0 {
            let _ = writeln!(
                s,
                "sampled {} vertices, {} faces",
                self.vertices, self.faces
            );
        }
        s
    }
}

fn join(v: &[f64]) -> String {
    v.iter().map(|&x| report(x)).collect::<Vec<_>>().join(", ")
}

#[derive(Serialize)]
struct Intermediates {
    inertia: [f64; 3],
    femoral_omega: Vec<[f64; 3]>,
    angles: Vec<[f64; 3]>,
    tibial_omega: Vec<[f64; 3]>,
    tibial_torque: Vec<[f64; 3]>,
    torque_model: Vec<[f64; 4]>,
    torque_model_from_computed: Vec<[f64; 4]>,
    knee_ode: Vec<String>,
    em_field: Vec<Vec<String>>,
    energy_point: LevelJson,
    energy_point_full_precision: LevelJson,
    energy_ellipsoid: LevelJson,
}

#[derive(Serialize)]
struct KneeJson<'a> {
    passed: bool,
    failures: usize,
    izz_variant: bool,
    level: f64,
    notes: &'a [String],
    tables: &'a [Table],
    intermediates: Intermediates,
}

fn model_rows(m: &crate::gait::RegressionModel) -> Vec<[f64; 4]> {
    (0..3).map(|i| m.row(i).map(structured)).collect()
}

/// Machine-readable knee report.
pub fn knee_report_json(r: &KneeReport) -> String {
    let names = r.field.variables().to_vec();
    let doc = KneeJson {
        passed: r.passes(),
        failures: r.failures().count(),
        izz_variant: r.config.izz_variant,
        level: structured(r.config.level),
        notes: &r.notes,
        tables: &r.tables,
        intermediates: Intermediates {
            inertia: r.inertia.as_array().map(structured),
            femoral_omega: sig_rows(&r.femoral_omega),
            angles: r
                .angles
                .iter()
                .map(|a| a.to_array().map(structured))
                .collect(),
            tibial_omega: sig_rows(&r.tibial_omega),
            tibial_torque: sig_rows(&r.tibial_torque),
            torque_model: model_rows(&r.model),
            torque_model_from_computed: model_rows(&r.model_from_computed),
            knee_ode: r
                .field
                .components()
                .iter()
                .map(|p| poly_str(p, &names))
                .collect(),
            em_field: matrix_strs(r.em_field.matrix(), &names),
            energy_point: LevelJson::new(&r.level_point),
            energy_point_full_precision: LevelJson::new(&r.level_point_exact),
            energy_ellipsoid: LevelJson::new(&r.level_ellipsoid),
        },
    };
    to_json_string(&doc)
}

fn tol_str(t: &Option<Tolerance>) -> String {
    match t {
        Some(Tolerance::Absolute(v)) => format!("abs {v:e}"),
        Some(Tolerance::Relative(v)) => format!("rel {v:e}"),
        None => "info".into(),
    }
}

/// Human-readable knee report.
pub fn knee_report_text(r: &KneeReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{VERSION}: knee pipeline report");
    let [ixx, iyy, izz] = r.inertia.as_array();
    let _ = writeln!(
        s,
        "inertia (kg m^2): I_xx = {ixx}, I_yy = {iyy}, I_zz = {izz}"
    );
    for n in &r.notes {
        let _ = writeln!(s, "note: {n}");
    }
    for t in &r.tables {
        let _ = writeln!(
            s,
            "\n[{}] {} ({}) max deviation {:.3e} {}",
            t.key,
            t.title,
            t.unit,
            t.max_deviation(),
            if t.passes() { "PASS" } else { "FAIL" }
        );
        let width = t.cells.iter().map(|c| c.label.len()).max().unwrap_or(0);
        for c in &t.cells {
            let status = match (c.tolerance.is_some(), c.pass, c.gating) {
                (false, _, _) => "info",
                (true, true, _) => "ok",
                (true, false, true) => "FAIL",
                (true, false, false) => "dev",
            };
            let reference = c.reference.map(report).unwrap_or_else(|| "-".into());
            let deviation = c
                .deviation
                .map(|d| format!("{d:.3e}"))
                .unwrap_or_else(|| "-".into());
            let _ = writeln!(
                s,
                "  {:<width$}  {:>14}  {:>14}  {:>10}  {:<12} {status}",
                c.label,
                report(c.computed),
                reference,
                deviation,
                tol_str(&c.tolerance),
            );
        }
    }
    let fails = r.failures().count();
    let _ = writeln!(
        s,
        "\n{}",
        if fails == 0 {
            "all acceptance checks pass".to_string()
        } else {
            format!("{fails} acceptance check(s) failed")
        }
    );
    s
}
