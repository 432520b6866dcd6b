//! File exports: embedded tables as CSV, point clouds and quad meshes.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::Result;
use crate::knee;
use crate::quadric::SurfaceMesh;

/// An embedded table with its column headers.
pub struct Dataset {
    pub name: &'static str,
    pub columns: [&'static str; 3],
    pub rows: &'static [[f64; 3]; 5],
}

/// Every embedded per-node table.
pub const DATASETS: [Dataset; 6] = [
    Dataset {
        name: "theta_femoral",
        columns: ["theta_x (rad)", "theta_y (rad)", "theta_z (rad)"],
        rows: &knee::THETA,
    },
    Dataset {
        name: "torque_femoral",
        columns: ["M_x (N m)", "M_y (N m)", "M_z (N m)"],
        rows: &knee::TORQUE_FEMORAL,
    },
    Dataset {
        name: "angles",
        columns: ["alpha (rad)", "beta (rad)", "gamma (rad)"],
        rows: &knee::ANGLES,
    },
    Dataset {
        name: "omega_femoral",
        columns: ["w_x (rad/s)", "w_y (rad/s)", "w_z (rad/s)"],
        rows: &knee::OMEGA_FEMORAL,
    },
    Dataset {
        name: "torque_tibial",
        columns: ["M_x' (N m)", "M_y' (N m)", "M_z' (N m)"],
        rows: &knee::TORQUE_TIBIAL,
    },
    Dataset {
        name: "omega_tibial",
        columns: ["w_x' (rad/s)", "w_y' (rad/s)", "w_z' (rad/s)"],
        rows: &knee::OMEGA_TIBIAL,
    },
];

/// Writes `<name>.csv` for each embedded table into `dir`.
pub fn write_datasets(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut written = Vec::with_capacity(DATASETS.len());
    for d in &DATASETS {
        let path = dir.join(format!("{}.csv", d.name));
        let mut w = csv::Writer::from_path(&path)?;
        w.write_record(["t (s)", d.columns[0], d.columns[1], d.columns[2]])?;
        for (t, row) in knee::GAIT_TIMES.iter().zip(d.rows.iter()) {
            w.write_record([t, &row[0], &row[1], &row[2]].map(|v| format!("{v:.4}")))?;
        }
        w.flush()?;
        written.push(path);
    }
    Ok(written)
}

/// Writes mesh vertices as `x,y,z` rows.
pub fn write_point_cloud(path: &Path, mesh: &SurfaceMesh) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["x", "y", "z"])?;
    for v in &mesh.vertices {
        w.write_record(v.map(format_coord))?;
    }
    w.flush()?;
    Ok(())
}

/// Writes the mesh in OFF format: vertex and face counts, vertices, then
/// faces prefixed by their vertex count.
pub fn write_mesh(path: &Path, mesh: &SurfaceMesh) -> Result<()> {
    let mut out = std::io::BufWriter::new(fs::File::create(path)?);
    writeln!(out, "OFF")?;
    writeln!(out, "{} {} 0", mesh.vertices.len(), mesh.faces.len())?;
    for v in &mesh.vertices {
        writeln!(
            out,
            "{} {} {}",
            format_coord(v[0]),
            format_coord(v[1]),
            format_coord(v[2])
        )?;
    }
    for f in &mesh.faces {
        writeln!(out, "4 {} {} {} {}", f[0], f[1], f[2], f[3])?;
    }
    out.flush()?;
    Ok(())
}

fn format_coord(x: f64) -> String {
    let s = crate::fmt::structured(x);
    if s == 0.0 {
        "0".into()
    } else {
        s.to_string()
    }
}
