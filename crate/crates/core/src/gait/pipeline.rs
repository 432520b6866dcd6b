//! End-to-end reproduction of the knee case study, with a per-cell
//! comparison against the printed reference tables.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fmt::{round_tie_to_zero, structured, REPORT_DECIMALS};
use crate::gait::euler::assemble_knee_ode;
use crate::gait::regression::{fit_torque_model, RegressionModel};
use crate::gait::{channels, node_derivatives};
use crate::groodsuntay::{
    composite_rotation, solve_angles, to_tibial_frame, EulerParams, JointAngles, RotationMatrix,
    DEFAULT_GUESS,
};
use crate::jet::{
    cartan_connection, curvature, em_field, maxwell_residual, nonlinear_connection, torsion,
    SkewField, TorsionTensor,
};
use crate::knee;
use crate::quadric::{classify_level_set, em_energy_quadric, LevelSet};
use crate::vectorfield::PolyVectorField;

/// How a computed value is compared with its reference.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum Tolerance {
    Absolute(#[serde(serialize_with = "ser_sig")] f64),
    Relative(#[serde(serialize_with = "ser_sig")] f64),
}

impl Tolerance {
    pub fn deviation(&self, computed: f64, reference: f64) -> f64 {
        match self {
            Tolerance::Absolute(_) => (computed - reference).abs(),
            Tolerance::Relative(_) => (computed - reference).abs() / reference.abs(),
        }
    }

    pub fn bound(&self) -> f64 {
        match self {
            Tolerance::Absolute(t) | Tolerance::Relative(t) => *t,
        }
    }
}

/// One compared quantity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Cell {
    pub label: String,
    #[serde(serialize_with = "ser_sig")]
    pub computed: f64,
    #[serde(serialize_with = "ser_sig_opt")]
    pub reference: Option<f64>,
    #[serde(serialize_with = "ser_sig_opt")]
    pub deviation: Option<f64>,
    pub tolerance: Option<Tolerance>,
    /// Whether a failure of this cell fails the run.
    pub gating: bool,
    pub pass: bool,
}

impl Cell {
    pub fn checked(
        label: impl Into<String>,
        computed: f64,
        reference: f64,
        tol: Tolerance,
    ) -> Self {
        let deviation = tol.deviation(computed, reference);
        Cell {
            label: label.into(),
            computed,
            reference: Some(reference),
            deviation: Some(deviation),
            tolerance: Some(tol),
            gating: true,
            pass: deviation <= tol.bound(),
        }
    }

    /// A comparison that is reported but never fails the run.
    pub fn informational(label: impl Into<String>, computed: f64, reference: Option<f64>) -> Self {
        Cell {
            label: label.into(),
            computed,
            reference,
            deviation: reference.map(|r| (computed - r).abs()),
            tolerance: None,
            gating: false,
            pass: true,
        }
    }

    fn ungated(mut self) -> Self {
        self.gating = false;
        self
    }

    pub fn fails(&self) -> bool {
        self.gating && !self.pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table {
    pub key: String,
    pub title: String,
    pub unit: String,
    pub cells: Vec<Cell>,
}

impl Table {
    fn new(key: &str, title: &str, unit: &str) -> Self {
        Table {
            key: key.into(),
            title: title.into(),
            unit: unit.into(),
            cells: Vec::new(),
        }
    }

    pub fn passes(&self) -> bool {
        self.cells.iter().all(|c| !c.fails())
    }

    pub fn max_deviation(&self) -> f64 {
        self.cells
            .iter()
            .filter(|c| c.tolerance.is_some())
            .filter_map(|c| c.deviation)
            .fold(0.0, f64::max)
    }
}

/// Acceptance tolerances for each stage.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    /// Femoral angular velocity, absolute (rad/s).
    pub femoral_omega: f64,
    /// Grood-Suntay angles, absolute (rad).
    pub angles: f64,
    /// Tibial angular velocity, absolute (rad/s).
    pub tibial_omega: f64,
    /// Tibial torque, absolute (N m).
    pub tibial_torque: f64,
    /// Regression coefficients and intercepts, relative.
    pub regression: f64,
    /// Knee ODE coefficients, relative.
    pub ode: f64,
    /// Field-strength coefficients, relative.
    pub em_field: f64,
    /// Non-zero torsion entries, relative.
    pub torsion: f64,
    /// Maxwell cyclic sums, absolute.
    pub maxwell: f64,
    /// Energy-surface centre, absolute per coordinate.
    pub center: f64,
    /// Diagonal of the energy quadratic form, absolute.
    pub energy_diagonal: f64,
    /// Squared semi-axes per unit level, relative.
    pub semi_axes: f64,
    /// Equality of the two major semi-axes, absolute.
    pub spheroid: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            femoral_omega: 1e-3,
            angles: 1e-3,
            tibial_omega: 2e-3,
            tibial_torque: 2e-2,
            regression: 1e-2,
            ode: 5e-4,
            em_field: 5e-4,
            torsion: 5e-4,
            maxwell: 1e-8,
            center: 0.05,
            energy_diagonal: 5e-4,
            semi_axes: 1e-3,
            spheroid: 1e-9,
        }
    }
}

impl Tolerances {
    /// Names accepted by [`Tolerances::set`], in kebab case.
    pub const NAMES: [&'static str; 13] = [
        "femoral-omega",
        "angles",
        "tibial-omega",
        "tibial-torque",
        "regression",
        "ode",
        "em-field",
        "torsion",
        "maxwell",
        "center",
        "energy-diagonal",
        "semi-axes",
        "spheroid",
    ];

    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !(value >= 0.0 && value.is_finite()) {
            return Err(Error::NonFinite(format!("tolerance {name} = {value}")));
        }
        let slot = match name {
            "femoral-omega" => &mut self.femoral_omega,
            "angles" => &mut self.angles,
            "tibial-omega" => &mut self.tibial_omega,
            "tibial-torque" => &mut self.tibial_torque,
            "regression" => &mut self.regression,
            "ode" => &mut self.ode,
            "em-field" => &mut self.em_field,
            "torsion" => &mut self.torsion,
            "maxwell" => &mut self.maxwell,
            "center" => &mut self.center,
            "energy-diagonal" => &mut self.energy_diagonal,
            "semi-axes" => &mut self.semi_axes,
            "spheroid" => &mut self.spheroid,
            other => return Err(Error::InvalidField(format!("unknown tolerance '{other}'"))),
        };
        *slot = value;
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PipelineConfig {
    /// Use the anthropometric `I_zz = 0.005334` instead of `0.0053`.
    pub izz_variant: bool,
    pub tolerances: Tolerances,
    pub guess: JointAngles,
    /// Positive energy level used for the ellipsoid checks.
    pub level: f64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            izz_variant: false,
            tolerances: Tolerances::default(),
            guess: DEFAULT_GUESS,
            level: 1.0,
        }
    }
}

/// Everything the pipeline computed, plus the comparison tables.
#[derive(Clone, Debug)]
pub struct KneeReport {
    pub config: PipelineConfig,
    pub inertia: EulerParams,
    pub femoral_omega: [[f64; 3]; 5],
    pub angles: [JointAngles; 5],
    pub rotations: [RotationMatrix; 5],
    pub tibial_omega: [[f64; 3]; 5],
    pub tibial_torque: [[f64; 3]; 5],
    /// Fitted on the printed tibial tables.
    pub model: RegressionModel,
    /// Fitted on the tibial tables computed here.
    pub model_from_computed: RegressionModel,
    pub field: PolyVectorField,
    pub connection: SkewField,
    pub torsion: TorsionTensor,
    pub em_field: SkewField,
    /// Field strength with coefficients at report precision.
    pub em_field_printed: SkewField,
    /// Level 0 of the printed-precision energy.
    pub level_point: LevelSet,
    /// Level 0 of the full-precision energy.
    pub level_point_exact: LevelSet,
    /// `config.level` of the full-precision energy.
    pub level_ellipsoid: LevelSet,
    pub tables: Vec<Table>,
    pub notes: Vec<String>,
}

impl KneeReport {
    pub fn passes(&self) -> bool {
        self.tables.iter().all(Table::passes)
    }

    pub fn failures(&self) -> impl Iterator<Item = (&Table, &Cell)> {
        self.tables
            .iter()
            .flat_map(|t| t.cells.iter().map(move |c| (t, c)))
            .filter(|(_, c)| c.fails())
    }

    pub fn table(&self, key: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.key == key)
    }
}

const XYZ: [&str; 3] = ["x", "y", "z"];

fn node_label(quantity: &str, axis: usize, node: usize) -> String {
    format!("{quantity}_{}(t{node})", XYZ[axis])
}

fn grid_table(
    key: &str,
    title: &str,
    unit: &str,
    quantity: &str,
    computed: &[[f64; 3]; 5],
    reference: &[[f64; 3]; 5],
    tol: f64,
) -> Table {
    let mut t = Table::new(key, title, unit);
    for k in 0..5 {
        for c in 0..3 {
            t.cells.push(Cell::checked(
                node_label(quantity, c, k),
                computed[k][c],
                reference[k][c],
                Tolerance::Absolute(tol),
            ));
        }
    }
    t
}

/// Femoral angular velocity at each node from the interpolated rotation vector.
pub fn femoral_angular_velocity(theta: &[[f64; 3]; 5], times: [f64; 5]) -> Result<[[f64; 3]; 5]> {
    let series = channels(times, theta, ["theta_x", "theta_y", "theta_z"], "rad")?;
    let d = [
        node_derivatives(&series[0])?,
        node_derivatives(&series[1])?,
        node_derivatives(&series[2])?,
    ];
    Ok(std::array::from_fn(|k| std::array::from_fn(|c| d[c][k])))
}

/// Rotates femoral-frame angular velocity and torque rows into the tibial frame.
pub fn tibial_tables(
    rotations: &[RotationMatrix; 5],
    omega: &[[f64; 3]; 5],
    torque: &[[f64; 3]; 5],
) -> ([[f64; 3]; 5], [[f64; 3]; 5]) {
    (
        std::array::from_fn(|k| to_tibial_frame(omega[k], &rotations[k])),
        std::array::from_fn(|k| to_tibial_frame(torque[k], &rotations[k])),
    )
}

/// Runs every stage on the embedded data.
pub fn run_knee_pipeline(config: &PipelineConfig) -> Result<KneeReport> {
    let tol = config.tolerances;
    let mut tables = Vec::new();
    let mut notes = Vec::new();

    // femoral angular velocity
    let femoral_omega = femoral_angular_velocity(&knee::THETA, knee::GAIT_TIMES)?;
    tables.push(grid_table(
        "femoral_omega",
        "Femoral angular velocity",
        "rad/s",
        "w",
        &femoral_omega,
        &knee::OMEGA_FEMORAL,
        tol.femoral_omega,
    ));

    // Grood-Suntay angles
    let mut angles = [JointAngles::new(0.0, 0.0, 0.0); 5];
    for (k, a) in angles.iter_mut().enumerate() {
        *a = solve_angles(knee::THETA[k], config.guess)?;
    }
    let mut t = Table::new("angles", "Grood-Suntay angles", "rad");
    for (k, a) in angles.iter().enumerate() {
        for (c, name) in ["alpha", "beta", "gamma"].iter().enumerate() {
            t.cells.push(Cell::checked(
                format!("{name}(t{k})"),
                a.to_array()[c],
                knee::ANGLES[k][c],
                Tolerance::Absolute(tol.angles),
            ));
        }
    }
    tables.push(t);

    // tibial frame
    let rotations = angles.map(composite_rotation);
    let (tibial_omega, tibial_torque) =
        tibial_tables(&rotations, &femoral_omega, &knee::TORQUE_FEMORAL);
    tables.push(grid_table(
        "tibial_omega",
        "Tibial angular velocity",
        "rad/s",
        "w'",
        &tibial_omega,
        &knee::OMEGA_TIBIAL,
        tol.tibial_omega,
    ));
    tables.push(grid_table(
        "tibial_torque",
        "Tibial external torque",
        "N m",
        "M'",
        &tibial_torque,
        &knee::TORQUE_TIBIAL,
        tol.tibial_torque,
    ));

    // regression
    let model = fit_torque_model(&knee::OMEGA_TIBIAL, &knee::TORQUE_TIBIAL)?;
    let model_from_computed = fit_torque_model(&tibial_omega, &tibial_torque)?;
    let mut t = Table::new(
        "regression",
        "Torque regression on the printed tibial tables",
        "N m, N m s",
    );
    let mut info = Table::new(
        "regression_computed",
        "Torque regression on the computed tibial tables",
        "N m, N m s",
    );
    let terms = ["w_x'", "w_y'", "w_z'", "1"];
    for (i, axis) in XYZ.iter().enumerate() {
        for (j, term) in terms.iter().enumerate() {
            let label = format!("M_{axis}' [{term}]");
            let reference = knee::TORQUE_MODEL[i][j];
            t.cells.push(Cell::checked(
                label.clone(),
                model.row(i)[j],
                reference,
                Tolerance::Relative(tol.regression),
            ));
            info.cells.push(Cell::informational(
                label,
                model_from_computed.row(i)[j],
                Some(reference),
            ));
        }
    }
    tables.push(t);
    tables.push(info);

    // knee ODE
    let izz = if config.izz_variant {
        knee::IZZ_ANTHROPOMETRIC
    } else {
        knee::INERTIA[2]
    };
    let inertia = EulerParams::new(knee::INERTIA[0], knee::INERTIA[1], izz)?;
    notes.push(format!(
        "I_zz = {izz} kg m^2 used; the ODE reference coefficients assume I_zz = {}, \
         the anthropometric value is {} ({:.2}% apart)",
        knee::INERTIA[2],
        knee::IZZ_ANTHROPOMETRIC,
        100.0 * (knee::IZZ_ANTHROPOMETRIC - knee::INERTIA[2]) / knee::INERTIA[2]
    ));
    if config.izz_variant {
        notes.push(
            "I_zz variant selected: ODE, field-strength and energy-surface deviations \
             are reported without gating"
                .into(),
        );
    }
    let field = assemble_knee_ode(&inertia, &model)?;
    let gate = |c: Cell| if config.izz_variant { c.ungated() } else { c };
    let mut t = Table::new("ode", "Knee ODE coefficients", "1/s, 1/s^2");
    for (i, printed) in knee::ODE_COEFFICIENTS.iter().enumerate() {
        for (e, c) in printed.iter() {
            let label = format!("d/dt w_{}' [{}]", XYZ[i], monomial_label(e));
            t.cells.push(gate(Cell::checked(
                label,
                field.components()[i].coeff(e),
                *c,
                Tolerance::Relative(tol.ode),
            )));
        }
    }
    let extra = field
        .components()
        .iter()
        .enumerate()
        .map(|(i, p)| p.terms().len() - knee::ODE_COEFFICIENTS[i].len())
        .sum::<usize>();
    t.cells.push(gate(Cell::checked(
        "terms beyond the printed ones",
        extra as f64,
        0.0,
        Tolerance::Absolute(0.0),
    )));
    tables.push(t);

    // jet objects
    let connection = nonlinear_connection(&field.jacobian())?;
    let torsion_t = torsion(&connection);
    let em = em_field(&connection);
    let mut t = Table::new("jet", "Jet geometric objects", "-");
    for (n, &(i, j, lin, cst)) in knee::EM_FIELD.iter().enumerate() {
        let var = knee::EM_FIELD_VARIABLE[n];
        let p = em.get(i, j);
        let mut e = [0u32; 3];
        e[var] = 1;
        t.cells.push(gate(Cell::checked(
            format!("F_{}{} [w_{}']", i + 1, j + 1, XYZ[var]),
            p.coeff(&e),
            lin,
            Tolerance::Relative(tol.em_field),
        )));
        t.cells.push(gate(Cell::checked(
            format!("F_{}{} [1]", i + 1, j + 1),
            p.coeff(&[0, 0, 0]),
            cst,
            Tolerance::Relative(tol.em_field),
        )));
        let stray = p.terms().len() - 2;
        t.cells.push(gate(Cell::checked(
            format!("F_{}{} extra terms", i + 1, j + 1),
            stray as f64,
            0.0,
            Tolerance::Absolute(0.0),
        )));
    }
    let (nonzero, stray) = torsion_check(&torsion_t);
    for (k, i, j, value, reference) in nonzero {
        t.cells.push(gate(Cell::checked(
            format!("T_{} ({},{})", k + 1, i + 1, j + 1),
            value,
            reference,
            Tolerance::Relative(tol.torsion),
        )));
    }
    t.cells.push(Cell::checked(
        "torsion: max |other entries|",
        stray,
        0.0,
        Tolerance::Absolute(0.0),
    ));
    let cartan = cartan_connection(3);
    let curv = curvature(3);
    t.cells.push(Cell::checked(
        "Cartan connection components",
        if cartan.is_zero() { 0.0 } else { 1.0 },
        0.0,
        Tolerance::Absolute(0.0),
    ));
    t.cells.push(Cell::checked(
        "curvature components",
        if curv.is_zero() { 0.0 } else { 1.0 },
        0.0,
        Tolerance::Absolute(0.0),
    ));
    let mut worst: f64 = 0.0;
    for x in maxwell_probe_points() {
        worst = worst.max(maxwell_residual(&em, (0, 1, 2), &x)?.abs());
    }
    t.cells.push(Cell::checked(
        "Maxwell cyclic sum, max |residual|",
        worst,
        0.0,
        Tolerance::Absolute(tol.maxwell),
    ));
    tables.push(t);

    // energy surfaces, from the printed knee ODE
    let em_reference = em_field(&nonlinear_connection(&knee::knee_field().jacobian())?);
    let em_printed = em_reference.map_coeffs(|c| round_tie_to_zero(c, REPORT_DECIMALS));
    let q_printed = em_energy_quadric(&em_printed)?;
    let q_exact = em_energy_quadric(&em_reference)?;
    let level_point = classify_level_set(&q_printed, 0.0)?;
    let level_point_exact = classify_level_set(&q_exact, 0.0)?;
    let level_ellipsoid = classify_level_set(&q_exact, config.level)?;
    notes.push(format!(
        "energy surfaces use the printed knee ODE; the centre is classified from its field \
         strength at {REPORT_DECIMALS}-decimal print precision and the full-precision centre \
         is listed for comparison"
    ));
    let mut t = Table::new("surfaces", "Yang-Mills constant-energy surfaces", "rad/s");
    t.cells.push(Cell::checked(
        "level 0 is a single point",
        if matches!(level_point, LevelSet::SinglePoint { .. }) {
            1.0
        } else {
            0.0
        },
        1.0,
        Tolerance::Absolute(0.0),
    ));
    let center = level_point.center().unwrap_or(&[f64::NAN; 3]);
    for c in 0..3 {
        t.cells.push(gate(Cell::checked(
            format!("centre {}", ["X", "Y", "Z"][c]),
            center[c],
            knee::ENERGY_CENTER[c],
            Tolerance::Absolute(tol.center),
        )));
    }
    if let Some(exact) = level_point_exact.center() {
        for c in 0..3 {
            t.cells.push(Cell::informational(
                format!("centre {} (full precision)", ["X", "Y", "Z"][c]),
                exact[c],
                Some(knee::ENERGY_CENTER[c]),
            ));
        }
    }
    for c in 0..3 {
        t.cells.push(gate(Cell::checked(
            format!("A_{}{}", c + 1, c + 1),
            q_printed.a()[(c, c)],
            knee::ENERGY_DIAGONAL[c],
            Tolerance::Absolute(tol.energy_diagonal),
        )));
    }
    match &level_ellipsoid {
        LevelSet::Ellipsoid { semi_axes, .. } => {
            t.cells.push(Cell::checked(
                format!("level {} is an ellipsoid", config.level),
                1.0,
                1.0,
                Tolerance::Absolute(0.0),
            ));
            let full = knee::ODE_COEFFICIENTS[0][0].1;
            let half = 0.5 * full;
            let per_level: Vec<f64> = semi_axes.iter().map(|s| s * s / config.level).collect();
            let exact_ref = [half.powi(-2), half.powi(-2), full.powi(-2)];
            for (c, name) in ["a", "b", "c"].iter().enumerate() {
                t.cells.push(gate(Cell::checked(
                    format!("{name}^2 / k"),
                    per_level[c],
                    exact_ref[c],
                    Tolerance::Relative(tol.semi_axes),
                )));
                t.cells.push(gate(Cell::checked(
                    format!("{name}^2 / k vs printed"),
                    per_level[c],
                    knee::SEMI_AXES_SQUARED_PER_LEVEL[c],
                    Tolerance::Relative(tol.semi_axes),
                )));
            }
            t.cells.push(Cell::checked(
                "|a - b|",
                (semi_axes[0] - semi_axes[1]).abs(),
                0.0,
                Tolerance::Absolute(tol.spheroid),
            ));
            t.cells.push(Cell::checked(
                "oblate: b > c",
                if semi_axes[1] > semi_axes[2] {
                    1.0
                } else {
                    0.0
                },
                1.0,
                Tolerance::Absolute(0.0),
            ));
        }
        other => {
            t.cells.push(Cell::checked(
                format!("level {} is an ellipsoid ({})", config.level, other.kind()),
                0.0,
                1.0,
                Tolerance::Absolute(0.0),
            ));
        }
    }
    tables.push(t);

    Ok(KneeReport {
        config: *config,
        inertia,
        femoral_omega,
        angles,
        rotations,
        tibial_omega,
        tibial_torque,
        model,
        model_from_computed,
        field,
        connection,
        torsion: torsion_t,
        em_field: em,
        em_field_printed: em_printed,
        level_point,
        level_point_exact,
        level_ellipsoid,
        tables,
        notes,
    })
}

fn monomial_label(e: &[u32; 3]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &p)| p > 0)
        .map(|(i, _)| format!("w_{}'", XYZ[i]))
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Expected non-zero torsion entries `(slice, row, col, printed value)`.
const TORSION_PRINTED: [(usize, usize, usize, f64); 6] = [
    (0, 1, 2, 0.4605),
    (0, 2, 1, -0.4605),
    (1, 0, 2, -0.4605),
    (1, 2, 0, 0.4605),
    (2, 0, 1, -0.9211),
    (2, 1, 0, 0.9211),
];

/// `(slice, row, col, computed, printed)`.
type TorsionHit = (usize, usize, usize, f64, f64);

/// Values at the expected positions, and the largest coefficient anywhere else.
fn torsion_check(t: &TorsionTensor) -> (Vec<TorsionHit>, f64) {
    let mut hits = Vec::new();
    let mut stray: f64 = 0.0;
    for (k, slice) in t.slices().iter().enumerate() {
        for i in 0..3 {
            for j in 0..3 {
                let p = slice.get(i, j);
                let expected = TORSION_PRINTED
                    .iter()
                    .find(|&&(kk, ii, jj, _)| (kk, ii, jj) == (k, i, j));
                match expected {
                    Some(&(_, _, _, v)) => {
                        // must be a constant
                        let nonconst = p
                            .terms()
                            .iter()
                            .filter(|m| m.degree() > 0)
                            .map(|m| m.coeff.abs())
                            .fold(0.0, f64::max);
                        stray = stray.max(nonconst);
                        hits.push((k, i, j, p.coeff(&[0, 0, 0]), v));
                    }
                    None => {
                        let m = p.terms().iter().map(|m| m.coeff.abs()).fold(0.0, f64::max);
                        stray = stray.max(m);
                    }
                }
            }
        }
    }
    (hits, stray)
}

/// Deterministic grid spanning the magnitudes seen in the gait tables.
fn maxwell_probe_points() -> Vec<[f64; 3]> {
    let axis = [-13.0, -1.5, 0.0, 2.25, 13.0];
    let mut pts = Vec::with_capacity(125);
    for &x in &axis {
        for &y in &axis {
            for &z in &axis {
                pts.push([x, y, z]);
            }
        }
    }
    pts
}

fn ser_sig<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(structured(*v))
    } else {
        s.serialize_none()
    }
}

fn ser_sig_opt<S: Serializer>(v: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => ser_sig(x, s),
        None => s.serialize_none(),
    }
}
