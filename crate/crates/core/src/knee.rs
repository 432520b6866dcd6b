//! Embedded data for the tibio-femoral knee case study (subject A).
//!
//! Tables are stored exactly as printed (4 decimals). Rows are indexed by
//! gait node `t0..t4`, columns by the x, y, z channel.

use crate::vectorfield::PolyVectorField;

/// JSON source of the particular knee ODE `w' = X(w)`.
pub const KNEE_FIELD_JSON: &str = include_str!("../data/knee_field.json");

/// The particular knee ODE in tibial angular-velocity coordinates.
pub fn knee_field() -> PolyVectorField {
    PolyVectorField::from_json(KNEE_FIELD_JSON).expect("bundled knee field is valid")
}

/// Gait cycle period (s).
pub const GAIT_PERIOD: f64 = 1.1652;

/// Gait nodes at 0, 25, 50, 75 and 100 % of the cycle, as printed (s).
pub const GAIT_TIMES: [f64; 5] = [0.0, 0.2913, 0.5826, 0.8739, 1.1652];

/// Leg mass (kg).
pub const LEG_MASS: f64 = 4.0;

/// Principal moments of inertia (kg m^2) used by the particular knee ODE.
pub const INERTIA: [f64; 3] = [0.0672, 0.0672, 0.0053];

/// Anthropometric `I_zz` (kg m^2) quoted with the model description.
pub const IZZ_ANTHROPOMETRIC: f64 = 0.005334;

/// Femoral rotation vector components (rad).
pub const THETA: [[f64; 3]; 5] = [
    [0.0, -0.0872, -0.1745],
    [-0.0872, -0.3490, -0.0872],
    [-0.0872, -0.3490, -0.1745],
    [-0.1745, -1.1344, -0.0872],
    [0.0, -0.0872, -0.1745],
];

/// External torque in the femoral frame (N m).
pub const TORQUE_FEMORAL: [[f64; 3]; 5] = [
    [7.5, 7.5, 0.0],
    [-40.0, 0.0, 5.0],
    [-15.0, 0.0, 0.0],
    [0.0, 0.0, -5.0],
    [7.5, 15.0, 0.0],
];

/// Grood-Suntay angles (alpha, beta, gamma) solved from [`THETA`] (rad).
pub const ANGLES: [[f64; 3]; 5] = [
    [-0.5786, 0.1684, 0.5869],
    [-0.0760, 0.3546, 0.1740],
    [-0.1851, 0.3751, 0.2927],
    [0.0859, 1.1227, 0.2044],
    [-0.5786, 0.1684, 0.5869],
];

/// Femoral angular velocity from differentiating the interpolated angles (rad/s).
pub const OMEGA_FEMORAL: [[f64; 3]; 5] = [
    [-1.0981, -5.6920, 1.5984],
    [0.0999, 1.1983, -0.3997],
    [-0.1998, -1.7974, -0.0002],
    [-0.1997, -2.0970, 0.3993],
    [1.8975, 12.8820, -1.5983],
];

/// External torque in the tibial frame (N m).
pub const TORQUE_TIBIAL: [[f64; 3]; 5] = [
    [0.9361, 8.1637, 6.7065],
    [-18.3490, -2.8400, -35.7800],
    [-5.2618, -1.5857, -13.9570],
    [2.0263, 0.8581, -4.4898],
    [0.8255, 15.6310, 6.0191],
];

/// Angular velocity in the tibial frame (rad/s).
pub const OMEGA_TIBIAL: [[f64; 3]; 5] = [
    [-1.6519, -5.7721, -0.3366],
    [0.2847, 1.2324, -0.0762],
    [0.1451, -1.8010, -0.0647],
    [0.1623, -2.1350, 0.1098],
    [1.6574, 13.0050, 0.4656],
];

/// Linear torque model: row `i` is `(c_x, c_y, c_z, intercept)` for `M_i`.
pub const TORQUE_MODEL: [[f64; 4]; 3] = [
    [-16.9430, -0.5003, 80.9290, -3.0709],
    [-15.1720, 1.5740, 34.8270, 3.7511],
    [-39.7610, 0.9071, 140.8000, -7.1266],
];

/// Printed coefficients of the particular knee ODE, keyed by exponent vector.
pub const ODE_COEFFICIENTS: [&[([u32; 3], f64)]; 3] = [
    &[
        ([0, 1, 1], 0.9211),
        ([1, 0, 0], -252.1279),
        ([0, 1, 0], -7.4449),
        ([0, 0, 1], 1204.3005),
        ([0, 0, 0], -45.6979),
    ],
    &[
        ([1, 0, 1], -0.9211),
        ([1, 0, 0], -225.7738),
        ([0, 1, 0], 23.4226),
        ([0, 0, 1], 518.2589),
        ([0, 0, 0], 55.8199),
    ],
    &[
        ([1, 0, 0], -7502.0754),
        ([0, 1, 0], 171.1509),
        ([0, 0, 1], 26566.0377),
        ([0, 0, 0], -1344.6415),
    ],
];

/// Upper-triangle field-strength entries as printed: `(i, j, linear, constant)`,
/// meaning `F_ij = linear * w_k + constant` for the single variable `k`
/// listed in [`EM_FIELD_VARIABLE`].
pub const EM_FIELD: [(usize, usize, f64, f64); 3] = [
    (0, 1, 0.9211, 109.1644),
    (0, 2, 0.4605, 4353.1879),
    (1, 2, -0.4605, 173.5540),
];

/// Variable index each [`EM_FIELD`] entry depends on.
pub const EM_FIELD_VARIABLE: [usize; 3] = [2, 1, 0];

/// Centre of the constant-energy surfaces.
pub const ENERGY_CENTER: [f64; 3] = [376.8816, -9453.1767, -118.5152];

/// Printed diagonal of the energy quadratic form.
pub const ENERGY_DIAGONAL: [f64; 3] = [0.2120, 0.2120, 0.8484];

/// Printed squared semi-axes per unit energy level (`a^2 = b^2`, `c^2`).
pub const SEMI_AXES_SQUARED_PER_LEVEL: [f64; 3] = [4.7169, 4.7169, 1.1786];
