//! Grood-Suntay joint coordinates for the right knee.
//!
//! `alpha` is flexion-extension about the femoral x axis, `beta` the
//! varus-valgus angle about the floating axis (adduction-abduction is
//! `beta - pi/2`), and `gamma` the internal-external rotation about the
//! tibial z' axis. All angles are radians.

use nalgebra::{Matrix3, Vector3};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JointAngles {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl JointAngles {
    pub const fn new(alpha: f64, beta: f64, gamma: f64) -> Self {
        JointAngles { alpha, beta, gamma }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.alpha, self.beta, self.gamma]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }
}

/// Initial guess used by [`solve_angles`] callers that have nothing better.
pub const DEFAULT_GUESS: JointAngles = JointAngles::new(-0.3, 0.5, 0.3);

/// A 3x3 rotation matrix `R`, with `(i', j', k') = (i, j, k) R`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RotationMatrix(Matrix3<f64>);

impl RotationMatrix {
    pub fn identity() -> Self {
        RotationMatrix(Matrix3::identity())
    }

    /// Wraps `m` after checking orthogonality and unit determinant within `1e-12`.
    pub fn new(m: Matrix3<f64>) -> Option<Self> {
        let r = RotationMatrix(m);
        (r.orthogonality_error() <= 1e-12 && (m.determinant() - 1.0).abs() <= 1e-12).then_some(r)
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.0
    }

    /// Entry `R_ij` with 1-based indices.
    pub fn r(&self, i: usize, j: usize) -> f64 {
        self.0[(i - 1, j - 1)]
    }

    /// `max |R^T R - I|`.
    pub fn orthogonality_error(&self) -> f64 {
        (self.0.transpose() * self.0 - Matrix3::identity()).amax()
    }

    pub fn determinant(&self) -> f64 {
        self.0.determinant()
    }
}

/// Principal moments of inertia of the leg (kg m^2).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EulerParams {
    ixx: f64,
    iyy: f64,
    izz: f64,
}

impl EulerParams {
    pub fn new(ixx: f64, iyy: f64, izz: f64) -> Result<Self> {
        for v in [ixx, iyy, izz] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidInertia(v));
            }
        }
        Ok(EulerParams { ixx, iyy, izz })
    }

    pub fn ixx(&self) -> f64 {
        self.ixx
    }

    pub fn iyy(&self) -> f64 {
        self.iyy
    }

    pub fn izz(&self) -> f64 {
        self.izz
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.ixx, self.iyy, self.izz]
    }
}

/// The three elementary rotations: about the femoral x axis by `alpha`, about
/// the floating axis by `pi/2 - beta`, and about the tibial z' axis by `gamma`.
pub fn elementary_rotations(a: JointAngles) -> [RotationMatrix; 3] {
    let (sa, ca) = a.alpha.sin_cos();
    let (sb, cb) = a.beta.sin_cos();
    let (sg, cg) = a.gamma.sin_cos();
    [
        RotationMatrix(Matrix3::new(1.0, 0.0, 0.0, 0.0, ca, sa, 0.0, -sa, ca)),
        RotationMatrix(Matrix3::new(sb, 0.0, cb, 0.0, 1.0, 0.0, -cb, 0.0, sb)),
        RotationMatrix(Matrix3::new(cg, sg, 0.0, -sg, cg, 0.0, 0.0, 0.0, 1.0)),
    ]
}

/// Product of the elementary rotations, femoral x first.
pub fn composite_rotation(a: JointAngles) -> RotationMatrix {
    let [rx, rf, rz] = elementary_rotations(a);
    RotationMatrix(rx.0 * rf.0 * rz.0)
}

/// Entry-wise closed form of [`composite_rotation`].
pub fn composite_rotation_closed_form(a: JointAngles) -> RotationMatrix {
    let (sa, ca) = a.alpha.sin_cos();
    let (sb, cb) = a.beta.sin_cos();
    let (sg, cg) = a.gamma.sin_cos();
    RotationMatrix(Matrix3::new(
        sb * cg,
        sb * sg,
        cb,
        -ca * sg - sa * cb * cg,
        ca * cg - sa * cb * sg,
        sa * sb,
        sa * sg - ca * cb * cg,
        -sa * cg - ca * cb * sg,
        ca * sb,
    ))
}

/// Rotation vector expressed in the femoral frame.
pub fn femoral_rotation_vector(a: JointAngles) -> [f64; 3] {
    let JointAngles { alpha, beta, gamma } = a;
    let (sa, ca) = alpha.sin_cos();
    let (sb, cb) = beta.sin_cos();
    [
        -alpha - gamma * cb,
        -beta * ca - gamma * sa * sb,
        beta * sa - gamma * ca * sb,
    ]
}

fn rotation_vector_jacobian(a: JointAngles) -> Matrix3<f64> {
    let JointAngles { alpha, beta, gamma } = a;
    let (sa, ca) = alpha.sin_cos();
    let (sb, cb) = beta.sin_cos();
    Matrix3::new(
        -1.0,
        gamma * sb,
        -cb,
        beta * sa - gamma * ca * sb,
        -ca - gamma * sa * cb,
        -sa * sb,
        beta * ca + gamma * sa * sb,
        sa - gamma * ca * cb,
        -ca * sb,
    )
}

/// Newton iteration cap for [`solve_angles`].
pub const MAX_NEWTON_ITERATIONS: usize = 100;

/// Converged when the max-norm residual drops below this.
pub const ANGLE_TOLERANCE: f64 = 1e-12;

/// Inverts [`femoral_rotation_vector`] by damped Newton iteration.
///
/// The step is halved (up to 30 times) while it fails to reduce the
/// residual. The branch reached depends on `guess`; a solution with
/// `beta` outside `(0, pi)` is rejected.
pub fn solve_angles(theta: [f64; 3], guess: JointAngles) -> Result<JointAngles> {
    let target = Vector3::from(theta);
    let residual = |a: JointAngles| Vector3::from(femoral_rotation_vector(a)) - target;
    let mut x = Vector3::from(guess.to_array());
    let mut r = residual(guess);
    let mut iterations = 0;
    while r.amax() >= ANGLE_TOLERANCE {
        if iterations == MAX_NEWTON_ITERATIONS {
            return Err(Error::NoConvergence {
                iterations,
                residual: r.amax(),
            });
        }
        iterations += 1;
        let angles = JointAngles::new(x[0], x[1], x[2]);
        let step =
            rotation_vector_jacobian(angles)
                .lu()
                .solve(&(-r))
                .ok_or(Error::NoConvergence {
                    iterations,
                    residual: r.amax(),
                })?;
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..30 {
            let cand = x + step * lambda;
            let rc = residual(JointAngles::new(cand[0], cand[1], cand[2]));
            if rc.amax() < r.amax() || rc.amax() < ANGLE_TOLERANCE {
                x = cand;
                r = rc;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if !accepted {
            // residual is at round-off level and cannot be reduced further
            if r.amax() < 1e-10 {
                break;
            }
            return Err(Error::NoConvergence {
                iterations,
                residual: r.amax(),
            });
        }
    }
    if !(x[1] > 0.0 && x[1] < std::f64::consts::PI) {
        return Err(Error::OutsideBranch(x[1]));
    }
    Ok(JointAngles::new(x[0], x[1], x[2]))
}

/// Row-vector product `(X, Y, Z) R`, i.e. `X' = R11 X + R21 Y + R31 Z`, etc.
pub fn to_tibial_frame(v: [f64; 3], r: &RotationMatrix) -> [f64; 3] {
    let out = r.0.transpose() * Vector3::from(v);
    [out[0], out[1], out[2]]
}

/// Closed-form tibial angular velocity in terms of angles and angle rates,
/// as quoted alongside the Grood-Suntay model.
pub fn angular_velocity_tibial_closed_form(a: JointAngles, rates: [f64; 3]) -> [f64; 3] {
    let JointAngles { beta, gamma, .. } = a;
    let [da, db, dg] = rates;
    let (sb, cb) = beta.sin_cos();
    let (sg, cg) = gamma.sin_cos();
    [
        -da * sb * cg - da * beta * cb * cg + da * gamma * sb * sg + db * sg + db * gamma * cg,
        -da * sb * sg - da * beta * cb * sg - da * gamma * sb * cg - db * cg + db * gamma * sg,
        -da * cb + da * beta * sb - dg,
    ]
}
