//! Ordinary least-squares fit of torque against angular velocity.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};

/// Affine map `M = C w + d`, one row of `C` per torque channel.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RegressionModel {
    /// `coefficients[i][j]` is the weight of `w_j` in `M_i` (N m per rad/s).
    pub coefficients: [[f64; 3]; 3],
    /// Intercepts (N m).
    pub intercepts: [f64; 3],
}

impl RegressionModel {
    pub fn from_rows(rows: [[f64; 4]; 3]) -> Self {
        let mut coefficients = [[0.0; 3]; 3];
        let mut intercepts = [0.0; 3];
        for (i, r) in rows.iter().enumerate() {
            coefficients[i].copy_from_slice(&r[..3]);
            intercepts[i] = r[3];
        }
        RegressionModel {
            coefficients,
            intercepts,
        }
    }

    /// Row `i` as `(c_x, c_y, c_z, intercept)`.
    pub fn row(&self, i: usize) -> [f64; 4] {
        let c = self.coefficients[i];
        [c[0], c[1], c[2], self.intercepts[i]]
    }

    pub fn predict(&self, omega: [f64; 3]) -> [f64; 3] {
        std::array::from_fn(|i| {
            self.coefficients[i]
                .iter()
                .zip(omega)
                .map(|(c, w)| c * w)
                .sum::<f64>()
                + self.intercepts[i]
        })
    }
}

/// Relative threshold on `|R_kk| / max |R_jj|` below which the design is rank deficient.
const RANK_TOLERANCE: f64 = 1e-10;

/// Fits `torque_i ~ sum_j c_ij omega_j + d_i` per channel by least squares,
/// via a QR factorisation of the design matrix `[omega | 1]`.
pub fn fit_torque_model(omega: &[[f64; 3]], torque: &[[f64; 3]]) -> Result<RegressionModel> {
    if omega.len() != torque.len() {
        return Err(Error::DimensionMismatch {
            expected: omega.len(),
            found: torque.len(),
        });
    }
    let n = omega.len();
    if n < 4 {
        return Err(Error::TooFewSamples {
            required: 4,
            found: n,
        });
    }
    let design = DMatrix::from_fn(n, 4, |r, c| if c < 3 { omega[r][c] } else { 1.0 });
    if design.iter().any(|v| !v.is_finite()) || torque.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("regression data".into()));
    }
    let qr = design.qr();
    let r = qr.r();
    let diag_max = r.diagonal().amax();
    if diag_max == 0.0
        || r.diagonal()
            .iter()
            .any(|d| d.abs() <= RANK_TOLERANCE * diag_max)
    {
        return Err(Error::RankDeficient);
    }
    let q = qr.q();
    let mut rows = [[0.0; 4]; 3];
    for (ch, row) in rows.iter_mut().enumerate() {
        let y = DVector::from_fn(n, |k, _| torque[k][ch]);
        let qty = q.transpose() * y;
        let beta = r.solve_upper_triangular(&qty).ok_or(Error::RankDeficient)?;
        row.copy_from_slice(beta.as_slice());
    }
    Ok(RegressionModel::from_rows(rows))
}
