//! Euler's rigid-body equations with an affine torque model, solved for the
//! angular accelerations.

use crate::error::Result;
use crate::gait::regression::RegressionModel;
use crate::groodsuntay::EulerParams;
use crate::poly::{Monomial, Polynomial};
use crate::vectorfield::PolyVectorField;

/// Tibial angular-velocity coordinate names.
pub const OMEGA_NAMES: [&str; 3] = ["w_x'", "w_y'", "w_z'"];

/// `w_i' = [M_i(w) - (I_k - I_j) w_j w_k] / I_i` for cyclic `(i, j, k)`.
pub fn assemble_knee_ode(params: &EulerParams, model: &RegressionModel) -> Result<PolyVectorField> {
    let inertia = params.as_array();
    let mut comps = Vec::with_capacity(3);
    for i in 0..3 {
        let j = (i + 1) % 3;
        let k = (i + 2) % 3;
        let ii = inertia[i];
        let mut terms = Vec::with_capacity(5);
        let mut e = [0u32; 3];
        e[j] = 1;
        e[k] = 1;
        terms.push(Monomial::new((inertia[j] - inertia[k]) / ii, e.to_vec()));
        for (v, c) in model.coefficients[i].iter().enumerate() {
            let mut e = vec![0; 3];
            e[v] = 1;
            terms.push(Monomial::new(c / ii, e));
        }
        terms.push(Monomial::new(model.intercepts[i] / ii, vec![0; 3]));
        comps.push(Polynomial::from_terms(3, terms)?);
    }
    PolyVectorField::with_variables(comps, OMEGA_NAMES.iter().map(|s| s.to_string()).collect())
}
