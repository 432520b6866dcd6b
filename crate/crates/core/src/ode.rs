//! Uniformly sampled trajectories and fixed-step RK4 integration.

use crate::error::{Error, Result};
use crate::vectorfield::{check_len, PolyVectorField};

/// State samples on a uniform time grid `t0 + k * dt`.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    t0: f64,
    dt: f64,
    states: Vec<Vec<f64>>,
}

impl Trajectory {
    pub fn new(t0: f64, dt: f64, states: Vec<Vec<f64>>) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::InvalidStep(dt));
        }
        if states.len() < 2 {
            return Err(Error::TooFewSamples {
                required: 2,
                found: states.len(),
            });
        }
        let n = states[0].len();
        for s in &states {
            check_len(n, s.len())?;
        }
        Ok(Trajectory { t0, dt, states })
    }

    /// Builds a trajectory from explicit sample times, which must be uniform
    /// to within `1e-9` of the mean step.
    pub fn from_samples(times: &[f64], states: Vec<Vec<f64>>) -> Result<Self> {
        check_len(times.len(), states.len())?;
        if times.len() < 2 {
            return Err(Error::TooFewSamples {
                required: 2,
                found: times.len(),
            });
        }
        let dt = (times[times.len() - 1] - times[0]) / (times.len() - 1) as f64;
        let uniform = times
            .windows(2)
            .all(|w| ((w[1] - w[0]) - dt).abs() <= 1e-9 * dt.abs().max(1e-300));
        if !uniform || dt <= 0.0 {
            return Err(Error::NonUniformGrid);
        }
        Self::new(times[0], dt, states)
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.states[0].len()
    }

    pub fn time(&self, k: usize) -> f64 {
        self.t0 + k as f64 * self.dt
    }

    pub fn states(&self) -> &[Vec<f64>] {
        &self.states
    }

    /// Every `stride`-th sample, starting with the first.
    pub fn subsample(&self, stride: usize) -> Result<Self> {
        assert!(stride > 0, "stride must be positive");
        let states = self.states.iter().step_by(stride).cloned().collect();
        Self::new(self.t0, self.dt * stride as f64, states)
    }

    /// Second-order finite-difference velocities at every node: central in
    /// the interior, one-sided three-point at the ends.
    pub fn velocities(&self) -> Result<Vec<Vec<f64>>> {
        let m = self.len();
        if m < 3 {
            return Err(Error::TooFewSamples {
                required: 3,
                found: m,
            });
        }
        let n = self.dim();
        let h2 = 2.0 * self.dt;
        let x = &self.states;
        let mut v = Vec::with_capacity(m);
        v.push(
            (0..n)
                .map(|i| (-3.0 * x[0][i] + 4.0 * x[1][i] - x[2][i]) / h2)
                .collect(),
        );
        for k in 1..m - 1 {
            v.push((0..n).map(|i| (x[k + 1][i] - x[k - 1][i]) / h2).collect());
        }
        v.push(
            (0..n)
                .map(|i| (3.0 * x[m - 1][i] - 4.0 * x[m - 2][i] + x[m - 3][i]) / h2)
                .collect(),
        );
        Ok(v)
    }
}

/// Classical fixed-step fourth-order Runge-Kutta integration of `x' = X(x)`.
///
/// Returns `steps + 1` samples starting at `x0` (time origin 0). Fails as soon
/// as a non-finite state is produced.
pub fn integrate(field: &PolyVectorField, x0: &[f64], dt: f64, steps: usize) -> Result<Trajectory> {
    check_len(field.dim(), x0.len())?;
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidStep(dt));
    }
    let n = x0.len();
    let mut states = Vec::with_capacity(steps + 1);
    let mut x = x0.to_vec();
    states.push(x.clone());
    let mut tmp = vec![0.0; n];
    for step in 0..steps {
        let k1 = field.eval(&x)?;
        axpy(&x, 0.5 * dt, &k1, &mut tmp);
        let k2 = field.eval(&tmp)?;
        axpy(&x, 0.5 * dt, &k2, &mut tmp);
        let k3 = field.eval(&tmp)?;
        axpy(&x, dt, &k3, &mut tmp);
        let k4 = field.eval(&tmp)?;
        for i in 0..n {
            x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!(
                "state after step {} at t = {}",
                step + 1,
                (step + 1) as f64 * dt
            )));
        }
        states.push(x.clone());
    }
    Trajectory::new(0.0, dt, states)
}

fn axpy(x: &[f64], a: f64, y: &[f64], out: &mut [f64]) {
    for ((o, xi), yi) in out.iter_mut().zip(x).zip(y) {
        *o = xi + a * yi;
    }
}
