//! Gait-data pipeline: interpolation of the sampled knee channels, frame
//! changes, torque regression and assembly of the knee ODE.

pub mod euler;
pub mod interp;
pub mod pipeline;
pub mod regression;

pub use crate::ode::{integrate, Trajectory};
pub use euler::assemble_knee_ode;
pub use interp::LagrangeInterpolant;
pub use pipeline::{run_knee_pipeline, KneeReport, PipelineConfig, Tolerances};
pub use regression::{fit_torque_model, RegressionModel};

use crate::error::{Error, Result};

/// One channel sampled at the five gait nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct GaitSeries {
    times: [f64; 5],
    values: [f64; 5],
    pub channel: String,
    pub unit: String,
}

impl GaitSeries {
    pub fn new(
        times: [f64; 5],
        values: [f64; 5],
        channel: impl Into<String>,
        unit: impl Into<String>,
    ) -> Result<Self> {
        if !times.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::BadNodes);
        }
        Ok(GaitSeries {
            times,
            values,
            channel: channel.into(),
            unit: unit.into(),
        })
    }

    pub fn times(&self) -> &[f64; 5] {
        &self.times
    }

    pub fn values(&self) -> &[f64; 5] {
        &self.values
    }
}

/// Degree-4 interpolant through the five samples.
pub fn lagrange_interpolant(series: &GaitSeries) -> Result<LagrangeInterpolant> {
    LagrangeInterpolant::new(series.times.to_vec(), series.values.to_vec())
}

/// Time derivative of the interpolant at each node.
pub fn node_derivatives(series: &GaitSeries) -> Result<[f64; 5]> {
    let d = lagrange_interpolant(series)?.node_derivatives();
    Ok(std::array::from_fn(|i| d[i]))
}

/// Splits a node-by-channel table into one series per channel.
pub fn channels(
    times: [f64; 5],
    table: &[[f64; 3]; 5],
    names: [&str; 3],
    unit: &str,
) -> Result<[GaitSeries; 3]> {
    let mk =
        |c: usize| GaitSeries::new(times, std::array::from_fn(|k| table[k][c]), names[c], unit);
    Ok([mk(0)?, mk(1)?, mk(2)?])
}
