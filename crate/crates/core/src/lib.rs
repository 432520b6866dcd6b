//! Jet single-time Lagrange geometry of polynomial ODE systems, with the
//! tibio-femoral knee case study built on top of it.

pub mod error;
pub mod export;
pub mod fmt;
pub mod gait;
pub mod groodsuntay;
pub mod jet;
pub mod knee;
pub mod ode;
pub mod poly;
pub mod quadric;
pub mod report;
pub mod vectorfield;

pub use error::{Error, Result};
pub use gait::{run_knee_pipeline, KneeReport, PipelineConfig, RegressionModel, Tolerances};
pub use groodsuntay::{EulerParams, JointAngles, RotationMatrix};
pub use jet::{SkewField, TorsionTensor, Vanishing};
pub use ode::Trajectory;
pub use poly::{Monomial, Polynomial};
pub use quadric::{LevelSet, Quadric, SurfaceMesh};
pub use report::JetReport;
pub use vectorfield::{PolyMatrix, PolyVectorField};
