//! Lagrange interpolation through distinct nodes, with analytic derivatives.

use crate::error::{Error, Result};

/// The unique polynomial of degree `< nodes.len()` through the samples.
#[derive(Clone, Debug, PartialEq)]
pub struct LagrangeInterpolant {
    nodes: Vec<f64>,
    values: Vec<f64>,
}

impl LagrangeInterpolant {
    pub fn new(nodes: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if nodes.len() != values.len() {
            return Err(Error::DimensionMismatch {
                expected: nodes.len(),
                found: values.len(),
            });
        }
        if nodes.is_empty() {
            return Err(Error::TooFewSamples {
                required: 1,
                found: 0,
            });
        }
        if nodes.iter().chain(&values).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("interpolation data".into()));
        }
        for (i, a) in nodes.iter().enumerate() {
            if nodes[i + 1..].iter().any(|b| a == b) {
                return Err(Error::BadNodes);
            }
        }
        Ok(LagrangeInterpolant { nodes, values })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn degree_bound(&self) -> usize {
        self.nodes.len() - 1
    }

    /// `l_i(t) = prod_{m != i} (t - t_m) / (t_i - t_m)`.
    fn basis(&self, i: usize, t: f64) -> f64 {
        let ti = self.nodes[i];
        self.nodes
            .iter()
            .enumerate()
            .filter(|&(m, _)| m != i)
            .map(|(_, &tm)| (t - tm) / (ti - tm))
            .product()
    }

    /// `l_i'(t) = sum_{m != i} 1/(t_i - t_m) prod_{j != i, m} (t - t_j)/(t_i - t_j)`.
    fn basis_derivative(&self, i: usize, t: f64) -> f64 {
        let ti = self.nodes[i];
        let n = self.nodes.len();
        (0..n)
            .filter(|&m| m != i)
            .map(|m| {
                let rest: f64 = (0..n)
                    .filter(|&j| j != i && j != m)
                    .map(|j| (t - self.nodes[j]) / (ti - self.nodes[j]))
                    .product();
                rest / (ti - self.nodes[m])
            })
            .sum()
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.values
            .iter()
            .enumerate()
            .map(|(i, y)| y * self.basis(i, t))
            .sum()
    }

    pub fn derivative(&self, t: f64) -> f64 {
        self.values
            .iter()
            .enumerate()
            .map(|(i, y)| y * self.basis_derivative(i, t))
            .sum()
    }

    /// Derivative of the interpolant at each of its own nodes.
    pub fn node_derivatives(&self) -> Vec<f64> {
        self.nodes.iter().map(|&t| self.derivative(t)).collect()
    }
}
