//! Polynomial vector fields `x' = X(x)` on R^n and their Jacobians.

use std::path::Path;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};

/// Default central-difference step, scaled by `max(1, |x_j|)` per column.
pub const DEFAULT_FD_STEP: f64 = 1e-5;

/// A vector field with one polynomial per component.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyVectorField {
    components: Vec<Polynomial>,
    variables: Vec<String>,
}

impl PolyVectorField {
    pub fn new(components: Vec<Polynomial>) -> Result<Self> {
        let dim = components.len();
        let variables = (1..=dim).map(|i| format!("x{i}")).collect();
        Self::with_variables(components, variables)
    }

    pub fn with_variables(components: Vec<Polynomial>, variables: Vec<String>) -> Result<Self> {
        let dim = components.len();
        if dim == 0 {
            return Err(Error::InvalidField("dimension must be positive".into()));
        }
        if let Some(bad) = components.iter().find(|c| c.nvars() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.nvars(),
            });
        }
        if variables.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: variables.len(),
            });
        }
        Ok(PolyVectorField {
            components,
            variables,
        })
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(vec![Polynomial::zero(dim); dim]).expect("zero field is valid")
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn eval(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_len(self.dim(), x.len())?;
        Ok(self.components.iter().map(|c| c.eval(x)).collect())
    }

    /// Exact Jacobian `J[i][j] = dX_i / dx_j`.
    pub fn jacobian(&self) -> PolyMatrix {
        let n = self.dim();
        let mut entries = Vec::with_capacity(n * n);
        for c in &self.components {
            for j in 0..n {
                entries.push(c.derivative(j));
            }
        }
        PolyMatrix {
            rows: n,
            cols: n,
            nvars: n,
            entries,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: FieldFile = serde_json::from_str(text)?;
        file.into_field()
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        let file = FieldFile {
            dim: self.dim(),
            variables: Some(self.variables.clone()),
            components: self
                .components
                .iter()
                .map(|c| c.terms().iter().rev().cloned().collect())
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("field serializes")
    }
}

/// On-disk layout of a vector field.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldFile {
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    variables: Option<Vec<String>>,
    components: Vec<Vec<Monomial>>,
}

impl FieldFile {
    fn into_field(self) -> Result<PolyVectorField> {
        if self.dim == 0 {
            return Err(Error::InvalidField("dim must be positive".into()));
        }
        if self.components.len() != self.dim {
            return Err(Error::InvalidField(format!(
                "dim is {} but {} components were given",
                self.dim,
                self.components.len()
            )));
        }
        let mut comps = Vec::with_capacity(self.dim);
        for (i, terms) in self.components.into_iter().enumerate() {
            let p = Polynomial::from_terms(self.dim, terms)
                .map_err(|e| Error::InvalidField(format!("component {}: {e}", i + 1)))?;
            comps.push(p);
        }
        match self.variables {
            Some(v) => PolyVectorField::with_variables(comps, v),
            None => PolyVectorField::new(comps),
        }
    }
}

/// Row-major matrix of polynomials over a common variable count.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn from_fn(
        rows: usize,
        cols: usize,
        nvars: usize,
        mut f: impl FnMut(usize, usize) -> Polynomial,
    ) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let p = f(i, j);
                check_len(nvars, p.nvars())?;
                entries.push(p);
            }
        }
        Ok(PolyMatrix {
            rows,
            cols,
            nvars,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            nvars,
            entries: vec![Polynomial::zero(nvars); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        PolyMatrix {
            rows: self.cols,
            cols: self.rows,
            nvars: self.nvars,
            entries,
        }
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Self {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            nvars: self.nvars,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn eval(&self, x: &[f64]) -> Result<DMatrix<f64>> {
        check_len(self.nvars, x.len())?;
        Ok(DMatrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).eval(x)
        }))
    }
}

/// Central-difference Jacobian of a black-box map at `x`.
///
/// Column `j` uses the step `h * max(1, |x_j|)`.
pub fn numeric_jacobian<F>(f: F, x: &[f64], h: f64) -> Result<DMatrix<f64>>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidStep(h));
    }
    let n = x.len();
    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut probe = x.to_vec();
    let mut m = None;
    for j in 0..n {
        let step = h * x[j].abs().max(1.0);
        probe[j] = x[j] + step;
        let fp = f(&probe);
        probe[j] = x[j] - step;
        let fm = f(&probe);
        probe[j] = x[j];
        if fp.len() != fm.len() || m.is_some_and(|m| m != fp.len()) {
            return Err(Error::DimensionMismatch {
                expected: m.unwrap_or(fp.len()),
                found: fm.len(),
            });
        }
        m = Some(fp.len());
        let col: Vec<f64> = fp
            .iter()
            .zip(&fm)
            .map(|(a, b)| (a - b) / (2.0 * step))
            .collect();
        if let Some(bad) = fp.iter().chain(&fm).find(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!(
                "function value {bad} near column {j}"
            )));
        }
        columns.push(col);
    }
    let m = m.unwrap_or(0);
    Ok(DMatrix::from_fn(m, n, |i, j| columns[j][i]))
}

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
