//! Jet geometric objects produced by a first-order polynomial ODE system
//! `x' = X(x)` on `J^1(R, R^n)` with the Euclidean metrics.
//!
//! For this class of systems the canonical nonlinear connection is the
//! negated skew part of the Jacobian, the Cartan connection and its
//! curvature vanish, the torsion is the gradient of the connection, and the
//! "electromagnetic" field is `F = -N`. Indices are 0-based throughout.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::ode::Trajectory;
use crate::poly::Polynomial;
use crate::vectorfield::{check_len, PolyMatrix, PolyVectorField};

/// Square polynomial matrix with `entry(i, j) == -entry(j, i)` exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewField {
    matrix: PolyMatrix,
}

impl SkewField {
    /// Validates exact skew-symmetry of `matrix`.
    pub fn from_matrix(matrix: PolyMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let n = matrix.rows();
        for i in 0..n {
            for j in i..n {
                if matrix.get(i, j) != &-matrix.get(j, i) {
                    return Err(Error::NotSkew { row: i, col: j });
                }
            }
        }
        Ok(SkewField { matrix })
    }

    /// Builds the skew matrix whose strict upper triangle is given by `upper(i, j)`.
    pub fn from_upper(
        dim: usize,
        nvars: usize,
        mut upper: impl FnMut(usize, usize) -> Polynomial,
    ) -> Result<Self> {
        let mut up = vec![Polynomial::zero(nvars); dim * dim];
        for i in 0..dim {
            for j in i + 1..dim {
                up[i * dim + j] = upper(i, j);
            }
        }
        let matrix = PolyMatrix::from_fn(dim, dim, nvars, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Less => up[i * dim + j].clone(),
            std::cmp::Ordering::Equal => Polynomial::zero(nvars),
            std::cmp::Ordering::Greater => -&up[j * dim + i],
        })?;
        Ok(SkewField { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn nvars(&self) -> usize {
        self.matrix.nvars()
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        self.matrix.get(i, j)
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn eval(&self, x: &[f64]) -> Result<DMatrix<f64>> {
        self.matrix.eval(x)
    }

    /// Strict upper-triangle entries `(i, j, F_ij)` in row order.
    pub fn upper(&self) -> impl Iterator<Item = (usize, usize, &Polynomial)> + '_ {
        let n = self.dim();
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j, self.get(i, j))))
    }

    /// Applies `f` to every upper-triangle coefficient and mirrors the result.
    pub fn map_coeffs(&self, f: impl Fn(f64) -> f64) -> Self {
        Self::from_upper(self.dim(), self.nvars(), |i, j| {
            self.get(i, j).map_coeffs(&f)
        })
        .expect("mirrored matrix is skew")
    }

    pub fn negate(&self) -> Self {
        SkewField {
            matrix: self.matrix.map(|p| -p),
        }
    }
}

/// `T_k = dN/dx_k` for every variable `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorsionTensor {
    slices: Vec<PolyMatrix>,
}

impl TorsionTensor {
    pub fn slices(&self) -> &[PolyMatrix] {
        &self.slices
    }

    pub fn slice(&self, k: usize) -> &PolyMatrix {
        &self.slices[k]
    }

    pub fn is_zero(&self) -> bool {
        self.slices.iter().all(PolyMatrix::is_zero)
    }
}

/// A point `(t, x, x_1)` of the jet space.
#[derive(Clone, Debug, PartialEq)]
pub struct JetState {
    pub t: f64,
    pub x: Vec<f64>,
    pub velocity: Vec<f64>,
}

impl JetState {
    pub fn new(t: f64, x: Vec<f64>, velocity: Vec<f64>) -> Result<Self> {
        check_len(x.len(), velocity.len())?;
        Ok(JetState { t, x, velocity })
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }
}

/// Which identically vanishing object a [`Vanishing`] stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VanishingKind {
    /// Adapted components of the canonical Cartan linear connection,
    /// together with the temporal components `M` of the nonlinear connection.
    CartanConnection,
    /// Adapted components of the Cartan curvature tensor.
    Curvature,
}

/// An object whose every component is zero for polynomial ODE systems.
///
/// There is deliberately no way to build a non-zero value of this type.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Vanishing {
    kind: VanishingKind,
    dim: usize,
}

impl Vanishing {
    pub fn kind(&self) -> VanishingKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        true
    }

    /// Any component, addressed by an index tuple below `dim`.
    pub fn component(&self, indices: &[usize]) -> f64 {
        assert!(indices.iter().all(|&i| i < self.dim), "index out of range");
        0.0
    }
}

/// `N = -(J - J^T) / 2`.
pub fn nonlinear_connection(jacobian: &PolyMatrix) -> Result<SkewField> {
    if !jacobian.is_square() {
        return Err(Error::NotSquare {
            rows: jacobian.rows(),
            cols: jacobian.cols(),
        });
    }
    SkewField::from_upper(jacobian.rows(), jacobian.nvars(), |i, j| {
        (jacobian.get(j, i) - jacobian.get(i, j)).scale(0.5)
    })
}

pub fn cartan_connection(dim: usize) -> Vanishing {
    Vanishing {
        kind: VanishingKind::CartanConnection,
        dim,
    }
}

pub fn curvature(dim: usize) -> Vanishing {
    Vanishing {
        kind: VanishingKind::Curvature,
        dim,
    }
}

pub fn torsion(connection: &SkewField) -> TorsionTensor {
    let slices = (0..connection.nvars())
        .map(|k| connection.matrix().map(|p| p.derivative(k)))
        .collect();
    TorsionTensor { slices }
}

/// `F = -N`.
pub fn em_field(connection: &SkewField) -> SkewField {
    connection.negate()
}

/// `EYM(x) = sum_{i<j} F_ij(x)^2`.
pub fn yang_mills_energy(field: &SkewField, x: &[f64]) -> Result<f64> {
    check_len(field.nvars(), x.len())?;
    Ok(field.upper().map(|(_, _, p)| p.eval(x).powi(2)).sum())
}

/// `EYM(x) = Tr(F F^T) / 2`, i.e. half the squared Frobenius norm of `F(x)`.
pub fn yang_mills_energy_trace(field: &SkewField, x: &[f64]) -> Result<f64> {
    let f = field.eval(x)?;
    Ok(0.5 * (&f * f.transpose()).trace())
}

/// The energy as a polynomial in the state variables.
pub fn yang_mills_polynomial(field: &SkewField) -> Polynomial {
    field
        .upper()
        .fold(Polynomial::zero(field.nvars()), |acc, (_, _, p)| {
            &acc + &(p * p)
        })
}

fn check_triple(dim: usize, (i, j, k): (usize, usize, usize)) -> Result<()> {
    if i >= dim || j >= dim || k >= dim || i == j || j == k || i == k {
        return Err(Error::InvalidIndexTriple { i, j, k, dim });
    }
    Ok(())
}

/// Symbolic cyclic sum `dF_ij/dx_k + dF_jk/dx_i + dF_ki/dx_j`.
pub fn maxwell_cyclic_sum(field: &SkewField, triple: (usize, usize, usize)) -> Result<Polynomial> {
    check_triple(field.dim(), triple)?;
    let (i, j, k) = triple;
    let a = field.get(i, j).derivative(k);
    let b = field.get(j, k).derivative(i);
    let c = field.get(k, i).derivative(j);
    Ok(&(&a + &b) + &c)
}

/// The Maxwell cyclic sum evaluated at `x`.
pub fn maxwell_residual(
    field: &SkewField,
    triple: (usize, usize, usize),
    x: &[f64],
) -> Result<f64> {
    check_len(field.nvars(), x.len())?;
    check_triple(field.dim(), triple)?;
    let (i, j, k) = triple;
    // evaluate term by term rather than through the merged polynomial
    Ok(field.get(i, j).derivative(k).eval(x)
        + field.get(j, k).derivative(i).eval(x)
        + field.get(k, i).derivative(j).eval(x))
}

/// Jet least-squares Lagrangian `sum_i (x_1^i - X^i(x))^2`.
pub fn jls_lagrangian(field: &PolyVectorField, state: &JetState) -> Result<f64> {
    check_len(field.dim(), state.dim())?;
    let target = field.eval(&state.x)?;
    Ok(state
        .velocity
        .iter()
        .zip(&target)
        .map(|(v, t)| (v - t).powi(2))
        .sum())
}

/// Euler-Lagrange residual `dL/dx_i - d/dt(dL/dx'_i)` of the jet least-squares
/// Lagrangian along a sampled path, at every interior node.
///
/// `dL/dx_i` uses the exact Jacobian; path velocities and the outer time
/// derivative use second-order differences.
pub fn euler_lagrange_residual(
    field: &PolyVectorField,
    path: &Trajectory,
    index: usize,
) -> Result<Vec<f64>> {
    let n = field.dim();
    check_len(n, path.dim())?;
    if index >= n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: index + 1,
        });
    }
    let m = path.len();
    if m < 3 {
        return Err(Error::TooFewSamples {
            required: 3,
            found: m,
        });
    }
    let jac = field.jacobian();
    let vel = path.velocities()?;
    let defect: Vec<Vec<f64>> = path
        .states()
        .iter()
        .zip(&vel)
        .map(|(x, v)| {
            let fx = field.eval(x)?;
            Ok(v.iter().zip(&fx).map(|(a, b)| a - b).collect())
        })
        .collect::<Result<_>>()?;
    let h2 = 2.0 * path.dt();
    let mut out = Vec::with_capacity(m - 2);
    for k in 1..m - 1 {
        let x = &path.states()[k];
        let d_dx: f64 = -2.0
            * (0..n)
                .map(|j| defect[k][j] * jac.get(j, index).eval(x))
                .sum::<f64>();
        let d_dt = 2.0 * (defect[k + 1][index] - defect[k - 1][index]) / h2;
        out.push(d_dx - d_dt);
    }
    Ok(out)
}
