//! The Yang-Mills energy as a quadratic form, and its constant-level sets.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::jet::SkewField;

/// `Q(x) = x^T A x + b^T x + c` with symmetric `A`.
#[derive(Clone, Debug, PartialEq)]
pub struct Quadric {
    a: DMatrix<f64>,
    b: DVector<f64>,
    c: f64,
}

impl Quadric {
    /// `a` must be symmetric within `1e-12`.
    pub fn new(a: DMatrix<f64>, b: DVector<f64>, c: f64) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::NotSquare {
                rows: a.nrows(),
                cols: a.ncols(),
            });
        }
        if a.nrows() != b.len() {
            return Err(Error::DimensionMismatch {
                expected: a.nrows(),
                found: b.len(),
            });
        }
        let n = a.nrows();
        for i in 0..n {
            for j in i + 1..n {
                if (a[(i, j)] - a[(j, i)]).abs() > 1e-12 {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(Quadric { a, b, c })
    }

    pub fn dim(&self) -> usize {
        self.b.len()
    }

    pub fn a(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn b(&self) -> &DVector<f64> {
        &self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        let x = DVector::from_column_slice(x);
        (x.transpose() * &self.a * &x)[(0, 0)] + self.b.dot(&x) + self.c
    }

    /// The quadric `x -> Q(x - shift)`.
    pub fn translated(&self, shift: &[f64]) -> Self {
        let s = DVector::from_column_slice(shift);
        let a_s = &self.a * &s;
        Quadric {
            a: self.a.clone(),
            b: &self.b - 2.0 * &a_s,
            c: s.dot(&a_s) - self.b.dot(&s) + self.c,
        }
    }
}

/// A level set `{x : Q(x) = k}` of a positive-definite quadric.
#[derive(Clone, Debug, PartialEq)]
pub enum LevelSet {
    Empty,
    SinglePoint {
        center: Vec<f64>,
    },
    /// Semi-axes in descending order; column `i` of `axes` is the direction
    /// of `semi_axes[i]`.
    Ellipsoid {
        center: Vec<f64>,
        semi_axes: Vec<f64>,
        axes: DMatrix<f64>,
    },
}

impl LevelSet {
    pub fn center(&self) -> Option<&[f64]> {
        match self {
            LevelSet::Empty => None,
            LevelSet::SinglePoint { center } | LevelSet::Ellipsoid { center, .. } => Some(center),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            LevelSet::Empty => "empty",
            LevelSet::SinglePoint { .. } => "point",
            LevelSet::Ellipsoid { .. } => "ellipsoid",
        }
    }
}

/// Expands `sum_{i<j} F_ij(x)^2` for a field whose entries are affine in `x`.
pub fn em_energy_quadric(field: &SkewField) -> Result<Quadric> {
    let n = field.nvars();
    let mut a = DMatrix::zeros(n, n);
    let mut b = DVector::zeros(n);
    let mut c = 0.0;
    for (i, j, p) in field.upper() {
        let (lin, c0) = p
            .affine_parts()
            .ok_or(Error::NotAffine { row: i, col: j })?;
        let l = DVector::from_vec(lin);
        a += &l * l.transpose();
        b += 2.0 * c0 * &l;
        c += c0 * c0;
    }
    Quadric::new(a, b, c)
}

/// Relative band around the minimum inside which a level counts as the single point.
pub const POINT_TOLERANCE: f64 = 1e-9;

/// Classifies `{Q = k}` by completing the square.
///
/// The point/ellipsoid band is `POINT_TOLERANCE * max(1, |k|, |c|)`; the `|c|`
/// term absorbs cancellation in `c - b^T A^{-1} b / 4` when the constant
/// term is large.
pub fn classify_level_set(q: &Quadric, k: f64) -> Result<LevelSet> {
    if k < 0.0 {
        return Err(Error::NegativeLevel(k));
    }
    if !k.is_finite() {
        return Err(Error::NonFinite(format!("level {k}")));
    }
    let n = q.dim();
    let eig = SymmetricEigen::new(q.a.clone());
    let lambda_max = eig.eigenvalues.amax();
    let lambda_min = eig.eigenvalues.min();
    if lambda_min.is_nan() || lambda_min <= 1e-14 * lambda_max.max(f64::MIN_POSITIVE) {
        return Err(Error::NotPositiveDefinite(lambda_min));
    }
    let chol =
        q.a.clone()
            .cholesky()
            .ok_or(Error::NotPositiveDefinite(lambda_min))?;
    let a_inv_b = chol.solve(&q.b);
    let center: Vec<f64> = (-0.5 * &a_inv_b).iter().copied().collect();
    let shifted = k - q.c + 0.25 * q.b.dot(&a_inv_b);
    let band = POINT_TOLERANCE * 1f64.max(k.abs()).max(q.c.abs());
    if shifted.abs() <= band {
        return Ok(LevelSet::SinglePoint { center });
    }
    if shifted < 0.0 {
        return Ok(LevelSet::Empty);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let semi_axes = order
        .iter()
        .map(|&i| (shifted / eig.eigenvalues[i]).sqrt())
        .collect();
    let axes = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(LevelSet::Ellipsoid {
        center,
        semi_axes,
        axes,
    })
}

/// Grid of surface points with quad faces between neighbouring samples.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceMesh {
    pub vertices: Vec<[f64; 3]>,
    /// Vertex indices of each quad, walking polar then azimuthal neighbours.
    pub faces: Vec<[usize; 4]>,
}

/// Samples an ellipsoid on a `(polar, azimuthal)` grid.
///
/// Polar angles run over `[0, pi]` inclusive, azimuths over `[0, 2 pi)`.
pub fn sample_surface(level: &LevelSet, resolution: (usize, usize)) -> Result<SurfaceMesh> {
    let LevelSet::Ellipsoid {
        center,
        semi_axes,
        axes,
    } = level
    else {
        return Err(Error::NotEllipsoid);
    };
    if center.len() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: center.len(),
        });
    }
    let (n_polar, n_azimuth) = resolution;
    if n_polar < 2 || n_azimuth < 3 {
        return Err(Error::TooFewSamples {
            required: if n_polar < 2 { 2 } else { 3 },
            found: if n_polar < 2 { n_polar } else { n_azimuth },
        });
    }
    let mut vertices = Vec::with_capacity(n_polar * n_azimuth);
    for i in 0..n_polar {
        let theta = std::f64::consts::PI * i as f64 / (n_polar - 1) as f64;
        let (st, ct) = theta.sin_cos();
        for j in 0..n_azimuth {
            let phi = std::f64::consts::TAU * j as f64 / n_azimuth as f64;
            let (sp, cp) = phi.sin_cos();
            let unit = [st * cp, st * sp, ct];
            vertices.push(std::array::from_fn(|r| {
                center[r]
                    + (0..3)
                        .map(|c| axes[(r, c)] * semi_axes[c] * unit[c])
                        .sum::<f64>()
            }));
        }
    }
    let mut faces = Vec::with_capacity((n_polar - 1) * n_azimuth);
    for i in 0..n_polar - 1 {
        for j in 0..n_azimuth {
            let jn = (j + 1) % n_azimuth;
            faces.push([
                i * n_azimuth + j,
                (i + 1) * n_azimuth + j,
                (i + 1) * n_azimuth + jn,
                i * n_azimuth + jn,
            ]);
        }
    }
    Ok(SurfaceMesh { vertices, faces })
}
