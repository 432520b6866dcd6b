//! Sparse multivariate polynomials with real coefficients.
//!
//! A [`Polynomial`] is kept in canonical form at all times: terms sorted in
//! ascending graded-lexicographic order of their exponent vectors, no two
//! terms sharing an exponent vector, and no exactly-zero coefficients. Two
//! polynomials that are equal as functions with identical coefficients are
//! therefore equal as values, which lets skew-symmetry and zero checks be
//! done structurally.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One term `coeff * x1^e1 * ... * xn^en`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Monomial {
    pub coeff: f64,
    pub exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(coeff: f64, exponents: Vec<u32>) -> Self {
        Monomial { coeff, exponents }
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.exponents
            .iter()
            .zip(x)
            .fold(self.coeff, |acc, (&e, &xi)| match e {
                0 => acc,
                1 => acc * xi,
                _ => acc * xi.powi(e as i32),
            })
    }
}

/// Graded lexicographic order: total degree first, then lexicographic on exponents.
pub fn grlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// Sorts, merges duplicate exponent vectors and drops zero coefficients.
pub fn canonicalize(mut terms: Vec<Monomial>) -> Vec<Monomial> {
    terms.sort_by(|a, b| grlex_cmp(&a.exponents, &b.exponents));
    let mut out: Vec<Monomial> = Vec::with_capacity(terms.len());
    for t in terms {
        match out.last_mut() {
            Some(last) if last.exponents == t.exponents => last.coeff += t.coeff,
            _ => out.push(t),
        }
    }
    out.retain(|t| t.coeff != 0.0);
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<Monomial>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, c: f64) -> Self {
        Self::from_terms_unchecked(nvars, vec![Monomial::new(c, vec![0; nvars])])
    }

    /// The coordinate function `x_var`.
    pub fn var(nvars: usize, var: usize) -> Self {
        assert!(var < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[var] = 1;
        Self::from_terms_unchecked(nvars, vec![Monomial::new(1.0, e)])
    }

    /// Builds a canonical polynomial, validating exponent lengths and coefficients.
    pub fn from_terms(nvars: usize, terms: Vec<Monomial>) -> Result<Self> {
        for t in &terms {
            if t.exponents.len() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: t.exponents.len(),
                });
            }
            if !t.coeff.is_finite() {
                return Err(Error::NonFinite(format!("coefficient {}", t.coeff)));
            }
        }
        Ok(Self::from_terms_unchecked(nvars, terms))
    }

    pub(crate) fn from_terms_unchecked(nvars: usize, terms: Vec<Monomial>) -> Self {
        Polynomial {
            nvars,
            terms: canonicalize(terms),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.last().map(Monomial::degree)
    }

    /// Coefficient of the term with the given exponents (0 if absent).
    pub fn coeff(&self, exponents: &[u32]) -> f64 {
        self.terms
            .binary_search_by(|t| grlex_cmp(&t.exponents, exponents))
            .map(|i| self.terms[i].coeff)
            .unwrap_or(0.0)
    }

    /// Evaluates at `x`. Panics if `x.len() != nvars`.
    pub fn eval(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.nvars, "evaluation point has wrong length");
        self.terms.iter().map(|t| t.eval(x)).sum()
    }

    /// Exact partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> Self {
        assert!(var < self.nvars, "variable index out of range");
        let terms = self
            .terms
            .iter()
            .filter(|t| t.exponents[var] > 0)
            .map(|t| {
                let mut e = t.exponents.clone();
                let p = e[var];
                e[var] -= 1;
                Monomial::new(t.coeff * p as f64, e)
            })
            .collect();
        Self::from_terms_unchecked(self.nvars, terms)
    }

    pub fn scale(&self, s: f64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| Monomial::new(t.coeff * s, t.exponents.clone()))
            .collect();
        Self::from_terms_unchecked(self.nvars, terms)
    }

    /// Applies `f` to every coefficient, re-canonicalizing afterwards.
    pub fn map_coeffs(&self, f: impl Fn(f64) -> f64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| Monomial::new(f(t.coeff), t.exponents.clone()))
            .collect();
        Self::from_terms_unchecked(self.nvars, terms)
    }

    /// Splits a polynomial of degree at most one into `(linear, constant)`.
    pub fn affine_parts(&self) -> Option<(Vec<f64>, f64)> {
        let mut linear = vec![0.0; self.nvars];
        let mut constant = 0.0;
        for t in &self.terms {
            match t.degree() {
                0 => constant = t.coeff,
                1 => {
                    let i = t.exponents.iter().position(|&e| e == 1)?;
                    linear[i] = t.coeff;
                }
                _ => return None,
            }
        }
        Some((linear, constant))
    }

    /// Renders the polynomial with the highest-degree terms first.
    ///
    /// `coeff` formats an absolute coefficient value; signs are handled here.
    pub fn render(&self, names: &[String], coeff: impl Fn(f64) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, t) in self.terms.iter().rev().enumerate() {
            let neg = t.coeff < 0.0;
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&coeff(t.coeff.abs()));
            for (i, &e) in t.exponents.iter().enumerate() {
                match e {
                    0 => {}
                    1 => {
                        out.push('*');
                        out.push_str(&names[i]);
                    }
                    _ => {
                        out.push('*');
                        out.push_str(&names[i]);
                        out.push('^');
                        out.push_str(&e.to_string());
                    }
                }
            }
        }
        out
    }

    fn check_same_vars(&self, other: &Self) {
        assert_eq!(
            self.nvars, other.nvars,
            "polynomials over different variable counts"
        );
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.check_same_vars(rhs);
        let terms = self.terms.iter().chain(&rhs.terms).cloned().collect();
        Polynomial::from_terms_unchecked(self.nvars, terms)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(-1.0)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.check_same_vars(rhs);
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for a in &self.terms {
            for b in &rhs.terms {
                let e = a
                    .exponents
                    .iter()
                    .zip(&b.exponents)
                    .map(|(x, y)| x + y)
                    .collect();
                terms.push(Monomial::new(a.coeff * b.coeff, e));
            }
        }
        Polynomial::from_terms_unchecked(self.nvars, terms)
    }
}
