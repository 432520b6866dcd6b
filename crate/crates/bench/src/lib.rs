//! Deterministic inputs shared by the benchmarks in `benches/`.

use kneejet::{Monomial, PolyVectorField, Polynomial};

/// Dense `n`-dimensional field with every monomial of total degree at most
/// `degree` and fixed pseudo-random coefficients in `[-1, 1)`.
pub fn dense_field(n: usize, degree: u32) -> PolyVectorField {
    let mut state = 0x9e37_79b9_7f4a_7c15_u64;
    let mut next = move || {
        // xorshift64
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 52) as f64 - 1.0
    };
    let exps = exponents(n, degree);
    let comps = (0..n)
        .map(|_| {
            let terms = exps
                .iter()
                .map(|e| Monomial::new(next(), e.clone()))
                .collect();
            Polynomial::from_terms(n, terms).expect("finite coefficients")
        })
        .collect();
    PolyVectorField::new(comps).expect("square field")
}

fn exponents(n: usize, degree: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for head in 0..=degree {
        for mut tail in exponents(n - 1, degree - head) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// `count` points on a fixed lattice in `[-2, 2]^n`.
pub fn lattice_points(n: usize, count: usize) -> Vec<Vec<f64>> {
    (0..count)
        .map(|k| {
            (0..n)
                .map(|i| -2.0 + 4.0 * (((k * 7 + i * 13) % 29) as f64) / 28.0)
                .collect()
        })
        .collect()
}
