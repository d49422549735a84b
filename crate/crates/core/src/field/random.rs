//! Seeded random polynomial fields for identity suites.

use std::sync::Arc;

use rand::Rng;

use super::{Component, Cutoff, Monomial, Polynomial, ScalarField, VectorComponents};

/// All exponent vectors in `dim` variables with total degree ≤ `degree`.
pub fn exponents(dim: usize, degree: u32) -> Vec<Vec<u32>> {
    if dim == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..=degree {
        for mut rest in exponents(dim - 1, degree - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Polynomial of total degree ≤ `degree` with coefficients uniform in
/// `[-scale, scale]`, times an optional cutoff.
pub fn random_polynomial<R: Rng>(
    rng: &mut R,
    dim: usize,
    degree: u32,
    scale: f64,
    cutoff: Option<Cutoff>,
) -> Polynomial {
    let terms = exponents(dim, degree)
        .into_iter()
        .map(|powers| Monomial {
            coef: rng.gen_range(-scale..=scale),
            powers,
        })
        .collect();
    Polynomial::new(dim, terms, cutoff).expect("exponent vectors match the dimension")
}

/// Vector field with independent random polynomial components sharing one cutoff.
pub fn random_vector_polynomial<R: Rng>(
    rng: &mut R,
    dim: usize,
    degree: u32,
    scale: f64,
    cutoff: Option<Cutoff>,
) -> VectorComponents {
    let components: Vec<Component> = (0..dim)
        .map(|_| Arc::new(random_polynomial(rng, dim, degree, scale, cutoff.clone())) as Arc<dyn ScalarField>)
        .collect();
    VectorComponents::new(components).expect("one component per dimension")
}
