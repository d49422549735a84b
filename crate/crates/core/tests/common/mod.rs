#![allow(dead_code)]

use innervar::field::{ScalarField, VectorField};
use innervar::{Matrix, Vector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn vec(xs: &[f64]) -> Vector {
    Vector::from_vec(xs.to_vec())
}

/// Five-point derivative of `g` at 0.
pub fn d5(g: impl Fn(f64) -> f64, h: f64) -> f64 {
    (-g(2.0 * h) + 8.0 * g(h) - 8.0 * g(-h) + g(-2.0 * h)) / (12.0 * h)
}

/// Five-point second derivative of `g` at 0.
pub fn dd5(g: impl Fn(f64) -> f64, h: f64) -> f64 {
    (-g(2.0 * h) + 16.0 * g(h) - 30.0 * g(0.0) + 16.0 * g(-h) - g(-2.0 * h)) / (12.0 * h * h)
}

fn shifted(x: &Vector, j: usize, s: f64) -> Vector {
    let mut y = x.clone();
    y[j] += s;
    y
}

/// Five-point finite-difference jacobian of a vector field.
pub fn fd_jacobian(f: &dyn VectorField, x: &Vector, h: f64) -> Matrix {
    let n = x.len();
    let mut m = Matrix::zeros(n, n);
    for j in 0..n {
        for i in 0..n {
            m[(i, j)] = d5(|s| f.eval(&shifted(x, j, s))[i], h);
        }
    }
    m
}

/// Five-point finite-difference gradient of a scalar field.
pub fn fd_gradient(f: &dyn ScalarField, x: &Vector, h: f64) -> Vector {
    Vector::from_fn(x.len(), |j, _| d5(|s| f.eval(&shifted(x, j, s)), h))
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}
