use std::sync::Arc;

use rand::Rng;

use crate::field::random::{random_polynomial, random_vector_polynomial};
use crate::field::{Component, Cutoff, StateComponents, StateField, VectorField};
use crate::Result;

use super::{BulkQuadrature, Dirichlet, GinzburgLandau, Integrand, PAllenCahn, PolynomialTest};

/// Integrands cycled through by [`random_identity_case`].
pub const CASE_KINDS: [&str; 4] = ["polynomial-test", "allen-cahn", "ginzburg-landau", "dirichlet"];

/// One randomized `(F, u, η, ζ)` instance on the box `[−1, 1]^N`.
pub struct IdentityCase {
    pub label: String,
    pub integrand: Arc<dyn Integrand>,
    pub u: Arc<dyn StateField>,
    pub eta: Arc<dyn VectorField>,
    pub zeta: Arc<dyn VectorField>,
    pub quadrature: BulkQuadrature,
}

fn box_cutoff(dim: usize) -> Cutoff {
    Cutoff::Box {
        center: vec![0.0; dim],
        half_widths: vec![1.0; dim],
        power: 3,
    }
}

/// Polynomial `u`, and `η`, `ζ` polynomial times a cubic box bump, so every
/// integrand is a polynomial integrated exactly by the tensor Gauss grid
/// (`points_per_axis` should be at least 24).
pub fn random_identity_case<R: Rng>(rng: &mut R, index: usize, dim: usize, points_per_axis: usize) -> Result<IdentityCase> {
    let kind = CASE_KINDS[index % CASE_KINDS.len()];
    let (integrand, m): (Arc<dyn Integrand>, usize) = match kind {
        "polynomial-test" => (
            Arc::new(PolynomialTest {
                state_dim: 1,
                coefficients: [1.0, 0.5, 0.3, 0.2],
            }),
            1,
        ),
        "allen-cahn" => (Arc::new(PAllenCahn::new(0.5, 2.0)?), 1),
        "ginzburg-landau" => (Arc::new(GinzburgLandau::new(0.5)?), 2),
        _ => (Arc::new(Dirichlet { state_dim: 1 }), 1),
    };
    let components: Vec<Component> = (0..m)
        .map(|_| Arc::new(random_polynomial(rng, dim, 2, 0.6, None)) as Component)
        .collect();
    let u: Arc<dyn StateField> = Arc::new(StateComponents(components));
    let eta = Arc::new(random_vector_polynomial(rng, dim, 2, 0.4, Some(box_cutoff(dim))));
    let zeta = Arc::new(random_vector_polynomial(rng, dim, 2, 0.4, Some(box_cutoff(dim))));
    let order = 8;
    let panels = points_per_axis.div_ceil(order).max(1);
    let quadrature = BulkQuadrature::tensor_grid(&vec![-1.0; dim], &vec![1.0; dim], panels, order)?;
    Ok(IdentityCase {
        label: format!("{kind}#{index}"),
        integrand,
        u,
        eta,
        zeta,
        quadrature,
    })
}
