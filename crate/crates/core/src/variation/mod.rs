//! Bulk functionals `A(u) = ∫ F(u, ∇u)`: integrands, quadratures, closed-form
//! (inner) variations and the finite-difference oracle.

mod cases;
mod engine;
mod integrand;
mod quadrature;
mod report;

pub use cases::{random_identity_case, IdentityCase, CASE_KINDS};
pub use engine::{OracleValues, SecondInnerTerms, SvRelation, VariationEngine};
pub use integrand::{
    integrand_ginzburg_landau, integrand_p_allen_cahn, Dirichlet, GinzburgLandau, Integrand, IntegrandParams,
    IntegrandRegistry, PAllenCahn, Partials, PolynomialTest, P_FLOOR, P_REGULARIZATION,
};
pub use quadrature::{BulkQuadrature, QuadratureMode};
pub use report::{Residuals, VariationReport};
