use crate::field::{DirectionalField, StateField, VectorField};
use crate::Result;

use super::engine::{OracleValues, SecondInnerTerms, VariationEngine};
use super::quadrature::QuadratureMode;

/// Every variation of one `(F, u, η, ζ)` case, with the bridge residuals.
#[derive(Clone, Debug, serde::Serialize)]
pub struct VariationReport {
    pub integrand: String,
    pub quadrature: QuadratureMode,
    pub nodes: usize,
    pub energy: f64,
    pub first_inner: f64,
    pub second_inner: f64,
    pub second_inner_terms: SecondInnerTerms,
    /// `dA(u, −∇u·η)`.
    pub first_variation: f64,
    /// `d²A(u, −∇u·η)`.
    pub second_variation: f64,
    /// `dA(u, X₀)`.
    pub first_variation_x0: f64,
    pub oracle: OracleValues,
    pub residuals: Residuals,
}

/// Differences between routes; each equals the stated expression exactly.
#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct Residuals {
    /// `first_inner − first_variation`.
    pub fv_relation: f64,
    /// `second_inner − second_variation − first_variation_x0`.
    pub sv_relation: f64,
    /// `first_inner − oracle.first`.
    pub oracle_first: f64,
    /// `second_inner − oracle.second`.
    pub oracle_second: f64,
}

impl VariationReport {
    pub fn compute(
        engine: &VariationEngine<'_>,
        u: &dyn StateField,
        eta: &dyn VectorField,
        zeta: &dyn VectorField,
    ) -> Result<Self> {
        let energy = engine.energy(u)?;
        let first_inner = engine.first_inner_variation(u, eta)?;
        let terms = engine.second_inner_terms(u, eta, zeta)?;
        let first_variation = engine.first_variation(u, &DirectionalField { u, eta })?;
        let sv = engine.sv_relation(u, eta, zeta)?;
        let oracle = engine.inner_variation_oracle(u, eta, zeta, None)?;
        let second_inner = terms.total();
        Ok(Self {
            integrand: engine.integrand.label(),
            quadrature: engine.quadrature.mode.clone(),
            nodes: engine.quadrature.len(),
            energy,
            first_inner,
            second_inner,
            second_inner_terms: terms,
            first_variation,
            second_variation: sv.second_variation,
            first_variation_x0: sv.first_variation_x0,
            oracle,
            residuals: Residuals {
                fv_relation: first_inner - first_variation,
                sv_relation: second_inner - sv.second_variation - sv.first_variation_x0,
                oracle_first: first_inner - oracle.first,
                oracle_second: second_inner - oracle.second,
            },
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
