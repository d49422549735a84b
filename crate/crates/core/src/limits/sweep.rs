use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::numerics::line_fit;
use crate::{Error, Result};

/// Number of trailing schedule points used by fits.
pub const FIT_POINTS: usize = 4;

/// Model `value(ε) ≈ a + b·x(ε)`, extrapolated to `x = 0`.
pub trait Extrapolation: Send + Sync {
    fn name(&self) -> &'static str;
    fn abscissa(&self, eps: f64) -> f64;
}

/// `x = ε`.
pub struct LinearEps;

impl Extrapolation for LinearEps {
    fn name(&self) -> &'static str {
        "linear-eps"
    }
    fn abscissa(&self, eps: f64) -> f64 {
        eps
    }
}

/// `x = 1/|log ε|`.
pub struct InverseLog;

impl Extrapolation for InverseLog {
    fn name(&self) -> &'static str {
        "inverse-log"
    }
    fn abscissa(&self, eps: f64) -> f64 {
        1.0 / eps.ln().abs()
    }
}

/// Extrapolation models by name.
pub struct ExtrapolationRegistry {
    models: BTreeMap<&'static str, Arc<dyn Extrapolation>>,
}

impl Default for ExtrapolationRegistry {
    fn default() -> Self {
        let mut models: BTreeMap<&'static str, Arc<dyn Extrapolation>> = BTreeMap::new();
        for m in [Arc::new(LinearEps) as Arc<dyn Extrapolation>, Arc::new(InverseLog)] {
            models.insert(m.name(), m);
        }
        Self { models }
    }
}

impl ExtrapolationRegistry {
    pub fn names(&self) -> Vec<&'static str> {
        self.models.keys().copied().collect()
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn Extrapolation>> {
        self.models
            .get(name)
            .cloned()
            .ok_or_else(|| Error::InvalidArgument(format!("unknown extrapolation model `{name}`")))
    }
}

/// Decreasing list of ε values plus the extrapolation model for the sweep.
#[derive(Clone)]
pub struct EpsilonSchedule {
    epsilons: Vec<f64>,
    model: Arc<dyn Extrapolation>,
}

impl std::fmt::Debug for EpsilonSchedule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("EpsilonSchedule")
            .field("epsilons", &self.epsilons)
            .field("model", &self.model.name())
            .finish()
    }
}

impl EpsilonSchedule {
    pub fn new(epsilons: Vec<f64>, model: Arc<dyn Extrapolation>) -> Result<Self> {
        if epsilons.is_empty() {
            return Err(Error::InvalidArgument("empty ε schedule".into()));
        }
        if epsilons.iter().any(|e| !(*e > 0.0 && e.is_finite())) {
            return Err(Error::InvalidArgument("ε values must be positive and finite".into()));
        }
        if epsilons.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::InvalidArgument("ε schedule must be strictly decreasing".into()));
        }
        Ok(Self { epsilons, model })
    }

    /// `ε_k = ε₀·2^{−k}`, `k = 0..count`.
    pub fn geometric(eps0: f64, count: usize, model: Arc<dyn Extrapolation>) -> Result<Self> {
        Self::new((0..count).map(|k| eps0 * 0.5f64.powi(k as i32)).collect(), model)
    }

    /// `ε_k = ε₀·10^{−k/per_decade}`.
    pub fn decades(eps0: f64, count: usize, per_decade: usize, model: Arc<dyn Extrapolation>) -> Result<Self> {
        Self::new(
            (0..count)
                .map(|k| eps0 * 10f64.powf(-(k as f64) / per_decade as f64))
                .collect(),
            model,
        )
    }

    pub fn epsilons(&self) -> &[f64] {
        &self.epsilons
    }

    pub fn model(&self) -> &Arc<dyn Extrapolation> {
        &self.model
    }

    pub fn largest(&self) -> f64 {
        self.epsilons[0]
    }

    /// Evaluate every point concurrently; results come back in schedule order.
    pub fn sweep<T: Send>(&self, f: impl Fn(f64) -> Result<T> + Sync) -> Result<Vec<T>> {
        self.epsilons.par_iter().map(|&e| f(e)).collect()
    }
}

/// Least-squares intercept of `a + b·x` over the last [`FIT_POINTS`] points.
pub fn extrapolate(model: &dyn Extrapolation, eps: &[f64], values: &[f64]) -> f64 {
    let k = eps.len().min(FIT_POINTS);
    let start = eps.len() - k;
    if k == 1 {
        return values[start];
    }
    let xs: Vec<f64> = eps[start..].iter().map(|e| model.abscissa(*e)).collect();
    match line_fit(&xs, &values[start..]) {
        Some(f) => f.intercept,
        None => values[eps.len() - 1],
    }
}

/// Observed order `r` in `value ≈ L + C ε^r`: slope of `log|v_k − v_{k+1}|`
/// against `log ε_k` over the last [`FIT_POINTS`] differences.
///
/// `None` when fewer than two differences exist or a difference is zero.
pub fn observed_rate(eps: &[f64], values: &[f64]) -> Option<f64> {
    if eps.len() < 3 {
        return None;
    }
    let diffs: Vec<(f64, f64)> = (0..eps.len() - 1)
        .map(|k| (eps[k].ln(), (values[k] - values[k + 1]).abs()))
        .collect();
    let tail = &diffs[diffs.len().saturating_sub(FIT_POINTS)..];
    if tail.iter().any(|(_, d)| *d == 0.0 || !d.is_finite()) {
        return None;
    }
    let xs: Vec<f64> = tail.iter().map(|(x, _)| *x).collect();
    let ys: Vec<f64> = tail.iter().map(|(_, d)| d.ln()).collect();
    line_fit(&xs, &ys).map(|f| f.slope)
}

/// Slope of `log|v|` against `log ε` over the last [`FIT_POINTS`] points, for
/// quantities whose limit is 0.
pub fn power_rate(eps: &[f64], values: &[f64]) -> Option<f64> {
    let k = eps.len().min(FIT_POINTS);
    if k < 2 {
        return None;
    }
    let start = eps.len() - k;
    if values[start..].iter().any(|v| *v == 0.0 || !v.is_finite()) {
        return None;
    }
    let xs: Vec<f64> = eps[start..].iter().map(|e| e.ln()).collect();
    let ys: Vec<f64> = values[start..].iter().map(|v| v.abs().ln()).collect();
    line_fit(&xs, &ys).map(|f| f.slope)
}

/// `|a − b|/(1 + |b|)`.
pub fn record_gap(value: f64, target: f64) -> f64 {
    (value - target).abs() / (1.0 + target.abs())
}

/// `|a − b|/max(1, |b|)`.
pub fn relative_gap(value: f64, target: f64) -> f64 {
    (value - target).abs() / target.abs().max(1.0)
}

/// Result of one ε-sweep against a closed-form target.
#[derive(Clone, Debug, serde::Serialize)]
pub struct ConvergenceRecord {
    pub label: String,
    pub model: String,
    pub epsilons: Vec<f64>,
    pub values: Vec<f64>,
    /// Two experiment-specific residuals per ε.
    pub residuals: Vec<[f64; 2]>,
    pub extrapolated: f64,
    pub rate: Option<f64>,
    pub target: f64,
    pub gap: f64,
}

impl ConvergenceRecord {
    pub fn new(
        label: impl Into<String>,
        model: &dyn Extrapolation,
        epsilons: Vec<f64>,
        values: Vec<f64>,
        residuals: Vec<[f64; 2]>,
        target: f64,
    ) -> Self {
        assert_eq!(epsilons.len(), values.len());
        assert_eq!(epsilons.len(), residuals.len());
        let extrapolated = extrapolate(model, &epsilons, &values);
        let rate = observed_rate(&epsilons, &values);
        Self {
            label: label.into(),
            model: model.name().to_string(),
            epsilons,
            values,
            residuals,
            extrapolated,
            rate,
            target,
            gap: record_gap(extrapolated, target),
        }
    }

    /// Gap recomputed from the stored fields.
    pub fn recomputed_gap(&self) -> f64 {
        record_gap(self.extrapolated, self.target)
    }

    /// `|extrapolated − target|/max(1, |target|)`.
    pub fn relative_gap(&self) -> f64 {
        relative_gap(self.extrapolated, self.target)
    }

    /// Per-point gap of the raw value.
    pub fn point_gap(&self, k: usize) -> f64 {
        record_gap(self.values[k], self.target)
    }
}
