use std::io::Write;

use crate::numerics::{composite_gauss, tanh_sinh_unit, DormandPrince};
use crate::{Error, Result};

/// Target for `1 − |q|` at the truncation radius.
const TAIL_GAP: f64 = 1e-9;

/// The double well `W(u) = (1 − u²)²`.
#[derive(Clone, Copy, Debug, Default)]
pub struct DoubleWell;

impl DoubleWell {
    pub fn w(&self, u: f64) -> f64 {
        let a = 1.0 - u * u;
        a * a
    }

    pub fn dw(&self, u: f64) -> f64 {
        -4.0 * u * (1.0 - u * u)
    }

    pub fn ddw(&self, u: f64) -> f64 {
        12.0 * u * u - 4.0
    }

    /// `d/du Φ(u)` for `Φ(u) = ∫₀ᵘ W^{(p−1)/p}`.
    pub fn primitive_derivative(&self, u: f64, p: f64) -> f64 {
        self.w(u).powf((p - 1.0) / p)
    }
}

/// `c_p = ∫_{−1}^{1} W(s)^{(p−1)/p} ds = ∫ (1 − s²)^{2(p−1)/p} ds`.
///
/// Tanh-sinh quadrature: the integrand has an algebraic endpoint singularity
/// in its derivatives, which Gauss-Legendre converges to only slowly.
pub fn c_p(p: f64) -> f64 {
    assert!(p >= 1.0, "c_p needs p ≥ 1");
    let a = 2.0 * (p - 1.0) / p;
    if a == 0.0 {
        return 2.0;
    }
    tanh_sinh_unit(|_, c| c.powf(a), 1e-15)
}

/// Tabulated optimal profile `q' = W(q)^{1/p}`, `q(0) = 0`, extended oddly.
#[derive(Clone, Debug)]
pub struct ProfileTable {
    p: f64,
    /// Non-negative abscissae, increasing, starting at 0.
    s: Vec<f64>,
    q: Vec<f64>,
    s_max: f64,
    /// `q(s)` is read as `q_table(k·s)`; 1 for the optimal profile.
    stretch: f64,
    well: DoubleWell,
}

impl ProfileTable {
    pub fn p(&self) -> f64 {
        self.p
    }

    /// Truncation radius: `q = ±1` is used for `|s| ≥ S_max`.
    pub fn s_max(&self) -> f64 {
        self.s_max / self.stretch
    }

    pub fn stretch(&self) -> f64 {
        self.stretch
    }

    /// The profile `s ↦ q(k s)`, which solves the ODE only for `k = 1`. Used as
    /// a negative control (e.g. `tanh(2s)` at p = 2).
    pub fn stretched(&self, k: f64) -> ProfileTable {
        assert!(k > 0.0, "stretch must be positive");
        ProfileTable {
            stretch: self.stretch * k,
            ..self.clone()
        }
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    fn slope_at(&self, q: f64) -> f64 {
        self.well.w(q).powf(1.0 / self.p)
    }

    fn q_half(&self, s: f64) -> f64 {
        if s >= self.s_max {
            return 1.0;
        }
        let k = match self.s.binary_search_by(|v| v.total_cmp(&s)) {
            Ok(k) => return self.q[k],
            Err(k) => k - 1,
        };
        let (s0, s1) = (self.s[k], self.s[k + 1]);
        let (q0, q1) = (self.q[k], self.q[k + 1]);
        let (m0, m1) = (self.slope_at(q0), self.slope_at(q1));
        let h = s1 - s0;
        let t = (s - s0) / h;
        let t2 = t * t;
        let t3 = t2 * t;
        let v = (2.0 * t3 - 3.0 * t2 + 1.0) * q0
            + (t3 - 2.0 * t2 + t) * h * m0
            + (-2.0 * t3 + 3.0 * t2) * q1
            + (t3 - t2) * h * m1;
        v.clamp(q0, q1)
    }

    /// `q(s)` by cubic Hermite interpolation with the ODE slopes.
    pub fn q(&self, s: f64) -> f64 {
        let s = s * self.stretch;
        if s < 0.0 {
            -self.q_half(-s)
        } else {
            self.q_half(s)
        }
    }

    /// `q'(s) = W(q(s))^{1/p}` inside the layer, 0 beyond `S_max`.
    pub fn dq(&self, s: f64) -> f64 {
        if s.abs() >= self.s_max() {
            0.0
        } else {
            self.stretch * self.slope_at(self.q(s))
        }
    }

    /// `q''(s) = −(4q/p)(1 − q²)^{4/p − 1}` inside the layer, 0 beyond.
    pub fn ddq(&self, s: f64) -> f64 {
        if s.abs() >= self.s_max() {
            return 0.0;
        }
        let q = self.q(s);
        let a = (1.0 - q * q).max(0.0);
        -4.0 * self.stretch * self.stretch * q / self.p * a.powf(4.0 / self.p - 1.0)
    }

    /// Nodes of the table (including the odd reflection) as `(s, q, q')`.
    pub fn rows(&self) -> Vec<(f64, f64, f64)> {
        let mut out = Vec::with_capacity(2 * self.s.len());
        let k = self.stretch;
        for i in (1..self.s.len()).rev() {
            let q = -self.q[i];
            out.push((-self.s[i] / k, q, k * self.slope_at(q)));
        }
        for i in 0..self.s.len() {
            out.push((self.s[i] / k, self.q[i], k * self.slope_at(self.q[i])));
        }
        out
    }

    /// `∫ |q'|^p/p + (p−1)W(q)/p ds` over the line, by Gauss panels that
    /// widen geometrically towards the truncation radius. Equals `c_p` for the
    /// unstretched optimal profile.
    pub fn line_energy(&self) -> f64 {
        let end = self.s_max();
        let mut breaks = vec![0.0];
        let mut b = 0.25;
        while b < end {
            breaks.push(b);
            b *= 1.5;
        }
        breaks.push(end);
        let p = self.p;
        2.0 * composite_gauss(&breaks, 12).integrate(|s| {
            self.dq(s).powf(p) / p + (p - 1.0) * self.well.w(self.q(s)) / p
        })
    }

    /// CSV with columns `s,q,dq`.
    pub fn write_csv(&self, mut out: impl Write) -> std::io::Result<()> {
        writeln!(out, "s,q,dq")?;
        for (s, q, d) in self.rows() {
            writeln!(out, "{s:.17e},{q:.17e},{d:.17e}")?;
        }
        Ok(())
    }
}

/// Solve `q' = (1 − q²)^{2/p}`, `q(0) = 0`, by adaptive RK until
/// `q ≥ 1 − 1e−9`.
///
/// On step-size underflow the truncated table is returned inside
/// [`Error::StiffTail`].
pub fn optimal_profile(p: f64) -> Result<ProfileTable> {
    if !(p > 1.0) {
        return Err(Error::InvalidArgument(format!("optimal profile needs p > 1, got {p}")));
    }
    let expo = 2.0 / p;
    let dp = DormandPrince {
        h_init: 1e-3,
        h_max: |s| 0.01 * s.max(1.0),
        ..DormandPrince::default()
    };
    let sol = dp.integrate(
        |_, y: &[f64; 1]| [(1.0 - y[0] * y[0]).max(0.0).powf(expo)],
        0.0,
        [0.0],
        |_, y| y[0] >= 1.0 - TAIL_GAP,
        |y| y[0] = y[0].min(1.0),
    );
    let s: Vec<f64> = sol.t.clone();
    let q: Vec<f64> = sol.y.iter().map(|y| y[0]).collect();
    let s_max = *s.last().expect("integration stores the initial point");
    let table = ProfileTable {
        p,
        s,
        q,
        s_max,
        stretch: 1.0,
        well: DoubleWell,
    };
    if !sol.stopped {
        let gap = 1.0 - table.q.last().copied().unwrap_or(0.0);
        return Err(Error::StiffTail {
            s_max,
            gap,
            table: Box::new(table),
        });
    }
    Ok(table)
}
