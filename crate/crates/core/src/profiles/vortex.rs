use crate::{Error, Result};

/// Start of the series region for the shooting integration.
const R0: f64 = 1e-4;
const STEP: f64 = 1e-3;
const R_END: f64 = 30.0;
/// Below this radius the small-`r` series is used for `f` and its quotients.
const R_SERIES: f64 = 0.03;

/// Which radial profile a vortex ansatz uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RadialShape {
    /// Degree-one GL vortex profile from shooting.
    Shooting,
    /// Closed form `r/√(r² + 2)`, same asymptotics at 0 and ∞ up to constants.
    Surrogate,
}

/// Radial profile `f` of the degree-one vortex:
/// `f'' + f'/r − f/r² + f(1 − f²) = 0`, `f(0) = 0`, `f(∞) = 1`.
#[derive(Clone, Debug)]
pub struct GlRadialProfile {
    shape: RadialShape,
    slope0: f64,
    r: Vec<f64>,
    f: Vec<f64>,
    df: Vec<f64>,
    /// Past this radius the asymptotic tail is used.
    r_star: f64,
    /// Coefficient of `r^{-6}` chosen so the tail matches the table at `r_star`.
    tail_c: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Outcome {
    Overshoot,
    Undershoot,
    Undecided,
}

fn rhs(r: f64, f: f64, g: f64) -> [f64; 2] {
    [g, -g / r + f / (r * r) - f * (1.0 - f * f)]
}

fn shoot(a: f64, keep: bool) -> (Outcome, Vec<[f64; 3]>) {
    let mut r = R0;
    let mut f = a * R0 - a * R0.powi(3) / 8.0;
    let mut g = a - 3.0 * a * R0 * R0 / 8.0;
    let mut path = Vec::new();
    if keep {
        path.push([r, f, g]);
    }
    let n = ((R_END - R0) / STEP).ceil() as usize;
    for _ in 0..n {
        let h = STEP;
        let k1 = rhs(r, f, g);
        let k2 = rhs(r + h / 2.0, f + h / 2.0 * k1[0], g + h / 2.0 * k1[1]);
        let k3 = rhs(r + h / 2.0, f + h / 2.0 * k2[0], g + h / 2.0 * k2[1]);
        let k4 = rhs(r + h, f + h * k3[0], g + h * k3[1]);
        f += h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
        g += h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
        r += h;
        if keep {
            path.push([r, f, g]);
        }
        if f > 1.0 {
            return (Outcome::Overshoot, path);
        }
        if g < 0.0 {
            return (Outcome::Undershoot, path);
        }
    }
    (Outcome::Undecided, path)
}

fn tail(r: f64, c: f64) -> (f64, f64) {
    let r2 = 1.0 / (r * r);
    let f = 1.0 - 0.5 * r2 - 9.0 / 8.0 * r2 * r2 - c * r2 * r2 * r2;
    let df = (r2 + 4.5 * r2 * r2 + 6.0 * c * r2 * r2 * r2) / r;
    (f, df)
}

impl GlRadialProfile {
    /// Shooting on `f'(0)` with bisection, then table plus asymptotic tail.
    pub fn solve() -> Result<Self> {
        let (mut lo, mut hi) = (0.3, 1.0);
        if shoot(lo, false).0 != Outcome::Undershoot || shoot(hi, false).0 != Outcome::Overshoot {
            return Err(Error::Numerical("GL shooting bracket is not valid".into()));
        }
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            match shoot(mid, false).0 {
                Outcome::Overshoot => hi = mid,
                Outcome::Undershoot => lo = mid,
                Outcome::Undecided => {
                    lo = mid;
                    hi = mid;
                    break;
                }
            }
        }
        let (_, p_lo) = shoot(lo, true);
        let (_, p_hi) = shoot(hi, true);
        let n = p_lo.len().min(p_hi.len());
        // Keep the part where both bracketing trajectories still agree.
        let mut cut = n;
        for k in 0..n {
            if (p_lo[k][1] - p_hi[k][1]).abs() > 1e-10 || p_lo[k][2] < 0.0 || p_hi[k][1] > 1.0 {
                cut = k;
                break;
            }
        }
        // Back off from the departure point, where the error has already grown.
        let cut = (cut as f64 * 0.8) as usize;
        if cut < 2 || p_lo[cut][0] < 5.0 {
            return Err(Error::Numerical(format!(
                "GL shooting trajectories separate too early (r = {})",
                p_lo[cut.max(1)][0]
            )));
        }
        let mut r = Vec::with_capacity(cut + 1);
        let mut f = Vec::with_capacity(cut + 1);
        let mut df = Vec::with_capacity(cut + 1);
        let slope0 = 0.5 * (lo + hi);
        r.push(0.0);
        f.push(0.0);
        df.push(slope0);
        for k in 0..=cut {
            r.push(p_lo[k][0]);
            f.push(0.5 * (p_lo[k][1] + p_hi[k][1]));
            df.push(0.5 * (p_lo[k][2] + p_hi[k][2]));
        }
        let r_star = *r.last().unwrap();
        let f_star = *f.last().unwrap();
        let (f0, _) = tail(r_star, 0.0);
        let tail_c = (f0 - f_star) * r_star.powi(6);
        Ok(Self {
            shape: RadialShape::Shooting,
            slope0,
            r,
            f,
            df,
            r_star,
            tail_c,
        })
    }

    pub fn surrogate() -> Self {
        Self {
            shape: RadialShape::Surrogate,
            slope0: 1.0 / 2f64.sqrt(),
            r: Vec::new(),
            f: Vec::new(),
            df: Vec::new(),
            r_star: 0.0,
            tail_c: 0.0,
        }
    }

    pub fn build(shape: RadialShape) -> Result<Self> {
        match shape {
            RadialShape::Shooting => Self::solve(),
            RadialShape::Surrogate => Ok(Self::surrogate()),
        }
    }

    pub fn shape(&self) -> RadialShape {
        self.shape
    }

    /// `f'(0)`.
    pub fn slope_at_origin(&self) -> f64 {
        self.slope0
    }

    /// Radius past which the asymptotic expansion replaces the table.
    pub fn tail_start(&self) -> f64 {
        self.r_star
    }

    /// `(f(r), f'(r))`.
    pub fn eval(&self, r: f64) -> (f64, f64) {
        let r = r.abs();
        match self.shape {
            RadialShape::Surrogate => {
                let s = r * r + 2.0;
                (r / s.sqrt(), 2.0 / s.powf(1.5))
            }
            RadialShape::Shooting => {
                if r >= self.r_star {
                    return tail(r, self.tail_c);
                }
                let k = match self.r.binary_search_by(|v| v.total_cmp(&r)) {
                    Ok(k) => return (self.f[k], self.df[k]),
                    Err(k) => k - 1,
                };
                let (r0, r1) = (self.r[k], self.r[k + 1]);
                let h = r1 - r0;
                let t = (r - r0) / h;
                let (f0, f1, m0, m1) = (self.f[k], self.f[k + 1], self.df[k], self.df[k + 1]);
                let t2 = t * t;
                let t3 = t2 * t;
                let f = (2.0 * t3 - 3.0 * t2 + 1.0) * f0
                    + (t3 - 2.0 * t2 + t) * h * m0
                    + (-2.0 * t3 + 3.0 * t2) * f1
                    + (t3 - t2) * h * m1;
                let df = ((6.0 * t2 - 6.0 * t) * f0
                    + (3.0 * t2 - 4.0 * t + 1.0) * h * m0
                    + (-6.0 * t2 + 6.0 * t) * f1
                    + (3.0 * t2 - 2.0 * t) * h * m1)
                    / h;
                (f, df)
            }
        }
    }

    /// Odd series `f = a r + c₃ r³ + c₅ r⁵` near the origin.
    fn series(&self) -> (f64, f64) {
        let a = self.slope0;
        (-a / 8.0, (a * a * a + a / 8.0) / 24.0)
    }

    /// `f(r)/r`, finite at 0.
    pub fn f_over_r(&self, r: f64) -> f64 {
        let r = r.abs();
        match self.shape {
            RadialShape::Surrogate => 1.0 / (r * r + 2.0).sqrt(),
            RadialShape::Shooting if r < R_SERIES => {
                let (c3, c5) = self.series();
                let r2 = r * r;
                self.slope0 + c3 * r2 + c5 * r2 * r2
            }
            RadialShape::Shooting => self.eval(r).0 / r,
        }
    }

    /// `(f'(r) r − f(r))/r³`, finite at 0.
    pub fn quotient(&self, r: f64) -> f64 {
        let r = r.abs();
        match self.shape {
            RadialShape::Surrogate => -1.0 / (r * r + 2.0).powf(1.5),
            RadialShape::Shooting if r < R_SERIES => {
                let (c3, c5) = self.series();
                2.0 * c3 + 4.0 * c5 * r * r
            }
            RadialShape::Shooting => {
                let (f, df) = self.eval(r);
                (df * r - f) / (r * r * r)
            }
        }
    }

    /// `∫₀^R (f'² + f²/r² + (1 − f²)²/2) r dr`, the planar vortex energy
    /// density integrated over a disk of radius `R`, divided by `2π`.
    pub fn disk_energy(&self, radius: f64) -> f64 {
        let mut breaks = vec![0.0];
        let mut b = 0.5;
        while b < radius {
            breaks.push(b);
            b *= 2.0;
        }
        breaks.push(radius);
        let rule = crate::numerics::composite_gauss(&breaks, 16);
        rule.integrate(|r| {
            let (f, df) = self.eval(r);
            let fr = self.f_over_r(r);
            (df * df + fr * fr + 0.5 * (1.0 - f * f).powi(2)) * r
        })
    }
}
