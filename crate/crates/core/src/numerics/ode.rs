/// Adaptive Dormand-Prince 5(4) integrator for small autonomous-or-not systems.
#[derive(Clone, Debug)]
pub struct DormandPrince {
    pub rtol: f64,
    pub atol: f64,
    pub h_init: f64,
    /// Maximum step as a function of the current abscissa.
    pub h_max: fn(f64) -> f64,
    /// Steps below `h_min·max(1, |t|)` count as underflow.
    pub h_min: f64,
    pub max_steps: usize,
}

impl Default for DormandPrince {
    fn default() -> Self {
        Self {
            rtol: 1e-12,
            atol: 1e-14,
            h_init: 1e-3,
            h_max: |_| f64::INFINITY,
            h_min: 1e-14,
            max_steps: 2_000_000,
        }
    }
}

/// Accepted steps of an integration, plus how it ended.
#[derive(Clone, Debug)]
pub struct OdeSolution<const D: usize> {
    pub t: Vec<f64>,
    pub y: Vec<[f64; D]>,
    /// `true` if the stop predicate fired, `false` if the step size underflowed
    /// or the step budget ran out.
    pub stopped: bool,
}

const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

impl DormandPrince {
    /// Integrate `y' = f(t, y)` from `(t0, y0)` until `stop(t, y)` holds.
    ///
    /// `project` is applied to every accepted state (used to clamp iterates to
    /// the admissible range).
    pub fn integrate<const D: usize>(
        &self,
        f: impl Fn(f64, &[f64; D]) -> [f64; D],
        t0: f64,
        y0: [f64; D],
        stop: impl Fn(f64, &[f64; D]) -> bool,
        project: impl Fn(&mut [f64; D]),
    ) -> OdeSolution<D> {
        let mut sol = OdeSolution {
            t: vec![t0],
            y: vec![y0],
            stopped: false,
        };
        let mut t = t0;
        let mut y = y0;
        let mut h = self.h_init.min((self.h_max)(t));
        for _ in 0..self.max_steps {
            if stop(t, &y) {
                sol.stopped = true;
                return sol;
            }
            if h < self.h_min * t.abs().max(1.0) {
                return sol;
            }
            let mut k = [[0.0; D]; 7];
            k[0] = f(t, &y);
            for s in 1..7 {
                let mut ys = y;
                for (d, v) in ys.iter_mut().enumerate() {
                    for (j, kj) in k.iter().enumerate().take(s) {
                        *v += h * A[s][j] * kj[d];
                    }
                }
                k[s] = f(t + C[s] * h, &ys);
            }
            let mut y5 = y;
            let mut err = 0.0f64;
            for d in 0..D {
                let mut inc5 = 0.0;
                let mut inc4 = 0.0;
                for s in 0..7 {
                    inc5 += B5[s] * k[s][d];
                    inc4 += B4[s] * k[s][d];
                }
                y5[d] += h * inc5;
                let scale = self.atol + self.rtol * y[d].abs().max(y5[d].abs());
                err = err.max((h * (inc5 - inc4)).abs() / scale);
            }
            if err <= 1.0 {
                t += h;
                project(&mut y5);
                y = y5;
                sol.t.push(t);
                sol.y.push(y);
            }
            let factor = if err == 0.0 {
                5.0
            } else {
                (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
            };
            h = (h * factor).min((self.h_max)(t));
        }
        sol
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_exponential_growth() {
        let dp = DormandPrince::default();
        let sol = dp.integrate(|_, y: &[f64; 1]| [y[0]], 0.0, [1.0], |t, _| t >= 1.0, |_| {});
        assert!(sol.stopped);
        let (t, y) = (*sol.t.last().unwrap(), sol.y.last().unwrap()[0]);
        assert!((y - t.exp()).abs() < 1e-10 * t.exp());
    }
}
