use std::f64::consts::PI;

/// A 1D quadrature rule: nodes and weights.
#[derive(Clone, Debug, Default)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        let terms: Vec<f64> = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(*x))
            .collect();
        super::pairwise_sum(&terms)
    }

    fn append_mapped(&mut self, base: &Rule, a: f64, b: f64) {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        for (x, w) in base.nodes.iter().zip(&base.weights) {
            self.nodes.push(mid + half * x);
            self.weights.push(half * w);
        }
    }
}

/// Gauss-Legendre rule with `n` points on `[a, b]`.
///
/// Nodes by Newton iteration on the three-term recurrence; accurate to a few
/// ulps for the orders used here (n ≤ 200).
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> Rule {
    assert!(n > 0, "Gauss-Legendre rule needs at least one node");
    let mut base = Rule {
        nodes: vec![0.0; n],
        weights: vec![0.0; n],
    };
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        base.nodes[i] = -x;
        base.weights[i] = w;
        base.nodes[n - 1 - i] = x;
        base.weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        base.nodes[n / 2] = 0.0;
    }
    let mut out = Rule::default();
    out.append_mapped(&base, a, b);
    out
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let (p, pm1) = if n == 0 { (1.0, 0.0) } else { (p1, p0) };
    let d = n as f64 * (x * p - pm1) / (x * x - 1.0);
    (p, d)
}

/// Composite Gauss-Legendre rule over the panels given by `breaks`.
pub fn composite_gauss(breaks: &[f64], order: usize) -> Rule {
    let base = gauss_legendre(order, -1.0, 1.0);
    let mut out = Rule::default();
    for pair in breaks.windows(2) {
        if pair[1] > pair[0] {
            out.append_mapped(&base, pair[0], pair[1]);
        }
    }
    out
}

/// Composite Gauss rule on `[a, b]` graded geometrically around `center`.
///
/// Panel edges sit at `center ± scale·{½, 1, 2, 4, …}`, so the rule resolves a
/// layer of width `scale` and stays cheap far away from it. Panels wider than
/// `max_panel` are split.
pub fn graded_rule(a: f64, b: f64, center: f64, scale: f64, order: usize, max_panel: f64) -> Rule {
    assert!(b > a && scale > 0.0);
    let mut breaks = vec![a, b];
    if center > a && center < b {
        breaks.push(center);
    }
    let mut step = 0.5 * scale;
    while step < (b - a) {
        for x in [center - step, center + step] {
            if x > a && x < b {
                breaks.push(x);
            }
        }
        step *= 2.0;
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup_by(|x, y| (*x - *y).abs() <= 1e-15 * (1.0 + y.abs()));
    let mut refined = vec![breaks[0]];
    for pair in breaks.windows(2) {
        let pieces = ((pair[1] - pair[0]) / max_panel).ceil().max(1.0) as usize;
        for k in 1..=pieces {
            refined.push(pair[0] + (pair[1] - pair[0]) * k as f64 / pieces as f64);
        }
    }
    composite_gauss(&refined, order)
}

/// Trapezoid rule for a periodic integrand on `[a, a + period)` with `n` nodes.
pub fn trapezoid_periodic(n: usize, a: f64, period: f64) -> Rule {
    let h = period / n as f64;
    Rule {
        nodes: (0..n).map(|k| a + h * k as f64).collect(),
        weights: vec![h; n],
    }
}

/// Tanh-sinh rule on `[-1, 1]` for integrands with endpoint singularities.
///
/// `f(x, c)` receives the node `x` together with `c = 1 - x²` computed without
/// cancellation, so algebraic endpoint factors can be evaluated accurately.
/// The step is halved until two successive levels agree to `rel_tol`.
pub fn tanh_sinh_unit(f: impl Fn(f64, f64) -> f64, rel_tol: f64) -> f64 {
    let half_pi = 0.5 * PI;
    let t_max = 4.5;
    let eval = |t: f64| -> f64 {
        let v = half_pi * t.sinh();
        let ch = v.cosh();
        let x = v.tanh();
        let c = 1.0 / (ch * ch);
        let w = half_pi * t.cosh() * c;
        if w == 0.0 {
            0.0
        } else {
            w * f(x, c)
        }
    };
    let mut h = 0.5;
    let mut terms = vec![eval(0.0)];
    let mut k = 1;
    while k as f64 * h <= t_max {
        let t = k as f64 * h;
        terms.push(eval(t));
        terms.push(eval(-t));
        k += 1;
    }
    let mut estimate = h * super::pairwise_sum(&terms);
    for _ in 0..12 {
        h *= 0.5;
        let mut k = 1;
        while k as f64 * h <= t_max {
            let t = k as f64 * h;
            terms.push(eval(t));
            terms.push(eval(-t));
            k += 2;
        }
        let next = h * super::pairwise_sum(&terms);
        let done = (next - estimate).abs() <= rel_tol * next.abs();
        estimate = next;
        if done {
            break;
        }
    }
    estimate
}
