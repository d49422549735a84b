//! Finite-difference stencils shared by the derivative fallbacks and oracles.

/// Central-difference step `ε_mach^{1/3}·max(1, |x|)`.
pub fn central_step(scale: f64) -> f64 {
    f64::EPSILON.cbrt() * scale.abs().max(1.0)
}

/// Central first difference of `g` at `t`.
pub fn fd_first(g: impl Fn(f64) -> f64, t: f64, h: f64) -> f64 {
    (g(t + h) - g(t - h)) / (2.0 * h)
}

/// Central second difference of `g` at `t`.
pub fn fd_second(g: impl Fn(f64) -> f64, t: f64, h: f64) -> f64 {
    (g(t + h) - 2.0 * g(t) + g(t - h)) / (h * h)
}

/// Five-point first derivative at 0 from samples at (-2h, -h, h, 2h).
pub fn five_point_first(m2: f64, m1: f64, p1: f64, p2: f64, h: f64) -> f64 {
    (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * h)
}

/// Five-point second derivative at 0 from samples at (-2h, -h, 0, h, 2h).
pub fn five_point_second(m2: f64, m1: f64, z: f64, p1: f64, p2: f64, h: f64) -> f64 {
    (-p2 + 16.0 * p1 - 30.0 * z + 16.0 * m1 - m2) / (12.0 * h * h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stencils_are_exact_on_quartics() {
        let g = |t: f64| 1.0 + 2.0 * t - 3.0 * t * t + 0.5 * t.powi(3) + t.powi(4);
        let h = 0.1;
        let s = [g(-2.0 * h), g(-h), g(0.0), g(h), g(2.0 * h)];
        assert!((five_point_first(s[0], s[1], s[3], s[4], h) - 2.0).abs() < 1e-12);
        assert!((five_point_second(s[0], s[1], s[2], s[3], s[4], h) + 6.0).abs() < 1e-10);
    }
}
