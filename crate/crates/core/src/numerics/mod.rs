//! Small numerical building blocks: deterministic summation, quadrature
//! rules, an adaptive ODE stepper, finite differences and line fits.

mod fd;
mod fit;
mod ode;
mod quadrature;
mod sum;

pub use fd::{central_step, fd_first, fd_second, five_point_first, five_point_second};
pub use fit::{line_fit, LineFit};
pub use ode::{DormandPrince, OdeSolution};
pub use quadrature::{
    composite_gauss, gauss_legendre, graded_rule, tanh_sinh_unit, trapezoid_periodic, Rule,
};
pub use sum::{pairwise_sum, par_weighted_sum, par_weighted_sums};
