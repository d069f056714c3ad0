//! Exact counting series and the block functional equations.

mod bundle;
mod coeff;
mod power_series;
mod shadow_poly;
mod solver;

pub use bundle::{block_type_series, solve_system, IntSeries, SeriesBundle};
pub use coeff::Coeff;
pub use power_series::PowerSeries;
pub use shadow_poly::{shadow_sum, ShadowPolynomial};
pub use solver::{solve_scaled, RawSolution};

#[cfg(test)]
pub(crate) use bundle::is_zero_series;
