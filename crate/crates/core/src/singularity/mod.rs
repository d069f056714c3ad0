//! The algebraic equation satisfied by `G`, its dominant singularity and the
//! constants of the square-root expansion there.

mod bipoly;
mod real;
mod search;

pub use bipoly::{build_q, q_polynomial, BivariatePolynomial, Q_CHECK_ORDER};
pub use real::{bits_for_digits, Real};
pub use search::{
    block_coefficient_asymptotics, coefficient_asymptotics, find_dominant_singularity, singular_constants,
    singularity_data, SingularPoint, SingularityConfig, SingularityData, DEFAULT_DIGITS, DEFAULT_HINT_ORDER,
    DEFAULT_RATIO_TOLERANCE,
};

#[cfg(test)]
mod tests;
