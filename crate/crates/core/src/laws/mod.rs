//! Laws of the block spectrum: the longest block, the number of short
//! blocks and the type of a block.

mod longest;
mod pmf;
mod short;
mod types;

pub use longest::{
    g_squared_coeff, limit_partial_sums_scaled, longest_block_asymptotic_pmf, longest_block_cdf,
    longest_block_count_fast, longest_block_counts, longest_block_counts_by_truncation, longest_block_exact_dist,
    longest_block_exact_dist_by_truncation, longest_block_limit_law, longest_block_limit_pmf,
    longest_block_moments, structures_with_blocks_at_most, tail_probability, Moments, DEFAULT_EXACT_BOUND,
};
pub use pmf::{kolmogorov_distance, rational_to_decimal, total_variation_distance, ExactPmf, LimitPmf, Pmf};
pub use short::{short_block_counts, short_block_exact_dist, short_block_limit_law, NegBinomial, ShortBlockLimit};
pub use types::{
    block_type_exact_prob, block_type_limit_prob, longest_arc_bound, longest_arc_weight, KlConvention,
    TypeProbabilities,
};
