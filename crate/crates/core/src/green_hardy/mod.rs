//! Green kernels of (-Δ)^α, the weights g_n(α) and Hardy-type weights.

mod admissibility;
mod green;
mod potential;
mod weights;

pub use admissibility::{bs_hs_bound, theorem2_check, theorem3_weight, AdmissibilityReport, Decision};
pub use green::{
    c_alpha, c_alpha_closed, green, green_entry, green_entry_complex, reflected_constant, uniform_bound_refined,
    uniform_bound_rough, GreenQuery,
};
pub use potential::{Decay, Potential, KPP_QUARTIC_COEFF};
pub use weights::{
    admissibility_threshold, d_alpha, g_n, g_n_upper_bound, gamma_square_ratio, i_n_closed, i_n_quadrature,
    odd_harmonic, power_weight_coupling,
};
