//! Numerical L-function layer: zeta, twisted and symmetric-square values,
//! the explicit majorant prime sums, the g1/g2 envelope surrogates, and the
//! shifted-moment envelope products.

mod envelope;
mod gamma;
mod majorant;
mod prime_identities;
mod sym_square;
mod twisted;
mod zeta;

pub use envelope::{
    envelope_fixed_mod, envelope_quadratic, g1, g2, shift_weight_h, EnvelopeFactor, EnvelopeMode,
    EnvelopeValue, FactorKind, ShiftConfig,
};
pub use gamma::{gamma, ln_gamma};
pub use majorant::{lambda0, log_l_majorant, MajorantParts, MajorantVariant};
pub use prime_identities::{
    cos_weighted_prime_sum, cos_weighted_sym_prime_sum, sym_identity_gap, zeta_identity_gap,
};
pub use sym_square::{l_sym_square, SymSquareSeries};
pub use twisted::{completed_l, default_cutoff, l_series_smoothed, l_twisted, LValue};
pub use zeta::{zeta, zeta_with};
