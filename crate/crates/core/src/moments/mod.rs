//! Empirical moment sums over character families, smoothing kernels, the
//! quadratic character-sum verifier, prime-cancellation checks, and log-log
//! exponent fits against the theoretical envelopes.

mod fit;
mod fixed_mod;
mod kernel;
mod parallel;
mod quadratic;
mod report;
mod verify;

pub use fit::{fit_exponent, FitAxis, FitResult};
pub use fixed_mod::{fixed_mod_envelope, moment_fixed_mod, moment_fixed_mod_many, CharacterSet};
pub use kernel::SmoothingKernel;
pub use parallel::run_chunked;
pub use quadratic::{
    moment_quadratic, moment_quadratic_many, moment_quadratic_with_exponent, quadratic_envelope,
    quadratic_envelope_exponent,
};
pub use report::{MomentFamily, MomentReport};
pub use verify::{
    verify_lemma_prsum, verify_prime_cancellation, CancellationRecord, CancellationVariant,
    PrSumRecord,
};
