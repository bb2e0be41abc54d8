//! Discrete moments of the Riemann zeta function over its nontrivial zeros.
//!
//! The crate is organised bottom-up:
//!
//! - [`zeta_eval`]: ζ(s), ζ′(s), ζ′/ζ(s), θ(t) and Z(t) in double precision,
//!   with an independent slow path in [`oracle`] for cross-validation.
//! - [`zeros`]: Gram points, sign-change scanning, refinement and a
//!   Turing-style completeness audit; persisted as a [`zeros::ZeroCache`].
//! - [`moments`]: empirical sums S(δ,T) = Σ ζ(ρ+δ)ζ(1−ρ+δ̄) over cached zeros,
//!   the derivative moment Σ|ζ′(ρ)|² and the α-parameterised moment.
//! - [`asymptotics`]: closed-form main terms, the regime classifier, the
//!   error envelope E(T) with its inequality audit, and the dominance region.
//! - [`io`]: sweeps, CSV/JSON rendering and the SVG ratio plot.
//! - [`cli`]: the `zeta-moments` command line, a thin layer over the above.

pub mod asymptotics;
pub mod cli;
pub mod error;
pub mod io;
pub mod moments;
pub mod oracle;
pub mod summation;
pub mod zeros;
pub mod zeta_eval;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Complex arguments and values are plain `Complex64`.
pub type ComplexValue = Complex64;
