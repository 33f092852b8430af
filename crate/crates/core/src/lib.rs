//! Exact cone calculus for divisor classes on `M̄_g`, the moduli space of
//! stable curves of genus `g ≥ 3`.
//!
//! * [`divisor`]: classes `aλ − Σ b_i δ_i` and the named classes.
//! * [`cone`]: the Moriwaki cone, its dual curves and base-locus predictions.
//! * [`bigness`]: bigness certificates from an effective witness.
//! * [`petri`]: exact audit of the factorial inequalities behind the Petri witness.
//! * [`lcm`]: thresholds for `M̄_g(α)` and Zariski-decomposition obstructions.
//!
//! All arithmetic is exact ([`rat::Rat`]).

pub mod bigness;
pub mod cone;
pub mod divisor;
pub mod error;
pub mod lcm;
pub mod petri;
pub mod rat;

pub use error::{Error, Result};
pub use rat::Rat;
