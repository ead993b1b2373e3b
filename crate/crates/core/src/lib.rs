//! Set-level combinatorics of Joyal's category Θ_n.
//!
//! Objects and morphisms of Θ_n live in [`theta`]; finite strict
//! n-categories in [`strict`]; presheaves of sets on Θ_n, nerves and the
//! explicit groupoid-completion presheaf in [`theta_set`]. The remaining
//! modules check Segal conditions, compute univalent completions at the level
//! of connected components, and handle flagged categories and Cech nerves.

pub mod completion;
pub mod error;
pub mod flags;
pub mod segal;
pub mod strict;
pub mod theta;
pub mod theta_set;
pub mod suite;
mod util;

pub use error::{Error, Result};
