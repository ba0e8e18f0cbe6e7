//! Exact equilibrium analysis for games with type ambiguity.
//!
//! Players know only their own type and hold no prior over the types of
//! others. Types rank their actions with the maximin rule (`MIN`) or its
//! lexicographic refinement (`LEX`, worst case first, best case second).
//! Everything is computed in exact rational arithmetic.

pub mod best_response;
pub mod catalog;
pub mod cli;
pub mod coordination;
pub mod equilibrium;
pub mod model;
pub mod preferences;
pub mod rational;
pub mod ratlp;
pub mod trade;

pub use model::{Act, GameWithAmbiguity, MixedAction, PureProfile, StrategyProfile, TypeAmbiguityGame};
pub use rational::{q, Rational};

/// Version string embedded in reports.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
