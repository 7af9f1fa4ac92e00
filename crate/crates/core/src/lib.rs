//! Pure-exploration multi-armed bandits: allocation and recommendation
//! strategies, simple-regret simulation, an exact enumeration oracle,
//! closed-form regret bounds and a continuum-armed explorer.

// `!(x > 0.0)` style checks deliberately reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod arm;
pub mod bounds;
pub mod continuous;
pub mod error;
pub mod experiment;
pub mod history;
pub mod instance;
pub mod oracle;
pub mod rng;
pub mod simulator;
pub mod strategy;

pub use arm::ArmDistribution;
pub use error::{Error, Result};
pub use history::{History, Tally};
pub use instance::{ArmId, BanditInstance, Recommendation};
pub use rng::RngStream;
pub use strategy::{AllocationStrategy, EbaRoundPolicy, RecommendationStrategy};
