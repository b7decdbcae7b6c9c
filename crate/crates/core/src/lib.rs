//! Planning with plan disruption: ground STRIPS tasks, a PDDL front end,
//! the lazy and eager disruption compilations, and an optimal planner.

pub mod compile;
pub mod corpus;
pub mod cost;
pub mod disruption;
pub mod search;
pub mod error;
pub mod pddl;
pub mod strips;

pub use cost::Cost;
pub use strips::{ActionId, FluentId, FluentSet, GroundAction, Plan, State, Task, Validation};
