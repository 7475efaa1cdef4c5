//! Exponent sets (`H`-sets) of the three power families and the
//! dispatcher that computes them for a graph.

mod dispatch;
mod report;
mod sets;

pub use dispatch::{blocks, hset, hset_with_cap, strip_pendant_trees};
pub use report::{HSetReport, Method};
pub use sets::{Discrete, HSet, Membership, Mode, PowerSet};
