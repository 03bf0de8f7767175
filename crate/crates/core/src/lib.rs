//! Relations, connectivity, atoms and point-symmetry, with executable checks
//! for lower bounds on iterated image growth in point-symmetric relations.

pub mod connectivity;
pub mod error;
pub mod group;
pub mod io;
pub mod limits;
pub mod relation;
pub mod set;
pub mod symmetry;
pub mod verifier;

pub use connectivity::{AtomReport, ConnectivityReport, Fragment};
pub use error::{Error, Result};
pub use group::{cayley_graph, make_group, zero_sum, FiniteGroup, GeneratorSet, ZeroSumWitness};
pub use limits::Limits;
pub use relation::{compose, Relation};
pub use set::VertexSet;
pub use symmetry::VertexBijection;
pub use verifier::{CheckResult, GrowthProfile};
