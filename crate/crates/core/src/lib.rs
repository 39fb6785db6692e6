//! Solvers for the minimum 2-edge-connected (2-ECSS) and minimum
//! 2-vertex-connected (2-VCSS) spanning subgraph problems.
//!
//! The main entry point is [`solve`]: it computes an inclusion-wise minimal
//! 2-VCSS by greedy deletion and then runs a recursive local search over the
//! strong short segments of the running solution, exchanging one or two
//! non-solution edges for a larger set of solution edges whenever that keeps
//! the subgraph feasible. For 2-ECSS a clean-up pass drops redundant trivial
//! edges and a final swap pass removes closed short segments.
//!
//! Supporting modules provide an exact branch-and-bound oracle for small
//! instances ([`oracle::exact_min`]), verification of lower-bound certificates
//! for the cut LP dual ([`oracle::verify_dual`]), and deterministic instance
//! generators ([`instances`]).

pub mod error;
pub mod graph;
pub mod instances;
pub mod minimal;
pub mod oracle;
pub mod rng;
pub mod search;
pub mod segments;

pub use error::{Error, Result};
pub use graph::{
    blocks, find_bridges, find_cut_vertices, is_2ecss, is_2vcss, is_feasible,
    is_spanning_connected, Block, EdgeSet, Graph, Mode,
};
pub use minimal::{deletion_pass, minimal_2vcss, DeletionOrder};
pub use search::{solve, SolveConfig, SolveReport};
