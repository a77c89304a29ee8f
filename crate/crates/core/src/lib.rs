//! Boolean network analysis: dynamics, trap spaces, elimination and phenotype control.

pub mod control;
pub mod dynamics;
pub mod error;
pub mod expcheck;
pub mod expr;
pub mod graph;
pub mod limits;
pub mod network;
pub mod parser;
pub mod reduction;
pub mod simplify;
pub mod state;
pub mod table;
pub mod trapspaces;

pub use control::{
    apply_control, control_report, find_control_strategies, is_attractor_cs, is_mts_cs, is_vp_cs, ControlReport,
    Criterion, SearchOptions, Verdict, Witness,
};
pub use dynamics::{attractors, fixed_points, successors, Attractor, AttractorKind, TransitionSystem, UpdateMode};
pub use error::{BnError, ParseError, Result};
pub use expr::BoolExpr;
pub use graph::{interaction_graph, is_autoregulated, EdgeSign, SignedInteractionGraph};
pub use limits::Limits;
pub use network::BooleanNetwork;
pub use parser::{parse_network, parse_subspace, serialize_network};
pub use reduction::{
    eliminate, is_linear, is_mediator, representative, strictly_preserves_mts, EliminationWitness, MtsPreservation,
};
pub use state::{State, Subspace, Trit};
pub use table::TruthTable;
pub use trapspaces::{
    is_trap_space, minimal_trap_spaces, percolate, percolation_fixpoint, propagation_closure, trap_spaces,
    PercolationTrace,
};
