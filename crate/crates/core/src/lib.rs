//! Deciding whether two topological 2-automata generate homeomorphic open
//! surfaces.
//!
//! The pipeline: [`decoration`] turns an automaton into a decorated DAG,
//! [`treeify`] unfolds it into an admissible tree, [`reduce`] rewrites that
//! tree to its normal form and [`canonical`] compares normal forms.
//! [`pipeline`] strings the stages together.

pub mod automaton;
pub mod canonical;
pub mod decoration;
pub mod dot;
pub mod oracle;
pub mod pipeline;
pub mod reduce;
pub mod surface;
pub mod symbol;
pub mod tree;
pub mod treeify;

pub use automaton::{
    develop, parse, serialize, Arrow, Block, BlockSpec, Development, DevelopError, ParseError,
    TopologicalAutomaton, ValidationReport, Violation,
};
pub use canonical::{canonical_code, isomorphic, CanonicalCode};
pub use decoration::{build_decorated_graph, propagate, DecoratedGraph};
pub use oracle::{cb_invariant, confluence_check, gen_appendix, BitVector, CBInvariant};
pub use pipeline::{
    equivalent, invariants, run_pipeline, Config, Genus, Invariants, Orientability, PipelineError,
    Stages, Verdict,
};
pub use reduce::{apply_move, applicable_moves, is_reduced, reduce, Move, ReducedTree};
pub use surface::{SurfaceClass, SurfaceSignature, Triangulation};
pub use symbol::TypeSymbol;
pub use tree::{AdmissibleTree, DecoratedTree, NodeId, Tree};
pub use treeify::{admissibilize, merge_types, unfold, TreeifyError};
