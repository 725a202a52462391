//! Automaton in, reduced tree and classification out.

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::automaton::{TopologicalAutomaton, ValidationReport};
use crate::canonical::CanonicalCode;
use crate::decoration::{build_decorated_graph, propagate, DecoratedGraph};
use crate::reduce::{reduce_logged, Reduction};
use crate::symbol::TypeSymbol;
use crate::tree::{AdmissibleTree, DecoratedTree};
use crate::treeify::{admissibilize, unfold, TreeifyError, DEFAULT_MAX_UNFOLD};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    /// Largest unfolded tree the pipeline will build.
    pub max_unfold: u64,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            max_unfold: DEFAULT_MAX_UNFOLD,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PipelineError {
    #[error(transparent)]
    Invalid(#[from] ValidationReport),
    #[error(transparent)]
    Treeify(#[from] TreeifyError),
}

/// Every intermediate artifact, for inspection and DOT export.
#[derive(Clone, Debug)]
pub struct Stages {
    pub graph: DecoratedGraph,
    pub propagated: DecoratedGraph,
    pub unfolded: DecoratedTree,
    pub admissible: AdmissibleTree,
    pub reduction: Reduction,
}

pub fn run_pipeline(aut: &TopologicalAutomaton, config: &Config) -> Result<Stages, PipelineError> {
    aut.validate()?;
    let graph = build_decorated_graph(aut);
    let propagated = propagate(&graph);
    let unfolded = unfold(&propagated, config.max_unfold)?;
    let admissible = admissibilize(unfolded.clone())?;
    let reduction = reduce_logged(admissible.clone());
    Ok(Stages {
        graph,
        propagated,
        unfolded,
        admissible,
        reduction,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientability {
    Orientable,
    Nonorientable,
}

/// Genus of an orientable surface or crosscap count of a nonorientable one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Genus {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Genus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Genus::Finite(g) => write!(f, "{g}"),
            Genus::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for Genus {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Genus::Finite(g) => s.serialize_u64(*g),
            Genus::Infinite => s.serialize_str("infinite"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Invariants {
    pub orientability: Orientability,
    pub genus_or_crosscaps: Genus,
    pub reduced_code: CanonicalCode,
    pub planar: bool,
    /// No ends at all: the surface is closed.
    pub compact: bool,
}

impl Invariants {
    pub fn from_reduced(t: &AdmissibleTree) -> Self {
        let (orientability, genus_or_crosscaps) = match t.root_label() {
            TypeSymbol::StarOrient(g) => (Orientability::Orientable, Genus::Finite(g)),
            TypeSymbol::StarInf => (Orientability::Orientable, Genus::Infinite),
            TypeSymbol::StarCross(c) => (Orientability::Nonorientable, Genus::Finite(c)),
            TypeSymbol::StarInfCross => (Orientability::Nonorientable, Genus::Infinite),
            other => unreachable!("admissible root {other} is starred"),
        };
        let tree = t.tree();
        let plain = tree
            .preorder()
            .into_iter()
            .skip(1)
            .all(|v| tree.ty(v).variant() == Some(crate::symbol::Variant::Plain));
        Self {
            orientability,
            genus_or_crosscaps,
            reduced_code: crate::canonical::canonical_code(tree),
            planar: t.root_label() == TypeSymbol::StarOrient(0) && plain,
            compact: t.ordinary_count() == 0,
        }
    }
}

pub fn invariants_with(aut: &TopologicalAutomaton, config: &Config) -> Result<Invariants, PipelineError> {
    let stages = run_pipeline(aut, config)?;
    Ok(Invariants::from_reduced(stages.reduction.reduced.admissible()))
}

pub fn invariants(aut: &TopologicalAutomaton) -> Result<Invariants, PipelineError> {
    invariants_with(aut, &Config::default())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub homeomorphic: bool,
    pub left: Invariants,
    pub right: Invariants,
}

pub fn equivalent_with(
    a: &TopologicalAutomaton,
    b: &TopologicalAutomaton,
    config: &Config,
) -> Result<Verdict, PipelineError> {
    let left = invariants_with(a, config)?;
    let right = invariants_with(b, config)?;
    Ok(Verdict {
        homeomorphic: left.reduced_code == right.reduced_code,
        left,
        right,
    })
}

pub fn equivalent(a: &TopologicalAutomaton, b: &TopologicalAutomaton) -> Result<Verdict, PipelineError> {
    equivalent_with(a, b, &Config::default())
}
