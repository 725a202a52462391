//! Topological 2-automata: building blocks, incoming boundary designations
//! and arrows between boundary circles.
//!
//! Boundary circles are named by index. For blocks given as a
//! triangulation the index is the canonical one from
//! [`crate::surface::ValidatedSurface::boundary_components`]. Arrows carry
//! no gluing map: the homeomorphism type of the generated surface does not
//! depend on it.

mod develop;
mod format;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::surface::{
    signature, validate_triangulation, SurfaceError, SurfaceSignature, Triangulation,
};

pub use develop::{develop, Development, DevelopError, DEFAULT_STAGE_CAP};
pub use format::{parse, serialize, ParseError};

/// How a building block is specified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockSpec {
    Signature(SurfaceSignature),
    Triangulation(Triangulation),
}

/// A building block together with its classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    spec: BlockSpec,
    signature: SurfaceSignature,
}

impl Block {
    pub fn from_signature(sig: SurfaceSignature) -> Self {
        Self {
            spec: BlockSpec::Signature(sig),
            signature: sig,
        }
    }

    pub fn from_triangulation(tri: Triangulation) -> Result<Self, SurfaceError> {
        let surf = validate_triangulation(&tri)?;
        Ok(Self {
            signature: signature(&surf),
            spec: BlockSpec::Triangulation(tri),
        })
    }

    pub fn spec(&self) -> &BlockSpec {
        &self.spec
    }

    pub fn signature(&self) -> &SurfaceSignature {
        &self.signature
    }

    pub fn boundary_count(&self) -> u32 {
        self.signature.boundary_count()
    }
}

/// An arrow from boundary `source_boundary` of block `source_block` onto
/// the incoming boundary of block `target_block`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub source_block: usize,
    pub source_boundary: u32,
    pub target_block: usize,
}

impl Arrow {
    pub fn new(source_block: usize, source_boundary: u32, target_block: usize) -> Self {
        Self {
            source_block,
            source_boundary,
            target_block,
        }
    }

    /// Source and target lie in the same block.
    pub fn is_loop(&self) -> bool {
        self.source_block == self.target_block
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TopologicalAutomaton {
    /// `X_0 .. X_p`.
    pub blocks: Vec<Block>,
    /// Incoming boundary index of each block `k >= 1`.
    pub incoming: BTreeMap<usize, u32>,
    /// Arrows in declaration order.
    pub arrows: Vec<Arrow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("automaton has no blocks")]
    NoBlocks,
    #[error("block {0} has no incoming boundary")]
    MissingIncoming(usize),
    #[error("block 0 is the seed and cannot have an incoming boundary")]
    SeedHasIncoming,
    #[error("incoming boundary declared for unknown block {0}")]
    IncomingForUnknownBlock(usize),
    #[error("boundary {boundary} is out of range for block {block}")]
    BoundaryOutOfRange { block: usize, boundary: u32 },
    #[error("arrow {arrow} refers to unknown block {block}")]
    UnknownBlock { arrow: usize, block: usize },
    #[error("arrow {arrow} targets block 0, which has no incoming boundary")]
    TargetsSeed { arrow: usize },
    #[error("arrow from block {0} goes back to block {1}")]
    BackwardArrow(usize, usize),
    #[error("arrow {arrow} starts at the incoming boundary {boundary} of block {block}")]
    ArrowFromIncoming {
        arrow: usize,
        block: usize,
        boundary: u32,
    },
    #[error("boundary {boundary} of block {block} is the source of several arrows")]
    DuplicateArrow { block: usize, boundary: u32 },
    #[error("outgoing boundary {boundary} of block {block} has no arrow")]
    MissingArrow { block: usize, boundary: u32 },
}

/// Every invariant violation found, in a stable order.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid automaton:")?;
        for v in &self.violations {
            write!(f, "\n  - {v}")?;
        }
        Ok(())
    }
}

impl TopologicalAutomaton {
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Outgoing boundaries of block `k`: all of them for the seed, all but
    /// the incoming one otherwise.
    pub fn outgoing_boundaries(&self, k: usize) -> impl Iterator<Item = u32> + '_ {
        let incoming = self.incoming.get(&k).copied();
        (0..self.blocks[k].boundary_count()).filter(move |&b| Some(b) != incoming)
    }

    /// Number of loops around block `k`.
    pub fn loop_count(&self, k: usize) -> usize {
        self.arrows
            .iter()
            .filter(|a| a.is_loop() && a.source_block == k)
            .count()
    }

    /// Checks every structural invariant and reports all violations.
    pub fn validate(&self) -> Result<(), ValidationReport> {
        let mut out = Vec::new();
        let n = self.blocks.len();
        if n == 0 {
            out.push(Violation::NoBlocks);
        }
        for (&k, &c) in &self.incoming {
            if k == 0 {
                out.push(Violation::SeedHasIncoming);
            } else if k >= n {
                out.push(Violation::IncomingForUnknownBlock(k));
            } else if c >= self.blocks[k].boundary_count() {
                out.push(Violation::BoundaryOutOfRange {
                    block: k,
                    boundary: c,
                });
            }
        }
        for k in 1..n {
            if !self.incoming.contains_key(&k) {
                out.push(Violation::MissingIncoming(k));
            }
        }

        let mut sources: BTreeSet<(usize, u32)> = BTreeSet::new();
        let mut reported_dupes: BTreeSet<(usize, u32)> = BTreeSet::new();
        for (i, a) in self.arrows.iter().enumerate() {
            let mut structural_ok = true;
            for block in [a.source_block, a.target_block] {
                if block >= n {
                    out.push(Violation::UnknownBlock { arrow: i, block });
                    structural_ok = false;
                }
            }
            if a.target_block == 0 {
                out.push(Violation::TargetsSeed { arrow: i });
            }
            if a.source_block > a.target_block {
                out.push(Violation::BackwardArrow(a.source_block, a.target_block));
            }
            if !structural_ok {
                continue;
            }
            if a.source_boundary >= self.blocks[a.source_block].boundary_count() {
                out.push(Violation::BoundaryOutOfRange {
                    block: a.source_block,
                    boundary: a.source_boundary,
                });
                continue;
            }
            if self.incoming.get(&a.source_block) == Some(&a.source_boundary) {
                out.push(Violation::ArrowFromIncoming {
                    arrow: i,
                    block: a.source_block,
                    boundary: a.source_boundary,
                });
                continue;
            }
            let key = (a.source_block, a.source_boundary);
            if !sources.insert(key) && reported_dupes.insert(key) {
                out.push(Violation::DuplicateArrow {
                    block: key.0,
                    boundary: key.1,
                });
            }
        }
        for k in 0..n {
            for b in self.outgoing_boundaries(k) {
                if !sources.contains(&(k, b)) {
                    out.push(Violation::MissingArrow {
                        block: k,
                        boundary: b,
                    });
                }
            }
        }

        if out.is_empty() {
            Ok(())
        } else {
            Err(ValidationReport { violations: out })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disk() -> Block {
        Block::from_signature(SurfaceSignature::orientable(0, 1))
    }

    fn planar(b: u32) -> Block {
        Block::from_signature(SurfaceSignature::orientable(0, b))
    }

    fn cantor_tree() -> TopologicalAutomaton {
        TopologicalAutomaton {
            blocks: vec![disk(), planar(3)],
            incoming: [(1, 0)].into(),
            arrows: vec![Arrow::new(0, 0, 1), Arrow::new(1, 1, 1), Arrow::new(1, 2, 1)],
        }
    }

    #[test]
    fn valid_cantor_tree() {
        assert_eq!(cantor_tree().validate(), Ok(()));
        assert_eq!(cantor_tree().loop_count(1), 2);
    }

    #[test]
    fn missing_arrow() {
        let mut aut = cantor_tree();
        aut.arrows.pop();
        assert_eq!(
            aut.validate().unwrap_err().violations,
            vec![Violation::MissingArrow {
                block: 1,
                boundary: 2
            }]
        );
    }

    #[test]
    fn closed_seed_is_valid() {
        let aut = TopologicalAutomaton {
            blocks: vec![Block::from_signature(SurfaceSignature::orientable(2, 0))],
            ..Default::default()
        };
        assert_eq!(aut.validate(), Ok(()));
    }

    #[test]
    fn reports_every_violation() {
        let aut = TopologicalAutomaton {
            blocks: vec![disk(), planar(3), planar(2)],
            incoming: [(0, 0), (1, 0)].into(),
            arrows: vec![
                Arrow::new(0, 0, 0),
                Arrow::new(2, 1, 1),
                Arrow::new(1, 1, 2),
                Arrow::new(1, 1, 2),
                Arrow::new(1, 0, 1),
                Arrow::new(1, 7, 1),
                Arrow::new(1, 2, 9),
            ],
        };
        let v = aut.validate().unwrap_err().violations;
        assert!(v.contains(&Violation::SeedHasIncoming));
        assert!(v.contains(&Violation::MissingIncoming(2)));
        assert!(v.contains(&Violation::TargetsSeed { arrow: 0 }));
        assert!(v.contains(&Violation::BackwardArrow(2, 1)));
        assert!(v.contains(&Violation::DuplicateArrow {
            block: 1,
            boundary: 1
        }));
        assert!(v.contains(&Violation::ArrowFromIncoming {
            arrow: 4,
            block: 1,
            boundary: 0
        }));
        assert!(v.contains(&Violation::BoundaryOutOfRange {
            block: 1,
            boundary: 7
        }));
        assert!(v.contains(&Violation::UnknownBlock { arrow: 6, block: 9 }));
        assert!(v.len() >= 8);
    }
}
