//! Finite stages `M_s` of the surface generated by an automaton.
//!
//! Only the aggregate bookkeeping is tracked: how many copies of each block
//! have been attached and how many boundary circles are still open. Which
//! copy sits where does not matter for any invariant computed here.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use super::TopologicalAutomaton;

/// Largest stage `develop` accepts unless told otherwise.
pub const DEFAULT_STAGE_CAP: u64 = 10_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DevelopError {
    #[error("stage {stage} exceeds the cap of {cap}")]
    StageCapExceeded { stage: u64, cap: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Development {
    pub stage: u64,
    /// Attached copies of each block `k >= 1` with at least one copy.
    pub copy_counts: BTreeMap<usize, BigUint>,
    pub euler_characteristic: BigInt,
    pub boundary_count: BigUint,
    pub orientable: bool,
    /// Genus when orientable, number of crosscaps otherwise.
    pub genus_or_crosscaps: BigUint,
}

/// Stage `s` of `aut`. The automaton must be valid.
pub fn develop(aut: &TopologicalAutomaton, s: u64, cap: u64) -> Result<Development, DevelopError> {
    if s > cap {
        return Err(DevelopError::StageCapExceeded { stage: s, cap });
    }
    let n = aut.block_count();
    // `fresh[k]`: copies of block k attached at the latest stage.
    let mut fresh = vec![BigUint::zero(); n];
    fresh[0] = BigUint::from(1u32);
    let mut total = fresh.clone();

    for _ in 0..s {
        let mut next = vec![BigUint::zero(); n];
        for a in &aut.arrows {
            if !fresh[a.source_block].is_zero() {
                next[a.target_block] += &fresh[a.source_block];
            }
        }
        if next.iter().all(Zero::is_zero) {
            // Nothing left open; later stages are identical.
            break;
        }
        for (t, c) in total.iter_mut().zip(&next) {
            *t += c;
        }
        fresh = next;
    }

    let mut chi = BigInt::zero();
    let mut orientable = true;
    let mut copy_counts = BTreeMap::new();
    for (k, count) in total.iter().enumerate() {
        if count.is_zero() {
            continue;
        }
        let sig = aut.blocks[k].signature();
        chi += BigInt::from(sig.euler_characteristic()) * BigInt::from(count.clone());
        orientable &= sig.is_orientable();
        if k > 0 {
            copy_counts.insert(k, count.clone());
        }
    }

    let boundary_count: BigUint = fresh
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| c * BigUint::from(aut.outgoing_boundaries(k).count()))
        .sum();

    // chi = 2 - 2g - b  or  chi = 2 - c - b.
    let deficit = BigInt::from(2) - BigInt::from(boundary_count.clone()) - &chi;
    let deficit = deficit
        .to_biguint()
        .expect("a connected surface has nonnegative genus");
    let genus_or_crosscaps = if orientable { deficit / 2u32 } else { deficit };

    Ok(Development {
        stage: s,
        copy_counts,
        euler_characteristic: chi,
        boundary_count,
        orientable,
        genus_or_crosscaps,
    })
}

impl Development {
    /// Copies of block `k` as a machine integer, when it fits.
    pub fn copies_of(&self, k: usize) -> Option<u64> {
        self.copy_counts.get(&k).map_or(Some(0), ToPrimitive::to_u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{Arrow, Block};
    use crate::surface::SurfaceSignature;

    fn block(g: u64, b: u32) -> Block {
        Block::from_signature(SurfaceSignature::orientable(g, b))
    }

    fn plane() -> TopologicalAutomaton {
        TopologicalAutomaton {
            blocks: vec![block(0, 1), block(0, 2)],
            incoming: [(1, 0)].into(),
            arrows: vec![Arrow::new(0, 0, 1), Arrow::new(1, 1, 1)],
        }
    }

    fn cantor() -> TopologicalAutomaton {
        TopologicalAutomaton {
            blocks: vec![block(0, 1), block(0, 3)],
            incoming: [(1, 0)].into(),
            arrows: vec![Arrow::new(0, 0, 1), Arrow::new(1, 1, 1), Arrow::new(1, 2, 1)],
        }
    }

    #[test]
    fn plane_stages() {
        let d = develop(&plane(), 0, DEFAULT_STAGE_CAP).unwrap();
        assert_eq!(d.euler_characteristic, BigInt::from(1));
        assert_eq!(d.boundary_count, BigUint::from(1u32));
        assert!(d.copy_counts.is_empty());

        let d = develop(&plane(), 3, DEFAULT_STAGE_CAP).unwrap();
        assert_eq!(d.euler_characteristic, BigInt::from(1));
        assert_eq!(d.boundary_count, BigUint::from(1u32));
        assert_eq!(d.copies_of(1), Some(3));
        assert!(d.orientable);
        assert!(d.genus_or_crosscaps.is_zero());
    }

    #[test]
    fn cantor_stage_two() {
        let d = develop(&cantor(), 2, DEFAULT_STAGE_CAP).unwrap();
        assert_eq!(d.euler_characteristic, BigInt::from(-2));
        assert_eq!(d.boundary_count, BigUint::from(4u32));
        assert_eq!(d.copies_of(1), Some(3));
    }

    #[test]
    fn closed_seed_is_constant() {
        let aut = TopologicalAutomaton {
            blocks: vec![block(2, 0)],
            ..Default::default()
        };
        let d0 = develop(&aut, 0, 10).unwrap();
        let d9 = develop(&aut, 9, 10).unwrap();
        assert_eq!(d0.euler_characteristic, d9.euler_characteristic);
        assert_eq!(d9.genus_or_crosscaps, BigUint::from(2u32));
        assert!(d9.boundary_count.is_zero());
    }

    #[test]
    fn nonorientable_block_counts_crosscaps() {
        let mut aut = plane();
        aut.blocks[1] = Block::from_signature(SurfaceSignature::nonorientable(1, 2).unwrap());
        let d = develop(&aut, 4, 10).unwrap();
        assert!(!d.orientable);
        assert_eq!(d.genus_or_crosscaps, BigUint::from(4u32));
    }

    #[test]
    fn cap() {
        assert_eq!(
            develop(&plane(), 11, 10).unwrap_err(),
            DevelopError::StageCapExceeded { stage: 11, cap: 10 }
        );
    }
}
