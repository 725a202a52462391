//! Inputs shared by the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tap_core::oracle::{random_admissible_tree, LOOP_SYMBOLS};
use tap_core::{gen_appendix, AdmissibleTree, BitVector, TopologicalAutomaton};

/// Deterministic random tree with `n` ordinary vertices over all loop symbols.
pub fn tree(n: usize, seed: u64) -> AdmissibleTree {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_admissible_tree(&mut rng, n, &LOOP_SYMBOLS)
}

/// Appendix automaton with every one of the first `n` bits set.
pub fn full_appendix(n: usize) -> TopologicalAutomaton {
    let bits: BitVector = "1".repeat(n).parse().expect("nonempty bit string");
    gen_appendix(&bits)
}
