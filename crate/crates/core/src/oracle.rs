//! Independent checks on the reduction.
//!
//! * [`cb_invariant`]: Cantor–Bendixson rank and degree of the end space of
//!   a tree whose ordinary vertices are all plain `O`. Such end spaces are
//!   countable compact, hence classified by `(rank, multiplicity)`.
//! * [`gen_appendix`]: a family of planar automata indexed by bit vectors,
//!   pairwise non-homeomorphic by construction.
//! * [`confluence_check`]: random maximal move sequences against [`reduce`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::automaton::{Arrow, Block, TopologicalAutomaton};
use crate::canonical::{canonical_code, CanonicalCode};
use crate::reduce::{reduce, reduce_by};
use crate::surface::SurfaceSignature;
use crate::symbol::TypeSymbol;
use crate::tree::{AdmissibleTree, NodeId, Tree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CBInvariant {
    pub rank: usize,
    pub multiplicity: usize,
}

impl fmt::Display for CBInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(rank {}, multiplicity {})", self.rank, self.multiplicity)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CbError {
    #[error("vertex {vertex} has type {ty}; only plain O vertices are supported")]
    NotLoopOnly { vertex: NodeId, ty: TypeSymbol },
    #[error("the tree has no ordinary vertex, so no ends")]
    Empty,
}

/// End space of a loop-only tree is `ω^rank · multiplicity + 1`.
///
/// An end that eventually loops at `v` forever has rank
/// `pointrank(v)` = 0 at leaves, else 1 + the largest child pointrank.
/// The top rank is reached only at the root's children, once each.
pub fn cb_invariant(t: &AdmissibleTree) -> Result<CBInvariant, CbError> {
    let tree = t.tree();
    let root = tree.root();
    for v in tree.preorder().into_iter().skip(1) {
        if tree.ty(v) != TypeSymbol::O {
            return Err(CbError::NotLoopOnly {
                vertex: v,
                ty: tree.ty(v),
            });
        }
    }
    if tree.children(root).is_empty() {
        return Err(CbError::Empty);
    }
    let mut rank = vec![0usize; tree.id_bound()];
    for v in tree.postorder() {
        rank[v.0] = tree
            .children(v)
            .iter()
            .map(|c| rank[c.0] + 1)
            .max()
            .unwrap_or(0);
    }
    let top = tree.children(root).iter().map(|c| rank[c.0]).max().expect("nonempty");
    let multiplicity = tree
        .children(root)
        .iter()
        .filter(|c| rank[c.0] == top)
        .count();
    Ok(CBInvariant {
        rank: top,
        multiplicity,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitVector(Vec<bool>);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BitVectorError {
    #[error("bit vector is empty")]
    Empty,
    #[error("`{0}` is not a bit")]
    NotABit(char),
}

impl BitVector {
    pub fn new(bits: Vec<bool>) -> Result<Self, BitVectorError> {
        if bits.is_empty() {
            return Err(BitVectorError::Empty);
        }
        Ok(Self(bits))
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    /// All vectors of length `n`, in lexicographic order.
    pub fn all(n: usize) -> Vec<BitVector> {
        (0..1u64 << n)
            .map(|m| BitVector((0..n).map(|i| m >> (n - 1 - i) & 1 == 1).collect()))
            .collect()
    }
}

impl FromStr for BitVector {
    type Err = BitVectorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(BitVectorError::NotABit(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(bits)
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Planar automaton for `a_1..a_n`: a disk seed feeding a hub with two
/// loops (a Cantor set of ends), and for every `a_k = 1` a branch off the
/// hub made of a two-loop head followed by a chain of `k` one-loop blocks.
///
/// The head keeps branches apart: bare chains of different lengths would be
/// absorbed into one another by the reduction.
pub fn gen_appendix(bits: &BitVector) -> TopologicalAutomaton {
    let planar = |b: u32| Block::from_signature(SurfaceSignature::orientable(0, b));
    let set: Vec<usize> = bits
        .bits()
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| i + 1)
        .collect();

    let mut blocks = vec![planar(1), planar(3 + set.len() as u32)];
    let mut incoming = BTreeMap::from([(1, 0)]);
    let mut arrows = vec![Arrow::new(0, 0, 1), Arrow::new(1, 1, 1), Arrow::new(1, 2, 1)];
    for (j, &k) in set.iter().enumerate() {
        let head = blocks.len();
        blocks.push(planar(4));
        incoming.insert(head, 0);
        arrows.push(Arrow::new(1, 3 + j as u32, head));
        arrows.push(Arrow::new(head, 1, head));
        arrows.push(Arrow::new(head, 2, head));
        let mut prev = (head, 3);
        for i in 0..k {
            let b = blocks.len();
            let last = i + 1 == k;
            blocks.push(planar(if last { 2 } else { 3 }));
            incoming.insert(b, 0);
            arrows.push(Arrow::new(prev.0, prev.1, b));
            arrows.push(Arrow::new(b, 1, b));
            prev = (b, 2);
        }
    }
    TopologicalAutomaton {
        blocks,
        incoming,
        arrows,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfluenceReport {
    pub seed: u64,
    pub trials: usize,
    /// Code produced by the deterministic reduction.
    pub expected: CanonicalCode,
    /// Terminal codes of the random sequences that differ from `expected`.
    pub divergent: BTreeSet<CanonicalCode>,
}

impl ConfluenceReport {
    pub fn confluent(&self) -> bool {
        self.divergent.is_empty()
    }
}

/// Runs `trials` uniformly random maximal move sequences, seeded by `seed`.
pub fn confluence_check(t: &AdmissibleTree, trials: usize, seed: u64) -> ConfluenceReport {
    let expected = reduce(t.clone()).code();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut divergent = BTreeSet::new();
    for _ in 0..trials {
        let (out, _) = reduce_by(t.clone(), |ms| rng.gen_range(0..ms.len()));
        let code = canonical_code(out.tree());
        if code != expected {
            divergent.insert(code);
        }
    }
    ConfluenceReport {
        seed,
        trials,
        expected,
        divergent,
    }
}

/// Every non-root type symbol.
pub const LOOP_SYMBOLS: [TypeSymbol; 6] = [
    TypeSymbol::O,
    TypeSymbol::Oh,
    TypeSymbol::Oc,
    TypeSymbol::Theta,
    TypeSymbol::ThetaH,
    TypeSymbol::ThetaC,
];

/// Random recursive tree with `n` vertices: a random starred root, every
/// later vertex hung under a uniformly chosen earlier one, ordinary types
/// drawn from `palette`.
pub fn random_admissible_tree<R: Rng>(rng: &mut R, n: usize, palette: &[TypeSymbol]) -> AdmissibleTree {
    let roots = [
        TypeSymbol::StarOrient(0),
        TypeSymbol::StarOrient(1),
        TypeSymbol::StarInf,
        TypeSymbol::StarCross(1),
        TypeSymbol::StarInfCross,
    ];
    let mut tree = Tree::new(*roots.choose(rng).expect("nonempty"));
    for i in 1..n.max(1) {
        let parent = NodeId(rng.gen_range(0..i));
        tree.add_child(parent, *palette.choose(rng).expect("nonempty palette"));
    }
    AdmissibleTree::new(tree).expect("only the root is starred")
}

/// All rooted trees with `2..=max` vertices, root `root_ty`, every other
/// vertex `ty`; one representative per isomorphism class.
pub fn enumerate_trees(max: usize, root_ty: TypeSymbol, ty: TypeSymbol) -> Vec<AdmissibleTree> {
    let mut layer: BTreeMap<CanonicalCode, Tree> = BTreeMap::new();
    let single = Tree::new(root_ty);
    layer.insert(canonical_code(&single), single);
    let mut out = Vec::new();
    for _ in 2..=max {
        let mut next = BTreeMap::new();
        for t in layer.values() {
            for v in t.preorder() {
                let mut grown = t.clone();
                grown.add_child(v, ty);
                next.entry(canonical_code(&grown)).or_insert(grown);
            }
        }
        out.extend(next.values().cloned());
        layer = next;
    }
    out.into_iter()
        .map(|t| AdmissibleTree::new(t).expect("only the root is starred"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::parse_code;

    fn adm(code: &str) -> AdmissibleTree {
        AdmissibleTree::new(parse_code(code).unwrap()).unwrap()
    }

    fn cb(code: &str) -> CBInvariant {
        cb_invariant(&adm(code)).unwrap()
    }

    #[test]
    fn cb_examples() {
        assert_eq!(cb("s0(o())"), CBInvariant { rank: 0, multiplicity: 1 });
        assert_eq!(cb("s0(o(o()))"), CBInvariant { rank: 1, multiplicity: 1 });
        assert_eq!(cb("s0(o()o())"), CBInvariant { rank: 0, multiplicity: 2 });
        assert_eq!(cb("s0(o(o()o()))"), cb("s0(o(o()))"));
        assert_eq!(cb("s0(o(o(o()))o())"), CBInvariant { rank: 2, multiplicity: 1 });
    }

    #[test]
    fn cb_rejects_other_types() {
        assert_eq!(cb_invariant(&adm("s0()")), Err(CbError::Empty));
        assert_eq!(
            cb_invariant(&adm("s0(o(t()))")),
            Err(CbError::NotLoopOnly {
                vertex: NodeId(2),
                ty: TypeSymbol::Theta
            })
        );
        assert!(cb_invariant(&adm("s0(oh())")).is_err());
    }

    #[test]
    fn rooted_tree_counts() {
        // 1, 2, 4, 9, 20, 48 rooted trees on 2..=7 vertices.
        let all = enumerate_trees(7, TypeSymbol::StarOrient(0), TypeSymbol::O);
        assert_eq!(all.len(), 1 + 2 + 4 + 9 + 20 + 48);
    }

    #[test]
    fn bit_vectors() {
        let b: BitVector = "0101".parse().unwrap();
        assert_eq!(b.to_string(), "0101");
        assert_eq!("".parse::<BitVector>(), Err(BitVectorError::Empty));
        assert_eq!("012".parse::<BitVector>(), Err(BitVectorError::NotABit('2')));
        let all = BitVector::all(3);
        assert_eq!(all.len(), 8);
        assert_eq!(all[1].to_string(), "001");
    }

    #[test]
    fn appendix_automata_validate() {
        for bits in BitVector::all(4) {
            gen_appendix(&bits).validate().unwrap();
        }
    }

    #[test]
    fn confluence_on_three_theta_sons() {
        let t = adm("s0(t()t()t())");
        let report = confluence_check(&t, 50, 7);
        assert!(report.confluent());
        assert_eq!(report.expected.as_str(), "s0(t())");
    }

    #[test]
    fn confluence_on_reduced_tree() {
        let report = confluence_check(&adm("s0(o()o(o()))"), 10, 1);
        assert!(report.confluent());
    }
}
