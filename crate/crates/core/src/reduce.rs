//! The three rewriting moves on admissible trees and their fixpoint.
//!
//! * `M1` — `son` is Θ-family and the only child of `father`, a non-root
//!   loop vertex of the same variant class: `father` is spliced out.
//! * `M2` — `v2` is a child of `v1`, `v3` lies at depth ≥ 2 below `v1`, and
//!   `T(v2) ≅ T(v3)`: `T(v2)` is removed.
//! * `M3` — `v2 ≠ v3` are isomorphic children of `v1`, and `v1` is not the
//!   root unless they are Θ-family: `T(v3)` is removed.
//!
//! [`reduce`] runs one bottom-up pass. When a vertex is reached its subtrees
//! are already reduced, so only moves rooted at it can fire; sorting its
//! children by decreasing size lets a single scan find every `M2` witness.
//! The system is confluent, so the result is the same as for any other
//! maximal sequence of moves.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::canonical::{canonical_code, CanonicalCode, ShapeId, ShapeInterner};
use crate::tree::{AdmissibleTree, NodeId, Tree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MoveKind {
    M1,
    M2,
    M3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    M1 { father: NodeId, son: NodeId },
    M2 { v1: NodeId, v2: NodeId, v3: NodeId },
    M3 { v1: NodeId, v2: NodeId, v3: NodeId },
}

impl Move {
    pub fn kind(&self) -> MoveKind {
        match self {
            Move::M1 { .. } => MoveKind::M1,
            Move::M2 { .. } => MoveKind::M2,
            Move::M3 { .. } => MoveKind::M3,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::M1 { father, son } => write!(f, "M1({father}, {son})"),
            Move::M2 { v1, v2, v3 } => write!(f, "M2({v1}, {v2}, {v3})"),
            Move::M3 { v1, v2, v3 } => write!(f, "M3({v1}, {v2}, {v3})"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReduceError {
    #[error("move {0} does not apply")]
    InapplicableMove(Move),
}

/// An admissible tree on which no move applies.
#[derive(Clone, Debug)]
pub struct ReducedTree(AdmissibleTree);

impl ReducedTree {
    pub fn tree(&self) -> &Tree {
        self.0.tree()
    }

    pub fn admissible(&self) -> &AdmissibleTree {
        &self.0
    }

    pub fn into_admissible(self) -> AdmissibleTree {
        self.0
    }

    pub fn code(&self) -> CanonicalCode {
        canonical_code(self.0.tree())
    }
}

/// Outcome of [`reduce_logged`]: the reduced tree (densely renumbered) and
/// the moves applied, with vertex ids of the input tree.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub reduced: ReducedTree,
    pub moves: Vec<Move>,
}

fn m1_fires(t: &Tree, father: NodeId, son: NodeId) -> bool {
    father != t.root()
        && t.children(father) == [son]
        && t.ty(son).is_theta()
        && t.ty(father).variant() == t.ty(son).variant()
}

/// Every applicable move. Quadratic; meant for small trees and checking.
pub fn applicable_moves(t: &AdmissibleTree) -> Vec<Move> {
    let tree = t.tree();
    let root = tree.root();
    let mut interner = ShapeInterner::new();
    let shapes = interner.shapes_of(tree);
    let shape = |v: NodeId| shapes[v.0].expect("live");
    let mut out = Vec::new();
    for v1 in tree.preorder() {
        let kids = tree.children(v1);
        if let [son] = kids {
            if m1_fires(tree, v1, *son) {
                out.push(Move::M1 { father: v1, son: *son });
            }
        }
        let deep: Vec<NodeId> = kids
            .iter()
            .flat_map(|&c| tree.children(c).iter().flat_map(|&g| tree.preorder_from(g)))
            .collect();
        for &v2 in kids {
            for &v3 in &deep {
                if shape(v2) == shape(v3) {
                    out.push(Move::M2 { v1, v2, v3 });
                }
            }
            for &v3 in kids {
                if v3 != v2 && shape(v2) == shape(v3) && (v1 != root || tree.ty(v2).is_theta()) {
                    out.push(Move::M3 { v1, v2, v3 });
                }
            }
        }
    }
    out
}

pub fn is_applicable(t: &AdmissibleTree, m: &Move) -> bool {
    let tree = t.tree();
    let live = |v: &NodeId| tree.is_alive(*v);
    match *m {
        Move::M1 { father, son } => {
            live(&father) && live(&son) && tree.parent(son) == Some(father) && m1_fires(tree, father, son)
        }
        Move::M2 { v1, v2, v3 } | Move::M3 { v1, v2, v3 } => {
            if ![v1, v2, v3].iter().all(live) || tree.parent(v2) != Some(v1) || v2 == v3 {
                return false;
            }
            let placed = match m.kind() {
                MoveKind::M2 => {
                    tree.is_ancestor(v1, v3) && tree.depth(v3) >= tree.depth(v1) + 2
                }
                _ => {
                    tree.parent(v3) == Some(v1)
                        && (v1 != tree.root() || tree.ty(v2).is_theta())
                }
            };
            if !placed {
                return false;
            }
            let mut interner = ShapeInterner::new();
            let shapes = interner.shapes_of(tree);
            shapes[v2.0] == shapes[v3.0]
        }
    }
}

fn apply_unchecked(tree: &mut Tree, m: &Move) {
    match *m {
        Move::M1 { father, .. } => tree.splice_out(father),
        Move::M2 { v2, .. } => tree.remove_subtree(v2),
        Move::M3 { v3, .. } => tree.remove_subtree(v3),
    }
}

/// Applies `m` in place.
pub fn apply_move_in_place(t: &mut AdmissibleTree, m: &Move) -> Result<(), ReduceError> {
    if !is_applicable(t, m) {
        return Err(ReduceError::InapplicableMove(*m));
    }
    apply_unchecked(t.tree_mut(), m);
    Ok(())
}

pub fn apply_move(t: &AdmissibleTree, m: &Move) -> Result<AdmissibleTree, ReduceError> {
    let mut out = t.clone();
    apply_move_in_place(&mut out, m)?;
    Ok(out)
}

/// Applies a move chosen by `pick` (given the current applicable moves)
/// until none is left.
pub fn reduce_by(
    mut t: AdmissibleTree,
    mut pick: impl FnMut(&[Move]) -> usize,
) -> (AdmissibleTree, Vec<Move>) {
    let mut log = Vec::new();
    loop {
        let moves = applicable_moves(&t);
        if moves.is_empty() {
            return (t, log);
        }
        let m = moves[pick(&moves)];
        apply_unchecked(t.tree_mut(), &m);
        log.push(m);
    }
}

pub fn is_reduced(t: &AdmissibleTree) -> bool {
    applicable_moves(t).is_empty()
}

type Trace<'a> = &'a mut dyn FnMut(&Move, &Tree);

struct Reducer<'a> {
    tree: Tree,
    interner: ShapeInterner,
    shape: Vec<Option<ShapeId>>,
    size: Vec<usize>,
    /// Shapes strictly below a processed vertex, each with a live witness.
    below: Vec<Option<HashMap<ShapeId, NodeId>>>,
    /// Spliced vertex -> the son that took its place. Only used when the
    /// father's child list is rewritten lazily (no trace).
    lift: Vec<Option<NodeId>>,
    moves: Vec<Move>,
    trace: Option<Trace<'a>>,
}

impl Reducer<'_> {
    fn record(&mut self, m: Move) {
        if let Some(cb) = self.trace.as_mut() {
            apply_unchecked(&mut self.tree, &m);
            cb(&m, &self.tree);
        }
        self.moves.push(m);
    }

    fn process(&mut self, u: NodeId) {
        let root = self.tree.root();
        let mut kids: Vec<NodeId> = self
            .tree
            .children(u)
            .iter()
            .map(|&c| self.lift[c.0].unwrap_or(c))
            .collect();
        let sh = |v: NodeId, s: &Vec<Option<ShapeId>>| s[v.0].expect("processed");
        kids.sort_by(|&a, &b| {
            self.size[b.0]
                .cmp(&self.size[a.0])
                .then_with(|| self.interner.compare(sh(a, &self.shape), sh(b, &self.shape)))
                .then(a.cmp(&b))
        });

        let mut deep: HashMap<ShapeId, NodeId> = HashMap::new();
        let mut kept: Vec<NodeId> = Vec::with_capacity(kids.len());
        let mut removed: Vec<NodeId> = Vec::new();
        for c in kids {
            let s = sh(c, &self.shape);
            if let Some(&w) = deep.get(&s) {
                removed.push(c);
                self.record(Move::M2 { v1: u, v2: c, v3: w });
                continue;
            }
            if let Some(&prev) = kept.last() {
                if sh(prev, &self.shape) == s && (u != root || self.tree.ty(c).is_theta()) {
                    removed.push(c);
                    self.record(Move::M3 { v1: u, v2: prev, v3: c });
                    continue;
                }
            }
            kept.push(c);
            let mut b = self.below[c.0].take().expect("processed");
            if b.len() > deep.len() {
                std::mem::swap(&mut b, &mut deep);
            }
            for (k, w) in b {
                deep.entry(k).or_insert(w);
            }
        }

        if self.trace.is_none() {
            for &c in &removed {
                self.tree.kill_subtree(c);
            }
            self.tree.set_children(u, kept.clone());
        }

        if kept.len() == 1 && m1_fires_on(&self.tree, root, u, kept[0]) {
            let son = kept[0];
            self.record(Move::M1 { father: u, son });
            if self.trace.is_none() {
                self.tree.kill_vertex(u);
                self.lift[u.0] = Some(son);
            }
            self.below[son.0] = Some(deep);
            return;
        }

        let child_shapes = kept.iter().map(|&c| sh(c, &self.shape)).collect();
        self.shape[u.0] = Some(self.interner.intern(self.tree.ty(u), child_shapes));
        self.size[u.0] = 1 + kept.iter().map(|c| self.size[c.0]).sum::<usize>();
        for &c in &kept {
            deep.insert(sh(c, &self.shape), c);
        }
        self.below[u.0] = Some(deep);
    }
}

// `m1_fires` without consulting `u`'s child list, which may be stale.
fn m1_fires_on(t: &Tree, root: NodeId, u: NodeId, son: NodeId) -> bool {
    u != root && t.ty(son).is_theta() && t.ty(u).variant() == t.ty(son).variant()
}

fn run(t: AdmissibleTree, trace: Option<Trace<'_>>) -> Reduction {
    let tree = t.into_tree();
    let n = tree.id_bound();
    let order = tree.postorder();
    let mut r = Reducer {
        tree,
        interner: ShapeInterner::new(),
        shape: vec![None; n],
        size: vec![0; n],
        below: vec![None; n],
        lift: vec![None; n],
        moves: Vec::new(),
        trace,
    };
    for u in order {
        r.process(u);
    }
    let (dense, _) = r.tree.compact();
    let reduced = AdmissibleTree::new(dense).expect("moves keep admissibility");
    Reduction {
        reduced: ReducedTree(reduced),
        moves: r.moves,
    }
}

pub fn reduce(t: AdmissibleTree) -> ReducedTree {
    run(t, None).reduced
}

pub fn reduce_logged(t: AdmissibleTree) -> Reduction {
    run(t, None)
}

/// Like [`reduce_logged`], calling `on_move` with the tree after each move.
pub fn reduce_traced(t: AdmissibleTree, mut on_move: impl FnMut(&Move, &Tree)) -> Reduction {
    run(t, Some(&mut on_move))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::parse_code;

    fn adm(code: &str) -> AdmissibleTree {
        AdmissibleTree::new(parse_code(code).unwrap()).unwrap()
    }

    fn reduced_code(code: &str) -> String {
        reduce(adm(code)).code().into_string()
    }

    #[test]
    fn m1_on_chain_below_root_child() {
        // root -> x(O) -> v'(O) -> v(Θ)
        let t = adm("s0(o(o(t())))");
        let moves = applicable_moves(&t);
        assert!(moves.contains(&Move::M1 {
            father: NodeId(2),
            son: NodeId(3)
        }));
        // root -> x(Oh) -> v'(Oc) -> v(Θc): classes of x and v' differ.
        let t = adm("s0(oh(oc(tc())))");
        assert_eq!(
            applicable_moves(&t),
            vec![Move::M1 {
                father: NodeId(2),
                son: NodeId(3)
            }]
        );
    }

    #[test]
    fn m1_respects_variant_class() {
        let t = adm("s0(o(oh(th())))");
        let after = apply_move(
            &t,
            &Move::M1 {
                father: NodeId(2),
                son: NodeId(3),
            },
        )
        .unwrap();
        assert_eq!(canonical_code(after.tree()).as_str(), "s0(o(th()))");
        let blocked = adm("s0(o(oc(th())))");
        assert_eq!(
            apply_move(
                &blocked,
                &Move::M1 {
                    father: NodeId(2),
                    son: NodeId(3)
                }
            )
            .unwrap_err(),
            ReduceError::InapplicableMove(Move::M1 {
                father: NodeId(2),
                son: NodeId(3)
            })
        );
    }

    #[test]
    fn no_m3_for_o_sons_of_root() {
        assert!(is_reduced(&adm("s0(o()o())")));
        assert!(!is_reduced(&adm("s0(t()t())")));
        assert_eq!(reduced_code("s0(t()t())"), "s0(t())");
        assert_eq!(reduced_code("s0(th()th()th())"), "s0(th())");
    }

    #[test]
    fn m3_below_root() {
        let t = adm("s0(o(o()o()))");
        assert!(applicable_moves(&t).contains(&Move::M3 {
            v1: NodeId(1),
            v2: NodeId(2),
            v3: NodeId(3)
        }));
        assert_eq!(reduced_code("s0(o(o()o()))"), "s0(o(o()))");
    }

    #[test]
    fn m2_removes_whole_subtree() {
        // v2 = the lone o() child of the root's first son; a copy sits
        // two levels down the other branch.
        let t = adm("s0(o(o()t(o(o()))))");
        let m = Move::M2 {
            v1: NodeId(1),
            v2: NodeId(2),
            v3: NodeId(5),
        };
        assert!(is_applicable(&t, &m));
        let after = apply_move(&t, &m).unwrap();
        assert_eq!(after.tree().len(), t.tree().len() - 1);
    }

    #[test]
    fn single_vertex_is_reduced() {
        assert!(is_reduced(&adm("s3()")));
        assert_eq!(reduced_code("sinfc()"), "sinfc()");
    }

    #[test]
    fn theta_chains_collapse() {
        assert_eq!(reduced_code("s0(t(t(t(t()))))"), "s0(t())");
        assert_eq!(reduced_code("s0(o(t(t())))"), "s0(t())");
        assert_eq!(reduced_code("s0(oh(t()))"), "s0(oh(t()))");
    }

    #[test]
    fn reduce_reaches_fixpoint() {
        for code in [
            "s0(o(o()o())t(o()t(o())))",
            "sinf(oh(th(oh())th(oh()))oh())",
            "s0(t(o(o())o(o(o())))o(o(t())))",
        ] {
            let r = reduce(adm(code));
            assert!(is_reduced(r.admissible()), "{code} -> {}", r.code());
            assert_eq!(reduce(r.admissible().clone()).code(), r.code());
        }
    }

    #[test]
    fn logged_moves_replay() {
        let t = adm("s0(t(o(o())o(o(o())))o(o(t()))t(o(o())o(o(o()))))");
        let Reduction { reduced, moves } = reduce_logged(t.clone());
        let mut replay = t;
        for m in &moves {
            apply_move_in_place(&mut replay, m).unwrap();
        }
        assert_eq!(canonical_code(replay.tree()), reduced.code());
        assert!(is_reduced(&replay));
    }

    #[test]
    fn trace_sees_every_move() {
        let t = adm("s0(t()t()o(o(o()o())))");
        let mut seen = Vec::new();
        let traced = reduce_traced(t.clone(), |m, tree| seen.push((*m, tree.len())));
        let plain = reduce_logged(t.clone());
        assert_eq!(traced.moves, plain.moves);
        assert_eq!(traced.reduced.code(), plain.reduced.code());
        let sizes: Vec<usize> = seen.iter().map(|s| s.1).collect();
        assert!(sizes.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn random_orders_agree() {
        let t = adm("s0(t(o(o())o(o(o())))t(o(o())o(o(o())))o(t(t())))");
        let expected = reduce(t.clone()).code();
        for first in [true, false] {
            let (out, _) = reduce_by(t.clone(), |ms| if first { 0 } else { ms.len() - 1 });
            assert_eq!(canonical_code(out.tree()), expected);
        }
    }

    #[test]
    fn deep_chain() {
        let mut tree = Tree::new(crate::symbol::TypeSymbol::StarOrient(0));
        let mut v = tree.root();
        for _ in 0..100_000 {
            v = tree.add_child(v, crate::symbol::TypeSymbol::Theta);
        }
        let r = reduce(AdmissibleTree::new(tree).unwrap());
        assert_eq!(r.code().as_str(), "s0(t())");
    }
}
