//! From the decorated DAG to an admissible tree: unfold every root path into
//! its own vertex, then fold the starred vertices into their fathers.

use thiserror::Error;

use crate::decoration::DecoratedGraph;
use crate::symbol::TypeSymbol;
use crate::tree::{AdmissibilityError, AdmissibleTree, DecoratedTree, Tree};

pub const DEFAULT_MAX_UNFOLD: u64 = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeifyError {
    #[error("unfolding has {size} vertices, more than the cap of {cap}")]
    SizeCapExceeded { size: u64, cap: u64 },
    #[error("genus label overflows merging {father} with {son}")]
    LabelOverflow { father: TypeSymbol, son: TypeSymbol },
    #[error(transparent)]
    NotAdmissible(#[from] AdmissibilityError),
}

/// Number of vertices of the path unfolding of `g`, saturating at `u64::MAX`.
pub fn unfolded_size(g: &DecoratedGraph) -> u64 {
    let mut paths = std::collections::BTreeMap::new();
    paths.insert(g.root(), 1u64);
    let mut total = 0u64;
    // Vertices are in block order, which is a topological order.
    for &v in g.vertices() {
        let p = paths.get(&v).copied().unwrap_or(0);
        total = total.saturating_add(p);
        for w in g.successors(v) {
            let e = paths.entry(w).or_insert(0);
            *e = e.saturating_add(p);
        }
    }
    total
}

/// Path unfolding: one tree vertex per directed path from the root, typed
/// by the path's endpoint. Parallel edges give distinct paths.
pub fn unfold(g: &DecoratedGraph, cap: u64) -> Result<DecoratedTree, TreeifyError> {
    let size = unfolded_size(g);
    if size > cap {
        return Err(TreeifyError::SizeCapExceeded { size, cap });
    }
    let succ: std::collections::BTreeMap<usize, Vec<usize>> = g
        .vertices()
        .iter()
        .map(|&v| (v, g.successors(v).collect()))
        .collect();
    let mut tree = Tree::new(g.ty(g.root()));
    let mut stack = vec![(g.root(), tree.root())];
    while let Some((v, node)) = stack.pop() {
        for &w in &succ[&v] {
            let child = tree.add_child(node, g.ty(w));
            stack.push((w, child));
        }
    }
    Ok(tree)
}

// (handles, crosscaps, infinite)
fn parts(t: TypeSymbol) -> (u64, u64, bool) {
    match t {
        TypeSymbol::StarOrient(i) => (i, 0, false),
        TypeSymbol::StarCross(c) => (0, c, false),
        TypeSymbol::StarInf => (0, 0, true),
        TypeSymbol::StarInfCross => (0, 1, true),
        other => panic!("{other} is not a starred symbol"),
    }
}

/// Connected sum of two starred labels; `None` when a finite genus does not
/// fit in 64 bits. Panics if either label is not starred.
pub fn checked_merge_types(father: TypeSymbol, son: TypeSymbol) -> Option<TypeSymbol> {
    let (h1, c1, inf1) = parts(father);
    let (h2, c2, inf2) = parts(son);
    let orientable = c1 == 0 && c2 == 0;
    Some(match (inf1 || inf2, orientable) {
        (true, true) => TypeSymbol::StarInf,
        (true, false) => TypeSymbol::StarInfCross,
        (false, true) => TypeSymbol::StarOrient(h1.checked_add(h2)?),
        // A handle next to a crosscap is worth two crosscaps.
        (false, false) => {
            let handles = h1.checked_add(h2)?;
            TypeSymbol::StarCross(handles.checked_mul(2)?.checked_add(c1.checked_add(c2)?)?)
        }
    })
}

/// Like [`checked_merge_types`], panicking on overflow.
pub fn merge_types(father: TypeSymbol, son: TypeSymbol) -> TypeSymbol {
    checked_merge_types(father, son).expect("genus label overflow")
}

/// Merges every non-root starred vertex into its father: a starred father
/// absorbs the label, a loop father keeps its own. Children move up.
pub fn admissibilize(mut t: DecoratedTree) -> Result<AdmissibleTree, TreeifyError> {
    let root = t.root();
    if !t.ty(root).is_starred() {
        return Err(AdmissibilityError::RootNotStarred(t.ty(root)).into());
    }
    for v in t.postorder() {
        if v == root || !t.ty(v).is_starred() {
            continue;
        }
        let father = t.parent(v).expect("non-root");
        let (ft, st) = (t.ty(father), t.ty(v));
        if ft.is_starred() {
            let merged = checked_merge_types(ft, st)
                .ok_or(TreeifyError::LabelOverflow { father: ft, son: st })?;
            t.set_ty(father, merged);
        }
        t.splice_out(v);
    }
    let (dense, _) = t.compact();
    Ok(AdmissibleTree::new(dense)?)
}

/// Only the root is starred.
pub fn is_admissible(t: &Tree) -> bool {
    t.ty(t.root()).is_starred() && t.preorder().iter().skip(1).all(|&v| !t.ty(v).is_starred())
}
