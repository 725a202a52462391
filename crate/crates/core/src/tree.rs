//! Decorated rooted trees.
//!
//! Trees live in an arena so that rewriting moves can delete subtrees and
//! splice vertices without invalidating the identifiers of untouched
//! vertices. Deleted slots are tombstoned; [`Tree::compact`] rebuilds a
//! dense copy.

use std::fmt;

use thiserror::Error;

use crate::symbol::TypeSymbol;

/// Identifier of a vertex inside one [`Tree`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub usize);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone, Debug)]
struct Node {
    ty: TypeSymbol,
    parent: Option<NodeId>,
    children: Vec<NodeId>,
    alive: bool,
}

/// A finite rooted tree whose vertices carry a [`TypeSymbol`].
/// Children are unordered; the stored order is insertion order.
#[derive(Clone, Debug)]
pub struct Tree {
    nodes: Vec<Node>,
    live: usize,
}

/// The output of unfolding a decorated graph. Any vertex may be starred.
pub type DecoratedTree = Tree;

impl Tree {
    pub fn new(root: TypeSymbol) -> Self {
        Self {
            nodes: vec![Node {
                ty: root,
                parent: None,
                children: Vec::new(),
                alive: true,
            }],
            live: 1,
        }
    }

    pub fn root(&self) -> NodeId {
        NodeId(0)
    }

    pub fn add_child(&mut self, parent: NodeId, ty: TypeSymbol) -> NodeId {
        assert!(self.is_alive(parent), "parent {parent} is not in the tree");
        let id = NodeId(self.nodes.len());
        self.nodes.push(Node {
            ty,
            parent: Some(parent),
            children: Vec::new(),
            alive: true,
        });
        self.nodes[parent.0].children.push(id);
        self.live += 1;
        id
    }

    /// Number of live vertices.
    pub fn len(&self) -> usize {
        self.live
    }

    pub fn is_empty(&self) -> bool {
        self.live == 0
    }

    /// One past the largest id ever allocated, dead slots included.
    pub fn id_bound(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_alive(&self, id: NodeId) -> bool {
        self.nodes.get(id.0).is_some_and(|n| n.alive)
    }

    pub fn ty(&self, id: NodeId) -> TypeSymbol {
        self.nodes[id.0].ty
    }

    pub fn set_ty(&mut self, id: NodeId, ty: TypeSymbol) {
        self.nodes[id.0].ty = ty;
    }

    pub fn parent(&self, id: NodeId) -> Option<NodeId> {
        self.nodes[id.0].parent
    }

    pub fn children(&self, id: NodeId) -> &[NodeId] {
        &self.nodes[id.0].children
    }

    /// Live vertices in preorder (children in stored order).
    pub fn preorder(&self) -> Vec<NodeId> {
        self.preorder_from(self.root())
    }

    pub fn preorder_from(&self, start: NodeId) -> Vec<NodeId> {
        let mut out = Vec::new();
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.children(v).iter().rev().copied());
        }
        out
    }

    /// Live vertices with every child listed before its parent.
    pub fn postorder(&self) -> Vec<NodeId> {
        let mut out = self.preorder();
        out.reverse();
        out
    }

    pub fn subtree_size(&self, v: NodeId) -> usize {
        self.preorder_from(v).len()
    }

    /// True when `anc` lies on the path from the root to `v` (inclusive).
    pub fn is_ancestor(&self, anc: NodeId, v: NodeId) -> bool {
        let mut cur = Some(v);
        while let Some(c) = cur {
            if c == anc {
                return true;
            }
            cur = self.parent(c);
        }
        false
    }

    pub fn depth(&self, v: NodeId) -> usize {
        let mut d = 0;
        let mut cur = self.parent(v);
        while let Some(c) = cur {
            d += 1;
            cur = self.parent(c);
        }
        d
    }

    pub fn leaf_count(&self) -> usize {
        self.preorder()
            .into_iter()
            .filter(|&v| self.children(v).is_empty())
            .count()
    }

    /// Delete `v` together with its descendants. The root cannot be removed.
    pub fn remove_subtree(&mut self, v: NodeId) {
        let parent = self.parent(v).expect("cannot remove the root");
        self.nodes[parent.0].children.retain(|&c| c != v);
        for u in self.preorder_from(v) {
            self.nodes[u.0].alive = false;
            self.live -= 1;
        }
        self.nodes[v.0].parent = None;
    }

    /// Delete a non-root vertex `v`, attaching its children to its father
    /// in its place.
    pub fn splice_out(&mut self, v: NodeId) {
        let parent = self.parent(v).expect("cannot splice out the root");
        let children = std::mem::take(&mut self.nodes[v.0].children);
        for &c in &children {
            self.nodes[c.0].parent = Some(parent);
        }
        let siblings = &mut self.nodes[parent.0].children;
        let pos = siblings.iter().position(|&c| c == v).expect("linked child");
        siblings.splice(pos..=pos, children);
        self.nodes[v.0].alive = false;
        self.nodes[v.0].parent = None;
        self.live -= 1;
    }

    // Bulk edits for the reducer. They leave the tree consistent only once
    // every affected father has had its child list rewritten.

    pub(crate) fn set_children(&mut self, v: NodeId, children: Vec<NodeId>) {
        for &c in &children {
            self.nodes[c.0].parent = Some(v);
        }
        self.nodes[v.0].children = children;
    }

    pub(crate) fn kill_subtree(&mut self, v: NodeId) {
        for u in self.preorder_from(v) {
            self.nodes[u.0].alive = false;
            self.live -= 1;
        }
        self.nodes[v.0].parent = None;
    }

    pub(crate) fn kill_vertex(&mut self, v: NodeId) {
        self.nodes[v.0].alive = false;
        self.nodes[v.0].parent = None;
        self.live -= 1;
    }

    /// Dense copy holding only live vertices, in preorder. Returns the
    /// new tree and, for every new id, the id it had in `self`.
    pub fn compact(&self) -> (Tree, Vec<NodeId>) {
        let order = self.preorder();
        let mut remap = vec![usize::MAX; self.nodes.len()];
        let mut out = Tree::new(self.ty(self.root()));
        remap[self.root().0] = 0;
        for &v in &order[1..] {
            let p = self.parent(v).expect("non-root has a parent");
            let id = out.add_child(NodeId(remap[p.0]), self.ty(v));
            remap[v.0] = id.0;
        }
        (out, order)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AdmissibilityError {
    #[error("root {0} does not carry a starred type")]
    RootNotStarred(TypeSymbol),
    #[error("ordinary vertex {vertex} carries starred type {ty}")]
    StarredOrdinary { vertex: NodeId, ty: TypeSymbol },
}

/// A decorated tree in which exactly the root is starred.
#[derive(Clone, Debug)]
pub struct AdmissibleTree(Tree);

impl AdmissibleTree {
    pub fn new(tree: Tree) -> Result<Self, AdmissibilityError> {
        let root = tree.root();
        if !tree.ty(root).is_starred() {
            return Err(AdmissibilityError::RootNotStarred(tree.ty(root)));
        }
        for v in tree.preorder().into_iter().skip(1) {
            if tree.ty(v).is_starred() {
                return Err(AdmissibilityError::StarredOrdinary {
                    vertex: v,
                    ty: tree.ty(v),
                });
            }
        }
        Ok(Self(tree))
    }

    pub fn tree(&self) -> &Tree {
        &self.0
    }

    pub fn into_tree(self) -> Tree {
        self.0
    }

    /// Rewriting moves keep admissibility, so crate code may mutate directly.
    pub(crate) fn tree_mut(&mut self) -> &mut Tree {
        &mut self.0
    }

    pub fn root_label(&self) -> TypeSymbol {
        self.0.ty(self.0.root())
    }

    /// Number of non-root vertices.
    pub fn ordinary_count(&self) -> usize {
        self.0.len() - 1
    }
}
