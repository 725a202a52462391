//! Canonical codes for decorated rooted trees.
//!
//! The code of a vertex is its type token, `(`, the codes of its children in
//! ascending byte order, and `)`. Two trees are isomorphic (a root-fixing,
//! type-preserving bijection of vertices respecting edges) exactly when
//! their codes are equal strings.
//!
//! Internally subtrees are hash-consed into [`ShapeId`]s; equal ids mean
//! isomorphic subtrees. Shapes are ordered by the byte order of their codes
//! without materializing the strings: codes are balanced, so no code is a
//! proper prefix of another, and the first differing child decides.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::symbol::TypeSymbol;
use crate::tree::{NodeId, Tree};

/// String normal form of a decorated rooted tree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalCode(String);

impl CanonicalCode {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ShapeId(u32);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Shape {
    ty: TypeSymbol,
    children: Vec<ShapeId>,
}

/// Hash-consing table of subtree shapes.
#[derive(Default, Debug)]
pub struct ShapeInterner {
    shapes: Vec<Shape>,
    /// `token(ty) + "("`, the prefix that orders two shapes first.
    heads: Vec<String>,
    index: HashMap<Shape, ShapeId>,
}

impl ShapeInterner {
    pub fn new() -> Self {
        Self::default()
    }

    /// Interns a vertex of type `ty` whose children have the given shapes
    /// (in any order).
    pub fn intern(&mut self, ty: TypeSymbol, mut children: Vec<ShapeId>) -> ShapeId {
        children.sort_by(|&a, &b| self.compare(a, b));
        let shape = Shape { ty, children };
        if let Some(&id) = self.index.get(&shape) {
            return id;
        }
        let id = ShapeId(u32::try_from(self.shapes.len()).expect("shape table overflow"));
        self.heads.push(format!("{}(", ty.token()));
        self.shapes.push(shape.clone());
        self.index.insert(shape, id);
        id
    }

    pub fn ty(&self, id: ShapeId) -> TypeSymbol {
        self.shapes[id.0 as usize].ty
    }

    /// Byte order of the codes of `a` and `b`.
    pub fn compare(&self, mut a: ShapeId, mut b: ShapeId) -> Ordering {
        loop {
            if a == b {
                return Ordering::Equal;
            }
            let (sa, sb) = (&self.shapes[a.0 as usize], &self.shapes[b.0 as usize]);
            match self.heads[a.0 as usize].cmp(&self.heads[b.0 as usize]) {
                Ordering::Equal => {}
                other => return other,
            }
            match sa.children.iter().zip(&sb.children).find(|(x, y)| x != y) {
                Some((&x, &y)) => {
                    a = x;
                    b = y;
                }
                // `)` sorts below every token character.
                None => return sa.children.len().cmp(&sb.children.len()),
            }
        }
    }

    /// Materializes the code string of a shape.
    pub fn code(&self, id: ShapeId) -> CanonicalCode {
        enum Step {
            Open(ShapeId),
            Close,
        }
        let mut out = String::new();
        let mut stack = vec![Step::Open(id)];
        while let Some(step) = stack.pop() {
            match step {
                Step::Close => out.push(')'),
                Step::Open(s) => {
                    out.push_str(&self.heads[s.0 as usize]);
                    stack.push(Step::Close);
                    for &c in self.shapes[s.0 as usize].children.iter().rev() {
                        stack.push(Step::Open(c));
                    }
                }
            }
        }
        CanonicalCode(out)
    }

    /// Shape of every live vertex of `tree`, indexed by `NodeId.0`.
    /// Entries of dead vertices are `None`.
    pub fn shapes_of(&mut self, tree: &Tree) -> Vec<Option<ShapeId>> {
        let mut table: Vec<Option<ShapeId>> = vec![None; tree.id_bound()];
        for v in tree.postorder() {
            let kids = tree
                .children(v)
                .iter()
                .map(|c| table[c.0].expect("children precede parents"))
                .collect();
            table[v.0] = Some(self.intern(tree.ty(v), kids));
        }
        table
    }
}

/// Canonical code of the whole tree.
pub fn canonical_code(tree: &Tree) -> CanonicalCode {
    let mut interner = ShapeInterner::new();
    let shapes = interner.shapes_of(tree);
    interner.code(shapes[tree.root().0].expect("root is live"))
}

/// Canonical code of the subtree rooted at `v`.
pub fn subtree_code(tree: &Tree, v: NodeId) -> CanonicalCode {
    let mut interner = ShapeInterner::new();
    let shapes = interner.shapes_of(tree);
    interner.code(shapes[v.0].expect("vertex is live"))
}

pub fn isomorphic(a: &Tree, b: &Tree) -> bool {
    canonical_code(a) == canonical_code(b)
}

/// Live vertices in canonical preorder: children visited in ascending code
/// order, ties broken by vertex id.
pub fn canonical_preorder(tree: &Tree) -> Vec<NodeId> {
    let mut interner = ShapeInterner::new();
    let shapes = interner.shapes_of(tree);
    let mut out = Vec::with_capacity(tree.len());
    let mut stack = vec![tree.root()];
    while let Some(v) = stack.pop() {
        out.push(v);
        let mut kids = tree.children(v).to_vec();
        kids.sort_by(|a, b| {
            interner
                .compare(shapes[a.0].unwrap(), shapes[b.0].unwrap())
                .then(a.cmp(b))
        });
        stack.extend(kids.into_iter().rev());
    }
    out
}

/// Parses a canonical code back into a tree. Used by tests and tooling;
/// accepts any well-formed code, sorted or not.
pub fn parse_code(code: &str) -> Option<Tree> {
    let mut tree: Option<Tree> = None;
    let mut stack: Vec<NodeId> = Vec::new();
    let bytes = code.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b')' {
            stack.pop()?;
            i += 1;
            if stack.is_empty() {
                break;
            }
            continue;
        }
        let start = i;
        while i < bytes.len() && bytes[i] != b'(' {
            i += 1;
        }
        if i == bytes.len() {
            return None;
        }
        let ty = TypeSymbol::from_token(&code[start..i])?;
        i += 1;
        let id = match (&mut tree, stack.last()) {
            (None, _) => {
                tree = Some(Tree::new(ty));
                NodeId(0)
            }
            (Some(t), Some(&p)) => t.add_child(p, ty),
            (Some(_), None) => return None,
        };
        stack.push(id);
    }
    if i != bytes.len() || !stack.is_empty() {
        return None;
    }
    tree
}
