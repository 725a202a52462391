//! The decorated graph of an automaton: one vertex per block reachable from
//! the seed, one edge per non-loop arrow, and a type symbol per vertex.

use std::collections::BTreeMap;

use crate::automaton::TopologicalAutomaton;
use crate::surface::SurfaceClass;
use crate::symbol::{LoopKind, TypeSymbol, Variant};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedGraph {
    /// Reachable block indices, ascending. Block 0 comes first.
    vertices: Vec<usize>,
    /// Non-loop arrows between reachable blocks, in arrow order.
    edges: Vec<(usize, usize)>,
    types: BTreeMap<usize, TypeSymbol>,
    loop_counts: BTreeMap<usize, usize>,
}

impl DecoratedGraph {
    pub fn root(&self) -> usize {
        0
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn ty(&self, v: usize) -> TypeSymbol {
        self.types[&v]
    }

    pub fn loop_count(&self, v: usize) -> usize {
        self.loop_counts[&v]
    }

    /// Targets of the edges leaving `v`, repeated once per parallel edge.
    pub fn successors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .filter(move |&&(s, _)| s == v)
            .map(|&(_, t)| t)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.types.contains_key(&v)
    }
}

fn base_type(aut: &TopologicalAutomaton, k: usize) -> TypeSymbol {
    let sig = aut.blocks[k].signature();
    let kind = match aut.loop_count(k) {
        0 => {
            return match sig.class() {
                SurfaceClass::Orientable { genus } => TypeSymbol::StarOrient(genus),
                SurfaceClass::Nonorientable { crosscaps } => TypeSymbol::StarCross(crosscaps),
            }
        }
        1 => LoopKind::O,
        _ => LoopKind::Theta,
    };
    let variant = match sig.class() {
        SurfaceClass::Orientable { genus: 0 } => Variant::Plain,
        SurfaceClass::Orientable { .. } => Variant::Handle,
        SurfaceClass::Nonorientable { .. } => Variant::Cross,
    };
    TypeSymbol::loop_symbol(kind, variant)
}

/// Base-typed decorated graph of a valid automaton, pruned to the blocks
/// reachable from block 0.
pub fn build_decorated_graph(aut: &TopologicalAutomaton) -> DecoratedGraph {
    let n = aut.block_count();
    let mut reachable = vec![false; n];
    reachable[0] = true;
    // Arrows only go forward, so one pass in block order suffices.
    let mut by_source: Vec<Vec<usize>> = vec![Vec::new(); n];
    for a in aut.arrows.iter().filter(|a| !a.is_loop()) {
        by_source[a.source_block].push(a.target_block);
    }
    for k in 0..n {
        if reachable[k] {
            for &t in &by_source[k] {
                reachable[t] = true;
            }
        }
    }

    let vertices: Vec<usize> = (0..n).filter(|&k| reachable[k]).collect();
    let edges = aut
        .arrows
        .iter()
        .filter(|a| !a.is_loop() && reachable[a.source_block])
        .map(|a| (a.source_block, a.target_block))
        .collect();
    let types = vertices.iter().map(|&k| (k, base_type(aut, k))).collect();
    let loop_counts = vertices.iter().map(|&k| (k, aut.loop_count(k))).collect();
    DecoratedGraph {
        vertices,
        edges,
        types,
        loop_counts,
    }
}

// What a vertex's strict descendants contain.
const H_LOOP: u8 = 1; // Oh, ThetaH
const H_STAR: u8 = 2; // StarOrient(i >= 1), StarInf
const C_LOOP: u8 = 4; // Oc, ThetaC
const C_STAR: u8 = 8; // StarCross, StarInfCross

fn own_flags(ty: TypeSymbol) -> u8 {
    use TypeSymbol::*;
    match ty {
        Oh | ThetaH => H_LOOP,
        StarOrient(i) if i >= 1 => H_STAR,
        StarInf => H_STAR,
        Oc | ThetaC => C_LOOP,
        StarCross(_) | StarInfCross => C_STAR,
        _ => 0,
    }
}

fn promote(ty: TypeSymbol, below: u8) -> TypeSymbol {
    if ty.is_starred() {
        if below & C_LOOP != 0 {
            TypeSymbol::StarInfCross
        } else if below & H_LOOP != 0 {
            // Infinitely many handles: a nonorientable star keeps its
            // orientability class and becomes infinite as well.
            if ty.is_orientable_star() {
                TypeSymbol::StarInf
            } else {
                TypeSymbol::StarInfCross
            }
        } else {
            ty
        }
    } else {
        let kind = ty.loop_kind().expect("non-starred symbols are loop symbols");
        let variant = ty.variant().expect("loop symbol");
        let wanted = if below & (C_LOOP | C_STAR) != 0 {
            Variant::Cross
        } else if below & (H_LOOP | H_STAR) != 0 {
            Variant::Handle
        } else {
            Variant::Plain
        };
        TypeSymbol::loop_symbol(kind, variant.max(wanted))
    }
}

/// Closes the labels under the end-promotion rules. Vertices are visited in
/// reverse block order, so every descendant already has its final label.
pub fn propagate(g: &DecoratedGraph) -> DecoratedGraph {
    let mut out = g.clone();
    let mut below: BTreeMap<usize, u8> = BTreeMap::new();
    for &v in g.vertices.iter().rev() {
        let mut flags = 0u8;
        for w in g.successors(v) {
            flags |= below[&w] | own_flags(out.types[&w]);
        }
        below.insert(v, flags);
        let ty = promote(out.types[&v], flags);
        out.types.insert(v, ty);
    }
    out
}
