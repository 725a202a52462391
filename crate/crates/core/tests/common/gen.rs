//! Seeded generators shared by the property and acceptance tests.

use rand::seq::SliceRandom;
use rand::Rng;
use tap_core::surface::{realize, SurfaceSignature, VertexId};
use tap_core::{Arrow, Block, BlockSpec, NodeId, TopologicalAutomaton, Tree};

fn random_signature<R: Rng>(rng: &mut R, boundaries: u32) -> SurfaceSignature {
    if rng.gen_bool(0.2) {
        SurfaceSignature::nonorientable(rng.gen_range(1..=2), boundaries).unwrap()
    } else {
        let genus = if rng.gen_bool(0.25) { 1 } else { 0 };
        SurfaceSignature::orientable(genus, boundaries)
    }
}

/// A valid automaton with up to `max_blocks` blocks.
pub fn random_automaton<R: Rng>(rng: &mut R, max_blocks: usize) -> TopologicalAutomaton {
    let n = rng.gen_range(1..=max_blocks);
    let mut blocks = Vec::new();
    let mut incoming = std::collections::BTreeMap::new();
    let mut arrows = Vec::new();
    for k in 0..n {
        let boundaries = if k == 0 {
            if n == 1 {
                0
            } else {
                rng.gen_range(1..=2)
            }
        } else {
            rng.gen_range(1..=4)
        };
        blocks.push(Block::from_signature(random_signature(rng, boundaries)));
        if k > 0 {
            incoming.insert(k, 0);
        }
        let first_out = u32::from(k > 0);
        for b in first_out..boundaries {
            let lo = k.max(1);
            let target = rng.gen_range(lo..n);
            arrows.push(Arrow::new(k, b, target));
        }
    }
    let aut = TopologicalAutomaton {
        blocks,
        incoming,
        arrows,
    };
    aut.validate().expect("generator produces valid automata");
    aut
}

/// Same tree with every child list in a random order.
pub fn shuffled<R: Rng>(rng: &mut R, t: &Tree) -> Tree {
    let mut out = Tree::new(t.ty(t.root()));
    let mut stack = vec![(t.root(), out.root())];
    while let Some((v, w)) = stack.pop() {
        let mut kids = t.children(v).to_vec();
        kids.shuffle(rng);
        for c in kids {
            let id: NodeId = out.add_child(w, t.ty(c));
            stack.push((c, id));
        }
    }
    out
}

pub fn permute_arrows<R: Rng>(rng: &mut R, aut: &TopologicalAutomaton) -> TopologicalAutomaton {
    let mut out = aut.clone();
    out.arrows.shuffle(rng);
    out
}

/// Renames the vertices of every triangulated block injectively.
pub fn rename_vertices<R: Rng>(rng: &mut R, aut: &TopologicalAutomaton) -> TopologicalAutomaton {
    let mut out = aut.clone();
    for b in &mut out.blocks {
        if let BlockSpec::Triangulation(t) = b.spec() {
            let top = t.vertices().iter().max().copied().unwrap_or(0) + 1;
            let mut image: Vec<VertexId> = (0..top * 3).collect();
            image.shuffle(rng);
            let renamed = t.relabel(|v| image[v as usize]).unwrap();
            *b = Block::from_triangulation(renamed).unwrap();
        }
    }
    out
}

/// Swaps every signature block for a triangulation of it and vice versa.
pub fn swap_block_specs(aut: &TopologicalAutomaton) -> TopologicalAutomaton {
    let mut out = aut.clone();
    for b in &mut out.blocks {
        *b = match b.spec() {
            BlockSpec::Triangulation(_) => Block::from_signature(*b.signature()),
            BlockSpec::Signature(sig) => Block::from_triangulation(realize(sig)).unwrap(),
        };
    }
    out
}
