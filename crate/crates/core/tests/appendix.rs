use tap_core::canonical::ShapeInterner;
use tap_core::*;

fn reduced(bits: &str) -> ReducedTree {
    let aut = gen_appendix(&bits.parse().unwrap());
    run_pipeline(&aut, &Config::default())
        .unwrap()
        .reduction
        .reduced
}

#[test]
fn smallest_members() {
    assert_eq!(reduced("1").code().as_str(), "s0(t(o()))");
    assert_eq!(reduced("0").code().as_str(), "s0(t())");
    assert_eq!(reduced("01").code().as_str(), "s0(t(o(o())))");
    assert_ne!(reduced("10").code(), reduced("01").code());
    assert_eq!(reduced("11").code().as_str(), "s0(t(t(o())t(o(o()))))");
}

#[test]
fn one_theta_child_with_distinct_branches() {
    for bits in BitVector::all(6) {
        let r = reduced(&bits.to_string());
        let t = r.tree();
        let kids = t.children(t.root());
        assert_eq!(kids.len(), 1, "{bits}");
        assert_eq!(t.ty(kids[0]), TypeSymbol::Theta, "{bits}");
        let mut interner = ShapeInterner::new();
        let shapes = interner.shapes_of(t);
        let branches = t.children(kids[0]);
        for (i, a) in branches.iter().enumerate() {
            for b in &branches[i + 1..] {
                assert_ne!(shapes[a.0], shapes[b.0], "{bits}");
            }
        }
        // Every branch is a chain.
        for &b in branches {
            assert!(t.preorder_from(b).iter().all(|&v| t.children(v).len() <= 1), "{bits}");
        }
    }
}

#[test]
fn appendix_round_trips_through_text() {
    for bits in BitVector::all(4) {
        let aut = gen_appendix(&bits);
        assert_eq!(parse(&serialize(&aut)).unwrap(), aut);
    }
}
