mod common;

use common::{code, corpus, load, load_surface};
use num_bigint::{BigInt, BigUint};
use tap_core::automaton::DEFAULT_STAGE_CAP;
use tap_core::surface::{signature, validate_triangulation, SurfaceSignature};
use tap_core::*;

#[test]
fn reduced_codes() {
    let expected = [
        ("plane_v1", "s0(o())"),
        ("plane_v2", "s0(o())"),
        ("plane_tri", "s0(o())"),
        ("cylinder", "s0(o()o())"),
        ("cantor_tree", "s0(t())"),
        ("cantor_tri", "s0(t())"),
        ("loch_ness", "sinf(oh())"),
        ("loch_ness_tri", "sinf(oh())"),
        ("jacobs_ladder", "sinfc(oc()oc())"),
        ("jacobs_ladder_tri", "sinfc(oc()oc())"),
        ("sphere", "s0()"),
        ("closed_genus2", "s2()"),
        ("diamond", "s0(o()o())"),
        ("handle_then_plane", "s1(o())"),
        ("mixed_ends", "sinf(oh()t())"),
        ("unreachable", "s0(o())"),
    ];
    for (name, want) in expected {
        assert_eq!(code(name), want, "{name}");
    }
}

#[test]
fn every_fixture_is_listed() {
    assert_eq!(corpus().len(), 16);
}

#[test]
fn named_invariants() {
    let inv = invariants(&load("loch_ness")).unwrap();
    assert_eq!(inv.orientability, Orientability::Orientable);
    assert_eq!(inv.genus_or_crosscaps, Genus::Infinite);

    let inv = invariants(&load("jacobs_ladder")).unwrap();
    assert_eq!(inv.orientability, Orientability::Nonorientable);
    assert_eq!(inv.genus_or_crosscaps, Genus::Infinite);

    let inv = invariants(&load("sphere")).unwrap();
    assert!(inv.compact && inv.planar);
    assert_eq!(inv.genus_or_crosscaps, Genus::Finite(0));

    let inv = invariants(&load("cantor_tree")).unwrap();
    assert!(inv.planar && !inv.compact);
}

#[test]
fn verdicts() {
    let v = |a: &str, b: &str| equivalent(&load(a), &load(b)).unwrap().homeomorphic;
    assert!(v("plane_v1", "plane_v2"));
    assert!(!v("plane_v1", "cylinder"));
    assert!(!v("cantor_tree", "plane_v1"));
    assert!(v("diamond", "cylinder"));
    assert!(!v("loch_ness", "handle_then_plane"));
}

#[test]
fn decorated_graph_of_plane() {
    let g = build_decorated_graph(&load("plane_v1"));
    assert_eq!(g.ty(0), TypeSymbol::StarOrient(0));
    assert_eq!(g.ty(1), TypeSymbol::O);
    let dot = tap_core::dot::graph_to_dot(&g);
    assert_eq!(dot.matches("x1 -> x1;").count(), 1);
}

#[test]
fn surface_signatures() {
    let cases = [
        ("disk", (3, 3, 1), SurfaceSignature::orientable(0, 1)),
        ("annulus", (8, 16, 8), SurfaceSignature::orientable(0, 2)),
        ("mobius", (5, 10, 5), SurfaceSignature::nonorientable(1, 1).unwrap()),
        ("pants", (24, 53, 28), SurfaceSignature::orientable(0, 3)),
        ("torus_minus_triangle", (7, 21, 13), SurfaceSignature::orientable(1, 1)),
        (
            "projective_plane_minus_triangle",
            (6, 15, 9),
            SurfaceSignature::nonorientable(1, 1).unwrap(),
        ),
    ];
    for (name, vef, sig) in cases {
        let s = validate_triangulation(&load_surface(name)).unwrap();
        assert_eq!((s.vertex_count(), s.edge_count(), s.triangle_count()), vef, "{name}");
        assert_eq!(signature(&s), sig, "{name}");
        assert_eq!(
            s.euler_characteristic() as i128,
            sig.euler_characteristic(),
            "{name}"
        );
    }
}

#[test]
fn development_closed_forms() {
    let plane = load("plane_v1");
    let cantor = load("cantor_tree");
    for s in 0..=10u64 {
        let d = develop(&plane, s, DEFAULT_STAGE_CAP).unwrap();
        assert_eq!(d.euler_characteristic, BigInt::from(1));
        assert_eq!(d.boundary_count, BigUint::from(1u32));

        let d = develop(&cantor, s, DEFAULT_STAGE_CAP).unwrap();
        let two_s = BigInt::from(1) << s;
        assert_eq!(d.boundary_count, BigUint::from(1u32) << s);
        assert_eq!(d.euler_characteristic, BigInt::from(2) - two_s);
    }
}

#[test]
fn development_is_monotone() {
    for (name, aut) in corpus() {
        let mut prev = develop(&aut, 0, 64).unwrap();
        for s in 1..=8 {
            let d = develop(&aut, s, 64).unwrap();
            for (k, c) in &prev.copy_counts {
                assert!(d.copy_counts.get(k).is_some_and(|n| n >= c), "{name} stage {s}");
            }
            prev = d;
        }
    }
}

#[test]
fn serialize_round_trips() {
    for (name, aut) in corpus() {
        assert_eq!(parse(&serialize(&aut)).unwrap(), aut, "{name}");
    }
}

#[test]
fn plane_v2_is_confluent() {
    let stages = run_pipeline(&load("plane_v2"), &Config::default()).unwrap();
    assert!(confluence_check(&stages.admissible, 100, 3).confluent());
}
