#![allow(dead_code)]

pub mod gen;

use std::path::PathBuf;

use tap_core::surface::Triangulation;
use tap_core::TopologicalAutomaton;

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn load(name: &str) -> TopologicalAutomaton {
    let path = fixture_dir().join(format!("{name}.tap"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    tap_core::parse(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Every `.tap` fixture, sorted by name.
pub fn corpus() -> Vec<(String, TopologicalAutomaton)> {
    let mut names: Vec<String> = std::fs::read_dir(fixture_dir())
        .unwrap()
        .filter_map(|e| {
            let p = e.unwrap().path();
            (p.extension()? == "tap").then(|| p.file_stem().unwrap().to_string_lossy().into_owned())
        })
        .collect();
    names.sort();
    names.into_iter().map(|n| (n.clone(), load(&n))).collect()
}

pub fn load_surface(name: &str) -> Triangulation {
    let path = fixture_dir().join("surfaces").join(format!("{name}.tri"));
    std::fs::read_to_string(&path).unwrap().parse().unwrap()
}

pub fn code(name: &str) -> String {
    tap_core::invariants(&load(name))
        .unwrap()
        .reduced_code
        .into_string()
}
