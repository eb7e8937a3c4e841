//! Every checked-in fuzz seed parses, so the fuzzers start from inputs that
//! reach past the JSON layer.

use std::fs;
use std::path::{Path, PathBuf};

use cellgap::config::Config;
use cellgap::format::{read_class, read_complex, read_group, read_matrix, read_registry, read_subcomplex, resolve_builtin};

fn seeds(target: &str) -> Vec<(PathBuf, String)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .map(|p| {
            let text = fs::read_to_string(&p).unwrap();
            (p, text)
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn seeds_parse() {
    for (p, t) in seeds("read_group") {
        read_group(&t).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
    }
    for (p, t) in seeds("read_complex") {
        let c = read_complex(&t, &resolve_builtin).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
        assert!(c.validate().is_valid(), "{}", p.display());
    }
    for (p, t) in seeds("read_matrix") {
        read_matrix(&t, &resolve_builtin).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
    }
    for (p, t) in seeds("read_class") {
        read_class(&t, &resolve_builtin).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
    }
    for (p, t) in seeds("read_subcomplex") {
        read_subcomplex(&t).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
    }
    for (p, t) in seeds("read_registry") {
        read_registry(&t).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
    }
    for (p, t) in seeds("read_config") {
        serde_json::from_str::<Config>(&t).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
    }
}

fn all_seeds() -> Vec<String> {
    ["read_group", "read_complex", "read_matrix", "read_class", "read_subcomplex", "read_registry", "read_config"]
        .iter()
        .flat_map(|t| seeds(t).into_iter().map(|(_, s)| s))
        .collect()
}

fn run_parsers(text: &str) {
    let _ = read_group(text);
    if let Ok(c) = read_complex(text, &resolve_builtin) {
        if c.ranks().iter().sum::<usize>() * c.group().order() <= 64 {
            let _ = c.validate();
        }
    }
    let _ = read_matrix(text, &resolve_builtin);
    let _ = read_class(text, &resolve_builtin);
    let _ = read_subcomplex(text);
    let _ = read_registry(text);
    let _ = serde_json::from_str::<Config>(text);
}

proptest::proptest! {
    #![proptest_config(proptest::prelude::ProptestConfig { cases: 512, ..Default::default() })]

    /// Stable-toolchain stand-in for the fuzzers: byte-level mutations of the
    /// seeds never panic a parser.
    #[test]
    fn mutated_seeds_do_not_panic(
        pick in 0usize..64,
        edits in proptest::collection::vec((0usize..4096, 0u8..4, proptest::prelude::any::<u8>()), 1..6),
    ) {
        let all = all_seeds();
        let mut bytes = all[pick % all.len()].clone().into_bytes();
        for (at, op, b) in edits {
            let i = at % (bytes.len() + 1);
            match op {
                0 if i < bytes.len() => bytes[i] = b,
                1 => bytes.insert(i, b),
                2 if i < bytes.len() => { bytes.remove(i); }
                _ => bytes.insert(i, b"0123456789-,[]{}\"e"[b as usize % 18]),
            }
        }
        if let Ok(text) = String::from_utf8(bytes) {
            run_parsers(&text);
        }
    }
}
