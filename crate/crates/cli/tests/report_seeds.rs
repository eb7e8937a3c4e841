//! The report fuzz seeds verify as written, and structural edits to them are
//! rejected without panicking.

use std::fs;
use std::path::Path;

use cellgap::kzero::registry::Registry;
use cellgap_cli::report::read_report;
use proptest::prelude::*;
use serde_json::Value;

fn seeds() -> Vec<String> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus/read_report");
    let mut paths: Vec<_> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    paths.sort();
    paths.iter().map(|p| fs::read_to_string(p).unwrap()).collect()
}

#[test]
fn seeds_verify() {
    let registry = Registry::builtin();
    let seeds = seeds();
    assert!(!seeds.is_empty());
    for text in &seeds {
        let report = read_report(text).unwrap();
        assert!(!report.certificates.is_empty());
        for cert in &report.certificates {
            cert.verify(&registry).unwrap_or_else(|e| panic!("{}: {e}", cert.label()));
        }
    }
}

/// Pre-order count of nodes.
fn size(v: &Value) -> usize {
    1 + match v {
        Value::Array(a) => a.iter().map(size).sum(),
        Value::Object(o) => o.values().map(size).sum(),
        _ => 0,
    }
}

/// Applies `edit` to the `n`-th node in pre-order.
fn edit_at(v: &mut Value, n: &mut usize, edit: &dyn Fn(&mut Value)) -> bool {
    if *n == 0 {
        edit(v);
        return true;
    }
    *n -= 1;
    let children: Vec<&mut Value> = match v {
        Value::Array(a) => a.iter_mut().collect(),
        Value::Object(o) => o.values_mut().collect(),
        _ => Vec::new(),
    };
    for c in children {
        if edit_at(c, n, edit) {
            return true;
        }
    }
    false
}

fn apply(v: &mut Value, op: u8, x: i64) {
    match (op, v) {
        (0, v) => *v = Value::from(x),
        (1, Value::Array(a)) => {
            a.pop();
        }
        (2, Value::Array(a)) => {
            if let Some(last) = a.last().cloned() {
                a.push(last);
            }
        }
        (3, Value::Array(a)) => a.reverse(),
        (_, v @ Value::Number(_)) => *v = Value::from(x),
        _ => {}
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..Default::default() })]

    #[test]
    fn edited_reports_do_not_panic(
        pick in 0usize..16,
        edits in proptest::collection::vec((0usize..100_000, 0u8..4, -3i64..40), 1..4),
    ) {
        let seeds = seeds();
        let mut v: Value = serde_json::from_str(&seeds[pick % seeds.len()]).unwrap();
        for (at, op, x) in edits {
            let mut n = at % size(&v);
            edit_at(&mut v, &mut n, &|node| apply(node, op, x));
        }
        if let Ok(report) = read_report(&v.to_string()) {
            let registry = Registry::builtin();
            for cert in &report.certificates {
                let _ = cert.verify(&registry);
            }
        }
    }
}
