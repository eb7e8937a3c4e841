#![no_main]

use cellgap::format::{read_matrix, resolve_builtin, write_matrix};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok((g, m)) = read_matrix(text, &resolve_builtin) {
        let (g2, m2) = read_matrix(&write_matrix(&g, &m), &resolve_builtin).expect("written matrices parse");
        assert_eq!(g2, g);
        assert_eq!(m2, m);
    }
});
