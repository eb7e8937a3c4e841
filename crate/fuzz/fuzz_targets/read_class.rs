#![no_main]

use cellgap::format::{read_class, resolve_builtin, write_class};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(r) = read_class(text, &resolve_builtin) {
        assert!(r.all_idempotent());
        let again = read_class(&write_class(&r), &resolve_builtin).expect("written classes parse");
        assert_eq!(again.positive(), r.positive());
        assert_eq!(again.negative(), r.negative());
    }
});
