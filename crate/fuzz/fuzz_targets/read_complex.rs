#![no_main]

use cellgap::format::{read_complex, resolve_builtin, write_complex};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(c) = read_complex(text, &resolve_builtin) {
        let out = write_complex(&c);
        let again = read_complex(&out, &resolve_builtin).expect("written complexes parse");
        assert_eq!(again, c);
        let small = c.ranks().iter().sum::<usize>() * c.group().order() <= 64;
        if small {
            let _ = c.validate();
        }
    }
});
