#![no_main]

use cellgap::format::read_registry;
use cellgap::kzero::tate::{tate_z2, Parity};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(reg) = read_registry(text) {
        for e in reg.entries.iter().filter(|e| e.k0_tilde.generators <= 8) {
            let a = e.involuted_group().expect("entries were validated");
            assert!(tate_z2(&a, Parity::Even).annihilated_by_two);
        }
    }
});
