#![no_main]

use cellgap::format::{read_group, write_group};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = read_group(text) {
        // a parsed group is a group and survives a round trip
        for a in 0..g.order() {
            assert_eq!(g.mul(a, g.inv(a)), 0);
        }
        assert_eq!(read_group(&write_group(&g)).unwrap(), g);
    }
});
