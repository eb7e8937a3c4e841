#![no_main]

use cellgap::config::Config;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(c) = serde_json::from_slice::<Config>(data) {
        let _ = c.registry();
    }
});
