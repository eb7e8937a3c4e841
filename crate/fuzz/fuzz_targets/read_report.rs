#![no_main]

use cellgap::kzero::registry::Registry;
use cellgap_cli::report::read_report;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(report) = read_report(text) else { return };
    // verification is polynomial in the certificate size; keep runs short
    if text.len() > 16384 {
        return;
    }
    let registry = Registry::builtin();
    for cert in &report.certificates {
        let _ = cert.verify(&registry);
    }
});
