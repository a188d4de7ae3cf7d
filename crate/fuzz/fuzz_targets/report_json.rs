#![no_main]

use libfuzzer_sys::fuzz_target;
use opmeans::VerificationReport;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(report) = VerificationReport::from_json(text) else {
        return;
    };
    // Re-serialization must be stable after one normalization round.
    let once = report.to_json();
    let again = VerificationReport::from_json(&once).expect("report output must parse");
    assert_eq!(again.to_json(), once);
    let _ = report.check_summaries();
});
