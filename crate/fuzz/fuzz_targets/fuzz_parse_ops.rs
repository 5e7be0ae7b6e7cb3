//! Operation strings must survive a parse, print, reparse cycle.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(ops) = trigon::parse_ops(text) else { return };
    let printed = trigon::ops_string(&ops);
    let back = trigon::parse_ops(&printed).expect("printed ops must reparse");
    assert_eq!(back, ops);
});
