//! Any text accepted by the .tri parser must serialize back to a canonical
//! form that reparses to the same triangulation.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(t) = trigon::parse_tri(text) else { return };
    let canonical = trigon::serialize_tri(&t);
    let back = trigon::parse_tri(&canonical).expect("canonical text must reparse");
    assert_eq!(back, t);
    assert_eq!(trigon::serialize_tri(&back), canonical);
});
