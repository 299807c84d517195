#![no_main]

use hopfcat::format::{parse_document, write_document};
use libfuzzer_sys::fuzz_target;

// whatever loads must write back to a fixed point
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(doc) = parse_document(text) else { return };
    let written = write_document(&doc);
    let again = parse_document(&written).expect("canonical output parses");
    assert_eq!(again, doc);
    assert_eq!(write_document(&again), written);
});
