#![no_main]

use hopfcat::modflat::Ring;
use hopfcat::vcat::Variant;
use hopfcat::Field;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(f) = text.parse::<Field>() {
        assert_eq!(f.to_string().parse::<Field>().unwrap(), f);
    }
    if let Ok(r) = text.parse::<Ring>() {
        assert_eq!(r.to_string().parse::<Ring>().unwrap(), r);
    }
    let _ = text.parse::<Variant>();
});
