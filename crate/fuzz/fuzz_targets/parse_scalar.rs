#![no_main]

use hopfcat::Field;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    for field in [Field::Rational, Field::Prime(2), Field::Prime(7), Field::Prime(18446744073709551557)] {
        if let Ok(x) = field.parse_scalar(text) {
            assert_eq!(field.parse_scalar(&x.to_string()).unwrap(), x);
        }
    }
});
