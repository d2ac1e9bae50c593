#![no_main]

use dualext::scalar::{parse_scalar, to_fraction_string};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(x) = parse_scalar(s) {
            assert_eq!(parse_scalar(&to_fraction_string(&x)), Ok(x));
        }
    }
});
