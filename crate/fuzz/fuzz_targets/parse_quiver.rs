#![no_main]

use dualext::{parse_quiver, print_quiver};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(q) = parse_quiver(text) {
        // whatever parses must survive its own printed form
        let again = parse_quiver(&print_quiver(&q)).expect("printed quiver parses");
        assert_eq!(again, q);
    }
});
