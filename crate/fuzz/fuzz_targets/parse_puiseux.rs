#![no_main]

use libfuzzer_sys::fuzz_target;
use mumford_trop::valued_field::{format_puiseux, parse_puiseux};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(x) = parse_puiseux(text) {
        let printed = format_puiseux(&x);
        assert_eq!(parse_puiseux(&printed).expect("printed series parses"), x);
    }
});
