#![no_main]

use libfuzzer_sys::fuzz_target;
use mumford_trop::valued_field::parse_rat;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(r) = parse_rat(text) {
        assert_eq!(parse_rat(&r.to_string()).expect("printed rational parses"), r);
    }
});
