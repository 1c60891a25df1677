#![no_main]

use libfuzzer_sys::fuzz_target;
use mumford_trop_cli::{instance_to_toml, parse_instance, CliError};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    match parse_instance(text) {
        Ok(instance) => {
            let printed = instance_to_toml(&instance);
            let again = parse_instance(&printed).expect("printed instance parses");
            assert_eq!(again.schottky, instance.schottky);
        }
        Err(CliError::Parse { line, column, .. }) => {
            assert!(line >= 1 && column >= 1);
            assert!(line <= text.lines().count().max(1) + 1);
        }
        Err(_) => {}
    }
});
