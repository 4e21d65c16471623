#![no_main]

use libfuzzer_sys::fuzz_target;
use rees_family::parse_semigroup;

// Accepted inputs must print in canonical form and reparse to the same value.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(s) = parse_semigroup(text) {
        let printed = s.to_string();
        let again = parse_semigroup(&printed).expect("canonical form reparses");
        assert_eq!(again.to_string(), printed);
    }
});
