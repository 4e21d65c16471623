#![no_main]

use libfuzzer_sys::fuzz_target;
use rees_family::parse_config_text;

// Accepted configs must survive a print/reparse round trip unchanged.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(map) = parse_config_text(text) {
        let printed: String = map
            .iter()
            .map(|(k, v)| format!("{k}={v}\n"))
            .collect();
        let again = parse_config_text(&printed).expect("canonical form reparses");
        assert_eq!(again, map);
    }
});
