#![no_main]

use libfuzzer_sys::fuzz_target;
use rees_family::{parse_series, FieldKind};

// First two bytes pick the field and precision, the rest is the literal.
// Accepted inputs must print in canonical form and reparse to the same value.
fuzz_target!(|data: &[u8]| {
    let [field_byte, prec_byte, rest @ ..] = data else { return };
    let field = match field_byte % 3 {
        0 => FieldKind::Rationals,
        1 => FieldKind::prime(2).expect("2 is prime"),
        _ => FieldKind::prime(5).expect("5 is prime"),
    };
    let precision = u64::from(prec_byte % 64) + 1;
    let Ok(text) = std::str::from_utf8(rest) else { return };
    if let Ok(s) = parse_series(field, precision, text) {
        let printed = s.to_string();
        let again = parse_series(field, precision, &printed).expect("canonical form reparses");
        assert_eq!(again.to_string(), printed);
    }
});
