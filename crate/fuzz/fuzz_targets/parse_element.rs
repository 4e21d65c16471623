#![no_main]

use std::sync::{Arc, OnceLock};

use libfuzzer_sys::fuzz_target;
use rees_family::{
    parse_element, parse_scalar, BaseRing, FamilyContext, FieldKind, IdealSpec,
    NumericalSemigroup,
};

fn modular_ctx() -> &'static Arc<FamilyContext> {
    static CTX: OnceLock<Arc<FamilyContext>> = OnceLock::new();
    CTX.get_or_init(|| {
        let base = BaseRing::modular(8).expect("8 is a valid modulus");
        let two = parse_scalar(&base, "2").expect("scalar");
        let zero = parse_scalar(&base, "0").expect("scalar");
        let ideal = IdealSpec::new(&base, vec![two]).expect("ideal");
        FamilyContext::new(base, ideal, zero.clone(), zero).expect("context")
    })
}

fn series_ctx() -> &'static Arc<FamilyContext> {
    static CTX: OnceLock<Arc<FamilyContext>> = OnceLock::new();
    CTX.get_or_init(|| {
        let field = FieldKind::prime(5).expect("5 is prime");
        let sgp = NumericalSemigroup::from_generators(&[2, 3]).expect("semigroup");
        let base = BaseRing::series(field, sgp, 16).expect("series base");
        let gen = parse_scalar(&base, "X^3").expect("scalar");
        let a = parse_scalar(&base, "0").expect("scalar");
        let b = parse_scalar(&base, "-X^5").expect("scalar");
        let ideal = IdealSpec::new(&base, vec![gen]).expect("ideal");
        FamilyContext::new(base, ideal, a, b).expect("context")
    })
}

// First byte picks the context, the rest is the literal. Accepted inputs
// must print in canonical form and reparse to the same value.
fuzz_target!(|data: &[u8]| {
    let [ctx_byte, rest @ ..] = data else { return };
    let ctx = if ctx_byte % 2 == 0 {
        modular_ctx()
    } else {
        series_ctx()
    };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    if let Ok(x) = parse_element(ctx, text) {
        let printed = x.to_string();
        let again = parse_element(ctx, &printed).expect("canonical form reparses");
        assert_eq!(again.to_string(), printed);
    }
});
