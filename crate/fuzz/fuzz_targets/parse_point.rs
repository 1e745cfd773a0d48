#![no_main]

use std::sync::OnceLock;

use libfuzzer_sys::fuzz_target;
use permdec::{CurveSpec, Point};

fn curve() -> &'static CurveSpec {
    static CURVE: OnceLock<CurveSpec> = OnceLock::new();
    CURVE.get_or_init(|| CurveSpec::hermitian(3).unwrap())
}

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    let c = curve();
    if let Ok(p) = Point::parse(c.field(), s) {
        assert_eq!(Point::parse(c.field(), &p.to_string()).unwrap(), p);
        let _ = c.check_point(p);
    }
});
