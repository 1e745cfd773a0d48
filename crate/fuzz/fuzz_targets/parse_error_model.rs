#![no_main]

use std::sync::OnceLock;

use libfuzzer_sys::fuzz_target;
use permdec::sim::ErrorModel;
use permdec::{make_field, FieldSpec};

fn field() -> &'static FieldSpec {
    static FIELD: OnceLock<FieldSpec> = OnceLock::new();
    FIELD.get_or_init(|| make_field(3, 2, None).unwrap())
}

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(m) = ErrorModel::parse(field(), s) {
        assert_eq!(ErrorModel::parse(field(), &m.to_string()).unwrap(), m);
    }
});
