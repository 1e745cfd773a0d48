#![no_main]

use std::sync::OnceLock;

use libfuzzer_sys::fuzz_target;
use permdec::{make_field, FieldSpec};

fn fields() -> &'static [FieldSpec] {
    static FIELDS: OnceLock<Vec<FieldSpec>> = OnceLock::new();
    FIELDS.get_or_init(|| {
        [(2, 4), (3, 3), (5, 2)]
            .iter()
            .map(|&(p, m)| make_field(p, m, None).unwrap())
            .collect()
    })
}

fuzz_target!(|data: &[u8]| {
    let Some((&pick, rest)) = data.split_first() else {
        return;
    };
    let Ok(s) = std::str::from_utf8(rest) else {
        return;
    };
    let f = &fields()[usize::from(pick) % 3];
    if let Ok(x) = f.parse_element(s) {
        // the printed form parses back to the same element
        assert_eq!(f.parse_element(&x.to_string()).unwrap(), x);
    }
});
