#![no_main]

use std::sync::OnceLock;

use libfuzzer_sys::fuzz_target;
use permdec::code::{build_code, hermitian_info_positions};
use permdec::decoder::{parse_word, permutation_decode};
use permdec::pdset::pd_set_group;
use permdec::{CodeSpec, CurveSpec, PdSet, PointOrder};

fn setup() -> &'static (CodeSpec, PdSet) {
    static SETUP: OnceLock<(CodeSpec, PdSet)> = OnceLock::new();
    SETUP.get_or_init(|| {
        let curve = CurveSpec::hermitian(2).unwrap();
        let code = build_code(&curve, 3, PointOrder::Orbit).unwrap();
        let info = hermitian_info_positions(&code).unwrap().info;
        let code = code.systematic_form(&info).unwrap();
        let pd = pd_set_group(&code, code.t()).unwrap();
        (code, pd)
    })
}

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    let (code, pd) = setup();
    let Ok(y) = parse_word(code.field(), code.n(), s) else {
        return;
    };
    let res = permutation_decode(code, pd, &y).unwrap();
    if let Some(c) = res.codeword {
        assert!(code.contains(&c));
        let dist = c.iter().zip(&y).filter(|(a, b)| a != b).count();
        assert!(dist <= code.t());
    }
});
