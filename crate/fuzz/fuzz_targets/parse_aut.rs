#![no_main]

use std::sync::OnceLock;

use libfuzzer_sys::fuzz_target;
use permdec::{CurveAut, CurveSpec, PointOrder, PointTable};

fn setup() -> &'static [(CurveSpec, PointTable)] {
    static SETUP: OnceLock<Vec<(CurveSpec, PointTable)>> = OnceLock::new();
    SETUP.get_or_init(|| {
        [
            CurveSpec::hermitian(3).unwrap(),
            CurveSpec::norm_trace(2, 3).unwrap(),
        ]
        .into_iter()
        .map(|c| {
            let t = c.enumerate_points(PointOrder::Lex).unwrap();
            (c, t)
        })
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
    let (curve, table) = &setup()[usize::from(pick) % 2];
    if let Ok(a) = CurveAut::parse(curve, s) {
        if let Ok(p) = a.induced_permutation(table) {
            assert_eq!(p.compose(&p.inverse()), p.inverse().compose(&p));
        }
    }
});
