#![no_main]

use libfuzzer_sys::fuzz_target;
use permdec::CurveKind;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    // parse the kind only; building large curves is not what is under test
    if let Ok(k) = s.parse::<CurveKind>() {
        assert_eq!(k.to_string().parse::<CurveKind>().unwrap(), k);
    }
});
