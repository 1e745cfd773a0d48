#![no_main]

use libfuzzer_sys::fuzz_target;
use permdec::{FieldDescriptor, FieldSpec};

fuzz_target!(|data: &[u8]| {
    let Ok(d) = serde_json::from_slice::<FieldDescriptor>(data) else {
        return;
    };
    if let Ok(f) = FieldSpec::from_descriptor(&d) {
        assert_eq!(f.descriptor(), d);
    }
});
