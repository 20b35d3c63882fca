#![no_main]

use bimatch::io::{parse_pointset, serialize_pointset};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    // anything accepted must survive a round trip unchanged
    if let Ok(ps) = parse_pointset(text) {
        let again = parse_pointset(&serialize_pointset(&ps)).expect("serialized point set parses");
        assert_eq!(again.points(), ps.points());
    }
});
