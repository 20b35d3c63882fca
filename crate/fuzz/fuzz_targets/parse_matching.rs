#![no_main]

use std::sync::{Arc, OnceLock};

use bimatch::classify::classify;
use bimatch::io::parse_matching;
use bimatch::testlab::gen_random;
use bimatch::PointSet;
use libfuzzer_sys::fuzz_target;

fn base() -> &'static Arc<PointSet> {
    static BASE: OnceLock<Arc<PointSet>> = OnceLock::new();
    BASE.get_or_init(|| Arc::new(gen_random(4, 7, 20)))
}

// Matchings that validate must also classify without an internal error.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(m) = parse_matching(text, base()) {
        classify(&m).expect("a valid matching classifies");
    }
});
