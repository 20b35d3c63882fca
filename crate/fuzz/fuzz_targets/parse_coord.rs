#![no_main]

use bimatch::geom::{format_coord, parse_coord};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Some(c) = std::str::from_utf8(data).ok().and_then(parse_coord) {
        assert_eq!(parse_coord(&format_coord(&c)), Some(c));
    }
});
