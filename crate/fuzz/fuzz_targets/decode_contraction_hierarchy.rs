#![no_main]

use eh_core::io::{decode_contraction_hierarchy, encode_contraction_hierarchy};
use eh_core::ChQuery;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(ch) = decode_contraction_hierarchy(data) {
        assert_eq!(encode_contraction_hierarchy(&ch), data);
        let n = ch.vertex_count() as u32;
        if n > 0 {
            let _ = ChQuery::new(&ch).query(0, n - 1, true);
        }
    }
});
