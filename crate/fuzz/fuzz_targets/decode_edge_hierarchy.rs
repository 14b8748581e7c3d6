#![no_main]

use eh_core::io::{decode_edge_hierarchy, encode_edge_hierarchy};
use eh_core::{EhQuery, StallPolicy};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(eh) = decode_edge_hierarchy(data) {
        assert_eq!(encode_edge_hierarchy(&eh), data);
        // a structurally valid file must be safe to query
        let n = eh.vertex_count() as u32;
        if n > 0 {
            let mut q = EhQuery::new(&eh);
            let _ = q.query(0, n - 1, StallPolicy::InAdvance);
        }
    }
});
