#![no_main]

use eh_core::StallPolicy;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(p) = s.parse::<StallPolicy>() {
            let _ = p.check_prefix(17);
        }
    }
});
