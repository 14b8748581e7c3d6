#![no_main]

use eh_core::turns::TurnExpansionMapping;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let _ = TurnExpansionMapping::parse(data);
});
