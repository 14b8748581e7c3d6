#![no_main]

use eh_core::dimacs::{parse_dimacs, parse_dimacs_str, to_dimacs_string};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(g) = parse_dimacs(data) {
        // whatever parses must survive a write/parse cycle unchanged
        let again = parse_dimacs_str(&to_dimacs_string(&g)).expect("written graph parses");
        assert_eq!(again, g);
    }
});
