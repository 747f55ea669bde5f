#![no_main]

use libfuzzer_sys::fuzz_target;
use ptilde::parse::parse_weight;

fuzz_target!(|data: &[u8]| {
    let Some((&r, rest)) = data.split_first() else { return };
    let rank = (r as usize % 8) + 1;
    let Ok(s) = std::str::from_utf8(rest) else { return };
    if let Ok(w) = parse_weight(s, rank) {
        assert_eq!(w.0.len(), rank);
    }
});
