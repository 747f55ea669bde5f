#![no_main]

use libfuzzer_sys::fuzz_target;
use ptilde::parse::parse_pi_prime;

fuzz_target!(|data: &[u8]| {
    let Some((&r, rest)) = data.split_first() else { return };
    let rank = (r as usize % 8) + 1;
    let Ok(s) = std::str::from_utf8(rest) else { return };
    if let Ok(ps) = parse_pi_prime(s, rank) {
        assert!(ps.windows(2).all(|w| w[0] < w[1]), "sorted, no duplicates");
        assert!(ps.iter().all(|&p| p < rank), "0-based and in range");
    }
});
