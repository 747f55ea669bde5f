#![no_main]

use libfuzzer_sys::fuzz_target;
use ptilde::parse::parse_type;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(t) = parse_type(s) {
        // accepted labels must survive a round trip through Display
        let again = parse_type(&t.to_string()).unwrap();
        assert_eq!(t, again);
    }
});
