#![no_main]

use libfuzzer_sys::fuzz_target;
use ptilde::report::{
    CharacterReport, DescribeReport, HwmodReport, OrbitReport, SelftestReport,
    SemiInvariantReport,
};

fn roundtrip<T>(s: &str)
where
    T: serde::Serialize + serde::de::DeserializeOwned + PartialEq + std::fmt::Debug,
{
    if let Ok(v) = serde_json::from_str::<T>(s) {
        let json = serde_json::to_string(&v).unwrap();
        let again: T = serde_json::from_str(&json).unwrap();
        assert_eq!(v, again);
    }
}

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    roundtrip::<DescribeReport>(s);
    roundtrip::<OrbitReport>(s);
    roundtrip::<CharacterReport>(s);
    roundtrip::<SemiInvariantReport>(s);
    roundtrip::<HwmodReport>(s);
    roundtrip::<SelftestReport>(s);
});
