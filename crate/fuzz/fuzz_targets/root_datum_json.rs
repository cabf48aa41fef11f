#![no_main]

use libfuzzer_sys::fuzz_target;
use spherical_core::rootdata::RootDatum;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(datum) = RootDatum::from_json_str(text) else { return };
    let again = RootDatum::from_json_str(&datum.to_json_string()).expect("serialized datum parses");
    assert_eq!(datum, again);
});
