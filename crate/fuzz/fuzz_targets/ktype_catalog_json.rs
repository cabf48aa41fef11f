//! Catalog files and the `--ktype` selector grammar. Resolution may fail on
//! inconsistent records but must not panic.
#![no_main]

use libfuzzer_sys::fuzz_target;
use spherical_core::rankone::{KTypeCatalog, KTypeSelector, RankOneSpace};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(sel) = KTypeSelector::parse(text) {
        let h2 = RankOneSpace::new(1, 0).unwrap();
        let _ = sel.resolve(&h2, None);
    }
    let Ok(cat) = KTypeCatalog::from_json_str(text) else { return };
    let again = KTypeCatalog::from_json_str(&cat.to_json_string()).expect("serialized catalog parses");
    assert_eq!(cat, again);
    for rec in cat.records() {
        let _ = rec.resolve();
    }
});
