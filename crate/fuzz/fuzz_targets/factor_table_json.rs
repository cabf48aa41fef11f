#![no_main]

use libfuzzer_sys::fuzz_target;
use spherical_core::higherrank::FactorKTypeTable;
use spherical_core::rootdata::RootDatum;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(table) = FactorKTypeTable::from_json_str(text) else { return };
    let again = FactorKTypeTable::from_json_str(&table.to_json_string()).expect("serialized table parses");
    assert_eq!(table, again);
    let a2 = RootDatum::a2(2).unwrap();
    let _ = table.validate_against(&a2, table.word());
});
