//! Every command-line value parser. First byte picks the parser.
#![no_main]

use libfuzzer_sys::fuzz_target;
use spherical_cli::parse;

fuzz_target!(|data: &[u8]| {
    let Some((&which, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    match which % 6 {
        0 => {
            if let Ok(z) = parse::parse_complex(text) {
                let back = parse::parse_complex(&parse::format_complex(z)).expect("formatted value parses");
                assert_eq!(back, z);
            }
        }
        1 => {
            if let Ok(grid) = parse::parse_grid(text) {
                assert!(grid.len() <= parse::MAX_GRID_POINTS);
            }
        }
        2 => {
            let _ = parse::parse_lambda(text);
        }
        3 => {
            if let Ok(w) = parse::parse_word(text) {
                assert!(w.word_len() <= parse::MAX_WORD_LEN);
            }
        }
        4 => {
            let _ = parse::parse_space(text);
        }
        _ => {
            let _ = parse::parse_methods(text);
        }
    }
});
