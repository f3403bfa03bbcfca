#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(config) = gridscan::io::parse_network_config(text) {
            // an accepted config must never panic the builder; it may still
            // be rejected (e.g. non-Hurwitz)
            let _ = gridscan::grid::build_ladder_grid(&config);
        }
    }
});
