#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(config) = gridscan::io::parse_experiment_config(text) {
            let _ = config.n_samples();
            for method in &config.methods {
                let _ = method.label();
            }
        }
    }
});
