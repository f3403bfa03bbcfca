#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(gridscan::io::ParsedTimeSeries::Dq(series)) =
            gridscan::io::parse_timeseries_csv(text)
        {
            // a parsed series must survive its own writer, provided the
            // regenerated time column stays representable
            let span = series.sample_period() * (series.len() - 1) as f64;
            if !span.is_finite() {
                return;
            }
            let rewritten = gridscan::io::write_dq_csv(&series);
            match gridscan::io::parse_timeseries_csv(&rewritten) {
                Ok(gridscan::io::ParsedTimeSeries::Dq(back)) => {
                    assert_eq!(back.samples(), series.samples());
                }
                other => panic!("rewritten series failed to parse: {other:?}"),
            }
        }
    }
});
