#![no_main]

use ads3s3::io::{params_to_json, parse_params_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let text = String::from_utf8_lossy(data);
    if let Ok(p) = parse_params_json(&text) {
        // accepted parameters must serialize to an accepted file
        parse_params_json(&params_to_json(&p)).expect("re-parse");
    }
});
