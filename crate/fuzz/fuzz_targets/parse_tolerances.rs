#![no_main]

use ads3s3::io::parse_tolerances;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let text = String::from_utf8_lossy(data);
    let _ = parse_tolerances(&text);
});
