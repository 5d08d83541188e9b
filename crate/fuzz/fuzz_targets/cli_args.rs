//! Argument parsing only; commands are not executed.
#![no_main]

use ads3s3_cli::parse_args;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let text = String::from_utf8_lossy(data);
    let args = std::iter::once("ads3s3").chain(text.split(['\0', '\n']));
    let _ = parse_args(args);
});
