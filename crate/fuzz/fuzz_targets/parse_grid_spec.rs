#![no_main]

use ads3s3::io::parse_grid_spec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let text = String::from_utf8_lossy(data);
    if let Ok(spec) = parse_grid_spec(&text) {
        for axis in &spec.axes {
            assert!(axis.count > 0 && axis.lo <= axis.hi);
            // stay cheap on large counts
            if axis.count <= 4096 {
                let v = axis.values();
                assert_eq!(v.len(), axis.count);
                assert!(v.iter().all(|x| x.is_finite()));
            }
        }
    }
});
