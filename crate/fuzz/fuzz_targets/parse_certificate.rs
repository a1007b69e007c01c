#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(cert) = fdz::format::parse_certificate(text) {
        let canonical = fdz::format::serialize_certificate(&cert);
        let reparsed = fdz::format::parse_certificate(&canonical)
            .expect("canonical serialization must parse");
        assert_eq!(cert, reparsed, "round trip must preserve the certificate");
    }
});
