#![no_main]

use libfuzzer_sys::fuzz_target;

// The presentation parser must never panic on arbitrary input, and anything
// it accepts must serialize to a canonical form that parses back to the
// same bytes.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(parsed) = fdz::format::parse_presentation(text) {
        let _ = parsed.validate();
        let canonical = fdz::format::serialize_presentation(&parsed);
        let reparsed = fdz::format::parse_presentation(&canonical)
            .expect("canonical serialization must parse");
        assert_eq!(
            canonical,
            fdz::format::serialize_presentation(&reparsed),
            "serialization must be a fixed point"
        );
    }
});
