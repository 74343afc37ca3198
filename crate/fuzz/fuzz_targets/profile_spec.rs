// Copyright 2026 The laxflow Authors
// SPDX-License-Identifier: Apache-2.0

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = laxflow_cli::specs::parse_profile(text, 0);
    }
});
