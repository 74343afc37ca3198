// Copyright 2026 The laxflow Authors
// SPDX-License-Identifier: Apache-2.0

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(v) = laxflow_cli::expr::parse_time(text) {
            assert!(v.is_finite());
        }
    }
});
