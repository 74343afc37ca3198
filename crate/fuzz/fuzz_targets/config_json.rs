// Copyright 2026 The laxflow Authors
// SPDX-License-Identifier: Apache-2.0

#![no_main]

use libfuzzer_sys::fuzz_target;

// Config files and manifests, through validation. Nothing is executed.
fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(cfg) = laxflow_cli::output::load_config(text) {
            let _ = cfg.resolve();
        }
    }
});
