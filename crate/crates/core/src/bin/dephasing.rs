// Copyright 2026 The dephasing Authors
// SPDX-License-Identifier: Apache-2.0

fn main() {
    std::process::exit(dephasing::cli::run(std::env::args_os()));
}
