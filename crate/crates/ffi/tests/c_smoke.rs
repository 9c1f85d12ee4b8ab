// Copyright 2026 The dephasing Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;
use std::process::Command;

fn target_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent()
        .and_then(|deps| deps.parent())
        .unwrap()
        .to_path_buf()
}

#[test]
fn header_exposes_every_entry_point() {
    let header = include_str!("../include/dephasing.h");
    for name in [
        "dph_last_error_message",
        "dph_version",
        "dph_model_new",
        "dph_model_free",
        "dph_gamma",
        "dph_phase_integral",
        "dph_phi",
        "dph_p_x",
        "dph_c_x",
        "dph_eval_series",
        "dph_renormalize",
        "dph_dp_dtau",
        "dph_short_time_coeffs",
        "dph_crossover_time",
        "dph_gamma_quadrature",
        "dph_discrete_bath_new",
        "dph_discrete_bath_free",
        "dph_discrete_bath_sums",
    ] {
        let declared = [" ", "*"]
            .iter()
            .any(|lead| header.contains(&format!("{lead}{name}(")));
        assert!(declared, "{name} missing");
    }
    assert!(header.contains("typedef struct DphModel DphModel;"));
}

#[test]
fn c_program_links_against_static_library() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let lib = target_dir().join("libdephasing_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let status = Command::new(std::env::var("CC").unwrap_or_else(|_| "cc".into()))
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(manifest.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler available");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
