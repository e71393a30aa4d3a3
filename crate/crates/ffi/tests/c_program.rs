//! Compiles a C program against the generated header and the static library.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "pencil_orbits.h"

int main(void) {
    PoSolid *s = NULL;
    PoClassification c;
    char text[64];
    uint64_t size = 0;
    if (po_solid_from_conics(4, "010000", "000001", &s) != PO_OK) return 1;
    if (po_classify(s, &c) != PO_OK) return 2;
    if (po_solid_to_text(s, text, sizeof text, NULL) != PO_OK) return 3;
    po_solid_free(s);
    if (po_orbit_size(4, c.label, &size) != PO_OK) return 4;
    if (po_solid_from_text("q=4:zz", &s) != PO_PARSE_ERROR) return 5;
    printf("%s %u %llu\n", text, c.label, (unsigned long long)size);
    return 0;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/<test binary>
    let profile_dir = std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf();
    // Test builds only produce the rlib; build the static library alongside.
    let mut build = Command::new(env!("CARGO"));
    build.args(["build", "--quiet", "--lib", "-p", "pencil-orbits-ffi"]);
    if profile_dir.file_name().is_some_and(|n| n == "release") {
        build.arg("--release");
    }
    assert!(build.status().expect("cargo runs").success());
    let lib = profile_dir.join("libpencil_orbits_ffi.a");
    assert!(
        lib.exists(),
        "static library not built at {}",
        lib.display()
    );
    let dir = std::env::temp_dir().join(format!("pencil-orbits-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("main.c");
    let exe = dir.join("main");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-o"])
        .arg(&exe)
        .arg(&src)
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .status()
        .expect("cc runs");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.trim(), "q=4:100000001000000100000010 6 3360");
    std::fs::remove_dir_all(&dir).ok();
}
