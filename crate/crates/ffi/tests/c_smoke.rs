//! Compiles and runs a small C program against the generated header and the
//! static library, exercising the ABI end to end.

use std::path::PathBuf;
use std::process::Command;

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "lambda_umbral.h"

int main(void) {
    LumPoly *poly = NULL;
    if (lum_poly_bernoulli(1, 2, &poly) != LUM_STATUS_OK) return 1;

    char *text = NULL;
    if (lum_poly_eval(poly, "0", "0", &text) != LUM_STATUS_OK) return 2;
    /* The classical second Bernoulli number. */
    if (strcmp(text, "1/6") != 0) { fprintf(stderr, "got %s\n", text); return 3; }
    lum_string_free(text);

    char *json = NULL;
    if (lum_poly_to_json(poly, &json) != LUM_STATUS_OK) return 4;
    LumPoly *copy = NULL;
    if (lum_poly_parse_json(json, &copy) != LUM_STATUS_OK) return 5;
    bool equal = false;
    if (lum_poly_equal(poly, copy, &equal) != LUM_STATUS_OK || !equal) return 6;
    lum_string_free(json);
    lum_poly_free(copy);
    lum_poly_free(poly);

    if (lum_verify("eq7", 5, NULL) != LUM_STATUS_OK) return 7;
    if (lum_bernoulli_order(0, 1, &poly) != LUM_STATUS_INVALID_ARGUMENT) return 8;
    if (lum_last_error_message() == NULL) return 9;

    puts("c smoke ok");
    return 0;
}
"#;

/// The staticlib sits next to the test binary in `deps/` (or one level up
/// after an explicit `cargo build`).
fn find_static_lib() -> Option<PathBuf> {
    let mut dir = std::env::current_exe().expect("test binary path");
    dir.pop();
    let up = dir.parent().map(|p| p.join("liblambda_umbral_ffi.a"));
    [Some(dir.join("liblambda_umbral_ffi.a")), up]
        .into_iter()
        .flatten()
        .find(|candidate| candidate.exists())
}

#[test]
fn c_program_links_and_runs() {
    let cc = ["cc", "gcc", "clang"]
        .iter()
        .find(|cc| Command::new(cc).arg("--version").output().is_ok())
        .copied();
    let Some(cc) = cc else {
        eprintln!("no C compiler found; skipping link smoke test");
        return;
    };

    let static_lib = find_static_lib().expect("staticlib built alongside the tests");

    let include_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let work = std::env::temp_dir().join(format!("lum_c_smoke_{}", std::process::id()));
    std::fs::create_dir_all(&work).unwrap();
    let source = work.join("smoke.c");
    let binary = work.join("smoke");
    std::fs::write(&source, C_PROGRAM).unwrap();

    let output = Command::new(cc)
        .arg(&source)
        .arg("-I")
        .arg(&include_dir)
        .arg(static_lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&binary)
        .output()
        .expect("compiler invocation");
    assert!(
        output.status.success(),
        "C compilation failed:\n{}",
        String::from_utf8_lossy(&output.stderr)
    );

    let run = Command::new(&binary).output().expect("smoke binary runs");
    assert!(
        run.status.success(),
        "smoke binary exited {:?}: {}",
        run.status.code(),
        String::from_utf8_lossy(&run.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&run.stdout), "c smoke ok\n");

    let _ = std::fs::remove_dir_all(&work);
}
