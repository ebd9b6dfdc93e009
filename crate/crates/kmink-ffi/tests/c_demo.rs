//! Compiles `examples/demo.c` against the generated header and the static
//! library with the system C compiler, runs it, and requires a clean exit.

use std::path::PathBuf;
use std::process::Command;

#[test]
fn c_demo_compiles_and_passes() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let target_dir = std::env::var_os("CARGO_TARGET_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| manifest.join("../../target"));
    // `cargo build` uplifts the archive into debug/, `cargo test` leaves
    // it in debug/deps/ only; accept either location.
    let staticlib = [
        target_dir.join("debug/libkmink_ffi.a"),
        target_dir.join("debug/deps/libkmink_ffi.a"),
    ]
    .into_iter()
    .find(|p| p.exists())
    .expect("static library built alongside the tests");

    let out_dir = target_dir.join("c-demo");
    std::fs::create_dir_all(&out_dir).expect("scratch dir");
    let exe = out_dir.join("demo");

    let compile = Command::new("cc")
        .arg(manifest.join("examples/demo.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&staticlib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .output()
        .expect("cc runs");
    assert!(
        compile.status.success(),
        "cc failed:\n{}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = Command::new(&exe).output().expect("demo runs");
    let stdout = String::from_utf8_lossy(&run.stdout);
    assert!(
        run.status.success() && stdout.contains("demo passed"),
        "demo output:\n{stdout}\n{}",
        String::from_utf8_lossy(&run.stderr)
    );
}
