//! The generated C header must exist, expose the full surface, and
//! actually work from C.

use std::path::PathBuf;
use std::process::Command;

#[test]
fn generated_header_covers_the_api() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/include/levelset.h");
    let header = std::fs::read_to_string(path).expect("header generated by the build script");
    for symbol in [
        "LEVELSET_H",
        "LsStatus",
        "LsStrategy",
        "LsPart",
        "LsCheckMode",
        "LsOptions",
        "LsMeasure",
        "ls_version",
        "ls_options_default",
        "ls_last_error",
        "ls_measure_parse_json",
        "ls_measure_free",
        "ls_measure_atom_count",
        "ls_analyze_json",
        "ls_range_json",
        "ls_bullies_json",
        "ls_relations_json",
        "ls_check_json",
        "ls_string_free",
    ] {
        assert!(header.contains(symbol), "header lacks {symbol}");
    }
}

#[test]
fn c_smoke_test_compiles_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include = manifest.join("include");
    let demo = manifest.join("csmoke/demo.c");
    // The static library sits next to this test's own artifacts.
    let mut lib_dir = std::env::current_exe().unwrap();
    lib_dir.pop(); // test binary
    lib_dir.pop(); // deps/
    let archive = lib_dir.join("liblevelset_ffi.a");
    assert!(
        archive.exists(),
        "static library missing at {}",
        archive.display()
    );

    let out_dir = std::env::temp_dir().join("levelset-csmoke");
    std::fs::create_dir_all(&out_dir).unwrap();
    let binary = out_dir.join("demo");

    let compile = Command::new("cc")
        .arg(&demo)
        .arg("-I")
        .arg(&include)
        .arg(archive)
        .arg("-lm")
        .arg("-o")
        .arg(&binary)
        .output()
        .expect("cc available");
    assert!(
        compile.status.success(),
        "cc failed: {}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = Command::new(&binary).output().expect("demo runs");
    let stdout = String::from_utf8_lossy(&run.stdout);
    assert!(
        run.status.success(),
        "demo failed: {stdout} {}",
        String::from_utf8_lossy(&run.stderr)
    );
    assert!(stdout.contains("c smoke test passed"), "{stdout}");
}
