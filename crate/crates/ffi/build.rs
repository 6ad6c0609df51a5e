fn main() {
    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").expect("set by cargo");
    let config = cbindgen::Config {
        language: cbindgen::Language::C,
        include_guard: Some("LEVELSET_H".to_string()),
        cpp_compat: true,
        documentation: true,
        header: Some("/* C interface to the levelset measure-analysis library. */".to_string()),
        enumeration: cbindgen::EnumConfig {
            prefix_with_name: true,
            ..Default::default()
        },
        ..Default::default()
    };
    match cbindgen::Builder::new()
        .with_crate(&crate_dir)
        .with_config(config)
        .generate()
    {
        Ok(bindings) => {
            bindings.write_to_file(format!("{crate_dir}/include/levelset.h"));
        }
        // Expansion errors surface on the normal compile; don't fail
        // the build twice.
        Err(e) => println!("cargo:warning=header generation skipped: {e}"),
    }
    println!("cargo:rerun-if-changed=src/lib.rs");
}
