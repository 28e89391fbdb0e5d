fn main() {
    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").unwrap();
    cbindgen::Builder::new()
        .with_crate(&crate_dir)
        .with_language(cbindgen::Language::C)
        .with_include_guard("HOCAT_H")
        .generate()
        .expect("header generation failed")
        .write_to_file(std::path::Path::new(&crate_dir).join("include/hocat.h"));
}
