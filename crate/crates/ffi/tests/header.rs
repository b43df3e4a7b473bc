use std::process::Command;

const HEADER: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/include/normsurf.h");

fn compiles(compiler: &str, lang: &str) {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use.c");
    std::fs::write(
        &src,
        format!(
            "#include \"{HEADER}\"\n\
             int main(void) {{\n\
               NsTriangulation *t = 0;\n\
               NsPipelineConfig c = ns_pipeline_config_default();\n\
               enum NsStatus s = ns_triangulation_parse(\"\", &t);\n\
               return (int)s + (int)c.depth + (s == NS_STATUS_OK);\n\
             }}\n"
        ),
    )
    .unwrap();
    let status = Command::new(compiler)
        .args(["-x", lang, "-fsyntax-only", "-Wall", "-Werror"])
        .arg(&src)
        .status()
        .unwrap();
    assert!(status.success(), "{compiler} rejected the header");
}

#[test]
fn header_is_valid_c() {
    compiles("cc", "c");
}

#[test]
fn header_is_valid_cpp() {
    compiles("c++", "c++");
}
