use std::path::{Path, PathBuf};
use std::process::Command;

use chimera_clique::best_native_clique;
use chimera_clique::topology::{ChimeraCoord, ChimeraShape, HardwareGraph};

fn header() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include/chimera_clique.h")
}

#[test]
fn declares_every_entry_point() {
    let text = std::fs::read_to_string(header()).unwrap();
    let src = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("src/lib.rs")).unwrap();
    let exported: Vec<&str> = src
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exported.len() >= 18);
    for name in exported {
        assert!(text.contains(&format!("{name}(")), "{name} missing from header");
    }
    for item in ["typedef struct CcGraph CcGraph;", "typedef struct CcEmbedding CcEmbedding;", "CC_STATUS_OK = 0"] {
        assert!(text.contains(item), "{item}");
    }
}

// Compiles and runs a C program against the header and the static library.
#[test]
fn c_program_links_and_runs() {
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler; skipped");
        return;
    }
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libchimera_clique_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipped", lib.display());
        return;
    }
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR"));
    let src = dir.join("smoke.c");
    std::fs::write(
        &src,
        r#"
#include <stdio.h>
#include "chimera_clique.h"
int main(void) {
    CcGraph *g = NULL;
    CcEmbedding *e = NULL;
    size_t size = 0, violations = 1;
    if (cc_graph_new(4, 4, 4, &g) != CC_STATUS_OK) return 1;
    if (cc_graph_kill_qubit(g, 2, 3, 1, 4) != CC_STATUS_OK) return 2;
    if (cc_embed(g, 0, &e) != CC_STATUS_OK) return 3;
    if (cc_embedding_clique_size(e, &size) != CC_STATUS_OK) return 4;
    if (cc_validate(g, e, &violations, NULL) != CC_STATUS_OK || violations != 0) return 5;
    if (cc_graph_new(1, 1, 1, NULL) != CC_STATUS_NULL_POINTER) return 6;
    printf("%zu\n", size);
    cc_embedding_free(e);
    cc_graph_free(g);
    return 0;
}
"#,
    )
    .unwrap();
    let bin = dir.join("smoke");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status);
    let g = HardwareGraph::build(ChimeraShape::new(4, 4, 4).unwrap())
        .unwrap()
        .without_qubits(&[ChimeraCoord::new(2, 3, 1, 4)])
        .unwrap();
    let expected = best_native_clique(&g).unwrap().clique_size();
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), expected.to_string());
}
