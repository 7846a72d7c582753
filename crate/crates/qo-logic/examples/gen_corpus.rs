//! Regenerates the checked-in formula corpora under `fixtures/corpus/`.
//!
//! Run from anywhere in the workspace:
//!
//! ```text
//! cargo run -p qo-logic --example gen_corpus
//! ```
//!
//! The corpora are pure functions of their seeds, and drift tests
//! compare the files against in-memory regeneration, so editing the
//! files by hand will fail the test suite.

use std::path::PathBuf;

fn main() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/corpus");
    std::fs::create_dir_all(&dir).expect("create fixtures/corpus");

    let sentences = qo_logic::shipped_sentences();
    let path = dir.join("rank2-sentences.txt");
    std::fs::write(&path, qo_logic::render_lines(&sentences)).expect("write sentences");
    println!("wrote {} sentences to {}", sentences.len(), path.display());

    let onevar = qo_logic::shipped_onevar();
    let path = dir.join("rank2-onevar.txt");
    std::fs::write(&path, qo_logic::render_lines(&onevar)).expect("write one-variable corpus");
    println!("wrote {} formulas to {}", onevar.len(), path.display());
}
