use std::path::PathBuf;

use sweedler::encodings::{golden_file_name, golden_names, named_proof};
use sweedler::syntax::{check_proof, parse_proof, print_proof, Formula};

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("proofs")
}

#[test]
fn bundled_proof_files_match_the_encodings() {
    let a = Formula::var("A", 2);
    for name in golden_names() {
        let path = dir().join(golden_file_name(&name));
        let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let body = text.split_once('\n').map(|(_, rest)| rest).unwrap_or_default();
        let expected = named_proof(&name, &a).unwrap();
        assert_eq!(body, print_proof(&expected), "{name}");
        let parsed = parse_proof(&text).unwrap();
        assert_eq!(parsed, expected, "{name}");
        check_proof(&parsed).unwrap();
    }
}

#[test]
fn every_file_is_a_bundled_proof() {
    let known: Vec<String> = golden_names().iter().map(|n| golden_file_name(n)).collect();
    for entry in std::fs::read_dir(dir()).unwrap() {
        let name = entry.unwrap().file_name().into_string().unwrap();
        assert!(known.contains(&name), "stray file {name}");
    }
}
