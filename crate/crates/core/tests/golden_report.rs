use std::path::{Path, PathBuf};

use modlie::golden::{sha256_hex, GoldenError, GoldenStore};
use modlie::report::{verify, Statement, Verdict, VerifyOptions};

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data")
}

fn copy_tree(from: &Path, to: &Path) {
    std::fs::create_dir_all(to).unwrap();
    for entry in std::fs::read_dir(from).unwrap() {
        let entry = entry.unwrap();
        let target = to.join(entry.file_name());
        if entry.file_type().unwrap().is_dir() {
            copy_tree(&entry.path(), &target);
        } else {
            std::fs::copy(entry.path(), target).unwrap();
        }
    }
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("modlie-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

#[test]
fn embedded_store_matches_the_data_directory() {
    let embedded = GoldenStore::embedded().unwrap();
    let on_disk = GoldenStore::from_dir(&data_dir()).unwrap();
    let paths: Vec<_> = embedded.paths().collect();
    assert_eq!(paths, on_disk.paths().collect::<Vec<_>>());
    assert_eq!(paths.len(), 40);
    for p in paths {
        assert_eq!(embedded.text(p).unwrap(), on_disk.text(p).unwrap());
        assert_eq!(embedded.checksum(p).unwrap(), sha256_hex(embedded.text(p).unwrap().as_bytes()));
    }
}

#[test]
fn tampered_copy_is_rejected() {
    let dir = scratch("tamper");
    copy_tree(&data_dir(), &dir);
    let victim = dir.join("cochains/o5-p3/c0.json");
    let text = std::fs::read_to_string(&victim).unwrap();
    std::fs::write(&victim, text.replacen("1]", "2]", 1)).unwrap();
    match GoldenStore::from_dir(&dir) {
        Err(GoldenError::Checksum { path, .. }) => assert_eq!(path, "cochains/o5-p3/c0.json"),
        other => panic!("expected a checksum error, got {other:?}"),
    }
    std::fs::remove_file(&victim).unwrap();
    assert!(matches!(GoldenStore::from_dir(&dir), Err(GoldenError::Missing(_))));
    std::fs::remove_dir_all(&dir).unwrap();
    assert!(matches!(GoldenStore::from_dir(&dir), Err(GoldenError::Missing(_))));
}

#[test]
fn statement_ids_round_trip() {
    for s in Statement::ALL {
        assert_eq!(s.id().parse::<Statement>().unwrap(), s);
    }
    assert!("thm9".parse::<Statement>().is_err());
}

#[test]
fn certificates_are_deterministic_and_record_their_inputs() {
    let store = GoldenStore::embedded().unwrap();
    let opts = VerifyOptions::default();
    for s in [Statement::H2P3, Statement::H2P2, Statement::Thm3, Statement::Claim2] {
        let a = verify(s, &opts, &store).unwrap();
        let b = verify(s, &opts, &store).unwrap();
        assert_eq!(a.to_json().to_string(), b.to_json().to_string());
        assert_eq!(a.verdict, Verdict::Verified, "{s}");
        for (path, sum) in &a.input_checksums {
            assert_eq!(store.checksum(path), Some(sum.as_str()));
        }
        assert!(!a.operations.is_empty());
    }
    let h2 = verify(Statement::H2P3, &opts, &store).unwrap();
    assert_eq!(h2.evidence["dim"], 5);
    assert!(h2.input_checksums.contains_key("algebras/o5-p3.json"));
}

#[test]
fn wrong_characteristic_is_an_error() {
    let store = GoldenStore::embedded().unwrap();
    let opts = VerifyOptions { p: Some(2), ..Default::default() };
    assert!(verify(Statement::H2P3, &opts, &store).is_err());
    let opts = VerifyOptions { p: Some(2), ..Default::default() };
    assert_eq!(verify(Statement::Claim2, &opts, &store).unwrap().verdict, Verdict::Verified);
}
