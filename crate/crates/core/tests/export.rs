//! Memory-init and descriptor files written to disk.

use std::fs;

use lutsplit::catalog;
use lutsplit::hwmodel::{export_descriptor, export_mem_init, load_descriptor, Descriptor};
use lutsplit::segmentation::{binary_split, plan, sequential_split, SplitConfig};
use lutsplit::spacing::CountRule;
use lutsplit::{build_table, Error, FixedPointFormat, SegmentedTable};

const EA_LOG: f64 = 1.0 / 8192.0;

fn fmt(s: &str) -> FixedPointFormat {
    s.parse().unwrap()
}

fn log_binary() -> SegmentedTable {
    let f = catalog::log();
    let p = binary_split(&f, &SplitConfig::new(0.3, EA_LOG), 0.625, 15.625).unwrap();
    build_table(
        &f,
        &plan(&f, EA_LOG, &p).unwrap(),
        fmt("0:32:27"),
        fmt("1:32:29"),
    )
    .unwrap()
}

fn log_sequential() -> SegmentedTable {
    let f = catalog::log();
    let cfg = SplitConfig::new(0.3, EA_LOG)
        .with_epsilon(0.3)
        .with_count_rule(CountRule::Floor);
    let p = sequential_split(&f, &cfg, 0.625, 15.625).unwrap();
    build_table(
        &f,
        &plan(&f, EA_LOG, &p).unwrap(),
        fmt("0:32:27"),
        fmt("1:32:29"),
    )
    .unwrap()
}

#[test]
fn mem_init_has_one_word_per_entry() {
    let t = log_binary();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("log.mem");
    export_mem_init(&t, &path).unwrap();
    let text = fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), t.footprint());
    assert!(lines
        .iter()
        .all(|l| l.len() == 8 && l.chars().all(|c| c.is_ascii_hexdigit())));
    let first = t.out_fmt().quantize(0.625f64.ln()).unwrap();
    assert_eq!(lines[0], format!("{:08X}", t.out_fmt().encode(first)));
    assert!(!text.contains('\r'));
}

#[test]
fn failed_write_leaves_nothing_behind() {
    let t = log_binary();
    let dir = tempfile::tempdir().unwrap();
    // Renaming a file over a directory fails after the temp file is written.
    let target = dir.path().join("taken");
    fs::create_dir(&target).unwrap();
    assert!(matches!(
        export_descriptor(&t, &target),
        Err(Error::Io { .. })
    ));
    let missing = dir.path().join("no/such/dir/t.toml");
    assert!(matches!(
        export_mem_init(&t, &missing),
        Err(Error::Io { .. })
    ));
    let names: Vec<_> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    assert_eq!(names, vec![std::ffi::OsString::from("taken")]);
}

#[test]
fn sequential_descriptor_round_trip() {
    let t = log_sequential();
    assert_eq!(t.segments().len(), 6);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("seq.toml");
    export_descriptor(&t, &path).unwrap();
    let back = load_descriptor(&path).unwrap();
    assert_eq!(back.boundaries(), t.boundaries());
    assert_eq!(back.words(), t.words());
    assert_eq!(back.footprint(), t.footprint());
    for k in 0..=1000 {
        let x = 0.625 + 15.0 * k as f64 / 1000.0;
        assert_eq!(back.evaluate_real(x).unwrap(), t.evaluate_real(x).unwrap());
    }
}

#[test]
fn descriptor_keys_are_stable() {
    let text = Descriptor::from_table(&log_binary()).to_toml().unwrap();
    let doc: toml::Table = text.parse().unwrap();
    let mut keys: Vec<&str> = doc.keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(
        keys,
        [
            "boundaries",
            "bram",
            "ea",
            "footprint",
            "function",
            "in_format",
            "out_format",
            "schema",
            "segments",
            "selector_depth",
            "selector_preorder",
            "values",
        ]
    );
    assert_eq!(doc["schema"].as_str(), Some("lutsplit-table/1"));
    assert_eq!(
        doc["footprint"].as_integer(),
        Some(log_binary().footprint() as i64)
    );
}

#[test]
fn tampered_descriptor_is_rejected() {
    let text = Descriptor::from_table(&log_binary()).to_toml().unwrap();
    let bad = text.replacen("footprint = ", "footprint = 1", 1);
    let err = Descriptor::from_toml(&bad).and_then(Descriptor::into_table);
    assert!(matches!(err, Err(Error::Parse(_))), "{err:?}");
}
