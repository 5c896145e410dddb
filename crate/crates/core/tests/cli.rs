use std::path::PathBuf;
use std::process::{Command, Output};

use affine_descent::affine::{AffineWeyl, CertificateRecord, WalkRecord};
use affine_descent::cli::SectionsReport;
use affine_descent::descent::{EquivalenceReport, InvariantReport};
use affine_descent::gkm::{BetaReport, KernelReport, MomentGraph, SectionTuple, SeparationReport};
use affine_descent::rootdata::{Isogeny, RootDatumSummary};
use serde::de::DeserializeOwned;
use serde::Serialize;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_affine-descent")).args(args).output().unwrap()
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Parses the JSON output and checks it re-serializes to the same text.
fn round_trip<T: DeserializeOwned + Serialize>(o: &Output) -> T {
    let text = stdout(o);
    let v: T = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", text);
    v
}

#[test]
fn stabilizer_at_origin_lists_order_two() {
    let o = bin(&["stabilizer", "--type", "A1", "--point", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("order      2"));
    assert!(text.contains("t[0] w[1]"));
}

#[test]
fn adjacency_check_length_one_rows_are_equal() {
    let o = bin(&[
        "adjacency-check",
        "--type",
        "A1",
        "--interval",
        "s0",
        "--maxdeg",
        "6",
        "--hbar",
        "1",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("degree,dim_adjacency,dim_kernel,equal"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 7);
    for (d, r) in rows.iter().enumerate() {
        assert_eq!(*r, format!("{d},{},{},true", 2 * d + 1, 2 * d + 1));
    }
}

#[test]
fn descent_check_skyscraper_fails_with_resolution_witness() {
    let o = bin(&[
        "descent-check",
        "--type",
        "A1",
        "--module",
        &fixture("skyscraper.json"),
        "--point",
        "0",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let reps: Vec<EquivalenceReport> = round_trip(&o);
    let w = reps[0].rows[0].witness.as_ref().unwrap();
    assert_eq!(w.term, 1);
}

#[test]
fn descent_check_structure_sheaf_passes() {
    let o = bin(&["descent-check", "--type", "A2", "--module", &fixture("structure.json")]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_errors() {
    for args in [
        vec!["root-datum", "--typo", "A1"],
        vec!["nonsense"],
        vec!["stabilizer", "--type", "Q7"],
        vec!["stabilizer", "--type", "A2", "--point", "1,2,3"],
        vec!["walk", "--type", "A2", "--point", "1/3,1/3", "--to", "s1"],
        vec!["descent-check", "--module", "/nonexistent/module.json"],
        vec!["adjacency-check", "--type", "A1", "--interval", "s1s1"],
        vec!["gkm-sections", "--type", "A1", "--interval", "s0", "--hbar", "2"],
    ] {
        let o = bin(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn malformed_module_reports_position() {
    let dir = std::env::temp_dir().join(format!("affine-descent-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, "{\n  \"family\": \"character\",\n  \"name\": \"x\",\n  \"character\": \"neither\"\n}\n")
        .unwrap();
    let o = bin(&["descent-check", "--module", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 4"), "{err}");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn help_exits_zero() {
    let o = bin(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("equivalence-report"));
}

#[test]
fn json_reports_round_trip() {
    let s: RootDatumSummary = round_trip(&bin(&["root-datum", "--type", "B2", "--format", "json"]));
    assert_eq!(s.weyl_order, 8);
    let c: CertificateRecord = round_trip(&bin(&["stabilizer", "--type", "G2", "--point", "0", "--format", "json"]));
    assert_eq!(c.order, 12);
    let cs: Vec<CertificateRecord> =
        round_trip(&bin(&["stabilizer", "--type", "A2", "--random", "4", "--format", "json"]));
    assert_eq!(cs.len(), 4);
    let w: WalkRecord = round_trip(&bin(&["walk", "--type", "A2", "--point", "0", "--to", "s1s2", "--format", "json"]));
    assert_eq!(w.reflections.len(), 2);
    let k: KernelReport =
        round_trip(&bin(&["adjacency-check", "--type", "A2", "--interval", "s1", "--maxdeg", "3", "--format", "json"]));
    assert_eq!(k.rows.len(), 4);
    let b: BetaReport = round_trip(&bin(&["beta-check", "--type", "A1", "--interval", "s1", "--format", "json"]));
    assert!(b.passed());
    let sep: SeparationReport = round_trip(&bin(&[
        "separates",
        "--type",
        "A1",
        "--isogeny",
        "sc",
        "--gamma",
        "e",
        "--gamma2",
        "t[1] w[1]",
        "--point",
        "1/2",
        "--format",
        "json",
    ]));
    assert!(sep.separates);
    let inv: InvariantReport = round_trip(&bin(&["invariants", "--type", "B2", "--format", "json"]));
    assert_eq!(inv.fundamental_degrees, vec![2, 4]);
    let eq: Vec<EquivalenceReport> = round_trip(&bin(&[
        "equivalence-report",
        "--type",
        "A1",
        "--module",
        &fixture("regular.json"),
        &fixture("extension_a1.json"),
        "--format",
        "json",
    ]));
    assert_eq!(eq.len(), 2);
}

#[test]
fn section_tuples_from_json_are_sections() {
    let o = bin(&["gkm-sections", "--type", "A1", "--interval", "s0s1", "--maxdeg", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let rep: SectionsReport = round_trip(&o);
    let aw = AffineWeyl::from_label("A1", Isogeny::Adjoint).unwrap();
    let g = MomentGraph::interval(&aw, &aw.parse("s0s1").unwrap()).unwrap();
    for piece in &rep.basis {
        for rec in piece {
            let t = SectionTuple::from_record(&aw, &g, rec).unwrap();
            assert!(affine_descent::gkm::is_section(&t, &g, rep.hbar).unwrap().is_section);
        }
    }
    assert_eq!(rep.dims, rep.predicted.clone().unwrap().iter().map(|&p| p as usize).collect::<Vec<_>>());
}

#[test]
fn equivalence_report_disagreement_free_on_fixtures() {
    let mut args =
        vec!["equivalence-report", "--type", "A1", "--point", "0", "--point", "1/3", "--point", "1", "--module"];
    let files: Vec<String> = ["structure.json", "sign.json", "sign_global_a1.json", "extension_a1.json"]
        .iter()
        .map(|f| fixture(f))
        .collect();
    args.extend(files.iter().map(String::as_str));
    let o = bin(&args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn repeated_runs_are_identical() {
    let args = ["stabilizer", "--type", "B2", "--random", "30", "--seed", "3", "--format", "csv"];
    assert_eq!(bin(&args).stdout, bin(&args).stdout);
    let other = ["stabilizer", "--type", "B2", "--random", "30", "--seed", "4", "--format", "csv"];
    assert_ne!(bin(&args).stdout, bin(&other).stdout);
}
