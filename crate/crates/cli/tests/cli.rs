use std::path::Path;
use std::process::{Command, Output};

use symbvd::benchmarks::{BenchmarkName, BenchmarkSpec};
use symbvd::dump::{FieldDump, SelectionDump, HEADER_LEN};
use symbvd::state::Variant;

fn symbvd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symbvd")).args(args).output().expect("spawn symbvd")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn zero_cells_is_a_usage_error() {
    let o = symbvd(&["run", "--bench", "smoothwave", "--nx", "0"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn unknown_arguments_are_usage_errors() {
    assert_eq!(code(&symbvd(&["run", "--bench", "sedov"])), 2);
    assert_eq!(code(&symbvd(&["run", "--bench", "rti", "--variant", "fancy"])), 2);
    assert_eq!(code(&symbvd(&["run", "--bench", "rti", "--cfl", "1.5"])), 2);
    assert_eq!(code(&symbvd(&["frobnicate"])), 2);
    assert_eq!(code(&symbvd(&["convergence", "--grids", "0"])), 2);
}

#[test]
fn zero_end_time_writes_the_initial_condition() {
    let dir = tempfile::tempdir().unwrap();
    let o = symbvd(&["run", "--bench", "riemann3", "--nx", "100", "--ny", "100", "--t-end", "0", "--out", path(dir.path())]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));

    let snap = FieldDump::read(dir.path().join("riemann3_t0.000000.sfv")).unwrap();
    let init = BenchmarkSpec::<f64>::new(BenchmarkName::Riemann3)
        .initial_grid(100, 100, Variant::Symmetric)
        .unwrap();
    assert_eq!(snap.to_bytes().unwrap(), FieldDump::from_grid(&init, 0.0).to_bytes().unwrap());

    let audit = std::fs::read_to_string(dir.path().join("riemann3_audit.txt")).unwrap();
    assert!(audit.lines().any(|l| l.starts_with("diagonal rho") && l.ends_with("bitexact=true")), "{audit}");

    let csv = std::fs::read_to_string(dir.path().join("riemann3_conservation.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("step,t,dt,sum_rho,sum_rho_u,sum_rho_v,sum_E"));
    assert!(lines.next().unwrap().starts_with("0,0,0,"));
}

#[test]
fn short_run_writes_snapshots_and_log() {
    let dir = tempfile::tempdir().unwrap();
    let o = symbvd(&[
        "run", "--bench", "implosion", "--nx", "24", "--ny", "24", "--t-end", "0.02", "--snap-every", "0.01",
        "--out", path(dir.path()),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    for t in ["0.000000", "0.010000", "0.020000"] {
        assert!(dir.path().join(format!("implosion_t{t}.sfv")).exists(), "missing snapshot {t}");
    }
    let audit = std::fs::read_to_string(dir.path().join("implosion_audit.txt")).unwrap();
    assert_eq!(audit.lines().count(), 12);
    assert!(audit.lines().all(|l| l.ends_with("bitexact=true")), "{audit}");
    let csv = std::fs::read_to_string(dir.path().join("implosion_conservation.csv")).unwrap();
    assert!(csv.lines().count() > 3);
}

#[test]
fn non_square_runs_skip_the_diagonal_audit() {
    let dir = tempfile::tempdir().unwrap();
    let o = symbvd(&["run", "--bench", "rti", "--nx", "8", "--ny", "32", "--t-end", "0", "--out", path(dir.path())]);
    assert_eq!(code(&o), 0);
    let audit = std::fs::read_to_string(dir.path().join("rti_audit.txt")).unwrap();
    assert!(audit.contains("diagonal n/a"));
    assert!(audit.lines().filter(|l| l.starts_with("y-axis")).all(|l| l.ends_with("bitexact=true")), "{audit}");
}

#[test]
fn audit_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let o = symbvd(&["run", "--bench", "implosion", "--nx", "20", "--ny", "20", "--t-end", "0.01", "--out", path(dir.path())]);
    assert_eq!(code(&o), 0);
    let file = dir.path().join("implosion_t0.010000.sfv");
    for kind in ["x", "y", "diagonal"] {
        assert_eq!(code(&symbvd(&["audit", path(&file), "--type", kind])), 0);
    }
    assert_eq!(code(&symbvd(&["audit", path(&file)])), 0);

    // one corrupted density value
    let mut d = FieldDump::read(&file).unwrap();
    d.fields[0][3 * 20 + 4] += 1e-3;
    let bad = dir.path().join("bad.sfv");
    d.write(&bad).unwrap();
    let o = symbvd(&["audit", path(&bad), "--type", "x"]);
    assert_eq!(code(&o), 1);
    let line = stdout(&o).lines().find(|l| l.starts_with("x-axis rho ")).unwrap().to_string();
    assert!(line.starts_with("x-axis rho max=0x1.0624dd2f1"), "{line}");
    assert!(line.ends_with("pair=(4,3)-(4,16) bitexact=false"), "{line}");

    let bytes = std::fs::read(&file).unwrap();
    let cut = dir.path().join("cut.sfv");
    std::fs::write(&cut, &bytes[..bytes.len() - 5]).unwrap();
    assert_eq!(code(&symbvd(&["audit", path(&cut), "--type", "y"])), 2);

    let mut magic = bytes.clone();
    magic[..4].copy_from_slice(b"NOPE");
    let badmagic = dir.path().join("magic.sfv");
    std::fs::write(&badmagic, magic).unwrap();
    assert_eq!(code(&symbvd(&["audit", path(&badmagic)])), 2);

    assert_eq!(code(&symbvd(&["audit", path(&dir.path().join("missing.sfv"))])), 2);
}

#[test]
fn convergence_single_grid_has_empty_order() {
    let o = symbvd(&["convergence", "--grids", "16"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let row = out.lines().nth(1).unwrap();
    let cols: Vec<&str> = row.split('#').next().unwrap().split_whitespace().collect();
    assert_eq!(cols.len(), 2, "{row}");
    assert_eq!(cols[0], "16");
}

#[test]
fn selection_map_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("rti.sel");
    let o = symbvd(&[
        "selection-map", "--bench", "rti", "--nx", "16", "--ny", "64", "--time", "0.05", "--out", path(&file),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let bytes = std::fs::read(&file).unwrap();
    assert_eq!(bytes.len(), HEADER_LEN + 4 * 16 * 64);
    let d = SelectionDump::from_bytes(&bytes).unwrap();
    assert_eq!((d.header.nx, d.header.ny, d.header.time), (16, 64, 0.05));
    assert!(bytes[HEADER_LEN..].iter().all(|&b| b <= 2));
    // the density interface is resolved by a THINC function somewhere
    assert!(bytes[HEADER_LEN..].iter().any(|&b| b > 0));

    assert_eq!(
        code(&symbvd(&["selection-map", "--bench", "rti", "--axis", "z", "--out", path(&file)])),
        2
    );
}
