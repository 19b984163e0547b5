use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn sawtorus(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sawtorus"))
        .args(args)
        .arg("--output-dir")
        .arg(out)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn snapshot(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                fs::read(e.path()).unwrap(),
            )
        })
        .collect()
}

#[test]
fn evolve_prints_the_image_point() {
    let dir = tempfile::tempdir().unwrap();
    let o = sawtorus(
        &[
            "evolve", "--alpha", "1/2", "--x", "0.5,0.25", "--steps", "1",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "0 0.5\n");
    let orbit = fs::read_to_string(dir.path().join("orbit.csv")).unwrap();
    assert_eq!(orbit.lines().count(), 3);
    assert!(orbit.starts_with("step,x1,x2\n0,"));
}

#[test]
fn evolve_backwards_returns_to_the_start() {
    let dir = tempfile::tempdir().unwrap();
    let o = sawtorus(
        &[
            "evolve", "--alpha", "-1/20", "--x", "0,1/2", "--steps", "-1",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let [x1, x2]: [f64; 2] = stdout(&o)
        .split_whitespace()
        .map(|t| t.parse().unwrap())
        .collect::<Vec<_>>()
        .try_into()
        .unwrap();
    let again = sawtorus(
        &[
            "evolve",
            "--alpha",
            "-1/20",
            "--x",
            &format!("{x1},{x2}"),
            "--steps",
            "1",
        ],
        dir.path(),
    );
    let back: Vec<f64> = stdout(&again)
        .split_whitespace()
        .map(|t| t.parse().unwrap())
        .collect();
    assert!(
        (back[0] - 0.0).abs() < 1e-12 && (back[1] - 0.5).abs() < 1e-12,
        "{back:?}"
    );
}

#[test]
fn breaking_time_writes_one_row_per_grid_and_step() {
    let dir = tempfile::tempdir().unwrap();
    let o = sawtorus(
        &[
            "breaking-time",
            "--alpha",
            "3/2",
            "--N",
            "64,256",
            "--jmax",
            "8",
            "--field",
            "sin2d",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = fs::read_to_string(dir.path().join("breaking_time.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("alpha,N,j,e_norm,budget,threshold,jstar")
    );
    assert_eq!(lines.count(), 18);
}

#[test]
fn localization_below_threshold_is_a_precondition_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = sawtorus(
        &[
            "localize", "--alpha", "1/2", "--N", "8", "--n", "3", "--d0", "0.1",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("precondition"));
}

#[test]
fn tracking_below_its_grid_threshold_is_a_precondition_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = sawtorus(
        &["track", "--alpha", "3/2", "--N", "512", "--n", "2"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn flag_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["evolve", "--alpha", "abc", "--x", "0,0"],
        vec!["evolve", "--alpha", "1/2"],
        vec!["evolve", "--alpha", "1/2", "--x", "0.5"],
        vec!["nonsense"],
        vec!["breaking-time", "--alpha", "1/2", "--field", "nope"],
        vec!["discretize", "--N", "0"],
        vec!["compare", "--alpha", "1/2", "--quadrature", "simpson"],
    ] {
        let o = sawtorus(&args, dir.path());
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
    let o = sawtorus(
        &["breaking-time", "--alpha", "1/2", "--field", "nope"],
        dir.path(),
    );
    assert!(stderr(&o).contains("nope"));
}

#[test]
fn decimal_alpha_warns_and_runs_in_float_mode() {
    let dir = tempfile::tempdir().unwrap();
    let o = sawtorus(&["evolve", "--alpha", "0.5", "--x", "0.5,0.25"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("warning"));
    assert_eq!(stdout(&o), "0 0.5\n");
    let manifest = fs::read_to_string(dir.path().join("manifest.txt")).unwrap();
    assert!(manifest.contains("resolved.alpha_mode = float"));
}

#[test]
fn manifest_lists_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let o = sawtorus(
        &[
            "breaking-time",
            "--alpha",
            "3/2",
            "--N",
            "16",
            "--jmax",
            "2",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let manifest = fs::read_to_string(dir.path().join("manifest.txt")).unwrap();
    for key in [
        "command = breaking-time",
        "seed = 0",
        "quadrature = midpoint",
        "m = 8",
        "gamma = 3.5",
        "threshold = 0.5",
        "field = sin2d",
        "resolved.alpha = 3/2",
    ] {
        assert!(
            manifest.lines().any(|l| l == key),
            "missing {key:?} in\n{manifest}"
        );
    }
}

#[test]
fn identical_runs_are_byte_identical() {
    let runs: [&[&str]; 4] = [
        &["stretch", "--alpha", "3/2", "--steps", "6", "--seed", "9"],
        &[
            "localize",
            "--alpha",
            "1/2",
            "--N",
            "64",
            "--x-samples",
            "300",
            "--y-samples",
            "50",
            "--seed",
            "4",
        ],
        &["compare", "--alpha", "3/2", "--N", "24", "--raster", "48"],
        &[
            "geometry",
            "--alpha",
            "1/2",
            "--p-max",
            "2",
            "--n-max",
            "2",
            "--samples",
            "5000",
            "--N",
            "256",
        ],
    ];
    for args in runs {
        let dir = tempfile::tempdir().unwrap();
        assert_eq!(
            sawtorus(args, dir.path()).status.code(),
            Some(0),
            "{args:?}"
        );
        let first = snapshot(dir.path());
        assert_eq!(sawtorus(args, dir.path()).status.code(), Some(0));
        assert_eq!(first, snapshot(dir.path()), "{args:?}");
        assert!(first.contains_key("manifest.txt"));
    }
}

#[test]
fn compare_writes_pgm_with_range_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let o = sawtorus(
        &[
            "compare", "--alpha", "3/2", "--N", "12", "--raster", "20", "--steps", "1",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let pgm = fs::read(dir.path().join("difference.pgm")).unwrap();
    assert!(pgm.starts_with(b"P5\n20 20\n255\n"));
    assert_eq!(pgm.len(), b"P5\n20 20\n255\n".len() + 400);
    let range = fs::read_to_string(dir.path().join("difference.range.txt")).unwrap();
    assert!(range.starts_with("min ") && range.contains("\nmax "));
}

#[test]
fn discretize_exports_permutation_and_evolution() {
    let dir = tempfile::tempdir().unwrap();
    let o = sawtorus(
        &[
            "discretize",
            "--N",
            "2",
            "--field",
            "sin1",
            "--alpha",
            "1/2",
            "--steps",
            "1",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let perm = fs::read_to_string(dir.path().join("permutation.csv")).unwrap();
    // (0,1) ↦ (1,1) and (1,1) ↦ (0,1) on the two-point grid.
    assert_eq!(perm, "i,forward_i,inverse_i\n0,0,0\n1,1,1\n2,3,3\n3,2,2\n");
    assert!(dir.path().join("evolved.csv").exists());
}
