use std::path::Path;
use std::process::{Command, Output};

use qsonus_core::audio::load_wav;
use qsonus_core::render::read_grid_csv;

fn qsonus(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsonus"))
        .args(args)
        .current_dir(dir)
        .env("QSONUS_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str], dir: &Path) -> String {
    let out = qsonus(args, dir);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str], dir: &Path) -> i32 {
    qsonus(args, dir).status.code().expect("exit code")
}

fn csv_files(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "csv"))
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap()))
        .collect();
    files.sort();
    files
}

const RECONSTRUCT: &[&str] = &[
    "reconstruct", "--synthetic", "--duration", "1", "--nq", "13", "--nf", "9",
    "--shots-per-frame", "5", "--epsilon", "0.05", "--seed", "3", "--out", "r",
];
const SPECTROGRAM: &[&str] = &["spectrogram", "--synthetic", "--duration", "1", "--nq", "13", "--seed", "3", "--out", "s"];
const SWEEP: &[&str] = &[
    "sweep", "--synthetic", "--duration", "1", "--nq", "13", "--M", "5,100",
    "--epsilon-list", "0,0.05", "--realizations", "2", "--seed", "3", "--out", "w",
];
const SAWTOOTH: &[&str] = &["sawtooth", "--nq", "10", "--iters", "10", "--l0", "100", "--seed", "3", "--out", "t"];

#[test]
fn reruns_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for args in [RECONSTRUCT, SPECTROGRAM, SWEEP, SAWTOOTH] {
        ok(args, a.path());
        ok(args, b.path());
    }
    let (fa, fb) = (csv_files(a.path()), csv_files(b.path()));
    assert!(fa.len() >= 16, "only {} csv files", fa.len());
    assert_eq!(fa, fb);
}

#[test]
fn reconstruct_writes_three_files() {
    let dir = tempfile::tempdir().unwrap();
    ok(RECONSTRUCT, dir.path());
    for f in ["r.time.wav", "r.spectral.wav", "r.fidelity.csv"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
    let csv = std::fs::read_to_string(dir.path().join("r.fidelity.csv")).unwrap();
    assert_eq!(csv.lines().count(), 3);
    assert!(csv.starts_with("pipeline,M,epsilon,seed,"));
}

#[test]
fn noise_changes_output_not_level() {
    let dir = tempfile::tempdir().unwrap();
    let mut clean: Vec<&str> = RECONSTRUCT.to_vec();
    clean[11] = "0.0";
    clean[15] = "clean";
    ok(&clean, dir.path());
    ok(RECONSTRUCT, dir.path());
    let a = load_wav(dir.path().join("clean.spectral.wav")).unwrap();
    let b = load_wav(dir.path().join("r.spectral.wav")).unwrap();
    assert_ne!(a.samples(), b.samples());
    for s in [&a, &b] {
        assert!((s.peak() - 0.9).abs() < 1e-4);
    }
}

#[test]
fn spectrogram_diagrams_are_normalized() {
    let dir = tempfile::tempdir().unwrap();
    ok(SPECTROGRAM, dir.path());
    for panel in ["original", "spectral", "spectral-noisy", "time"] {
        for kind in ["exact", "sampled"] {
            assert!(dir.path().join(format!("s.{panel}.{kind}.ppm")).exists());
            let g = read_grid_csv(dir.path().join(format!("s.{panel}.{kind}.csv"))).unwrap();
            assert_eq!((g.rows(), g.cols()), (16, 16));
            let total: f64 = g.values().iter().map(|v| v * v).sum();
            assert!((total - 1.0).abs() < 1e-6, "{panel} {kind}: {total}");
        }
    }
}

#[test]
fn sweep_row_count_and_fit_file() {
    let dir = tempfile::tempdir().unwrap();
    ok(SWEEP, dir.path());
    let csv = std::fs::read_to_string(dir.path().join("w.sweep.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 2 * 2 * 2 * 2);
    assert!(csv.starts_with("pipeline,M,epsilon,realization,fidelity\n"));
    let fit = std::fs::read_to_string(dir.path().join("w.fit.csv")).unwrap();
    assert!(fit.starts_with("pipeline,M,c,exponent"));
}

#[test]
fn sawtooth_artifacts_and_correlation() {
    let dir = tempfile::tempdir().unwrap();
    let stdout = ok(SAWTOOTH, dir.path());
    for f in [
        "t.sound.exact.wav",
        "t.sound.sampled.wav",
        "t.sound.noisy.wav",
        "t.sg.exact.ppm",
        "t.sg.sampled.ppm",
        "t.sg.noisy.ppm",
        "t.husimi.box.ppm",
        "t.husimi.gauss.csv",
    ] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
    let sound = load_wav(dir.path().join("t.sound.exact.wav")).unwrap();
    assert_eq!((sound.len(), sound.rate()), (1024, 1000));
    assert!(stdout.contains("correlation S(g) vs box Husimi"));
}

#[test]
fn unevolved_husimi_is_a_single_momentum_ridge() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["sawtooth", "--nq", "10", "--iters", "0", "--l0", "100", "--format", "csv", "--out", "z"], dir.path());
    let g = read_grid_csv(dir.path().join("z.husimi.gauss.csv")).unwrap();
    // l = 100 - 512 = -412 lies in column round((-412 + 512) / 32) = 3
    for r in 0..g.rows() {
        let best = (0..g.cols()).max_by(|&a, &b| g.get(r, a).total_cmp(&g.get(r, b))).unwrap();
        assert_eq!(best, 3, "row {r}");
        assert!((g.get(r, 3) - g.get(0, 3)).abs() < 1e-12);
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("bad.wav"), b"RIFF\x04\x00\x00\x00WAVE").unwrap();
    assert_eq!(code(&["reconstruct", "--in", "bad.wav", "--out", "x"], d), 2);
    assert_eq!(code(&["reconstruct", "--in", "missing.wav", "--out", "x"], d), 2);
    assert_eq!(code(&["reconstruct", "--synthetic", "--duration", "1", "--nq", "12", "--out", "x"], d), 3);
    assert_eq!(code(&["sawtooth", "--nq", "8", "--l0", "0", "--out", "x"], d), 3);
    assert_eq!(code(&["sawtooth", "--nq", "8", "--l0", "257", "--out", "x"], d), 3);
    assert_eq!(code(&["sweep", "--synthetic", "--M", "", "--out", "x"], d), 4);
    assert_eq!(code(&["sweep", "--synthetic", "--epsilon-list", ",", "--out", "x"], d), 4);
}
