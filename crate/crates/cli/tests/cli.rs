use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_oligosim"))
}

fn repo_file(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .join(rel)
}

fn ok(out: Output) -> Output {
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p
}

#[test]
fn default_config_writes_full_bundle() {
    let tmp = TempDir::new().unwrap();
    let out = tmp.path().join("out");
    ok(bin()
        .args(["run", "--config"])
        .arg(repo_file("configs/default.toml"))
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap());

    let csv = fs::read_to_string(out.join("run.csv")).unwrap();
    assert_eq!(csv.lines().count(), 31);
    assert!(csv.ends_with('\n') && !csv.contains('\r'));

    let graph1 = fs::read_to_string(out.join("graph1_prices.svg")).unwrap();
    assert_eq!(graph1.matches("<polyline").count(), 2);
    assert!(graph1.contains("Commodity prices"));
    for (name, caption, lines) in [
        ("graph2_costs.svg", "Production costs", 4),
        ("graph3_production.svg", "Production amounts", 4),
        ("graph4_excess.svg", "Excess of supply", 1),
    ] {
        let svg = fs::read_to_string(out.join(name)).unwrap();
        assert_eq!(svg.matches("<polyline").count(), lines, "{name}");
        assert!(svg.contains(caption));
        assert!(!svg.contains("href"), "{name} references external assets");
    }

    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["seed"], 1);
    assert_eq!(summary["intervals"], 30);
    assert_eq!(summary["config"]["firms"].as_array().unwrap().len(), 4);
    assert!(summary["prng"].as_str().unwrap().starts_with("chacha8"));
}

#[test]
fn horizon_one_gives_one_row() {
    let tmp = TempDir::new().unwrap();
    let cfg = write(&tmp, "h1.toml", "horizon = 1\nseed = 3\n");
    let out = tmp.path().join("out");
    ok(bin()
        .args(["run", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap());
    let csv = fs::read_to_string(out.join("run.csv")).unwrap();
    assert_eq!(csv.lines().count(), 2);
    assert!(csv.lines().nth(1).unwrap().starts_with("1,"));
}

#[test]
fn seed_flag_overrides_config() {
    let tmp = TempDir::new().unwrap();
    let cfg = write(&tmp, "c.toml", "seed = 3\n");
    let run = |args: &[&str], dir: &str| {
        let out = tmp.path().join(dir);
        ok(bin()
            .args(args)
            .args(["run", "--config"])
            .arg(&cfg)
            .arg("--out")
            .arg(&out)
            .output()
            .unwrap());
        fs::read_to_string(out.join("run.csv")).unwrap()
    };
    let plain = run(&[], "a");
    let same = run(&["--seed", "3"], "b");
    let other = run(&["--seed", "4"], "c");
    assert_eq!(plain, same);
    assert_ne!(plain, other);
}

#[test]
fn run_errors_exit_nonzero() {
    let tmp = TempDir::new().unwrap();
    let missing = bin()
        .args(["run", "--config", "/nonexistent/config.toml", "--out"])
        .arg(tmp.path())
        .output()
        .unwrap();
    assert!(!missing.status.success());
    assert!(String::from_utf8_lossy(&missing.stderr).contains("cannot read config"));

    let bad = write(&tmp, "bad.toml", "horizon = 0\n");
    let invalid = bin()
        .args(["run", "--config"])
        .arg(&bad)
        .arg("--out")
        .arg(tmp.path())
        .output()
        .unwrap();
    assert!(!invalid.status.success());

    let good = write(&tmp, "good.toml", "");
    let blocker = write(&tmp, "file", "not a directory");
    let unwritable = bin()
        .args(["run", "--config"])
        .arg(&good)
        .arg("--out")
        .arg(blocker.join("sub"))
        .output()
        .unwrap();
    assert!(!unwritable.status.success());
}

#[test]
fn sweep_single_cell() {
    let tmp = TempDir::new().unwrap();
    let spec = write(
        &tmp,
        "s.toml",
        "gamma_one_values = [0.5]\ngamma_two_values = [0.2]\nreplicates = 20\n",
    );
    let out = tmp.path().join("sweep.csv");
    ok(bin()
        .args(["sweep", "--spec"])
        .arg(&spec)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap());
    let csv = fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(
        lines[0],
        "gamma_one,gamma_two,runs,mean,median,stddev,fraction_positive"
    );
    assert_eq!(lines.len(), 2);
    assert!(lines[1].starts_with("0.5,0.2,20,"));
}

#[test]
fn sweep_zero_gammas_never_oversupply() {
    let tmp = TempDir::new().unwrap();
    let spec = write(
        &tmp,
        "s.toml",
        "gamma_one_values = [0]\ngamma_two_values = [0]\nreplicates = 50\n",
    );
    let out = tmp.path().join("sweep.csv");
    ok(bin()
        .args(["sweep", "--spec"])
        .arg(&spec)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap());
    let csv = fs::read_to_string(&out).unwrap();
    for row in csv.lines().skip(1) {
        assert_eq!(row.rsplit(',').next(), Some("0"));
    }
    let again = tmp.path().join("again.csv");
    ok(bin()
        .args(["sweep", "--spec"])
        .arg(&spec)
        .arg("--out")
        .arg(&again)
        .output()
        .unwrap());
    assert_eq!(fs::read(&out).unwrap(), fs::read(&again).unwrap());
}

#[test]
fn calibrate_prints_and_writes_config() {
    let tmp = TempDir::new().unwrap();
    let spec = write(
        &tmp,
        "s.toml",
        "gamma_one_values = [0.2, 0.5, 0.8]\ngamma_two_values = [0.0, 0.3, 0.6]\nreplicates = 50\n",
    );
    let written = tmp.path().join("calibrated.toml");
    let out = ok(bin()
        .args(["calibrate", "--target", "1.5", "--spec"])
        .arg(&spec)
        .arg("--write-config")
        .arg(&written)
        .output()
        .unwrap());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("gamma_one="), "{stdout}");
    let cfg = oligosim_cli::config::load_config(&written).unwrap();
    let g1 = cfg.firms[0].gamma_one();
    assert!(stdout.contains(&format!("gamma_one={g1} ")));

    let small = write(
        &tmp,
        "small.toml",
        "gamma_one_values = [0.2]\ngamma_two_values = [0.1]\n",
    );
    let fail = bin()
        .args(["calibrate", "--target", "1.5", "--spec"])
        .arg(&small)
        .output()
        .unwrap();
    assert!(!fail.status.success());
}
