use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ltfourier"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn here(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join(rel)
}

fn tmp(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR"));
    std::fs::create_dir_all(dir).unwrap();
    dir.join(name)
}

/// Compares with the stored golden file; the first verified run writes it,
/// and `UPDATE_GOLDEN=1` rewrites it.
fn golden(name: &str, actual: &str) {
    let path = here(&format!("golden/{name}"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() || !path.exists() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap();
    assert!(want == actual, "output differs from {}", path.display());
}

#[test]
fn gamma_table_rows() {
    let o = run(&["gamma-table", "--p", "3", "--h", "2", "--e", "1", "--kmax", "50"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "k,v_upper,argmin,v_lower,argmax");
    assert_eq!(lines.len(), 52);
    assert!(lines[1].starts_with("0,-1/1,"));
}

#[test]
fn katz_small_example() {
    let o = run(&["verify", "katz", "--p", "3", "--lmax", "1", "--nmax", "100"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["verdict"], "certified");
    assert!(v["report"]["nontrivial"].as_u64().unwrap() >= 12);
}

#[test]
fn invalid_eisenstein_is_a_config_error() {
    let o = run(&["config", "check", "--p", "3", "--h", "1", "--eisenstein", "4,0,1"]);
    assert_eq!(code(&o), 4);
    assert!(String::from_utf8_lossy(&o.stderr).contains("Eisenstein"));
    let o = run(&["config", "check", "--p", "3", "--h", "1", "--eisenstein", "3,0,1"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn other_config_errors() {
    // not prime
    assert_eq!(code(&run(&["pn", "--p", "4"])), 4);
    // 5 splits in Z[i], so the lemniscatic curve is ordinary there
    assert_eq!(code(&run(&["verify", "katz", "--p", "5"])), 4);
    // budget infeasibility is reported before any computation
    let o = run(&["verify", "moments", "--mt", "20"]);
    assert_eq!(code(&o), 4);
    assert!(String::from_utf8_lossy(&o.stderr).contains("tail order"));
    let bad = tmp("bad.toml");
    std::fs::write(&bad, "precision = 24\nbogus = 1\n").unwrap();
    assert_eq!(code(&run(&["--config", bad.to_str().unwrap(), "config", "show"])), 4);
}

#[test]
fn config_round_trip() {
    let o = run(&["config", "show", "--group", "multiplicative", "--p", "5", "--levels", "1,3"]);
    assert_eq!(code(&o), 0);
    let first = stdout(&o);
    let path = tmp("round_trip.toml");
    std::fs::write(&path, &first).unwrap();
    let again = run(&["--config", path.to_str().unwrap(), "config", "show"]);
    assert_eq!(code(&again), 0);
    assert_eq!(first, stdout(&again));
    assert!(first.contains("kind = \"multiplicative\""));
}

#[test]
fn exit_codes_follow_verdicts() {
    // corollary counterexamples at N = 2
    assert_eq!(code(&run(&["verify", "fourier-bounds", "--kmax", "12", "--dmax", "1"])), 3);
    assert_eq!(code(&run(&["verify", "fourier-bounds", "--kmax", "12", "--dmax", "1", "--levels", "1"])), 0);
    // lower norm bounds the period relation cannot decide
    assert_eq!(code(&run(&["verify", "pn-norms", "--nmax", "22", "--levels", "2"])), 2);
    assert_eq!(code(&run(&["verify", "pn-norms", "--nmax", "22", "--group", "multiplicative", "--p", "3"])), 0);
    assert_eq!(code(&run(&["verify", "power-sums", "--nmax", "2", "--kmax", "20"])), 0);
    assert_eq!(code(&run(&["verify", "gamma-props", "--p", "3", "--h", "2"])), 0);
    assert_eq!(code(&run(&["verify", "coleman", "--count", "3", "--levels", "1"])), 0);
    assert_eq!(code(&run(&["verify", "distribution-relation", "--group", "multiplicative", "--p", "3"])), 0);
}

#[test]
fn group_show() {
    let o = run(&["group", "show", "--group", "multiplicative", "--p", "3", "--order", "4", "--a", "2"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let r = &v["report"];
    let lead = |x: &serde_json::Value| x.as_str().unwrap().split(" + O(").next().unwrap().to_string();
    // F = X + Y + XY
    assert_eq!(lead(&r["group_law"][1][1]), "1");
    assert_eq!(lead(&r["group_law"][2][0]), "0");
    assert_eq!(lead(&r["group_law"][0][1]), "1");
    // [2](T) = 2T + T^2
    assert_eq!(lead(&r["endo"]["coeffs"][1]), "2");
    assert_eq!(lead(&r["endo"]["coeffs"][2]), "1");
    assert_eq!(lead(&r["endo"]["coeffs"][3]), "0");
    // λ = t - t^2/2 + t^3/3 - ..
    assert_eq!(lead(&r["log"][3]), "(1)/3^1");
}

#[test]
fn integrate_and_mahler() {
    let phi = here("data/phi_t2.json");
    let f = here("data/x_squared.json");
    // ∫ x^2 dμ_{t^2} = 2 on the multiplicative group
    let o = run(&["integrate", "--group", "multiplicative", "--p", "3", "--phi", phi.to_str().unwrap(), "--f", f.to_str().unwrap(), "--N", "1"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let comps = json(&o)["report"]["integral"]["components"].clone();
    assert_eq!(comps.as_array().unwrap().len(), 1);
    assert_eq!(comps[0]["value"]["coeffs"][0][0], "2");
    // x^2 = C(x,1) + 2 C(x,2)
    let o = run(&["mahler", "--group", "multiplicative", "--p", "3", "--f", f.to_str().unwrap(), "--nmax", "6", "--csv"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().collect();
    assert!(rows[2].starts_with("1,0/1,0/1,"));
    assert!(rows[3].starts_with("2,0/1,0/1,"));
    let o = run(&["mahler", "--f", here("data/piecewise.json").to_str().unwrap(), "--nmax", "10"]);
    assert_eq!(code(&o), 0);
    let o = run(&["integrate", "--phi", phi.to_str().unwrap(), "--f", f.to_str().unwrap(), "--N", "2"]);
    assert_eq!(code(&o), 4);
}

#[test]
fn output_is_deterministic_and_files_are_written() {
    let args = ["bh", "verify", "--nmax", "40", "--lmax", "1"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let out = tmp("bh.csv");
    let o = run(&["bh", "verify", "--nmax", "40", "--lmax", "1", "--csv", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(&out).unwrap().starts_with("kind,l,n,v_L_n,partner"));
}

#[test]
fn golden_bh_verify() {
    let args = ["bh", "verify", "--p", "3", "--b", "2", "--c", "2", "--lmax", "2", "--nmax", "100"];
    let o = run(&args);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["report"]["l_values"]["integral"], v["report"]["l_values"]["count"]);
    golden("bh_verify.json", &stdout(&o));
    let mut with_csv = args.to_vec();
    with_csv.push("--csv");
    golden("bh_verify.csv", &stdout(&run(&with_csv)));
}

#[test]
fn golden_fourier_bounds() {
    let o = run(&["verify", "fourier-bounds", "--kmax", "12", "--dmax", "1"]);
    assert_eq!(code(&o), 3);
    golden("fourier_bounds.json", &stdout(&o));
}
