use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use serde_json::Value;

use tamearith::commands::Options;
use tamearith::load;
use tamearith::schema::FieldFile;
use tamearith_core::tamefield::fields;

fn corpus(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join(rel)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tamearith")).args(args).env_remove("TAMEARITH_CORPUS").output().expect("binary runs")
}

fn run_path(cmd: &str, file: &Path, extra: &[&str]) -> Output {
    let mut args = vec![cmd, file.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn find<'a>(gens: &'a Value, label: &str) -> &'a Value {
    gens.as_array().unwrap().iter().find(|g| g["label"] == label).unwrap_or_else(|| panic!("no generator {label}"))
}

#[test]
fn q8_indicators() {
    let o = run_path("chars", &corpus("groups/Q8.json"), &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r = json(&o);
    assert_eq!(r["schema"], "tamearith.report/1");
    assert_eq!(r["items"]["frobenius_schur"], serde_json::json!([1, 1, 1, 1, -1]));
    assert_eq!(r["passed"], true);
}

#[test]
fn c2_has_two_characters() {
    let r = json(&run_path("chars", &corpus("groups/C2.json"), &[]));
    assert_eq!(r["items"]["characters"].as_array().unwrap().len(), 2);
}

#[test]
fn reports_are_byte_identical() {
    for (cmd, file) in [("chars", "groups/D4.json"), ("class-complex", "complexes/rescaled_s3.json"), ("field-report", "fields/Q_zeta7.json")] {
        let a = run_path(cmd, &corpus(file), &["--seed", "3"]);
        let b = run_path(cmd, &corpus(file), &["--seed", "3"]);
        assert_eq!(a.status.code(), Some(0), "{cmd} {file}: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{cmd} {file}");
    }
    let a = run(&["verify", "--suite", "classrep", "--seed", "11"]);
    let b = run(&["verify", "--suite", "classrep", "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn malformed_files_are_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\n  \"schema\": \"tamearith.group/1\",\n  \"name\": \"x\"\n  \"group\": 3\n}\n").unwrap();
    let o = run_path("chars", &bad, &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));
    let wrong = dir.path().join("wrong.json");
    fs::write(&wrong, r#"{"schema": "tamearith.group/1", "name": "x", "group": {"kind": "cyclic", "n": 0}}"#).unwrap();
    let o = run_path("chars", &wrong, &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("group"), "{}", stderr(&o));
    let o = run_path("chars", &dir.path().join("missing.json"), &[]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_flags_are_input_errors() {
    assert_eq!(run_path("chars", &corpus("groups/C2.json"), &["--tol", "0"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
}

#[test]
fn singular_global_basis_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("singular.json");
    let text = fs::read_to_string(corpus("complexes/times_five_c4.json")).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    // 1 + g + g^2 + g^3 is a zero divisor
    let one = serde_json::json!({ "rows": 1, "cols": 1, "entries": [["1", "0", "0", "0"]] });
    v["global_bases"] = serde_json::json!([{ "rows": 1, "cols": 1, "entries": [["1", "1", "1", "1"]] }, one]);
    fs::write(&f, v.to_string()).unwrap();
    let o = run_path("class-complex", &f, &[]);
    assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stdout));
    assert!(stderr(&o).to_lowercase().contains("basis"), "{}", stderr(&o));
}

#[test]
fn shipped_complexes() {
    let r = json(&run_path("class-complex", &corpus("complexes/acyclic_c2.json"), &[]));
    assert_eq!(r["items"]["identity"], true);
    assert_eq!(r["items"]["class"]["primes"], serde_json::json!([]));
    let r = json(&run_path("class-complex", &corpus("complexes/rescaled_s3.json"), &[]));
    let alpha = r["items"]["rescaled"]["alpha"].as_array().unwrap();
    let ratios = r["items"]["rescaled"]["ratios"].as_array().unwrap();
    for (a, q) in alpha.iter().zip(ratios) {
        let (a, q) = (a.as_f64().unwrap(), q.as_f64().unwrap());
        assert!((a - q).abs() <= 1e-9 * a);
    }
    let r = json(&run_path("class-complex", &corpus("complexes/times_five_c4.json"), &[]));
    // the unit metric sees |det| = 5 on every character
    assert_eq!(r["passed"], true);
    assert_eq!(r["items"]["identity"], false);
    for c in r["items"]["class"]["characters"].as_array().unwrap() {
        assert!((c["archimedean"].as_f64().unwrap() - 5.0).abs() < 1e-9);
    }
}

#[test]
fn zeta5_report() {
    let o = run_path("field-report", &corpus("fields/Q_zeta5.json"), &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r = json(&o);
    let g = find(&r["items"]["symplectic_generators"], "chi1 + chi3");
    assert_eq!(g["eps_infinity"], -1);
    assert_eq!(g["resolvent_sign"], -1);
    assert_eq!(g["theta_degree_zero"], "1/5");
    assert_eq!(g["eps_inverse_pfaffian_inverse"], "1/5");
    assert_eq!(g["theta"], "1/20");
    let text = run_path("field-report", &corpus("fields/Q_zeta5.json"), &["--format", "text"]);
    assert!(String::from_utf8_lossy(&text.stdout).contains("result: pass"));
}

#[test]
fn rationals_report_is_trivial() {
    let r = json(&run_path("field-report", &corpus("fields/Q.json"), &[]));
    assert_eq!(r["passed"], true);
    assert_eq!(r["items"]["ramified_primes"], serde_json::json!([]));
    for g in r["items"]["symplectic_generators"].as_array().unwrap() {
        for key in ["theta", "theta_degree_zero", "eps_inverse_pfaffian_inverse"] {
            assert_eq!(g[key], "1", "{key}");
        }
        assert_eq!(g["eps_infinity"], 1);
    }
}

#[test]
fn wild_fields_are_rejected() {
    let o = run_path("field-report", &corpus("fields/Q_zeta8.json"), &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("wild"), "{}", stderr(&o));
}

#[test]
fn low_precision_suggests_a_bump() {
    let o = run_path("field-report", &corpus("fields/Q_zeta5.json"), &["--precision-bits", "8"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--precision-bits"), "{}", stderr(&o));
}

#[test]
fn json_fields_match_built_in_descriptors() {
    let o = Options::default();
    let read = |name: &str| -> (String, FieldFile) {
        let p = corpus(&format!("fields/{name}.json"));
        (p.display().to_string(), load::read_json(&p).unwrap())
    };
    let pairs = [
        ("Q", fields::rationals().unwrap()),
        ("Q_zeta5", fields::cyclotomic(5).unwrap()),
        ("Q_zeta7", fields::cyclotomic(7).unwrap()),
        ("S3_cubic", fields::s3_cubic().unwrap()),
    ];
    for (name, built) in pairs {
        let (path, file) = read(name);
        let loaded = load::load_field(&path, &file, o.precision_bits).unwrap();
        assert_eq!(loaded.data().group().order(), built.data().group().order(), "{name}");
        for (a, b) in loaded.data().embeddings().iter().zip(built.data().embeddings()) {
            assert!((a.mid() - b.mid()).norm() <= 1e-12 * b.mid().norm().max(1.0), "{name}");
        }
        assert_eq!(loaded.ramified_primes(), built.ramified_primes(), "{name}");
        for (a, b) in loaded.ram().iter().zip(built.ram()) {
            assert_eq!((a.p, a.f, a.g, a.e(), a.q), (b.p, b.f, b.g, b.e(), b.q), "{name}");
        }
    }
    let (path, file) = read("Q_zeta8");
    let loaded = load::load_galois(&path, &file, o.precision_bits).unwrap();
    let built = fields::cyclotomic_eight_galois().unwrap();
    for (a, b) in loaded.embeddings().iter().zip(built.embeddings()) {
        assert!((a.mid() - b.mid()).norm() <= 1e-12, "Q_zeta8");
    }
}

#[test]
fn verify_cyclo_with_seed() {
    let o = run(&["verify", "--suite", "cyclo", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(json(&o)["passed"], true);
}

#[test]
fn verify_all_within_two_minutes() {
    let start = Instant::now();
    let o = run(&["verify", "--suite", "all", "--format", "text"]);
    let took = start.elapsed();
    assert_eq!(o.status.code(), Some(0), "{}\n{}", String::from_utf8_lossy(&o.stdout), stderr(&o));
    assert!(took < Duration::from_secs(120), "{took:?}");
}

#[test]
fn output_file_and_timing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = run(&["verify", "--suite", "tamefield", "--timing", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let r: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert!(r["timing"]["total_seconds"].as_f64().unwrap() >= 0.0);
    let plain = json(&run(&["verify", "--suite", "tamefield"]));
    assert!(plain.get("timing").is_none());
}

fn copy_dir(from: &Path, to: &Path) {
    fs::create_dir_all(to).unwrap();
    for e in fs::read_dir(from).unwrap() {
        let e = e.unwrap();
        let p = e.path();
        if p.is_dir() {
            copy_dir(&p, &to.join(e.file_name()));
        } else {
            fs::copy(&p, to.join(e.file_name())).unwrap();
        }
    }
}

fn verify_with_corpus(dir: &Path, suite: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tamearith"))
        .args(["verify", "--suite", suite])
        .env("TAMEARITH_CORPUS", dir)
        .output()
        .unwrap()
}

#[test]
fn corpus_directory_override() {
    let dir = tempfile::tempdir().unwrap();
    copy_dir(&corpus(""), dir.path());
    let o = verify_with_corpus(dir.path(), "groupchar");
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(json(&o)["command"]["corpus"], dir.path().display().to_string());

    fs::write(dir.path().join("fields/Q_zeta5.json"), "{ \"schema\": ").unwrap();
    let o = verify_with_corpus(dir.path(), "tamefield");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("Q_zeta5.json"), "{}", stderr(&o));

    // a descriptor that parses but carries wrong embeddings fails verification
    copy_dir(&corpus("fields"), &dir.path().join("fields"));
    let p = dir.path().join("fields/Q_zeta7.json");
    let mut v: Value = serde_json::from_str(&fs::read_to_string(&p).unwrap()).unwrap();
    let emb = v["embeddings"].as_array_mut().unwrap();
    emb.swap(1, 2);
    fs::write(&p, v.to_string()).unwrap();
    let o = verify_with_corpus(dir.path(), "tamefield");
    assert_ne!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
}
