//! Pinned output of every subcommand on the bundled grids. Set
//! `GRIDLAB_BLESS=1` to rewrite the files.

use std::path::PathBuf;

fn run(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["gridlab", "--no-cache"];
    argv.extend_from_slice(args);
    let code = gridlab::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

fn check(name: &str, runs: &[Vec<String>]) {
    let mut text = String::new();
    for args in runs {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, out) = run(&args);
        let shown = args.join(" ").replace(concat!(env!("CARGO_MANIFEST_DIR"), "/"), "");
        text.push_str(&format!("$ gridlab {shown} [exit {code}]\n{out}"));
    }
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.txt"));
    if std::env::var_os("GRIDLAB_BLESS").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &text).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert!(want == text, "{name} output changed:\n{text}");
}

fn on_catalog(cmd: &[&str], json: bool) -> Vec<Vec<String>> {
    let mut runs = Vec::new();
    for (name, _) in gridlab::catalog::ENTRIES {
        let mut args: Vec<String> = cmd.iter().map(|s| s.to_string()).collect();
        args.push(format!("catalog:{name}"));
        runs.push(args.clone());
        if json {
            args.push("--json".into());
            runs.push(args);
        }
    }
    runs
}

fn strings(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

#[test]
fn validate() {
    check("validate", &on_catalog(&["validate"], true));
}

#[test]
fn states() {
    check("states", &on_catalog(&["states"], true));
}

#[test]
fn gradings() {
    check("gradings", &on_catalog(&["gradings"], false));
}

#[test]
fn check_d2() {
    check("check-d2", &on_catalog(&["check", "d2"], true));
}

#[test]
fn homology() {
    check("homology", &on_catalog(&["homology"], true));
}

#[test]
fn torsion() {
    check("torsion", &on_catalog(&["torsion"], true));
}

#[test]
fn tilde() {
    check("tilde", &on_catalog(&["tilde"], true));
}

#[test]
fn crossing_check() {
    let mut runs = Vec::new();
    for (a, b) in [("unknot4a", "unknot4b"), ("unknot4b", "unknot4a"), ("trefoil5", "trefoil5-unknotted")] {
        let args = strings(&["crossing", "check", &format!("catalog:{a}"), &format!("catalog:{b}")]);
        runs.push(args.clone());
        let mut j = args;
        j.push("--json".into());
        runs.push(j);
    }
    check("crossing-check", &runs);
}

#[test]
fn lbound() {
    let cert = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("catalog/trefoil-cert.json");
    let cert = cert.to_str().unwrap();
    check("lbound", &[strings(&["lbound", cert]), strings(&["lbound", cert, "--json"])]);
}

#[test]
fn catalog() {
    let mut runs = vec![strings(&["catalog", "list"]), strings(&["catalog", "list", "--json"])];
    for (name, _) in gridlab::catalog::ENTRIES {
        runs.push(strings(&["catalog", "show", name]));
        runs.push(strings(&["catalog", "show", name, "--json"]));
    }
    check("catalog", &runs);
}
