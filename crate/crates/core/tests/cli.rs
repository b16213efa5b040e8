use blendcut::cli::{run, EXIT_NO_CONVERGENCE, EXIT_OK, EXIT_USAGE};
use blendcut::io::load_graph;
use blendcut::roc::{closed_form_spectrum, RocParams};
use blendcut::spectra::dense_spectrum_oracle;

fn roc(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("roc").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn generated_graph_round_trips_to_closed_form_spectrum() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["r.edges", "r.mtx"] {
        let path = dir.path().join(name);
        let (code, out, _) = roc(&["gen", "--b", "5", "--q", "6", "--out", path.to_str().unwrap()]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("n=30"), "{out}");
        let g = load_graph(&path).unwrap();
        let oracle = dense_spectrum_oracle(&g).unwrap();
        let closed = closed_form_spectrum(RocParams::new(5, 6).unwrap()).eigenvalues();
        for (a, b) in oracle.eigenvalues.iter().zip(&closed) {
            assert!((a - b).abs() < 1e-10);
        }
    }
}

#[test]
fn solve_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut traces = Vec::new();
    for k in 0..2 {
        let path = dir.path().join(format!("trace{k}.csv"));
        let (code, _, _) = roc(&[
            "solve", "--b", "8", "--q", "6", "--seed", "7", "--fixed", "--max-iter", "12", "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code, EXIT_OK);
        traces.push(std::fs::read_to_string(&path).unwrap());
    }
    assert_eq!(traces[0], traces[1]);
    assert!(traces[0].starts_with("i,epsilon,pi_miss,mu,phi,cheeger"));
    assert_eq!(traces[0].lines().count(), 14);
}

#[test]
fn solve_reports_non_convergence() {
    let (code, _, err) = roc(&["solve", "--b", "20", "--q", "30", "--max-iter", "3", "--tol", "1e-12"]);
    assert_eq!(code, EXIT_NO_CONVERGENCE, "{err}");
}

#[test]
fn partition_file_lists_every_vertex() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("part.csv");
    let (code, _, _) = roc(&[
        "solve", "--b", "10", "--q", "8", "--fixed", "--max-iter", "8", "--partition",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 81);
}

#[test]
fn perturb_writes_one_row_per_sample() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.csv");
    let (code, out, _) = roc(&[
        "perturb", "--mode", "sqrt", "--n", "100,400", "--samples", "3", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(!out.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("n,b,q,seed,lower_bound,constructed_norm,empirical_min_norm"));
    assert_eq!(text.lines().count(), 7);
}

#[test]
fn usage_and_io_errors_exit_one() {
    assert_eq!(roc(&["gen", "--b", "2", "--q", "5"]).0, EXIT_USAGE);
    assert_eq!(roc(&["solve", "--graph", "/nonexistent/graph.edges"]).0, EXIT_USAGE);
    assert_eq!(roc(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(roc(&["--help"]).0, EXIT_OK);
}
