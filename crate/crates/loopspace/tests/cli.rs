use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use loopspace::json::{self, Context, Object};
use loopspace::oracle::{self, Dense, DenseMatrix};
use loopspace_core::bridge;
use loopspace_core::{Field, Matrix, MonomialOrder, Poly, PolyRing};
use serde_json::Value;

const F: Field = Field::Prime(101);

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loopspace")).args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_loopspace"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout_json(o: &Output) -> Value {
    assert_eq!(o.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("JSON on stdout")
}

fn error_kind(o: &Output) -> String {
    let v: Value = serde_json::from_slice(&o.stderr).expect("JSON on stderr");
    v["kind"].as_str().expect("kind").to_string()
}

fn read_fixture(name: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap()
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|s| s.as_str().unwrap().to_string()).collect()
}

#[test]
fn phi_of_a_point_is_the_residue_field() {
    let v = stdout_json(&run(&["phi", fixture("point_tuple.json").to_str().unwrap()]));
    assert_eq!(v["gens"], 1);
    assert_eq!(v["rels"], serde_json::json!([["T"]]));
}

#[test]
fn psi_matches_the_library_on_a_cyclic_module() {
    let v = stdout_json(&run(&["psi", fixture("cyclic_t3.json").to_str().unwrap()]));
    let ctx = Context::default();
    let Object::Module(m) = json::decode_object(&read_fixture("cyclic_t3.json"), &ctx).unwrap() else {
        panic!("fixture is a presentation");
    };
    assert_eq!(v, json::encode_tuple(&bridge::psi(&m).unwrap()));
    // T acts nilpotently with a single Jordan block of size 3
    let x = json::decode_tuple(&v, &ctx).unwrap();
    assert_eq!(oracle::tuple_invariant_factors(&x.mats()[0]), vec![Dense::power_of_t(F, 3)]);
}

#[test]
fn psi_of_a_free_module_is_infinite_dimensional() {
    let o = run(&["psi", fixture("free_module.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(error_kind(&o), "InfiniteDimensional");
}

#[test]
fn non_commuting_input_is_rejected() {
    let o = run(&["phi", fixture("not_commuting.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(error_kind(&o), "RelationViolated");
}

#[test]
fn schema_errors_exit_with_two() {
    let o = run_stdin(&["phi"], r#"{"n": 1, "dim": 2}"#);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_kind(&o), "SchemaError");
    let o = run_stdin(&["phi"], "not json");
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_kind(&o), "SchemaError");
}

#[test]
fn bad_flags_are_usage_errors() {
    let o = run(&["verify", "all", "--trials", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_kind(&o), "UsageError");
    let o = run(&["compute", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_kind(&o), "UsageError");
    let o = run_stdin(&["--field", "12", "phi"], "{}");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn oversized_matrices_hit_the_size_limit() {
    let o = run_stdin(&["compute", "snf"], r#"{"matrix": [["T^65"]]}"#);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(error_kind(&o), "SizeLimit");
}

#[test]
fn ext_and_tor_of_cyclic_modules() {
    let path = fixture("ext_pair.json");
    let ext = stdout_json(&run(&["compute", "ext", path.to_str().unwrap()]));
    let tor = stdout_json(&run(&["compute", "tor", path.to_str().unwrap()]));
    let gcd = Dense::power_of_t(F, 2).gcd(&Dense::power_of_t(F, 3)).degree().unwrap();
    // degree 0 by brute force: v in k[T]/(T^3) with T^2 v = 0
    let shift = Matrix::from_fn(F, 3, 3, |i, j| if i == j + 1 { F.one() } else { F.zero() });
    let hom = shift.mul(&shift).kernel().cols();
    assert_eq!(ext["dims"][0], hom);
    assert_eq!(ext["dims"][1], gcd);
    assert_eq!(ext["dims"][2], 0);
    assert_eq!(tor["dims"][0], gcd);
    assert_eq!(tor["dims"][1], gcd);
    assert_eq!(tor["dims"][2], 0);
}

#[test]
fn ext_on_tuples_compares_both_sides() {
    let x = r#"{"n": 1, "dim": 2, "mats": [[[0, 0], [1, 0]]]}"#;
    let input = format!(r#"{{"left": {x}, "right": {x}}}"#);
    let v = stdout_json(&run_stdin(&["compute", "ext", "--max-degree", "1"], &input));
    assert_eq!(v["agree"], true);
    assert_eq!(v["dims"], v["module_side"]);
}

#[test]
fn smith_form_matches_determinantal_divisors() {
    let v = stdout_json(&run(&["compute", "snf", fixture("snf_small.json").to_str().unwrap()]));
    let ring = PolyRing::univariate(F);
    let m = loopspace_core::PolyMatrix::parse(ring, &[vec!["T", "1"], vec!["0", "T"]]).unwrap();
    let dm = DenseMatrix::from_poly_matrix(&m);
    let d1 = dm.minors_gcd(F, 1);
    let d2 = dm.minors_gcd(F, 2);
    let diag: Vec<Dense> = strings(&v["diagonal"]).iter().map(|s| Dense::from_poly(&Poly::parse(ring, s).unwrap())).collect();
    assert_eq!(diag[0], d1);
    assert_eq!(diag[0].mul(&diag[1]), d2);
    assert_eq!(strings(&v["diagonal"]), ["1", "T^2"]);
}

#[test]
fn groebner_basis_passes_the_s_pair_test() {
    let v = stdout_json(&run(&["compute", "gb", fixture("gb_lex.json").to_str().unwrap()]));
    let ring = PolyRing::new(F, 2, MonomialOrder::Lex);
    let basis: Vec<Poly> = strings(&v["basis"]).iter().map(|s| Poly::parse(ring, s).unwrap()).collect();
    assert!(oracle::s_pairs_reduce_to_zero(&basis));
    for g in ["x^2 - y", "x*y - 1"] {
        assert!(oracle::divide(&Poly::parse(ring, g).unwrap(), &basis).is_zero());
    }
    // reduced: monic, and no term of one element is divisible by another's leading monomial
    for (i, g) in basis.iter().enumerate() {
        assert!(g.leading_coeff().unwrap().is_one());
        for (j, h) in basis.iter().enumerate() {
            if i != j {
                let lm = h.leading_monomial().unwrap();
                assert!(g.terms().iter().all(|(m, _)| !lm.divides(m)));
            }
        }
    }
    assert_eq!(strings(&v["basis"]), ["x+100*y^2", "y^3+100"]);
}

#[test]
fn homology_of_fixture_complexes() {
    let v = stdout_json(&run(&["compute", "homology", fixture("swap_complex.json").to_str().unwrap()]));
    assert_eq!(v["dims"], serde_json::json!([0, 1, 1]));
    let v = stdout_json(&run(&["compute", "homology", fixture("module_complex.json").to_str().unwrap()]));
    assert_eq!(v["dims"], serde_json::json!([2, 0]));
}

#[test]
fn invariant_factors_of_tuple_and_presentation_agree() {
    let a = stdout_json(&run(&["compute", "invariant_factors", fixture("cyclic_t3.json").to_str().unwrap()]));
    let tuple = stdout_json(&run(&["psi", fixture("cyclic_t3.json").to_str().unwrap()]));
    let b = stdout_json(&run_stdin(&["compute", "invariant_factors"], &tuple.to_string()));
    assert_eq!(a, b);
    assert_eq!(a["dimension"], 3);
}

#[test]
fn hom_dimension_of_cyclic_modules() {
    let v = stdout_json(&run(&["compute", "hom", fixture("ext_pair.json").to_str().unwrap()]));
    assert_eq!(v["dimension"], 2);
}

#[test]
fn seeded_roundtrip_suite_passes() {
    let o = run(&["verify", "roundtrip", "--seed", "7", "--trials", "50"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("result: PASS 50/50 trials"), "{text}");
}

#[test]
fn verify_output_is_reproducible() {
    let args = ["verify", "derived", "--seed", "3", "--trials", "5"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["verify", "derived", "--seed", "4", "--trials", "5"]);
    assert_eq!(c.status.code(), Some(0));
}

#[test]
fn swap_suite_on_a_fixture_is_deterministic() {
    let path = fixture("swap_complex.json");
    let a = run(&["verify", "swap", path.to_str().unwrap()]);
    let b = run(&["verify", "swap", path.to_str().unwrap()]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8_lossy(&a.stdout).contains("result: PASS 1/1 trials"));
}

#[test]
fn phi_then_psi_passes_single_instance_roundtrip() {
    for name in ["point_tuple.json", "commuting_pair.json"] {
        let p = stdout_json(&run(&["phi", fixture(name).to_str().unwrap()]));
        let x = stdout_json(&run_stdin(&["psi"], &p.to_string()));
        let o = run_stdin(&["verify", "roundtrip", "-"], &x.to_string());
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
        let o = run_stdin(&["verify", "roundtrip", "-"], &p.to_string());
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    }
}

#[test]
fn out_flag_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("loopspace-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("phi.json");
    let o = run(&["phi", fixture("point_tuple.json").to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["gens"], 1);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn rational_inputs_keep_fractions() {
    let o = run_stdin(&["--field", "Q", "phi"], r#"{"n": 1, "dim": 1, "mats": [[["1/2"]]]}"#);
    let v = stdout_json(&o);
    assert_eq!(v["field"], "Q");
    assert_eq!(v["rels"], serde_json::json!([["T-1/2"]]));
}

