use serde_json::Value;
use siegelkit_cli::{run, Outcome};

fn go(args: &[&str]) -> Outcome {
    go_env(args, None)
}

fn go_env(args: &[&str], env: Option<&str>) -> Outcome {
    let argv = std::iter::once("siegelkit").chain(args.iter().copied());
    run(argv, env.map(String::from))
}

fn json(o: &Outcome) -> Value {
    serde_json::from_str(&o.stdout).expect("report is JSON")
}

fn ledger_pass(v: &Value, name: &str) -> bool {
    v["ledger"]
        .as_array()
        .unwrap()
        .iter()
        .find(|l| l["name"] == name)
        .unwrap_or_else(|| panic!("no ledger line {name}"))["pass"]
        .as_bool()
        .unwrap()
}

#[test]
fn corollary_report_passes() {
    let o = go(&["measure", "corollary", "--variant", "bombieri", "--d", "23", "--eta", "1/20"]);
    assert_eq!(o.code, 0, "{}", o.stdout);
    let v = json(&o);
    assert_eq!(v["verdict"], "pass");
    assert!(ledger_pass(&v, "a0_at_most_pow2"));
    assert_eq!(v["results"]["kappa_hat"]["lo"], "22.931441253449");
}

#[test]
fn roots_portrait() {
    let o = go(&["roots", "--minpoly", "t^3-5*t^2+1"]);
    assert_eq!(o.code, 0);
    let v = json(&o);
    assert_eq!(v["results"]["a"], "5");
    assert_eq!(v["results"]["p"], "1");
    assert_eq!(v["results"]["q"], "t^2");
}

#[test]
fn usage_errors_exit_three() {
    assert_eq!(go(&["roots", "--bogus"]).code, 3);
    assert_eq!(go(&["suite", "--criterion", "11"]).code, 3);
    assert_eq!(go(&["roots", "--minpoly", "t^^2"]).code, 3);
    assert_eq!(go(&["--help"]).code, 0);
}

#[test]
fn reports_are_byte_stable() {
    let args = ["thue", "search", "--d", "5", "--a", "-4", "--box", "40"];
    let a = go(&args);
    let b = go(&args);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.contains("timing_ms"));
}

#[test]
fn shard_count_does_not_change_the_report_hash() {
    let hash = |shards: &str| {
        let o = go(&["thue", "search", "--d", "5", "--a", "-4", "--box", "40", "--shards", shards, "--dual"]);
        assert_eq!(o.code, 0);
        json(&o)["results"]["solution_hash"].as_str().unwrap().to_string()
    };
    let h1 = hash("1");
    assert_eq!(h1, hash("5"));
    assert_eq!(h1, hash("64"));
}

#[test]
fn precision_cap_from_environment() {
    let args = ["measure", "corollary", "--variant", "bombieri", "--d", "23", "--eta", "1/20"];
    let starved = go_env(&args, Some("8"));
    // the start precision exceeds the cap: rejected as a bad setting
    assert_eq!(starved.code, 3);
    // a flag beats the environment
    let mut with_flag = args.to_vec();
    with_flag.extend(["--precision-cap", "4096"]);
    assert_eq!(go_env(&with_flag, Some("8")).code, 0);
    assert_eq!(go_env(&args, Some("not-a-number")).code, 3);
}

#[test]
fn starved_precision_is_undecidable_without_passes() {
    let o = go(&[
        "validate", "--minpoly", "t^2-2", "--near", "3/2", "--kappa", "2", "--log2c", "2", "--depth", "40",
        "--precision-start", "8", "--precision-cap", "8",
    ]);
    assert_eq!(o.code, 2, "{}", o.stdout);
    let v = json(&o);
    assert_eq!(v["verdict"], "undecidable");
    assert!(v["ledger"].as_array().unwrap().iter().all(|l| l["pass"] == false));
}

#[test]
fn bad_config_file_is_a_usage_error() {
    let dir = std::env::temp_dir().join(format!("siegelkit-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"precision_bits_cap": 64, "surprise": 1}"#).unwrap();
    let o = go(&["--config", bad.to_str().unwrap(), "roots", "--minpoly", "t^3-5*t^2+1"]);
    assert_eq!(o.code, 3);
    let good = dir.join("good.json");
    std::fs::write(&good, r#"{"output": "text"}"#).unwrap();
    let o = go(&["--config", good.to_str().unwrap(), "roots", "--minpoly", "t^3-5*t^2+1"]);
    assert_eq!(o.code, 0);
    assert!(serde_json::from_str::<Value>(&o.stdout).is_err());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn validate_falls_back_to_the_family_certificate() {
    let a = "18446744073709551616";
    let f = format!("t^23-{a}*t^22+1");
    let o = go(&["validate", "--minpoly", &f, "--near", a, "--liouville", "--depth", "6"]);
    assert_eq!(o.code, 0, "{}", o.stdout);
}

#[test]
fn negative_parameters_are_values_not_flags() {
    let o = go(&["measure", "worksheet", "--family", "circular", "--d", "25", "--a", "-2^4100", "--sign", "-1", "--eta", "14/25"]);
    assert_eq!(o.code, 0, "{}{}", o.stdout, o.stderr);
    assert!(ledger_pass(&json(&o), "a_at_least_a0"));
    assert_eq!(go(&["validate", "--minpoly", "t^2-2", "--near", "-3/2", "--liouville"]).code, 0);
}
