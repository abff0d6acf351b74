use std::process::Command;

use serde::de::DeserializeOwned;
use serde_json::Value;

use kummer_cli::{run, Outcome, EXIT_OK, EXIT_REJECTED, EXIT_USAGE};
use kummer_core::existence::{exists_over_even_degree, exists_over_odd_degree, ExistenceVerdict};
use kummer_core::golden::GoldenCheck;
use kummer_core::groups::GroupId;
use kummer_core::kummer::{parse_multiset, singular_config, trace_table, SingularConfig, TraceRow};
use kummer_core::numtheory::{Parity, PrimePower};
use kummer_core::weil::{enumerate_elliptic, enumerate_surface_supersingular, WeilDescriptor};

fn kummer(args: &str) -> Outcome {
    run(std::iter::once("kummer").chain(args.split_whitespace()))
}

fn json_result<T: DeserializeOwned>(args: &str) -> (T, Value) {
    let out = kummer(&format!("--json {args}"));
    assert_eq!(out.code, EXIT_OK, "{args}: {}", out.stderr);
    let body: Value = serde_json::from_str(&out.stdout).unwrap();
    let result = serde_json::from_value(body["result"].clone()).unwrap();
    (result, body)
}

#[test]
fn even_degree_example() {
    let out = kummer("exists --group SL2F5 --p 3 --parity even");
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout.lines().next(), Some("rigid: yes; symplectic: yes [Thm 6.2]"));
}

#[test]
fn sing_config_example() {
    let out = kummer("sing-config --group C6");
    assert_eq!(out.stdout, "A5 + 4A2 + 5A1; rank ≥ 19\n");
}

#[test]
fn odd_trace_table_at_three() {
    let out = kummer("tables --which sszeta2 --p 3");
    assert_eq!(out.code, EXIT_OK);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines.len(), 6);
    assert!(lines[0].starts_with("Tr 20 | 1^21,2 | Q8 | p ≡ 3 (4) [true]"));
}

#[test]
fn sing_table_parses_back_to_configurations() {
    let out = kummer("tables --which sing");
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines.len(), 17);
    let mut expected = Vec::new();
    for g in GroupId::katsura_list() {
        expected.extend(singular_config(g).unwrap());
    }
    for (line, cfg) in lines.iter().zip(&expected) {
        let (group, rest) = line.split_once(": ").unwrap();
        assert_eq!(group.parse::<GroupId>().unwrap(), cfg.group);
        let rest = match rest.strip_prefix("case ") {
            Some(r) => {
                let (tag, r) = r.split_once(": ").unwrap();
                assert_eq!(tag.chars().next(), cfg.case_tag);
                r
            }
            None => {
                assert_eq!(cfg.case_tag, None);
                rest
            }
        };
        let (multiset, rank) = rest.split_once("; ").unwrap();
        assert_eq!(parse_multiset(multiset).unwrap(), cfg.multiset());
        assert_eq!(rank, kummer_core::kummer::ns_rank_bound(cfg).to_string());
    }
}

#[test]
fn json_round_trips() {
    let (v, body): (ExistenceVerdict, _) = json_result("exists --group C8 --p 7 --parity even");
    assert_eq!(v, exists_over_even_degree(GroupId::Cyclic(8), 7).unwrap());
    assert_eq!(body["query"]["command"], "exists");
    assert_eq!(body["citations"], serde_json::json!(["Thm 6.2"]));

    let q = PrimePower::from_q(27).unwrap();
    let (v, _): (ExistenceVerdict, _) = json_result("exists --group Q8 --q 27");
    assert_eq!(v, exists_over_odd_degree(GroupId::BinaryDihedral(8), &q).unwrap());

    let (rows, _): (Vec<SingularConfig>, _) = json_result("tables --which sing");
    assert_eq!(rows.len(), 17);
    assert_eq!(rows[4], singular_config(GroupId::Cyclic(6)).unwrap()[0]);

    let (rows, _): (Vec<TraceRow>, _) = json_result("tables --which sszeta1 --p 13");
    assert_eq!(rows, trace_table(Parity::Even, 13).unwrap());

    let (list, _): (Vec<WeilDescriptor>, _) = json_result("weil-list --q 9");
    assert_eq!(list, enumerate_elliptic(&PrimePower::from_q(9).unwrap()));
    let (list, _): (Vec<WeilDescriptor>, _) = json_result("weil-list --q 9 --dim 2");
    assert_eq!(list, enumerate_surface_supersingular(&PrimePower::from_q(9).unwrap()));

    let (z, _): (Value, _) = json_result("zeta-assemble --q 27 --construction q8-odd-degree");
    assert_eq!(z["ns"], serde_json::json!({ "1": 21, "2": 1 }));
    assert_eq!(z["trace"], 20);
}

#[test]
fn selftest_passes() {
    let out = kummer("selftest");
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert!(out.stdout.ends_with(" 0 mismatches\n"));
    let (checks, _): (Vec<GoldenCheck>, _) = json_result("selftest");
    assert!(checks.iter().all(|c| c.passed));
}

#[test]
fn domain_rejections_exit_one_with_citation() {
    for args in [
        "exists --group Q12 --q 27",
        "exists --group C5 --p 5 --parity odd",
        "sing-config --group C3xQ8",
        "zeta-assemble --q 7 --construction c4-rational",
        "weil-check --q 5 --coeffs 1,7,5",
    ] {
        let out = kummer(args);
        assert_eq!(out.code, EXIT_REJECTED, "{args}");
        assert_eq!(out.stderr.lines().count(), 1, "{args}");
        assert!(out.stderr.starts_with("rejected: ") && out.stderr.trim_end().ends_with(']'), "{args}: {}", out.stderr);
    }
}

#[test]
fn artin_violation_exits_one() {
    let out = kummer("zeta-assemble --q 27 --notation 1^22");
    assert_eq!(out.code, EXIT_REJECTED);
    assert!(out.stdout.contains("Artin constraint: violated"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        "exists --group C7 --p 3",
        "exists --group C5 --p 4",
        "tables --which nothing",
        "weil-list --q 6",
        "zeta-assemble --q 5",
        "embed-check --group C5",
        "frobnicate",
    ] {
        assert_eq!(kummer(args).code, EXIT_USAGE, "{args}");
    }
    assert_eq!(kummer("--help").code, EXIT_OK);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_kummer");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = status(&["sing-config", "--group", "C6"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8(ok.stdout).unwrap(), "A5 + 4A2 + 5A1; rank ≥ 19\n");
    assert_eq!(status(&["exists", "--group", "Q12", "--q", "27"]).status.code(), Some(1));
    assert_eq!(status(&["exists", "--group", "nope", "--p", "3"]).status.code(), Some(2));
}
