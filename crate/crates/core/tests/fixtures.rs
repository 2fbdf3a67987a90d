mod common;

use std::fs;

use common::*;
use cww_core::codebook::import_csv;
use cww_core::fou::DomainScale;
use cww_core::pr::{decode_linguistic, decode_numeric, fire_rules, InputWordVector};
use cww_core::report::{parse_csv_report, parse_report};
use cww_core::reduction::centroid_ekm;
use cww_core::{render_report, solve_scenario, Error, Methods, ReportFormat, SolveOptions};

fn word_table(method: &str) -> (cww_core::Codebook, Vec<cww_core::codebook::TableCentroid>) {
    let text = fs::read(data_path(&format!("words_{method}.csv"))).unwrap();
    import_csv(text.as_slice(), DomainScale::default(), "csv").unwrap()
}

#[test]
fn csv_word_tables_match_json_codebooks() {
    for method in ["hma", "ia"] {
        let (from_csv, _) = word_table(method);
        let json = codebook(method);
        assert_eq!(from_csv.variables, json.variables, "{method}");
    }
}

#[test]
fn listed_centroids_agree_with_ekm() {
    let grid = default_grid();
    for method in ["hma", "ia"] {
        let (cb, cents) = word_table(method);
        for c in cents {
            let got = centroid_ekm(cb.fou(&c.variable, &c.label).unwrap(), &grid).unwrap();
            assert!(within(got.mean(), c.mean, 0.1), "{method} {}.{}: {} vs {}", c.variable, c.label, got.mean(), c.mean);
        }
    }
}

#[test]
fn consequent_tables_are_the_rule_words() {
    let rb = rules();
    for method in ["hma", "ia"] {
        let cb = codebook(method);
        let text = fs::read(data_path(&format!("consequents_{method}.csv"))).unwrap();
        let (table, _) = import_csv(text.as_slice(), DomainScale::default(), "csv").unwrap();
        for var in &table.variables {
            for (rule, word) in rb.rules.iter().zip(&var.words) {
                let label = &rule.consequents[&var.name];
                let from_codebook = cb.fou(&var.name, label).unwrap();
                for (x, y) in word
                    .fou
                    .umf
                    .corners()
                    .iter()
                    .chain(&word.fou.lmf.corners())
                    .zip(from_codebook.umf.corners().iter().chain(&from_codebook.lmf.corners()))
                {
                    assert!(within(*x, *y, 0.1), "{method} {} {}: {x} vs {y}", var.name, label);
                }
            }
        }
    }
}

#[test]
fn every_word_decodes_to_itself() {
    let grid = default_grid();
    for method in ["hma", "ia"] {
        let cb = codebook(method);
        for var in &cb.variables {
            for w in &var.words {
                let m = decode_linguistic(&w.fou, var, &grid).unwrap();
                assert_eq!(m.label, w.label, "{method} {}", var.name);
                assert_eq!(m.similarity, 1.0);
            }
        }
    }
}

#[test]
fn beginner_numeric() {
    let cb = codebook("hma");
    let v = decode_numeric(cb.fou("WA", "B").unwrap(), &default_grid()).unwrap();
    assert!(within(v, 1.39, 0.03), "{v}");
}

#[test]
fn first_four_firing_levels_of_welder_one() {
    let cb = codebook("hma");
    let input = &scenario("scenario.json").welders[0].inputs;
    let f = fire_rules(&rules(), input, &cb, &default_grid()).unwrap();
    for (got, want) in f.levels.iter().zip([0.10, 0.39, 0.10, 0.001]) {
        assert!(within(*got, want, 0.02), "{got} vs {want}");
    }
    let w4 = &scenario("scenario.json").welders[3].inputs;
    let f4 = fire_rules(&rules(), w4, &cb, &default_grid()).unwrap();
    assert!(within(f4.levels[3], 0.402, 0.02));
}

#[test]
fn rule_antecedents_fire_their_own_rule_fully() {
    let cb = codebook("ia");
    let rb = rules();
    for (i, rule) in rb.rules.iter().enumerate() {
        let input: InputWordVector = rule.antecedents.clone();
        let f = fire_rules(&rb, &input, &cb, &default_grid()).unwrap();
        assert_eq!(f.levels[i], 1.0);
    }
}

#[test]
fn unknown_label_names_the_welder() {
    let mut sc = scenario("scenario.json");
    sc.welders[2].inputs.insert("WE".into(), "XX".into());
    let err = solve_scenario(&sc, &rules(), &codebook("hma"), &SolveOptions::default()).unwrap_err();
    match err {
        Error::Welder { id: 3, source } => assert!(matches!(*source, Error::UnknownLabel { .. })),
        other => panic!("unexpected {other}"),
    }
}

#[test]
fn reports_are_deterministic() {
    let sc = scenario("scenario.json");
    let opts = SolveOptions::default();
    let a = solve_scenario(&sc, &rules(), &codebook("ia"), &opts).unwrap();
    let b = solve_scenario(&sc, &rules(), &codebook("ia"), &opts).unwrap();
    for fmt in [ReportFormat::Md, ReportFormat::Csv, ReportFormat::Structured] {
        assert_eq!(render_report(&a, fmt).unwrap(), render_report(&b, fmt).unwrap());
    }
}

#[test]
fn overall_numeric_lies_between_welders() {
    for (method, name) in [("hma", "scenario.json"), ("ia", "scenario.json"), ("hma", "scenario_firing_hma.json"), ("ia", "scenario_firing_ia.json")] {
        let r = solve_scenario(&scenario(name), &rules(), &codebook(method), &SolveOptions::default()).unwrap();
        for obj in ["OT", "PP"] {
            let vals: Vec<f64> = r.welders.iter().map(|w| w.pr[obj].numeric).collect();
            let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let overall = r.overall.pr[obj].numeric;
            assert!(lo <= overall && overall <= hi, "{method} {name} {obj}: {overall} not in [{lo}, {hi}]");
        }
    }
}

#[test]
fn ia_codebook_changes_welder_one_label() {
    let r = solve_scenario(&scenario("scenario_firing_ia.json"), &rules(), &codebook("ia"), &SolveOptions::default()).unwrap();
    assert_eq!(r.welders[0].pr["OT"].linguistic, "MI");
}

#[test]
fn structured_report_carries_fou_corners() {
    let r = solve_scenario(&scenario("scenario_firing_hma.json"), &rules(), &codebook("hma"), &SolveOptions::default()).unwrap();
    let text = render_report(&r, ReportFormat::Structured).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let umf = &v["welders"][0]["pr"]["OT"]["fou"]["umf"];
    for (k, want) in [("a", 1.12), ("b", 1.60), ("c", 5.32), ("d", 6.85)] {
        assert!(within(umf[k].as_f64().unwrap(), want, 0.02), "{k}");
    }
    assert_eq!(parse_report(&text).unwrap(), r.rows());
}

#[test]
fn csv_report_round_trips() {
    let r = solve_scenario(&scenario("scenario.json"), &rules(), &codebook("hma"), &SolveOptions::default()).unwrap();
    let text = render_report(&r, ReportFormat::Csv).unwrap();
    let rows = parse_csv_report(&text).unwrap();
    assert_eq!(rows.len(), 6 * 2 * 2);
    for (a, b) in rows.iter().zip(r.rows()) {
        assert_eq!(format!("{:.6}", a.numeric), format!("{:.6}", b.numeric));
        assert_eq!(a.label, b.label);
    }
}

#[test]
fn two_tuple_only_report_has_no_pr_cells() {
    let opts = SolveOptions {
        methods: Methods { pr: false, two_tuple: true },
        ..SolveOptions::default()
    };
    let r = solve_scenario(&scenario("scenario.json"), &rules(), &codebook("hma"), &opts).unwrap();
    assert!(r.welders.iter().all(|w| w.pr.is_empty() && w.firing.is_none()));
    let md = render_report(&r, ReportFormat::Md).unwrap();
    assert!(!md.contains("PR N"));
    assert_eq!(md.lines().filter(|l| l.starts_with("| ")).count(), 1 + 5 + 1);
}

#[test]
fn empty_method_report_has_headers_only() {
    let opts = SolveOptions {
        methods: Methods { pr: false, two_tuple: false },
        ..SolveOptions::default()
    };
    let r = solve_scenario(&scenario("scenario.json"), &rules(), &codebook("hma"), &opts).unwrap();
    let csv = render_report(&r, ReportFormat::Csv).unwrap();
    assert_eq!(csv.lines().count(), 1);
    let md = render_report(&r, ReportFormat::Md).unwrap();
    assert_eq!(md.lines().filter(|l| l.starts_with("| ")).count(), 1);
}
