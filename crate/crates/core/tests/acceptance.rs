//! Acceptance criteria, one line per criterion. Runs without the libtest
//! harness so the lines are always printed.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use transjective::verify::{run, Target, VerifyOptions};
use transjective::{NamedQuiver, Report};

type Criterion = (&'static str, fn() -> Outcome, u64);

struct Outcome {
    pass: bool,
    summary: String,
}

fn check(report: &Report, cond: bool, summary: String) -> Outcome {
    let mut summary = summary;
    if let Some(w) = report.witnesses.first() {
        summary.push_str(&format!("; first witness: {w}"));
    }
    Outcome {
        pass: report.pass && cond,
        summary,
    }
}

fn verify(
    target: Target,
    ty: Option<NamedQuiver>,
    depth: Option<usize>,
    count: Option<usize>,
) -> Report {
    let mut opts = ty.map(VerifyOptions::with_type).unwrap_or_default();
    opts.depth = depth;
    opts.count = count;
    run(target, &opts).unwrap_or_else(|e| panic!("{target}: {e}"))
}

fn counterexample() -> Outcome {
    let r = verify(Target::Counterexample, None, None, None);
    let d = &r.details;
    let ok = d["dim_m"] == serde_json::json!([1, 1, 1])
        && d["dim_n"] == serde_json::json!([1, 1, 1])
        && r.counts["ext1_mm"] == 0
        && r.counts["ext1_nn"] == 0
        && d["isomorphic"] == false
        && r.counts["lift_ext1_cluster_category"] == 2;
    check(
        &r,
        ok,
        format!(
            "dim M = dim N = (1,1,1), Ext¹(M,M) = {}, Ext¹(N,N) = {}, M ≇ N, Ext¹_C(lift, lift) = {}",
            r.counts["ext1_mm"], r.counts["ext1_nn"], r.counts["lift_ext1_cluster_category"]
        ),
    )
}

fn theorem1() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (q, want) in [
        (NamedQuiver::A2, 5),
        (NamedQuiver::A3, 14),
        (NamedQuiver::A4, 42),
        (NamedQuiver::D4, 50),
    ] {
        let r = verify(Target::Theorem1, Some(q), None, None);
        let t = r.counts["tilting_objects"];
        let c = r.counts["clusters"];
        let o = check(&r, t == want && c == want, String::new());
        pass &= o.pass;
        parts.push(format!("{} {t}/{c}{}", q.name(), o.summary));
    }
    Outcome {
        pass,
        summary: format!("tilting objects/clusters: {}", parts.join(", ")),
    }
}

fn den_hom() -> Outcome {
    let r = verify(Target::Denomhom, Some(NamedQuiver::A3), Some(8), Some(100));
    let ok = r.counts["sequences"] >= 100 && r.counts["initial_variable_cases"] > 0;
    check(
        &r,
        ok,
        format!(
            "A3: {} sequences, {} comparisons, {} initial-variable cases",
            r.counts["sequences"], r.counts["comparisons"], r.counts["initial_variable_cases"]
        ),
    )
}

fn corollary4() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for q in [
        NamedQuiver::A2,
        NamedQuiver::A3,
        NamedQuiver::A4,
        NamedQuiver::D4,
    ] {
        let r = verify(Target::Corollary4, Some(q), None, None);
        let o = check(&r, true, String::new());
        pass &= o.pass;
        parts.push(format!(
            "{} {} clusters x {} variables{}",
            q.name(),
            r.counts["clusters"],
            r.counts["cluster_variables"],
            o.summary
        ));
    }
    Outcome {
        pass,
        summary: parts.join(", "),
    }
}

fn corollary5() -> Outcome {
    let r = verify(Target::Corollary5, None, Some(6), None);
    check(
        &r,
        r.truncated,
        format!(
            "Atilde21 depth 6: {} variables with distinct denominators, truncated = {}",
            r.counts["cluster_variables"], r.truncated
        ),
    )
}

fn prop8() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for q in [NamedQuiver::A3, NamedQuiver::D4] {
        let r = verify(Target::Prop8, Some(q), None, None);
        let ok = r.counts["longest_chain"] <= r.counts["indecomposables"];
        let o = check(&r, ok, String::new());
        pass &= o.pass;
        parts.push(format!(
            "{} {} tilting modules, {} steps, longest {}{}",
            q.name(),
            r.counts["tilting_modules"],
            r.counts["descent_steps"],
            r.counts["longest_chain"],
            o.summary
        ));
    }
    Outcome {
        pass,
        summary: parts.join(", "),
    }
}

fn lemma67() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for q in [NamedQuiver::A2, NamedQuiver::A3] {
        let r = verify(Target::Lemma67, Some(q), None, None);
        let o = check(&r, r.counts["lemma7_steps"] > 0, String::new());
        pass &= o.pass;
        parts.push(format!(
            "{} {} dual-criterion cases, {} max-formula cases, {} propagation steps{}",
            q.name(),
            r.counts["lemma6_cases"],
            r.counts["max_formula_cases"],
            r.counts["lemma7_steps"],
            o.summary
        ));
    }
    Outcome {
        pass,
        summary: parts.join(", "),
    }
}

fn oracles() -> Outcome {
    let r = verify(Target::Oracles, None, Some(12), Some(1000));
    let ok = r.counts["random_sequences"] == 1000 && r.counts["hammock_vs_modules_pairs"] > 0;
    check(
        &r,
        ok,
        format!(
            "{} hammock/module pairs, {} Ext checks, {} 2-CY pairs, {} sequences without inexact division",
            r.counts["hammock_vs_modules_pairs"],
            r.counts["ext_nonnegative_checks"],
            r.counts["two_cy_pairs"],
            r.counts["random_sequences"]
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("rigid modules with a non-rigid lift", counterexample, 1),
        ("dimension vectors determine objects", theorem1, 60),
        ("denominators equal Hom dimensions", den_hom, 30),
        ("denominators distinct in every cluster", corollary4, 60),
        ("bounded affine denominators distinct", corollary5, 30),
        ("descent of tilting modules to DA", prop8, 30),
        ("compatibility and propagation", lemma67, 30),
        ("oracle equivalence", oracles, 60),
    ];
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let in_time = elapsed < Duration::from_secs(*limit);
        let pass = outcome.pass && in_time;
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {} [{}] {name}: {} ({:.2}s, limit {limit}s)",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            outcome.summary,
            elapsed.as_secs_f64()
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
