//! One pass/fail line per acceptance criterion. Runs without the libtest harness so
//! the lines are always printed. Set `CMSPACE_EXCEPTIONAL_DATA` to a fake-degree
//! dataset to run criterion 7.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use cmspace::exceptional::{
    dataset_from_series, scan_exceptional, table1_comparison, table1_expected, ExceptionalDataset,
};
use cmspace::fake_degree::{
    coinv_poincare, fake_degree, irr_dimension, irr_labels, predicted_trailing_degree,
    syt_major_index_oracle, GroupSpec,
};
use cmspace::field::CycloNumber;
use cmspace::g4::{build_g4, g4_reflection_form_check, run_battery};
use cmspace::monomial::{group_battery, molien_comparison, omega_class_sums};
use cmspace::polycore::LaurentPoly;
use cmspace::scan::{scan_series, scan_series_par};
use num_bigint::BigInt;

const DATA_ENV: &str = "CMSPACE_EXCEPTIONAL_DATA";

enum Verdict {
    Pass(String),
    Fail(String),
    NotRun(String),
}

fn g(m: u32, p: u32, n: u32) -> GroupSpec {
    GroupSpec::new(m, p, n).expect("valid group")
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Result<String, String>) -> Verdict {
    let start = Instant::now();
    let r = f();
    let took = start.elapsed();
    let t = format!("{:.2}s of {}s", took.as_secs_f64(), limit.as_secs());
    match r {
        Ok(_) if took > limit => Verdict::Fail(format!("runtime {t}")),
        Ok(s) => Verdict::Pass(format!("{s}; {t}")),
        Err(e) => Verdict::Fail(format!("{e}; {t}")),
    }
}

fn criterion_1() -> Result<String, String> {
    let groups = group_battery(6, 4, 5000);
    let mut labels = 0;
    for g in &groups {
        let ls = irr_labels(g);
        labels += ls.len();
        let mut squares = BigInt::from(0);
        let mut graded = LaurentPoly::zero();
        for l in &ls {
            let f = fake_degree(g, &l.orbit);
            let dim = irr_dimension(l);
            check(f.eval_one() == dim, || {
                format!("{g} {l}: f(1) = {} but dim = {dim}", f.eval_one())
            })?;
            let b = f.trailing_degree().map_err(|e| e.to_string())?;
            let predicted = predicted_trailing_degree(g, &l.orbit);
            check(b == predicted, || {
                format!("{g} {l}: b = {b}, k + m sum n(lambda) = {predicted}")
            })?;
            squares += &dim * &dim;
            graded = &graded + &f.scale(&dim);
        }
        let order = g.order();
        check(squares == order, || {
            format!("{g}: sum dim^2 = {squares}, order {order}")
        })?;
        let p = coinv_poincare(g);
        check(graded == p, || {
            format!("{g}: sum dim f = {graded}, P = {p}")
        })?;
    }
    Ok(format!("{} groups, {labels} labels", groups.len()))
}

fn criterion_2() -> Result<String, String> {
    let mut count = 0;
    for n in 1..=6 {
        let g = g(1, 1, n);
        for l in irr_labels(&g) {
            let lambda = &l.rep().components()[0];
            let oracle = syt_major_index_oracle(lambda).map_err(|e| e.to_string())?;
            let f = fake_degree(&g, &l.orbit);
            check(f == oracle, || {
                format!("S{n} {lambda}: {f} vs tableaux {oracle}")
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} partitions of n <= 6"))
}

fn criterion_3() -> Result<String, String> {
    let groups = group_battery(6, 4, 2000);
    for g in &groups {
        let cmp = molien_comparison(g, 30, 2000).map_err(|e| format!("{g}: {e}"))?;
        check(cmp.matches(), || {
            format!("{g}: Molien {:?} vs degrees {:?}", cmp.series, cmp.expected)
        })?;
    }
    Ok(format!("{} groups, N = 30", groups.len()))
}

fn criterion_4() -> Result<String, String> {
    let groups: Vec<_> = group_battery(6, 4, 2000)
        .into_iter()
        .filter(|g| !g.reflection_rep_reducible())
        .collect();
    let mut classes = 0;
    for g in &groups {
        for (class, cert) in omega_class_sums(g, 2000).map_err(|e| format!("{g}: {e}"))? {
            check(cert.matches_closed_form(), || {
                format!(
                    "{g} class {}: {} vs {}",
                    class.zeta_label(),
                    cert.lambda,
                    cert.closed_form
                )
            })?;
            classes += 1;
        }
    }
    let g4 = build_g4().map_err(|e| e.to_string())?;
    for fc in g4_reflection_form_check(&g4).map_err(|e| e.to_string())? {
        let two = CycloNumber::from_int(fc.cert.lambda.field(), 2);
        check(fc.cert.lambda == two, || {
            format!("G4 Cl{}: lambda = {}", fc.class, fc.cert.lambda)
        })?;
    }
    Ok(format!(
        "{} groups, {classes} classes; G4 lambda = 2 on Cl3 and Cl4",
        groups.len()
    ))
}

fn criterion_5() -> Result<String, String> {
    let mut none: Vec<GroupSpec> = (1..=4)
        .flat_map(|m| (1..=4).map(move |n| g(m, 1, n)))
        .collect();
    none.extend([g(2, 2, 3), g(3, 3, 2), g(4, 4, 2)]);
    for g in &none {
        let r = scan_series(g);
        check(r.failures == 0, || {
            format!(
                "{g}: {} failures at {:?}",
                r.failures,
                r.failing_labels().collect::<Vec<_>>()
            )
        })?;
    }
    // (group, a witness label, its fake degree when pinned)
    let some = [
        (g(5, 5, 2), "1|1|-|-|-", Some("t^4 + t")),
        (g(6, 6, 2), "", None),
        (g(2, 2, 4), "2,2|-", None),
        (g(2, 2, 5), "", None),
        (g(3, 3, 3), "1,1|-|1", Some("t^8 + 2*t^5")),
    ];
    let mut counts = Vec::new();
    for (g, label, f) in some {
        let r = scan_series(&g);
        check(r.failures >= 1, || format!("{g}: no failures"))?;
        if !label.is_empty() {
            let v = r
                .verdicts
                .iter()
                .find(|v| v.label == label)
                .ok_or_else(|| format!("{g}: no label {label}"))?;
            check(v.fails(), || format!("{g}: {label} is divisible"))?;
            if let Some(f) = f {
                check(v.fake_degree.to_string() == f, || {
                    format!("{g}: f({label}) = {}", v.fake_degree)
                })?;
            }
        }
        counts.push(format!("{g}:{}", r.failures));
    }
    Ok(format!(
        "{} groups clean; failures {}",
        none.len(),
        counts.join(" ")
    ))
}

fn criterion_6() -> Result<String, String> {
    let lines = run_battery().map_err(|e| e.to_string())?;
    let failed: Vec<_> = lines
        .iter()
        .filter(|l| !l.passed)
        .map(|l| format!("{} ({})", l.name, l.detail))
        .collect();
    check(failed.is_empty(), || failed.join("; "))?;
    Ok(format!("{} checks", lines.len()))
}

fn synthetic_checks() -> Result<(), String> {
    let ds = ExceptionalDataset {
        groups: vec![
            dataset_from_series(&g(3, 3, 2)),
            dataset_from_series(&g(2, 2, 4)),
        ],
    };
    let text = ds.render();
    let back = ExceptionalDataset::parse(&text).map_err(|e| e.to_string())?;
    check(back == ds && back.render() == text, || {
        "format round trip changed the dataset".into()
    })?;
    let reports = scan_exceptional(&back).map_err(|e| e.to_string())?;
    check(reports[0].failures == 0, || {
        format!(
            "synthetic G(3,3,2) file has {} failures",
            reports[0].failures
        )
    })?;
    check(
        reports[1].failures == scan_series(&g(2, 2, 4)).failures,
        || "synthetic G(2,2,4) disagrees with the series scan".into(),
    )
}

fn criterion_7() -> Verdict {
    if let Err(e) = synthetic_checks() {
        return Verdict::Fail(e);
    }
    let Some(path) = std::env::var_os(DATA_ENV) else {
        return Verdict::NotRun("round trip and synthetic G(3,3,2) check passed".into());
    };
    let run = || -> Result<String, String> {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| format!("{}: {e}", path.to_string_lossy()))?;
        let ds = ExceptionalDataset::parse(&text).map_err(|e| e.to_string())?;
        let rows = table1_comparison(&scan_exceptional(&ds).map_err(|e| e.to_string())?);
        let published: Vec<_> = rows.iter().filter(|r| r.expected.is_some()).collect();
        check(!published.is_empty(), || {
            "dataset names no group of the table".into()
        })?;
        let wrong: Vec<_> = published
            .iter()
            .filter(|r| r.matches() == Some(false))
            .map(|r| {
                format!(
                    "{} {} vs {}",
                    r.group,
                    r.failures,
                    table1_expected(&r.group).unwrap_or(0)
                )
            })
            .collect();
        check(wrong.is_empty(), || wrong.join("; "))?;
        Ok(format!("{} groups match", published.len()))
    };
    match run() {
        Ok(s) => Verdict::Pass(s),
        Err(e) => Verdict::Fail(e),
    }
}

/// Every report the suite renders, concatenated.
fn full_report(parallel: bool) -> String {
    let mut out = String::new();
    for g in group_battery(4, 4, 2000) {
        let r = if parallel {
            scan_series_par(&g)
        } else {
            scan_series(&g)
        };
        out.push_str(&r.render_text());
        if let Ok(cmp) = molien_comparison(&g, 12, 2000) {
            let _ = writeln!(out, "{g} molien {:?}", cmp.series);
        }
        if let Ok(certs) = omega_class_sums(&g, 2000) {
            for (c, cert) in certs {
                let _ = writeln!(out, "{g} {} {} {}", c.zeta_label(), c.len(), cert.lambda);
            }
        }
    }
    for l in run_battery().expect("battery runs") {
        let _ = writeln!(out, "{}\t{}\t{}", l.name, l.passed, l.detail);
    }
    let ds = ExceptionalDataset {
        groups: vec![dataset_from_series(&g(3, 3, 3))],
    };
    out.push_str(&ds.render());
    out
}

fn criterion_8() -> Result<String, String> {
    let first = full_report(false);
    let again = full_report(false);
    let par = rayon::ThreadPoolBuilder::new()
        .num_threads(4)
        .build()
        .map_err(|e| e.to_string())?
        .install(|| full_report(true));
    check(first == again, || "two sequential runs differ".into())?;
    check(first == par, || {
        "parallel run differs from the sequential run".into()
    })?;
    Ok(format!("{} bytes identical across 3 runs", first.len()))
}

fn main() {
    let results = [
        (1, timed(Duration::from_secs(30), criterion_1)),
        (2, timed(Duration::from_secs(5), criterion_2)),
        (3, timed(Duration::from_secs(60), criterion_3)),
        (4, timed(Duration::from_secs(60), criterion_4)),
        (5, timed(Duration::from_secs(10), criterion_5)),
        (6, timed(Duration::from_secs(5), criterion_6)),
        (7, criterion_7()),
        (8, timed(Duration::from_secs(120), criterion_8)),
    ];
    let mut failed = 0;
    for (k, v) in &results {
        match v {
            Verdict::Pass(s) => println!("criterion {k}: PASS ({s})"),
            Verdict::NotRun(s) => {
                println!("criterion {k}: not run — data required ({s}; set {DATA_ENV})")
            }
            Verdict::Fail(s) => {
                failed += 1;
                println!("criterion {k}: FAIL ({s})");
            }
        }
    }
    if failed > 0 {
        println!("acceptance: {failed} criteria failed");
        std::process::exit(1);
    }
    println!("acceptance: all criteria passed or gated");
}
