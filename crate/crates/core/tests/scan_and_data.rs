use cmspace::exceptional::{
    dataset_from_series, scan_exceptional, table1_comparison, table1_expectations, table1_expected,
    ExceptionalDataset,
};
use cmspace::fake_degree::{coinv_poincare, GroupSpec};
use cmspace::g4::claim1_solve;
use cmspace::monomial::group_battery;
use cmspace::polycore::LaurentPoly;
use cmspace::scan::{scan_series, scan_series_par, witness_check, LemmaOutcome};
use cmspace::{DatasetError, GroupError};
use proptest::prelude::*;

fn series_group() -> impl Strategy<Value = GroupSpec> {
    prop::sample::select(group_battery(6, 3, 2000))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn dataset_round_trip(gs in prop::sample::subsequence(group_battery(6, 3, 2000), 1..4)) {
        let ds = ExceptionalDataset { groups: gs.iter().map(dataset_from_series).collect() };
        ds.validate().unwrap();
        let text = ds.render();
        let back = ExceptionalDataset::parse(&text).unwrap();
        prop_assert_eq!(&back, &ds);
        prop_assert_eq!(back.render(), text);
    }

    #[test]
    fn dataset_scan_agrees_with_series_scan(g in series_group()) {
        let ds = ExceptionalDataset { groups: vec![dataset_from_series(&g)] };
        let from_data = &scan_exceptional(&ds).unwrap()[0];
        let direct = scan_series(&g);
        prop_assert_eq!(from_data.failures, direct.failures);
        let a: Vec<_> = from_data.failing_labels().collect();
        let b: Vec<_> = direct.failing_labels().collect();
        prop_assert_eq!(a, b);
    }

    /// `P = (t^{-b} f) * quotient / denominator` for divisible verdicts, and the
    /// remainder certifies non-divisibility otherwise.
    #[test]
    fn verdicts_carry_certificates(g in series_group()) {
        let p = coinv_poincare(&g);
        for v in scan_series(&g).verdicts {
            let den = v.fake_degree.shift(-v.b);
            match &v.outcome {
                LemmaOutcome::Divisible { quotient, denominator, module_poincare } => {
                    prop_assert_eq!(&den * quotient, p.scale(denominator));
                    if let Some(mp) = module_poincare {
                        prop_assert_eq!(mp.scale(denominator), quotient.scale(&v.dim));
                    }
                }
                LemmaOutcome::Fails { remainder } => prop_assert!(!remainder.is_zero()),
            }
        }
    }

    #[test]
    fn claim1_round_trip(a in 0u64..50, b in 0u64..50) {
        let (a_i, b_i) = (a as i64, b as i64);
        prop_assert_eq!(claim1_solve(12 * a_i + 6 * b_i, 12 * a_i - 6 * b_i), Some((a, b)));
    }
}

#[test]
fn parallel_scan_is_identical() {
    for g in group_battery(6, 3, 2000) {
        assert_eq!(scan_series(&g), scan_series_par(&g));
    }
}

#[test]
fn parse_errors_carry_line_numbers() {
    let bad =
        "group G(2,1,1) order 2 rank 1 degrees 2\nirrep a dim 1 fake 1\nirrep b dim one fake t\n";
    match ExceptionalDataset::parse(bad) {
        Err(DatasetError::Syntax { line, .. }) => assert_eq!(line, 3),
        other => panic!("{other:?}"),
    }
    assert!(matches!(
        ExceptionalDataset::parse("irrep a dim 1 fake 1\n"),
        Err(DatasetError::Syntax { line: 1, .. })
    ));
    let twice = "group A order 2 rank 1 degrees 2\nirrep a dim 1 fake 1\n\ngroup A order 2 rank 1 degrees 2\n";
    assert!(matches!(
        ExceptionalDataset::parse(twice),
        Err(DatasetError::Syntax { line: 4, .. })
    ));
}

#[test]
fn invariant_violations_are_named() {
    let g = GroupSpec::new(3, 3, 2).unwrap();
    let mut ds = ExceptionalDataset {
        groups: vec![dataset_from_series(&g)],
    };
    ds.groups[0].rows[2].fake = "t^3 + t".parse().unwrap();
    assert!(
        matches!(ds.validate(), Err(DatasetError::GroupInvariant { identity, .. }) if identity.contains("Poincare"))
    );
    ds.groups[0].rows[2].fake = "t".parse().unwrap();
    assert!(matches!(
        ds.validate(),
        Err(DatasetError::RowInvariant {
            identity: "f(1) = dim",
            ..
        })
    ));
    ds.groups[0].rows[2].fake = LaurentPoly::zero();
    assert!(matches!(
        ds.validate(),
        Err(DatasetError::RowInvariant { .. })
    ));
    let mut ds = ExceptionalDataset {
        groups: vec![dataset_from_series(&g)],
    };
    ds.groups[0].order = 12.into();
    assert!(ds.validate().is_err());
    assert!(scan_exceptional(&ds).is_err());
}

#[test]
fn table1_expectations_are_complete() {
    let t = table1_expectations();
    assert_eq!(t.len(), 33);
    assert_eq!(
        t.keys().copied().collect::<Vec<_>>(),
        (5..=37).collect::<Vec<_>>()
    );
    for (name, k) in [
        ("G5", 3),
        ("G12", 1),
        ("G23", 4),
        ("G28", 5),
        ("G35", 9),
        ("G36", 30),
        ("G37", 75),
    ] {
        assert_eq!(table1_expected(name), Some(k));
    }
    assert_eq!(table1_expected("G4"), None);
    assert_eq!(table1_expected("G(3,3,2)"), None);
    let ds = ExceptionalDataset {
        groups: vec![dataset_from_series(&GroupSpec::new(3, 3, 2).unwrap())],
    };
    let rows = table1_comparison(&scan_exceptional(&ds).unwrap());
    assert_eq!(rows[0].matches(), None);
    assert_eq!(rows[0].failures, 0);
}

#[test]
fn witness_families() {
    let mut discrepancies = Vec::new();
    for g in group_battery(6, 5, 1 << 20)
        .into_iter()
        .filter(|g| g.p() > 1 && g.n() > 1)
    {
        match witness_check(&g) {
            Ok(w) => {
                assert_eq!(w.claimed_failure, !w.closed_form_is_polynomial, "{g}");
                if !w.agrees {
                    discrepancies.push(g.to_string());
                    assert!(w.note.is_some());
                }
                // The family witness is always a label of the group.
                assert!(
                    scan_series(&g)
                        .verdicts
                        .iter()
                        .any(|v| v.label == w.verdict.label),
                    "{g}"
                );
            }
            Err(GroupError::WitnessUndefined { .. }) => assert!(g.n() == 3 && g.m() < 3, "{g}"),
            Err(e) => panic!("{g}: {e}"),
        }
    }
    assert!(
        discrepancies.contains(&"G(3,3,2)".to_string()),
        "{discrepancies:?}"
    );
}

#[test]
fn witness_refusals() {
    for (m, p, n) in [(4, 1, 3), (3, 3, 1), (2, 2, 3)] {
        let g = GroupSpec::new(m, p, n).unwrap();
        assert!(
            matches!(witness_check(&g), Err(GroupError::WitnessUndefined { .. })),
            "{g}"
        );
    }
}
