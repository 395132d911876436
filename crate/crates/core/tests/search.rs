mod common;

use std::sync::Arc;

use fintop::homotopy::Limits;
use fintop::io::{certify, to_json_line, CertifyOptions, Certified, ReportJson};
use fintop::search::{
    cat, search, tc, Invariant, LevelOutcome, Reason, RefutationResult, Searcher, Status,
};
use fintop::space::{circle_model, interval_model, point, sphere_model, wedge};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Relabels blocks in order of first appearance.
fn normalize(assignment: &[usize]) -> Vec<usize> {
    let mut names = Vec::new();
    assignment
        .iter()
        .map(|b| match names.iter().position(|n| n == b) {
            Some(i) => i,
            None => {
                names.push(*b);
                names.len() - 1
            }
        })
        .collect()
}

fn json(report: &fintop::search::SearchReport) -> String {
    to_json_line(&ReportJson::from_report(report))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Merging two blocks of a refuted assignment keeps it refuted: the
    /// merged block contains the old witness.
    #[test]
    fn merging_blocks_keeps_refutations(
        n in 2usize..4,
        raw in prop::collection::vec(0usize..4, 16),
        pick in any::<(usize, usize)>(),
    ) {
        let space = Arc::new(circle_model(n).unwrap());
        let mut searcher = Searcher::new(Invariant::Tc, space, &common::unlimited()).unwrap();
        let m = searcher.maximal().len();
        let assignment = normalize(&raw[..m]);
        let blocks = assignment.iter().max().unwrap() + 1;
        if let RefutationResult::Refuted { block, witness, .. } = searcher.refute_assignment(&assignment) {
            prop_assert!(witness.iter().all(|&i| assignment[i] == block));
            let (a, b) = (pick.0 % blocks, pick.1 % blocks);
            let merged: Vec<usize> = assignment.iter().map(|&x| if x == b { a } else { x }).collect();
            let merged = normalize(&merged);
            let refuted = matches!(searcher.refute_assignment(&merged), RefutationResult::Refuted { .. });
            prop_assert!(refuted);
        }
    }

    /// Reports are reproducible byte for byte.
    #[test]
    fn reports_are_deterministic(seed in any::<u64>()) {
        let space = common::random_connected_space(&mut ChaCha8Rng::seed_from_u64(seed), 5, 0.5);
        for invariant in [Invariant::Cat, Invariant::Tc] {
            let a = search(invariant, &space, &common::unlimited()).unwrap();
            let b = search(invariant, &space, &common::unlimited()).unwrap();
            prop_assert_eq!(json(&a), json(&b));
        }
    }
}

#[test]
fn lower_records_account_for_every_assignment() {
    let space = Arc::new(circle_model(3).unwrap());
    let mut searcher = Searcher::new(Invariant::Tc, space, &common::unlimited()).unwrap();
    let LevelOutcome::Exhausted(record) = searcher.level(2).unwrap() else {
        panic!("two blocks cannot cover the square of the circle");
    };
    assert_eq!(record.assignments, 255);
    assert!(record.is_complete());
    assert_eq!(record.refuted.iter().map(|r| r.count).sum::<u128>(), 255);
    for r in &record.refuted {
        let block = r.prefix[r.witness[0]];
        assert!(r.witness.iter().all(|&i| r.prefix[i] == block));
        assert_ne!(r.reason, Reason::Inconclusive);
    }
}

#[test]
fn known_values() {
    let l = common::unlimited();
    let check = |report: fintop::search::SearchReport, value: usize| {
        assert_eq!(report.value, value, "{} of {}", report.invariant, report.space.len());
        assert_eq!(report.status, Status::Proven);
    };
    check(cat(&point(), &l).unwrap(), 1);
    check(tc(&point(), &l).unwrap(), 1);
    check(cat(&interval_model(3).unwrap(), &l).unwrap(), 1);
    check(tc(&interval_model(3).unwrap(), &l).unwrap(), 1);
    for n in 2..=5 {
        check(cat(&circle_model(n).unwrap(), &l).unwrap(), 2);
    }
    check(cat(&sphere_model(2).unwrap(), &l).unwrap(), 2);
    check(tc(&circle_model(2).unwrap(), &l).unwrap(), 4);
    check(tc(&circle_model(3).unwrap(), &l).unwrap(), 3);
    check(tc(&sphere_model(1).unwrap(), &l).unwrap(), 4);
    let c = circle_model(2).unwrap();
    let eight = wedge(&[c.clone(), c], &["y0", "y0"]).unwrap();
    check(cat(&eight, &l).unwrap(), 2);
}

#[test]
fn exhausted_limits_give_certifiable_upper_bounds() {
    let limits = Limits {
        max_visited: usize::MAX,
        max_seconds: Some(0.0),
    };
    let report = tc(&circle_model(4).unwrap(), &limits).unwrap();
    assert_eq!(report.status, Status::UpperBoundOnly);
    let lower = report.lower.as_ref().unwrap();
    assert!(!lower.is_complete());
    assert!(lower.count_for(Reason::Inconclusive) > 0);
    let options = CertifyOptions {
        recheck_exhaustion: false,
        limits: common::unlimited(),
    };
    match certify(&json(&report), &options).unwrap() {
        Certified::Report { value, status, .. } => {
            assert_eq!(value, report.value);
            assert_eq!(status, Status::UpperBoundOnly);
        }
        other => panic!("unexpected artifact {other:?}"),
    }
}
