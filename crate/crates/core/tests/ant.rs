mod common;

use emergelab::ant::{detect_highway, fingerprint, run, AntState, Heading};
use proptest::prelude::*;

use common::read_fixture;

#[test]
fn highway_matches_golden_report() {
    let report = detect_highway(&AntState::standard(), 20_000, 16, 5).unwrap();
    assert_eq!(report.to_string(), read_fixture("golden/ant_highway.txt"));
}

#[test]
fn highway_from_mid_highway_state() {
    let mid = run(&AntState::standard(), 12_000);
    let report = detect_highway(&mid, 1_000, 16, 5).unwrap();
    assert!(report.found);
    assert_eq!(report.period, 104);
    assert!(report.onset <= 104);
}

#[test]
fn every_heading_reaches_the_highway() {
    for h in [Heading::N, Heading::E, Heading::S, Heading::W] {
        let report = detect_highway(&AntState::new(h), 20_000, 16, 5).unwrap();
        assert!(report.found, "{h}");
        assert_eq!(report.period, 104, "{h}");
    }
}

#[test]
fn detector_replays_for_twenty_periods() {
    let start = AntState::standard();
    let r = detect_highway(&start, 20_000, 16, 5).unwrap();
    let anchor = run(&start, r.onset);
    let want = fingerprint(&anchor, r.window_radius);
    let mut s = anchor.clone();
    for k in 1..=20i64 {
        s = run(&s, r.period);
        assert_eq!(fingerprint(&s, r.window_radius), want, "k = {k}");
        assert_eq!(
            s.pos,
            (
                anchor.pos.0 + k * r.displacement.0,
                anchor.pos.1 + k * r.displacement.1
            )
        );
    }
}

#[test]
fn reverse_rule_recovers_start() {
    let start = AntState::standard();
    let mut s = run(&start, 5_000);
    for _ in 0..5_000 {
        s.retreat();
    }
    assert_eq!(s, start);
}

#[test]
fn mirrored_ant_traces_mirrored_path() {
    let start = AntState::standard();
    let mut a = start.clone();
    let mut b = start.mirrored();
    for n in 1..=5_000 {
        a.advance();
        b.advance();
        if n % 250 == 0 {
            assert_eq!(b, a.mirrored(), "step {n}");
        }
    }
    assert_eq!(b, a.mirrored());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn steps_count_applications(n in 0u64..3_000, m in 0u64..500) {
        let s = run(&run(&AntState::standard(), n), m);
        prop_assert_eq!(s.steps, n + m);
    }

    #[test]
    fn reversal_from_random_prefix(n in 0u64..3_000, m in 1u64..2_000) {
        let mid = run(&AntState::standard(), n);
        let mut s = run(&mid, m);
        for _ in 0..m {
            s.retreat();
        }
        prop_assert_eq!(s, mid);
    }
}
