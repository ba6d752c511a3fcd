//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (visible with `cargo test -p kacq --test acceptance -- --nocapture`).
//! Every expected value is pinned exactly; runtime ceilings are asserted.

use std::time::{Duration, Instant};

use kacq::hua::{p_series, q_series, KacTable, RefinedKacTable};
use kacq::partitions::{enumerate_tuples, lambda_fiber, tau_m, PartitionTuple};
use kacq::qfield::RationalFunction;
use kacq::quiver::{DimVector, Quiver};
use kacq::series::{ExponentKey, SeriesContext, TruncatedSeries};
use kacq::verify::{
    check_gamma_oracle, check_heine, check_jordan, check_level_transport, check_mozgovoy_transport,
    check_oracle_log, check_positivity, check_sum_identity, check_tables, oracle_log,
    random_positive_series, rng_from_seed,
};

fn rf(s: &str) -> RationalFunction {
    s.parse().unwrap()
}

fn dv(entries: &[u32]) -> DimVector {
    DimVector::new(entries.to_vec())
}

fn pt(s: &str) -> PartitionTuple {
    s.parse().unwrap()
}

fn finish(criterion: &str, started: Instant, ceiling: Duration) {
    let elapsed = started.elapsed();
    assert!(
        elapsed < ceiling,
        "{criterion}: exceeded the runtime ceiling ({elapsed:?} >= {ceiling:?})"
    );
    println!("{criterion}: PASS ({elapsed:?})");
}

#[test]
fn criterion_01_two_loop_kac_table() {
    let started = Instant::now();
    let table = KacTable::compute(&Quiver::g_loop(2), 4).unwrap();
    let rows = [
        ("q^2", 1u32),
        ("q^5+q^3", 2),
        ("q^10+q^8+q^7+q^6+q^5+q^4", 3),
        (
            "q^17+q^15+q^14+2q^13+q^12+3q^11+2q^10+4q^9+2q^8+3q^7+q^6+q^5",
            4,
        ),
    ];
    for (expect, n) in rows {
        assert_eq!(
            table.get(&dv(&[n])).unwrap().to_string(),
            expect,
            "dimension {n}"
        );
    }
    finish(
        "criterion 1 (2-loop Kac polynomials)",
        started,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_02_two_loop_refined_table() {
    let started = Instant::now();
    let table = RefinedKacTable::compute(&Quiver::g_loop(2), 4, None).unwrap();
    let rows = [
        ("[1]", "q^2"),
        ("[2]", "q^3"),
        ("[1,1]", "q^5"),
        ("[3]", "q^4"),
        ("[2,1]", "q^6+q^5"),
        ("[1,1,1]", "q^10+q^8+q^7"),
        ("[4]", "q^5"),
        ("[3,1]", "q^7+q^6"),
        ("[2,2]", "q^9+q^7"),
        ("[2,1,1]", "q^11+q^10+2q^9+2q^8+q^7"),
        ("[1,1,1,1]", "q^17+q^15+q^14+2q^13+q^12+2q^11+q^10+q^9"),
    ];
    assert_eq!(rows.len(), 11);
    for (lambda, expect) in rows {
        assert_eq!(
            table.get(&pt(lambda)).unwrap().to_string(),
            expect,
            "lambda = {lambda}"
        );
    }
    finish(
        "criterion 2 (2-loop refined values)",
        started,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_03_two_vertex_tables() {
    let started = Instant::now();
    let report = check_tables().unwrap();
    assert!(report.passed(), "{report}");

    // The Laurent rows deserve direct pinning on top of the golden files.
    let arrow = Quiver::parse("[[0,1],[0,0]]").unwrap();
    let refined = RefinedKacTable::compute(&arrow, 4, Some(2)).unwrap();
    assert_eq!(
        refined.get(&pt("[1,1];[1,1]")).unwrap().to_string(),
        "-q^-1+q^-2"
    );
    assert_eq!(
        refined.get(&pt("[2];[2]")).unwrap().to_string(),
        "q^-1+q^-2"
    );
    finish(
        "criterion 3 (two-vertex tables)",
        started,
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_04_fiber_sum_identity() {
    let started = Instant::now();
    for (text, w) in [("[[2]]", 4u32), ("[[1,1],[0,1]]", 4), ("[[0,1],[0,0]]", 4)] {
        let quiver = Quiver::parse(text).unwrap();
        let report = check_sum_identity(&quiver, w).unwrap();
        assert!(report.passed(), "{report}");
    }
    finish(
        "criterion 4 (fiber-sum identity)",
        started,
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_05_level_two_transport() {
    let started = Instant::now();
    for g in 1..=3u32 {
        let per_quiver = Instant::now();
        let report = check_level_transport(&Quiver::g_loop(g), 2, 4).unwrap();
        assert!(report.passed(), "{report}");
        assert!(
            per_quiver.elapsed() < Duration::from_secs(120),
            "transport check for g={g} exceeded 120 s"
        );
    }
    finish(
        "criterion 5 (level-2 transport, g = 1..3)",
        started,
        Duration::from_secs(360),
    );
}

#[test]
fn criterion_06_one_loop_classification() {
    let started = Instant::now();
    let report = check_jordan(6).unwrap();
    assert!(report.passed(), "{report}");
    let refined = RefinedKacTable::compute(&Quiver::g_loop(1), 6, None).unwrap();
    for n in 1..=6u32 {
        let single = PartitionTuple::new(vec![kacq::partitions::Partition::new(vec![n]).unwrap()]);
        assert_eq!(refined.get(&single).unwrap(), rf("q"));
    }
    finish(
        "criterion 6 (1-loop classification)",
        started,
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_07_positivity() {
    let started = Instant::now();
    for g in 1..=3u32 {
        let report = check_positivity(&Quiver::g_loop(g), 4).unwrap();
        assert!(report.passed(), "{report}");
    }
    let with_loops = Quiver::parse("[[1,1],[0,1]]").unwrap();
    let report = check_positivity(&with_loops, 4).unwrap();
    assert!(report.passed(), "{report}");
    finish(
        "criterion 7 (positivity of refined values)",
        started,
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_08_single_variable_identities() {
    let started = Instant::now();
    let report = check_heine(8).unwrap();
    assert!(report.passed(), "{report}");
    finish(
        "criterion 8 (single-variable identities, W=8)",
        started,
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_09_logarithm_oracle() {
    let started = Instant::now();
    let report = check_oracle_log(50, 1729).unwrap();
    assert!(report.passed(), "{report}");
    finish(
        "criterion 9 (logarithm oracle agreement)",
        started,
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_10_exp_log_round_trips() {
    let started = Instant::now();
    let mut rng = rng_from_seed(1729);
    for i in 0..50u32 {
        let s = random_positive_series(&mut rng, 1 + (i as usize % 3), 2 + i % 4, 5);
        let f = s.plethystic_exp().unwrap();
        assert_eq!(f.plethystic_log().unwrap(), s, "Log(Exp(s)) at case {i}");
    }
    for i in 0..50u32 {
        let s = random_positive_series(&mut rng, 1 + (i as usize % 3), 2 + i % 4, 5);
        let f = TruncatedSeries::one(s.context().clone()).add(&s).unwrap();
        let log = f.plethystic_log().unwrap();
        assert_eq!(log.plethystic_exp().unwrap(), f, "Exp(Log(f)) at case {i}");
    }
    finish(
        "criterion 10 (Exp/Log round trips)",
        started,
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_11_enlarged_quiver_oracle() {
    let started = Instant::now();
    let report = check_gamma_oracle(30, 1729).unwrap();
    assert!(report.passed(), "{report}");
    finish(
        "criterion 11 (enlarged-quiver closed form)",
        started,
        Duration::from_secs(60),
    );
}

// The remaining assertions below tie loose ends across criteria: the
// transport identity also holds at the series level for a two-vertex
// quiver, and the positivity-transport property test passes at its
// default size.

#[test]
fn transport_series_check_two_vertex() {
    let quiver = Quiver::parse("[[1,1],[0,1]]").unwrap();
    let report = check_level_transport(&quiver, 2, 3).unwrap();
    assert!(report.passed(), "{report}");
}

#[test]
fn mozgovoy_transport_default_size() {
    let report = check_mozgovoy_transport(20, 4, 1729).unwrap();
    assert!(report.passed(), "{report}");
}

#[test]
fn oracle_log_agrees_on_fresh_pipeline_series() {
    let quiver = Quiver::parse("[[1,1],[0,1]]").unwrap();
    for series in [
        p_series(&quiver, 4).unwrap(),
        q_series(&quiver, 4, Some(4)).unwrap(),
    ] {
        assert_eq!(
            oracle_log(&series).unwrap(),
            series.plethystic_log().unwrap()
        );
    }
}

#[test]
fn tau_alignment_with_enlarged_vertex_order() {
    // The embedded tuple indexes the enlarged quiver's vertices in the
    // level-major order produced by gamma_m.
    let quiver = Quiver::parse("[[1,1],[0,1]]").unwrap();
    let enlarged = quiver.gamma_m(2).unwrap();
    assert_eq!(enlarged.labels(), &["v1^1", "v2^1", "v1^2", "v2^2"]);
    let lambda = pt("[2,1];[2,2]");
    let image = tau_m(&lambda, 2).unwrap();
    assert_eq!(image, pt("[1];[0];[1];[1,1]"));
    assert_eq!(image.len(), enlarged.vertex_count());

    // Spot equality of one transported value.
    let refined = RefinedKacTable::compute(&quiver, 4, Some(2)).unwrap();
    let refined_enlarged = RefinedKacTable::compute(&enlarged, 4, Some(1)).unwrap();
    for t in enumerate_tuples(2, 4, Some(2)) {
        if t.is_zero() {
            continue;
        }
        assert_eq!(
            refined.get(&t).unwrap(),
            refined_enlarged.get(&tau_m(&t, 2).unwrap()).unwrap(),
            "lambda = {t}"
        );
    }
}

#[test]
fn fiber_sums_match_on_the_enlarged_side_too() {
    // Coherence across criteria 4 and 5: fiber sums of the enlarged quiver
    // reproduce its Kac polynomials.
    let enlarged = Quiver::g_loop(2).gamma_m(2).unwrap();
    let kac = KacTable::compute(&enlarged, 3).unwrap();
    let refined = RefinedKacTable::compute(&enlarged, 3, Some(3)).unwrap();
    for alpha in [dv(&[1, 0]), dv(&[0, 1]), dv(&[1, 1]), dv(&[2, 1])] {
        let mut sum = RationalFunction::zero();
        for t in lambda_fiber(alpha.entries()) {
            sum = &sum + &refined.get(&t).unwrap();
        }
        assert_eq!(sum, kac.get(&alpha).unwrap(), "alpha = {alpha}");
    }
}

#[test]
fn heine_series_exactness_at_degree_one() {
    // The degree-1 coefficient of Exp is its argument.
    let ctx = SeriesContext::dims(1, 8);
    let f = TruncatedSeries::monomial(ctx, ExponentKey::new(vec![1]), rf("-1/(q-1)"))
        .unwrap()
        .plethystic_exp()
        .unwrap();
    assert_eq!(f.coefficient(&ExponentKey::new(vec![1])), rf("-1/(q-1)"));
}
