use tlpss_wasm::*;

/// x=a, y=b with common neighbors c, d and a hidden node h behind b.
const TOY: &str = "% toy\na c 1 1\nb c 1 1\na d 1 2\nb d 1 2\nb h 1 3\nk h 1 3\na k 1 4\n";

#[test]
fn asf_curve_spans_ceiling_to_floor() {
    let c = asf_curve(2.0, 1.0, 5.0, 40.0, 81).unwrap();
    assert_eq!(c.x.len(), 81);
    assert_eq!(c.y[0], c.ceiling);
    assert!(c.y.windows(2).all(|w| w[0] >= w[1]));
    assert!(c.y.iter().all(|&v| v >= c.floor && v <= c.ceiling));
    assert_eq!(c.floor, 0.5);
    let logs = asf_log_excess_curve(2.0, 1.0, 5.0, 40.0, 81).unwrap();
    assert!(logs.windows(2).all(|w| w[0] > w[1]));
    assert!(asf_curve(0.0, 1.0, 5.0, 10.0, 5).is_err());
    assert!(asf_curve(1.0, 1.0, 5.0, 10.0, 1).is_err());
}

#[test]
fn exp_curve_starts_at_one() {
    let c = exp_curve(0.5, 10.0, 11).unwrap();
    assert_eq!(c.y[0], 1.0);
    assert!((c.y[2] - (-1.0f64).exp()).abs() < 1e-15);
    assert!(exp_curve(-1.0, 10.0, 11).is_err());
}

#[test]
fn explain_pair_reports_structure() {
    let e = explain_pair(TOY, "a", "b", 1.0, 1.0, 5.0, 1.0).unwrap();
    assert_eq!(e.common_neighbors, vec!["c", "d"]);
    assert_eq!(e.hidden_x, vec!["h"]);
    assert_eq!(e.hidden_y, vec!["k"]);
    assert!(!e.linked);
    assert_eq!(e.latent_edges.len(), 2);
    assert!(e
        .latent_edges
        .iter()
        .all(|l| l.weight > 0.0 && l.weight < 0.5));
    assert_eq!(e.scores.len(), 7);
    let tlpss = e.scores.iter().find(|s| s.method == "TLPSS").unwrap().score;
    assert!(tlpss > 0.0);

    let q0 = explain_pair(TOY, "a", "b", 1.0, 0.0, 5.0, 1.0).unwrap();
    assert!(q0.latent_edges.iter().all(|l| l.weight == 0.0));
    assert!(explain_pair(TOY, "a", "zz", 1.0, 1.0, 5.0, 1.0).is_err());
    assert!(explain_pair(TOY, "a", "a", 1.0, 1.0, 5.0, 1.0).is_err());
}

#[test]
fn synthetic_network_is_deterministic_and_parseable() {
    let a = synthetic_network(60, 500, 0.7, 3).unwrap();
    assert_eq!(a, synthetic_network(60, 500, 0.7, 3).unwrap());
    assert_ne!(a, synthetic_network(60, 500, 0.7, 4).unwrap());
    assert_eq!(a.lines().filter(|l| !l.starts_with('%')).count(), 500);
    assert!(synthetic_network(2, 10, 0.5, 0).is_err());
}

#[test]
fn evaluate_text_runs_every_method() {
    let text = synthetic_network(80, 1200, 0.7, 1).unwrap();
    let s = evaluate_text(&text, 0.9, 3.0, 1.0, 5.0, 1.0, 50, 7).unwrap();
    assert_eq!(s.results.len(), 7);
    assert!(s.positives > 0 && s.negatives > 0);
    assert_eq!(s.train_edges + s.test_edges, 1200);
    for r in &s.results {
        assert!((0.0..=1.0).contains(&r.auc), "{}", r.method);
        assert!(r.precision.is_some());
    }
    assert_eq!(
        s,
        evaluate_text(&text, 0.9, 3.0, 1.0, 5.0, 1.0, 50, 7).unwrap()
    );
    assert!(evaluate_text("% empty\n", 0.9, 3.0, 1.0, 5.0, 1.0, 50, 7).is_err());
}
