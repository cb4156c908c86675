use planturan::construct;
use planturan::detect::Pattern;
use planturan::enumerate::GenLimits;
use planturan::par::Exec;
use planturan::verify::{
    class_bound, extremal_characterization_h3, max_edges, run_statement, scan_class, verify_bounds, BoundMode, Certificate, VerifyOptions,
    H3_VALUES,
};
use planturan::{Error, PlaneGraph};

fn add_chord(g: &PlaneGraph, face: usize) -> PlaneGraph {
    let walk = &g.face(face).unwrap().walk;
    let (a, b) = walk[0];
    let (c, d) = walk[2];
    let at = |x: usize, y: usize| g.neighbors(x).iter().position(|&w| w == y).unwrap();
    g.insert_edge(a, at(a, b), c, at(c, d)).unwrap()
}

#[test]
fn h3_values_up_to_twelve() {
    for &(n, want) in H3_VALUES.iter().filter(|&&(n, _)| n <= 12) {
        let r = max_edges(n, Pattern::friendship(3), 2, GenLimits::default(), Exec::default()).unwrap();
        assert_eq!(r.value, want, "n={n}");
        assert_eq!(r.witness.edge_count(), want);
        assert!(Pattern::friendship(3).is_free(&r.witness).unwrap());
    }
}

#[test]
fn values_grow_with_pattern_size() {
    for n in 6..=10 {
        let mut last = 0;
        for k in 2..=5 {
            let v = match max_edges(n, Pattern::fan(k), 2, GenLimits::default(), Exec::default()) {
                Ok(r) => r.value,
                Err(Error::Inconclusive(_)) => 0,
                Err(e) => panic!("{e}"),
            };
            assert!(v >= last, "n={n} k={k}");
            last = v;
        }
        let h2 = max_edges(n, Pattern::friendship(2), 2, GenLimits::default(), Exec::default()).map_or(0, |r| r.value);
        let h3 = max_edges(n, Pattern::friendship(3), 2, GenLimits::default(), Exec::default()).unwrap().value;
        assert!(h2 <= h3, "n={n}");
    }
}

#[test]
fn full_scan_counts_do_not_depend_on_executor() {
    let a = scan_class(11, 0, Pattern::friendship(3), GenLimits::default(), Exec::Sequential, false).unwrap();
    let b = scan_class(11, 0, Pattern::friendship(3), GenLimits::default(), Exec::Parallel, false).unwrap();
    assert!(a.complete && b.complete);
    assert_eq!((a.triangulations, a.hits), (1249, 0));
    assert_eq!((b.triangulations, b.hits), (1249, 0));
}

#[test]
fn class_bound_scans_only_when_counting_fails() {
    let easy = class_bound(12, 2, BoundMode::Fan(4), GenLimits::default(), Exec::default()).unwrap();
    assert!(easy.holds_by_count && easy.scan.is_none() && easy.ok);
    let hard = class_bound(12, 0, BoundMode::Fan(4), GenLimits::default(), Exec::default()).unwrap();
    assert!(!hard.holds_by_count && hard.ok);
    assert_eq!(hard.scan.unwrap().triangulations, 7595);
}

#[test]
fn family_members_meet_the_bounds_with_equality() {
    let t = verify_bounds((0..=2).map(construct::h3_family), BoundMode::H3).unwrap();
    assert_eq!((t.in_range, t.equality, t.violations), (3, 3, 0));
    assert_eq!(t.max_ratio.as_deref(), Some("1"));
    let f = verify_bounds((0..=1).map(|t| construct::fan_family(t, 3).unwrap()), BoundMode::Fan(3)).unwrap();
    assert_eq!((f.in_range, f.equality, f.violations), (2, 2, 0));
    let ico = verify_bounds([construct::icosahedron()], BoundMode::Fan(5)).unwrap();
    assert_eq!(ico.in_range, 0);
}

#[test]
fn characterization_rejects_a_chord() {
    let g = construct::h3_family(1);
    assert!(extremal_characterization_h3(&g).unwrap());
    let quad = g.faces().iter().find(|f| f.size() == 4).unwrap().id;
    let h = add_chord(&g, quad);
    assert_eq!(h.edge_count(), g.edge_count() + 1);
    assert!(!extremal_characterization_h3(&h).unwrap());
}

#[test]
fn statements_without_deep() {
    let opts = VerifyOptions::default();
    for id in ["LEM_2_2", "THM_3_2", "FAMILY_H3", "FAMILY_FAN", "THM_2_4_BOUND"] {
        let c = run_statement(id, &opts).unwrap();
        assert!(c.passed(), "{id}\n{}", c.text_table());
        let back = Certificate::from_json(&c.to_json()).unwrap();
        assert!(back.reverify_witnesses().unwrap(), "{id}");
    }
    assert!(matches!(run_statement("LEM_3_1", &opts), Err(Error::NTooLarge(13))));
    assert!(matches!(run_statement("nope", &opts), Err(Error::UnknownName(_))));
}

#[test]
fn claims_certificates_on_small_orders() {
    let opts = VerifyOptions { sweep_max_n: 8, ..Default::default() };
    for id in ["CLAIMS_H3", "CLAIMS_FAN"] {
        let c = run_statement(id, &opts).unwrap();
        assert!(c.passed(), "{}", c.text_table());
        assert_eq!(c.counts["violations"], 0);
    }
}
