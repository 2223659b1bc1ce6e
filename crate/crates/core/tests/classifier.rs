use bigmcg::classifier::{
    classify, curated_table, nondisplaceable_finite_type, CertTag, Certificate, ClassificationReport, ClassifierConfig,
    DisplaceabilityCert, Value, Verdict,
};
use bigmcg::end_space::{parse_surface, EndSpaceExpr, Genus, Mark, SurfaceSpec};
use bigmcg::mann_rafi::MaximalCount;
use bigmcg::Error;
use proptest::prelude::*;

const DEFAULT: ClassifierConfig = ClassifierConfig { strict: false };
const STRICT: ClassifierConfig = ClassifierConfig { strict: true };

fn run(s: &str, config: ClassifierConfig) -> ClassificationReport {
    classify(&parse_surface(s).unwrap(), config).unwrap()
}

fn disp_tag(r: &ClassificationReport) -> Option<CertTag> {
    match &r.displaceability.certificate {
        Some(Certificate::Displaceability(c)) => Some(c.tag()),
        _ => None,
    }
}

use Value::{No, Unknown, Yes};

const CORPUS: [&str; 10] = [
    "genus = inf; ends = pt*",
    "genus = 0; ends = omega(pt)",
    "genus = inf; ends = pt* + pt*",
    "genus = 0; ends = cantor",
    "genus = inf; ends = pt* + pt",
    "genus = 2; ends = omega(pt)",
    "genus = 0; ends = omega(omega(pt))",
    "genus = 0; ends = omega(pt) + omega(pt)",
    "genus = 0; ends = omega(pt) + omega(pt) + omega(pt)",
    "genus = inf; ends = pt* + omega(pt)",
];

#[test]
fn loch_ness() {
    let r = run(CORPUS[0], DEFAULT);
    assert_eq!((r.dense.value, r.somewhere_dense.value, r.pmap_dense.value), (Yes, Yes, Yes));
}

#[test]
fn flute() {
    let r = run(CORPUS[1], DEFAULT);
    assert_eq!(r.dense.value, Yes);
    assert_eq!(r.somewhere_dense.value, Yes);
    assert_eq!(r.pmap_dense.value, No);
    assert_eq!(disp_tag(&r), Some(CertTag::RemarkOneNegative));
}

#[test]
fn jacobs_ladder() {
    let r = run(CORPUS[2], DEFAULT);
    assert_eq!((r.dense.value, r.somewhere_dense.value), (No, Yes));
    assert_eq!(r.maximal_end_summary.count, MaximalCount::Finite(2));
}

#[test]
fn cantor_tree() {
    let r = run(CORPUS[3], DEFAULT);
    assert_eq!((r.dense.value, r.somewhere_dense.value), (No, No));
    assert_eq!(r.maximal_end_summary.count, MaximalCount::CantorMany);
}

#[test]
fn once_punctured_loch_ness() {
    for config in [DEFAULT, STRICT] {
        let r = run(CORPUS[4], config);
        assert_eq!(r.displaceability.value, Yes);
        assert_eq!(r.dense.value, No);
        assert_eq!(r.pmap_dense.value, No);
    }
    assert_eq!(disp_tag(&run(CORPUS[4], STRICT)), Some(CertTag::CuratedTable));
}

#[test]
fn positive_finite_genus() {
    let r = run(CORPUS[5], DEFAULT);
    assert_eq!(r.displaceability.value, Yes);
    assert_eq!(
        r.displaceability.certificate,
        Some(Certificate::Displaceability(DisplaceabilityCert::PositiveFiniteGenus { genus: 2 }))
    );
    assert_eq!(r.dense.value, No);
}

#[test]
fn omega_squared() {
    let r = run(CORPUS[6], DEFAULT);
    assert_eq!(r.dense.value, Yes);
    assert_eq!(
        r.displaceability.certificate,
        Some(Certificate::Displaceability(DisplaceabilityCert::RemarkOneNegative { alpha: "2".into() }))
    );
}

#[test]
fn biinfinite_flute() {
    let d = run(CORPUS[7], DEFAULT);
    assert_eq!(d.maximal_end_summary.count, MaximalCount::Finite(2));
    assert_eq!((d.dense.value, d.somewhere_dense.value), (No, Yes));
    assert!(d.somewhere_dense.heuristic);
    let s = run(CORPUS[7], STRICT);
    assert_eq!((s.dense.value, s.somewhere_dense.value), (No, Unknown));
    assert!(!s.somewhere_dense.unfired.is_empty());
}

#[test]
fn three_limit_ends() {
    let r = run(CORPUS[8], DEFAULT);
    assert_eq!(r.somewhere_dense.value, No);
    match &r.displaceability.certificate {
        Some(Certificate::Displaceability(DisplaceabilityCert::InvariantSetGE3 { invariant_set, size })) => {
            assert_eq!(*size, 3);
            assert_eq!(invariant_set, &vec![("omega(pt)".to_string(), 3)]);
        }
        other => panic!("unexpected certificate {other:?}"),
    }
}

#[test]
fn nonplanar_point_beside_flute() {
    let d = run(CORPUS[9], DEFAULT);
    assert_eq!(d.maximal_end_summary.count, MaximalCount::Finite(2));
    assert_eq!(d.somewhere_dense.value, No);
    assert_eq!(disp_tag(&d), Some(CertTag::Figure7Pattern));
    assert!(d.displaceability.heuristic && d.somewhere_dense.heuristic);
    let s = run(CORPUS[9], STRICT);
    assert_eq!(s.somewhere_dense.value, Unknown);
    assert_eq!(s.displaceability.value, Unknown);
    assert_eq!(s.dense.value, No);
}

#[test]
fn global_checks_on_corpus() {
    for s in CORPUS {
        for config in [DEFAULT, STRICT] {
            let r = run(s, config);
            assert_eq!(r.meager.value, Yes, "{s}");
            assert_eq!(r.extended_dense.value, No, "{s}");
            check_report(&r);
        }
    }
}

#[test]
fn curated_rows_match_their_verdicts() {
    for entry in curated_table() {
        let spec = SurfaceSpec { genus: entry.genus, ends: entry.normal_ends.clone() };
        let v = nondisplaceable_finite_type(&spec, DEFAULT).unwrap();
        assert_eq!(v.value == Yes, entry.has_nondisplaceable, "{}", entry.name);
    }
}

#[test]
fn finite_type_rejected() {
    let spec = SurfaceSpec { genus: Genus::Finite(0), ends: EndSpaceExpr::pt() };
    assert!(matches!(classify(&spec, DEFAULT), Err(Error::Validity(_))));
    assert!(matches!(parse_surface("genus = 0; ends = pt"), Err(Error::Validity(_))));
}

#[test]
fn records_are_deterministic() {
    for s in CORPUS {
        assert_eq!(run(s, DEFAULT).to_record(), run(s, DEFAULT).to_record());
    }
    let rec = run(CORPUS[0], DEFAULT).to_record();
    let keys: Vec<&str> = rec.lines().map(|l| l.split(':').next().unwrap()).collect();
    assert_eq!(&keys[..4], &["surface", "named_surface", "maximal_ends.count", "maximal_ends.classes"]);
    assert!(rec.contains("dense.value: Yes\n"));
}

#[test]
fn spec_examples() {
    let v = |s: &str| nondisplaceable_finite_type(&parse_surface(s).unwrap(), DEFAULT).unwrap();
    assert_eq!(v("genus = 2; ends = omega(pt)").value, Yes);
    assert_eq!(v("genus = 0; ends = omega(omega(pt))").value, No);
    assert_eq!(v("genus = 0; ends = omega(pt) + omega(pt) + omega(pt)").value, Yes);
}

fn check_verdict(v: &Verdict) {
    match v.value {
        Yes | No => assert!(!v.citations.is_empty(), "{v:?}"),
        Unknown => assert!(!v.unfired.is_empty(), "{v:?}"),
    }
}

fn check_report(r: &ClassificationReport) {
    for v in [&r.meager, &r.dense, &r.somewhere_dense, &r.pmap_dense, &r.extended_dense, &r.displaceability] {
        check_verdict(v);
    }
    if r.dense.value == Yes {
        assert_eq!(r.somewhere_dense.value, Yes);
    }
    if r.somewhere_dense.value == No {
        assert_ne!(r.dense.value, Yes);
    }
    if r.named_surface != Some(bigmcg::end_space::NamedSurface::LochNess) {
        assert_eq!(r.pmap_dense.value, No);
    }
}

fn mark() -> impl Strategy<Value = Mark> {
    prop_oneof![Just(Mark::Planar), Just(Mark::Nonplanar)]
}

fn expr() -> impl Strategy<Value = EndSpaceExpr> {
    let leaf = prop_oneof![3 => mark().prop_map(EndSpaceExpr::Pt), 1 => mark().prop_map(EndSpaceExpr::Cantor)];
    leaf.prop_recursive(3, 12, 3, |inner| {
        prop_oneof![
            (inner.clone(), mark()).prop_map(|(c, m)| {
                let limit = if c.has_mark(Mark::Nonplanar) { Mark::Nonplanar } else { m };
                EndSpaceExpr::omega(c, limit)
            }),
            proptest::collection::vec(inner, 2..=3).prop_map(EndSpaceExpr::sum),
        ]
    })
}

fn surface() -> impl Strategy<Value = SurfaceSpec> {
    (expr(), 0u64..3).prop_filter_map("finite type", |(ends, g)| {
        if ends.finite_size().is_some() {
            return None;
        }
        let genus = if ends.has_mark(Mark::Nonplanar) { Genus::Infinite } else { Genus::Finite(g) };
        Some(SurfaceSpec { genus, ends })
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 400, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn report_invariants(spec in surface()) {
        for config in [DEFAULT, STRICT] {
            check_report(&classify(&spec, config).unwrap());
        }
    }

    #[test]
    fn strict_only_retracts_heuristics(spec in surface()) {
        let d = classify(&spec, DEFAULT).unwrap();
        let s = classify(&spec, STRICT).unwrap();
        let pairs = [
            (&d.dense, &s.dense),
            (&d.somewhere_dense, &s.somewhere_dense),
            (&d.displaceability, &s.displaceability),
            (&d.pmap_dense, &s.pmap_dense),
        ];
        for (a, b) in pairs {
            prop_assert!(!b.heuristic);
            if a.value != b.value {
                prop_assert!(a.heuristic, "{a:?} -> {b:?}");
                prop_assert_eq!(b.value, Unknown, "{:?} -> {:?}", a, b);
            }
        }
    }

    #[test]
    fn record_round_trips_through_parser(spec in surface()) {
        let r = classify(&spec, DEFAULT).unwrap();
        let reparsed = parse_surface(&r.surface).unwrap();
        prop_assert_eq!(classify(&reparsed, DEFAULT).unwrap(), r);
    }
}
