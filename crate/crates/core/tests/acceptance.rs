mod common;

use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use bigmcg::classifier::{classify, CertTag, Certificate, ClassificationReport, ClassifierConfig, Value};
use bigmcg::curve::oracle::{oracle_act, oracle_coords, CrossingCurve};
use bigmcg::curve::{act_word, intersection_with_round, round_twist_word, BraidWord, Generator, RoundCurve};
use bigmcg::end_space::parse_surface;
use bigmcg::fraisse::*;
use bigmcg::mann_rafi::MaximalCount;
use bigmcg::MultiCurve;
use common::*;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn report(text: &str, strict: bool) -> Result<ClassificationReport, String> {
    let spec = parse_surface(text).map_err(|e| e.to_string())?;
    classify(&spec, ClassifierConfig { strict }).map_err(|e| e.to_string())
}

fn displaceability_tag(r: &ClassificationReport) -> Option<CertTag> {
    match &r.displaceability.certificate {
        Some(Certificate::Displaceability(c)) => Some(c.tag()),
        _ => None,
    }
}

fn criterion_1() -> Check {
    use Value::{No, Unknown, Yes};
    let corpus = [
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
    let r: Vec<ClassificationReport> = corpus.iter().map(|s| report(s, false)).collect::<Result<_, _>>()?;
    let s: Vec<ClassificationReport> = corpus.iter().map(|s| report(s, true)).collect::<Result<_, _>>()?;
    ensure!((r[0].dense.value, r[0].somewhere_dense.value, r[0].pmap_dense.value) == (Yes, Yes, Yes), "Loch Ness");
    ensure!(r[1].dense.value == Yes, "flute");
    ensure!((r[2].dense.value, r[2].somewhere_dense.value) == (No, Yes), "Jacob's ladder");
    ensure!((r[3].dense.value, r[3].somewhere_dense.value) == (No, No), "Cantor tree");
    ensure!((r[4].displaceability.value, r[4].dense.value) == (Yes, No), "once-punctured Loch Ness");
    ensure!(
        (r[5].displaceability.value, r[5].dense.value) == (Yes, No)
            && displaceability_tag(&r[5]) == Some(CertTag::PositiveFiniteGenus),
        "genus 2 flute"
    );
    ensure!(r[6].dense.value == Yes, "omega^2+1");
    ensure!(r[7].maximal_end_summary.count == MaximalCount::Finite(2), "biinfinite flute count");
    ensure!(r[7].dense.value == No && r[7].somewhere_dense.value == Yes, "biinfinite flute default");
    ensure!(s[7].somewhere_dense.value == Unknown, "biinfinite flute strict");
    ensure!(
        r[8].displaceability.value == Yes
            && r[8].somewhere_dense.value == No
            && matches!(
                &r[8].displaceability.certificate,
                Some(Certificate::Displaceability(bigmcg::classifier::DisplaceabilityCert::InvariantSetGE3 { size: 3, .. }))
            ),
        "omega*3+1"
    );
    ensure!(r[9].maximal_end_summary.count == MaximalCount::Finite(2), "nonplanar point beside flute: count");
    ensure!(r[9].somewhere_dense.value == No && s[9].somewhere_dense.value == Unknown, "nonplanar point beside flute: verdicts");
    for x in r.iter().chain(&s) {
        ensure!(x.meager.value == Yes && x.extended_dense.value == No, "global checks on {}", x.surface);
    }
    Ok(())
}

fn criterion_2() -> Check {
    let class = orders(4, 2, 4);
    for prop in [ClassProperty::Hp, ClassProperty::Jep, ClassProperty::Ap] {
        let outcome = check_class_property(&class, prop).map_err(|e| e.to_string())?;
        ensure!(outcome.holds(), "{prop:?}: {outcome}");
    }
    let chain_result = fraisse_chain(&class, 8).map_err(|e| e.to_string())?;
    let last = chain_result.last();
    for n in 1..=4 {
        let hits = injections(n, last.size())
            .into_iter()
            .filter(|m| m.windows(2).all(|w| w[0] < w[1]))
            .any(|m| brute_is_embedding(&chain(n), last, &m));
        ensure!(hits, "order of size {n} missing from {last}");
    }
    Ok(())
}

fn criterion_3() -> Check {
    let class = degree_two_graphs(4, 2, 4);
    let outcome = check_class_property(&class, ClassProperty::Ap).map_err(|e| e.to_string())?;
    ensure!(!outcome.holds(), "AP unexpectedly holds");
    let edge = graph(2, &[(0, 1)]);
    let (triangle, square) = (cycle(3), cycle(4));
    let (f, g) = (Embedding::new(vec![0, 1]), Embedding::new(vec![0, 1]));
    let span = Span { base: &edge, left: &triangle, right: &square, f: &f, g: &g };
    let mut found = 0;
    for_each_amalgam(span, class.membership(), None, &mut Budget::new(PROPERTY_BUDGET), |_| {
        found += 1;
        ControlFlow::Continue(())
    })
    .map_err(|e| e.to_string())?;
    ensure!(found == 0, "edge/3-cycle/4-cycle span has {found} amalgams");
    // Independent check: no graph of max degree 2 on at most 5 vertices
    // receives both cycles agreeing on the edge.
    for n in 4..=5 {
        for d in labeled_graphs(n).into_iter().filter(|d| max_degree(d) <= 2) {
            for l in brute_embeddings(&triangle, &d) {
                for r in brute_embeddings(&square, &d) {
                    ensure!(!(l[0] == r[0] && l[1] == r[1]), "amalgam found: {d}");
                }
            }
        }
    }
    Ok(())
}

fn criterion_4() -> Check {
    let (enriched, group) = fraissefy(&cycle(5), &[vec![1, 2, 3, 4, 0]]).map_err(|e| e.to_string())?;
    ensure!(group.len() == 5, "group order {}", group.len());
    let mut auts = brute_automorphisms(&enriched);
    let mut g = group.clone();
    auts.sort();
    g.sort();
    ensure!(auts == g, "Aut = {auts:?}");
    let uh = check_ultrahomogeneous(&enriched).map_err(|e| e.to_string())?;
    ensure!(uh.holds(), "{uh:?}");
    Ok(())
}

fn criterion_5() -> Check {
    let s = PartialIsoPair::new(chain(3), vec![0, 1], vec![1, 2]).map_err(|e| e.to_string())?;
    let t = PartialIsoPair::new(chain(5), vec![0, 1, 2], vec![1, 2, 3]).map_err(|e| e.to_string())?;
    let f = Embedding::identity(3);
    ensure!(f.is_embedding(s.ambient(), t.ambient()), "identity is not an embedding");
    for &b in s.domain() {
        ensure!(t.apply(f.apply(b)) == Some(f.apply(s.apply(b).unwrap())), "psi condition at {b}");
    }
    ensure!(pair_embeds(&s, &t).map_err(|e| e.to_string())?.is_some(), "search found no pair embedding");
    let outcome = check_pair_property(&orders(5, 2, 5), PairProperty::JepFp).map_err(|e| e.to_string())?;
    ensure!(outcome.to_string() == "Holds (bounds s=2,k=5)", "{outcome}");
    Ok(())
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let random_curve = |rng: &mut ChaCha8Rng, n: usize| {
        let mut v = || (0..n - 2).map(|_| BigInt::from(rng.gen_range(-100..=100))).collect();
        let a = v();
        let b = v();
        MultiCurve::new(n, a, b).unwrap()
    };
    for case in 0..10_000 {
        let n = rng.gen_range(3..=6usize);
        let l = random_curve(&mut rng, n);
        let i = rng.gen_range(1..n - 1);
        let lhs = BraidWord(vec![Generator::pos(i), Generator::pos(i + 1), Generator::pos(i)]);
        let rhs = BraidWord(vec![Generator::pos(i + 1), Generator::pos(i), Generator::pos(i + 1)]);
        let (x, y) = (act_word(&l, &lhs).map_err(|e| e.to_string())?, act_word(&l, &rhs).map_err(|e| e.to_string())?);
        ensure!(x == y, "braid relation case {case}: {l}");
        let len = rng.gen_range(0..=10);
        let w = BraidWord((0..len).map(|_| Generator { index: rng.gen_range(1..n), inverse: rng.gen() }).collect());
        let back = act_word(&act_word(&l, &w).unwrap(), &w.inverse()).unwrap();
        ensure!(back == l, "inverse cancellation case {case}: {l} {w}");
    }

    let rounds = |n: usize| -> Vec<RoundCurve> {
        (1..n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).filter(|&(i, j)| (i, j) != (1, n))
            .map(|(i, j)| RoundCurve::new(i, j).unwrap())
            .collect()
    };
    let mut cases = 0;
    while cases < 100 {
        let n = rng.gen_range(3..=6usize);
        let rs = rounds(n);
        let alpha = rs[rng.gen_range(0..rs.len())];
        let len = rng.gen_range(1..=6);
        let h = BraidWord((0..len).map(|_| Generator { index: rng.gen_range(1..n), inverse: rng.gen() }).collect());
        let image = act_word(&alpha.coords_big(n).unwrap(), &h).unwrap();
        let Some(&beta) = rs.iter().find(|r| r.coords_big(n).unwrap() == image) else { continue };
        cases += 1;
        let conjugate = h.inverse().concat(&round_twist_word(alpha)).concat(&h);
        let l = random_curve(&mut rng, n);
        ensure!(
            act_word(&l, &conjugate).unwrap() == act_word(&l, &round_twist_word(beta)).unwrap(),
            "conjugation identity: alpha {alpha}, h {h}"
        );
    }

    let alpha = RoundCurve::new(1, 2).unwrap();
    let beta = RoundCurve::new(2, 3).unwrap();
    let mut cur = beta.coords_big(4).unwrap();
    for k in 1..=50u64 {
        cur = act_word(&cur, &round_twist_word(alpha)).unwrap();
        let i = intersection_with_round(&cur, beta).map_err(|e| e.to_string())?;
        ensure!(i >= k, "i(T^{k}(beta), beta) = {i}");
    }

    for n in 3..=4usize {
        let gens: Vec<Generator> = (1..n).flat_map(|i| [Generator::pos(i), Generator::neg(i)]).collect();
        let mut words = vec![BraidWord::identity()];
        let mut frontier = words.clone();
        for _ in 0..6 {
            let next: Vec<BraidWord> = frontier
                .iter()
                .flat_map(|w| gens.iter().map(move |&g| BraidWord(w.generators().iter().copied().chain([g]).collect())))
                .collect();
            words.extend(next.iter().cloned());
            frontier = next;
        }
        for c in rounds(n) {
            let start = c.coords_big(n).unwrap();
            let explicit = CrossingCurve::round(n, c);
            for w in &words {
                let want = oracle_coords(&oracle_act(&explicit, w).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
                ensure!(act_word(&start, w).unwrap() == want, "oracle mismatch: {c} under {w}");
            }
        }
    }
    Ok(())
}

fn criterion_7() -> Check {
    let class = two_classes(2, 3);
    let outcome = check_pair_property(&class, PairProperty::JepFp).map_err(|e| e.to_string())?;
    let Some(Witness::PairJoint { left, right }) = outcome.witness() else {
        return Err(format!("expected a pair joint-embedding failure, got {outcome}"));
    };
    let result = fraisse_chain(&class, 8).map_err(|e| e.to_string())?;
    for (t, stage) in result.stages.iter().enumerate() {
        for f in enumerate_embeddings(left.ambient(), stage).map_err(|e| e.to_string())? {
            for g in enumerate_embeddings(right.ambient(), stage).map_err(|e| e.to_string())? {
                ensure!(combined_map(stage, left, &f, right, &g).is_none(), "stage {t} joins {left} and {right}");
            }
        }
    }
    Ok(())
}

type Criterion = (&'static str, fn() -> Check, Duration);

#[test]
fn acceptance() {
    let criteria: [Criterion; 7] = [
        ("curated-corpus classification", criterion_1, Duration::from_secs(1)),
        ("linear orders and their chain", criterion_2, Duration::from_secs(5)),
        ("amalgamation counterexample", criterion_3, Duration::from_secs(5)),
        ("Fraisse enrichment of the 5-cycle", criterion_4, Duration::from_secs(10)),
        ("pair engine", criterion_5, Duration::from_secs(30)),
        ("curve engine", criterion_6, Duration::from_secs(60)),
        ("finite-scale criteria consistency", criterion_7, Duration::from_secs(60)),
    ];
    let mut failures = Vec::new();
    for (i, (name, run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let verdict = match (&result, elapsed <= limit) {
            (Ok(()), true) => "PASS".to_string(),
            (Ok(()), false) => format!("FAIL (over the {:.0} s limit)", limit.as_secs_f64()),
            (Err(why), _) => format!("FAIL ({why})"),
        };
        println!("criterion {}: {verdict} [{name}, {:.2} s]", i + 1, elapsed.as_secs_f64());
        if !verdict.starts_with("PASS") {
            failures.push(i + 1);
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
