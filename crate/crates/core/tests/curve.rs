use bigmcg::curve::oracle::{oracle_act, oracle_coords, oracle_intersection, CrossingCurve};
use bigmcg::curve::*;
use bigmcg::MultiCurve;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn word(n: usize, gens: &[(usize, bool)]) -> BraidWord {
    BraidWord(gens.iter().map(|&(i, inverse)| Generator { index: 1 + i % (n - 1), inverse }).collect())
}

fn coords_strategy() -> impl Strategy<Value = MultiCurve> {
    (3usize..=6).prop_flat_map(|n| {
        (
            proptest::collection::vec(-100i64..=100, n - 2),
            proptest::collection::vec(-100i64..=100, n - 2),
        )
            .prop_map(move |(a, b)| {
                MultiCurve::new(n, a.into_iter().map(BigInt::from).collect(), b.into_iter().map(BigInt::from).collect())
                    .unwrap()
            })
    })
}

fn round_curves(n: usize) -> Vec<RoundCurve> {
    let mut out = Vec::new();
    for i in 1..n {
        for j in i + 1..=n {
            if (i, j) != (1, n) {
                out.push(RoundCurve::new(i, j).unwrap());
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 4000, failure_persistence: None, max_global_rejects: 100_000, ..ProptestConfig::default() })]

    #[test]
    fn braid_relation(l in coords_strategy(), i in 0usize..4) {
        let n = l.punctures();
        prop_assume!(n >= 3);
        let i = 1 + i % (n - 2);
        let lhs = BraidWord(vec![Generator::pos(i), Generator::pos(i + 1), Generator::pos(i)]);
        let rhs = BraidWord(vec![Generator::pos(i + 1), Generator::pos(i), Generator::pos(i + 1)]);
        prop_assert_eq!(act_word(&l, &lhs).unwrap(), act_word(&l, &rhs).unwrap());
    }

    #[test]
    fn far_commutation(l in coords_strategy(), i in 0usize..5, j in 0usize..5) {
        let n = l.punctures();
        prop_assume!(n >= 4);
        let i = 1 + i % (n - 3);
        let j = i + 2 + j % (n - 2 - i);
        let lhs = BraidWord(vec![Generator::pos(i), Generator::neg(j)]);
        let rhs = BraidWord(vec![Generator::neg(j), Generator::pos(i)]);
        prop_assert_eq!(act_word(&l, &lhs).unwrap(), act_word(&l, &rhs).unwrap());
    }

    #[test]
    fn word_then_inverse(l in coords_strategy(), gens in proptest::collection::vec((0usize..5, any::<bool>()), 0..12)) {
        let w = word(l.punctures(), &gens);
        let there = act_word(&l, &w).unwrap();
        prop_assert_eq!(act_word(&there, &w.inverse()).unwrap(), l);
    }

    #[test]
    fn machine_and_big_integers_agree(l in coords_strategy(), gens in proptest::collection::vec((0usize..5, any::<bool>()), 0..10)) {
        let w = word(l.punctures(), &gens);
        let small = l.convert::<i64>().unwrap();
        let got = act_word(&small, &w).unwrap().convert::<BigInt>().unwrap();
        prop_assert_eq!(got, act_word(&l, &w).unwrap());
    }

    #[test]
    fn coords_text_round_trip(l in coords_strategy()) {
        let text = l.to_string();
        prop_assert_eq!(text.parse::<MultiCurve>().unwrap(), l);
    }

    #[test]
    fn twist_is_central_in_its_support(l in coords_strategy(), pick in 0usize..20, g in 0usize..5, inverse in any::<bool>()) {
        let n = l.punctures();
        let rounds = round_curves(n);
        let c = rounds[pick % rounds.len()];
        prop_assume!(c.len() >= 2);
        let span = c.last() - c.first();
        let gen = Generator { index: c.first() + g % span, inverse };
        let t = c.twist_word();
        let one = BraidWord(vec![gen]);
        prop_assert_eq!(act_word(&l, &t.concat(&one)).unwrap(), act_word(&l, &one.concat(&t)).unwrap());
    }

    #[test]
    fn boundary_twist_is_trivial(l in coords_strategy()) {
        let t = RoundCurve::new(1, l.punctures()).unwrap().twist_word();
        prop_assert_eq!(act_word(&l, &t).unwrap(), l);
    }
}

#[test]
fn agrees_with_oracle_on_small_corpus() {
    for n in 3..=4usize {
        let gens: Vec<Generator> = (1..n).flat_map(|i| [Generator::pos(i), Generator::neg(i)]).collect();
        let mut words = vec![BraidWord::identity()];
        let mut frontier = words.clone();
        for _ in 0..6 {
            let mut next = Vec::new();
            for w in &frontier {
                for &g in &gens {
                    if w.generators().last() == Some(&g.inv()) {
                        continue;
                    }
                    let mut v = w.clone();
                    v.0.push(g);
                    next.push(v);
                }
            }
            words.extend(next.iter().cloned());
            frontier = next;
        }
        for c in round_curves(n) {
            let start = c.coords_big(n).unwrap();
            let explicit = CrossingCurve::round(n, c);
            for w in &words {
                let want = oracle_coords(&oracle_act(&explicit, w).unwrap()).unwrap();
                assert_eq!(act_word(&start, w).unwrap(), want, "curve {c}, word {w}");
            }
        }
    }
}

#[test]
fn intersection_agrees_with_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..600 {
        let n = rng.gen_range(3..=5usize);
        let rounds = round_curves(n);
        let start = rounds[rng.gen_range(0..rounds.len())];
        let len = rng.gen_range(0..=8);
        let w = BraidWord((0..len).map(|_| Generator { index: rng.gen_range(1..n), inverse: rng.gen() }).collect());
        let explicit = oracle_act(&CrossingCurve::round(n, start), &w).unwrap();
        let l = oracle_coords(&explicit).unwrap();
        let c = rounds[rng.gen_range(0..rounds.len())];
        assert_eq!(intersection_with_round(&l, c).unwrap(), oracle_intersection(&explicit, c), "{l} vs {c}");
    }
}

#[test]
fn round_curve_intersections() {
    for n in 3..=6usize {
        for x in round_curves(n) {
            let cx = x.coords_big(n).unwrap();
            assert_eq!(intersection_with_round(&cx, x).unwrap(), 0);
            for y in round_curves(n) {
                let want = if x.interleaves(&y) { 2 } else { 0 };
                assert_eq!(intersection_with_round(&cx, y).unwrap(), want, "{x} {y} in D_{n}");
            }
        }
    }
}

#[test]
fn twist_fixes_its_core() {
    for n in 3..=6usize {
        for c in round_curves(n) {
            let cc = c.coords_big(n).unwrap();
            assert_eq!(act_word(&cc, &round_twist_word(c)).unwrap(), cc);
        }
    }
}

#[test]
fn twist_on_two_strands_moves_transversal() {
    let c = RoundCurve::new(1, 2).unwrap();
    assert_eq!(round_twist_word(c).to_string(), "s1 s1");
    let transversal = RoundCurve::new(2, 3).unwrap().coords_big(3).unwrap();
    let explicit = CrossingCurve::round(3, RoundCurve::new(2, 3).unwrap());
    let moved = act_word(&transversal, &round_twist_word(c)).unwrap();
    assert_ne!(moved, transversal);
    assert_eq!(moved, oracle_coords(&oracle_act(&explicit, &round_twist_word(c)).unwrap()).unwrap());
}

#[test]
fn twist_growth() {
    let alpha = RoundCurve::new(1, 2).unwrap();
    let beta = RoundCurve::new(2, 3).unwrap();
    let b0 = beta.coords_big(4).unwrap();
    let t = round_twist_word(alpha);
    let mut cur = b0.clone();
    let mut prev = intersection_with_round(&cur, beta).unwrap();
    assert_eq!(intersection_with_round(&cur, alpha).unwrap(), 2);
    for k in 1..=50u64 {
        cur = act_word(&cur, &t).unwrap();
        let v = intersection_with_round(&cur, beta).unwrap();
        assert_eq!(v, 4 * k);
        assert!(v > prev && v >= k);
        assert_eq!(intersection_with_round(&cur, alpha).unwrap(), 2);
        prev = v;
    }
}

#[test]
fn conjugation_identity_on_round_images() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut cases = 0;
    while cases < 100 {
        let n = rng.gen_range(3..=6usize);
        let rounds = round_curves(n);
        let alpha = rounds[rng.gen_range(0..rounds.len())];
        let len = rng.gen_range(1..=6);
        let h = BraidWord((0..len).map(|_| Generator { index: rng.gen_range(1..n), inverse: rng.gen() }).collect());
        let image = act_word(&alpha.coords_big(n).unwrap(), &h).unwrap();
        let Some(&beta) = rounds.iter().find(|r| r.coords_big(n).unwrap() == image) else { continue };
        cases += 1;
        let lhs_word = h.inverse().concat(&round_twist_word(alpha)).concat(&h);
        let mirror = h.concat(&round_twist_word(beta)).concat(&h.inverse());
        for _ in 0..5 {
            let l = MultiCurve::new(
                n,
                (0..n - 2).map(|_| BigInt::from(rng.gen_range(-30..=30))).collect(),
                (0..n - 2).map(|_| BigInt::from(rng.gen_range(-30..=30))).collect(),
            )
            .unwrap();
            assert_eq!(act_word(&l, &lhs_word).unwrap(), act_word(&l, &round_twist_word(beta)).unwrap());
            assert_eq!(act_word(&l, &mirror).unwrap(), act_word(&l, &round_twist_word(alpha)).unwrap());
        }
    }
}

#[test]
fn braid_word_text_round_trip() {
    let w: BraidWord = "s1 s2^-1 s1".parse().unwrap();
    assert_eq!(w.to_string(), "s1 s2^-1 s1");
    assert_eq!("".parse::<BraidWord>().unwrap(), BraidWord::identity());
}
