//! Exact procedures against brute-force computations on fixtures and on
//! seeded random substitutions.

mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use common::{engine_vs_brute_force, random_systems, system, FIXTURES};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use subshift_core::desub::{enumerate_fiber, Side};
use subshift_core::orbit::{empirical_class, empirical_class_doubling, DEFAULT_WINDOW};
use subshift_core::pairs::{classify_pair, PairClass, PairEngine};
use subshift_core::reduction::{
    decide_infinite, oracle_infinite_via_complexity, ComplexityVerdict,
};
use subshift_core::subst::pair_letter;
use subshift_core::{OdometerDigits, RepresentedPoint, Substitution, System, Word};

const BRUTE_BOUND: usize = 1_000_000;

fn compare_engine(sys: &System) -> (usize, usize) {
    let report = engine_vs_brute_force(sys, BRUTE_BOUND);
    assert!(report.mismatches.is_empty(), "{:?}", report.mismatches);
    (report.checked, report.beyond)
}

#[test]
fn engine_matches_brute_force_on_fixtures() {
    for rules in FIXTURES {
        compare_engine(&system(rules));
    }
}

#[test]
fn engine_matches_brute_force_on_random_substitutions() {
    let mut total = 0;
    let mut beyond = 0;
    for sys in random_systems(200, 0x5eed) {
        let (c, b) = compare_engine(&sys);
        total += c;
        beyond += b;
    }
    assert!(total >= 400);
    assert_eq!(beyond, 0, "engine levels outside the brute-force range");
}

/// Flags along engine transitions never drop for one-to-one substitutions.
#[test]
fn engine_flags_are_monotone() {
    for sys in random_systems(60, 7) {
        let s = sys.substitution();
        let engine = PairEngine::new(s).unwrap();
        let k = s.len();
        for a in s.letters() {
            for b in s.letters().filter(|&b| b > a) {
                let mut frontier = vec![engine.start(pair_letter(k, a, b))];
                let mut seen = BTreeSet::new();
                while let Some(st) = frontier.pop() {
                    if !seen.insert(st.clone()) || seen.len() > 5000 {
                        continue;
                    }
                    for (_, next) in engine.successors(&st) {
                        if engine.has_coincidence_after(&st) {
                            assert!(engine.has_coincidence_after(&next));
                        }
                        if engine.has_difference_after(&st) {
                            assert!(engine.has_difference_after(&next));
                        }
                        frontier.push(next);
                    }
                }
            }
        }
    }
}

/// `σ^k` of an off-diagonal pair keeps an off-diagonal position.
#[test]
fn off_diagonal_pairs_stay_off_diagonal() {
    for sys in random_systems(60, 11) {
        let s = sys.substitution();
        for a in s.letters() {
            for b in s.letters().filter(|&b| b != a) {
                let mut wa = vec![a];
                let mut wb = vec![b];
                for _ in 0..8 {
                    if wa.len() > 200_000 {
                        break;
                    }
                    wa = s.apply(&wa);
                    wb = s.apply(&wb);
                    assert!(wa.iter().zip(&wb).any(|(x, y)| x != y));
                }
            }
        }
    }
}

fn random_primitive(rng: &mut ChaCha8Rng) -> Substitution {
    loop {
        let k = rng.gen_range(2..=4usize);
        let p = rng.gen_range(2..=4usize);
        let names = (0..k).map(|a| a.to_string()).collect();
        let images = (0..k)
            .map(|_| (0..p).map(|_| rng.gen_range(0..k) as u16).collect())
            .collect();
        let s = Substitution::new(names, images).unwrap();
        if s.is_primitive() {
            return s;
        }
    }
}

#[test]
fn finiteness_decision_matches_complexity() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let (mut finite, mut infinite) = (0, 0);
    for _ in 0..200 {
        let s = random_primitive(&mut rng);
        let decided = decide_infinite(&s).unwrap().infinite;
        let verdict = oracle_infinite_via_complexity(&s, 16).unwrap();
        if decided {
            infinite += 1;
            assert_eq!(
                verdict,
                ComplexityVerdict::InfiniteEvidence,
                "{:?}",
                s.images()
            );
        } else {
            finite += 1;
            assert_eq!(verdict, ComplexityVerdict::Finite, "{:?}", s.images());
        }
    }
    assert!(finite > 0 && infinite > 0);
}

/// The stream read naively: full iterates of each suffix and prefix word.
fn naive_expand(x: &RepresentedPoint, radius: usize) -> Vec<u16> {
    let sys = x.system();
    let s = sys.substitution();
    let stream = x.stream();
    let big_p = x.preperiod_len();
    let mut right: Word = vec![x.center(0)];
    let mut i = 0;
    while right.len() <= radius {
        if let (Some(d), true) = (stream.right_seed, i >= big_p) {
            let r = sys.fixing_power(Side::Right, d).unwrap();
            let mut m = i;
            while sys.p().pow(m as u32) <= radius {
                m += r;
            }
            right.extend(s.iterate(&[d], m).unwrap());
            break;
        }
        right.extend(s.iterate(&x.entry(i).suffix, i).unwrap());
        i += 1;
    }
    let mut left: Word = Vec::new();
    let mut i = 0;
    while left.len() < radius {
        if let (Some(c), true) = (stream.left_seed, i >= big_p) {
            let r = sys.fixing_power(Side::Left, c).unwrap();
            let mut m = i;
            while sys.p().pow(m as u32) < radius {
                m += r;
            }
            let mut w = s.iterate(&[c], m).unwrap();
            w.extend(left);
            left = w;
            break;
        }
        let mut w = s.iterate(&x.entry(i).prefix, i).unwrap();
        w.extend(left);
        left = w;
        i += 1;
    }
    let mut out = left[left.len() - radius..].to_vec();
    out.extend(&right[..=radius]);
    out
}

fn random_digits(rng: &mut ChaCha8Rng, p: usize) -> OdometerDigits {
    let pre = (0..rng.gen_range(0..3))
        .map(|_| rng.gen_range(0..p as u32))
        .collect();
    let per = match rng.gen_range(0..4) {
        0 => vec![0],
        1 => vec![p as u32 - 1],
        _ => (0..rng.gen_range(1..4))
            .map(|_| rng.gen_range(0..p as u32))
            .collect(),
    };
    OdometerDigits::new(p as u32, pre, per).unwrap()
}

fn random_points(count: usize, seed: u64) -> Vec<RepresentedPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let systems = random_systems(40, seed);
    let mut out = Vec::new();
    while out.len() < count {
        let sys = &systems[rng.gen_range(0..systems.len())];
        let fiber = enumerate_fiber(sys, &random_digits(&mut rng, sys.p())).unwrap();
        out.extend(fiber);
    }
    out
}

#[test]
fn expansion_matches_naive_iteration() {
    for x in random_points(300, 3) {
        let radius = 200;
        assert_eq!(x.expand(radius).unwrap().letters, naive_expand(&x, radius));
    }
}

#[test]
fn shift_matches_window_shift_and_odometer() {
    for x in random_points(300, 5) {
        let tx = x.shift();
        let a = x.expand(65).unwrap();
        let b = tx.expand(64).unwrap();
        assert_eq!(&a.letters[2..], &b.letters[..]);
        assert_eq!(tx.digits(), x.digits().successor());
    }
}

#[test]
fn jump_to_right_tail_is_a_shift_power() {
    for x in random_points(200, 9)
        .into_iter()
        .filter(|x| x.has_finite_right_indices())
    {
        let (y, k) = x.jump_to_right_tail();
        let k = k as usize;
        assert!(k <= 300);
        let a = x.expand(64 + k).unwrap();
        let b = y.expand(64).unwrap();
        assert_eq!(&a.letters[2 * k..], &b.letters[..]);
        assert_eq!(x.shift_by(k), y);
    }
}

/// Points over the digit sequence zero are the two-sided limits with
/// `x_{-1} x_0 = cd` for letters `c`, `d` periodic under last and first
/// letters with `cd` in the language.
#[test]
fn fiber_of_zero_matches_letter_count() {
    let mut systems: Vec<Arc<System>> = FIXTURES.iter().map(|r| system(r)).collect();
    systems.extend(random_systems(100, 13));
    for sys in systems {
        let s = sys.substitution();
        let l2 = s.language(2).unwrap();
        let per = |side| sys.seed_letters(side).into_iter().collect::<BTreeSet<_>>();
        let (lefts, rights) = (per(Side::Left), per(Side::Right));
        let expected = l2
            .iter()
            .filter(|w| lefts.contains(&w[0]) && rights.contains(&w[1]))
            .count();
        let fiber = enumerate_fiber(&sys, &OdometerDigits::zero(sys.p() as u32)).unwrap();
        assert_eq!(fiber.len(), expected, "{:?}", s.images());
        assert!(fiber.len() <= sys.fiber_bound());
        let windows: BTreeSet<Vec<u16>> = fiber
            .iter()
            .map(|x| x.expand(1).unwrap().letters[..2].to_vec())
            .collect();
        assert_eq!(windows.len(), fiber.len());
    }
}

#[test]
fn fibers_are_bounded_and_consistent() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for sys in random_systems(100, 19) {
        for _ in 0..5 {
            let digits = random_digits(&mut rng, sys.p());
            let fiber = enumerate_fiber(&sys, &digits).unwrap();
            assert!(!fiber.is_empty());
            assert!(fiber.len() <= sys.fiber_bound());
            for x in &fiber {
                assert_eq!(x.digits(), digits);
            }
            let windows: BTreeSet<Vec<u16>> = fiber
                .iter()
                .map(|x| x.expand(40).unwrap().letters)
                .collect();
            assert_eq!(windows.len(), fiber.len(), "fiber points must differ");
        }
    }
}

/// Exact verdicts on same-fiber pairs against the simulator: distal pairs
/// stop agreeing, asymptotic pairs stop differing, Li–Yorke pairs keep
/// doing both.
#[test]
fn classification_matches_simulation() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut seen = [0usize; 3];
    for sys in random_systems(60, 29) {
        for _ in 0..3 {
            let digits = random_digits(&mut rng, sys.p());
            let fiber = enumerate_fiber(&sys, &digits).unwrap();
            for i in 0..fiber.len() {
                for j in i + 1..fiber.len() {
                    let (x, y) = (&fiber[i], &fiber[j]);
                    let v = classify_pair(x, y).unwrap();
                    let horizon = sys.p().pow(7);
                    let late =
                        |events: &[usize]| events.iter().filter(|&&n| n > horizon / 2).count();
                    match v.class {
                        PairClass::Distal => {
                            seen[0] += 1;
                            let r = empirical_class(x, y, horizon, DEFAULT_WINDOW).unwrap();
                            assert_eq!(late(&r.proximality_events), 0);
                        }
                        PairClass::Asymptotic => {
                            seen[1] += 1;
                            let r = empirical_class(x, y, horizon, DEFAULT_WINDOW).unwrap();
                            assert_eq!(late(&r.separation_events), 0);
                        }
                        PairClass::LiYorke => {
                            seen[2] += 1;
                            let (r, exhausted) =
                                empirical_class_doubling(x, y, horizon, DEFAULT_WINDOW, 3, 1 << 22)
                                    .unwrap();
                            assert!(
                                !exhausted,
                                "{:?} {:?} {:?}",
                                sys.substitution().images(),
                                x,
                                y
                            );
                            assert!(
                                r.proximality_events.len() >= 3 && r.separation_events.len() >= 3
                            );
                        }
                    }
                }
            }
        }
    }
    eprintln!("classified {seen:?}");
    assert!(seen.iter().all(|&c| c > 0), "{seen:?}");
}
