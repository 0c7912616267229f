#![allow(dead_code)]

use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use subshift_core::pairs::{Goal, PairEngine};
use subshift_core::subst::pair_letter;
use subshift_core::{Substitution, System};

pub const MORSE: &[(&str, &str)] = &[("0", "01"), ("1", "10")];
pub const FLIP: &[(&str, &str)] = &[("0", "01"), ("1", "00")];
pub const THREE_BLOCK: &[(&str, &str)] = &[("0", "010"), ("1", "100")];
pub const COUNTABLE: &[(&str, &str)] = &[("a", "aba"), ("b", "bca"), ("c", "cca")];
pub const UNCOUNTABLE: &[(&str, &str)] = &[
    ("a", "baacd"),
    ("b", "bbbcd"),
    ("c", "bcaba"),
    ("d", "bdabd"),
];
pub const FOUR_BLOCK: &[(&str, &str)] =
    &[("0", "0123"), ("1", "1032"), ("2", "1023"), ("3", "0132")];

pub const FIXTURES: &[&[(&str, &str)]] =
    &[MORSE, FLIP, THREE_BLOCK, COUNTABLE, UNCOUNTABLE, FOUR_BLOCK];

pub fn system(rules: &[(&str, &str)]) -> Arc<System> {
    System::new(Substitution::from_rules(rules).unwrap()).unwrap()
}

/// Random substitutions with `|A| ≤ 4`, `p ≤ 4`, one-to-one, primitive and
/// with an infinite subshift, from a fixed seed.
pub fn random_systems(count: usize, seed: u64) -> Vec<Arc<System>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let k = rng.gen_range(2..=4usize);
        let p = rng.gen_range(2..=4usize);
        let names: Vec<String> = (0..k).map(|a| a.to_string()).collect();
        let images: Vec<Vec<u16>> = (0..k)
            .map(|_| (0..p).map(|_| rng.gen_range(0..k) as u16).collect())
            .collect();
        let s = Substitution::new(names, images).unwrap();
        if !s.is_one_to_one() || !s.is_primitive() {
            continue;
        }
        if let Ok(sys) = System::new(s) {
            out.push(sys);
        }
    }
    out
}

/// Smallest `m` with `p^m ≤ bound` at which `(a,b)` recurs in
/// `(τ^m(a), τ^m(b))` with the goal's condition on what follows.
pub fn brute_first_level(
    s: &Substitution,
    a: u16,
    b: u16,
    goal: Goal,
    bound: usize,
) -> Option<usize> {
    let p = s.constant_length().unwrap();
    let mut wa = vec![a];
    let mut wb = vec![b];
    let mut m = 0;
    while wa.len() * p <= bound {
        wa = s.apply(&wa);
        wb = s.apply(&wb);
        m += 1;
        let n = wa.len();
        let mut coin = vec![false; n + 1];
        let mut diff = vec![false; n + 1];
        let mut again = vec![false; n + 1];
        for j in (0..n).rev() {
            coin[j] = coin[j + 1] || wa[j] == wb[j];
            diff[j] = diff[j + 1] || wa[j] != wb[j];
            again[j] = again[j + 1] || (wa[j] == a && wb[j] == b);
        }
        let hit = (0..n).any(|j| {
            wa[j] == a
                && wb[j] == b
                && coin[j + 1]
                && match goal {
                    Goal::LiYorke => diff[j + 1],
                    Goal::Uncountable => again[j + 1],
                }
        });
        if hit {
            return Some(m);
        }
    }
    None
}

pub fn max_brute_level(p: usize, bound: usize) -> usize {
    let mut m = 0;
    let mut len = 1;
    while len * p <= bound {
        len *= p;
        m += 1;
    }
    m
}

#[derive(Debug, Default)]
pub struct EngineComparison {
    pub checked: usize,
    /// Engine levels past the brute-force range (brute force found nothing).
    pub beyond: usize,
    pub mismatches: Vec<String>,
}

/// Per unordered pair and goal, the engine's shortest level must be the
/// brute-force first level whenever it lies within the brute-force range.
pub fn engine_vs_brute_force(sys: &System, bound: usize) -> EngineComparison {
    let s = sys.substitution();
    let engine = PairEngine::new(s).unwrap();
    let k = s.len();
    let reach = max_brute_level(sys.p(), bound);
    let mut out = EngineComparison::default();
    for goal in [Goal::LiYorke, Goal::Uncountable] {
        for a in s.letters() {
            for b in s.letters().filter(|&b| b > a) {
                let exact = engine.search(pair_letter(k, a, b), goal).map(|p| p.len());
                let brute = brute_first_level(s, a, b, goal, bound);
                let agree = match exact {
                    Some(m) if m > reach => {
                        out.beyond += 1;
                        brute.is_none()
                    }
                    _ => exact == brute,
                };
                if !agree {
                    out.mismatches.push(format!(
                        "{:?} {goal:?} ({a},{b}): engine {exact:?}, brute force {brute:?}",
                        s.images()
                    ));
                }
                out.checked += 1;
            }
        }
    }
    out
}
