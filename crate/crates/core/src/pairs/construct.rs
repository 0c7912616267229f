//! Witness constructions: Li–Yorke pairs from certificates, recurrent
//! Li–Yorke pairs, orbit representatives, and finite scrambled sets.

use alloc::format;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::engine::{position_path, PairEngine};
use super::{
    classify_with, has_ly_pairs, has_uncountable_ly, ly_certificate, uncountable_certificate,
    PairClass,
};
use crate::desub::{enumerate_fiber, RepresentedPoint, Side, System};
use crate::error::{Error, Result};
use crate::odometer::OdometerDigits;
use crate::subst::{pair_letter, split_pair, Letter, Substitution, Word};

/// Upper bound on the number of digit sequences `enumerate_ly_orbits` visits.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 2_000_000;

/// Levels `(center, digit)` of the two points whose level-`M` pair is the
/// root and whose level-0 pair sits at the position reached by `path`.
fn path_levels(
    engine: &PairEngine,
    root: Letter,
    path: &[usize],
) -> (Vec<(Letter, u32)>, Vec<(Letter, u32)>) {
    let k = engine.alphabet_size();
    let letters = engine.path_letters(root, path);
    let m = path.len();
    let mut x = Vec::with_capacity(m);
    let mut y = Vec::with_capacity(m);
    for i in 0..m {
        let (a, b) = split_pair(k, letters[m - i]);
        let d = path[m - 1 - i] as u32;
        x.push((a, d));
        y.push((b, d));
    }
    (x, y)
}

/// A point with the given periodic levels, choosing the first admissible
/// left seed when all digits vanish.
fn periodic_point(system: &Arc<System>, period: Vec<(Letter, u32)>) -> Result<RepresentedPoint> {
    if period.iter().any(|&(_, d)| d != 0) {
        return RepresentedPoint::from_levels(system, Vec::new(), period, None, None);
    }
    for c in system.seed_letters(Side::Left) {
        match RepresentedPoint::from_levels(system, Vec::new(), period.clone(), Some(c), None) {
            Err(Error::InadmissibleSeed(_)) => continue,
            other => return other,
        }
    }
    Err(Error::InadmissibleSeed(
        "no letter extends the point to the left".to_string(),
    ))
}

/// `x = … τ(u) u . a v τ(v) …` and `y = … τ(u2) u2 . b v2 τ(v2) …` from the
/// first Li–Yorke certificate.
pub fn construct_ly_pair(system: &Arc<System>) -> Result<(RepresentedPoint, RepresentedPoint)> {
    let cert = ly_certificate(system)?
        .ok_or_else(|| Error::Precondition("the substitution has no Li–Yorke pairs".to_string()))?;
    let engine = PairEngine::new(system.substitution())?;
    let root = pair_letter(system.alphabet_size(), cert.a, cert.b);
    let (x, y) = path_levels(&engine, root, &cert.path);
    Ok((periodic_point(system, x)?, periodic_point(system, y)?))
}

/// A recurrent Li–Yorke pair: the stream alternates between two occurrences
/// of `(a,b)` in `(τ^M(a), τ^M(b))`, the first not at the start and the
/// second not at the end (taking `M = 2m` when needed).
pub fn construct_recurrent_ly_pair(
    system: &Arc<System>,
) -> Result<(RepresentedPoint, RepresentedPoint)> {
    let cert = uncountable_certificate(system)?.ok_or_else(|| {
        Error::Precondition("the substitution has only countably many Li–Yorke pairs".to_string())
    })?;
    let p = system.p() as u128;
    let block = p.pow(cert.m as u32);
    let (m, first, second) = if cert.first == 0 || cert.second == block - 1 {
        (
            2 * cert.m,
            cert.first * block + cert.second,
            cert.second * block + cert.first,
        )
    } else {
        (cert.m, cert.first, cert.second)
    };
    let engine = PairEngine::new(system.substitution())?;
    let root = pair_letter(system.alphabet_size(), cert.a, cert.b);
    let (mut x, mut y) = path_levels(&engine, root, &position_path(system.p(), m, first));
    let (x2, y2) = path_levels(&engine, root, &position_path(system.p(), m, second));
    x.extend(x2);
    y.extend(y2);
    Ok((periodic_point(system, x)?, periodic_point(system, y)?))
}

/// Li–Yorke pairs sharing a purely periodic digit sequence of period at most
/// `period_bound` (default `|A|²+1`), one per digit sequence and unordered
/// pair of its fiber. Sequences of all `p-1` are skipped: the shift maps
/// their fiber onto the fiber of zero. Refused when the system has
/// uncountably many Li–Yorke pairs.
pub fn enumerate_ly_orbits(
    system: &Arc<System>,
    period_bound: Option<usize>,
    budget: u64,
) -> Result<Vec<(RepresentedPoint, RepresentedPoint)>> {
    if !has_ly_pairs(system)? {
        return Ok(Vec::new());
    }
    if has_uncountable_ly(system)? {
        return Err(Error::Precondition(
            "uncountably many Li–Yorke pairs; orbit enumeration refused".to_string(),
        ));
    }
    enumerate_periodic_ly_pairs(system, period_bound, budget)
}

/// The enumeration behind [`enumerate_ly_orbits`] without the countability
/// precondition. When Li–Yorke pairs are uncountable the result is only a
/// sample: most orbits have non-periodic digits.
pub fn enumerate_periodic_ly_pairs(
    system: &Arc<System>,
    period_bound: Option<usize>,
    budget: u64,
) -> Result<Vec<(RepresentedPoint, RepresentedPoint)>> {
    let strong = if has_uncountable_ly(system)? {
        None
    } else {
        Some(false)
    };
    let k = system.alphabet_size();
    let bound = period_bound.unwrap_or(k * k + 1);
    let p = system.p() as u64;
    let mut total: u64 = 0;
    for q in 1..=bound {
        total = total.saturating_add(p.saturating_pow(q as u32));
    }
    if total > budget {
        return Err(Error::EnumerationBudget {
            words: total,
            cap: budget,
        });
    }
    let mut out = Vec::new();
    for q in 1..=bound {
        let mut word = vec![0u32; q];
        loop {
            if is_primitive_word(&word) && !(q == 1 && word[0] as u64 == p - 1) {
                let digits = OdometerDigits::new(p as u32, Vec::new(), word.clone())?;
                let fiber = enumerate_fiber(system, &digits)?;
                for i in 0..fiber.len() {
                    for j in i + 1..fiber.len() {
                        let v = classify_with(&fiber[i], &fiber[j], strong)?;
                        if v.class == PairClass::LiYorke {
                            out.push((fiber[i].clone(), fiber[j].clone()));
                        }
                    }
                }
            }
            if !next_word(&mut word, p as u32) {
                break;
            }
        }
    }
    Ok(out)
}

fn is_primitive_word(w: &[u32]) -> bool {
    let n = w.len();
    (1..n)
        .filter(|d| n.is_multiple_of(*d))
        .all(|d| (d..n).any(|i| w[i] != w[i - d]))
}

fn next_word(w: &mut [u32], base: u32) -> bool {
    for d in w.iter_mut() {
        if *d + 1 < base {
            *d += 1;
            return true;
        }
        *d = 0;
    }
    false
}

/// `τ(a) = 0·a·a·(a+1 mod n+1)·0` over `{0, …, n}`.
pub fn scrambled_substitution(n: usize) -> Result<Substitution> {
    if n == 0 {
        return Err(Error::Precondition(
            "the size parameter must be at least 1".to_string(),
        ));
    }
    let names = (0..=n).map(|a| format!("{a}")).collect();
    let images: Vec<Word> = (0..=n)
        .map(|a| {
            let a = a as Letter;
            let next = ((a as usize + 1) % (n + 1)) as Letter;
            vec![0, a, a, next, 0]
        })
        .collect();
    Substitution::new(names, images)
}

/// The substitution above with the points
/// `x(a) = … τ(0) 0 . a a (a+1) 0 τ(a (a+1) 0) …`, pairwise Li–Yorke.
pub fn build_scrambled_set(n: usize) -> Result<(Arc<System>, Vec<RepresentedPoint>)> {
    let system = System::new(scrambled_substitution(n)?)?;
    let points = (0..=n as Letter)
        .map(|a| RepresentedPoint::from_levels(&system, Vec::new(), vec![(a, 1)], None, None))
        .collect::<Result<Vec<_>>>()?;
    Ok((system, points))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairs::classify_pair;

    fn system(r: &[(&str, &str)]) -> Arc<System> {
        System::new(Substitution::from_rules(r).unwrap()).unwrap()
    }

    #[test]
    fn ly_pair_of_the_three_block_example() {
        let s = system(&[("0", "010"), ("1", "100")]);
        let (x, y) = construct_ly_pair(&s).unwrap();
        assert_eq!(x.stream().left_seed, Some(0));
        assert_eq!(y.stream().left_seed, Some(0));
        assert_eq!(x.entry(0).suffix, vec![1, 0]);
        assert_eq!(
            (y.entry(0).center, y.entry(0).suffix.clone()),
            (1, vec![0, 0])
        );
        assert_eq!(classify_pair(&x, &y).unwrap().class, PairClass::LiYorke);
    }

    #[test]
    fn refusals() {
        let m = system(&[("0", "01"), ("1", "10")]);
        assert!(matches!(construct_ly_pair(&m), Err(Error::Precondition(_))));
        assert!(matches!(
            construct_recurrent_ly_pair(&m),
            Err(Error::Precondition(_))
        ));
        assert!(enumerate_ly_orbits(&m, None, DEFAULT_ENUMERATION_BUDGET)
            .unwrap()
            .is_empty());
        let one = system(&[("a", "aba"), ("b", "bca"), ("c", "cca")]);
        assert!(matches!(
            construct_recurrent_ly_pair(&one),
            Err(Error::Precondition(_))
        ));
        let two = system(&[
            ("a", "baacd"),
            ("b", "bbbcd"),
            ("c", "bcaba"),
            ("d", "bdabd"),
        ]);
        assert!(matches!(
            enumerate_ly_orbits(&two, None, DEFAULT_ENUMERATION_BUDGET),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn recurrent_pair_levels() {
        let s = system(&[
            ("a", "baacd"),
            ("b", "bbbcd"),
            ("c", "bcaba"),
            ("d", "bdabd"),
        ]);
        let (x, y) = construct_recurrent_ly_pair(&s).unwrap();
        assert_eq!(x.period_len(), 2);
        assert_eq!(x.pi_digits(2), vec![1, 2]);
        assert_eq!(y.entry(0).suffix, s.substitution().word("bcd").unwrap());
        assert_eq!(classify_pair(&x, &y).unwrap().class, PairClass::LiYorke);
    }

    #[test]
    fn scrambled_substitution_template() {
        let s = scrambled_substitution(1).unwrap();
        assert_eq!(s.render(s.image(0)), "00010");
        assert_eq!(s.render(s.image(1)), "01100");
        let (_, pts) = build_scrambled_set(1).unwrap();
        assert_eq!(pts[0].pi_digits(6), pts[1].pi_digits(6));
    }

    #[test]
    fn words() {
        assert!(is_primitive_word(&[0, 1]));
        assert!(!is_primitive_word(&[1, 1]));
        assert!(!is_primitive_word(&[0, 1, 0, 1]));
        let mut w = vec![0, 0];
        let mut n = 1;
        while next_word(&mut w, 3) {
            n += 1;
        }
        assert_eq!(n, 9);
    }
}
