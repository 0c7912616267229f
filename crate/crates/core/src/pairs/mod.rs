//! Coincidences, existence and uncountability of Li–Yorke pairs, and exact
//! classification of pairs of represented points.

mod construct;
mod engine;

use alloc::sync::Arc;
use alloc::vec::Vec;

pub use construct::{
    build_scrambled_set, construct_ly_pair, construct_recurrent_ly_pair, enumerate_ly_orbits,
    enumerate_periodic_ly_pairs, scrambled_substitution, DEFAULT_ENUMERATION_BUDGET,
};
pub use engine::{path_position, position_path, FlaggedPairState, Goal, PairEngine, PairSet};

use crate::desub::{lcm, RepresentedPoint, System};
use crate::error::{Error, Result};
use crate::subst::{pair_letter, Letter, Substitution, Word, DEFAULT_MAX_WORD};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum CoincidenceKind {
    NoCoincidence,
    Partial,
    Overall,
}

/// Positions where `τ(a)` and `τ(b)` agree or differ, for one unordered pair.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PairWitness {
    pub a: Letter,
    pub b: Letter,
    pub coincidences: Vec<usize>,
    pub differences: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CoincidenceClass {
    pub kind: CoincidenceKind,
    pub table: Vec<PairWitness>,
}

pub fn coincidence_class(s: &Substitution) -> Result<CoincidenceClass> {
    s.require_constant()?;
    let mut table = Vec::new();
    for a in s.letters() {
        for b in s.letters().filter(|&b| b > a) {
            let (ia, ib) = (s.image(a), s.image(b));
            let (coincidences, differences) = (0..ia.len()).partition(|&j| ia[j] == ib[j]);
            table.push(PairWitness {
                a,
                b,
                coincidences,
                differences,
            });
        }
    }
    let with = table.iter().filter(|w| !w.coincidences.is_empty()).count();
    let kind = if with == 0 {
        CoincidenceKind::NoCoincidence
    } else if with == table.len() {
        CoincidenceKind::Overall
    } else {
        CoincidenceKind::Partial
    };
    Ok(CoincidenceClass { kind, table })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum PairClass {
    Distal,
    Asymptotic,
    LiYorke,
}

/// The criterion that decided a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Rule {
    /// Different odometer images: the points are distal.
    OdometerSeparation,
    /// The two points are equal.
    Identical,
    /// Suffix words agree on the periodic part: asymptotic.
    SuffixAgreement,
    /// Suffixes differ infinitely often and every pair of images coincides
    /// somewhere: Li–Yorke.
    OverallCoincidence,
    /// Suffixes differ and images never coincide: distal.
    NoCoincidence,
    /// Suffixes differ; Li–Yorke iff some periodic suffix letter-pair
    /// eventually produces a coincidence.
    CoincidenceReachability,
    /// Two-letter alphabet shortcut.
    TwoLetter,
}

impl Rule {
    pub fn tag(self) -> &'static str {
        match self {
            Rule::OdometerSeparation => "odometer-separation",
            Rule::Identical => "identical",
            Rule::SuffixAgreement => "suffix-agreement",
            Rule::OverallCoincidence => "overall-coincidence",
            Rule::NoCoincidence => "no-coincidence",
            Rule::CoincidenceReachability => "coincidence-reachability",
            Rule::TwoLetter => "two-letter",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PairVerdict {
    pub class: PairClass,
    pub rule: Rule,
    /// `Some(false)` for Li–Yorke pairs of a system without strong Li–Yorke
    /// pairs; `None` when not determined for this pair.
    pub strong: Option<bool>,
}

/// `τ^m(a) = u a v`, `τ^m(b) = u2 b v2` with `|u| = |u2|`, `v ≠ v2`, and a
/// coincidence between `v` and `v2`.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LyCertificate {
    pub m: usize,
    pub a: Letter,
    pub b: Letter,
    pub position: u128,
    pub path: Vec<usize>,
    pub u: Word,
    pub v: Word,
    pub u2: Word,
    pub v2: Word,
}

/// Positions `first < second` where `(a,b)` occurs in `(τ^m(a), τ^m(b))`,
/// with a coincidence after `first`.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct UncountableCertificate {
    pub m: usize,
    pub a: Letter,
    pub b: Letter,
    pub first: u128,
    pub second: u128,
}

fn require_one_to_one(s: &Substitution) -> Result<()> {
    if s.is_one_to_one() {
        Ok(())
    } else {
        Err(Error::NotOneToOne)
    }
}

fn first_path(system: &System, goal: Goal) -> Result<Option<(Letter, Letter, Vec<usize>)>> {
    let s = system.substitution();
    require_one_to_one(s)?;
    let engine = PairEngine::new(s)?;
    let k = s.len();
    for a in s.letters() {
        for b in s.letters().filter(|&b| b > a) {
            if let Some(path) = engine.search(pair_letter(k, a, b), goal) {
                return Ok(Some((a, b, path)));
            }
        }
    }
    Ok(None)
}

pub fn has_ly_pairs(system: &System) -> Result<bool> {
    Ok(first_path(system, Goal::LiYorke)?.is_some())
}

pub fn has_uncountable_ly(system: &System) -> Result<bool> {
    Ok(first_path(system, Goal::Uncountable)?.is_some())
}

/// Strong Li–Yorke pairs exist iff uncountably many Li–Yorke pairs exist.
pub fn has_strong_ly(system: &System) -> Result<bool> {
    has_uncountable_ly(system)
}

pub fn ly_certificate(system: &System) -> Result<Option<LyCertificate>> {
    let Some((a, b, path)) = first_path(system, Goal::LiYorke)? else {
        return Ok(None);
    };
    let s = system.substitution();
    let m = path.len();
    let position = path_position(system.p(), &path);
    let wa = s.iterate_capped(&[a], m, DEFAULT_MAX_WORD)?;
    let wb = s.iterate_capped(&[b], m, DEFAULT_MAX_WORD)?;
    let j = position as usize;
    Ok(Some(LyCertificate {
        m,
        a,
        b,
        position,
        path,
        u: wa[..j].to_vec(),
        v: wa[j + 1..].to_vec(),
        u2: wb[..j].to_vec(),
        v2: wb[j + 1..].to_vec(),
    }))
}

pub fn uncountable_certificate(system: &System) -> Result<Option<UncountableCertificate>> {
    let Some((a, b, path)) = first_path(system, Goal::Uncountable)? else {
        return Ok(None);
    };
    let s = system.substitution();
    let m = path.len();
    let first = path_position(system.p(), &path);
    let wa = s.iterate_capped(&[a], m, DEFAULT_MAX_WORD)?;
    let wb = s.iterate_capped(&[b], m, DEFAULT_MAX_WORD)?;
    let second = (first as usize + 1..wa.len())
        .find(|&j| wa[j] == a && wb[j] == b)
        .expect("the search guarantees a later occurrence") as u128;
    Ok(Some(UncountableCertificate {
        m,
        a,
        b,
        first,
        second,
    }))
}

/// Exact classification of `(x, y)` under the shift. Requires a one-to-one
/// substitution.
pub fn classify_pair(x: &RepresentedPoint, y: &RepresentedPoint) -> Result<PairVerdict> {
    let system = x.system();
    let strong = if has_uncountable_ly(system)? {
        None
    } else {
        Some(false)
    };
    classify_with(x, y, strong)
}

pub(crate) fn classify_with(
    x: &RepresentedPoint,
    y: &RepresentedPoint,
    strong: Option<bool>,
) -> Result<PairVerdict> {
    let system = x.system();
    if !Arc::ptr_eq(system, y.system()) {
        return Err(Error::MismatchedSystems);
    }
    let s = system.substitution();
    require_one_to_one(s)?;
    let verdict = |class, rule| PairVerdict {
        class,
        rule,
        strong: if class == PairClass::LiYorke {
            strong
        } else {
            None
        },
    };
    if x.digits() != y.digits() {
        return Ok(verdict(PairClass::Distal, Rule::OdometerSeparation));
    }
    if x == y {
        return Ok(verdict(PairClass::Asymptotic, Rule::Identical));
    }
    let differing = differing_suffix_pairs(x, y);
    if differing.is_empty() {
        return Ok(verdict(PairClass::Asymptotic, Rule::SuffixAgreement));
    }
    let engine = PairEngine::new(s)?;
    let reach = engine.reaches_diagonal();
    let proximal = differing.iter().flatten().any(|&q| reach[q as usize]);
    let class = if proximal {
        PairClass::LiYorke
    } else {
        PairClass::Distal
    };
    let rule = match coincidence_class(s)?.kind {
        CoincidenceKind::Overall => Rule::OverallCoincidence,
        CoincidenceKind::NoCoincidence => Rule::NoCoincidence,
        CoincidenceKind::Partial => Rule::CoincidenceReachability,
    };
    Ok(verdict(class, rule))
}

/// Zipped suffix words over one joint period after moving both points to
/// their right tails; empty when they all agree.
fn differing_suffix_pairs(x: &RepresentedPoint, y: &RepresentedPoint) -> Vec<Word> {
    let k = x.system().alphabet_size();
    let (x, _) = x.jump_to_right_tail();
    let (y, _) = y.jump_to_right_tail();
    let from = x.preperiod_len().max(y.preperiod_len());
    let span = lcm(x.period_len(), y.period_len());
    let words: Vec<Word> = (from..from + span)
        .map(|i| {
            let (sx, sy) = (&x.entry(i).suffix, &y.entry(i).suffix);
            sx.iter()
                .zip(sy)
                .map(|(&a, &b)| pair_letter(k, a, b))
                .collect()
        })
        .collect();
    if (from..from + span).all(|i| x.entry(i).suffix == y.entry(i).suffix) {
        Vec::new()
    } else {
        words
    }
}

/// Classification over a two-letter alphabet: with coincidences, pairs in a
/// fiber are asymptotic or Li–Yorke; without, asymptotic or distal.
pub fn classify_two_letter(x: &RepresentedPoint, y: &RepresentedPoint) -> Result<PairVerdict> {
    let system = x.system();
    if !Arc::ptr_eq(system, y.system()) {
        return Err(Error::MismatchedSystems);
    }
    let s = system.substitution();
    if s.len() != 2 {
        return Err(Error::Precondition(alloc::format!(
            "{} letters, expected 2",
            s.len()
        )));
    }
    require_one_to_one(s)?;
    let class = if x.digits() != y.digits() {
        PairClass::Distal
    } else if x == y || differing_suffix_pairs(x, y).is_empty() {
        PairClass::Asymptotic
    } else if s.image(0).iter().zip(s.image(1)).any(|(a, b)| a == b) {
        PairClass::LiYorke
    } else {
        PairClass::Distal
    };
    Ok(PairVerdict {
        class,
        rule: Rule::TwoLetter,
        strong: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::desub::enumerate_fiber;
    use crate::odometer::OdometerDigits;
    use alloc::vec;

    fn system(r: &[(&str, &str)]) -> Arc<System> {
        System::new(Substitution::from_rules(r).unwrap()).unwrap()
    }

    #[test]
    fn coincidence_classes() {
        let kind = |r: &[(&str, &str)]| {
            coincidence_class(&Substitution::from_rules(r).unwrap())
                .unwrap()
                .kind
        };
        assert_eq!(
            kind(&[("0", "01"), ("1", "10")]),
            CoincidenceKind::NoCoincidence
        );
        assert_eq!(kind(&[("0", "01"), ("1", "00")]), CoincidenceKind::Overall);
        assert_eq!(
            kind(&[("a", "aba"), ("b", "bca"), ("c", "cca")]),
            CoincidenceKind::Overall
        );
        let c = coincidence_class(
            &Substitution::from_rules(&[("a", "aba"), ("b", "bca"), ("c", "cca")]).unwrap(),
        )
        .unwrap();
        assert_eq!(
            c.table[0],
            PairWitness {
                a: 0,
                b: 1,
                coincidences: vec![2],
                differences: vec![0, 1]
            }
        );
        assert_eq!(c.table[2].coincidences, vec![1, 2]);
    }

    #[test]
    fn existence_examples() {
        assert!(has_ly_pairs(&system(&[("0", "010"), ("1", "100")])).unwrap());
        assert!(!has_ly_pairs(&system(&[("0", "01"), ("1", "00")])).unwrap());
        assert!(!has_ly_pairs(&system(&[
            ("0", "0123"),
            ("1", "1032"),
            ("2", "1023"),
            ("3", "0132")
        ]))
        .unwrap());
        assert!(!has_ly_pairs(&system(&[("0", "01"), ("1", "10")])).unwrap());
    }

    #[test]
    fn uncountability_examples() {
        let two = system(&[
            ("a", "baacd"),
            ("b", "bbbcd"),
            ("c", "bcaba"),
            ("d", "bdabd"),
        ]);
        assert!(has_uncountable_ly(&two).unwrap());
        assert!(has_strong_ly(&two).unwrap());
        let one = system(&[("a", "aba"), ("b", "bca"), ("c", "cca")]);
        assert!(has_ly_pairs(&one).unwrap());
        assert!(!has_uncountable_ly(&one).unwrap());
        assert!(!has_uncountable_ly(&system(&[("0", "01"), ("1", "10")])).unwrap());
    }

    #[test]
    fn certificates() {
        let s = system(&[("0", "010"), ("1", "100")]);
        let c = ly_certificate(&s).unwrap().unwrap();
        assert_eq!((c.m, c.a, c.b, c.position), (1, 0, 1, 0));
        assert_eq!((c.v.clone(), c.v2.clone()), (vec![1, 0], vec![0, 0]));
        let s = system(&[("a", "aba"), ("b", "bca"), ("c", "cca")]);
        let c = ly_certificate(&s).unwrap().unwrap();
        assert_eq!((c.m, c.a, c.b, c.position), (1, 0, 1, 0));
        assert_eq!((c.v, c.v2), (vec![1, 0], vec![2, 0]));
        let s = system(&[
            ("a", "baacd"),
            ("b", "bbbcd"),
            ("c", "bcaba"),
            ("d", "bdabd"),
        ]);
        let c = uncountable_certificate(&s).unwrap().unwrap();
        assert_eq!((c.m, c.a, c.b, c.first, c.second), (1, 0, 1, 1, 2));
    }

    #[test]
    fn non_injective_input_is_rejected() {
        let s = Substitution::from_rules(&[("a", "abc"), ("b", "abc"), ("c", "cab")]);
        if let Ok(s) = s {
            if let Ok(sys) = System::new(s) {
                assert_eq!(has_ly_pairs(&sys), Err(Error::NotOneToOne));
            }
        }
    }

    #[test]
    fn morse_fiber_pairs() {
        let m = system(&[("0", "01"), ("1", "10")]);
        let fiber = enumerate_fiber(&m, &OdometerDigits::zero(2)).unwrap();
        let mut classes = Vec::new();
        for i in 0..fiber.len() {
            for j in i + 1..fiber.len() {
                let v = classify_pair(&fiber[i], &fiber[j]).unwrap();
                assert_ne!(v.class, PairClass::LiYorke);
                assert_eq!(
                    classify_two_letter(&fiber[i], &fiber[j]).unwrap().class,
                    v.class
                );
                classes.push(v.class);
            }
        }
        assert!(classes.contains(&PairClass::Asymptotic));
        assert!(classes.contains(&PairClass::Distal));
        let x = RepresentedPoint::fixed_point(&m, 1, 0).unwrap();
        assert_eq!(
            classify_pair(&x, &x.shift()).unwrap().rule,
            Rule::OdometerSeparation
        );
    }
}
