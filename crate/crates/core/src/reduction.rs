//! One-to-one reduction and the decision of whether `X_τ` is infinite.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::subst::{Letter, Substitution, Word};

/// Node budget of the simplification search.
pub const DEFAULT_SEARCH_BUDGET: u64 = 1_000_000;

/// One merge step: `substitution` is the reduced map and `map` sends each
/// letter of the previous alphabet to its representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub substitution: Substitution,
    pub map: Vec<Letter>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionResult {
    pub reduced: Substitution,
    /// `φ`, from the original alphabet onto the reduced one.
    pub letter_map: Vec<Letter>,
    pub chain: Vec<ReductionStep>,
}

impl ReductionResult {
    pub fn is_identity(&self) -> bool {
        self.chain.is_empty()
    }

    pub fn map_word(&self, w: &[Letter]) -> Word {
        w.iter().map(|&l| self.letter_map[l as usize]).collect()
    }
}

/// Merges letters with identical images until all images are distinct.
/// Each class is represented by its member earliest in alphabet order.
pub fn one_to_one_reduction(s: &Substitution) -> ReductionResult {
    let mut current = s.clone();
    let mut total: Vec<Letter> = s.letters().collect();
    let mut chain = Vec::new();
    loop {
        let mut reps: BTreeMap<&Word, Letter> = BTreeMap::new();
        let mut order: Vec<Letter> = Vec::new();
        for a in current.letters() {
            reps.entry(&current.images()[a as usize])
                .or_insert_with(|| {
                    order.push(a);
                    a
                });
        }
        if order.len() == current.len() {
            break;
        }
        // representative index within the new alphabet
        let new_index: BTreeMap<Letter, Letter> = order
            .iter()
            .enumerate()
            .map(|(i, &a)| (a, i as Letter))
            .collect();
        let map: Vec<Letter> = current
            .letters()
            .map(|a| new_index[&reps[&current.images()[a as usize]]])
            .collect();
        let names = order
            .iter()
            .map(|&a| String::from(current.name(a)))
            .collect();
        let images = order
            .iter()
            .map(|&a| current.image(a).iter().map(|&l| map[l as usize]).collect())
            .collect();
        let next = Substitution::new(names, images).expect("quotient of a valid substitution");
        total = total.iter().map(|&l| map[l as usize]).collect();
        chain.push(ReductionStep {
            substitution: next.clone(),
            map,
        });
        current = next;
    }
    ReductionResult {
        reduced: current,
        letter_map: total,
        chain,
    }
}

/// A factorization `τ = g ∘ f` through a strictly smaller alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplification {
    pub target_size: usize,
    /// `f(a)` for each original letter, over the smaller alphabet.
    pub f: Vec<Word>,
    /// `g(b)` for each letter of the smaller alphabet.
    pub g: Vec<Word>,
}

impl Simplification {
    /// `γ = f ∘ g` over the smaller alphabet.
    pub fn swapped(&self) -> Substitution {
        let names = (0..self.target_size).map(|i| format!("b{i}")).collect();
        let images = self
            .g
            .iter()
            .map(|gw| {
                gw.iter()
                    .flat_map(|&a| self.f[a as usize].iter().copied())
                    .collect()
            })
            .collect();
        Substitution::new(names, images).expect("nonempty images over the smaller alphabet")
    }

    pub fn composes_to(&self, s: &Substitution) -> bool {
        s.letters().all(|a| {
            let gf: Word = self.f[a as usize]
                .iter()
                .flat_map(|&b| self.g[b as usize].iter().copied())
                .collect();
            gf == s.image(a)
        })
    }
}

/// Searches for `f, g` with `g ∘ f = τ` over an alphabet of size `< |A|`,
/// smallest target alphabet first. `Ok(None)` means elementary.
pub fn is_simplifiable(s: &Substitution) -> Result<Option<Simplification>> {
    is_simplifiable_with_budget(s, DEFAULT_SEARCH_BUDGET)
}

pub fn is_simplifiable_with_budget(
    s: &Substitution,
    budget: u64,
) -> Result<Option<Simplification>> {
    let mut visited = 0u64;
    for k in 1..s.len() {
        let mut search = Factorizer {
            images: s.images(),
            target: k,
            g: Vec::new(),
            f: vec![Vec::new(); s.len()],
            visited: &mut visited,
            budget,
        };
        if search.run(0, 0)? {
            let (g, f) = (search.g, search.f);
            return Ok(Some(Simplification {
                target_size: g.len(),
                f,
                g,
            }));
        }
    }
    Ok(None)
}

struct Factorizer<'a> {
    images: &'a [Word],
    target: usize,
    g: Vec<Word>,
    f: Vec<Word>,
    visited: &'a mut u64,
    budget: u64,
}

impl Factorizer<'_> {
    // Cuts images left to right into g-blocks; new blocks are introduced in
    // order so every alphabet renaming is visited once.
    fn run(&mut self, img: usize, pos: usize) -> Result<bool> {
        *self.visited += 1;
        if *self.visited > self.budget {
            return Err(Error::SearchBudget {
                visited: *self.visited,
            });
        }
        if img == self.images.len() {
            return Ok(true);
        }
        let word = &self.images[img];
        if pos == word.len() {
            return self.run(img + 1, 0);
        }
        let rest = &word[pos..];
        for b in 0..self.g.len() {
            let len = self.g[b].len();
            if rest.starts_with(&self.g[b]) {
                self.f[img].push(b as Letter);
                if self.run(img, pos + len)? {
                    return Ok(true);
                }
                self.f[img].pop();
            }
        }
        if self.g.len() < self.target {
            let b = self.g.len() as Letter;
            for len in 1..=rest.len() {
                self.g.push(rest[..len].to_vec());
                self.f[img].push(b);
                if self.run(img, pos + len)? {
                    return Ok(true);
                }
                self.f[img].pop();
                self.g.pop();
            }
        }
        Ok(false)
    }
}

/// One step of the finiteness decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecisionStep {
    /// `τ = g∘f` through `target_size` letters; continue with `f∘g`.
    Simplified {
        from_size: usize,
        simplification: Simplification,
        next: Substitution,
    },
    /// Elementary substitution; the answer is whether some letter has two
    /// distinct right extensions in the language.
    Elementary {
        size: usize,
        biprolongeable: Option<Letter>,
    },
    /// A single-letter alphabet: the subshift is one fixed point.
    SingleLetter,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfinitenessDecision {
    pub infinite: bool,
    pub trace: Vec<DecisionStep>,
}

/// Decides whether `X_τ` is infinite for a primitive substitution.
pub fn decide_infinite(s: &Substitution) -> Result<InfinitenessDecision> {
    decide_infinite_with_budget(s, DEFAULT_SEARCH_BUDGET)
}

pub fn decide_infinite_with_budget(s: &Substitution, budget: u64) -> Result<InfinitenessDecision> {
    if !s.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    let mut trace = Vec::new();
    let mut current = s.clone();
    loop {
        if current.len() == 1 {
            trace.push(DecisionStep::SingleLetter);
            return Ok(InfinitenessDecision {
                infinite: false,
                trace,
            });
        }
        match is_simplifiable_with_budget(&current, budget)? {
            Some(simplification) => {
                let next = simplification.swapped();
                trace.push(DecisionStep::Simplified {
                    from_size: current.len(),
                    simplification,
                    next: next.clone(),
                });
                current = next;
            }
            None => {
                let biprolongeable = biprolongeable_letter(&current)?;
                trace.push(DecisionStep::Elementary {
                    size: current.len(),
                    biprolongeable,
                });
                return Ok(InfinitenessDecision {
                    infinite: biprolongeable.is_some(),
                    trace,
                });
            }
        }
    }
}

/// First letter (in alphabet order) followed by two distinct letters in the
/// length-2 language.
pub fn biprolongeable_letter(s: &Substitution) -> Result<Option<Letter>> {
    let l2 = s.language(2)?;
    let mut successors: BTreeMap<Letter, Letter> = BTreeMap::new();
    for w in &l2 {
        match successors.get(&w[0]) {
            Some(&b) if b != w[1] => return Ok(Some(w[0])),
            _ => {
                successors.insert(w[0], w[1]);
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum ComplexityVerdict {
    Finite,
    InfiniteEvidence,
    Inconclusive,
}

/// Cross-check of [`decide_infinite`] by factor complexity: a stall
/// `p(n+1) = p(n)` forces eventual periodicity, while `p(n) ≥ n+1` on the
/// whole scanned range is evidence of an aperiodic subshift.
pub fn oracle_infinite_via_complexity(s: &Substitution, n_max: usize) -> Result<ComplexityVerdict> {
    if n_max == 0 {
        return Ok(ComplexityVerdict::Inconclusive);
    }
    let counts = s.complexity(n_max)?;
    if counts.windows(2).any(|w| w[0] == w[1]) {
        return Ok(ComplexityVerdict::Finite);
    }
    if counts.iter().enumerate().all(|(i, &c)| c > i + 1) {
        return Ok(ComplexityVerdict::InfiniteEvidence);
    }
    Ok(ComplexityVerdict::Inconclusive)
}
