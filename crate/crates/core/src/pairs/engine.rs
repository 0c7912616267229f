//! Reachability over occurrences in iterates of the pair substitution.
//!
//! Write `σ` for the substitution on letter-pairs. An occurrence of the pair
//! `q` at position `j` of `σ^m(a,b)` is tracked together with the set of
//! pair letters occurring strictly after `j`. Passing to `σ^{m+1}(a,b)`
//! replaces the occurrence by one of the `p` positions of `σ(q)`; the letters
//! after it are the tail of `σ(q)` plus the `σ`-images of the old suffix
//! letters. The state space is finite, so breadth-first search decides
//! whether some level realizes a target state and yields a shortest path.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Result;
use crate::subst::{pair_letter, split_pair, Letter, Substitution, Word};

/// A set of pair letters.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairSet(Vec<u64>);

impl PairSet {
    pub fn empty(size: usize) -> Self {
        PairSet(vec![0; size.div_ceil(64)])
    }

    pub fn insert(&mut self, q: Letter) {
        self.0[q as usize / 64] |= 1 << (q % 64);
    }

    pub fn contains(&self, q: Letter) -> bool {
        self.0[q as usize / 64] >> (q % 64) & 1 == 1
    }

    pub fn union_with(&mut self, other: &PairSet) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }

    pub fn intersects(&self, other: &PairSet) -> bool {
        self.0.iter().zip(&other.0).any(|(a, b)| a & b != 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = Letter> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64)
                .filter(move |i| bits >> i & 1 == 1)
                .map(move |i| (w * 64 + i) as Letter)
        })
    }

    pub fn is_subset(&self, other: &PairSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

/// An occurrence of a letter-pair together with what follows it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlaggedPairState {
    /// The pair letter at the tracked occurrence.
    pub pair: Letter,
    /// Pair letters occurring after the tracked occurrence.
    pub suffix_letters: PairSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Goal {
    /// The target pair recurs with both a coincidence and a difference after it.
    LiYorke,
    /// The target pair recurs, occurs again later, and a coincidence follows
    /// the first occurrence.
    Uncountable,
}

pub struct PairEngine {
    k: usize,
    p: usize,
    sigma: Vec<Word>,
    images: Vec<PairSet>,
    tails: Vec<Vec<PairSet>>,
    diagonal: PairSet,
    off_diagonal: PairSet,
}

impl PairEngine {
    pub fn new(s: &Substitution) -> Result<Self> {
        let p = s.require_constant()?;
        let k = s.len();
        let n = k * k;
        let sigma: Vec<Word> = (0..n)
            .map(|q| {
                let (a, b) = split_pair(k, q as Letter);
                (0..p)
                    .map(|j| pair_letter(k, s.image(a)[j], s.image(b)[j]))
                    .collect()
            })
            .collect();
        let set_of = |w: &[Letter]| {
            let mut set = PairSet::empty(n);
            w.iter().for_each(|&q| set.insert(q));
            set
        };
        let images = sigma.iter().map(|w| set_of(w)).collect();
        let tails = sigma
            .iter()
            .map(|w| (0..p).map(|d| set_of(&w[d + 1..])).collect())
            .collect();
        let mut diagonal = PairSet::empty(n);
        let mut off_diagonal = PairSet::empty(n);
        for a in 0..k as Letter {
            for b in 0..k as Letter {
                if a == b {
                    diagonal.insert(pair_letter(k, a, b));
                } else {
                    off_diagonal.insert(pair_letter(k, a, b));
                }
            }
        }
        Ok(PairEngine {
            k,
            p,
            sigma,
            images,
            tails,
            diagonal,
            off_diagonal,
        })
    }

    pub fn alphabet_size(&self) -> usize {
        self.k
    }

    pub fn sigma(&self, q: Letter) -> &[Letter] {
        &self.sigma[q as usize]
    }

    pub fn start(&self, root: Letter) -> FlaggedPairState {
        FlaggedPairState {
            pair: root,
            suffix_letters: PairSet::empty(self.k * self.k),
        }
    }

    /// `σ(L)` as a letter set.
    fn image_of(&self, set: &PairSet) -> PairSet {
        let mut out = PairSet::empty(self.k * self.k);
        for q in set.iter() {
            out.union_with(&self.images[q as usize]);
        }
        out
    }

    /// One level down: for each position `d` of `σ(q)`, the state of the
    /// occurrence at that position.
    pub fn successors(&self, state: &FlaggedPairState) -> Vec<(usize, FlaggedPairState)> {
        let carried = self.image_of(&state.suffix_letters);
        (0..self.p)
            .map(|d| {
                let mut suffix_letters = self.tails[state.pair as usize][d].clone();
                suffix_letters.union_with(&carried);
                (
                    d,
                    FlaggedPairState {
                        pair: self.sigma[state.pair as usize][d],
                        suffix_letters,
                    },
                )
            })
            .collect()
    }

    pub fn has_coincidence_after(&self, state: &FlaggedPairState) -> bool {
        state.suffix_letters.intersects(&self.diagonal)
    }

    pub fn has_difference_after(&self, state: &FlaggedPairState) -> bool {
        state.suffix_letters.intersects(&self.off_diagonal)
    }

    pub fn occurs_after(&self, state: &FlaggedPairState, q: Letter) -> bool {
        state.suffix_letters.contains(q)
    }

    fn is_goal(&self, root: Letter, goal: Goal, state: &FlaggedPairState) -> bool {
        state.pair == root
            && self.has_coincidence_after(state)
            && match goal {
                Goal::LiYorke => self.has_difference_after(state),
                Goal::Uncountable => self.occurs_after(state, root),
            }
    }

    /// A shortest sequence of positions `d_0, …, d_{m-1}` (`m ≥ 1`) leading
    /// from `root` to a goal state, or `None` when no level realizes one.
    pub fn search(&self, root: Letter, goal: Goal) -> Option<Vec<usize>> {
        let start = self.start(root);
        let mut parent: BTreeMap<FlaggedPairState, Option<(FlaggedPairState, usize)>> =
            BTreeMap::new();
        parent.insert(start.clone(), None);
        let mut queue = VecDeque::from([start]);
        while let Some(state) = queue.pop_front() {
            for (d, next) in self.successors(&state) {
                if self.is_goal(root, goal, &next) {
                    let mut path = vec![d];
                    let mut cur = state;
                    while let Some(Some((prev, d))) = parent.get(&cur) {
                        path.push(*d);
                        cur = prev.clone();
                    }
                    path.reverse();
                    return Some(path);
                }
                if !parent.contains_key(&next) {
                    parent.insert(next.clone(), Some((state.clone(), d)));
                    queue.push_back(next);
                }
            }
        }
        None
    }

    /// Pair letters from which some iterate of `σ` produces a coincidence.
    pub fn reaches_diagonal(&self) -> Vec<bool> {
        let n = self.k * self.k;
        let mut reach: Vec<bool> = (0..n)
            .map(|q| self.diagonal.contains(q as Letter))
            .collect();
        loop {
            let mut changed = false;
            for q in 0..n {
                if !reach[q] && self.sigma[q].iter().any(|&r| reach[r as usize]) {
                    reach[q] = true;
                    changed = true;
                }
            }
            if !changed {
                return reach;
            }
        }
    }

    /// Pair letters visited along a path of positions from `root`.
    pub fn path_letters(&self, root: Letter, path: &[usize]) -> Vec<Letter> {
        let mut out = vec![root];
        let mut q = root;
        for &d in path {
            q = self.sigma[q as usize][d];
            out.push(q);
        }
        out
    }
}

/// The position `Σ d_t p^{m-1-t}` reached by a path of digits.
pub fn path_position(p: usize, path: &[usize]) -> u128 {
    path.iter()
        .fold(0u128, |acc, &d| acc * p as u128 + d as u128)
}

/// Base-`p` digits of `j`, most significant first, padded to `m` digits.
pub fn position_path(p: usize, m: usize, mut j: u128) -> Vec<usize> {
    let mut out = vec![0; m];
    for slot in out.iter_mut().rev() {
        *slot = (j % p as u128) as usize;
        j /= p as u128;
    }
    out
}
