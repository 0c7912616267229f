//! Substitutions over a finite alphabet and their elementary combinatorics.
//!
//! Letters are carried as contiguous indices into the declared alphabet; the
//! textual tokens are kept only for rendering. Every ordering produced here
//! (word sets, pair letters) follows the declared alphabet order.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub type Letter = u16;
pub type Word = Vec<Letter>;

/// Default cap on the number of symbols produced by one expansion.
pub const DEFAULT_MAX_WORD: usize = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum LengthProfile {
    Constant(usize),
    Variable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    names: Vec<String>,
    images: Vec<Word>,
    profile: LengthProfile,
}

impl Substitution {
    /// Builds a substitution from alphabet tokens and images given as letter
    /// indices.
    pub fn new(names: Vec<String>, images: Vec<Word>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let mut seen = BTreeSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(Error::DuplicateLetter(n.clone()));
            }
        }
        if images.len() != names.len() {
            return Err(Error::Precondition(format!(
                "{} letters but {} images",
                names.len(),
                images.len()
            )));
        }
        let k = names.len();
        for (a, img) in images.iter().enumerate() {
            if img.is_empty() {
                return Err(Error::EmptyImage(names[a].clone()));
            }
            if let Some(&bad) = img.iter().find(|&&l| l as usize >= k) {
                return Err(Error::UnknownLetter(bad.to_string()));
            }
        }
        let first = images[0].len();
        let profile = if images.iter().all(|w| w.len() == first) {
            LengthProfile::Constant(first)
        } else {
            LengthProfile::Variable
        };
        Ok(Substitution {
            names,
            images,
            profile,
        })
    }

    /// Builds a substitution whose letters are single characters, e.g.
    /// `from_rules(&[("0", "01"), ("1", "10")])`.
    pub fn from_rules(rules: &[(&str, &str)]) -> Result<Self> {
        let names: Vec<String> = rules.iter().map(|(l, _)| l.to_string()).collect();
        let mut seen = BTreeSet::new();
        if let Some(dup) = names.iter().find(|n| !seen.insert(n.as_str())) {
            return Err(Error::DuplicateLetter(dup.clone()));
        }
        let lookup = |c: char| -> Result<Letter> {
            names
                .iter()
                .position(|n| n.chars().eq(core::iter::once(c)))
                .map(|i| i as Letter)
                .ok_or_else(|| Error::UnknownLetter(c.to_string()))
        };
        let images = rules
            .iter()
            .map(|(_, img)| img.chars().map(lookup).collect::<Result<Word>>())
            .collect::<Result<Vec<_>>>()?;
        Substitution::new(names, images)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.names.len()).map(|a| a as Letter)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: Letter) -> &str {
        &self.names[a as usize]
    }

    pub fn letter(&self, name: &str) -> Option<Letter> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| i as Letter)
    }

    pub fn image(&self, a: Letter) -> &[Letter] {
        &self.images[a as usize]
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn profile(&self) -> LengthProfile {
        self.profile
    }

    pub fn constant_length(&self) -> Option<usize> {
        match self.profile {
            LengthProfile::Constant(p) => Some(p),
            LengthProfile::Variable => None,
        }
    }

    /// The constant length `p`, rejecting variable-length input and `p < 2`.
    pub fn require_constant(&self) -> Result<usize> {
        match self.profile {
            LengthProfile::Constant(p) if p >= 2 => Ok(p),
            LengthProfile::Constant(p) => Err(Error::LengthTooShort(p)),
            LengthProfile::Variable => Err(Error::NotConstantLength),
        }
    }

    pub fn is_one_to_one(&self) -> bool {
        let distinct: BTreeSet<&Word> = self.images.iter().collect();
        distinct.len() == self.images.len()
    }

    /// Parses a word in which every character is one letter token.
    pub fn word(&self, text: &str) -> Result<Word> {
        text.chars()
            .map(|c| {
                let mut buf = [0u8; 4];
                self.letter(c.encode_utf8(&mut buf))
                    .ok_or_else(|| Error::UnknownLetter(c.to_string()))
            })
            .collect()
    }

    /// Renders a word; multi-character tokens are backtick-quoted.
    pub fn render(&self, w: &[Letter]) -> String {
        let mut out = String::new();
        for &l in w {
            let n = self.name(l);
            if n.chars().count() == 1 {
                out.push_str(n);
            } else {
                out.push('`');
                out.push_str(n);
                out.push('`');
            }
        }
        out
    }

    pub fn first_letter(&self, a: Letter) -> Letter {
        self.images[a as usize][0]
    }

    pub fn last_letter(&self, a: Letter) -> Letter {
        *self.images[a as usize].last().expect("images are nonempty")
    }

    /// One application of the substitution to a word.
    pub fn apply(&self, w: &[Letter]) -> Word {
        let mut out = Vec::with_capacity(w.len() * self.images[0].len());
        for &l in w {
            out.extend_from_slice(&self.images[l as usize]);
        }
        out
    }

    /// `τ^m(w)` with the default word cap.
    pub fn iterate(&self, w: &[Letter], m: usize) -> Result<Word> {
        self.iterate_capped(w, m, DEFAULT_MAX_WORD)
    }

    /// `τ^m(w)`; fails rather than truncating when the result would exceed
    /// `cap` symbols.
    pub fn iterate_capped(&self, w: &[Letter], m: usize, cap: usize) -> Result<Word> {
        let mut cur: Word = w.to_vec();
        for _ in 0..m {
            let needed: u128 = cur
                .iter()
                .map(|&l| self.images[l as usize].len() as u128)
                .sum();
            if needed > cap as u128 {
                return Err(Error::Budget { needed, cap });
            }
            cur = self.apply(&cur);
        }
        Ok(cur)
    }

    /// First `len` letters of `τ^m(w)` (fewer if the word is shorter).
    /// Only letters that contribute to the prefix are expanded.
    pub fn iterate_prefix(&self, w: &[Letter], m: usize, len: usize) -> Word {
        if m == 0 {
            return w[..w.len().min(len)].to_vec();
        }
        let min_len = self.images.iter().map(Vec::len).min().unwrap_or(1).max(1);
        let inner = self.iterate_prefix(w, m - 1, len.div_ceil(min_len));
        let mut out = Word::with_capacity(len);
        for &l in &inner {
            let img = &self.images[l as usize];
            let take = img.len().min(len - out.len());
            out.extend_from_slice(&img[..take]);
            if out.len() == len {
                break;
            }
        }
        out
    }

    /// Last `len` letters of `τ^m(w)`.
    pub fn iterate_suffix(&self, w: &[Letter], m: usize, len: usize) -> Word {
        if m == 0 {
            return w[w.len().saturating_sub(len)..].to_vec();
        }
        let min_len = self.images.iter().map(Vec::len).min().unwrap_or(1).max(1);
        let inner = self.iterate_suffix(w, m - 1, len.div_ceil(min_len));
        let mut rev = Word::with_capacity(len);
        for &l in inner.iter().rev() {
            let img = &self.images[l as usize];
            let take = img.len().min(len - rev.len());
            rev.extend(img[img.len() - take..].iter().rev());
            if rev.len() == len {
                break;
            }
        }
        rev.reverse();
        rev
    }

    pub fn incidence_matrix(&self) -> IncidenceMatrix {
        let k = self.len();
        let mut m = vec![vec![0u64; k]; k];
        for (b, img) in self.images.iter().enumerate() {
            for &a in img {
                m[a as usize][b] += 1;
            }
        }
        IncidenceMatrix { entries: m }
    }

    /// True iff some power of the incidence matrix is entrywise positive.
    /// Powers are scanned up to the Wielandt bound `(|A|-1)^2 + 1`.
    pub fn is_primitive(&self) -> bool {
        let k = self.len();
        let base = self.incidence_matrix().support();
        let bound = (k - 1) * (k - 1) + 1;
        let mut power = base.clone();
        for _ in 0..bound {
            if power.iter().all(|row| row.iter().all(|&x| x)) {
                return true;
            }
            power = bool_mul(&power, &base);
        }
        false
    }

    fn require_primitive(&self) -> Result<()> {
        if self.is_primitive() {
            Ok(())
        } else {
            Err(Error::NotPrimitive)
        }
    }

    /// The length-`n` words of the subshift generated by a primitive
    /// substitution, in alphabet (lexicographic) order.
    ///
    /// Seeds with the length-`n` factors of the first iterate of each letter
    /// that is at least `n` long, then closes under "factors of the image of a
    /// known word" until nothing new appears.
    pub fn language(&self, n: usize) -> Result<BTreeSet<Word>> {
        self.require_primitive()?;
        let mut set = BTreeSet::new();
        if n == 0 {
            set.insert(Word::new());
            return Ok(set);
        }
        if self.len() == 1 {
            set.insert(vec![0; n]);
            return Ok(set);
        }
        let mut frontier: Vec<Word> = Vec::new();
        for a in self.letters() {
            let mut w = vec![a];
            while w.len() < n {
                w = self.apply(&w);
            }
            for f in w.windows(n) {
                if set.insert(f.to_vec()) {
                    frontier.push(f.to_vec());
                }
            }
        }
        while let Some(w) = frontier.pop() {
            let img = self.apply(&w);
            for f in img.windows(n) {
                if !set.contains(f) {
                    set.insert(f.to_vec());
                    frontier.push(f.to_vec());
                }
            }
        }
        Ok(set)
    }

    /// Factor complexity `p(1), ..., p(n_max)`.
    pub fn complexity(&self, n_max: usize) -> Result<Vec<usize>> {
        (1..=n_max)
            .map(|n| self.language(n).map(|l| l.len()))
            .collect()
    }

    /// The substitution on letter-pairs: `(a,b) ↦ (τ(a)_0,τ(b)_0)…(τ(a)_{p-1},τ(b)_{p-1})`.
    /// Pair `(a,b)` is letter `a·|A| + b`.
    pub fn pair_substitution(&self) -> Result<Substitution> {
        let p = match self.profile {
            LengthProfile::Constant(p) => p,
            LengthProfile::Variable => return Err(Error::NotConstantLength),
        };
        let k = self.len();
        let mut names = Vec::with_capacity(k * k);
        let mut images = Vec::with_capacity(k * k);
        for a in self.letters() {
            for b in self.letters() {
                names.push(format!("({},{})", self.name(a), self.name(b)));
                let (ia, ib) = (self.image(a), self.image(b));
                images.push((0..p).map(|j| pair_letter(k, ia[j], ib[j])).collect());
            }
        }
        Substitution::new(names, images)
    }
}

/// Index of the letter-pair `(a,b)` over an alphabet of size `k`.
pub fn pair_letter(k: usize, a: Letter, b: Letter) -> Letter {
    (a as usize * k + b as usize) as Letter
}

pub fn split_pair(k: usize, q: Letter) -> (Letter, Letter) {
    ((q as usize / k) as Letter, (q as usize % k) as Letter)
}

/// Zips two equal-length words into a word over letter-pairs.
pub fn zip_pair(k: usize, u: &[Letter], v: &[Letter]) -> Word {
    debug_assert_eq!(u.len(), v.len());
    u.iter()
        .zip(v)
        .map(|(&a, &b)| pair_letter(k, a, b))
        .collect()
}

pub fn unzip_pair(k: usize, w: &[Letter]) -> (Word, Word) {
    w.iter().map(|&q| split_pair(k, q)).unzip()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceMatrix {
    /// `entries[a][b]` counts occurrences of `a` in `τ(b)`.
    pub entries: Vec<Vec<u64>>,
}

impl IncidenceMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn mul(&self, other: &IncidenceMatrix) -> IncidenceMatrix {
        let k = self.size();
        let mut out = vec![vec![0u64; k]; k];
        for i in 0..k {
            for l in 0..k {
                let x = self.entries[i][l];
                if x == 0 {
                    continue;
                }
                for j in 0..k {
                    out[i][j] = out[i][j].saturating_add(x.saturating_mul(other.entries[l][j]));
                }
            }
        }
        IncidenceMatrix { entries: out }
    }

    pub fn pow(&self, m: u32) -> IncidenceMatrix {
        let k = self.size();
        let mut acc = IncidenceMatrix {
            entries: (0..k)
                .map(|i| (0..k).map(|j| u64::from(i == j)).collect())
                .collect(),
        };
        for _ in 0..m {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn column_sums(&self) -> Vec<u64> {
        let k = self.size();
        (0..k)
            .map(|j| self.entries.iter().map(|r| r[j]).sum())
            .collect()
    }

    fn support(&self) -> Vec<Vec<bool>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|&x| x > 0).collect())
            .collect()
    }
}

fn bool_mul(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let k = a.len();
    (0..k)
        .map(|i| (0..k).map(|j| (0..k).any(|l| a[i][l] && b[l][j])).collect())
        .collect()
}
