//! Points of `X_τ` given constructively by their desubstitution data.
//!
//! A point `x` is described level by level: at level `i` the point `x^(i)`
//! has center letter `a_i`, and `τ(a_{i+1}) = p_i · a_i · s_i` with the digit
//! `δ_i = |p_i|`. The data is eventually periodic. When all prefixes of the
//! period are empty the left tail is not determined by the levels and a left
//! seed `c` is attached at the start of the period: the tail at that level is
//! `lim τ^{kr}(c)` where `τ^r(c)` ends with `c`. Symmetrically for a right
//! seed when all suffixes of the period are empty.
//!
//! Streams are kept in canonical form (minimal period, then minimal
//! preperiod), so two represented points are equal iff their streams are.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::odometer::{minimal_period, unroll, OdometerDigits};
use crate::reduction::decide_infinite;
use crate::subst::{Letter, Substitution, Word, DEFAULT_MAX_WORD};

/// A primitive substitution of constant length `p ≥ 2` with infinite `X_τ`,
/// together with the data the point machinery looks up repeatedly.
#[derive(Debug)]
pub struct System {
    subst: Substitution,
    p: usize,
    /// `adjacent[a * k + b]` iff `ab` is in the language.
    adjacent: Vec<bool>,
    words3: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl System {
    pub fn new(subst: Substitution) -> Result<Arc<System>> {
        let p = subst.require_constant()?;
        if !decide_infinite(&subst)?.infinite {
            return Err(Error::FiniteSubshift);
        }
        let k = subst.len();
        let mut adjacent = vec![false; k * k];
        for w in subst.language(2)? {
            adjacent[w[0] as usize * k + w[1] as usize] = true;
        }
        let words3 = subst.language(3)?.len();
        Ok(Arc::new(System {
            subst,
            p,
            adjacent,
            words3,
        }))
    }

    pub fn substitution(&self) -> &Substitution {
        &self.subst
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn alphabet_size(&self) -> usize {
        self.subst.len()
    }

    pub fn is_adjacent(&self, a: Letter, b: Letter) -> bool {
        self.adjacent[a as usize * self.subst.len() + b as usize]
    }

    /// `K`, the number of length-3 words; fibers of the odometer factor map
    /// have at most this many points.
    pub fn fiber_bound(&self) -> usize {
        self.words3
    }

    fn edge(&self, side: Side, a: Letter) -> Letter {
        match side {
            Side::Left => self.subst.last_letter(a),
            Side::Right => self.subst.first_letter(a),
        }
    }

    /// Smallest `r ≤ |A|` such that `τ^r(c)` ends (left) or begins (right)
    /// with `c`.
    pub fn fixing_power(&self, side: Side, c: Letter) -> Option<usize> {
        let mut cur = c;
        for r in 1..=self.subst.len() {
            cur = self.edge(side, cur);
            if cur == c {
                return Some(r);
            }
        }
        None
    }

    /// Letters with a fixing power on the given side, in alphabet order.
    pub fn seed_letters(&self, side: Side) -> Vec<Letter> {
        self.subst
            .letters()
            .filter(|&c| self.fixing_power(side, c).is_some())
            .collect()
    }

    /// The seed chain `j` levels above the level where `c` is attached.
    fn chain(&self, side: Side, c: Letter, r: usize, j: usize) -> Letter {
        let steps = (r - j % r) % r;
        (0..steps).fold(c, |l, _| self.edge(side, l))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StreamEntry {
    pub prefix: Word,
    pub center: Letter,
    pub suffix: Word,
}

impl StreamEntry {
    pub fn digit(&self) -> u32 {
        self.prefix.len() as u32
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DesubstitutionStream {
    pub preperiod: Vec<StreamEntry>,
    pub period: Vec<StreamEntry>,
    pub left_seed: Option<Letter>,
    pub right_seed: Option<Letter>,
}

/// `(center, digit)` for one level.
type Level = (Letter, u32);

/// A finite window of a point: `letters[origin]` is coordinate 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub letters: Word,
    pub origin: usize,
}

impl Window {
    pub fn at(&self, i: i64) -> Option<Letter> {
        let idx = self.origin as i64 + i;
        if idx < 0 {
            return None;
        }
        self.letters.get(idx as usize).copied()
    }

    /// Coordinates `lo..=hi`.
    pub fn slice(&self, lo: i64, hi: i64) -> Option<&[Letter]> {
        let a = self.origin as i64 + lo;
        let b = self.origin as i64 + hi;
        if a < 0 || b < a - 1 || b as usize >= self.letters.len() {
            return None;
        }
        Some(&self.letters[a as usize..=b as usize])
    }

    pub fn min_coord(&self) -> i64 {
        -(self.origin as i64)
    }

    pub fn max_coord(&self) -> i64 {
        self.letters.len() as i64 - self.origin as i64 - 1
    }
}

#[derive(Clone, Debug)]
pub struct RepresentedPoint {
    system: Arc<System>,
    stream: DesubstitutionStream,
}

impl PartialEq for RepresentedPoint {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.system, &other.system) && self.stream == other.stream
    }
}

impl Eq for RepresentedPoint {}

impl RepresentedPoint {
    /// Validates a stream given entry by entry.
    pub fn from_entries(
        system: &Arc<System>,
        preperiod: Vec<StreamEntry>,
        period: Vec<StreamEntry>,
        left_seed: Option<Letter>,
        right_seed: Option<Letter>,
    ) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        let s = &system.subst;
        let n = preperiod.len() + period.len();
        let entry = |i: usize| -> &StreamEntry {
            if i < preperiod.len() {
                &preperiod[i]
            } else {
                &period[(i - preperiod.len()) % period.len()]
            }
        };
        for i in 0..n {
            let e = entry(i);
            let k = s.len();
            if e.center as usize >= k || e.prefix.iter().chain(&e.suffix).any(|&l| l as usize >= k)
            {
                return Err(Error::UnknownLetter(alloc::format!("{}", e.center)));
            }
            if e.prefix.len() + 1 + e.suffix.len() != system.p {
                return Err(Error::BadEntryLength { level: i });
            }
            let img = s.image(entry(i + 1).center);
            let d = e.prefix.len();
            if img[..d] != e.prefix[..] || img[d] != e.center || img[d + 1..] != e.suffix[..] {
                return Err(Error::ChainViolation { level: i });
            }
        }
        let levels =
            |v: &[StreamEntry]| v.iter().map(|e| (e.center, e.digit())).collect::<Vec<_>>();
        Self::from_levels(
            system,
            levels(&preperiod),
            levels(&period),
            left_seed,
            right_seed,
        )
    }

    /// Builds a point from `(center, digit)` levels, checking
    /// `τ(a_{i+1})[δ_i] = a_i` and the seed rules.
    pub fn from_levels(
        system: &Arc<System>,
        preperiod: Vec<Level>,
        period: Vec<Level>,
        left_seed: Option<Letter>,
        right_seed: Option<Letter>,
    ) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        let s = &system.subst;
        let k = s.len();
        let p = system.p as u32;
        let level = |i: usize| -> Level {
            if i < preperiod.len() {
                preperiod[i]
            } else {
                period[(i - preperiod.len()) % period.len()]
            }
        };
        let n = preperiod.len() + period.len();
        for i in 0..n {
            let (a, d) = level(i);
            if a as usize >= k {
                return Err(Error::UnknownLetter(alloc::format!("{a}")));
            }
            if d >= p {
                return Err(Error::DigitOutOfRange { digit: d, base: p });
            }
            if s.image(level(i + 1).0)[d as usize] != a {
                return Err(Error::ChainViolation { level: i });
            }
        }
        let needs_left = period.iter().all(|&(_, d)| d == 0);
        let needs_right = period.iter().all(|&(_, d)| d == p - 1);
        let big_p = preperiod.len();
        for (side, seed, needed, name) in [
            (Side::Left, left_seed, needs_left, "left"),
            (Side::Right, right_seed, needs_right, "right"),
        ] {
            match (seed, needed) {
                (None, true) => return Err(Error::MissingSeed(name)),
                (Some(_), false) => return Err(Error::ForbiddenSeed(name)),
                (Some(c), true) => {
                    if c as usize >= k {
                        return Err(Error::UnknownLetter(alloc::format!("{c}")));
                    }
                    let r = system
                        .fixing_power(side, c)
                        .ok_or_else(|| Error::NoFixingPower(s.name(c).into()))?;
                    let span = lcm(r, period.len());
                    for j in 0..span {
                        let l = system.chain(side, c, r, j);
                        let a = level(big_p + j).0;
                        let ok = match side {
                            Side::Left => system.is_adjacent(l, a),
                            Side::Right => system.is_adjacent(a, l),
                        };
                        if !ok {
                            return Err(Error::InadmissibleSeed(s.name(c).into()));
                        }
                    }
                }
                (None, false) => {}
            }
        }
        Ok(Self::canonical(
            system, preperiod, period, left_seed, right_seed,
        ))
    }

    fn canonical(
        system: &Arc<System>,
        mut pre: Vec<Level>,
        mut per: Vec<Level>,
        mut left: Option<Letter>,
        mut right: Option<Letter>,
    ) -> Self {
        let s = &system.subst;
        per.truncate(minimal_period(&per));
        while let Some(&last) = pre.last() {
            if last != per[per.len() - 1] {
                break;
            }
            pre.pop();
            per.rotate_right(1);
            left = left.map(|c| s.last_letter(c));
            right = right.map(|d| s.first_letter(d));
        }
        let parent = |i: usize| -> Letter {
            if i + 1 < pre.len() {
                pre[i + 1].0
            } else {
                per[(i + 1 - pre.len()) % per.len()].0
            }
        };
        let entry = |i: usize, (a, d): Level| {
            let img = s.image(parent(i));
            let d = d as usize;
            StreamEntry {
                prefix: img[..d].to_vec(),
                center: a,
                suffix: img[d + 1..].to_vec(),
            }
        };
        let preperiod = pre.iter().enumerate().map(|(i, &l)| entry(i, l)).collect();
        let period = per
            .iter()
            .enumerate()
            .map(|(j, &l)| entry(pre.len() + j, l))
            .collect();
        RepresentedPoint {
            system: Arc::clone(system),
            stream: DesubstitutionStream {
                preperiod,
                period,
                left_seed: left,
                right_seed: right,
            },
        }
    }

    /// The two-sided point `lim τ^{kr}(left) . lim τ^{kr}(right)`, i.e. all
    /// digits zero with a left seed.
    pub fn fixed_point(system: &Arc<System>, left: Letter, right: Letter) -> Result<Self> {
        let k = system.subst.len();
        if left as usize >= k || right as usize >= k {
            return Err(Error::UnknownLetter(alloc::format!("{left}/{right}")));
        }
        if !system.is_adjacent(left, right) {
            return Err(Error::Precondition(alloc::format!(
                "{}{} is not in the language",
                system.subst.name(left),
                system.subst.name(right)
            )));
        }
        let r = system
            .fixing_power(Side::Right, right)
            .ok_or_else(|| Error::NoFixingPower(system.subst.name(right).into()))?;
        let period = (0..r)
            .map(|j| (system.chain(Side::Right, right, r, j), 0))
            .collect();
        Self::from_levels(system, Vec::new(), period, Some(left), None)
    }

    pub fn system(&self) -> &Arc<System> {
        &self.system
    }

    pub fn stream(&self) -> &DesubstitutionStream {
        &self.stream
    }

    pub fn preperiod_len(&self) -> usize {
        self.stream.preperiod.len()
    }

    pub fn period_len(&self) -> usize {
        self.stream.period.len()
    }

    pub fn entry(&self, i: usize) -> &StreamEntry {
        let pre = &self.stream.preperiod;
        if i < pre.len() {
            &pre[i]
        } else {
            let per = &self.stream.period;
            &per[(i - pre.len()) % per.len()]
        }
    }

    pub fn center(&self, i: usize) -> Letter {
        self.entry(i).center
    }

    pub fn digit(&self, i: usize) -> u32 {
        self.entry(i).digit()
    }

    fn level(&self, i: usize) -> Level {
        (self.center(i), self.digit(i))
    }

    fn levels(&self) -> (Vec<Level>, Vec<Level>) {
        let f = |v: &[StreamEntry]| v.iter().map(|e| (e.center, e.digit())).collect::<Vec<_>>();
        (f(&self.stream.preperiod), f(&self.stream.period))
    }

    /// `π(x)` as an eventually periodic odometer element.
    pub fn digits(&self) -> OdometerDigits {
        let (pre, per) = self.levels();
        OdometerDigits::new(
            self.system.p as u32,
            pre.iter().map(|l| l.1).collect(),
            per.iter().map(|l| l.1).collect(),
        )
        .expect("stream digits are in range")
    }

    /// First `k` digits of `π(x)`.
    pub fn pi_digits(&self, k: usize) -> Vec<u32> {
        (0..k).map(|i| self.digit(i)).collect()
    }

    /// `I⁺(x)` is finite: the right tail comes from a seed.
    pub fn has_finite_right_indices(&self) -> bool {
        self.stream.right_seed.is_some()
    }

    pub fn has_finite_left_indices(&self) -> bool {
        self.stream.left_seed.is_some()
    }

    /// Coordinates `-radius..=radius`.
    pub fn expand(&self, radius: usize) -> Result<Window> {
        self.expand_capped(radius, DEFAULT_MAX_WORD)
    }

    pub fn expand_capped(&self, radius: usize, cap: usize) -> Result<Window> {
        let total = 2 * radius as u128 + 1;
        if total > cap as u128 {
            return Err(Error::Budget { needed: total, cap });
        }
        let mut letters = self.left_part(radius);
        letters.extend(self.right_part(radius + 1));
        Ok(Window {
            letters,
            origin: radius,
        })
    }

    /// `x_0 … x_{len-1}`, read as `a_0 s_0 τ(s_1) τ²(s_2) …`.
    fn right_part(&self, len: usize) -> Word {
        let s = &self.system.subst;
        let mut out = vec![self.center(0)];
        let mut i = 0;
        while out.len() < len {
            if let (Some(d), true) = (self.stream.right_seed, i >= self.preperiod_len()) {
                let r = self
                    .system
                    .fixing_power(Side::Right, d)
                    .expect("validated seed");
                let need = len - out.len();
                let m = i + r * self.levels_to_cover(need, r);
                out.extend(s.iterate_prefix(&[d], m, need));
                break;
            }
            let suffix = &self.entry(i).suffix;
            if !suffix.is_empty() {
                let need = len - out.len();
                out.extend(s.iterate_prefix(suffix, i, need));
            }
            i += 1;
        }
        out.truncate(len);
        out
    }

    /// `x_{-len} … x_{-1}`, read as `… τ²(p_2) τ(p_1) p_0`.
    fn left_part(&self, len: usize) -> Word {
        let s = &self.system.subst;
        let mut pieces: Vec<Word> = Vec::new();
        let mut have = 0;
        let mut i = 0;
        while have < len {
            if let (Some(c), true) = (self.stream.left_seed, i >= self.preperiod_len()) {
                let r = self
                    .system
                    .fixing_power(Side::Left, c)
                    .expect("validated seed");
                let need = len - have;
                let m = i + r * self.levels_to_cover(need, r);
                pieces.push(s.iterate_suffix(&[c], m, need));
                break;
            }
            let prefix = &self.entry(i).prefix;
            if !prefix.is_empty() {
                let piece = s.iterate_suffix(prefix, i, len - have);
                have += piece.len();
                pieces.push(piece);
            }
            i += 1;
        }
        let mut out: Word = pieces.into_iter().rev().flatten().collect();
        let extra = out.len().saturating_sub(len);
        out.drain(..extra);
        out
    }

    /// Number of seed periods `k` with `p^{kr} ≥ need`.
    fn levels_to_cover(&self, need: usize, r: usize) -> usize {
        let p = self.system.p as u128;
        let mut k = 0;
        let mut reach = 1u128;
        while reach < need as u128 {
            reach = reach.saturating_mul(p.pow(r as u32));
            k += 1;
        }
        k
    }

    /// Moves the start of the period `j` levels up, unrolling entries into
    /// the preperiod and advancing the seeds along their chains.
    fn unrolled(&self, len: usize) -> (Vec<Level>, Vec<Level>, Option<Letter>, Option<Letter>) {
        let (pre, per) = self.levels();
        let j = len.saturating_sub(pre.len());
        let (pre, per) = unroll(&pre, &per, len);
        let advance = |side: Side, seed: Option<Letter>| {
            seed.map(|c| {
                let r = self.system.fixing_power(side, c).expect("validated seed");
                self.system.chain(side, c, r, j)
            })
        };
        (
            pre,
            per,
            advance(Side::Left, self.stream.left_seed),
            advance(Side::Right, self.stream.right_seed),
        )
    }

    /// `T x`: the odometer carry on digits, recomputing centers below the
    /// carry level as first letters of images.
    pub fn shift(&self) -> Self {
        let s = &self.system.subst;
        let top = self.system.p as u32 - 1;
        let n = self.preperiod_len() + self.period_len();
        let Some(star) = (0..n).find(|&i| self.digit(i) != top) else {
            return self.jump_to_right_tail().0;
        };
        let (mut pre, per, left, right) = self.unrolled(star + 1);
        let parent = if star + 1 < pre.len() {
            pre[star + 1].0
        } else {
            per[0].0
        };
        let d = pre[star].1 + 1;
        pre[star] = (s.image(parent)[d as usize], d);
        for i in (0..star).rev() {
            pre[i] = (s.first_letter(pre[i + 1].0), 0);
        }
        Self::from_levels(&self.system, pre, per, left, right)
            .expect("the successor of a valid stream is valid")
    }

    /// `T^k x` for `k = k⁺(x)` when `I⁺(x)` is finite: the point centered at
    /// the start of the seeded right tail. All digits of the result are zero
    /// and its left tail is seeded by the old centers. Returns `(x, 0)` when
    /// `I⁺(x)` is infinite.
    pub fn jump_to_right_tail(&self) -> (Self, u128) {
        let Some(d) = self.stream.right_seed else {
            return (self.clone(), 0);
        };
        let sys = &self.system;
        let s = &sys.subst;
        let big_p = self.preperiod_len();
        let r = sys.fixing_power(Side::Right, d).expect("validated seed");
        let period: Vec<Level> = (0..r)
            .map(|j| (sys.chain(Side::Right, d, r, j), 0))
            .collect();
        let mut pre: Vec<Level> = vec![(0, 0); big_p];
        let mut above = d;
        for i in (0..big_p).rev() {
            above = s.first_letter(above);
            pre[i] = (above, 0);
        }
        let mut k: u128 = 1;
        let mut scale: u128 = 1;
        for i in 0..big_p {
            k = k.saturating_add((self.entry(i).suffix.len() as u128).saturating_mul(scale));
            scale = scale.saturating_mul(sys.p as u128);
        }
        let left = self.center(big_p);
        let point = Self::from_levels(sys, pre, period, Some(left), None)
            .expect("tail of a valid point is valid");
        (point, k)
    }

    /// `T^n x` by repeated single shifts.
    pub fn shift_by(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |x, _| x.shift())
    }

    /// Level-by-level description `(center, digit)` of the first `n` levels.
    pub fn level_prefix(&self, n: usize) -> Vec<(Letter, u32)> {
        (0..n).map(|i| self.level(i)).collect()
    }
}

/// All points whose odometer image is `digits`.
///
/// Centers satisfy `a_i = τ(a_{i+1})[δ_i]`; on the periodic part this is a
/// map on letters whose periodic points give exactly the admissible center
/// sequences. Seeds, where needed, range over the letters periodic under
/// last-letter (left) or first-letter (right) maps.
pub fn enumerate_fiber(
    system: &Arc<System>,
    digits: &OdometerDigits,
) -> Result<Vec<RepresentedPoint>> {
    let s = &system.subst;
    if digits.base() as usize != system.p {
        return Err(Error::Precondition(alloc::format!(
            "digits in base {} for a substitution of length {}",
            digits.base(),
            system.p
        )));
    }
    let big_p = digits.preperiod().len();
    let q = digits.period().len();
    let step = |i: usize, a: Letter| s.image(a)[digits.digit(i) as usize];
    let period_map = |c: Letter| (big_p..big_p + q).rev().fold(c, |a, i| step(i, a));
    let top = system.p as u32 - 1;
    let all_zero = digits.period().iter().all(|&d| d == 0);
    let all_top = digits.period().iter().all(|&d| d == top);

    let mut out: Vec<RepresentedPoint> = Vec::new();
    for c in s.letters() {
        let mut cycle = 0;
        let mut cur = c;
        for t in 1..=s.len() {
            cur = period_map(cur);
            if cur == c {
                cycle = t;
                break;
            }
        }
        if cycle == 0 {
            continue;
        }
        let span = cycle * q;
        let mut per: Vec<Level> = vec![(0, 0); span];
        let mut above = c;
        for j in (0..span).rev() {
            let i = big_p + j;
            above = step(i, above);
            per[j] = (above, digits.digit(i));
        }
        let mut pre: Vec<Level> = vec![(0, 0); big_p];
        let mut above = per[0].0;
        for i in (0..big_p).rev() {
            above = step(i, above);
            pre[i] = (above, digits.digit(i));
        }
        let candidates: Vec<(Option<Letter>, Option<Letter>)> = if all_zero {
            system
                .seed_letters(Side::Left)
                .into_iter()
                .map(|l| (Some(l), None))
                .collect()
        } else if all_top {
            system
                .seed_letters(Side::Right)
                .into_iter()
                .map(|r| (None, Some(r)))
                .collect()
        } else {
            vec![(None, None)]
        };
        for (l, r) in candidates {
            match RepresentedPoint::from_levels(system, pre.clone(), per.clone(), l, r) {
                Ok(x) => {
                    if !out.contains(&x) {
                        out.push(x);
                    }
                }
                Err(Error::InadmissibleSeed(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    out.sort_by(|x, y| x.stream.cmp(&y.stream));
    Ok(out)
}

/// Distinct length-3 words bound, `K`.
pub fn fiber_bound(system: &System) -> usize {
    system.fiber_bound()
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn system(r: &[(&str, &str)]) -> Arc<System> {
        System::new(Substitution::from_rules(r).unwrap()).unwrap()
    }

    fn morse() -> Arc<System> {
        system(&[("0", "01"), ("1", "10")])
    }

    fn render(sys: &System, w: &[Letter]) -> alloc::string::String {
        sys.substitution().render(w)
    }

    #[test]
    fn finite_subshifts_are_rejected() {
        let s = Substitution::from_rules(&[("0", "010"), ("1", "101")]).unwrap();
        assert_eq!(System::new(s).unwrap_err(), Error::FiniteSubshift);
    }

    #[test]
    fn fixed_points_of_morse() {
        let m = morse();
        let x = RepresentedPoint::fixed_point(&m, 0, 1).unwrap();
        let w = x.expand(7).unwrap();
        assert_eq!(render(&m, w.slice(0, 7).unwrap()), "10010110");
        let y = RepresentedPoint::fixed_point(&m, 1, 0).unwrap();
        let w = y.expand(7).unwrap();
        assert_eq!(render(&m, w.slice(0, 7).unwrap()), "01101001");
        assert_eq!(y.pi_digits(5), vec![0; 5]);
        // seed 1 needs r = 2 since τ(1) = 10 ends with 0
        let z = RepresentedPoint::fixed_point(&m, 1, 1).unwrap();
        assert_eq!(m.fixing_power(Side::Left, 1), Some(2));
        assert_eq!(z.center(0), 1);
    }

    #[test]
    fn morse_fixed_point_window() {
        let m = morse();
        let x = RepresentedPoint::fixed_point(&m, 1, 0).unwrap();
        let w = x.expand(4).unwrap();
        // left tail lim τ^{2k}(1) ends with ...1001
        assert_eq!(render(&m, &w.letters), "100101101");
        assert_eq!(x.expand(0).unwrap().letters, vec![0]);
    }

    #[test]
    fn seed_without_fixing_power() {
        let s = system(&[("0", "010"), ("1", "100")]);
        assert_eq!(s.fixing_power(Side::Left, 1), None);
        let err = RepresentedPoint::fixed_point(&s, 1, 0).unwrap_err();
        assert!(matches!(
            err,
            Error::NoFixingPower(_) | Error::Precondition(_)
        ));
        let err =
            RepresentedPoint::from_levels(&s, vec![], vec![(0, 0)], Some(1), None).unwrap_err();
        assert!(matches!(err, Error::NoFixingPower(_)));
    }

    #[test]
    fn entries_are_validated() {
        let m = morse();
        let good = StreamEntry {
            prefix: vec![],
            center: 0,
            suffix: vec![1],
        };
        let x =
            RepresentedPoint::from_entries(&m, vec![], vec![good.clone()], Some(1), None).unwrap();
        assert_eq!(x, RepresentedPoint::fixed_point(&m, 1, 0).unwrap());
        let bad = StreamEntry {
            prefix: vec![],
            center: 1,
            suffix: vec![1],
        };
        assert_eq!(
            RepresentedPoint::from_entries(&m, vec![bad], vec![good.clone()], Some(1), None)
                .unwrap_err(),
            Error::ChainViolation { level: 0 }
        );
        assert_eq!(
            RepresentedPoint::from_entries(&m, vec![], vec![good.clone()], None, None).unwrap_err(),
            Error::MissingSeed("left")
        );
        let mid = StreamEntry {
            prefix: vec![1],
            center: 0,
            suffix: vec![],
        };
        assert_eq!(
            RepresentedPoint::from_entries(&m, vec![], vec![good, mid], Some(0), None).unwrap_err(),
            Error::ChainViolation { level: 1 }
        );
    }

    #[test]
    fn li_yorke_construction_point() {
        let s = system(&[("0", "010"), ("1", "100")]);
        let e = StreamEntry {
            prefix: vec![],
            center: 0,
            suffix: vec![1, 0],
        };
        let x = RepresentedPoint::from_entries(&s, vec![], vec![e], Some(0), None).unwrap();
        let w = x.expand(12).unwrap();
        // 0 · 10 · τ(10) = 0 10 100010
        assert_eq!(render(&s, w.slice(0, 8).unwrap()), "010100010");
    }

    #[test]
    fn canonical_form_folds_preperiod() {
        let m = morse();
        let x = RepresentedPoint::from_levels(
            &m,
            vec![(0, 0), (0, 0)],
            vec![(0, 0), (0, 0)],
            Some(1),
            None,
        )
        .unwrap();
        assert_eq!(x.preperiod_len(), 0);
        assert_eq!(x.period_len(), 1);
        // seed 1 attached two levels up moves down: last(τ(1)) = 0, last(τ(0)) = 1
        assert_eq!(x.stream().left_seed, Some(1));
    }

    #[test]
    fn shift_examples() {
        let m = morse();
        let x = RepresentedPoint::fixed_point(&m, 1, 0).unwrap();
        let tx = x.shift();
        assert_eq!(
            tx.entry(0),
            &StreamEntry {
                prefix: vec![0],
                center: 1,
                suffix: vec![]
            }
        );
        assert_eq!(tx.pi_digits(4), vec![1, 0, 0, 0]);
        assert_eq!(tx.shift().pi_digits(4), vec![0, 1, 0, 0]);
        let a = x.expand(9).unwrap();
        let b = tx.expand(8).unwrap();
        assert_eq!(&a.letters[2..], &b.letters[..]);
    }

    #[test]
    fn carry_to_infinity() {
        let m = morse();
        // all digits 1: centers alternate, the right tail comes from the seed
        let x =
            RepresentedPoint::from_levels(&m, vec![], vec![(1, 1), (0, 1)], None, Some(0)).unwrap();
        assert!(x.has_finite_right_indices());
        assert_eq!(x.pi_digits(3), vec![1, 1, 1]);
        let tx = x.shift();
        assert_eq!(tx.pi_digits(3), vec![0, 0, 0]);
        let a = x.expand(20).unwrap();
        let b = tx.expand(19).unwrap();
        assert_eq!(&a.letters[2..], &b.letters[..]);
    }

    #[test]
    fn fiber_of_zero_in_morse() {
        let m = morse();
        let fiber = enumerate_fiber(&m, &OdometerDigits::zero(2)).unwrap();
        assert_eq!(fiber.len(), 4);
        assert!(fiber.len() <= m.fiber_bound());
        for x in &fiber {
            assert!(x.has_finite_left_indices());
        }
        let minus_one = enumerate_fiber(&m, &OdometerDigits::minus_one(2)).unwrap();
        assert!(minus_one.iter().all(|x| x.has_finite_right_indices()));
    }

    #[test]
    fn fiber_bounds() {
        assert_eq!(morse().fiber_bound(), 6);
        assert_eq!(system(&[("0", "01"), ("1", "00")]).fiber_bound(), 5);
    }
}
