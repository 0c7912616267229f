//! The family `τ_n(a) = a0(a+1)` for `a ≠ n`, `τ_n(n) = n0n` over
//! `A_n = {0, …, n}`, linked by the letter maps `ρ_n : A_{n+1} → A_n`
//! (`n+1 ↦ n`), and the points of the countable scrambled set of the
//! inverse limit, checked level by level.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::desub::{enumerate_fiber, RepresentedPoint, System};
use crate::error::{Error, Result};
use crate::odometer::OdometerDigits;
use crate::orbit::{empirical_class, EvidenceReport, DEFAULT_WINDOW};
use crate::pairs::{classify_pair, PairClass, PairVerdict};
use crate::subst::{Letter, Substitution, Word};

pub fn tower_substitution(n: usize) -> Result<Substitution> {
    if n == 0 {
        return Err(Error::Precondition("tower levels start at 1".into()));
    }
    let names = (0..=n).map(|a| format!("{a}")).collect();
    let images = (0..=n as Letter)
        .map(|a| {
            if a as usize == n {
                vec![a, 0, a]
            } else {
                vec![a, 0, a + 1]
            }
        })
        .collect();
    Substitution::new(names, images)
}

#[derive(Clone, Debug)]
pub struct TowerLevel {
    pub n: usize,
    pub system: Arc<System>,
}

impl TowerLevel {
    /// Builds level `n`, checking primitivity and that the subshift is
    /// infinite.
    pub fn new(n: usize) -> Result<Self> {
        Ok(TowerLevel {
            n,
            system: System::new(tower_substitution(n)?)?,
        })
    }

    /// `x(n) = lim τ_n^k(n) . n 0 n τ_n(0n) τ_n²(0n) …`
    pub fn point_x(&self) -> Result<RepresentedPoint> {
        let n = self.n as Letter;
        RepresentedPoint::from_levels(&self.system, Vec::new(), vec![(n, 0)], Some(n), None)
    }

    /// `y(m, k) = lim τ_m^j(m) . (k-1) 0 k τ_m(0k) …` at this level `m`,
    /// for `1 ≤ k ≤ m`.
    pub fn point_y(&self, k: usize) -> Result<RepresentedPoint> {
        if k == 0 || k > self.n {
            return Err(Error::Precondition(format!(
                "y({}, {k}) needs 1 ≤ {k} ≤ {}",
                self.n, self.n
            )));
        }
        let center = (k - 1) as Letter;
        RepresentedPoint::from_levels(
            &self.system,
            Vec::new(),
            vec![(center, 0)],
            Some(self.n as Letter),
            None,
        )
    }
}

/// `ρ_n` applied letterwise to a word over `A_{n+1}`.
pub fn rho(n: usize, w: &[Letter]) -> Result<Word> {
    w.iter()
        .map(|&a| match a as usize {
            x if x <= n => Ok(a),
            x if x == n + 1 => Ok(n as Letter),
            _ => Err(Error::UnknownLetter(format!("{a}"))),
        })
        .collect()
}

/// The element `s_j` of the scrambled set at level `level`: `x(level)` below
/// `j`, `y(level, j)` from `j` on.
pub fn scrambled_element(level: &TowerLevel, j: usize) -> Result<RepresentedPoint> {
    if level.n < j {
        level.point_x()
    } else {
        level.point_y(j)
    }
}

/// What the construction predicts for `(s_i, s_j)`, `i < j`, at a level.
pub fn expected_level_class(i: usize, level: usize) -> PairClass {
    if level <= i {
        PairClass::Asymptotic
    } else {
        PairClass::LiYorke
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LevelVerdict {
    pub level: usize,
    pub verdict: PairVerdict,
    pub expected: PairClass,
    pub proximality_events: usize,
    pub separation_events: usize,
    pub max_last_difference: Option<usize>,
    /// The evidence does not contradict the exact verdict.
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ScrambledPairReport {
    pub i: usize,
    pub j: usize,
    pub levels: Vec<LevelVerdict>,
    /// Li–Yorke at some level and never distal.
    pub li_yorke: bool,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ScrambledReport {
    pub depth: usize,
    pub horizon: usize,
    pub elements: Vec<usize>,
    pub max_level: usize,
    pub pairs: Vec<ScrambledPairReport>,
    pub distal_entries: usize,
    pub mismatches: usize,
}

/// Whether an evidence report is compatible with an exact class.
pub fn evidence_consistent(class: PairClass, report: &EvidenceReport) -> bool {
    match class {
        PairClass::Distal => report.proximality_events.is_empty(),
        PairClass::Asymptotic => report
            .max_last_difference
            .is_none_or(|last| last < report.horizon / 2),
        PairClass::LiYorke => {
            !report.proximality_events.is_empty() && !report.separation_events.is_empty()
        }
    }
}

/// Checks the pattern of the scrambled set for the elements
/// `s_2, …, s_{depth+1}` at every level `1..=depth+2`.
pub fn verify_scrambled_s(depth: usize, horizon: usize) -> Result<ScrambledReport> {
    if depth < 2 {
        return Err(Error::Precondition("depth must be at least 2".into()));
    }
    let max_level = depth + 2;
    let levels = (1..=max_level)
        .map(TowerLevel::new)
        .collect::<Result<Vec<_>>>()?;
    let elements: Vec<usize> = (2..=depth + 1).collect();
    let mut pairs = Vec::new();
    for (a, &i) in elements.iter().enumerate() {
        for &j in &elements[a + 1..] {
            let mut rows = Vec::new();
            for level in &levels {
                let x = scrambled_element(level, i)?;
                let y = scrambled_element(level, j)?;
                let verdict = classify_pair(&x, &y)?;
                let evidence = empirical_class(&x, &y, horizon, DEFAULT_WINDOW)?;
                rows.push(LevelVerdict {
                    level: level.n,
                    verdict,
                    expected: expected_level_class(i, level.n),
                    proximality_events: evidence.proximality_events.len(),
                    separation_events: evidence.separation_events.len(),
                    max_last_difference: evidence.max_last_difference,
                    consistent: evidence_consistent(verdict.class, &evidence),
                });
            }
            let li_yorke = rows.iter().any(|r| r.verdict.class == PairClass::LiYorke)
                && rows.iter().all(|r| r.verdict.class != PairClass::Distal);
            pairs.push(ScrambledPairReport {
                i,
                j,
                levels: rows,
                li_yorke,
            });
        }
    }
    let rows = pairs.iter().flat_map(|p| &p.levels);
    let distal_entries = rows
        .clone()
        .filter(|r| r.verdict.class == PairClass::Distal)
        .count();
    let mismatches = rows
        .filter(|r| r.verdict.class != r.expected || !r.consistent)
        .count();
    Ok(ScrambledReport {
        depth,
        horizon,
        elements,
        max_level,
        pairs,
        distal_entries,
        mismatches,
    })
}

/// Words of the language of `τ_{n+1}` that project under `ρ_n` onto a given
/// word, found by desubstituting the target.
pub struct PreimageSearch {
    upper: Arc<System>,
    lower: Arc<System>,
    short: BTreeMap<usize, BTreeSet<Word>>,
    memo: BTreeMap<Word, BTreeSet<Word>>,
    n: usize,
}

impl PreimageSearch {
    pub fn new(n: usize) -> Result<Self> {
        let upper = TowerLevel::new(n + 1)?.system;
        let lower = TowerLevel::new(n)?.system;
        let mut short = BTreeMap::new();
        for len in 1..=3 {
            short.insert(len, upper.substitution().language(len)?);
        }
        Ok(PreimageSearch {
            upper,
            lower,
            short,
            memo: BTreeMap::new(),
            n,
        })
    }

    pub fn preimages(&mut self, target: &[Letter]) -> Result<BTreeSet<Word>> {
        if target.is_empty() {
            return Ok(BTreeSet::from([Word::new()]));
        }
        if let Some(found) = self.memo.get(target) {
            return Ok(found.clone());
        }
        let len = target.len();
        let mut out = BTreeSet::new();
        if len <= 3 {
            for w in &self.short[&len] {
                if rho(self.n, w)? == target {
                    out.insert(w.clone());
                }
            }
        } else {
            for offset in 0..3 {
                for parent in self.parents(target, offset) {
                    for v in self.preimages(&parent)? {
                        let image = self.upper.substitution().apply(&v);
                        out.insert(image[offset..offset + len].to_vec());
                    }
                }
            }
        }
        self.memo.insert(target.to_vec(), out.clone());
        Ok(out)
    }

    /// Words `V` over `A_n` with `τ_n(V)[offset..offset+len] = target`.
    fn parents(&self, target: &[Letter], offset: usize) -> Vec<Word> {
        let s = self.lower.substitution();
        let blocks = (offset + target.len()).div_ceil(3);
        let mut choices: Vec<Vec<Letter>> = Vec::with_capacity(blocks);
        for b in 0..blocks {
            let fits: Vec<Letter> = s
                .letters()
                .filter(|&c| {
                    s.image(c).iter().enumerate().all(|(r, &l)| {
                        let pos = 3 * b + r;
                        pos < offset || pos - offset >= target.len() || target[pos - offset] == l
                    })
                })
                .collect();
            if fits.is_empty() {
                return Vec::new();
            }
            choices.push(fits);
        }
        let mut out = vec![Word::new()];
        for fits in choices {
            out = out
                .into_iter()
                .flat_map(|w| {
                    fits.iter().map(move |&c| {
                        let mut w = w.clone();
                        w.push(c);
                        w
                    })
                })
                .collect();
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PreimageReport {
    pub n: usize,
    pub radius: usize,
    pub margin: usize,
    /// Distinct preimage words of the window of radius `radius + margin`.
    pub windows: usize,
    /// Distinct restrictions of those words to the central radius: the
    /// candidate preimage windows of radius `radius` consistent with the
    /// surrounding context.
    pub candidates: usize,
}

/// Preimages under `ρ_n` of the window of `z` of radius `radius`, read in
/// the context of the window of radius `radius + margin`.
pub fn preimage_report(
    search: &mut PreimageSearch,
    z: &RepresentedPoint,
    radius: usize,
    margin: usize,
) -> Result<PreimageReport> {
    let window = z.expand(radius + margin)?;
    let found = search.preimages(&window.letters)?;
    let candidates: BTreeSet<&[Letter]> = found
        .iter()
        .map(|w| &w[margin..=margin + 2 * radius])
        .collect();
    Ok(PreimageReport {
        n: search.n,
        radius,
        margin,
        windows: found.len(),
        candidates: candidates.len(),
    })
}

/// Points of `X_n` used to sample the preimage bound: the tower points and
/// fiber points over a few digit sequences, in a fixed order.
pub fn sample_points(level: &TowerLevel, count: usize) -> Result<Vec<RepresentedPoint>> {
    let mut out = vec![level.point_x()?];
    for k in 1..=level.n {
        out.push(level.point_y(k)?);
    }
    let periods: [&[u32]; 10] = [
        &[1],
        &[2],
        &[1, 2],
        &[0, 1],
        &[0, 2],
        &[2, 0, 1],
        &[1, 1, 0, 2],
        &[2, 2, 1],
        &[0, 1, 2, 1],
        &[1, 0, 0, 2, 2],
    ];
    for period in periods {
        let digits = OdometerDigits::new(3, Vec::new(), period.to_vec())?;
        for x in enumerate_fiber(&level.system, &digits)? {
            if !out.contains(&x) {
                out.push(x);
            }
        }
    }
    out.truncate(count);
    Ok(out)
}
