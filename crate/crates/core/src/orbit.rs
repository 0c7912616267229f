//! Finite-horizon observation of pairs under the shift.
//!
//! Nothing here is a proof: the simulator expands both points to long
//! windows and records, for each time `n`, how far around `n` they agree.
//! It serves as an independent check on the exact classifier.

use alloc::vec::Vec;

use crate::desub::{RepresentedPoint, Window};
use crate::error::{Error, Result};
use crate::subst::{zip_pair, Letter, DEFAULT_MAX_WORD};

/// Default agreement-radius cap `W`.
pub const DEFAULT_WINDOW: usize = 16;

/// Hard cap on the default horizon.
pub const MAX_DEFAULT_HORIZON: usize = 1_000_000;

/// `p^10` capped at [`MAX_DEFAULT_HORIZON`].
pub fn default_horizon(p: usize) -> usize {
    let mut h: usize = 1;
    for _ in 0..10 {
        h = h.saturating_mul(p);
    }
    h.min(MAX_DEFAULT_HORIZON)
}

/// `min{|i| : x_{n+i} ≠ y_{n+i}}`, capped at `cap`; the distance of
/// `Tⁿx` and `Tⁿy` is `2^{-radius}`.
pub fn agreement_radius(x: &Window, y: &Window, n: i64, cap: usize) -> Result<usize> {
    let reach = cap.saturating_sub(1) as i64;
    for needed in [n - reach, n + reach] {
        if x.at(needed).is_none() || y.at(needed).is_none() {
            return Err(Error::InsufficientWindow { needed });
        }
    }
    Ok(radius_unchecked(x, y, n, cap))
}

fn radius_unchecked(x: &Window, y: &Window, n: i64, cap: usize) -> usize {
    (0..cap)
        .find(|&r| {
            let r = r as i64;
            x.at(n + r) != y.at(n + r) || x.at(n - r) != y.at(n - r)
        })
        .unwrap_or(cap)
}

/// `2^{-radius}`.
pub fn distance(radius: usize) -> f64 {
    let mut d = 1.0;
    for _ in 0..radius {
        d /= 2.0;
    }
    d
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EvidenceReport {
    pub horizon: usize,
    pub window: usize,
    /// Times with agreement radius at the cap.
    pub proximality_events: Vec<usize>,
    /// Times with `x_n ≠ y_n`.
    pub separation_events: Vec<usize>,
    /// Largest time with `x_n ≠ y_n`.
    pub max_last_difference: Option<usize>,
    pub min_distance: f64,
    pub max_distance: f64,
}

/// Agreement radii at times `0..=horizon`.
pub fn radius_series(
    x: &RepresentedPoint,
    y: &RepresentedPoint,
    horizon: usize,
    cap: usize,
) -> Result<Vec<usize>> {
    let (wx, wy) = windows(x, y, horizon, cap)?;
    Ok((0..=horizon as i64)
        .map(|n| radius_unchecked(&wx, &wy, n, cap))
        .collect())
}

fn windows(
    x: &RepresentedPoint,
    y: &RepresentedPoint,
    horizon: usize,
    cap: usize,
) -> Result<(Window, Window)> {
    if !alloc::sync::Arc::ptr_eq(x.system(), y.system()) {
        return Err(Error::MismatchedSystems);
    }
    let radius = horizon + cap;
    Ok((
        x.expand_capped(radius, DEFAULT_MAX_WORD)?,
        y.expand_capped(radius, DEFAULT_MAX_WORD)?,
    ))
}

/// Scans times `0..=horizon`.
pub fn empirical_class(
    x: &RepresentedPoint,
    y: &RepresentedPoint,
    horizon: usize,
    cap: usize,
) -> Result<EvidenceReport> {
    let radii = radius_series(x, y, horizon, cap)?;
    let proximality_events: Vec<usize> = (0..=horizon).filter(|&n| radii[n] >= cap).collect();
    let separation_events: Vec<usize> = (0..=horizon).filter(|&n| radii[n] == 0).collect();
    let max_r = radii.iter().copied().max().unwrap_or(0);
    let min_r = radii.iter().copied().min().unwrap_or(0);
    Ok(EvidenceReport {
        horizon,
        window: cap,
        max_last_difference: separation_events.last().copied(),
        proximality_events,
        separation_events,
        min_distance: distance(max_r),
        max_distance: distance(min_r),
    })
}

/// Doubles the horizon from `horizon` until both event kinds occur at least
/// `min_events` times or `max_horizon` is exceeded. The flag is `true` when
/// the budget ran out first.
pub fn empirical_class_doubling(
    x: &RepresentedPoint,
    y: &RepresentedPoint,
    horizon: usize,
    cap: usize,
    min_events: usize,
    max_horizon: usize,
) -> Result<(EvidenceReport, bool)> {
    let mut h = horizon.max(1);
    loop {
        let report = empirical_class(x, y, h, cap)?;
        let enough = report.proximality_events.len() >= min_events
            && report.separation_events.len() >= min_events;
        if enough {
            return Ok((report, false));
        }
        if h.saturating_mul(2) > max_horizon {
            return Ok((report, true));
        }
        h *= 2;
    }
}

/// For each `n ≤ depth`, whether the centered window
/// `(x(-n,n), y(-n,n))` occurs again in `(x, y)` at some nonzero time `t`
/// with `|t| ≤ p^{2m}` for some `1 ≤ m ≤ depth`.
pub fn recurrence_check(x: &RepresentedPoint, y: &RepresentedPoint, depth: usize) -> Result<bool> {
    Ok(recurrence_times(x, y, depth)?.iter().all(Option::is_some))
}

/// Per `n ≤ depth`, the smallest `|t| ≥ 1` (positive first) at which the
/// centered window of radius `n` recurs, searched up to `p^{2·depth}`.
pub fn recurrence_times(
    x: &RepresentedPoint,
    y: &RepresentedPoint,
    depth: usize,
) -> Result<Vec<Option<i64>>> {
    if x == y {
        return Ok(alloc::vec![Some(1); depth + 1]);
    }
    let p = x.system().p();
    let reach = (0..2 * depth)
        .try_fold(1usize, |acc, _| acc.checked_mul(p))
        .ok_or(Error::Budget {
            needed: u128::MAX,
            cap: DEFAULT_MAX_WORD,
        })?;
    let (wx, wy) = windows(x, y, reach + depth, 1)?;
    let k = x.system().alphabet_size();
    let pair = zip_pair(k, &wx.letters, &wy.letters);
    let origin = wx.origin as i64;
    let mut out = Vec::with_capacity(depth + 1);
    for n in 0..=depth as i64 {
        let pattern = &pair[(origin - n) as usize..=(origin + n) as usize];
        let matches_at = |t: i64| {
            let start = origin + t - n;
            start >= 0
                && (start + 2 * n) < pair.len() as i64
                && &pair[start as usize..=(start + 2 * n) as usize] == pattern
        };
        let found = (1..=reach as i64).find_map(|d| [d, -d].into_iter().find(|&t| matches_at(t)));
        out.push(found);
    }
    Ok(out)
}

/// Whether `needle` occurs in `hay`.
pub fn contains(hay: &[Letter], needle: &[Letter]) -> bool {
    needle.is_empty() || hay.windows(needle.len()).any(|w| w == needle)
}
