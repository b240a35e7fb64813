use crate::error::Result;
use crate::word::{Interval, IntervalChain, Letter, WordWindow};

/// Nested reducible intervals around the Tutte edge `E(base)`. The `i`-th
/// pinch point is `V(start_i) = V(end_i + 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PinchSequence {
    pub base: i64,
    pub intervals: Vec<Interval>,
    pub complete: bool,
}

impl PinchSequence {
    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Segment time whose upper class is the `i`-th pinch point (0-based).
    pub fn pinch_time(&self, i: usize) -> i64 {
        self.intervals[i].start
    }

    fn from_chain(c: IntervalChain) -> Self {
        PinchSequence { base: c.base, intervals: c.intervals, complete: c.complete }
    }
}

pub fn pinch_sequence(w: &mut WordWindow, t: i64, k: usize) -> PinchSequence {
    PinchSequence::from_chain(w.enclosing_reducible_intervals(t, k))
}

/// A reducible interval whose first letter is a hamburger matched to a
/// final `F`.
pub fn is_strong(w: &mut WordWindow, iv: Interval) -> Result<bool> {
    Ok(w.letter(iv.start)? == Letter::Hamburger
        && w.letter(iv.end)? == Letter::Flexible
        && w.match_of(iv.start)? == iv.end)
}

/// Pinch sequence together with the positions (1-based) of its strong
/// intervals.
#[derive(Clone, Debug, PartialEq)]
pub struct StrongPinchSequence {
    pub pinch: PinchSequence,
    pub tau: Vec<usize>,
    /// Number of leading chain positions whose strongness is known. This can
    /// exceed `pinch.len()` by one when the cap stopped the closure of an
    /// interval already known not to be strong.
    pub checked: usize,
    pub complete: bool,
}

impl StrongPinchSequence {
    /// Segment time of the `k`-th strong pinch point (0-based).
    pub fn strong_pinch_time(&self, k: usize) -> i64 {
        self.pinch.pinch_time(self.tau[k] - 1)
    }
}

/// Grows the pinch sequence until `k` strong intervals are found or the cap
/// stops it.
///
/// The next interval is strong exactly when the letter before the current
/// one is `a` and the letter after it is `F`; that `F` then eats the `a`.
/// The check looks at those two letters before any closure is computed, so
/// a cap hit never hides a strong step.
pub fn strong_pinch_sequence(w: &mut WordWindow, t: i64, k: usize) -> StrongPinchSequence {
    let mut chain = w.enclosing_reducible_intervals(t, 0);
    let mut tau = Vec::new();
    let mut checked = 0;
    while tau.len() < k {
        let (l, r) = match chain.intervals.last() {
            Some(iv) => (iv.start - 1, iv.end + 1),
            None => (t - 1, t),
        };
        let (x, y) = match (w.letter(l), w.letter(r)) {
            (Ok(x), Ok(y)) => (x, y),
            _ => {
                chain.complete = false;
                break;
            }
        };
        checked += 1;
        if x == Letter::Hamburger && y == Letter::Flexible {
            chain.intervals.push(Interval::new(l, r));
            tau.push(chain.intervals.len());
            continue;
        }
        w.extend_chain(&mut chain, 1);
        if !chain.complete {
            break;
        }
    }
    let complete = chain.complete;
    StrongPinchSequence { pinch: PinchSequence::from_chain(chain), tau, checked, complete }
}

/// Index of the first strong interval, or a right-censored count when the
/// cap stops the search first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TauObservation {
    /// `tau_1` when `observed`, otherwise the number of intervals known not
    /// to be strong.
    pub steps: usize,
    pub observed: bool,
}

pub fn first_strong_index(w: &mut WordWindow, t: i64) -> TauObservation {
    let s = strong_pinch_sequence(w, t, 1);
    match s.tau.first() {
        Some(&tau) => TauObservation { steps: tau, observed: true },
        None => TauObservation { steps: s.checked, observed: false },
    }
}
