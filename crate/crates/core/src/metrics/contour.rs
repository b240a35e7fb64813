use crate::error::{Error, Result};
use crate::rmq::SparseTableMin;
use crate::word::{Letter, WordWindow, UNMATCHED};

/// Burger counts `H` (hamburgers) and `C` (cheeseburgers) on the segments of
/// a time range, with `F` replaced by the order it acts as.
///
/// Index `k` holds the value at segment time `start + k`, the gap just left
/// of letter `start + k`. Values are relative to `base`, the segment where
/// both are zero. Steps at an `F` whose burger is unknown are left flat and
/// make the contour invalid past that letter, as recorded by `valid`.
#[derive(Clone, Debug)]
pub struct ContourPair {
    pub start: i64,
    pub base: i64,
    pub h: Vec<i64>,
    pub c: Vec<i64>,
    /// Segment times `[lo, hi]` around `base` where the values are exact.
    pub valid: (i64, i64),
}

impl ContourPair {
    /// Contour over the letters `steps`, which sit between segment times
    /// `start` and `start + steps.len()`. `kind_of_flexible(i)` tells which
    /// burger the `F` at offset `i` consumed, if known.
    pub fn from_steps(
        start: i64,
        base: i64,
        steps: &[Letter],
        mut kind_of_flexible: impl FnMut(usize) -> Option<Letter>,
    ) -> Result<Self> {
        let n = steps.len();
        if base < start || base > start + n as i64 {
            return Err(Error::OutOfRange(base));
        }
        let mut h = vec![0i64; n + 1];
        let mut c = vec![0i64; n + 1];
        let mut bad = Vec::new();
        for (i, &l) in steps.iter().enumerate() {
            let (dh, dc) = match l {
                Letter::Hamburger => (1, 0),
                Letter::Cheeseburger => (0, 1),
                Letter::HamburgerOrder => (-1, 0),
                Letter::CheeseburgerOrder => (0, -1),
                Letter::Flexible => match kind_of_flexible(i) {
                    Some(Letter::Hamburger) => (-1, 0),
                    Some(Letter::Cheeseburger) => (0, -1),
                    _ => {
                        bad.push(i);
                        (0, 0)
                    }
                },
            };
            h[i + 1] = h[i] + dh;
            c[i + 1] = c[i] + dc;
        }
        let b = (base - start) as usize;
        let (h0, c0) = (h[b], c[b]);
        h.iter_mut().for_each(|x| *x -= h0);
        c.iter_mut().for_each(|x| *x -= c0);
        // letter i sits between segments i and i+1
        let lo = bad.iter().filter(|&&i| i < b).map(|&i| i as i64 + 1).max().unwrap_or(0);
        let hi = bad.iter().filter(|&&i| i >= b).map(|&i| i as i64).min().unwrap_or(n as i64);
        Ok(ContourPair { start, base, h, c, valid: (start + lo, start + hi) })
    }

    /// Contour of the window over segment times `[a, b]` with `H_0 = C_0 = 0`,
    /// resolving every `F` in between.
    pub fn from_window(w: &mut WordWindow, a: i64, b: i64) -> Result<Self> {
        if !(a <= 0 && 0 <= b) {
            return Err(Error::OutOfRange(if a > 0 { a } else { b }));
        }
        w.resolve_flexibles(a, b - 1)?;
        let steps: Vec<Letter> = (a..b).map(|t| w.letter_in(t).unwrap()).collect();
        let mut kinds = Vec::with_capacity(steps.len());
        for (i, &l) in steps.iter().enumerate() {
            kinds.push(if l == Letter::Flexible {
                let m = w.partner_in(a + i as i64).expect("resolved above");
                w.letter_in(m)
            } else {
                None
            });
        }
        Self::from_steps(a, 0, &steps, |i| kinds[i])
    }

    /// Contour of a word starting at time `start` with partners given as
    /// offsets, zero at segment time `base`.
    pub fn from_matched(letters: &[Letter], partner: &[u32], start: i64, base: i64) -> Result<Self> {
        Self::from_steps(start, base, letters, |i| {
            let p = partner[i];
            (p != UNMATCHED).then(|| letters[p as usize])
        })
    }

    pub fn len(&self) -> usize {
        self.h.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h.is_empty()
    }

    pub fn end(&self) -> i64 {
        self.start + self.h.len() as i64 - 1
    }

    pub fn is_valid_at(&self, t: i64) -> bool {
        self.valid.0 <= t && t <= self.valid.1
    }

    pub fn h_at(&self, t: i64) -> i64 {
        self.h[(t - self.start) as usize]
    }

    pub fn c_at(&self, t: i64) -> i64 {
        self.c[(t - self.start) as usize]
    }

    pub fn tree(&self) -> TreeMetric {
        TreeMetric { start: self.start, valid: self.valid, rmq: SparseTableMin::new(&self.h) }
    }
}

/// Distances in the canonical tree `T` from its contour `H`.
#[derive(Clone, Debug)]
pub struct TreeMetric {
    start: i64,
    valid: (i64, i64),
    rmq: SparseTableMin<i64>,
}

impl TreeMetric {
    /// `d_T(V(s), V(t)) = H_s + H_t - 2 min_{[s,t]} H`.
    pub fn distance(&self, s: i64, t: i64) -> Result<u64> {
        for x in [s, t] {
            if x < self.valid.0 || x > self.valid.1 {
                return Err(Error::OutOfRange(x));
            }
        }
        let (i, j) = ((s - self.start) as usize, (t - self.start) as usize);
        let m = self.rmq.min(i, j);
        Ok((self.rmq.get(i) + self.rmq.get(j) - 2 * m) as u64)
    }
}

/// Convenience wrapper for one pair.
pub fn tree_distance(contour: &ContourPair, s: i64, t: i64) -> Result<u64> {
    contour.tree().distance(s, t)
}
