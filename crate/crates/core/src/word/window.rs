use super::reduce::{StackEngine, UNMATCHED};
use super::sampler::sample_range;
use super::{Letter, ModelParams};
use crate::error::{Error, Result};

/// Default cap on letters generated per side of the origin.
pub const DEFAULT_CAP: u64 = 1 << 26;

const INITIAL_HALF_WIDTH: i64 = 64;

/// A closed interval of integer times `[start, end]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub start: i64,
    pub end: i64,
}

impl Interval {
    pub fn new(start: i64, end: i64) -> Self {
        Interval { start, end }
    }

    pub fn len(&self) -> u64 {
        (self.end - self.start + 1).max(0) as u64
    }

    pub fn is_empty(&self) -> bool {
        self.end < self.start
    }

    pub fn contains(&self, t: i64) -> bool {
        self.start <= t && t <= self.end
    }

    /// Strict containment on both sides.
    pub fn strictly_inside(&self, outer: &Interval) -> bool {
        outer.start < self.start && self.end < outer.end
    }
}

/// Result of an enclosing-interval search that may stop at the cap.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalChain {
    pub base: i64,
    pub intervals: Vec<Interval>,
    /// False when the cap stopped the search before `k` intervals were found.
    pub complete: bool,
}

/// A copy of part of the word with partners as offsets into the copy.
#[derive(Clone, Debug, PartialEq)]
pub struct WordSlice {
    pub lo: i64,
    pub letters: Vec<Letter>,
    /// Offset of the partner within the slice, `UNMATCHED` if outside or unknown.
    pub partner: Vec<u32>,
}

impl WordSlice {
    /// A finite word taken on its own, times `0..len`.
    pub fn from_word(word: &[Letter]) -> Self {
        WordSlice {
            lo: 0,
            letters: word.to_vec(),
            partner: super::reduce::match_word(word),
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.letters.len() as i64 - 1
    }

    pub fn is_fully_matched(&self) -> bool {
        self.partner.iter().all(|&p| p != UNMATCHED)
    }
}

/// Counts of the orders left in a reduced word, split by the burger they
/// were (or would be) matched to.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OrderCounts {
    /// All orders, the quantity `K`.
    pub total: u64,
    /// `A` plus `F` matched to a hamburger.
    pub hamburger_type: u64,
    /// `B` plus `F` matched to a cheeseburger.
    pub cheeseburger_type: u64,
}

/// Lazily grown two-sided random word with its LIFO match table.
///
/// Letters are a pure function of `(seed, t, p)`. The window grows by
/// doubling on the side that a query needs and never past `cap` letters on
/// either side of the origin. Matches recorded here are final: a pair matched
/// inside the window is matched the same way in the infinite word.
#[derive(Clone, Debug)]
pub struct WordWindow {
    seed: u64,
    params: ModelParams,
    cap: u64,
    lo: i64,
    letters: Vec<Letter>,
    partner: Vec<u32>,
    engine: StackEngine,
}

impl WordWindow {
    pub fn new(seed: u64, params: ModelParams) -> Self {
        Self::with_cap(seed, params, DEFAULT_CAP)
    }

    pub fn with_cap(seed: u64, params: ModelParams, cap: u64) -> Self {
        let cap = cap.max(INITIAL_HALF_WIDTH as u64);
        let mut w = WordWindow {
            seed,
            params,
            cap,
            lo: 0,
            letters: Vec::new(),
            partner: Vec::new(),
            engine: StackEngine::new(),
        };
        w.rebuild(-INITIAL_HALF_WIDTH, INITIAL_HALF_WIDTH - 1);
        w
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.letters.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn min_lo(&self) -> i64 {
        -(self.cap as i64)
    }

    fn max_hi(&self) -> i64 {
        self.cap as i64 - 1
    }

    #[inline]
    fn idx(&self, t: i64) -> usize {
        (t - self.lo) as usize
    }

    fn rebuild(&mut self, lo: i64, hi: i64) {
        self.lo = lo;
        self.letters = sample_range(self.seed, lo, hi, &self.params);
        self.partner = vec![UNMATCHED; self.letters.len()];
        self.engine.clear();
        for i in 0..self.letters.len() {
            self.feed(i);
        }
    }

    #[inline]
    fn feed(&mut self, i: usize) {
        if let Some(s) = self.engine.push(i as u32, self.letters[i]) {
            self.partner[s as usize] = i as u32;
            self.partner[i] = s;
        }
    }

    // Pairs inside the old window keep their partners. An order left
    // unmatched there found both relevant stacks empty, so it can only take
    // a burger still pending in the new prefix; replaying those orders in
    // time order against the prefix's stacks finishes the matching.
    fn extend_left(&mut self, lo: i64) {
        let k = (self.lo - lo) as usize;
        let mut letters = sample_range(self.seed, lo, self.lo - 1, &self.params);
        let mut partner = vec![UNMATCHED; k];
        let mut prefix = StackEngine::new();
        for (i, &l) in letters.iter().enumerate() {
            if let Some(s) = prefix.push(i as u32, l) {
                partner[s as usize] = i as u32;
                partner[i] = s;
            }
        }
        partner.extend(self.partner.iter().map(|&p| if p == UNMATCHED { p } else { p + k as u32 }));
        letters.extend_from_slice(&self.letters);
        for i in k..letters.len() {
            if partner[i] == UNMATCHED && letters[i].is_order() {
                if let Some(s) = prefix.push(i as u32, letters[i]) {
                    partner[s as usize] = i as u32;
                    partner[i] = s;
                }
            }
        }
        self.engine.shift(k as u32);
        self.engine.stack_under(prefix);
        self.lo = lo;
        self.letters = letters;
        self.partner = partner;
    }

    fn extend_right(&mut self, hi: i64) {
        let old_hi = self.hi();
        if hi <= old_hi {
            return;
        }
        let start = self.letters.len();
        let new = sample_range(self.seed, old_hi + 1, hi, &self.params);
        self.letters.extend(new);
        self.partner.resize(self.letters.len(), UNMATCHED);
        for i in start..self.letters.len() {
            self.feed(i);
        }
    }

    /// Grows the window to cover `[lo, hi]`.
    pub fn ensure(&mut self, lo: i64, hi: i64) -> Result<()> {
        if lo < self.min_lo() {
            return Err(Error::Unresolved { time: lo, cap: self.cap });
        }
        if hi > self.max_hi() {
            return Err(Error::Unresolved { time: hi, cap: self.cap });
        }
        if lo < self.lo {
            self.extend_left(lo);
        }
        self.extend_right(hi);
        Ok(())
    }

    fn grow_left(&mut self, time: i64) -> Result<()> {
        if self.lo <= self.min_lo() {
            return Err(Error::Unresolved { time, cap: self.cap });
        }
        let step = (self.len() as i64).max(INITIAL_HALF_WIDTH);
        let lo = (self.lo - step).max(self.min_lo());
        self.ensure(lo, self.hi())
    }

    fn grow_right(&mut self, time: i64) -> Result<()> {
        if self.hi() >= self.max_hi() {
            return Err(Error::Unresolved { time, cap: self.cap });
        }
        let step = (self.len() as i64).max(INITIAL_HALF_WIDTH);
        let hi = (self.hi() + step).min(self.max_hi());
        self.ensure(self.lo, hi)
    }

    /// Grows geometrically until `[lo, hi]` is covered.
    pub fn cover(&mut self, lo: i64, hi: i64) -> Result<()> {
        while self.lo > lo {
            self.grow_left(lo)?;
        }
        while self.hi() < hi {
            self.grow_right(hi)?;
        }
        Ok(())
    }

    /// The letter at `t`, generating it if needed.
    pub fn letter(&mut self, t: i64) -> Result<Letter> {
        self.cover(t, t)?;
        Ok(self.letters[self.idx(t)])
    }

    /// The letter at `t` if already generated.
    pub fn letter_in(&self, t: i64) -> Option<Letter> {
        (self.lo..=self.hi()).contains(&t).then(|| self.letters[self.idx(t)])
    }

    /// Partner of `t` if it is already resolved inside the window.
    pub fn partner_in(&self, t: i64) -> Option<i64> {
        if !(self.lo..=self.hi()).contains(&t) {
            return None;
        }
        let p = self.partner[self.idx(t)];
        (p != UNMATCHED).then(|| self.lo + p as i64)
    }

    /// LIFO partner of `t`, extending the window until it is found or the
    /// cap is hit.
    pub fn match_of(&mut self, t: i64) -> Result<i64> {
        let l = self.letter(t)?;
        loop {
            if let Some(m) = self.partner_in(t) {
                return Ok(m);
            }
            if l.is_burger() {
                self.grow_right(t)?;
            } else {
                self.grow_left(t)?;
            }
        }
    }

    /// Resolves every `F` in `[a, b]`, which is what the burger-count walks need.
    pub fn resolve_flexibles(&mut self, a: i64, b: i64) -> Result<()> {
        self.cover(a, b)?;
        loop {
            let unresolved = (a..=b).find(|&t| {
                self.letters[self.idx(t)] == Letter::Flexible && self.partner[self.idx(t)] == UNMATCHED
            });
            match unresolved {
                None => return Ok(()),
                Some(t) => self.grow_left(t)?,
            }
        }
    }

    /// Resolves every letter in `[a, b]`.
    pub fn resolve_all(&mut self, a: i64, b: i64) -> Result<()> {
        self.cover(a, b)?;
        for t in a..=b {
            self.match_of(t)?;
        }
        Ok(())
    }

    /// Whether `X(s..=t)` reduces to the empty word. Only looks at `[s, t]`.
    pub fn is_reducible(&mut self, s: i64, t: i64) -> Result<bool> {
        self.cover(s, t)?;
        let (i, j) = (self.idx(s), self.idx(t));
        Ok(super::reduce::is_reducible(&self.letters[i..=j]))
    }

    /// Reduced form of `X(s..=t)`.
    pub fn reduced(&mut self, s: i64, t: i64) -> Result<super::ReducedWord> {
        self.cover(s, t)?;
        let (i, j) = (self.idx(s), self.idx(t));
        Ok(super::reduce::reduce(&self.letters[i..=j]))
    }

    /// Smallest interval containing `[s, e]` that is closed under matching,
    /// i.e. the smallest reducible superinterval.
    pub fn close_interval(&mut self, s: i64, e: i64) -> Result<Interval> {
        self.close_from(Interval::new(s, e), Interval::new(s, s - 1))
    }

    // `done` is a subinterval of `cur` whose partners are known to lie in `cur`.
    fn close_from(&mut self, mut cur: Interval, mut done: Interval) -> Result<Interval> {
        if done.is_empty() {
            done = Interval::new(cur.start, cur.start - 1);
        }
        loop {
            if done.start > cur.start {
                let t = done.start - 1;
                let m = self.match_of(t)?;
                done.start = t;
                cur.start = cur.start.min(m);
                cur.end = cur.end.max(m);
            } else if done.end < cur.end {
                let t = done.end + 1;
                let m = self.match_of(t)?;
                done.end = t;
                cur.start = cur.start.min(m);
                cur.end = cur.end.max(m);
            } else {
                return Ok(cur);
            }
        }
    }

    /// The chain of reducible intervals around the Tutte edge crossing
    /// `[t - 1, t]`.
    ///
    /// The first interval is the smallest reducible interval containing both
    /// `t - 1` and `t`; each next one is the smallest reducible interval
    /// containing the two letters just outside the previous one. Intervals
    /// are strictly nested and their left ends are the pinch points.
    pub fn enclosing_reducible_intervals(&mut self, t: i64, k: usize) -> IntervalChain {
        let mut chain = IntervalChain { base: t, intervals: Vec::with_capacity(k), complete: true };
        let mut seed = Interval::new(t - 1, t);
        let mut done = Interval::new(t, t - 1);
        while chain.intervals.len() < k {
            match self.close_from(seed, done) {
                Ok(iv) => {
                    chain.intervals.push(iv);
                    done = iv;
                    seed = Interval::new(iv.start - 1, iv.end + 1);
                }
                Err(_) => {
                    chain.complete = false;
                    break;
                }
            }
        }
        chain
    }

    /// Extends an existing chain by up to `more` intervals.
    pub fn extend_chain(&mut self, chain: &mut IntervalChain, more: usize) {
        let target = chain.intervals.len() + more;
        let (mut seed, mut done) = match chain.intervals.last() {
            Some(iv) => (Interval::new(iv.start - 1, iv.end + 1), *iv),
            None => (Interval::new(chain.base - 1, chain.base), Interval::new(chain.base, chain.base - 1)),
        };
        while chain.intervals.len() < target {
            match self.close_from(seed, done) {
                Ok(iv) => {
                    chain.intervals.push(iv);
                    done = iv;
                    seed = Interval::new(iv.start - 1, iv.end + 1);
                }
                Err(_) => {
                    chain.complete = false;
                    return;
                }
            }
        }
    }

    /// Orders left in the reduced form of `X(from..=to)`, classified by the
    /// kind of burger they consume in the infinite word.
    pub fn order_counts(&mut self, from: i64, to: i64) -> Result<OrderCounts> {
        let red = self.reduced(from, to)?;
        let mut c = OrderCounts { total: red.orders.len() as u64, ..Default::default() };
        // walk the reduced orders in time order to classify F by its partner
        let mut eng = StackEngine::new();
        let mut unmatched_f = Vec::new();
        for t in from..=to {
            let l = self.letters[self.idx(t)];
            if eng.push((t - from) as u32, l).is_none() && l.is_order() {
                match l {
                    Letter::HamburgerOrder => c.hamburger_type += 1,
                    Letter::CheeseburgerOrder => c.cheeseburger_type += 1,
                    _ => unmatched_f.push(t),
                }
            }
        }
        for t in unmatched_f {
            let m = self.match_of(t)?;
            match self.letter(m)? {
                Letter::Hamburger => c.hamburger_type += 1,
                _ => c.cheeseburger_type += 1,
            }
        }
        Ok(c)
    }

    /// `K` for the root: orders in the reduced form of `X(0..=e)` where
    /// `[s, e]` is the first reducible interval around the root edge.
    pub fn root_order_count(&mut self) -> Result<(Interval, OrderCounts)> {
        let iv = self.close_interval(-1, 0)?;
        let c = self.order_counts(0, iv.end)?;
        Ok((iv, c))
    }

    /// Copy of `[a, b]` with partners that fall inside it.
    pub fn slice(&mut self, a: i64, b: i64) -> Result<WordSlice> {
        self.cover(a, b)?;
        let (i, j) = (self.idx(a), self.idx(b));
        let letters = self.letters[i..=j].to_vec();
        let partner = (i..=j)
            .map(|k| {
                let p = self.partner[k];
                if p != UNMATCHED && (i..=j).contains(&(p as usize)) {
                    (p as usize - i) as u32
                } else {
                    UNMATCHED
                }
            })
            .collect();
        Ok(WordSlice { lo: a, letters, partner })
    }
}
