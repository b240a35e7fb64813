//! Counter-based generation of the two-sided i.i.d. word.
//!
//! Letter `t` is drawn from a ChaCha8 keystream keyed by the master seed:
//! nonnegative times read stream 0 at position `t`, negative times read
//! stream 1 at position `-t - 1`. Each letter consumes one 64-bit word, so
//! any contiguous range of times can be regenerated without replay.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Letter, ModelParams};

/// Maps a uniform `u` in `[0, 1)` to a letter with the law `theta_p`.
#[inline]
pub fn letter_from_uniform(u: f64, p: f64) -> Letter {
    let order = (1.0 - p) / 4.0;
    if u < 0.25 {
        Letter::Hamburger
    } else if u < 0.5 {
        Letter::Cheeseburger
    } else if u < 0.5 + order {
        Letter::HamburgerOrder
    } else if u < 0.5 + 2.0 * order {
        Letter::CheeseburgerOrder
    } else {
        Letter::Flexible
    }
}

fn stream_rng(seed: u64, negative: bool, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(negative as u64);
    // two 32-bit words per letter
    rng.set_word_pos(2 * index as u128);
    rng
}

/// The letter at time `t`; a pure function of `(seed, t, p)`.
pub fn sample_letter(seed: u64, t: i64, params: &ModelParams) -> Letter {
    let (neg, idx) = if t >= 0 { (false, t as u64) } else { (true, (-(t + 1)) as u64) };
    let u: f64 = stream_rng(seed, neg, idx).random();
    letter_from_uniform(u, params.p())
}

/// Letters for the closed range `[from, to]`, in time order.
pub fn sample_range(seed: u64, from: i64, to: i64, params: &ModelParams) -> Vec<Letter> {
    if to < from {
        return Vec::new();
    }
    let p = params.p();
    let mut out = Vec::with_capacity((to - from + 1) as usize);
    if from < 0 {
        // negative part: indices -t-1 run from (-from-1) down to (-min(to,-1)-1)
        let neg_hi = (-from - 1) as u64;
        let neg_lo = (-(to.min(-1)) - 1) as u64;
        let mut rng = stream_rng(seed, true, neg_lo);
        let mut tmp: Vec<Letter> = (neg_lo..=neg_hi)
            .map(|_| letter_from_uniform(rng.random(), p))
            .collect();
        tmp.reverse();
        out.extend(tmp);
    }
    if to >= 0 {
        let start = from.max(0) as u64;
        let mut rng = stream_rng(seed, false, start);
        out.extend((start..=to as u64).map(|_| letter_from_uniform(rng.random(), p)));
    }
    out
}
