use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::canonical::canonical_code;
use super::map::build_finite_map;
use crate::error::{Error, Result};
use crate::loops::trace_loops;
use crate::word::{is_reducible, word_to_string, Letter};

/// Largest half-length accepted by the exhaustive enumeration (`5^8` words).
pub const MAX_ENUMERATION_N: usize = 4;

/// One rooted decorated map of the finite-volume law.
#[derive(Clone, Debug)]
pub struct LawRow {
    pub code: Vec<u32>,
    /// Words encoding this map; exactly one when the encoding is bijective.
    pub words: Vec<String>,
    pub vertices: usize,
    pub dual_vertices: usize,
    pub flexible: usize,
    /// Loops traced on the map.
    pub loops: usize,
    /// Probability under the letter law conditioned on reducibility.
    pub word_probability: BigRational,
    /// Probability proportional to `sqrt(q)^loops` over all maps.
    pub fk_probability: BigRational,
}

#[derive(Clone, Debug)]
pub struct LawTable {
    pub n: usize,
    pub sqrt_q: BigRational,
    pub p: BigRational,
    pub words_checked: usize,
    pub reducible_words: usize,
    pub rows: Vec<LawRow>,
}

impl LawTable {
    pub fn is_bijective(&self) -> bool {
        self.rows.iter().all(|r| r.words.len() == 1)
    }

    pub fn loops_match_flexibles(&self) -> bool {
        self.rows.iter().all(|r| r.loops == r.flexible + 1)
    }

    pub fn laws_agree(&self) -> bool {
        self.rows.iter().all(|r| r.word_probability == r.fk_probability)
    }

    pub fn all_have_n_edges(&self) -> bool {
        self.rows.iter().all(|r| r.vertices + r.dual_vertices == self.n + 2)
    }
}

/// All reducible words of length `2n`.
pub fn reducible_words(n: usize) -> Result<Vec<Vec<Letter>>> {
    if n > MAX_ENUMERATION_N {
        return Err(Error::TooLarge { n, max: MAX_ENUMERATION_N });
    }
    let len = 2 * n;
    let mut out = Vec::new();
    let mut word = vec![Letter::Hamburger; len];
    let total = 5usize.pow(len as u32);
    for code in 0..total {
        let mut c = code;
        for slot in word.iter_mut() {
            *slot = Letter::ALL[c % 5];
            c /= 5;
        }
        if is_reducible(&word) {
            out.push(word.clone());
        }
    }
    Ok(out)
}

/// Exact comparison of the conditioned letter law with the FK weights
/// `sqrt(q)^loops` on all rooted decorated maps with `n` edges.
pub fn finite_volume_law_check(n: usize, sqrt_q: BigRational) -> Result<LawTable> {
    if sqrt_q <= BigRational::zero() {
        return Err(Error::Parameter("q must be positive".into()));
    }
    let words = reducible_words(n)?;
    let two = BigRational::from_integer(BigInt::from(2));
    let four = BigRational::from_integer(BigInt::from(4));
    // p = sqrt(q) / (2 + sqrt(q))
    let p = &sqrt_q / (&two + &sqrt_q);
    let weight_of = |l: Letter| -> BigRational {
        match l {
            Letter::Hamburger | Letter::Cheeseburger => BigRational::one() / &four,
            Letter::HamburgerOrder | Letter::CheeseburgerOrder => (BigRational::one() - &p) / &four,
            Letter::Flexible => &p / &two,
        }
    };
    let mut rows: BTreeMap<Vec<u32>, LawRow> = BTreeMap::new();
    let mut word_total = BigRational::zero();
    for w in &words {
        let map = build_finite_map(w)?;
        let code = canonical_code(&map)?;
        let loops = trace_loops(&map).len();
        let weight = w.iter().fold(BigRational::one(), |acc, &l| acc * weight_of(l));
        word_total += &weight;
        let row = rows.entry(code.clone()).or_insert_with(|| LawRow {
            code,
            words: Vec::new(),
            vertices: map.num_vertices(),
            dual_vertices: map.num_dual_vertices(),
            flexible: w.iter().filter(|&&l| l == Letter::Flexible).count(),
            loops,
            word_probability: BigRational::zero(),
            fk_probability: BigRational::zero(),
        });
        row.words.push(word_to_string(w));
        row.word_probability += weight;
    }
    let fk_weight = |loops: usize| (0..loops).fold(BigRational::one(), |acc, _| acc * &sqrt_q);
    let fk_total = rows.values().fold(BigRational::zero(), |acc, r| acc + fk_weight(r.loops));
    let mut rows: Vec<LawRow> = rows.into_values().collect();
    for r in &mut rows {
        r.word_probability = &r.word_probability / &word_total;
        r.fk_probability = fk_weight(r.loops) / &fk_total;
    }
    rows.sort_by(|a, b| a.words.cmp(&b.words));
    Ok(LawTable {
        n,
        sqrt_q,
        p,
        words_checked: 5usize.pow(2 * n as u32),
        reducible_words: words.len(),
        rows,
    })
}

/// `sqrt(q)` as an exact rational: exact for perfect squares of small
/// rationals, otherwise the binary value of the floating square root.
pub fn sqrt_q_rational(q: f64) -> Result<BigRational> {
    if !(q > 0.0) || !q.is_finite() {
        return Err(Error::Parameter(format!("q must be positive and finite, got {q}")));
    }
    let s = q.sqrt();
    for den in 1..=64i64 {
        let num = (s * den as f64).round();
        if ((num / den as f64).powi(2) - q).abs() <= 1e-12 * q.max(1.0) {
            return Ok(BigRational::new(BigInt::from(num as i64), BigInt::from(den)));
        }
    }
    BigRational::from_float(s).ok_or_else(|| Error::Parameter(format!("bad q {q}")))
}
