//! Oracles shared by the integration tests and the acceptance runner. They
//! only use the library's data types, never its algorithms.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

/// Small pointed space with integer masses.
#[derive(Clone, Debug)]
pub struct SmallSpace {
    pub dist: Vec<Vec<f64>>,
    pub mass: Vec<u32>,
    pub root: usize,
}

impl SmallSpace {
    pub fn len(&self) -> usize {
        self.mass.len()
    }

    pub fn total(&self) -> u32 {
        self.mass.iter().sum()
    }
}

/// Random Euclidean space on `n` points with masses summing to `total`,
/// each at least 1.
pub fn random_small_space(rng: &mut ChaCha8Rng, n: usize, total: u32) -> SmallSpace {
    let pts: Vec<(f64, f64)> = (0..n).map(|_| (rng.random::<f64>(), rng.random::<f64>())).collect();
    let dist = pts
        .iter()
        .map(|a| pts.iter().map(|b| ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt()).collect())
        .collect();
    let mut mass = vec![1u32; n];
    for _ in 0..total - n as u32 {
        mass[rng.random_range(0..n)] += 1;
    }
    SmallSpace { dist, mass, root: rng.random_range(0..n) }
}

/// Every nonnegative integer matrix with the given row and column sums.
pub fn integer_tables(rows: &[u32], cols: &[u32]) -> Vec<Vec<u32>> {
    fn go(k: usize, rows: &mut Vec<u32>, cols: &mut Vec<u32>, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let ny = cols.len();
        if k == rows.len() * ny {
            if rows.iter().all(|&r| r == 0) && cols.iter().all(|&c| c == 0) {
                out.push(cur.clone());
            }
            return;
        }
        let (i, j) = (k / ny, k % ny);
        let hi = if j == ny - 1 { rows[i] } else { rows[i].min(cols[j]) };
        let lo = if j == ny - 1 { rows[i] } else { 0 };
        if lo > cols[j] {
            return;
        }
        for w in lo..=hi.min(cols[j]) {
            rows[i] -= w;
            cols[j] -= w;
            cur.push(w);
            go(k + 1, rows, cols, cur, out);
            cur.pop();
            rows[i] += w;
            cols[j] += w;
        }
    }
    let mut out = Vec::new();
    go(0, &mut rows.to_vec(), &mut cols.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// Exact `inf_{R, nu} dis(R)/2 + nu(R^c)` for probability measures
/// `mass / total`, over every correspondence and every coupling. Integer
/// margins make some optimal coupling integral, so integer tables suffice.
pub fn exact_ghp(x: &SmallSpace, y: &SmallSpace) -> f64 {
    assert_eq!(x.total(), y.total());
    let (nx, ny) = (x.len(), y.len());
    let cells = nx * ny;
    assert!(cells <= 16);
    let total = x.total() as f64;
    let tables = integer_tables(&x.mass, &y.mass);
    let root_bit = 1u32 << (x.root * ny + y.root);
    let mut best = f64::INFINITY;
    for mask in 0u32..(1 << cells) {
        if mask & root_bit == 0 {
            continue;
        }
        let covers_x = (0..nx).all(|i| (0..ny).any(|j| mask >> (i * ny + j) & 1 == 1));
        let covers_y = (0..ny).all(|j| (0..nx).any(|i| mask >> (i * ny + j) & 1 == 1));
        if !covers_x || !covers_y {
            continue;
        }
        let pairs: Vec<(usize, usize)> = (0..cells).filter(|&k| mask >> k & 1 == 1).map(|k| (k / ny, k % ny)).collect();
        let mut dis = 0.0f64;
        for &(a, b) in &pairs {
            for &(c, d) in &pairs {
                dis = dis.max((x.dist[a][c] - y.dist[b][d]).abs());
            }
        }
        let outside = tables
            .iter()
            .map(|t| (0..cells).filter(|&k| mask >> k & 1 == 0).map(|k| t[k]).sum::<u32>())
            .min()
            .unwrap();
        best = best.min(dis / 2.0 + outside as f64 / total);
    }
    best
}

/// Exact draw of `L_1 - 2 min_{[0,1]} L` for `L = W / 2`: given `W_1 = w`,
/// the bridge minimum is below `m <= min(0, w)` with probability
/// `exp(-2 m (m - w))`.
pub fn brownian_root_distance(rng: &mut ChaCha8Rng) -> f64 {
    let w: f64 = StandardNormal.sample(rng);
    let u: f64 = 1.0 - rng.random::<f64>();
    let m = (w - (w * w - 2.0 * u.ln()).sqrt()) / 2.0;
    (w - 2.0 * m) / 2.0
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Normal form by leftmost rewriting with `aA = bB = aF = bF = ∅`,
/// `aB = Ba`, `bA = Ab`.
pub fn naive_reduce(word: &str) -> String {
    let mut w: Vec<char> = word.chars().collect();
    'outer: loop {
        for i in 0..w.len().saturating_sub(1) {
            let repl: Option<&[char]> = match (w[i], w[i + 1]) {
                ('a', 'A') | ('b', 'B') | ('a', 'F') | ('b', 'F') => Some(&[]),
                ('a', 'B') => Some(&['B', 'a']),
                ('b', 'A') => Some(&['A', 'b']),
                _ => None,
            };
            if let Some(r) = repl {
                w.splice(i..i + 2, r.iter().copied());
                continue 'outer;
            }
        }
        return w.into_iter().collect();
    }
}

pub fn all_words(len: usize) -> Vec<String> {
    let mut words = vec![String::new()];
    for _ in 0..len {
        words = words.iter().flat_map(|w| "abABF".chars().map(move |c| format!("{w}{c}"))).collect();
    }
    words
}
