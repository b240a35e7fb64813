use crate::error::{Error, Result};

use super::tree::{ball_from_distances, FunctionTree};

/// Upper bound on the GHP distance between the closed `radius`-balls of two
/// trees on the same time grid, built from the correspondence that pairs
/// equal times and sends each time in only one ball to the nearest point
/// of the other ball.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TreeGhpBound {
    pub radius: f64,
    /// Bound on the distortion of that correspondence.
    pub distortion: f64,
    /// Lebesgue measure of the times in exactly one of the two balls.
    pub measure_defect: f64,
    pub value: f64,
    /// One of the balls reached the end of the grid.
    pub truncated: bool,
}

/// Integrated bound `int_0^R e^{-r} (1 ^ b(r)) dr + e^{-R}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalGhp {
    pub value: f64,
    pub per_radius: Vec<f64>,
    pub step: f64,
    /// Smallest grid radius at which a ball reached the end of the grid.
    pub truncated_from: Option<f64>,
}

/// Two trees on one grid with their root distances and the running maxima
/// of `|g_a - g_b|` outward from the root.
#[derive(Clone, Debug)]
pub struct TreeComparison<'a> {
    a: &'a FunctionTree,
    b: &'a FunctionTree,
    da: Vec<f64>,
    db: Vec<f64>,
    gap_max: Vec<f64>,
}

impl<'a> TreeComparison<'a> {
    pub fn new(a: &'a FunctionTree, b: &'a FunctionTree) -> Result<Self> {
        if a.len() != b.len() || a.origin() != b.origin() || (a.step() - b.step()).abs() > 1e-12 * a.step() {
            return Err(Error::Grid(format!(
                "grids (step {}, origin {}, {} points) and (step {}, origin {}, {} points) differ",
                a.step(),
                a.origin(),
                a.len(),
                b.step(),
                b.origin(),
                b.len()
            )));
        }
        let o = a.origin();
        let (ga, gb) = (a.values(), b.values());
        let mut gap_max = vec![0.0; a.len()];
        let mut m = 0.0f64;
        for i in o..a.len() {
            m = m.max((ga[i] - gb[i]).abs());
            gap_max[i] = m;
        }
        m = 0.0;
        for i in (0..o).rev() {
            m = m.max((ga[i] - gb[i]).abs());
            gap_max[i] = m;
        }
        Ok(TreeComparison { a, b, da: a.root_distances(), db: b.root_distances(), gap_max })
    }

    pub fn bound(&self, r: f64) -> TreeGhpBound {
        let ia = ball_from_distances(self.a, &self.da, r);
        let ib = ball_from_distances(self.b, &self.db, r);
        let lo = ia.hull.0.min(ib.hull.0);
        let hi = ia.hull.1.max(ib.hull.1);
        // |d_a - d_b| <= 4 sup |g_a - g_b| over the hull of both balls
        let shared = 4.0 * self.gap_max[lo].max(self.gap_max[hi]);
        let (mut spill_a, mut spill_b, mut only) = (0.0f64, 0.0f64, 0usize);
        let (xs, ys) = (&ia.members, &ib.members);
        let (mut i, mut j) = (0, 0);
        while i < xs.len() || j < ys.len() {
            match (xs.get(i), ys.get(j)) {
                (Some(&x), Some(&y)) if x == y => {
                    i += 1;
                    j += 1;
                }
                (Some(&x), y) if y.is_none_or(|&y| x < y) => {
                    // in the a-ball only; nearest b-ball point is d_b - r away
                    spill_a = spill_a.max(self.db[x] - r);
                    only += 1;
                    i += 1;
                }
                (_, Some(&y)) => {
                    spill_b = spill_b.max(self.da[y] - r);
                    only += 1;
                    j += 1;
                }
                _ => unreachable!(),
            }
        }
        let distortion = shared + spill_a.max(0.0) + spill_b.max(0.0);
        let measure_defect = only as f64 * self.a.step();
        TreeGhpBound {
            radius: r,
            distortion,
            measure_defect,
            value: distortion / 2.0 + measure_defect,
            truncated: ia.truncated || ib.truncated,
        }
    }

    /// Local GHP bound on the radius grid `0, step, ..., truncation`. Radii
    /// whose balls are truncated contribute the trivial bound 1.
    pub fn local(&self, step: f64, truncation: f64) -> LocalGhp {
        let k = (truncation / step).round() as usize;
        let mut per_radius = Vec::with_capacity(k + 1);
        let mut truncated_from = None;
        for i in 0..=k {
            let r = i as f64 * step;
            if truncated_from.is_some() {
                per_radius.push(1.0);
                continue;
            }
            let b = self.bound(r);
            if b.truncated {
                truncated_from = Some(r);
                per_radius.push(1.0);
            } else {
                per_radius.push(b.value);
            }
        }
        LocalGhp { value: local_ghp(&per_radius, step), per_radius, step, truncated_from }
    }
}

pub fn ghp_tree_bound(a: &FunctionTree, b: &FunctionTree, r: f64) -> Result<TreeGhpBound> {
    Ok(TreeComparison::new(a, b)?.bound(r))
}

/// Trapezoid rule for `int_0^R e^{-r} (1 ^ b(r)) dr` with `b` given at
/// `r = k * step`, plus the tail `e^{-R}`.
pub fn local_ghp(per_radius: &[f64], step: f64) -> f64 {
    if per_radius.is_empty() {
        return 1.0;
    }
    let f = |k: usize| (-(k as f64) * step).exp() * per_radius[k].clamp(0.0, 1.0);
    let body: f64 = (0..per_radius.len() - 1).map(|k| 0.5 * (f(k) + f(k + 1)) * step).sum();
    let r_max = (per_radius.len() - 1) as f64 * step;
    body + (-r_max).exp()
}
