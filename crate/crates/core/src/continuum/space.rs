use petgraph::algo::dinics;
use petgraph::graph::{DiGraph, NodeIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

const TOL: f64 = 1e-9;

/// Finite pointed metric-measure space with a dense distance matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricMeasureSpace {
    n: usize,
    dist: Vec<f64>,
    mass: Vec<f64>,
    root: usize,
}

impl MetricMeasureSpace {
    pub fn new(dist: Vec<f64>, mass: Vec<f64>, root: usize) -> Result<Self> {
        let n = mass.len();
        if n == 0 || dist.len() != n * n || root >= n {
            return Err(Error::Parameter(format!("{} distances for {n} points with root {root}", dist.len())));
        }
        if mass.iter().any(|&m| !(m >= 0.0) || !m.is_finite()) {
            return Err(Error::Parameter("masses must be finite and nonnegative".into()));
        }
        let d = |i: usize, j: usize| dist[i * n + j];
        let scale = dist.iter().fold(1.0f64, |a, &b| a.max(b.abs()));
        for i in 0..n {
            if d(i, i) != 0.0 {
                return Err(Error::Parameter(format!("d({i},{i}) = {}", d(i, i))));
            }
            for j in 0..n {
                if !(d(i, j) >= 0.0) || (d(i, j) - d(j, i)).abs() > TOL * scale {
                    return Err(Error::Parameter(format!("d({i},{j}) is negative or asymmetric")));
                }
                for k in 0..n {
                    if d(i, k) > d(i, j) + d(j, k) + TOL * scale {
                        return Err(Error::Parameter(format!("triangle inequality fails at ({i},{j},{k})")));
                    }
                }
            }
        }
        Ok(MetricMeasureSpace { n, dist, mass, root })
    }

    pub fn from_fn(n: usize, d: impl Fn(usize, usize) -> f64, mass: Vec<f64>, root: usize) -> Result<Self> {
        let dist = (0..n * n).map(|k| d(k / n, k % n)).collect();
        Self::new(dist, mass, root)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.n + j]
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    pub fn total_mass(&self) -> f64 {
        self.mass.iter().sum()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn diameter(&self) -> f64 {
        self.dist.iter().copied().fold(0.0, f64::max)
    }

    /// Closed ball of radius `r` around the root with the restricted measure.
    pub fn ball(&self, r: f64) -> MetricMeasureSpace {
        let keep: Vec<usize> = (0..self.n).filter(|&i| self.d(self.root, i) <= r).collect();
        let root = keep.iter().position(|&i| i == self.root).unwrap();
        let m = keep.len();
        MetricMeasureSpace {
            n: m,
            dist: (0..m * m).map(|k| self.d(keep[k / m], keep[k % m])).collect(),
            mass: keep.iter().map(|&i| self.mass[i]).collect(),
            root,
        }
    }

    /// Prokhorov distance between this space's measure and `other` on the
    /// same points.
    ///
    /// For finite spaces `d_P <= e` exactly when some sub-coupling moves at
    /// least `max(total masses) - e` of mass over distances at most `e`.
    pub fn prokhorov_to(&self, other: &[f64]) -> Result<f64> {
        if other.len() != self.n {
            return Err(Error::Parameter(format!("{} masses for {} points", other.len(), self.n)));
        }
        let m = self.total_mass().max(other.iter().sum());
        let mut levels: Vec<f64> = self.dist.clone();
        levels.push(0.0);
        levels.sort_by(f64::total_cmp);
        levels.dedup();
        let value = |k: usize| {
            let e = levels[k];
            let flow = max_transport(&self.mass, other, |i, j| self.d(i, j) <= e);
            e.max(m - flow)
        };
        // levels increase while m - flow decreases; the minimum of the max
        // sits at the crossing
        let (mut lo, mut hi) = (0usize, levels.len() - 1);
        while lo < hi {
            let mid = (lo + hi) / 2;
            let flow = max_transport(&self.mass, other, |i, j| self.d(i, j) <= levels[mid]);
            if levels[mid] >= m - flow {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        let mut best = value(lo);
        if lo > 0 {
            best = best.min(value(lo - 1));
        }
        Ok(best.max(0.0))
    }
}

/// Relation between two finite pointed spaces, stored densely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correspondence {
    nx: usize,
    ny: usize,
    pairs: Vec<bool>,
}

impl Correspondence {
    pub fn new(nx: usize, ny: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut c = Correspondence { nx, ny, pairs: vec![false; nx * ny] };
        for (i, j) in pairs {
            c.insert(i, j);
        }
        c
    }

    pub fn identity(n: usize) -> Self {
        Self::new(n, n, (0..n).map(|i| (i, i)))
    }

    pub fn insert(&mut self, i: usize, j: usize) {
        self.pairs[i * self.ny + j] = true;
    }

    pub fn remove(&mut self, i: usize, j: usize) {
        self.pairs[i * self.ny + j] = false;
    }

    #[inline]
    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.pairs[i * self.ny + j]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.nx * self.ny).filter(|&k| self.pairs[k]).map(|k| (k / self.ny, k % self.ny))
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.ny, self.nx, self.pairs().map(|(i, j)| (j, i)))
    }

    /// Every point appears in some pair and the roots are paired.
    pub fn is_valid_for(&self, x: &MetricMeasureSpace, y: &MetricMeasureSpace) -> bool {
        self.nx == x.len()
            && self.ny == y.len()
            && self.contains(x.root(), y.root())
            && (0..self.nx).all(|i| (0..self.ny).any(|j| self.contains(i, j)))
            && (0..self.ny).all(|j| (0..self.nx).any(|i| self.contains(i, j)))
    }

    pub fn distortion(&self, x: &MetricMeasureSpace, y: &MetricMeasureSpace) -> f64 {
        let p: Vec<(usize, usize)> = self.pairs().collect();
        let mut dis = 0.0f64;
        for (k, &(a, b)) in p.iter().enumerate() {
            for &(c, e) in &p[k + 1..] {
                dis = dis.max((x.d(a, c) - y.d(b, e)).abs());
            }
        }
        dis
    }
}

/// Measure on `X x Y`, stored densely.
#[derive(Clone, Debug, PartialEq)]
pub struct Coupling {
    nx: usize,
    ny: usize,
    weight: Vec<f64>,
}

impl Coupling {
    pub fn new(nx: usize, ny: usize, weight: Vec<f64>) -> Result<Self> {
        if weight.len() != nx * ny || weight.iter().any(|&w| !(w >= 0.0)) {
            return Err(Error::Parameter("coupling weights must be nonnegative, one per pair".into()));
        }
        Ok(Coupling { nx, ny, weight })
    }

    /// Mass on the pairs `(i, i)`, for a space coupled with itself.
    pub fn diagonal(mass: &[f64]) -> Self {
        let n = mass.len();
        let mut weight = vec![0.0; n * n];
        for (i, &m) in mass.iter().enumerate() {
            weight[i * n + i] = m;
        }
        Coupling { nx: n, ny: n, weight }
    }

    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.weight[i * self.ny + j]
    }

    pub fn transpose(&self) -> Self {
        let weight = (0..self.nx * self.ny).map(|k| self.weight(k % self.nx, k / self.nx)).collect();
        Coupling { nx: self.ny, ny: self.nx, weight }
    }

    pub fn marginals(&self) -> (Vec<f64>, Vec<f64>) {
        let mut mx = vec![0.0; self.nx];
        let mut my = vec![0.0; self.ny];
        for i in 0..self.nx {
            for j in 0..self.ny {
                mx[i] += self.weight(i, j);
                my[j] += self.weight(i, j);
            }
        }
        (mx, my)
    }

    pub fn outside(&self, r: &Correspondence) -> f64 {
        let mut s = 0.0;
        for i in 0..self.nx {
            for j in 0..self.ny {
                if !r.contains(i, j) {
                    s += self.weight(i, j);
                }
            }
        }
        s
    }
}

/// Value of the distortion bound for one correspondence and coupling.
#[derive(Clone, Debug, PartialEq)]
pub struct GhpBound {
    pub value: f64,
    pub distortion: f64,
    pub outside_mass: f64,
    pub correspondence: Correspondence,
}

fn check_masses(x: &MetricMeasureSpace, y: &MetricMeasureSpace) -> Result<()> {
    let (a, b) = (x.total_mass(), y.total_mass());
    if (a - b).abs() > TOL * a.max(b).max(1.0) {
        return Err(Error::MassMismatch(a, b));
    }
    Ok(())
}

/// `dis(R) / 2 + nu(R^c)`.
pub fn ghp_upper_bound(
    x: &MetricMeasureSpace,
    y: &MetricMeasureSpace,
    r: &Correspondence,
    nu: &Coupling,
) -> Result<f64> {
    check_masses(x, y)?;
    if !r.is_valid_for(x, y) {
        return Err(Error::Parameter("correspondence must cover both spaces and pair the roots".into()));
    }
    if nu.nx != x.len() || nu.ny != y.len() {
        return Err(Error::Parameter("coupling has the wrong shape".into()));
    }
    let (mx, my) = nu.marginals();
    let scale = x.total_mass().max(1.0);
    let off = |a: &[f64], b: &[f64]| a.iter().zip(b).any(|(u, v)| (u - v).abs() > 1e-7 * scale);
    if off(&mx, x.mass()) || off(&my, y.mass()) {
        return Err(Error::Parameter("coupling marginals differ from the measures".into()));
    }
    Ok(r.distortion(x, y) / 2.0 + nu.outside(r))
}

// Capacities are quantized to integers so the flow is exact; the unit is
// 2^-40 of the larger total mass.
fn max_transport(mx: &[f64], my: &[f64], allowed: impl Fn(usize, usize) -> bool) -> f64 {
    max_transport_plan(mx, my, allowed).0
}

fn max_transport_plan(mx: &[f64], my: &[f64], allowed: impl Fn(usize, usize) -> bool) -> (f64, Vec<(usize, usize, f64)>) {
    let total = mx.iter().sum::<f64>().max(my.iter().sum::<f64>());
    if total <= 0.0 {
        return (0.0, Vec::new());
    }
    let unit = total / (1u64 << 40) as f64;
    let q = |m: f64| (m / unit).round() as u64;
    let mut g: DiGraph<(), u64> = DiGraph::new();
    let s = g.add_node(());
    let t = g.add_node(());
    let xs: Vec<NodeIndex> = mx.iter().map(|_| g.add_node(())).collect();
    let ys: Vec<NodeIndex> = my.iter().map(|_| g.add_node(())).collect();
    for (i, &m) in mx.iter().enumerate() {
        g.add_edge(s, xs[i], q(m));
    }
    for (j, &m) in my.iter().enumerate() {
        g.add_edge(ys[j], t, q(m));
    }
    let mut pair_edges = Vec::new();
    for i in 0..mx.len() {
        for j in 0..my.len() {
            if allowed(i, j) {
                let e = g.add_edge(xs[i], ys[j], u64::MAX / 4);
                pair_edges.push((i, j, e.index()));
            }
        }
    }
    let (flow, flows) = dinics(&g, s, t);
    let plan = pair_edges
        .into_iter()
        .filter(|&(_, _, e)| flows[e] > 0)
        .map(|(i, j, e)| (i, j, flows[e] as f64 * unit))
        .collect();
    (flow as f64 * unit, plan)
}

/// Coupling of the two measures putting as much mass as possible on `r`.
pub fn best_coupling(x: &MetricMeasureSpace, y: &MetricMeasureSpace, r: &Correspondence) -> Result<Coupling> {
    check_masses(x, y)?;
    let (_, plan) = max_transport_plan(x.mass(), y.mass(), |i, j| r.contains(i, j));
    let (nx, ny) = (x.len(), y.len());
    let mut weight = vec![0.0; nx * ny];
    let mut rx = x.mass().to_vec();
    let mut ry = y.mass().to_vec();
    for (i, j, w) in plan {
        weight[i * ny + j] += w;
        rx[i] -= w;
        ry[j] -= w;
    }
    // spread what is left anywhere, north-west corner style
    let (mut i, mut j) = (0, 0);
    while i < nx && j < ny {
        let w = rx[i].min(ry[j]).max(0.0);
        weight[i * ny + j] += w;
        rx[i] -= w;
        ry[j] -= w;
        if rx[i] <= ry[j] {
            i += 1;
        } else {
            j += 1;
        }
    }
    Coupling::new(nx, ny, weight)
}

/// Bound for `r` with its best coupling.
pub fn evaluate_correspondence(x: &MetricMeasureSpace, y: &MetricMeasureSpace, r: &Correspondence) -> Result<GhpBound> {
    check_masses(x, y)?;
    let moved = max_transport(x.mass(), y.mass(), |i, j| r.contains(i, j));
    let outside_mass = (x.total_mass() - moved).max(0.0);
    let distortion = r.distortion(x, y);
    Ok(GhpBound { value: distortion / 2.0 + outside_mass, distortion, outside_mass, correspondence: r.clone() })
}

fn cover(r: &mut Correspondence, x: &MetricMeasureSpace, y: &MetricMeasureSpace, rng: &mut ChaCha8Rng) {
    r.insert(x.root(), y.root());
    for i in 0..x.len() {
        if !(0..y.len()).any(|j| r.contains(i, j)) {
            r.insert(i, rng.random_range(0..y.len()));
        }
    }
    for j in 0..y.len() {
        if !(0..x.len()).any(|i| r.contains(i, j)) {
            r.insert(rng.random_range(0..x.len()), j);
        }
    }
}

/// Smallest bound found over root-distance threshold correspondences and
/// `trials` random ones, each of the ten best then improved by local search.
pub fn optimize_ghp_bound(x: &MetricMeasureSpace, y: &MetricMeasureSpace, trials: usize, seed: u64) -> Result<GhpBound> {
    check_masses(x, y)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (nx, ny) = (x.len(), y.len());
    let gap = |i: usize, j: usize| (x.d(x.root(), i) - y.d(y.root(), j)).abs();
    let mut thresholds: Vec<f64> = (0..nx * ny).map(|k| gap(k / ny, k % ny)).collect();
    thresholds.sort_by(f64::total_cmp);
    thresholds.dedup();

    let mut pool: Vec<GhpBound> = Vec::new();
    for &th in &thresholds {
        let mut r = Correspondence::new(nx, ny, (0..nx * ny).map(|k| (k / ny, k % ny)).filter(|&(i, j)| gap(i, j) <= th));
        cover(&mut r, x, y, &mut rng);
        pool.push(evaluate_correspondence(x, y, &r)?);
    }
    for _ in 0..trials {
        let density: f64 = rng.random();
        let mut r = Correspondence::new(nx, ny, []);
        for i in 0..nx {
            for j in 0..ny {
                if rng.random::<f64>() < density {
                    r.insert(i, j);
                }
            }
        }
        cover(&mut r, x, y, &mut rng);
        pool.push(evaluate_correspondence(x, y, &r)?);
    }
    pool.sort_by(|a, b| a.value.total_cmp(&b.value));
    pool.dedup_by(|a, b| a.correspondence == b.correspondence);
    let cells = nx * ny;
    if cells > 400 {
        return Ok(pool.swap_remove(0));
    }
    // local search over one- and, on small grids, two-cell flips
    let moves: Vec<Vec<usize>> = if cells <= 25 {
        (0..cells).flat_map(|a| (a..cells).map(move |b| if a == b { vec![a] } else { vec![a, b] })).collect()
    } else {
        (0..cells).map(|a| vec![a]).collect()
    };
    let mut best: Option<GhpBound> = None;
    for start in pool.into_iter().take(10) {
        let mut cur = start;
        loop {
            let mut improved = false;
            for m in &moves {
                let mut r = cur.correspondence.clone();
                for &k in m {
                    let (i, j) = (k / ny, k % ny);
                    if r.contains(i, j) {
                        r.remove(i, j);
                    } else {
                        r.insert(i, j);
                    }
                }
                if !r.is_valid_for(x, y) {
                    continue;
                }
                let b = evaluate_correspondence(x, y, &r)?;
                if b.value < cur.value - 1e-12 {
                    cur = b;
                    improved = true;
                }
            }
            if !improved {
                break;
            }
        }
        if best.as_ref().is_none_or(|b| cur.value < b.value) {
            best = Some(cur);
        }
    }
    Ok(best.expect("at least one candidate"))
}

/// `|diam X - diam Y| / 2 + |mu_X(X) - mu_Y(Y)|`, below the GHP distance
/// because the Hausdorff and Prokhorov terms bound each part.
pub fn ghp_lower_bound(x: &MetricMeasureSpace, y: &MetricMeasureSpace) -> f64 {
    (x.diameter() - y.diameter()).abs() / 2.0 + (x.total_mass() - y.total_mass()).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize, masses: Vec<f64>) -> MetricMeasureSpace {
        MetricMeasureSpace::from_fn(n, |i, j| (i as f64 - j as f64).abs(), masses, 0).unwrap()
    }

    #[test]
    fn identity_gives_zero() {
        let x = path(4, vec![0.1, 0.2, 0.3, 0.4]);
        let r = Correspondence::identity(4);
        let nu = Coupling::diagonal(x.mass());
        assert_eq!(ghp_upper_bound(&x, &x, &r, &nu).unwrap(), 0.0);
        assert_eq!(optimize_ghp_bound(&x, &x, 10, 1).unwrap().value, 0.0);
    }

    #[test]
    fn one_point_spaces() {
        let x = path(1, vec![2.0]);
        let r = Correspondence::identity(1);
        assert_eq!(ghp_upper_bound(&x, &x, &r, &Coupling::diagonal(&[2.0])).unwrap(), 0.0);
    }

    #[test]
    fn mass_mismatch_is_refused() {
        let x = path(2, vec![0.5, 0.5]);
        let y = path(2, vec![0.5, 0.6]);
        let r = Correspondence::identity(2);
        assert!(matches!(ghp_upper_bound(&x, &y, &r, &Coupling::diagonal(x.mass())), Err(Error::MassMismatch(..))));
    }

    #[test]
    fn rejects_non_metrics() {
        let d = vec![0.0, 1.0, 5.0, 1.0, 0.0, 1.0, 5.0, 1.0, 0.0];
        assert!(MetricMeasureSpace::new(d, vec![1.0; 3], 0).is_err());
    }

    #[test]
    fn symmetric_under_swap() {
        let x = path(3, vec![0.2, 0.3, 0.5]);
        let y = MetricMeasureSpace::from_fn(3, |i, j| if i == j { 0.0 } else { 1.5 }, vec![0.5, 0.25, 0.25], 0).unwrap();
        let r = Correspondence::new(3, 3, [(0, 0), (1, 1), (2, 2), (2, 1)]);
        let nu = best_coupling(&x, &y, &r).unwrap();
        let a = ghp_upper_bound(&x, &y, &r, &nu).unwrap();
        let b = ghp_upper_bound(&y, &x, &r.transpose(), &nu.transpose()).unwrap();
        assert!((a - b).abs() < 1e-12);
        assert!(ghp_lower_bound(&x, &y) <= a);
    }

    #[test]
    fn best_coupling_has_the_right_marginals() {
        let x = path(3, vec![0.2, 0.3, 0.5]);
        let y = path(3, vec![0.6, 0.3, 0.1]);
        let r = Correspondence::new(3, 3, [(0, 0), (1, 1), (2, 2)]);
        let nu = best_coupling(&x, &y, &r).unwrap();
        let (mx, my) = nu.marginals();
        for (a, b) in mx.iter().zip(x.mass()).chain(my.iter().zip(y.mass())) {
            assert!((a - b).abs() < 1e-9);
        }
        // diagonal can hold min(0.2,0.6) + 0.3 + min(0.5,0.1)
        assert!((nu.outside(&r) - 0.4).abs() < 1e-9);
    }

    #[test]
    fn prokhorov_of_a_point_shift() {
        // unit mass at 0 against unit mass at 1 on a path of spacing 0.3
        let x = MetricMeasureSpace::from_fn(2, |i, j| if i == j { 0.0 } else { 0.3 }, vec![1.0, 0.0], 0).unwrap();
        assert!((x.prokhorov_to(&[0.0, 1.0]).unwrap() - 0.3).abs() < 1e-9);
        // spacing 2 makes moving nothing cheaper: pay the whole mass
        let y = MetricMeasureSpace::from_fn(2, |i, j| if i == j { 0.0 } else { 2.0 }, vec![1.0, 0.0], 0).unwrap();
        assert!((y.prokhorov_to(&[0.0, 1.0]).unwrap() - 1.0).abs() < 1e-9);
        assert_eq!(y.prokhorov_to(&[1.0, 0.0]).unwrap(), 0.0);
    }

    #[test]
    fn ball_restricts_points_and_mass() {
        let x = path(5, vec![1.0; 5]);
        let b = x.ball(2.0);
        assert_eq!(b.len(), 3);
        assert_eq!(b.total_mass(), 3.0);
        assert_eq!(b.diameter(), 2.0);
    }
}
