use serde::{Deserialize, Serialize};

use super::arcs::{build_arc_diagram, ArcDiagram, Side};
use super::faces::{build_face_classes, FaceClasses};
use crate::error::Result;
use crate::word::{Burger, Letter, WordSlice, UNMATCHED};

/// One matched pair, which is one quadrangle of the Tutte quadrangulation
/// and one edge of `M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MapEdge {
    /// Offset of the burger.
    pub s: u32,
    /// Offset of the order.
    pub t: u32,
    /// `V(s)` and `V(t)`: the primal diagonal, an edge of `M`.
    pub u: u32,
    pub v: u32,
    /// `V*(s)` and `V*(t)`: the dual diagonal.
    pub du: u32,
    pub dv: u32,
    pub kind: Burger,
    pub flexible: bool,
}

impl MapEdge {
    /// Red before the flips: the edge belongs to the canonical tree `T`.
    pub fn in_tree(&self) -> bool {
        self.kind == Burger::Hamburger
    }

    /// Whether the primal diagonal is in `G` after the flips.
    pub fn in_g(&self) -> bool {
        (self.kind == Burger::Hamburger) != self.flexible
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Diagonal {
    Primal,
    Dual,
}

/// The diagonal swap made for one `F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipRecord {
    pub order_time: i64,
    pub burger_time: i64,
    pub edge: u32,
    pub removed: Diagonal,
    pub inserted: Diagonal,
}

/// Which edges a graph query runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeSet {
    /// All primal diagonals.
    Map,
    /// Primal diagonals of hamburger pairs.
    Tree,
    /// Primal diagonals present after the flips.
    Cluster,
}

impl EdgeSet {
    #[inline]
    pub fn contains(self, e: &MapEdge) -> bool {
        match self {
            EdgeSet::Map => true,
            EdgeSet::Tree => e.in_tree(),
            EdgeSet::Cluster => e.in_g(),
        }
    }
}

/// The decorated map `(M, G)` with its tree `T`, Tutte edges and root, built
/// from a word window.
///
/// Vertex ids are the dense upper face classes; dual vertex ids the lower
/// ones. Offsets are relative to `lo`.
#[derive(Clone, Debug)]
pub struct DecoratedMap {
    pub lo: i64,
    pub closed: bool,
    pub letters: Vec<Letter>,
    pub partner: Vec<u32>,
    pub faces: FaceClasses,
    pub edges: Vec<MapEdge>,
    /// Edge index of the pair each letter belongs to.
    pub edge_of_letter: Vec<u32>,
    pub flips: Vec<FlipRecord>,
    adj_start: Vec<u32>,
    adj: Vec<(u32, u32)>,
}

impl DecoratedMap {
    pub fn num_vertices(&self) -> usize {
        self.faces.num_upper as usize
    }

    pub fn num_dual_vertices(&self) -> usize {
        self.faces.num_lower as usize
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
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

    /// Number of Tutte edges: one per segment, with the glued pair counted once.
    pub fn num_tutte_edges(&self) -> usize {
        if self.closed {
            self.letters.len()
        } else {
            self.letters.len() + 1
        }
    }

    /// Segment offset of the Tutte edge `E(t)`, which crosses `[t - 1, t]`.
    pub fn segment_of_time(&self, t: i64) -> Option<usize> {
        let k = t - self.lo;
        if k < 0 || k > self.letters.len() as i64 {
            return None;
        }
        let k = k as usize;
        Some(if self.closed && k == self.letters.len() { 0 } else { k })
    }

    /// `V(t)`.
    pub fn vertex_at(&self, t: i64) -> Option<u32> {
        self.segment_of_time(t).map(|k| self.faces.upper[k])
    }

    /// `V*(t)`.
    pub fn dual_vertex_at(&self, t: i64) -> Option<u32> {
        self.segment_of_time(t).map(|k| self.faces.lower[k])
    }

    /// Root vertex `V(0)` when time 0 lies in the window. For a finite word
    /// this is the vertex of the first segment.
    pub fn root(&self) -> Option<u32> {
        if self.lo == 0 {
            Some(self.faces.upper[0])
        } else {
            self.vertex_at(0)
        }
    }

    /// Tutte edge of segment `k` as `(red, blue)`.
    pub fn tutte_edge(&self, k: usize) -> (u32, u32) {
        (self.faces.upper[k], self.faces.lower[k])
    }

    pub fn is_dirty(&self, v: u32) -> bool {
        self.faces.upper_dirty[v as usize]
    }

    pub fn is_dual_dirty(&self, v: u32) -> bool {
        self.faces.lower_dirty[v as usize]
    }

    /// Neighbours in `M` as `(vertex, edge index)`; loops appear twice.
    #[inline]
    pub fn neighbors(&self, v: u32) -> &[(u32, u32)] {
        let a = self.adj_start[v as usize] as usize;
        let b = self.adj_start[v as usize + 1] as usize;
        &self.adj[a..b]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.neighbors(v).len()
    }

    /// Number of connected components of the given primal edge set.
    pub fn primal_components(&self, set: EdgeSet) -> usize {
        let mut uf = crate::unionfind::UnionFind::new(self.num_vertices());
        for e in self.edges.iter().filter(|e| set.contains(e)) {
            uf.union(e.u, e.v);
        }
        uf.count_sets()
    }

    /// Number of connected components of `G*`, the dual diagonals of the
    /// pairs whose primal diagonal is not in `G`.
    pub fn dual_cluster_components(&self) -> usize {
        let mut uf = crate::unionfind::UnionFind::new(self.num_dual_vertices());
        for e in self.edges.iter().filter(|e| !e.in_g()) {
            uf.union(e.du, e.dv);
        }
        uf.count_sets()
    }

    /// Number of letters of each kind, in the order `a, b, A, B, F`.
    pub fn letter_counts(&self) -> [usize; 5] {
        let mut c = [0; 5];
        for &l in &self.letters {
            c[l as usize] += 1;
        }
        c
    }
}

/// Runs the three steps: arcs, face classes, then the map with flips applied.
pub fn build_decorated_map(slice: &WordSlice, closed: bool) -> Result<DecoratedMap> {
    let diagram = build_arc_diagram(slice, closed)?;
    let faces = build_face_classes(&diagram);
    Ok(assemble(diagram, faces))
}

/// Finite-volume map of a reducible word.
pub fn build_finite_map(word: &[Letter]) -> Result<DecoratedMap> {
    build_decorated_map(&WordSlice::from_word(word), true)
}

fn assemble(d: ArcDiagram, faces: FaceClasses) -> DecoratedMap {
    let n = d.len();
    let mut edges = Vec::with_capacity(d.arcs.len());
    let mut edge_of_letter = vec![UNMATCHED; n];
    let mut flips = Vec::new();
    for a in &d.arcs {
        let (s, t) = (a.start as usize, a.end as usize);
        let kind = match a.side {
            Side::Upper => Burger::Hamburger,
            Side::Lower => Burger::Cheeseburger,
        };
        let flexible = d.letters[t] == Letter::Flexible;
        let id = edges.len() as u32;
        edges.push(MapEdge {
            s: a.start,
            t: a.end,
            u: faces.upper[s],
            v: faces.upper[t],
            du: faces.lower[s],
            dv: faces.lower[t],
            kind,
            flexible,
        });
        edge_of_letter[s] = id;
        edge_of_letter[t] = id;
        if flexible {
            let (removed, inserted) = match kind {
                Burger::Hamburger => (Diagonal::Primal, Diagonal::Dual),
                Burger::Cheeseburger => (Diagonal::Dual, Diagonal::Primal),
            };
            flips.push(FlipRecord {
                order_time: d.time(a.end),
                burger_time: d.time(a.start),
                edge: id,
                removed,
                inserted,
            });
        }
    }
    let nv = faces.num_upper as usize;
    let mut deg = vec![0u32; nv + 1];
    for e in &edges {
        deg[e.u as usize] += 1;
        deg[e.v as usize] += 1;
    }
    let mut adj_start = vec![0u32; nv + 1];
    for v in 0..nv {
        adj_start[v + 1] = adj_start[v] + deg[v];
    }
    let mut fill = adj_start.clone();
    let mut adj = vec![(0u32, 0u32); adj_start[nv] as usize];
    for (i, e) in edges.iter().enumerate() {
        adj[fill[e.u as usize] as usize] = (e.v, i as u32);
        fill[e.u as usize] += 1;
        adj[fill[e.v as usize] as usize] = (e.u, i as u32);
        fill[e.v as usize] += 1;
    }
    DecoratedMap {
        lo: d.lo,
        closed: d.closed,
        letters: d.letters,
        partner: d.partner,
        faces,
        edges,
        edge_of_letter,
        flips,
        adj_start,
        adj,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unionfind::UnionFind;
    use crate::word::{is_reducible, parse_word, sample_range, ModelParams};

    fn finite(w: &str) -> DecoratedMap {
        build_finite_map(&parse_word(w).unwrap()).unwrap()
    }

    #[test]
    fn single_edge_map() {
        let m = finite("aA");
        assert_eq!(m.num_edges(), 1);
        assert_eq!(m.num_vertices(), 2);
        assert_eq!(m.num_dual_vertices(), 1);
        assert!(m.edges[0].in_tree() && m.edges[0].in_g());
        assert!(m.flips.is_empty());
        let m = finite("bB");
        assert_eq!((m.num_vertices(), m.num_dual_vertices()), (1, 2));
        assert!(!m.edges[0].in_tree());
    }

    #[test]
    fn one_flip_per_f() {
        let m = finite("aF");
        assert_eq!(m.flips.len(), 1);
        assert_eq!(m.flips[0].removed, Diagonal::Primal);
        assert!(!m.edges[0].in_g());
        let m = finite("abFF");
        assert_eq!(m.flips.len(), 2);
    }

    fn reducible_words(len: usize) -> Vec<Vec<Letter>> {
        let mut out = Vec::new();
        let mut cur = vec![Letter::Hamburger; len];
        fn rec(i: usize, cur: &mut Vec<Letter>, out: &mut Vec<Vec<Letter>>) {
            if i == cur.len() {
                if is_reducible(cur) {
                    out.push(cur.clone());
                }
                return;
            }
            for l in Letter::ALL {
                cur[i] = l;
                rec(i + 1, cur, out);
            }
        }
        rec(0, &mut cur, &mut out);
        out
    }

    #[test]
    fn euler_and_tree_on_small_words() {
        for n in 1..=3 {
            for w in reducible_words(2 * n) {
                let m = build_finite_map(&w).unwrap();
                assert_eq!(m.num_edges(), n);
                let euler = m.num_vertices() as i64 - n as i64 + m.num_dual_vertices() as i64;
                assert_eq!(euler, 2);
                // T spans M and has no cycle
                let tree_edges = m.edges.iter().filter(|e| e.in_tree()).count();
                assert_eq!(tree_edges, m.num_vertices() - 1);
                assert_eq!(m.primal_components(EdgeSet::Tree), 1);
                assert_eq!(m.letters.len(), 2 * n);
            }
        }
    }

    #[test]
    fn flipped_diagonal_endpoints_stay_connected() {
        let check = |m: &DecoratedMap| {
            let mut red = UnionFind::new(m.num_vertices());
            let mut blue = UnionFind::new(m.num_dual_vertices());
            for e in m.edges.iter().filter(|e| !e.flexible) {
                match e.kind {
                    Burger::Hamburger => red.union(e.u, e.v),
                    Burger::Cheeseburger => blue.union(e.du, e.dv),
                };
            }
            for f in &m.flips {
                let e = &m.edges[f.edge as usize];
                // the connecting path may use pairs cut by the window edge
                if m.is_dual_dirty(e.du) || m.is_dual_dirty(e.dv) || m.is_dirty(e.u) || m.is_dirty(e.v) {
                    continue;
                }
                match e.kind {
                    Burger::Hamburger => assert!(blue.same(e.du, e.dv)),
                    Burger::Cheeseburger => assert!(red.same(e.u, e.v)),
                }
            }
        };
        for n in 1..=3 {
            for w in reducible_words(2 * n) {
                check(&build_finite_map(&w).unwrap());
            }
        }
        let p = ModelParams::from_p(0.6).unwrap();
        for seed in 0..20 {
            let w = sample_range(seed, 0, 5000, &p);
            check(&build_decorated_map(&WordSlice::from_word(&w), false).unwrap());
        }
    }

    #[test]
    fn degree_equals_fibre_size() {
        let p = ModelParams::from_p(0.6).unwrap();
        let w = sample_range(7, 0, 3000, &p);
        let m = build_decorated_map(&WordSlice::from_word(&w), false).unwrap();
        let mut fibre = vec![0usize; m.num_vertices()];
        for k in 0..m.len() {
            fibre[m.faces.upper[k] as usize] += 1;
        }
        for v in 0..m.num_vertices() as u32 {
            if !m.is_dirty(v) {
                assert_eq!(m.degree(v), fibre[v as usize]);
            }
        }
    }
}
