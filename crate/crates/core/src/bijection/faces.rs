use super::arcs::{ArcDiagram, Side};
use crate::unionfind::UnionFind;

/// Faces of the arc diagram, as classes of axis segments.
///
/// Segment `k` is the gap just left of the letter at offset `k`, so a window
/// of `len` letters has segments `0..=len`. In a closed diagram segment
/// `len` is glued to segment `0`. The upper class of segment `k` is the red
/// vertex `V` of the Tutte edge crossing it, the lower class the blue `V*`.
#[derive(Clone, Debug)]
pub struct FaceClasses {
    pub upper: Vec<u32>,
    pub lower: Vec<u32>,
    pub num_upper: u32,
    pub num_lower: u32,
    /// Classes whose face may continue outside the window.
    pub upper_dirty: Vec<bool>,
    pub lower_dirty: Vec<bool>,
}

impl FaceClasses {
    pub fn num_segments(&self) -> usize {
        self.upper.len()
    }
}

pub fn build_face_classes(d: &ArcDiagram) -> FaceClasses {
    let n = d.len();
    let mut up = UnionFind::new(n + 1);
    let mut down = UnionFind::new(n + 1);
    // crossing a letter keeps the face unless an arc on that side starts or
    // ends there; an F with unknown side blocks both
    for k in 0..n {
        match d.side[k] {
            Some(Side::Upper) => {
                down.union(k as u32, k as u32 + 1);
            }
            Some(Side::Lower) => {
                up.union(k as u32, k as u32 + 1);
            }
            None => {}
        }
    }
    for a in &d.arcs {
        let uf = match a.side {
            Side::Upper => &mut up,
            Side::Lower => &mut down,
        };
        uf.union(a.start, a.end + 1);
    }
    if d.closed {
        up.union(0, n as u32);
        down.union(0, n as u32);
    }
    let (upper, num_upper) = up.dense_labels();
    let (lower, num_lower) = down.dense_labels();
    let mut upper_dirty = vec![false; num_upper as usize];
    let mut lower_dirty = vec![false; num_lower as usize];
    if !d.closed {
        for k in [0, n] {
            upper_dirty[upper[k] as usize] = true;
            lower_dirty[lower[k] as usize] = true;
        }
    }
    // an unmatched letter also leaves its quadrangle, and so an edge of
    // `V(k)` and of `V*(k)`, outside the window
    for &k in &d.unresolved {
        let k = k as usize;
        for seg in [k, k + 1] {
            upper_dirty[upper[seg] as usize] = true;
            lower_dirty[lower[seg] as usize] = true;
        }
    }
    FaceClasses { upper, lower, num_upper, num_lower, upper_dirty, lower_dirty }
}
