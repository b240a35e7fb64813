use std::collections::VecDeque;

use super::map::DecoratedMap;
use crate::error::{Error, Result};

/// Rotation system of the Tutte quadrangulation of a closed map, on darts.
///
/// Dart `2k` is the red end of the Tutte edge of segment `k` and `2k + 1`
/// the blue end. Around a red vertex the Tutte edges appear counterclockwise
/// in increasing segment order; around a blue vertex, decreasing.
#[derive(Clone, Debug)]
pub struct Rotation {
    /// Next dart counterclockwise around the same vertex.
    pub sigma: Vec<u32>,
    /// Quadrangle (edge index) in the corner after each dart.
    pub corner: Vec<u32>,
}

pub fn rotation_system(map: &DecoratedMap) -> Result<Rotation> {
    if !map.closed {
        return Err(Error::Parameter("rotation system needs a closed map".into()));
    }
    let n = map.len();
    let mut sigma = vec![0u32; 2 * n];
    let mut corner = vec![0u32; 2 * n];
    let mut first_red = vec![u32::MAX; map.num_vertices()];
    let mut last_red = vec![u32::MAX; map.num_vertices()];
    let mut first_blue = vec![u32::MAX; map.num_dual_vertices()];
    let mut last_blue = vec![u32::MAX; map.num_dual_vertices()];
    for k in 0..n {
        let (r, b) = map.tutte_edge(k);
        let (r, b) = (r as usize, b as usize);
        if last_red[r] == u32::MAX {
            first_red[r] = k as u32;
        } else {
            sigma[2 * last_red[r] as usize] = 2 * k as u32;
        }
        last_red[r] = k as u32;
        if last_blue[b] == u32::MAX {
            first_blue[b] = k as u32;
        } else {
            sigma[2 * k + 1] = 2 * last_blue[b] + 1;
        }
        last_blue[b] = k as u32;
        corner[2 * k] = map.edge_of_letter[k];
        corner[2 * k + 1] = map.edge_of_letter[(k + n - 1) % n];
    }
    for r in 0..first_red.len() {
        sigma[2 * last_red[r] as usize] = 2 * first_red[r];
    }
    for b in 0..first_blue.len() {
        sigma[2 * first_blue[b] as usize + 1] = 2 * last_blue[b] + 1;
    }
    Ok(Rotation { sigma, corner })
}

/// Canonical code of the rooted decorated map: darts relabelled by
/// breadth-first search from the root dart (red end of `E(0)`), then for
/// each dart its rotation successor, opposite dart, colour and whether the
/// quadrangle in its corner has its primal diagonal in `G`.
///
/// Two closed maps get the same code exactly when they are isomorphic as
/// rooted maps with the same `G`.
pub fn canonical_code(map: &DecoratedMap) -> Result<Vec<u32>> {
    let rot = rotation_system(map)?;
    let darts = rot.sigma.len();
    if darts == 0 {
        return Ok(Vec::new());
    }
    let mut label = vec![u32::MAX; darts];
    let mut order = Vec::with_capacity(darts);
    let mut queue = VecDeque::new();
    label[0] = 0;
    order.push(0u32);
    queue.push_back(0u32);
    while let Some(d) = queue.pop_front() {
        for next in [rot.sigma[d as usize], d ^ 1] {
            if label[next as usize] == u32::MAX {
                label[next as usize] = order.len() as u32;
                order.push(next);
                queue.push_back(next);
            }
        }
    }
    let mut code = Vec::with_capacity(4 * darts);
    for &d in &order {
        let e = &map.edges[rot.corner[d as usize] as usize];
        code.push(label[rot.sigma[d as usize] as usize]);
        code.push(label[(d ^ 1) as usize]);
        code.push(d & 1);
        code.push(e.in_g() as u32);
    }
    Ok(code)
}
