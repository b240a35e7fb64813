use crate::bijection::DecoratedMap;
use crate::word::Letter;

const NONE: u32 = u32::MAX;

/// An FK loop as the cyclic list of Tutte edges it crosses, named by the
/// offset of their segment in the map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Loop {
    pub segments: Vec<u32>,
    /// False when the loop runs into an unmatched letter and leaves the window.
    pub closed: bool,
    /// Order time of the widest `F` whose inner strand the loop follows.
    pub owner: Option<i64>,
}

impl Loop {
    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }
}

/// Strand pairing of Tutte edges: each quadrangle joins its four Tutte edges
/// in two pairs, on the two sides of whichever diagonal survives the flips.
///
/// For a pair `(s, t)` the edges are those of segments `s, s+1, t, t+1`.
/// With the original diagonal the strands are `s ~ s+1` and `t ~ t+1`;
/// after a flip they are `s ~ t+1` and `s+1 ~ t`.
pub fn strand_links(map: &DecoratedMap) -> Vec<[u32; 2]> {
    let n = map.num_tutte_edges();
    let len = map.len() as u32;
    let seg = |k: u32| if map.closed && k == len { 0 } else { k };
    let mut links = vec![[NONE, NONE]; n];
    let mut add = |a: u32, b: u32| {
        for (x, y) in [(a, b), (b, a)] {
            let slot = &mut links[x as usize];
            if slot[0] == NONE {
                slot[0] = y;
            } else {
                slot[1] = y;
            }
        }
    };
    for e in &map.edges {
        let (s, t) = (e.s, e.t);
        if e.flexible {
            add(seg(s), seg(t + 1));
            add(seg(s + 1), seg(t));
        } else {
            add(seg(s), seg(s + 1));
            add(seg(t), seg(t + 1));
        }
    }
    links
}

/// All loops of the map. Loops that hit a letter without a partner in the
/// window come back as open paths with `closed == false`.
pub fn trace_loops(map: &DecoratedMap) -> Vec<Loop> {
    let links = strand_links(map);
    let n = links.len();
    let mut seen = vec![false; n];
    let mut loops = Vec::new();
    // inner strands of flips, keyed by segment s+1
    let mut inner_owner = vec![NONE; n];
    for e in map.edges.iter().filter(|e| e.flexible) {
        inner_owner[e.s as usize + 1] = e.t;
    }
    let span = |t: u32| t - map.partner[t as usize];
    let owner_of = |segs: &[u32]| {
        segs.iter()
            .filter_map(|&k| {
                let t = inner_owner[k as usize];
                (t != NONE && map.letters[t as usize] == Letter::Flexible).then_some(t)
            })
            .max_by_key(|&t| (span(t), std::cmp::Reverse(t)))
            .map(|t| map.lo + t as i64)
    };
    // open paths first, starting from their ends
    for start in 0..n {
        if seen[start] || links[start][1] != NONE {
            continue;
        }
        let segs = walk(&links, &mut seen, start as u32);
        let owner = owner_of(&segs);
        loops.push(Loop { segments: segs, closed: false, owner });
    }
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let segs = walk(&links, &mut seen, start as u32);
        let owner = owner_of(&segs);
        loops.push(Loop { segments: segs, closed: true, owner });
    }
    loops
}

fn walk(links: &[[u32; 2]], seen: &mut [bool], start: u32) -> Vec<u32> {
    let mut segs = vec![start];
    seen[start as usize] = true;
    let mut prev = NONE;
    let mut cur = start;
    loop {
        let [a, b] = links[cur as usize];
        // step along the link we did not arrive by; a doubled link to the
        // same neighbour closes a loop of length two
        let next = if a != prev || (a == b && segs.len() == 1) { a } else { b };
        if next == NONE || seen[next as usize] {
            return segs;
        }
        seen[next as usize] = true;
        segs.push(next);
        prev = cur;
        cur = next;
    }
}
