use crate::error::{Error, Result};
use crate::word::{Burger, Letter, WordSlice, UNMATCHED};

/// Side of the axis an arc is drawn on. Hamburger pairs go above.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Upper,
    Lower,
}

impl Side {
    pub fn of_burger(b: Burger) -> Side {
        match b {
            Burger::Hamburger => Side::Upper,
            Burger::Cheeseburger => Side::Lower,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Arc {
    /// Offset of the burger.
    pub start: u32,
    /// Offset of the order.
    pub end: u32,
    pub side: Side,
}

/// Arcs of a word window, with offsets relative to `lo`.
///
/// A closed diagram comes from a reducible finite word whose two boundary
/// segments are glued, which gives the finite-volume map on the sphere.
#[derive(Clone, Debug)]
pub struct ArcDiagram {
    pub lo: i64,
    pub closed: bool,
    pub letters: Vec<Letter>,
    pub partner: Vec<u32>,
    /// Side of the arc at each letter; `None` only for an `F` whose partner
    /// lies outside the window.
    pub side: Vec<Option<Side>>,
    pub arcs: Vec<Arc>,
    /// Offsets of letters whose partner lies outside the window.
    pub unresolved: Vec<u32>,
}

impl ArcDiagram {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn time(&self, offset: u32) -> i64 {
        self.lo + offset as i64
    }
}

/// One arc per matched pair; letters with no partner in the window are
/// kept as boundary markers.
pub fn build_arc_diagram(slice: &WordSlice, closed: bool) -> Result<ArcDiagram> {
    let n = slice.len();
    if closed && !slice.is_fully_matched() {
        return Err(Error::Parameter("a closed diagram needs a reducible word".into()));
    }
    let mut side = vec![None; n];
    let mut arcs = Vec::new();
    let mut unresolved = Vec::new();
    for i in 0..n {
        let l = slice.letters[i];
        let p = slice.partner[i];
        if p == UNMATCHED {
            unresolved.push(i as u32);
            side[i] = match l {
                Letter::Flexible => None,
                _ => l.kind().map(Side::of_burger),
            };
            continue;
        }
        let burger = if l.is_burger() { l } else { slice.letters[p as usize] };
        let s = Side::of_burger(burger.kind().expect("partner of an order is a burger"));
        side[i] = Some(s);
        if (p as usize) > i {
            arcs.push(Arc { start: i as u32, end: p, side: s });
        }
    }
    Ok(ArcDiagram {
        lo: slice.lo,
        closed,
        letters: slice.letters.clone(),
        partner: slice.partner.clone(),
        side,
        arcs,
        unresolved,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_word;

    fn diagram(w: &str) -> ArcDiagram {
        let word = parse_word(w).unwrap();
        build_arc_diagram(&WordSlice::from_word(&word), false).unwrap()
    }

    #[test]
    fn single_arcs() {
        let d = diagram("aA");
        assert_eq!(d.arcs, vec![Arc { start: 0, end: 1, side: Side::Upper }]);
        let d = diagram("bB");
        assert_eq!(d.arcs, vec![Arc { start: 0, end: 1, side: Side::Lower }]);
    }

    #[test]
    fn nested_pairs_on_both_sides() {
        let d = diagram("abBA");
        assert_eq!(
            d.arcs,
            vec![Arc { start: 0, end: 3, side: Side::Upper }, Arc { start: 1, end: 2, side: Side::Lower }]
        );
    }

    #[test]
    fn flexible_takes_side_of_burger() {
        let d = diagram("baF");
        assert_eq!(d.side, vec![Some(Side::Lower), Some(Side::Upper), Some(Side::Upper)]);
        assert_eq!(d.unresolved, vec![0]);
        let d = diagram("F");
        assert_eq!(d.side, vec![None]);
    }

    #[test]
    fn same_side_arcs_never_cross() {
        let word = crate::word::sample_range(4, 0, 2000, &crate::word::ModelParams::from_p(0.6).unwrap());
        let d = build_arc_diagram(&WordSlice::from_word(&word), false).unwrap();
        for side in [Side::Upper, Side::Lower] {
            let arcs: Vec<_> = d.arcs.iter().filter(|a| a.side == side).collect();
            for x in &arcs {
                for y in &arcs {
                    let crossing = x.start < y.start && y.start < x.end && x.end < y.end;
                    assert!(!crossing, "{x:?} crosses {y:?}");
                }
            }
        }
    }

    #[test]
    fn closed_requires_reducible() {
        let word = parse_word("aB").unwrap();
        assert!(build_arc_diagram(&WordSlice::from_word(&word), true).is_err());
    }
}
