use std::fmt;

use super::Letter;

/// Sentinel for "no partner inside the processed word".
pub const UNMATCHED: u32 = u32::MAX;

/// Canonical reduced form: unfulfilled orders followed by unconsumed burgers,
/// each block in time order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ReducedWord {
    pub orders: Vec<Letter>,
    pub burgers: Vec<Letter>,
}

impl ReducedWord {
    pub fn is_empty(&self) -> bool {
        self.orders.is_empty() && self.burgers.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.orders.iter().chain(self.burgers.iter()).copied()
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in self.letters() {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// LIFO burger stack run left to right over a word.
///
/// Burgers of each kind sit on their own stack of positions; the freshest
/// burger overall is whichever top carries the larger position. `A`/`B`
/// pop their own kind, `F` pops the fresher top.
#[derive(Clone, Debug, Default)]
pub struct StackEngine {
    ham: Vec<u32>,
    cheese: Vec<u32>,
}

impl StackEngine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn clear(&mut self) {
        self.ham.clear();
        self.cheese.clear();
    }

    /// Feeds the letter at position `i`; returns the consumed burger position
    /// when `i` is an order that found a burger.
    #[inline]
    pub fn push(&mut self, i: u32, l: Letter) -> Option<u32> {
        match l {
            Letter::Hamburger => {
                self.ham.push(i);
                None
            }
            Letter::Cheeseburger => {
                self.cheese.push(i);
                None
            }
            Letter::HamburgerOrder => self.ham.pop(),
            Letter::CheeseburgerOrder => self.cheese.pop(),
            Letter::Flexible => match (self.ham.last(), self.cheese.last()) {
                (Some(&h), Some(&c)) => {
                    if h > c {
                        self.ham.pop()
                    } else {
                        self.cheese.pop()
                    }
                }
                (Some(_), None) => self.ham.pop(),
                (None, Some(_)) => self.cheese.pop(),
                (None, None) => None,
            },
        }
    }

    /// Adds `by` to every stored position.
    pub(crate) fn shift(&mut self, by: u32) {
        self.ham.iter_mut().chain(self.cheese.iter_mut()).for_each(|x| *x += by);
    }

    /// Puts the burgers still pending in `older`, an engine run over the
    /// letters just before this one's, underneath this engine's stacks.
    pub(crate) fn stack_under(&mut self, mut older: StackEngine) {
        older.ham.extend_from_slice(&self.ham);
        older.cheese.extend_from_slice(&self.cheese);
        self.ham = older.ham;
        self.cheese = older.cheese;
    }

    /// Positions of unconsumed burgers in increasing order.
    pub fn remaining(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.ham.iter().chain(self.cheese.iter()).copied().collect();
        v.sort_unstable();
        v
    }
}

/// Partner table of a finite word under the LIFO rule; `UNMATCHED` where the
/// partner lies outside the word.
pub fn match_word(word: &[Letter]) -> Vec<u32> {
    let mut partner = vec![UNMATCHED; word.len()];
    let mut eng = StackEngine::new();
    for (i, &l) in word.iter().enumerate() {
        if let Some(s) = eng.push(i as u32, l) {
            partner[s as usize] = i as u32;
            partner[i] = s;
        }
    }
    partner
}

/// Reduced form of a finite word.
pub fn reduce(word: &[Letter]) -> ReducedWord {
    let mut eng = StackEngine::new();
    let mut orders = Vec::new();
    for (i, &l) in word.iter().enumerate() {
        if eng.push(i as u32, l).is_none() && l.is_order() {
            orders.push(l);
        }
    }
    let burgers = eng.remaining().into_iter().map(|i| word[i as usize]).collect();
    ReducedWord { orders, burgers }
}

/// Whether the word reduces to the empty word.
pub fn is_reducible(word: &[Letter]) -> bool {
    let mut eng = StackEngine::new();
    for (i, &l) in word.iter().enumerate() {
        if eng.push(i as u32, l).is_none() && l.is_order() {
            return false;
        }
    }
    eng.ham.is_empty() && eng.cheese.is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_word;

    fn red(s: &str) -> String {
        reduce(&parse_word(s).unwrap()).to_string()
    }

    #[test]
    fn basic_relations() {
        assert_eq!(red("aA"), "");
        assert_eq!(red("abF"), "a");
        assert_eq!(red("aB"), "Ba");
        assert_eq!(red("bA"), "Ab");
        assert_eq!(red("abA"), "b");
        assert_eq!(red("Fa"), "Fa");
    }

    #[test]
    fn reducibility() {
        assert!(is_reducible(&parse_word("aA").unwrap()));
        assert!(!is_reducible(&parse_word("aB").unwrap()));
        assert!(is_reducible(&parse_word("").unwrap()));
        assert!(is_reducible(&parse_word("abBA").unwrap()));
        assert!(!is_reducible(&parse_word("Aa").unwrap()));
    }

    #[test]
    fn match_examples() {
        let m = match_word(&parse_word("abBA").unwrap());
        assert_eq!(m, vec![3, 2, 1, 0]);
        let m = match_word(&parse_word("abAB").unwrap());
        assert_eq!(m, vec![2, 3, 0, 1]);
        let m = match_word(&parse_word("abF").unwrap());
        assert_eq!(m, vec![UNMATCHED, 2, 1]);
    }
}
