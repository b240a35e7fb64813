use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// One symbol of the burger-order word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Letter {
    /// Hamburger, `a`.
    Hamburger,
    /// Cheeseburger, `b`.
    Cheeseburger,
    /// Hamburger order, `A`.
    HamburgerOrder,
    /// Cheeseburger order, `B`.
    CheeseburgerOrder,
    /// Flexible order, `F`; takes the freshest burger of either kind.
    Flexible,
}

/// The two burger kinds. Arcs of hamburger pairs are drawn above the axis,
/// cheeseburger pairs below.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Burger {
    Hamburger,
    Cheeseburger,
}

impl Letter {
    pub const ALL: [Letter; 5] = [
        Letter::Hamburger,
        Letter::Cheeseburger,
        Letter::HamburgerOrder,
        Letter::CheeseburgerOrder,
        Letter::Flexible,
    ];

    #[inline]
    pub fn is_burger(self) -> bool {
        matches!(self, Letter::Hamburger | Letter::Cheeseburger)
    }

    #[inline]
    pub fn is_order(self) -> bool {
        !self.is_burger()
    }

    /// Burger kind for `a`/`b`, or the kind a typed order asks for. `None` for `F`.
    #[inline]
    pub fn kind(self) -> Option<Burger> {
        match self {
            Letter::Hamburger | Letter::HamburgerOrder => Some(Burger::Hamburger),
            Letter::Cheeseburger | Letter::CheeseburgerOrder => Some(Burger::Cheeseburger),
            Letter::Flexible => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::Hamburger => 'a',
            Letter::Cheeseburger => 'b',
            Letter::HamburgerOrder => 'A',
            Letter::CheeseburgerOrder => 'B',
            Letter::Flexible => 'F',
        }
    }

    pub fn from_char(c: char) -> Result<Self> {
        Ok(match c {
            'a' => Letter::Hamburger,
            'b' => Letter::Cheeseburger,
            'A' => Letter::HamburgerOrder,
            'B' => Letter::CheeseburgerOrder,
            'F' => Letter::Flexible,
            other => return Err(Error::Letter(other)),
        })
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Parses an ASCII word such as `"abBA"`. Whitespace is ignored.
pub fn parse_word(s: &str) -> Result<Vec<Letter>> {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .map(Letter::from_char)
        .collect()
}

pub fn word_to_string(w: &[Letter]) -> String {
    w.iter().map(|l| l.as_char()).collect()
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut it = s.chars();
        match (it.next(), it.next()) {
            (Some(c), None) => Letter::from_char(c),
            _ => Err(Error::Parameter(format!("expected one letter, got {s:?}"))),
        }
    }
}
