use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exactla::Field;

use super::system::TdSystem;

/// One of the three generators of the D4 action on tridiagonal systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum D4Letter {
    /// `*`: swap `(A, {E_i})` with `(A*, {E*_i})`.
    Star,
    /// `↓`: reverse `{E*_i}`.
    Down,
    /// `⇓`: reverse `{E_i}`.
    DoubleDown,
}

impl D4Letter {
    pub fn symbol(self) -> char {
        match self {
            D4Letter::Star => '*',
            D4Letter::Down => '↓',
            D4Letter::DoubleDown => '⇓',
        }
    }

    /// Accepts the Unicode symbols and the ASCII spellings `d` (↓) and `D` (⇓).
    pub fn from_char(c: char) -> Option<Self> {
        match c {
            '*' => Some(D4Letter::Star),
            '↓' | 'd' => Some(D4Letter::Down),
            '⇓' | 'D' => Some(D4Letter::DoubleDown),
            _ => None,
        }
    }

    pub fn apply<F: Field>(self, sys: &TdSystem<F>) -> TdSystem<F> {
        match self {
            D4Letter::Star => sys.star(),
            D4Letter::Down => sys.down(),
            D4Letter::DoubleDown => sys.double_down(),
        }
    }
}

/// A group element in reduced form `↓^a ⇓^b *^c`. Words act left to right:
/// `Φ^{gh} = (Φ^g)^h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct D4Element {
    down: bool,
    double_down: bool,
    star: bool,
}

impl D4Element {
    pub const IDENTITY: D4Element = D4Element {
        down: false,
        double_down: false,
        star: false,
    };

    /// The eight elements, in the order `1, ↓, ⇓, ↓⇓, *, ↓*, ⇓*, ↓⇓*`.
    pub fn all() -> [D4Element; 8] {
        let mut out = [D4Element::IDENTITY; 8];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = D4Element {
                down: k & 1 != 0,
                double_down: k & 2 != 0,
                star: k & 4 != 0,
            };
        }
        out
    }

    /// Appends one letter, reducing with `*↓ = ⇓*`, `*⇓ = ↓*` and the involutions.
    pub fn then(self, letter: D4Letter) -> Self {
        let mut g = self;
        match (letter, g.star) {
            (D4Letter::Star, _) => g.star = !g.star,
            (D4Letter::Down, false) | (D4Letter::DoubleDown, true) => g.down = !g.down,
            (D4Letter::DoubleDown, false) | (D4Letter::Down, true) => {
                g.double_down = !g.double_down
            }
        }
        g
    }

    /// `self` followed by `other`.
    pub fn compose(self, other: D4Element) -> Self {
        other.letters().into_iter().fold(self, D4Element::then)
    }

    pub fn letters(self) -> Vec<D4Letter> {
        let mut w = Vec::new();
        if self.down {
            w.push(D4Letter::Down);
        }
        if self.double_down {
            w.push(D4Letter::DoubleDown);
        }
        if self.star {
            w.push(D4Letter::Star);
        }
        w
    }

    pub fn is_identity(self) -> bool {
        self == D4Element::IDENTITY
    }
}

impl fmt::Display for D4Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("1");
        }
        for l in self.letters() {
            write!(f, "{}", l.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for D4Element {
    type Err = Error;

    /// Parses any word over the alphabet; `"1"` or `""` is the identity.
    fn from_str(s: &str) -> Result<Self> {
        if s == "1" {
            return Ok(D4Element::IDENTITY);
        }
        parse_word(s).map(|w| w.into_iter().fold(D4Element::IDENTITY, D4Element::then))
    }
}

pub fn parse_word(s: &str) -> Result<Vec<D4Letter>> {
    s.chars()
        .map(|c| {
            D4Letter::from_char(c)
                .ok_or_else(|| Error::invalid(format!("'{c}' is not one of *, ↓, ⇓")))
        })
        .collect()
}

/// Applies an unreduced word letter by letter.
pub fn apply_word<F: Field>(sys: &TdSystem<F>, word: &[D4Letter]) -> TdSystem<F> {
    word.iter().fold(sys.clone(), |s, l| l.apply(&s))
}

/// The relative `Φ^g`.
pub fn d4_relative<F: Field>(sys: &TdSystem<F>, g: D4Element) -> TdSystem<F> {
    apply_word(sys, &g.letters())
}

/// All eight relatives paired with their group elements, in table order.
pub fn d4_orbit<F: Field>(sys: &TdSystem<F>) -> Vec<(D4Element, TdSystem<F>)> {
    D4Element::all()
        .into_iter()
        .map(|g| (g, d4_relative(sys, g)))
        .collect()
}
