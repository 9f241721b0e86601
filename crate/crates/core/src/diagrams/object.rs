use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Orientation of a boundary point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Plus,
    Minus,
}

impl Orientation {
    pub const ALL: [Orientation; 2] = [Orientation::Plus, Orientation::Minus];

    pub fn flip(self) -> Self {
        match self {
            Orientation::Plus => Orientation::Minus,
            Orientation::Minus => Orientation::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Orientation::Plus => '+',
            Orientation::Minus => '-',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            '+' => Some(Orientation::Plus),
            '-' => Some(Orientation::Minus),
            _ => None,
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// An object: a finite word of orientations. The empty word is the monoidal unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjWord(Vec<Orientation>);

impl ObjWord {
    pub fn new(orientations: Vec<Orientation>) -> Self {
        ObjWord(orientations)
    }

    pub fn unit() -> Self {
        ObjWord(Vec::new())
    }

    /// Parses a word over `+`/`-`. Positions in errors are 1-based.
    pub fn parse(text: &str) -> Result<Self> {
        text.chars()
            .enumerate()
            .map(|(i, c)| {
                Orientation::from_symbol(c).ok_or(Error::Parse {
                    position: i + 1,
                    found: c,
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(ObjWord)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn orientations(&self) -> &[Orientation] {
        &self.0
    }

    /// Orientation at a 1-based position.
    pub fn at(&self, index: usize) -> Option<Orientation> {
        index.checked_sub(1).and_then(|i| self.0.get(i).copied())
    }

    /// Reverse the word and flip every orientation.
    pub fn dual(&self) -> Self {
        ObjWord(self.0.iter().rev().map(|o| o.flip()).collect())
    }

    /// Monoidal product of objects: concatenation.
    pub fn tensor(&self, other: &ObjWord) -> Self {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        ObjWord(v)
    }

    /// All words of exactly the given length, in lexicographic order with `+` first.
    pub fn all_of_length(len: usize) -> Vec<ObjWord> {
        (0..1usize << len)
            .map(|bits| {
                ObjWord(
                    (0..len)
                        .map(|i| {
                            if bits >> (len - 1 - i) & 1 == 0 {
                                Orientation::Plus
                            } else {
                                Orientation::Minus
                            }
                        })
                        .collect(),
                )
            })
            .collect()
    }

    /// All words of length at most `max_len`, shortest first.
    pub fn all_up_to(max_len: usize) -> Vec<ObjWord> {
        (0..=max_len).flat_map(Self::all_of_length).collect()
    }
}

pub fn parse_object(text: &str) -> Result<ObjWord> {
    ObjWord::parse(text)
}

pub fn dual_object(w: &ObjWord) -> ObjWord {
    w.dual()
}

pub fn tensor_objects(w1: &ObjWord, w2: &ObjWord) -> ObjWord {
    w1.tensor(w2)
}

impl Index<usize> for ObjWord {
    type Output = Orientation;

    fn index(&self, i: usize) -> &Orientation {
        &self.0[i]
    }
}

impl FromStr for ObjWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ObjWord::parse(s)
    }
}

impl fmt::Display for ObjWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|o| write!(f, "{o}"))
    }
}

impl FromIterator<Orientation> for ObjWord {
    fn from_iter<T: IntoIterator<Item = Orientation>>(iter: T) -> Self {
        ObjWord(iter.into_iter().collect())
    }
}
