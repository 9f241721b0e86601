//! Finite sets and bijections, skeletally: objects are sizes, morphisms are permutations.
//! [`include`] sends a permutation to the all-`+` diagram wiring each input to its image.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagrams::{DiagMorphism, Endpoint, ObjWord, Orientation, Pairing, Strand};
use crate::error::{Error, Result};

/// A bijection of `{1..n}` in one-line notation: `images[i - 1]` is the image of `i`.
///
/// Serializes as a bare JSON array such as `[2,1,3]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (i, &x) in images.iter().enumerate() {
            if x == 0 || x > n {
                return Err(Error::InvalidPermutation(format!(
                    "image {x} of {} is outside 1..={n}",
                    i + 1
                )));
            }
            if std::mem::replace(&mut seen[x - 1], true) {
                return Err(Error::InvalidPermutation(format!("{x} is hit twice")));
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// Swaps `a` and `b` (1-based) in a permutation of size `n`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        let mut images: Vec<usize> = (1..=n).collect();
        if a == 0 || b == 0 || a > n || b > n {
            return Err(Error::InvalidPermutation(format!(
                "transposition ({a} {b}) outside 1..={n}"
            )));
        }
        images.swap(a - 1, b - 1);
        Ok(Permutation { images })
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of the 1-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.size()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x - 1] = i + 1;
        }
        Permutation { images }
    }

    /// Block sum: `self` acts on the first points, `other` on the rest.
    pub fn block_sum(&self, other: &Permutation) -> Self {
        let n = self.size();
        let images = self
            .images
            .iter()
            .copied()
            .chain(other.images.iter().map(|&x| x + n))
            .collect();
        Permutation { images }
    }

    /// Every permutation of size `n`, lexicographic in one-line notation.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn go(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if current.len() == n {
                out.push(Permutation {
                    images: current.clone(),
                });
                return;
            }
            for x in 0..n {
                if !used[x] {
                    used[x] = true;
                    current.push(x + 1);
                    go(n, current, used, out);
                    current.pop();
                    used[x] = false;
                }
            }
        }
        go(n, &mut current, &mut used, &mut out);
        out
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::new(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

/// `p ∘ q`: apply `q`, then `p`.
pub fn perm_compose(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    if p.size() != q.size() {
        return Err(Error::SizeMismatch {
            left: p.size(),
            right: q.size(),
        });
    }
    Ok(Permutation {
        images: q.images.iter().map(|&x| p.apply(x)).collect(),
    })
}

/// The diagram on `n` positive points with domain point `i` wired to codomain point `p(i)`.
pub fn include(p: &Permutation) -> DiagMorphism {
    let word: ObjWord = std::iter::repeat_n(Orientation::Plus, p.size()).collect();
    let strands: Pairing = (1..=p.size())
        .map(|i| Strand::new(Endpoint::dom(i), Endpoint::cod(p.apply(i))).expect("distinct sides"))
        .collect();
    DiagMorphism::new(word.clone(), word, strands, 0).expect("permutation diagrams are total")
}
