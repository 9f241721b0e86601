use crate::diagrams::{enumerate_pairings, DiagMorphism, ObjWord};
use crate::error::Result;

/// Every morphism between words of length at most `max_len`, with circle counts
/// `0..=max_circles`, grouped by boundary.
pub struct Catalog {
    words: Vec<ObjWord>,
    homs: Vec<Vec<Vec<DiagMorphism>>>,
}

impl Catalog {
    pub fn new(max_len: usize, max_circles: u64) -> Result<Self> {
        let words = ObjWord::all_up_to(max_len);
        let mut homs = Vec::with_capacity(words.len());
        for a in &words {
            let mut row = Vec::with_capacity(words.len());
            for b in &words {
                let mut list = Vec::new();
                for p in enumerate_pairings(a, b)? {
                    for k in 0..=max_circles {
                        list.push(DiagMorphism::new(a.clone(), b.clone(), p.clone(), k)?);
                    }
                }
                row.push(list);
            }
            homs.push(row);
        }
        Ok(Catalog { words, homs })
    }

    pub fn words(&self) -> &[ObjWord] {
        &self.words
    }

    pub fn word_count(&self) -> usize {
        self.words.len()
    }

    /// Morphisms from word `a` to word `b` (indices into [`words`](Self::words)).
    pub fn homs(&self, a: usize, b: usize) -> &[DiagMorphism] {
        &self.homs[a][b]
    }

    pub fn morphisms(&self) -> impl Iterator<Item = &DiagMorphism> {
        self.homs.iter().flatten().flatten()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms().count()
    }

    pub fn index_of(&self, w: &ObjWord) -> Option<usize> {
        self.words.iter().position(|x| x == w)
    }
}
