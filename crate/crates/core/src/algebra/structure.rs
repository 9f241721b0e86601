use super::compose::compose;
use crate::diagrams::{DiagMorphism, Endpoint, ObjWord, Pairing, Side, Strand};
use crate::error::{Error, Result};

pub fn identity(w: &ObjWord) -> DiagMorphism {
    let strands = (1..=w.len())
        .map(|i| Strand::of(Endpoint::dom(i), Endpoint::cod(i)))
        .collect();
    DiagMorphism::from_parts(w.clone(), w.clone(), strands, 0)
}

/// The braiding `w1 □ w2 -> w2 □ w1`.
pub fn symmetry(w1: &ObjWord, w2: &ObjWord) -> DiagMorphism {
    let (n1, n2) = (w1.len(), w2.len());
    let mut strands: Vec<Strand> = (1..=n1)
        .map(|i| Strand::of(Endpoint::dom(i), Endpoint::cod(n2 + i)))
        .chain((1..=n2).map(|j| Strand::of(Endpoint::dom(n1 + j), Endpoint::cod(j))))
        .collect();
    strands.sort_unstable();
    DiagMorphism::from_parts(w1.tensor(w2), w2.tensor(w1), Pairing::new(strands), 0)
}

/// Unit of the duality, `() -> dual(w) □ w`, as nested cups.
pub fn eta(w: &ObjWord) -> DiagMorphism {
    let n = w.len();
    let strands = (1..=n)
        .map(|i| Strand::of(Endpoint::cod(i), Endpoint::cod(2 * n + 1 - i)))
        .collect();
    DiagMorphism::from_parts(ObjWord::unit(), w.dual().tensor(w), strands, 0)
}

/// Counit of the duality, `w □ dual(w) -> ()`, as nested caps.
pub fn epsilon(w: &ObjWord) -> DiagMorphism {
    let n = w.len();
    let strands = (1..=n)
        .map(|i| Strand::of(Endpoint::dom(i), Endpoint::dom(2 * n + 1 - i)))
        .collect();
    DiagMorphism::from_parts(w.tensor(&w.dual()), ObjWord::unit(), strands, 0)
}

/// Side-by-side placement: `j`'s points are shifted past `g`'s on each side.
pub fn tensor_morphisms(g: &DiagMorphism, j: &DiagMorphism) -> Result<DiagMorphism> {
    let (dom_shift, cod_shift) = (g.dom().len(), g.cod().len());
    let shift = |e: Endpoint| match e.side {
        Side::Dom => Endpoint::dom(e.index + dom_shift),
        Side::Cod => Endpoint::cod(e.index + cod_shift),
    };
    let mut strands = g.pairing().strands().to_vec();
    strands.extend(j.pairing().strands().iter().map(|s| {
        let (a, b) = s.endpoints();
        Strand::of(shift(a), shift(b))
    }));
    let circles = g
        .circles()
        .checked_add(j.circles())
        .ok_or(Error::CircleOverflow)?;
    let mut pairing = Pairing::new(strands);
    if g.is_canonical() && j.is_canonical() {
        pairing = pairing.sorted();
    }
    Ok(DiagMorphism::from_parts(
        g.dom().tensor(j.dom()),
        g.cod().tensor(j.cod()),
        pairing,
        circles,
    ))
}

/// The dual `f*: D* -> C*` of `f: C -> D`, built as the composite
/// `(ε_D □ C*) ∘ (D* □ f □ C*) ∘ (D* □ η_C)` with `η_C: () -> C □ C*` and
/// `ε_D: D* □ D -> ()`.
pub fn dual_morphism(f: &DiagMorphism) -> Result<DiagMorphism> {
    let c = f.dom();
    let d = f.cod();
    let c_star = c.dual();
    let d_star = d.dual();
    // eta(C*) has codomain C** □ C* = C □ C*; epsilon(D*) has domain D* □ D.
    let unit_c = eta(&c_star);
    let counit_d = epsilon(&d_star);

    let step1 = tensor_morphisms(&identity(&d_star), &unit_c)?;
    let step2 = tensor_morphisms(
        &tensor_morphisms(&identity(&d_star), f)?,
        &identity(&c_star),
    )?;
    let step3 = tensor_morphisms(&counit_d, &identity(&c_star))?;
    compose(&step3, &compose(&step2, &step1)?)
}
