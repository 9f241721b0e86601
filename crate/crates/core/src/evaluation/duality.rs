use std::borrow::Cow;
use std::collections::BTreeMap;

use super::array::{array_compose, array_tensor, evaluate_bounded, TensorArray};
use super::semiring::Semiring;
use crate::algebra::{epsilon, eta};
use crate::diagrams::ObjWord;
use crate::error::{Error, Result};

/// Chosen dual of one object together with its unit `I -> C ⊗ C*` and counit
/// `C* ⊗ C -> I`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualityTriple<S: Semiring> {
    pub dual: ObjWord,
    pub unit: TensorArray<S>,
    pub counit: TensorArray<S>,
}

impl<S: Semiring> DualityTriple<S> {
    /// Kronecker-delta unit and counit on the reversed, flipped word.
    pub fn standard(object: &ObjWord, dim: usize) -> Result<Self> {
        let dual = object.dual();
        // eta(C*) : () -> C□C*, epsilon(C*) : C*□C -> ()
        let unit = evaluate_bounded(&eta(&dual), dim, usize::MAX)?;
        let counit = evaluate_bounded(&epsilon(&dual), dim, usize::MAX)?;
        Ok(DualityTriple { dual, unit, counit })
    }

    fn check_types(&self, object: &ObjWord) -> Result<()> {
        let unit_cod = object.tensor(&self.dual);
        let counit_dom = self.dual.tensor(object);
        let unit_ok = self.unit.dom_word().is_empty() && self.unit.cod_word() == unit_cod;
        let counit_ok = self.counit.cod_word().is_empty() && self.counit.dom_word() == counit_dom;
        if unit_ok && counit_ok {
            Ok(())
        } else {
            Err(Error::TypeMismatch(format!(
                "duality data for \"{object}\" must have unit () -> \"{unit_cod}\" and counit \"{counit_dom}\" -> ()"
            )))
        }
    }

    /// Whether both zig-zag composites are identities:
    /// `(C ⊗ ε) ∘ (η ⊗ C) = 1_C` and `(ε ⊗ C*) ∘ (C* ⊗ η) = 1_{C*}`.
    pub fn satisfies_snake_identities(&self, object: &ObjWord) -> Result<bool> {
        self.check_types(object)?;
        let dim = self.unit.dim();
        let id_c = TensorArray::identity(object, dim)?;
        let id_c_star = TensorArray::identity(&self.dual, dim)?;
        let first = array_compose(
            &array_tensor(&id_c, &self.counit)?,
            &array_tensor(&self.unit, &id_c)?,
        )?;
        let second = array_compose(
            &array_tensor(&self.counit, &id_c_star)?,
            &array_tensor(&id_c_star, &self.unit)?,
        )?;
        Ok(first.is_identity() && second.is_identity())
    }
}

/// Duality data for objects of the matrix instance at a fixed dimension.
///
/// Explicit entries take precedence; other objects fall back to the standard delta
/// triple when `standard_fallback` is set, and are missing otherwise.
#[derive(Clone, Debug)]
pub struct DualityData<S: Semiring> {
    dim: usize,
    explicit: BTreeMap<ObjWord, DualityTriple<S>>,
    standard_fallback: bool,
}

impl<S: Semiring> DualityData<S> {
    pub fn standard(dim: usize) -> Self {
        DualityData {
            dim,
            explicit: BTreeMap::new(),
            standard_fallback: true,
        }
    }

    /// No fallback: only objects added with [`insert`](Self::insert) have duals.
    pub fn explicit_only(dim: usize) -> Self {
        DualityData {
            dim,
            explicit: BTreeMap::new(),
            standard_fallback: false,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn insert(&mut self, object: ObjWord, triple: DualityTriple<S>) -> Result<()> {
        if triple.unit.dim() != self.dim || triple.counit.dim() != self.dim {
            return Err(Error::LegMismatch(format!(
                "duality data must have dimension {}",
                self.dim
            )));
        }
        triple.check_types(&object)?;
        self.explicit.insert(object, triple);
        Ok(())
    }

    pub fn get(&self, object: &ObjWord) -> Result<Cow<'_, DualityTriple<S>>> {
        if let Some(t) = self.explicit.get(object) {
            return Ok(Cow::Borrowed(t));
        }
        if self.standard_fallback {
            return Ok(Cow::Owned(DualityTriple::standard(object, self.dim)?));
        }
        Err(Error::MissingDuality(object.clone()))
    }
}

/// `f*: D* -> C*` for `f: C -> D`, evaluated as
/// `(ε_D ⊗ C*) ∘ (D* ⊗ f ⊗ C*) ∘ (D* ⊗ η_C)` in the matrix instance.
pub fn dual_morphism_generic<S: Semiring>(
    f: &TensorArray<S>,
    dd: &DualityData<S>,
) -> Result<TensorArray<S>> {
    if f.dim() != dd.dim() {
        return Err(Error::LegMismatch(format!(
            "array dimension {} but duality data dimension {}",
            f.dim(),
            dd.dim()
        )));
    }
    let c = f.dom_word();
    let d = f.cod_word();
    let tc = dd.get(&c)?;
    let td = dd.get(&d)?;
    let dim = f.dim();
    let id_d_star = TensorArray::identity(&td.dual, dim)?;
    let id_c_star = TensorArray::identity(&tc.dual, dim)?;

    let step1 = array_tensor(&id_d_star, &tc.unit)?;
    let step2 = array_tensor(&array_tensor(&id_d_star, f)?, &id_c_star)?;
    let step3 = array_tensor(&td.counit, &id_c_star)?;
    array_compose(&step3, &array_compose(&step2, &step1)?)
}
