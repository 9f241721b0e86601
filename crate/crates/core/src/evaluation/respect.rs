//! Checks around duals of morphisms in the matrix instance: the "respects" relation,
//! the two-sided inverse it produces, and invertibility of monoidal natural
//! transformations between evaluation functors.

use serde::Serialize;

use super::array::{array_compose, array_tensor, evaluate_bounded, TensorArray};
use super::duality::{dual_morphism_generic, DualityData};
use super::linalg;
use super::semiring::Semiring;
use crate::algebra::{epsilon, eta};
use crate::diagrams::{ObjWord, Orientation};
use crate::error::{Error, Result};

/// The two squares of the respects relation for `g: C* -> D*` against `f: C -> D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RespectSquares {
    /// `ε_D ∘ (g ⊗ f) = ε_C`
    pub counit: bool,
    /// `(f ⊗ g) ∘ η_C = η_D`
    pub unit: bool,
}

impl RespectSquares {
    pub fn both(&self) -> bool {
        self.counit && self.unit
    }
}

pub fn respect_squares<S: Semiring>(
    g: &TensorArray<S>,
    f: &TensorArray<S>,
    dd: &DualityData<S>,
) -> Result<RespectSquares> {
    let c = f.dom_word();
    let d = f.cod_word();
    let tc = dd.get(&c)?;
    let td = dd.get(&d)?;
    if g.dom_word() != tc.dual || g.cod_word() != td.dual || g.dim() != f.dim() {
        return Err(Error::TypeMismatch(format!(
            "g must map \"{}\" -> \"{}\" at dimension {}, found \"{}\" -> \"{}\" at dimension {}",
            tc.dual,
            td.dual,
            f.dim(),
            g.dom_word(),
            g.cod_word(),
            g.dim()
        )));
    }
    let counit_side = array_compose(&td.counit, &array_tensor(g, f)?)?;
    let unit_side = array_compose(&array_tensor(f, g)?, &tc.unit)?;
    Ok(RespectSquares {
        counit: counit_side.approx_eq(&tc.counit),
        unit: unit_side.approx_eq(&td.unit),
    })
}

/// Whether `g: C* -> D*` respects `f: C -> D`.
pub fn respects<S: Semiring>(
    g: &TensorArray<S>,
    f: &TensorArray<S>,
    dd: &DualityData<S>,
) -> Result<bool> {
    respect_squares(g, f, dd).map(|s| s.both())
}

/// An entry where a composite differs from the identity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Deviation {
    pub composite: &'static str,
    pub row: usize,
    pub col: usize,
    pub found: serde_json::Value,
    pub expected: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RespectLemmaReport {
    /// `g ∘ f* = 1_{D*}`
    pub g_after_dual_is_identity: bool,
    /// `f* ∘ g = 1_{C*}`
    pub dual_after_g_is_identity: bool,
    pub deviations: Vec<Deviation>,
}

impl RespectLemmaReport {
    pub fn holds(&self) -> bool {
        self.g_after_dual_is_identity && self.dual_after_g_is_identity
    }
}

fn deviations<S: Semiring>(name: &'static str, a: &TensorArray<S>) -> Result<Vec<Deviation>> {
    let id = TensorArray::identity(&a.dom_word(), a.dim())?;
    let cols = a.cols();
    Ok(a.entries()
        .iter()
        .zip(id.entries())
        .enumerate()
        .filter(|(_, (x, e))| !x.approx_eq(e))
        .map(|(i, (x, e))| Deviation {
            composite: name,
            row: i / cols,
            col: i % cols,
            found: x.to_json(),
            expected: e.to_json(),
        })
        .collect())
}

/// When `g` respects `f`, both composites of `g` with the dual `f*` are identities.
/// Fails with [`Error::Precondition`] if `g` does not respect `f`.
pub fn check_lemma_respect<S: Semiring>(
    g: &TensorArray<S>,
    f: &TensorArray<S>,
    dd: &DualityData<S>,
) -> Result<RespectLemmaReport> {
    let squares = respect_squares(g, f, dd)?;
    if !squares.both() {
        return Err(Error::Precondition(format!(
            "g does not respect f (counit square {}, unit square {})",
            squares.counit, squares.unit
        )));
    }
    let f_star = dual_morphism_generic(f, dd)?;
    let left = array_compose(g, &f_star)?;
    let right = array_compose(&f_star, g)?;
    let mut devs = deviations("g∘f*", &left)?;
    let left_ok = devs.is_empty() && left.dom_word() == left.cod_word();
    let right_devs = deviations("f*∘g", &right)?;
    let right_ok = right_devs.is_empty() && right.dom_word() == right.cod_word();
    devs.extend(right_devs);
    Ok(RespectLemmaReport {
        g_after_dual_is_identity: left_ok,
        dual_after_g_is_identity: right_ok,
        deviations: devs,
    })
}

/// Outcome of checking a candidate monoidal transformation `α` between two copies of the
/// evaluation functor on the generator, given by its components `α_+` and `α_-`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvertnatReport {
    /// `(α_+ ⊗ α_-) ∘ η = η`
    pub unit_square: bool,
    /// `ε ∘ (α_- ⊗ α_+) = ε`
    pub counit_square: bool,
    /// Both squares hold and `α_-` respects `α_+`, so `α_+` has the two-sided inverse
    /// `(α_-)*`.
    pub inverse_witnessed: bool,
    /// Independent rank test: whether `α_+` has a left inverse at all. `None` for carriers
    /// without an exact rational embedding.
    pub left_inverse_exists: Option<bool>,
}

impl InvertnatReport {
    pub fn passes(&self) -> bool {
        self.unit_square && self.counit_square
    }
}

/// Checks the monoidal naturality squares of `α` against the unit `() -> (+,-)` and
/// counit `(-,+) -> ()` of the generator. When they hold, `α_-` respects `α_+` and the
/// inverse of `α_+` is the dual of `α_-` (its transpose).
pub fn check_invertnat<S: Semiring>(
    alpha_plus: &TensorArray<S>,
    alpha_minus: &TensorArray<S>,
    dim: usize,
) -> Result<InvertnatReport> {
    let plus = ObjWord::new(vec![Orientation::Plus]);
    let minus = ObjWord::new(vec![Orientation::Minus]);
    for (a, w) in [(alpha_plus, &plus), (alpha_minus, &minus)] {
        if a.dim() != dim {
            return Err(Error::SizeMismatch {
                left: a.dim(),
                right: dim,
            });
        }
        if a.dom_word() != *w || a.cod_word() != *w {
            return Err(Error::TypeMismatch(format!(
                "component must map \"{w}\" -> \"{w}\", found \"{}\" -> \"{}\"",
                a.dom_word(),
                a.cod_word()
            )));
        }
    }
    // Unit () -> (+,-) and counit (-,+) -> () of the generator.
    let unit = evaluate_bounded::<S>(&eta(&minus), dim, usize::MAX)?;
    let counit = evaluate_bounded::<S>(&epsilon(&minus), dim, usize::MAX)?;
    let unit_square =
        array_compose(&array_tensor(alpha_plus, alpha_minus)?, &unit)?.approx_eq(&unit);
    let counit_square =
        array_compose(&counit, &array_tensor(alpha_minus, alpha_plus)?)?.approx_eq(&counit);

    let inverse_witnessed = if unit_square && counit_square {
        let dd = DualityData::standard(dim);
        let lemma = check_lemma_respect(alpha_minus, alpha_plus, &dd)?;
        let inverse = dual_morphism_generic(alpha_minus, &dd)?;
        lemma.holds()
            && array_compose(&inverse, alpha_plus)?.is_identity()
            && array_compose(alpha_plus, &inverse)?.is_identity()
    } else {
        false
    };

    let left_inverse_exists = alpha_plus
        .matrix_rows()
        .iter()
        .map(|row| row.iter().map(S::to_rational).collect::<Option<Vec<_>>>())
        .collect::<Option<Vec<_>>>()
        .map(|m| linalg::rank(&m) == dim);

    Ok(InvertnatReport {
        unit_square,
        counit_square,
        inverse_witnessed,
        left_inverse_exists,
    })
}
