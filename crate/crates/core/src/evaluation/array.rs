use std::fmt;

use serde::Serialize;
use serde_json::Value;

use super::semiring::Semiring;
use crate::diagrams::{DiagMorphism, ObjWord, Orientation, Side};
use crate::error::{Error, Result};

/// Default cap on the number of legs `evaluate` will materialize.
pub const DEFAULT_MAX_LEGS: usize = 8;

/// Hard cap on the entry count of any dense array.
pub const MAX_ENTRIES: usize = 1 << 24;

/// Variance of one leg: `+` maps to the space itself, `-` to its dual.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Leg {
    Plain,
    Dual,
}

impl From<Orientation> for Leg {
    fn from(o: Orientation) -> Self {
        match o {
            Orientation::Plus => Leg::Plain,
            Orientation::Minus => Leg::Dual,
        }
    }
}

impl From<Leg> for Orientation {
    fn from(l: Leg) -> Self {
        match l {
            Leg::Plain => Orientation::Plus,
            Leg::Dual => Orientation::Minus,
        }
    }
}

fn legs_of(w: &ObjWord) -> Vec<Leg> {
    w.orientations().iter().map(|&o| o.into()).collect()
}

fn word_of(legs: &[Leg]) -> ObjWord {
    legs.iter().map(|&l| Orientation::from(l)).collect()
}

fn checked_size(dim: usize, legs: usize) -> Result<usize> {
    u32::try_from(legs)
        .ok()
        .and_then(|l| dim.checked_pow(l))
        .filter(|&n| n <= MAX_ENTRIES)
        .ok_or_else(|| Error::LegBound {
            legs,
            dim,
            limit: max_legs_for(dim),
        })
}

fn max_legs_for(dim: usize) -> usize {
    if dim <= 1 {
        return usize::MAX;
    }
    let mut legs = 0;
    let mut n = 1usize;
    while n.saturating_mul(dim) <= MAX_ENTRIES {
        n *= dim;
        legs += 1;
    }
    legs
}

#[derive(Serialize)]
struct ArrayRepr {
    dim: usize,
    dom: String,
    cod: String,
    entries: Vec<Value>,
    semiring: &'static str,
}

/// A morphism of the matrix instance: a dense array with one index in `0..dim` per leg.
///
/// Entries are stored cod-major: the flat position is `row * cols + col`, where `row`
/// encodes the codomain indices and `col` the domain indices, each with the first leg most
/// significant. Viewed this way the array is a `dim^|cod| x dim^|dom|` matrix and
/// composition is the matrix product.
#[derive(Clone, PartialEq)]
pub struct TensorArray<S> {
    dom: Vec<Leg>,
    cod: Vec<Leg>,
    dim: usize,
    entries: Vec<S>,
}

impl<S: Semiring> TensorArray<S> {
    pub fn new(dom: &ObjWord, cod: &ObjWord, dim: usize, entries: Vec<S>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let expected = checked_size(dim, dom.len() + cod.len())?;
        if entries.len() != expected {
            return Err(Error::SizeMismatch {
                left: entries.len(),
                right: expected,
            });
        }
        Ok(TensorArray {
            dom: legs_of(dom),
            cod: legs_of(cod),
            dim,
            entries,
        })
    }

    pub fn zeros(dom: &ObjWord, cod: &ObjWord, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let n = checked_size(dim, dom.len() + cod.len())?;
        Self::new(dom, cod, dim, vec![S::zero(); n])
    }

    pub fn identity(w: &ObjWord, dim: usize) -> Result<Self> {
        let mut a = Self::zeros(w, w, dim)?;
        let side = a.cols();
        for i in 0..side {
            a.entries[i * side + i] = S::one();
        }
        Ok(a)
    }

    /// A single-leg array `(o) -> (o)` from matrix rows (row index = codomain).
    pub fn from_matrix(orientation: Orientation, rows: &[Vec<S>]) -> Result<Self> {
        let dim = rows.len();
        let w = ObjWord::new(vec![orientation]);
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::TypeMismatch(format!("matrix must be {dim}x{dim}")));
        }
        Self::new(&w, &w, dim, rows.iter().flatten().cloned().collect())
    }

    /// A `() -> ()` array.
    pub fn scalar(value: S, dim: usize) -> Result<Self> {
        Self::new(&ObjWord::unit(), &ObjWord::unit(), dim, vec![value])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn dom_legs(&self) -> &[Leg] {
        &self.dom
    }

    pub fn cod_legs(&self) -> &[Leg] {
        &self.cod
    }

    pub fn dom_word(&self) -> ObjWord {
        word_of(&self.dom)
    }

    pub fn cod_word(&self) -> ObjWord {
        word_of(&self.cod)
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn rows(&self) -> usize {
        self.dim.pow(self.cod.len() as u32)
    }

    pub fn cols(&self) -> usize {
        self.dim.pow(self.dom.len() as u32)
    }

    /// Entry at 0-based codomain and domain indices.
    pub fn get(&self, cod_index: &[usize], dom_index: &[usize]) -> &S {
        let row = self.flatten(cod_index);
        let col = self.flatten(dom_index);
        &self.entries[row * self.cols() + col]
    }

    pub fn matrix_rows(&self) -> Vec<Vec<S>> {
        let cols = self.cols();
        if cols == 0 {
            return Vec::new();
        }
        self.entries.chunks(cols).map(|c| c.to_vec()).collect()
    }

    fn flatten(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| {
            assert!(
                i < self.dim,
                "index {i} out of range for dimension {}",
                self.dim
            );
            acc * self.dim + i
        })
    }

    /// Closed arrays hold a single scalar.
    pub fn as_scalar(&self) -> Option<&S> {
        (self.dom.is_empty() && self.cod.is_empty()).then(|| &self.entries[0])
    }

    /// Entrywise comparison under [`Semiring::approx_eq`], including leg types.
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.dom == other.dom
            && self.cod == other.cod
            && self.dim == other.dim
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.approx_eq(b))
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod
            && TensorArray::identity(&self.dom_word(), self.dim)
                .map(|id| id.approx_eq(self))
                .unwrap_or(false)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self.repr()).expect("array serialization is infallible")
    }

    /// Compact JSON with keys in the order `dim, dom, cod, entries, semiring`.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.repr()).expect("array serialization is infallible")
    }

    fn repr(&self) -> ArrayRepr {
        ArrayRepr {
            dim: self.dim,
            dom: self.dom_word().to_string(),
            cod: self.cod_word().to_string(),
            entries: self.entries.iter().map(S::to_json).collect(),
            semiring: S::NAME,
        }
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::json("$", "expected an object"))?;
        let dim = obj
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::json("$.dim", "expected a positive integer"))?
            as usize;
        let word = |key: &str| -> Result<ObjWord> {
            let path = format!("$.{key}");
            let text = obj
                .get(key)
                .and_then(Value::as_str)
                .ok_or_else(|| Error::json(&path, "expected a string over '+' and '-'"))?;
            ObjWord::parse(text).map_err(|e| Error::json(&path, e.to_string()))
        };
        let dom = word("dom")?;
        let cod = word("cod")?;
        match obj.get("semiring").and_then(Value::as_str) {
            Some(tag) if tag == S::NAME => {}
            Some(tag) => {
                return Err(Error::json(
                    "$.semiring",
                    format!("expected \"{}\", found \"{tag}\"", S::NAME),
                ))
            }
            None => return Err(Error::json("$.semiring", "missing semiring tag")),
        }
        let list = obj
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::json("$.entries", "expected an array"))?;
        let entries = list
            .iter()
            .enumerate()
            .map(|(i, v)| {
                S::from_json(v).ok_or_else(|| {
                    Error::json(
                        format!("$.entries[{i}]"),
                        format!("not a {} value", S::NAME),
                    )
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&dom, &cod, dim, entries).map_err(|e| match e {
            Error::SizeMismatch { left, right } => Error::json(
                "$.entries",
                format!("expected {right} entries, found {left}"),
            ),
            other => other,
        })
    }
}

impl<S: Semiring> fmt::Debug for TensorArray<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "TensorArray(\"{}\" -> \"{}\", dim={}, {:?})",
            self.dom_word(),
            self.cod_word(),
            self.dim,
            self.matrix_rows()
        )
    }
}

/// `b ∘ a`: contracts the codomain legs of `a` against the domain legs of `b`.
pub fn array_compose<S: Semiring>(
    b: &TensorArray<S>,
    a: &TensorArray<S>,
) -> Result<TensorArray<S>> {
    if a.dim != b.dim {
        return Err(Error::LegMismatch(format!(
            "dimensions differ ({} vs {})",
            a.dim, b.dim
        )));
    }
    if a.cod != b.dom {
        return Err(Error::LegMismatch(format!(
            "codomain \"{}\" does not match domain \"{}\"",
            a.cod_word(),
            b.dom_word()
        )));
    }
    let rows = b.rows();
    let inner = a.rows();
    let cols = a.cols();
    checked_size(a.dim, b.cod.len() + a.dom.len())?;
    let mut out = vec![S::zero(); rows * cols];
    // Fixed reduction order: middle index ascending for every output entry.
    for y in 0..inner {
        for x in 0..cols {
            let av = &a.entries[y * cols + x];
            if av.is_zero() {
                continue;
            }
            for z in 0..rows {
                let bv = &b.entries[z * inner + y];
                if bv.is_zero() {
                    continue;
                }
                let term = bv.checked_mul(av).ok_or(Error::ScalarOverflow(S::NAME))?;
                let slot = &mut out[z * cols + x];
                *slot = slot
                    .checked_add(&term)
                    .ok_or(Error::ScalarOverflow(S::NAME))?;
            }
        }
    }
    Ok(TensorArray {
        dom: a.dom.clone(),
        cod: b.cod.clone(),
        dim: a.dim,
        entries: out,
    })
}

/// Outer product; legs of `a` come before legs of `b` on each side.
pub fn array_tensor<S: Semiring>(a: &TensorArray<S>, b: &TensorArray<S>) -> Result<TensorArray<S>> {
    if a.dim != b.dim {
        return Err(Error::LegMismatch(format!(
            "dimensions differ ({} vs {})",
            a.dim, b.dim
        )));
    }
    let legs = a.dom.len() + a.cod.len() + b.dom.len() + b.cod.len();
    checked_size(a.dim, legs)?;
    let (ra, ca, rb, cb) = (a.rows(), a.cols(), b.rows(), b.cols());
    let cols = ca * cb;
    let mut out = vec![S::zero(); ra * rb * cols];
    for i in 0..ra {
        for j in 0..ca {
            let av = &a.entries[i * ca + j];
            if av.is_zero() {
                continue;
            }
            for k in 0..rb {
                for l in 0..cb {
                    let bv = &b.entries[k * cb + l];
                    if bv.is_zero() {
                        continue;
                    }
                    out[(i * rb + k) * cols + j * cb + l] =
                        av.checked_mul(bv).ok_or(Error::ScalarOverflow(S::NAME))?;
                }
            }
        }
    }
    let mut dom = a.dom.clone();
    dom.extend_from_slice(&b.dom);
    let mut cod = a.cod.clone();
    cod.extend_from_slice(&b.cod);
    Ok(TensorArray {
        dom,
        cod,
        dim: a.dim,
        entries: out,
    })
}

/// The matrix-instance value of a diagram at dimension `dim`: a product of Kronecker
/// deltas, one per strand, scaled by `dim^circles`.
pub fn evaluate<S: Semiring>(m: &DiagMorphism, dim: usize) -> Result<TensorArray<S>> {
    evaluate_bounded(m, dim, DEFAULT_MAX_LEGS)
}

pub fn evaluate_bounded<S: Semiring>(
    m: &DiagMorphism,
    dim: usize,
    max_legs: usize,
) -> Result<TensorArray<S>> {
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    let legs = m.dom().len() + m.cod().len();
    if legs > max_legs {
        return Err(Error::LegBound {
            legs,
            dim,
            limit: max_legs,
        });
    }
    let scale = S::power(dim as u64, m.circles()).ok_or(Error::ScalarOverflow(S::NAME))?;
    let mut array = TensorArray::zeros(m.dom(), m.cod(), dim)?;

    let (n, k) = (m.dom().len(), m.cod().len());
    let cols = array.cols();
    // Positional weight of each endpoint inside its row or column number.
    let weight = |side: Side, index: usize| -> (bool, usize) {
        match side {
            Side::Dom => (false, dim.pow((n - index) as u32)),
            Side::Cod => (true, dim.pow((k - index) as u32)),
        }
    };
    let strand_weights: Vec<[(bool, usize); 2]> = m
        .pairing()
        .strands()
        .iter()
        .map(|s| {
            let (a, b) = s.endpoints();
            [weight(a.side, a.index), weight(b.side, b.index)]
        })
        .collect();

    // Every assignment of one index per strand gives one nonzero entry.
    let mut digits = vec![0usize; strand_weights.len()];
    loop {
        let (mut row, mut col) = (0usize, 0usize);
        for (ws, &v) in strand_weights.iter().zip(&digits) {
            for &(is_row, w) in ws {
                if is_row {
                    row += v * w;
                } else {
                    col += v * w;
                }
            }
        }
        array.entries[row * cols + col] = scale.clone();

        let mut pos = 0;
        loop {
            if pos == digits.len() {
                return Ok(array);
            }
            digits[pos] += 1;
            if digits[pos] < dim {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{compose, epsilon, eta, identity, tensor_morphisms};
    use crate::diagrams::Pairing;
    use serde_json::json;

    fn w(s: &str) -> ObjWord {
        s.parse().unwrap()
    }

    fn closed(k: u64) -> DiagMorphism {
        DiagMorphism::new(w(""), w(""), Pairing::empty(), k).unwrap()
    }

    #[test]
    fn closed_diagram_is_a_power_of_the_dimension() {
        assert_eq!(
            evaluate::<i64>(&closed(2), 3).unwrap().as_scalar(),
            Some(&9)
        );
        for d in 1..=4usize {
            for k in 0..=10u64 {
                let v = *evaluate::<i64>(&closed(k), d).unwrap().as_scalar().unwrap();
                let mut expected = 1i64;
                for _ in 0..k {
                    expected *= d as i64;
                }
                assert_eq!(v, expected);
            }
        }
    }

    #[test]
    fn identity_evaluates_to_identity_matrix() {
        let a = evaluate::<i64>(&identity(&w("+")), 2).unwrap();
        assert_eq!(a.matrix_rows(), vec![vec![1, 0], vec![0, 1]]);
        assert!(a.is_identity());
    }

    #[test]
    fn coevaluation_then_evaluation_is_the_dimension() {
        let cup = evaluate::<i64>(&eta(&w("+")), 2).unwrap();
        let cap = evaluate::<i64>(&epsilon(&w("-")), 2).unwrap();
        assert_eq!(array_compose(&cap, &cup).unwrap().as_scalar(), Some(&2));
    }

    #[test]
    fn identity_arrays_compose_to_identity() {
        for word in ObjWord::all_up_to(3) {
            let id = TensorArray::<i64>::identity(&word, 2).unwrap();
            assert!(array_compose(&id, &id).unwrap().is_identity());
        }
    }

    #[test]
    fn snake_evaluates_to_identity() {
        let p = w("+");
        let h = tensor_morphisms(&epsilon(&p), &identity(&p)).unwrap();
        let g = tensor_morphisms(&identity(&p), &eta(&p)).unwrap();
        let snake = compose(&h, &g).unwrap();
        let expected = evaluate::<i64>(&identity(&p), 3).unwrap();
        assert_eq!(evaluate::<i64>(&snake, 3).unwrap(), expected);
        let product = array_compose(
            &evaluate::<i64>(&h, 3).unwrap(),
            &evaluate::<i64>(&g, 3).unwrap(),
        )
        .unwrap();
        assert_eq!(product, expected);
    }

    #[test]
    fn leg_mismatch_is_rejected() {
        let a = TensorArray::<i64>::identity(&w("+"), 2).unwrap();
        let b = TensorArray::<i64>::identity(&w("-"), 2).unwrap();
        assert!(matches!(array_compose(&b, &a), Err(Error::LegMismatch(_))));
        let c = TensorArray::<i64>::identity(&w("+"), 3).unwrap();
        assert!(matches!(array_compose(&c, &a), Err(Error::LegMismatch(_))));
    }

    #[test]
    fn leg_bound_and_zero_dimension() {
        let big = identity(&w("+-+-+"));
        assert!(matches!(
            evaluate::<i64>(&big, 2),
            Err(Error::LegBound {
                legs: 10,
                limit: 8,
                ..
            })
        ));
        assert!(evaluate_bounded::<i64>(&big, 2, 10).is_ok());
        assert_eq!(
            evaluate::<i64>(&identity(&w("+")), 0),
            Err(Error::ZeroDimension)
        );
    }

    #[test]
    fn scale_overflow_is_an_error() {
        assert_eq!(
            evaluate::<i64>(&closed(64), 2),
            Err(Error::ScalarOverflow("int"))
        );
    }

    #[test]
    fn tensor_leg_order() {
        // (cup at d=2) ⊗ (id "+"): cod legs (-,+,+), dom leg (+).
        let cup = evaluate::<i64>(&eta(&w("+")), 2).unwrap();
        let id = evaluate::<i64>(&identity(&w("+")), 2).unwrap();
        let t = array_tensor(&cup, &id).unwrap();
        assert_eq!(t.cod_word(), w("-++"));
        assert_eq!(t.dom_word(), w("+"));
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for x in 0..2 {
                        let expected = i64::from(a == b && c == x);
                        assert_eq!(*t.get(&[a, b, c], &[x]), expected);
                    }
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let a = evaluate::<i64>(&eta(&w("+")), 2).unwrap();
        let v = a.to_json();
        assert_eq!(
            a.to_json_string(),
            r#"{"dim":2,"dom":"","cod":"-+","entries":[1,0,0,1],"semiring":"int"}"#
        );
        assert_eq!(TensorArray::<i64>::from_json(&v).unwrap(), a);
        let bad = json!({"dim":2,"dom":"","cod":"-+","entries":[1,0,0],"semiring":"int"});
        assert!(matches!(
            TensorArray::<i64>::from_json(&bad),
            Err(Error::Json { .. })
        ));
        let wrong_ring =
            json!({"dim":2,"dom":"","cod":"-+","entries":[1,0,0,1],"semiring":"rational"});
        assert!(matches!(
            TensorArray::<i64>::from_json(&wrong_ring),
            Err(Error::Json { .. })
        ));
    }
}
