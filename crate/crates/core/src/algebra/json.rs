//! Interchange format for morphisms:
//! `{"dom":"+-","cod":"","strands":[["d1","d2"]],"circles":0}`.
//!
//! Output is compact, keys in the order above, strands in canonical order with the
//! smaller endpoint first. Input accepts strands and endpoints in any order.

use serde::Serialize;
use serde_json::Value;

use crate::diagrams::{DiagMorphism, Endpoint, ObjWord, Pairing, Side, Strand};
use crate::error::{Error, Result};

#[derive(Serialize)]
struct MorphismRepr {
    dom: String,
    cod: String,
    strands: Vec<[String; 2]>,
    circles: u64,
}

pub fn morphism_to_value(m: &DiagMorphism) -> Value {
    serde_json::to_value(repr(m)).expect("morphism serialization is infallible")
}

pub fn morphism_to_json(m: &DiagMorphism) -> String {
    serde_json::to_string(&repr(m)).expect("morphism serialization is infallible")
}

fn repr(m: &DiagMorphism) -> MorphismRepr {
    let canonical = m.canonical_form();
    MorphismRepr {
        dom: m.dom().to_string(),
        cod: m.cod().to_string(),
        strands: canonical
            .pairing()
            .strands()
            .iter()
            .map(|s| {
                let (a, b) = s.endpoints();
                [a.to_string(), b.to_string()]
            })
            .collect(),
        circles: m.circles(),
    }
}

pub fn morphism_from_json(text: &str) -> Result<DiagMorphism> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Error::json("$", format!("not valid JSON: {e}")))?;
    morphism_from_value(&value)
}

pub fn morphism_from_value(value: &Value) -> Result<DiagMorphism> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::json("$", "expected an object"))?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "dom" | "cod" | "strands" | "circles") {
            return Err(Error::json(format!("$.{key}"), "unknown field"));
        }
    }
    let dom = word_field(obj, "dom")?;
    let cod = word_field(obj, "cod")?;

    let strands_value = obj
        .get("strands")
        .ok_or_else(|| Error::json("$.strands", "missing field"))?;
    let list = strands_value
        .as_array()
        .ok_or_else(|| Error::json("$.strands", "expected an array"))?;
    let mut strands = Vec::with_capacity(list.len());
    for (i, item) in list.iter().enumerate() {
        let path = format!("$.strands[{i}]");
        let pair = item
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::json(&path, "expected a two-element array"))?;
        let a = endpoint(&pair[0], &format!("{path}[0]"), &dom, &cod)?;
        let b = endpoint(&pair[1], &format!("{path}[1]"), &dom, &cod)?;
        let strand = Strand::new(a, b)
            .ok_or_else(|| Error::json(&path, "strand joins a point to itself"))?;
        strands.push(strand);
    }

    let circles = obj
        .get("circles")
        .ok_or_else(|| Error::json("$.circles", "missing field"))?
        .as_u64()
        .ok_or_else(|| Error::json("$.circles", "expected a nonnegative integer"))?;

    DiagMorphism::new(dom, cod, Pairing::new(strands), circles)
}

fn word_field(obj: &serde_json::Map<String, Value>, key: &str) -> Result<ObjWord> {
    let path = format!("$.{key}");
    let text = obj
        .get(key)
        .ok_or_else(|| Error::json(&path, "missing field"))?
        .as_str()
        .ok_or_else(|| Error::json(&path, "expected a string over '+' and '-'"))?;
    ObjWord::parse(text).map_err(|e| Error::json(&path, e.to_string()))
}

fn endpoint(value: &Value, path: &str, dom: &ObjWord, cod: &ObjWord) -> Result<Endpoint> {
    let text = value
        .as_str()
        .ok_or_else(|| Error::json(path, "expected an endpoint string like \"d1\""))?;
    let e: Endpoint = text.parse().map_err(|m: String| Error::json(path, m))?;
    let (len, name) = match e.side {
        Side::Dom => (dom.len(), "domain"),
        Side::Cod => (cod.len(), "codomain"),
    };
    if e.index == 0 || e.index > len {
        return Err(Error::json(
            path,
            format!("index {} out of range for {name} of length {len}", e.index),
        ));
    }
    Ok(e)
}
