use super::object::ObjWord;
use super::pairing::{Endpoint, Pairing, Strand};
use crate::error::{Error, Result};

/// Default cap on `dom.len() + cod.len()` for exhaustive enumeration.
pub const DEFAULT_MAX_POINTS: usize = 16;

/// All total sign-compatible pairings from `dom` to `cod`, each with strands sorted,
/// in lexicographic order of their strand lists.
pub fn enumerate_pairings(dom: &ObjWord, cod: &ObjWord) -> Result<Vec<Pairing>> {
    enumerate_pairings_bounded(dom, cod, DEFAULT_MAX_POINTS)
}

pub fn enumerate_pairings_bounded(
    dom: &ObjWord,
    cod: &ObjWord,
    max_points: usize,
) -> Result<Vec<Pairing>> {
    let n = dom.len() + cod.len();
    if n > max_points {
        return Err(Error::EnumerationBound {
            points: n,
            limit: max_points,
        });
    }
    let mut out = Vec::new();
    if n % 2 == 1 {
        return Ok(out);
    }

    let points: Vec<Endpoint> = (1..=dom.len())
        .map(Endpoint::dom)
        .chain((1..=cod.len()).map(Endpoint::cod))
        .collect();
    let mut used = vec![false; n];
    let mut current = Vec::with_capacity(n / 2);
    extend(dom, cod, &points, &mut used, &mut current, &mut out);
    Ok(out)
}

fn extend(
    dom: &ObjWord,
    cod: &ObjWord,
    points: &[Endpoint],
    used: &mut [bool],
    current: &mut Vec<Strand>,
    out: &mut Vec<Pairing>,
) {
    let Some(first) = used.iter().position(|u| !u) else {
        out.push(Pairing::new(current.clone()));
        return;
    };
    used[first] = true;
    for j in first + 1..points.len() {
        if used[j] {
            continue;
        }
        let strand = Strand::of(points[first], points[j]);
        if strand.is_sign_compatible(dom, cod) != Some(true) {
            continue;
        }
        used[j] = true;
        current.push(strand);
        extend(dom, cod, points, used, current, out);
        current.pop();
        used[j] = false;
    }
    used[first] = false;
}
