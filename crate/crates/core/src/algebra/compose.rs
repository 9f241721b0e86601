use crate::diagrams::{DiagMorphism, Endpoint, Pairing, Side, Strand};
use crate::error::{Error, Result};

/// A point of the glued picture `g.dom | middle | h.cod`, all 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Point {
    Input(usize),
    Middle(usize),
    Output(usize),
}

/// Partner lookup for one morphism, indexed by slot (domain points first).
struct Partners {
    dom_len: usize,
    slots: Vec<usize>,
}

impl Partners {
    fn of(m: &DiagMorphism) -> Self {
        let dom_len = m.dom().len();
        let slot = |e: Endpoint| match e.side {
            Side::Dom => e.index - 1,
            Side::Cod => dom_len + e.index - 1,
        };
        let mut slots = vec![usize::MAX; dom_len + m.cod().len()];
        for s in m.pairing().strands() {
            let (a, b) = s.endpoints();
            slots[slot(a)] = slot(b);
            slots[slot(b)] = slot(a);
        }
        Partners { dom_len, slots }
    }

    fn partner(&self, slot: usize) -> usize {
        self.slots[slot]
    }
}

/// Result of gluing `g` then `h` along their shared middle word.
#[derive(Clone, Debug)]
pub struct CompositionTrace {
    /// Total pairing from `g.dom` to `h.cod`, strands sorted.
    pub composite: Pairing,
    /// Cycles lying entirely in the middle word.
    pub closed_loops: u64,
    /// Per middle point: whether the trace passed through it. All true after tracing.
    pub visited: Vec<bool>,
}

/// Follows strands of `g` and `h` alternately through the middle word.
///
/// Paths are started from every domain point of `g` in ascending order, then every
/// codomain point of `h`; whatever middle points remain unvisited lie on closed loops,
/// which are swept in ascending order.
pub fn trace_composition(h: &DiagMorphism, g: &DiagMorphism) -> Result<CompositionTrace> {
    if g.cod() != h.dom() {
        return Err(Error::BoundaryMismatch {
            expected: h.dom().clone(),
            found: g.cod().clone(),
        });
    }
    let n = g.dom().len();
    let mid = g.cod().len();
    let l = h.cod().len();
    let gp = Partners::of(g);
    let hp = Partners::of(h);

    // g slots: inputs 0..n, middle n..n+mid. h slots: middle 0..mid, outputs mid..mid+l.
    let via_g = |p: Point| -> Point {
        let slot = match p {
            Point::Input(i) => i,
            Point::Middle(j) => gp.dom_len + j,
            Point::Output(_) => unreachable!("outputs are not points of g"),
        };
        let q = gp.partner(slot);
        if q < n {
            Point::Input(q)
        } else {
            Point::Middle(q - n)
        }
    };
    let via_h = |p: Point| -> Point {
        let slot = match p {
            Point::Middle(j) => j,
            Point::Output(k) => hp.dom_len + k,
            Point::Input(_) => unreachable!("inputs are not points of h"),
        };
        let q = hp.partner(slot);
        if q < mid {
            Point::Middle(q)
        } else {
            Point::Output(q - mid)
        }
    };

    let mut visited = vec![false; mid];
    let mut input_done = vec![false; n];
    let mut output_done = vec![false; l];
    let mut strands = Vec::with_capacity((n + l) / 2);

    let mut finish =
        |start: Point, end: Point, input_done: &mut [bool], output_done: &mut [bool]| {
            let to_endpoint = |p: Point| match p {
                Point::Input(i) => Endpoint::dom(i + 1),
                Point::Output(k) => Endpoint::cod(k + 1),
                Point::Middle(_) => unreachable!("paths end on the boundary"),
            };
            for p in [start, end] {
                match p {
                    Point::Input(i) => input_done[i] = true,
                    Point::Output(k) => output_done[k] = true,
                    Point::Middle(_) => {}
                }
            }
            strands.push(Strand::of(to_endpoint(start), to_endpoint(end)));
        };

    for i in 0..n {
        if input_done[i] {
            continue;
        }
        let start = Point::Input(i);
        let mut cur = via_g(start);
        let end = loop {
            match cur {
                Point::Middle(j) => {
                    visited[j] = true;
                    match via_h(cur) {
                        Point::Middle(j2) => {
                            visited[j2] = true;
                            cur = via_g(Point::Middle(j2));
                        }
                        other => break other,
                    }
                }
                other => break other,
            }
        };
        finish(start, end, &mut input_done, &mut output_done);
    }

    for k in 0..l {
        if output_done[k] {
            continue;
        }
        let start = Point::Output(k);
        let mut cur = via_h(start);
        let end = loop {
            match cur {
                Point::Middle(j) => {
                    visited[j] = true;
                    match via_g(cur) {
                        Point::Middle(j2) => {
                            visited[j2] = true;
                            cur = via_h(Point::Middle(j2));
                        }
                        other => break other,
                    }
                }
                other => break other,
            }
        };
        finish(start, end, &mut input_done, &mut output_done);
    }

    let mut closed_loops = 0u64;
    for j in 0..mid {
        if visited[j] {
            continue;
        }
        closed_loops += 1;
        let mut x = j;
        loop {
            visited[x] = true;
            let Point::Middle(y) = via_g(Point::Middle(x)) else {
                unreachable!("an unvisited middle point cannot reach the boundary")
            };
            visited[y] = true;
            let Point::Middle(z) = via_h(Point::Middle(y)) else {
                unreachable!("an unvisited middle point cannot reach the boundary")
            };
            if z == j {
                break;
            }
            x = z;
        }
    }

    strands.sort_unstable();
    Ok(CompositionTrace {
        composite: Pairing::new(strands),
        closed_loops,
        visited,
    })
}

/// `h ∘ g` (apply `g` first). Circles add up, plus one per closed loop formed in the middle.
pub fn compose(h: &DiagMorphism, g: &DiagMorphism) -> Result<DiagMorphism> {
    let trace = trace_composition(h, g)?;
    let circles = g
        .circles()
        .checked_add(h.circles())
        .and_then(|c| c.checked_add(trace.closed_loops))
        .ok_or(Error::CircleOverflow)?;
    Ok(DiagMorphism::from_parts(
        g.dom().clone(),
        h.cod().clone(),
        trace.composite,
        circles,
    ))
}

/// The section-count formula `H_c + G_c - (H∘G)_c`, evaluated literally.
///
/// Diagnostic only: it does not match the number of closed loops in general (a cup of `g`
/// can be straightened into a through-strand by a cap of `h`, as in the zig-zag), so
/// [`compose`] never uses it.
pub fn cir_formula(h: &DiagMorphism, g: &DiagMorphism) -> Result<i64> {
    let trace = trace_composition(h, g)?;
    let composite_cups = crate::diagrams::SectionCounts::of(&trace.composite).codomain_cups as i64;
    Ok(
        h.section_counts().codomain_cups as i64 + g.section_counts().codomain_cups as i64
            - composite_cups,
    )
}
