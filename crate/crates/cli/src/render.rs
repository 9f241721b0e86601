use std::fmt::Write;

use cobordia::{DiagMorphism, Endpoint, ObjWord, Side};

fn node(e: Endpoint) -> String {
    e.to_string()
}

fn row(side: Side, word: &ObjWord) -> Vec<Endpoint> {
    (1..=word.len())
        .map(|i| match side {
            Side::Dom => Endpoint::dom(i),
            Side::Cod => Endpoint::cod(i),
        })
        .collect()
}

/// Graphviz: codomain on top, domain below, one undirected edge per strand.
pub fn to_dot(m: &DiagMorphism) -> String {
    let m = m.canonical_form();
    let mut out = String::new();
    out.push_str("graph morphism {\n");
    let _ = writeln!(out, "  label=\"circles={}\";", m.circles());
    out.push_str("  node [shape=circle];\n");
    for (side, word) in [(Side::Cod, m.cod()), (Side::Dom, m.dom())] {
        let points = row(side, word);
        for (e, o) in points.iter().zip(word.orientations()) {
            let _ = writeln!(out, "  {} [label=\"{}\"];", node(*e), o.symbol());
        }
        if !points.is_empty() {
            let names: Vec<String> = points.iter().map(|e| node(*e)).collect();
            let _ = writeln!(out, "  {{ rank=same; {}; }}", names.join("; "));
        }
    }
    for s in m.pairing().strands() {
        let (a, b) = s.endpoints();
        let _ = writeln!(out, "  {} -- {};", node(a), node(b));
    }
    out.push_str("}\n");
    out
}

fn strand_label(mut i: usize) -> String {
    let mut s = Vec::new();
    loop {
        s.push(b'a' + (i % 26) as u8);
        if i < 26 {
            break;
        }
        i = i / 26 - 1;
    }
    s.reverse();
    String::from_utf8(s).expect("ascii")
}

/// Two rows of points, each tagged with the label of its strand; equal labels are joined.
pub fn to_ascii(m: &DiagMorphism) -> String {
    let m = m.canonical_form();
    let label_of = |e: Endpoint| {
        let i = m
            .pairing()
            .strands()
            .iter()
            .position(|s| s.contains(e))
            .expect("total pairing");
        strand_label(i)
    };
    let render_row = |side: Side, word: &ObjWord| {
        row(side, word)
            .into_iter()
            .zip(word.orientations())
            .map(|(e, o)| format!("{}{}", o.symbol(), label_of(e)))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{}",
        format!("cod | {}", render_row(Side::Cod, m.cod())).trim_end()
    );
    let _ = writeln!(
        out,
        "{}",
        format!("dom | {}", render_row(Side::Dom, m.dom())).trim_end()
    );
    let _ = writeln!(out, "circles: {}", m.circles());
    out
}
