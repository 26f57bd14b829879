//! Building the 26-vertex example from the 16-vertex `fig1` witness.
//!
//! Each bundle `v_i v_{i+1}` (`i = 8, 10, 12, 14, 16`) is opened into the
//! 4-cycle `v_i v_{i+10} v_{i+11} v_{i+1}`. Colours `8..=17` gain twins
//! `18..=27` (the twin of `i` is `i + 11` for even `i`, `i + 9` for odd),
//! and `α` moves from 18 to 28.

use crate::colouring::{Colour, PartialColouring};
use crate::error::{Error, Result};
use crate::fixtures::{FIG1_ALPHA, FIG1_SPEC, FIG3_ALPHA};
use crate::multigraph::{Labels, Multigraph, VertexId};

use super::spec::WitnessSpec;
use super::verify::verify;

const BUNDLES: [Colour; 5] = [8, 10, 12, 14, 16];

fn twin(c: Colour) -> Option<Colour> {
    (8..=17)
        .contains(&c)
        .then(|| if c % 2 == 0 { c + 11 } else { c + 9 })
}

fn lift(c: Colour) -> Colour {
    if c == FIG1_ALPHA {
        FIG3_ALPHA
    } else {
        c
    }
}

/// Third colour on the middle edge of each cycle.
fn middle_extra(i: Colour) -> Colour {
    match i {
        8 => 2,
        10 => 3,
        12 => 4,
        14 => 5,
        _ => FIG3_ALPHA,
    }
}

pub fn derive_fig3(
    g: &Multigraph,
    labels: &Labels,
    c: &PartialColouring,
) -> Result<(Multigraph, Labels, PartialColouring)> {
    let spec = WitnessSpec::parse(FIG1_SPEC)?;
    let report = verify(g, labels, c, &spec)?;
    if !report.passed() {
        let failed: Vec<&str> = report.failures().map(|f| f.name.as_str()).collect();
        return Err(Error::precondition(format!(
            "input does not satisfy the fig1 spec; failed: {}",
            failed.join(", ")
        )));
    }
    let v = |i: Colour| labels.lookup(&format!("v{i}")).expect("verified labels");
    let n = g.vertex_count();
    let mut out_labels = Labels::new(n + 10);
    for u in 0..n {
        out_labels.set(u, labels.display(u));
    }
    // v_{i+10} gets id n + (i - 8).
    let fresh = |i: Colour| n + (i - 8) as usize;
    for i in 8..=17 {
        out_labels.set(fresh(i), format!("v{}", i + 10));
    }
    let in_bundle = |a: VertexId, b: VertexId| {
        BUNDLES
            .iter()
            .any(|&i| (a, b) == (v(i), v(i + 1)) || (a, b) == (v(i + 1), v(i)))
    };

    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    let mut colours: Vec<Option<Colour>> = Vec::new();
    let mut bundle_colours: Vec<Vec<Colour>> = vec![Vec::new(); BUNDLES.len()];
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        let col = c.colour(e);
        if in_bundle(a, b) {
            let idx = BUNDLES
                .iter()
                .position(|&i| a == v(i) || b == v(i))
                .expect("bundle");
            bundle_colours[idx].push(lift(col.expect("bundle edges are coloured")));
            continue;
        }
        edges.push((a, b));
        colours.push(col.map(lift));
        if let Some(t) = col.and_then(twin) {
            edges.push((a, b));
            colours.push(Some(t));
        }
    }
    for (idx, &i) in BUNDLES.iter().enumerate() {
        let mut shared = bundle_colours[idx].clone();
        shared.extend(bundle_colours[idx].iter().filter_map(|&c| twin(c)));
        shared.sort_unstable();
        for (u, w, extra) in [(v(i), fresh(i), i + 11), (v(i + 1), fresh(i + 1), i + 10)] {
            for &col in shared.iter().chain([&extra]) {
                edges.push((u, w));
                colours.push(Some(col));
            }
        }
        for col in [i, i + 1, middle_extra(i)] {
            edges.push((fresh(i), fresh(i + 1)));
            colours.push(Some(col));
        }
    }
    let h = Multigraph::new(n + 10, edges)?;
    let ch = PartialColouring::from_assignment(FIG3_ALPHA, colours)?;
    if let Some((x, col)) = ch.find_conflict(&h) {
        return Err(Error::Violation(format!(
            "derived colouring repeats colour {col} at vertex {x}"
        )));
    }
    Ok((h, out_labels, ch))
}
