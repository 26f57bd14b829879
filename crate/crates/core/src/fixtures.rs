//! The two reconstructed limiting examples shipped with the crate.
//!
//! In both, edge 0 is the uncoloured edge `e0` joining `v2` and `v4`, and the
//! largest colour plays the role of `α`.

use crate::colouring::{Colour, PartialColouring};
use crate::format::{parse_colouring, parse_graph};
use crate::multigraph::{EdgeId, Labels, Multigraph};

pub const FIG1_GRAPH: &str = include_str!("../fixtures/fig1.graph");
pub const FIG1_COLOURING: &str = include_str!("../fixtures/fig1.col");
pub const FIG1_SPEC: &str = include_str!("../fixtures/fig1.wspec");
pub const FIG3_GRAPH: &str = include_str!("../fixtures/fig3.graph");
pub const FIG3_COLOURING: &str = include_str!("../fixtures/fig3.col");
pub const FIG3_SPEC: &str = include_str!("../fixtures/fig3.wspec");

pub const FIG1_ALPHA: Colour = 18;
pub const FIG3_ALPHA: Colour = 28;
pub const E0: EdgeId = 0;

#[derive(Clone, Debug)]
pub struct Fixture {
    pub graph: Multigraph,
    pub labels: Labels,
    pub colouring: PartialColouring,
    pub alpha: Colour,
    pub e0: EdgeId,
}

impl Fixture {
    /// Vertex id for a label; panics on unknown labels.
    pub fn v(&self, name: &str) -> usize {
        self.labels
            .lookup(name)
            .unwrap_or_else(|| panic!("no vertex labelled {name}"))
    }

    pub fn set(&self, names: &[&str]) -> crate::VertexSet {
        names.iter().map(|n| self.v(n)).collect()
    }

    /// All vertices except the named ones.
    pub fn all_except(&self, names: &[&str]) -> crate::VertexSet {
        let drop = self.set(names);
        (0..self.graph.vertex_count())
            .filter(|v| !drop.contains(v))
            .collect()
    }
}

fn load(graph: &str, colouring: &str, alpha: Colour) -> Fixture {
    let (g, labels) = parse_graph(graph).expect("shipped graph parses");
    let c = parse_colouring(colouring, &g).expect("shipped colouring parses");
    Fixture {
        graph: g,
        labels,
        colouring: c,
        alpha,
        e0: E0,
    }
}

pub fn fig1() -> Fixture {
    load(FIG1_GRAPH, FIG1_COLOURING, FIG1_ALPHA)
}

pub fn fig3() -> Fixture {
    load(FIG3_GRAPH, FIG3_COLOURING, FIG3_ALPHA)
}
