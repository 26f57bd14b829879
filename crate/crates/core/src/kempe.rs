//! Two-coloured subgraphs and Kempe switches.

use serde::Serialize;

use crate::colouring::{Colour, PartialColouring};
use crate::error::{Error, Result};
use crate::multigraph::{EdgeId, Multigraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComponentKind {
    /// Two parallel edges carrying both colours.
    DoubleEdge,
    Path,
    /// Even cycle of length at least four.
    Cycle,
}

/// One component of the subgraph formed by the edges coloured `a` or `b`.
///
/// Paths list `edges.len() + 1` vertices; cycles and double edges list each
/// vertex once. Edges follow the vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KempeComponent {
    pub colours: (Colour, Colour),
    pub kind: ComponentKind,
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl KempeComponent {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// End vertices of a path component.
    pub fn ends(&self) -> Option<(VertexId, VertexId)> {
        (self.kind == ComponentKind::Path)
            .then(|| (self.vertices[0], *self.vertices.last().expect("non-empty")))
    }
}

/// Per-vertex lookup of the `a`- and `b`-edges.
struct PairIndex {
    a: Colour,
    b: Colour,
    at_a: Vec<Option<EdgeId>>,
    at_b: Vec<Option<EdgeId>>,
}

impl PairIndex {
    fn new(c: &PartialColouring, g: &Multigraph, a: Colour, b: Colour) -> Result<Self> {
        if a == b {
            return Err(Error::input(format!(
                "colour pair needs two distinct colours, got {a},{b}"
            )));
        }
        for x in [a, b] {
            if x == 0 || x > c.k() {
                return Err(Error::input(format!("colour {x} outside 1..={}", c.k())));
            }
        }
        let n = g.vertex_count();
        let mut at_a = vec![None; n];
        let mut at_b = vec![None; n];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let slot = match c.colour(e) {
                Some(x) if x == a => &mut at_a,
                Some(x) if x == b => &mut at_b,
                _ => continue,
            };
            for w in [u, v] {
                if slot[w].replace(e).is_some() {
                    return Err(Error::input(format!(
                        "colouring is not proper at vertex {w}"
                    )));
                }
            }
        }
        Ok(PairIndex { a, b, at_a, at_b })
    }

    fn edge(&self, v: VertexId, colour: Colour) -> Option<EdgeId> {
        if colour == self.a {
            self.at_a[v]
        } else {
            self.at_b[v]
        }
    }

    fn degree(&self, v: VertexId) -> usize {
        self.at_a[v].is_some() as usize + self.at_b[v].is_some() as usize
    }

    fn other(&self, colour: Colour) -> Colour {
        if colour == self.a {
            self.b
        } else {
            self.a
        }
    }

    /// Walk from `start`, leaving along the `first`-coloured edge.
    fn walk(&self, g: &Multigraph, start: VertexId, first: Colour) -> KempeComponent {
        let mut vertices = vec![start];
        let mut edges = Vec::new();
        let mut at = start;
        let mut want = first;
        let mut closed = false;
        while let Some(f) = self.edge(at, want) {
            edges.push(f);
            at = g.other_end(f, at);
            if at == start {
                closed = true;
                break;
            }
            vertices.push(at);
            want = self.other(want);
        }
        let kind = match (closed, edges.len()) {
            (false, _) => ComponentKind::Path,
            (true, 2) => ComponentKind::DoubleEdge,
            (true, _) => ComponentKind::Cycle,
        };
        KempeComponent {
            colours: (self.a.min(self.b), self.a.max(self.b)),
            kind,
            vertices,
            edges,
        }
    }

    fn path_from_end(&self, g: &Multigraph, v: VertexId) -> KempeComponent {
        let first = if self.at_a[v].is_some() {
            self.a
        } else {
            self.b
        };
        self.walk(g, v, first)
    }
}

/// All components of the `{a, b}` subgraph, ordered by least vertex. Paths run
/// from their lower end; cycles start at their least vertex along the edge
/// coloured `min(a, b)`.
pub fn bichromatic_components(
    c: &PartialColouring,
    g: &Multigraph,
    a: Colour,
    b: Colour,
) -> Result<Vec<KempeComponent>> {
    let idx = PairIndex::new(c, g, a, b)?;
    let lo = a.min(b);
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut found = Vec::new();
    for v in 0..n {
        if !seen[v] && idx.degree(v) == 1 {
            let comp = idx.path_from_end(g, v);
            comp.vertices.iter().for_each(|&u| seen[u] = true);
            found.push(comp);
        }
    }
    for v in 0..n {
        if !seen[v] && idx.degree(v) == 2 {
            let comp = idx.walk(g, v, lo);
            comp.vertices.iter().for_each(|&u| seen[u] = true);
            found.push(comp);
        }
    }
    found.sort_by_key(|comp| *comp.vertices.iter().min().expect("non-empty"));
    Ok(found)
}

/// The component through `v`. A path with `v` as an end is oriented from
/// `v`; a vertex touching neither colour gives the empty path at `v`.
pub fn chain_from(
    c: &PartialColouring,
    g: &Multigraph,
    v: VertexId,
    a: Colour,
    b: Colour,
) -> Result<KempeComponent> {
    if v >= g.vertex_count() {
        return Err(Error::input(format!("vertex {v} out of range")));
    }
    let idx = PairIndex::new(c, g, a, b)?;
    match idx.degree(v) {
        0 => Ok(KempeComponent {
            colours: (a.min(b), a.max(b)),
            kind: ComponentKind::Path,
            vertices: vec![v],
            edges: Vec::new(),
        }),
        1 => Ok(idx.path_from_end(g, v)),
        _ => {
            let comp = bichromatic_components(c, g, a, b)?
                .into_iter()
                .find(|comp| comp.vertices.contains(&v))
                .expect("every vertex with an a- or b-edge lies on a component");
            Ok(comp)
        }
    }
}

/// Exchange the two colours on `comp`. Fails if `comp` is not a current
/// component of `c`.
pub fn kempe_switch(
    c: &PartialColouring,
    g: &Multigraph,
    comp: &KempeComponent,
) -> Result<PartialColouring> {
    let (a, b) = comp.colours;
    let start = *comp
        .vertices
        .first()
        .ok_or_else(|| Error::precondition("component has no vertices"))?;
    let current = chain_from(c, g, start, a, b)?;
    let mut expected = comp.edges.clone();
    let mut actual = current.edges;
    expected.sort_unstable();
    actual.sort_unstable();
    if expected != actual {
        return Err(Error::precondition(
            "stale component: the colouring changed since it was computed",
        ));
    }
    let mut out = c.clone();
    for &e in &comp.edges {
        let new = if c.colour(e) == Some(a) { b } else { a };
        out.set(e, Some(new))?;
    }
    Ok(out)
}
