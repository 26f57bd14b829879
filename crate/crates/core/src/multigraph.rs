//! Loopless multigraphs with indexed, possibly parallel, edges.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;
pub type VertexSet = BTreeSet<VertexId>;

/// A loopless multigraph. Edge identity is the position in the edge list, so
/// parallel edges stay distinguishable. Endpoints are stored with `a < b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<(VertexId, VertexId)>,
    incident: Vec<Vec<EdgeId>>,
}

impl Multigraph {
    pub fn new<I>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut list = Vec::new();
        let mut incident = vec![Vec::new(); vertex_count];
        for (i, (a, b)) in edges.into_iter().enumerate() {
            if a >= vertex_count || b >= vertex_count {
                return Err(Error::input(format!(
                    "edge {i} ({a},{b}) references a vertex outside 0..{vertex_count}"
                )));
            }
            if a == b {
                return Err(Error::input(format!("edge {i} is a loop at vertex {a}")));
            }
            let e = (a.min(b), a.max(b));
            incident[e.0].push(i);
            incident[e.1].push(i);
            list.push(e);
        }
        Ok(Multigraph {
            vertex_count,
            edges: list,
            incident,
        })
    }

    /// Three vertices pairwise joined by `mu` parallel edges.
    pub fn shannon_triangle(mu: usize) -> Self {
        let mut edges = Vec::with_capacity(3 * mu);
        for (a, b) in [(0, 1), (1, 2), (0, 2)] {
            edges.extend(std::iter::repeat((a, b)).take(mu));
        }
        Multigraph::new(3, edges).expect("triangle is loopless")
    }

    /// Disjoint union; the vertices of `other` are shifted past ours.
    pub fn disjoint_union(&self, other: &Multigraph) -> Self {
        let shift = self.vertex_count;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(a, b)| (a + shift, b + shift)));
        Multigraph::new(self.vertex_count + other.vertex_count, edges)
            .expect("union of valid graphs")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    /// The endpoint of `e` that is not `v`.
    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incident[v]
    }

    fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v >= self.vertex_count {
            return Err(Error::input(format!(
                "vertex {v} out of range 0..{}",
                self.vertex_count
            )));
        }
        Ok(())
    }

    pub fn degree(&self, v: VertexId) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.incident[v].len())
    }

    pub fn max_degree(&self) -> Result<usize> {
        if self.vertex_count == 0 {
            return Err(Error::input("maximum degree of the empty graph"));
        }
        Ok(self.incident.iter().map(Vec::len).max().unwrap_or(0))
    }

    /// Number of edges joining `u` and `v`.
    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> usize {
        self.incident[u]
            .iter()
            .filter(|&&e| self.other_end(e, u) == v)
            .count()
    }

    pub(crate) fn membership(&self, s: &VertexSet) -> Vec<bool> {
        let mut inside = vec![false; self.vertex_count];
        for &v in s {
            if v < self.vertex_count {
                inside[v] = true;
            }
        }
        inside
    }

    /// Edges with exactly one endpoint in `s`, in id order.
    pub fn boundary_edges(&self, s: &VertexSet) -> Vec<EdgeId> {
        let inside = self.membership(s);
        (0..self.edges.len())
            .filter(|&e| {
                let (a, b) = self.edges[e];
                inside[a] != inside[b]
            })
            .collect()
    }

    /// Number of edges with both endpoints in `s`.
    pub fn induced_edge_count(&self, s: &VertexSet) -> usize {
        let inside = self.membership(s);
        self.edges
            .iter()
            .filter(|&&(a, b)| inside[a] && inside[b])
            .count()
    }

    /// The subgraph induced by `s`. Returns the graph and, for each new vertex
    /// id, the original id it came from.
    pub fn induced(&self, s: &VertexSet) -> (Multigraph, Vec<VertexId>) {
        let old: Vec<VertexId> = s
            .iter()
            .copied()
            .filter(|&v| v < self.vertex_count)
            .collect();
        let mut new_id = vec![usize::MAX; self.vertex_count];
        for (i, &v) in old.iter().enumerate() {
            new_id[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(a, b)| new_id[a] != usize::MAX && new_id[b] != usize::MAX)
            .map(|&(a, b)| (new_id[a], new_id[b]));
        let g = Multigraph::new(old.len(), edges).expect("subgraph of a valid graph");
        (g, old)
    }

    pub fn all_vertices(&self) -> VertexSet {
        (0..self.vertex_count).collect()
    }
}

/// Optional vertex names, kept beside the graph rather than inside it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Labels {
    names: Vec<Option<String>>,
}

impl Labels {
    pub fn new(vertex_count: usize) -> Self {
        Labels {
            names: vec![None; vertex_count],
        }
    }

    pub fn from_names<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        Labels {
            names: names.into_iter().map(|s| Some(s.into())).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.iter().all(Option::is_none)
    }

    pub fn set(&mut self, v: VertexId, name: impl Into<String>) {
        if v >= self.names.len() {
            self.names.resize(v + 1, None);
        }
        self.names[v] = Some(name.into());
    }

    pub fn get(&self, v: VertexId) -> Option<&str> {
        self.names.get(v).and_then(|n| n.as_deref())
    }

    pub fn lookup(&self, name: &str) -> Option<VertexId> {
        self.names.iter().position(|n| n.as_deref() == Some(name))
    }

    /// Name if present, otherwise the numeric id.
    pub fn display(&self, v: VertexId) -> String {
        self.get(v)
            .map(str::to_owned)
            .unwrap_or_else(|| v.to_string())
    }

    pub fn display_set<'a>(&self, vs: impl IntoIterator<Item = &'a VertexId>) -> Vec<String> {
        vs.into_iter().map(|&v| self.display(v)).collect()
    }
}
