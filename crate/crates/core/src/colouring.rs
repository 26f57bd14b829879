//! Partial edge-colourings, missing-colour sets and a greedy colourer.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::multigraph::{EdgeId, Multigraph, VertexId, VertexSet};

/// Colours are `1..=k`. Uncoloured edges are `None` in the assignment.
pub type Colour = u32;

/// Colour sets are 64-bit masks, which bounds `k`.
pub const MAX_COLOURS: Colour = 64;

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColourSet(u64);

impl ColourSet {
    pub const fn empty() -> Self {
        ColourSet(0)
    }

    /// `{1, ..., k}`.
    pub fn full(k: Colour) -> Self {
        debug_assert!(k <= MAX_COLOURS);
        if k == 64 {
            ColourSet(u64::MAX)
        } else {
            ColourSet((1u64 << k) - 1)
        }
    }

    fn bit(c: Colour) -> u64 {
        debug_assert!((1..=MAX_COLOURS).contains(&c));
        1u64 << (c - 1)
    }

    pub fn insert(&mut self, c: Colour) {
        self.0 |= Self::bit(c);
    }

    pub fn remove(&mut self, c: Colour) {
        self.0 &= !Self::bit(c);
    }

    pub fn contains(self, c: Colour) -> bool {
        (1..=MAX_COLOURS).contains(&c) && self.0 & Self::bit(c) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, o: Self) -> Self {
        ColourSet(self.0 | o.0)
    }

    pub fn intersection(self, o: Self) -> Self {
        ColourSet(self.0 & o.0)
    }

    pub fn difference(self, o: Self) -> Self {
        ColourSet(self.0 & !o.0)
    }

    pub fn is_disjoint(self, o: Self) -> bool {
        self.0 & o.0 == 0
    }

    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    /// Smallest colour in the set.
    pub fn first(self) -> Option<Colour> {
        (self.0 != 0).then(|| self.0.trailing_zeros() + 1)
    }

    pub fn iter(self) -> impl Iterator<Item = Colour> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let c = bits.trailing_zeros();
            bits &= bits - 1;
            Some(c + 1)
        })
    }

    pub fn to_vec(self) -> Vec<Colour> {
        self.iter().collect()
    }
}

impl FromIterator<Colour> for ColourSet {
    fn from_iter<I: IntoIterator<Item = Colour>>(iter: I) -> Self {
        let mut s = ColourSet::empty();
        for c in iter {
            s.insert(c);
        }
        s
    }
}

impl serde::Serialize for ColourSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl fmt::Debug for ColourSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A proper or improper assignment of colours `1..=k` to some edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialColouring {
    k: Colour,
    assignment: Vec<Option<Colour>>,
}

impl PartialColouring {
    pub fn uncoloured(k: Colour, edge_count: usize) -> Result<Self> {
        Self::from_assignment(k, vec![None; edge_count])
    }

    pub fn from_assignment(k: Colour, assignment: Vec<Option<Colour>>) -> Result<Self> {
        if k == 0 || k > MAX_COLOURS {
            return Err(Error::input(format!(
                "number of colours must be in 1..={MAX_COLOURS}, got {k}"
            )));
        }
        if let Some((e, c)) = assignment
            .iter()
            .enumerate()
            .find_map(|(e, c)| c.filter(|&c| c == 0 || c > k).map(|c| (e, c)))
        {
            return Err(Error::input(format!(
                "edge {e} has colour {c} outside 1..={k}"
            )));
        }
        Ok(PartialColouring { k, assignment })
    }

    pub fn k(&self) -> Colour {
        self.k
    }

    pub fn edge_count(&self) -> usize {
        self.assignment.len()
    }

    pub fn colour(&self, e: EdgeId) -> Option<Colour> {
        self.assignment[e]
    }

    pub fn assignment(&self) -> &[Option<Colour>] {
        &self.assignment
    }

    pub fn set(&mut self, e: EdgeId, c: Option<Colour>) -> Result<()> {
        if let Some(c) = c {
            if c == 0 || c > self.k {
                return Err(Error::input(format!("colour {c} outside 1..={}", self.k)));
            }
        }
        self.assignment[e] = c;
        Ok(())
    }

    /// Same assignment with a larger palette.
    pub fn with_k(&self, k: Colour) -> Result<Self> {
        if k < self.k {
            return Err(Error::input("cannot shrink the palette"));
        }
        Self::from_assignment(k, self.assignment.clone())
    }

    pub fn uncoloured_edges(&self) -> Vec<EdgeId> {
        (0..self.assignment.len())
            .filter(|&e| self.assignment[e].is_none())
            .collect()
    }

    pub fn coloured_count(&self) -> usize {
        self.assignment.iter().filter(|c| c.is_some()).count()
    }

    /// Colours in `1..=k` used on no edge at `v`.
    pub fn missing_at(&self, g: &Multigraph, v: VertexId) -> ColourSet {
        let mut used = ColourSet::empty();
        for &e in g.incident(v) {
            if let Some(c) = self.assignment[e] {
                used.insert(c);
            }
        }
        ColourSet::full(self.k).difference(used)
    }

    /// First vertex with two equally coloured edges, with that colour.
    pub fn find_conflict(&self, g: &Multigraph) -> Option<(VertexId, Colour)> {
        for v in 0..g.vertex_count() {
            let mut seen = ColourSet::empty();
            for &e in g.incident(v) {
                if let Some(c) = self.assignment[e] {
                    if seen.contains(c) {
                        return Some((v, c));
                    }
                    seen.insert(c);
                }
            }
        }
        None
    }

    pub fn is_proper(&self, g: &Multigraph) -> Result<bool> {
        if self.assignment.len() != g.edge_count() {
            return Err(Error::input(format!(
                "colouring covers {} edges but the graph has {}",
                self.assignment.len(),
                g.edge_count()
            )));
        }
        if let Some(c) = self
            .assignment
            .iter()
            .flatten()
            .find(|&&c| c == 0 || c > self.k)
        {
            return Err(Error::input(format!("colour {c} outside 1..={}", self.k)));
        }
        Ok(self.find_conflict(g).is_none())
    }

    /// Whether distinct vertices of `s` have pairwise disjoint missing sets.
    pub fn is_elementary(&self, g: &Multigraph, s: &VertexSet) -> bool {
        let mut seen = ColourSet::empty();
        for &v in s {
            let m = self.missing_at(g, v);
            if !seen.is_disjoint(m) {
                return false;
            }
            seen = seen.union(m);
        }
        true
    }
}

/// Per-vertex lookup `colour -> incident edge`, valid for a proper colouring.
#[derive(Clone, Debug)]
pub struct ColourIndex {
    stride: usize,
    at: Vec<Option<EdgeId>>,
}

impl ColourIndex {
    pub fn new(g: &Multigraph, c: &PartialColouring) -> Self {
        let stride = c.k() as usize + 1;
        let mut at = vec![None; g.vertex_count() * stride];
        for (e, &(a, b)) in g.edges().iter().enumerate() {
            if let Some(col) = c.colour(e) {
                at[a * stride + col as usize] = Some(e);
                at[b * stride + col as usize] = Some(e);
            }
        }
        ColourIndex { stride, at }
    }

    pub fn edge(&self, v: VertexId, c: Colour) -> Option<EdgeId> {
        self.at[v * self.stride + c as usize]
    }

    pub(crate) fn set(&mut self, v: VertexId, c: Colour, e: Option<EdgeId>) {
        self.at[v * self.stride + c as usize] = e;
    }

    pub fn missing(&self, v: VertexId) -> ColourSet {
        (1..self.stride as Colour)
            .filter(|&c| self.edge(v, c).is_none())
            .collect()
    }
}

/// Greedy partial colouring: a seeded edge order, first-fit colours, then
/// repeated Kempe-chain repairs of uncoloured edges until none succeeds.
/// Maximality of the domain is not certified.
pub fn greedy_max_domain(g: &Multigraph, k: Colour, seed: u64) -> Result<PartialColouring> {
    let mut col = PartialColouring::uncoloured(k, g.edge_count())?;
    let mut order: Vec<EdgeId> = (0..g.edge_count()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut index = ColourIndex::new(g, &col);
    for &e in &order {
        let (a, b) = g.endpoints(e);
        if let Some(c) = index.missing(a).intersection(index.missing(b)).first() {
            col.assignment[e] = Some(c);
            index.set(a, c, Some(e));
            index.set(b, c, Some(e));
        }
    }
    loop {
        let mut improved = false;
        for e in col.uncoloured_edges() {
            if repair(g, &mut col, &mut index, e) {
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    Ok(col)
}

/// Try to colour the uncoloured edge `e` directly or after one Kempe switch
/// at either endpoint.
fn repair(g: &Multigraph, col: &mut PartialColouring, index: &mut ColourIndex, e: EdgeId) -> bool {
    let (u, v) = g.endpoints(e);
    let colour_edge = |col: &mut PartialColouring, index: &mut ColourIndex, c: Colour| {
        col.assignment[e] = Some(c);
        index.set(u, c, Some(e));
        index.set(v, c, Some(e));
    };
    if let Some(c) = index.missing(u).intersection(index.missing(v)).first() {
        colour_edge(col, index, c);
        return true;
    }
    for (x, y) in [(u, v), (v, u)] {
        for a in index.missing(y).iter() {
            for b in index.missing(x).iter() {
                // Walk the (a, b) chain leaving x along an a-edge.
                let chain = walk_chain(g, col, index, x, a, b);
                if chain.last_vertex == y {
                    continue;
                }
                for &f in &chain.edges {
                    let (p, q) = g.endpoints(f);
                    let old = col.assignment[f].expect("chain edges are coloured");
                    index.set(p, old, None);
                    index.set(q, old, None);
                }
                for &f in &chain.edges {
                    let (p, q) = g.endpoints(f);
                    let new = if col.assignment[f] == Some(a) { b } else { a };
                    col.assignment[f] = Some(new);
                    index.set(p, new, Some(f));
                    index.set(q, new, Some(f));
                }
                colour_edge(col, index, a);
                return true;
            }
        }
    }
    false
}

struct Walk {
    edges: Vec<EdgeId>,
    last_vertex: VertexId,
}

fn walk_chain(
    g: &Multigraph,
    col: &PartialColouring,
    index: &ColourIndex,
    start: VertexId,
    first: Colour,
    second: Colour,
) -> Walk {
    let mut edges = Vec::new();
    let mut at = start;
    let mut want = first;
    while let Some(f) = index.edge(at, want) {
        if edges.contains(&f) {
            break;
        }
        debug_assert_eq!(col.colour(f), Some(want));
        edges.push(f);
        at = g.other_end(f, at);
        want = if want == first { second } else { first };
    }
    Walk {
        edges,
        last_vertex: at,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn colour_set_basics() {
        let s: ColourSet = [1, 3, 64].into_iter().collect();
        assert_eq!(s.to_vec(), vec![1, 3, 64]);
        assert_eq!(s.len(), 3);
        assert!(s.contains(3) && !s.contains(2) && !s.contains(0));
        assert_eq!(ColourSet::full(3).to_vec(), vec![1, 2, 3]);
        assert_eq!(ColourSet::full(64).len(), 64);
        assert_eq!(s.first(), Some(1));
    }

    #[test]
    fn missing_at_isolated_vertex() {
        let g = Multigraph::new(2, []).unwrap();
        let c = PartialColouring::uncoloured(3, 0).unwrap();
        assert_eq!(c.missing_at(&g, 0).to_vec(), vec![1, 2, 3]);
    }

    #[test]
    fn properness() {
        let g = Multigraph::new(2, [(0, 1), (0, 1)]).unwrap();
        let none = PartialColouring::uncoloured(2, 2).unwrap();
        assert!(none.is_proper(&g).unwrap());
        let same = PartialColouring::from_assignment(2, vec![Some(1), Some(1)]).unwrap();
        assert!(!same.is_proper(&g).unwrap());
        assert_eq!(same.find_conflict(&g), Some((0, 1)));
        assert!(PartialColouring::from_assignment(2, vec![Some(3), None]).is_err());
    }

    #[test]
    fn elementary_singleton() {
        let g = Multigraph::new(3, [(0, 1)]).unwrap();
        let c = PartialColouring::uncoloured(2, 1).unwrap();
        assert!(c.is_elementary(&g, &[2].into()));
        assert!(!c.is_elementary(&g, &[0, 2].into()));
    }

    #[test]
    fn greedy_small_cases() {
        let edge = Multigraph::new(2, [(0, 1)]).unwrap();
        let c = greedy_max_domain(&edge, 1, 0).unwrap();
        assert_eq!(c.colour(0), Some(1));
        let path = Multigraph::new(3, [(0, 1), (1, 2)]).unwrap();
        let c = greedy_max_domain(&path, 2, 7).unwrap();
        assert_eq!(c.coloured_count(), 2);
        assert!(c.is_proper(&path).unwrap());
    }

    #[test]
    fn greedy_shannon_triangle_eight_of_nine() {
        // Any two edges of a triangle meet, so at most k of them are coloured.
        let t = Multigraph::shannon_triangle(3);
        for seed in 0..5 {
            let c = greedy_max_domain(&t, 8, seed).unwrap();
            assert!(c.is_proper(&t).unwrap());
            assert_eq!(c.coloured_count(), 8);
        }
    }

    #[test]
    fn greedy_is_locally_maximal() {
        let g =
            Multigraph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2), (1, 3)]).unwrap();
        let c = greedy_max_domain(&g, 3, 11).unwrap();
        assert!(c.is_proper(&g).unwrap());
        for e in c.uncoloured_edges() {
            let (a, b) = g.endpoints(e);
            assert!(c.missing_at(&g, a).is_disjoint(c.missing_at(&g, b)));
        }
    }
}
