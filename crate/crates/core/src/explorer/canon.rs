//! Canonical forms of coloured multigraphs under vertex relabelling and
//! colour relabelling.
//!
//! Vertices are refined by an ordered partition until stable, using colour
//! "types" (the multiset of cell pairs a colour class covers) so that the
//! refinement never depends on colour names. Remaining ties are broken by
//! individualising vertices; every discrete partition yields a leaf form and
//! the least leaf form is the canonical form. Automorphisms found by equal
//! leaves prune sibling branches in the same orbit.

use crate::colouring::PartialColouring;
use crate::multigraph::{EdgeId, Multigraph, VertexId};

/// Class index of `e0` and of the other uncoloured edges; colour classes
/// follow.
const E0_CLASS: usize = 0;
const UNCOLOURED_CLASS: usize = 1;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(pub Vec<u32>);

impl CanonicalForm {
    pub fn to_bytes(&self) -> Vec<u8> {
        self.0.iter().flat_map(|w| w.to_le_bytes()).collect()
    }
}

/// Form invariant under colour permutation and graph automorphism. All
/// uncoloured edges are treated alike.
pub fn canonical_fingerprint(g: &Multigraph, c: &PartialColouring) -> Vec<u8> {
    canonical_form(g, c, None).to_bytes()
}

/// As [`canonical_fingerprint`], but `e0` is distinguished from the other
/// uncoloured edges.
pub fn rooted_fingerprint(g: &Multigraph, c: &PartialColouring, e0: EdgeId) -> Vec<u8> {
    canonical_form(g, c, Some(e0)).to_bytes()
}

pub fn canonical_form(g: &Multigraph, c: &PartialColouring, e0: Option<EdgeId>) -> CanonicalForm {
    Canon::new(g, c, e0).run()
}

struct Canon<'a> {
    g: &'a Multigraph,
    k: u32,
    /// Edges of each class; classes 0 and 1 are fixed, the rest are colours.
    classes: Vec<Vec<EdgeId>>,
    edge_class: Vec<usize>,
    best: Option<(Vec<u32>, Vec<VertexId>)>,
    first: Option<(Vec<u32>, Vec<VertexId>)>,
    automorphisms: Vec<Vec<VertexId>>,
}

type Cells = Vec<Vec<VertexId>>;

impl<'a> Canon<'a> {
    fn new(g: &'a Multigraph, c: &PartialColouring, e0: Option<EdgeId>) -> Self {
        let k = c.k() as usize;
        let mut classes = vec![Vec::new(); k + 2];
        let mut edge_class = vec![0; g.edge_count()];
        for e in 0..g.edge_count() {
            let cl = match c.colour(e) {
                Some(col) => col as usize + 1,
                None if Some(e) == e0 => E0_CLASS,
                None => UNCOLOURED_CLASS,
            };
            classes[cl].push(e);
            edge_class[e] = cl;
        }
        Canon {
            g,
            k: c.k(),
            classes,
            edge_class,
            best: None,
            first: None,
            automorphisms: Vec::new(),
        }
    }

    fn run(mut self) -> CanonicalForm {
        let n = self.g.vertex_count();
        let mut cells: Cells = if n == 0 {
            Vec::new()
        } else {
            vec![(0..n).collect()]
        };
        self.refine(&mut cells);
        self.search(cells, &mut Vec::new());
        let (form, _) = self.best.expect("at least one leaf");
        CanonicalForm(form)
    }

    fn cell_index(&self, cells: &Cells) -> Vec<u32> {
        let mut of = vec![0u32; self.g.vertex_count()];
        for (i, cell) in cells.iter().enumerate() {
            for &v in cell {
                of[v] = i as u32;
            }
        }
        of
    }

    /// Colour-name-free class type for every edge.
    fn edge_types(&self, of: &[u32]) -> Vec<u32> {
        let mut sigs: Vec<(Vec<(u32, u32)>, usize)> = Vec::new();
        for (cl, edges) in self.classes.iter().enumerate().skip(2) {
            if edges.is_empty() {
                continue;
            }
            let mut sig: Vec<(u32, u32)> = edges
                .iter()
                .map(|&e| {
                    let (a, b) = self.g.endpoints(e);
                    let (x, y) = (of[a], of[b]);
                    (x.min(y), x.max(y))
                })
                .collect();
            sig.sort_unstable();
            sigs.push((sig, cl));
        }
        sigs.sort();
        let mut class_type = vec![0u32; self.classes.len()];
        class_type[UNCOLOURED_CLASS] = 1;
        let mut rank = 2;
        for i in 0..sigs.len() {
            if i > 0 && sigs[i].0 != sigs[i - 1].0 {
                rank += 1;
            }
            class_type[sigs[i].1] = rank;
        }
        self.edge_class.iter().map(|&cl| class_type[cl]).collect()
    }

    /// Split cells by neighbourhood signatures until nothing changes.
    fn refine(&self, cells: &mut Cells) {
        loop {
            let of = self.cell_index(cells);
            let types = self.edge_types(&of);
            let before = cells.len();
            let mut next: Cells = Vec::with_capacity(before);
            for cell in cells.iter() {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<(u32, u32)>, VertexId)> = cell
                    .iter()
                    .map(|&v| {
                        let mut sig: Vec<(u32, u32)> = self
                            .g
                            .incident(v)
                            .iter()
                            .map(|&e| (types[e], of[self.g.other_end(e, v)]))
                            .collect();
                        sig.sort_unstable();
                        (sig, v)
                    })
                    .collect();
                keyed.sort();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                        start = i;
                    }
                }
            }
            *cells = next;
            if cells.len() == before {
                return;
            }
        }
    }

    fn leaf_form(&self, cells: &Cells) -> (Vec<u32>, Vec<VertexId>) {
        let of = self.cell_index(cells);
        let order: Vec<VertexId> = cells.iter().map(|c| c[0]).collect();
        let pairs = |edges: &[EdgeId]| -> Vec<u32> {
            let mut ps: Vec<(u32, u32)> = edges
                .iter()
                .map(|&e| {
                    let (a, b) = self.g.endpoints(e);
                    let (x, y) = (of[a], of[b]);
                    (x.min(y), x.max(y))
                })
                .collect();
            ps.sort_unstable();
            let mut out = Vec::with_capacity(2 * ps.len() + 1);
            out.push(ps.len() as u32);
            out.extend(ps.into_iter().flat_map(|(a, b)| [a, b]));
            out
        };
        let mut colour_classes: Vec<Vec<u32>> = self.classes[2..]
            .iter()
            .filter(|e| !e.is_empty())
            .map(|e| pairs(e))
            .collect();
        colour_classes.sort_unstable();
        let mut form = vec![self.g.vertex_count() as u32, self.k];
        form.extend(pairs(&self.classes[E0_CLASS]));
        form.extend(pairs(&self.classes[UNCOLOURED_CLASS]));
        form.push(colour_classes.len() as u32);
        for cl in colour_classes {
            form.extend(cl);
        }
        (form, order)
    }

    fn note_automorphism(&mut self, a: &[VertexId], b: &[VertexId]) {
        let mut perm = vec![0; a.len()];
        for (p, &v) in a.iter().enumerate() {
            perm[v] = b[p];
        }
        if perm.iter().enumerate().any(|(i, &j)| i != j) {
            self.automorphisms.push(perm);
        }
    }

    fn search(&mut self, cells: Cells, prefix: &mut Vec<VertexId>) {
        if cells.iter().all(|c| c.len() == 1) {
            let (form, order) = self.leaf_form(&cells);
            if let Some((f, o)) = &self.first {
                if *f == form {
                    let o = o.clone();
                    self.note_automorphism(&o, &order);
                    return;
                }
            } else {
                self.first = Some((form.clone(), order.clone()));
            }
            match &self.best {
                Some((b, o)) if *b == form => {
                    let o = o.clone();
                    self.note_automorphism(&o, &order);
                }
                Some((b, _)) if *b < form => {}
                _ => self.best = Some((form, order)),
            }
            return;
        }
        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i)
            .expect("non-discrete partition");
        let candidates = cells[target].clone();
        let mut tried: Vec<VertexId> = Vec::new();
        for &v in &candidates {
            if !tried.is_empty() && self.same_orbit(prefix, &tried, v) {
                continue;
            }
            tried.push(v);
            let mut child = cells.clone();
            let rest: Vec<VertexId> = child[target].iter().copied().filter(|&u| u != v).collect();
            child[target] = vec![v];
            child.insert(target + 1, rest);
            self.refine(&mut child);
            prefix.push(v);
            self.search(child, prefix);
            prefix.pop();
        }
    }

    /// Whether an automorphism fixing `prefix` pointwise joins `v` to an
    /// already explored sibling.
    fn same_orbit(&self, prefix: &[VertexId], tried: &[VertexId], v: VertexId) -> bool {
        let n = self.g.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for perm in &self.automorphisms {
            if prefix.iter().all(|&u| perm[u] == u) {
                any = true;
                for (x, &y) in perm.iter().enumerate() {
                    let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                    if rx != ry {
                        parent[rx] = ry;
                    }
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v);
        tried.iter().any(|&t| find(&mut parent, t) == rv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::Colour;

    /// Oracle: minimum over every vertex permutation and colour permutation
    /// of the sorted labelled edge list.
    fn brute_form(
        g: &Multigraph,
        c: &PartialColouring,
        e0: Option<EdgeId>,
    ) -> Vec<(u32, u32, u32)> {
        let n = g.vertex_count();
        let k = c.k() as usize;
        let mut best: Option<Vec<(u32, u32, u32)>> = None;
        let vperms = permutations(n);
        let cperms = permutations(k);
        for vp in &vperms {
            for cp in &cperms {
                let mut list: Vec<(u32, u32, u32)> = (0..g.edge_count())
                    .map(|e| {
                        let (a, b) = g.endpoints(e);
                        let (x, y) = (vp[a] as u32, vp[b] as u32);
                        let lab = match c.colour(e) {
                            Some(col) => cp[col as usize - 1] as u32 + 2,
                            None if Some(e) == e0 => 0,
                            None => 1,
                        };
                        (lab, x.min(y), x.max(y))
                    })
                    .collect();
                list.sort_unstable();
                if best.as_ref().is_none_or(|b| list < *b) {
                    best = Some(list);
                }
            }
        }
        best.unwrap()
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    fn random_instance(rng: &mut impl rand::Rng) -> (Multigraph, PartialColouring) {
        let n = rng.gen_range(2..=5);
        let m = rng.gen_range(1..=8);
        let edges: Vec<(usize, usize)> = (0..m)
            .map(|_| {
                let a = rng.gen_range(0..n);
                (a, (a + rng.gen_range(1..n)) % n)
            })
            .collect();
        let g = Multigraph::new(n, edges).unwrap();
        let k: Colour = rng.gen_range(1..=4);
        let seed = rng.gen();
        let c = crate::colouring::greedy_max_domain(&g, k, seed).unwrap();
        (g, c)
    }

    fn relabel(
        g: &Multigraph,
        c: &PartialColouring,
        vp: &[usize],
        cp: &[Colour],
        rng: &mut impl rand::Rng,
    ) -> (Multigraph, PartialColouring, Vec<usize>) {
        use rand::seq::SliceRandom;
        let mut ids: Vec<usize> = (0..g.edge_count()).collect();
        ids.shuffle(rng);
        let edges: Vec<_> = ids
            .iter()
            .map(|&e| {
                let (a, b) = g.endpoints(e);
                (vp[a], vp[b])
            })
            .collect();
        let assignment = ids
            .iter()
            .map(|&e| c.colour(e).map(|x| cp[x as usize - 1]))
            .collect();
        let new_id_of: Vec<usize> = {
            let mut inv = vec![0; ids.len()];
            for (new, &old) in ids.iter().enumerate() {
                inv[old] = new;
            }
            inv
        };
        (
            Multigraph::new(g.vertex_count(), edges).unwrap(),
            PartialColouring::from_assignment(c.k(), assignment).unwrap(),
            new_id_of,
        )
    }

    #[test]
    fn agrees_with_brute_force_equivalence() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let mut samples = Vec::new();
        for _ in 0..60 {
            let (g, c) = random_instance(&mut rng);
            let e0 = c.uncoloured_edges().first().copied();
            samples.push((g, c, e0));
        }
        // Equal canonical forms exactly when the brute-force forms are equal,
        // within groups sharing vertex and colour counts.
        let mut compared = [0usize; 2];
        let brute: Vec<_> = samples
            .iter()
            .map(|(g, c, e0)| brute_form(g, c, *e0))
            .collect();
        for i in 0..samples.len() {
            let (g, c, e0) = &samples[i];
            let mut vp: Vec<usize> = (0..g.vertex_count()).collect();
            vp.shuffle(&mut rng);
            let mut cp: Vec<Colour> = (1..=c.k()).collect();
            cp.shuffle(&mut rng);
            let (h, d, ids) = relabel(g, c, &vp, &cp, &mut rng);
            let e0h = e0.map(|e| ids[e]);
            assert_eq!(canonical_form(g, c, *e0), canonical_form(&h, &d, e0h));
            for (j, (g2, c2, f0)) in samples[..i].iter().enumerate() {
                if g2.vertex_count() != g.vertex_count() || c2.k() != c.k() {
                    continue;
                }
                let same = brute[i] == brute[j];
                compared[same as usize] += 1;
                assert_eq!(
                    same,
                    canonical_form(g, c, *e0) == canonical_form(g2, c2, *f0)
                );
            }
        }
        assert!(compared[0] > 50 && compared[1] > 0, "{compared:?}");
    }

    #[test]
    fn colour_swap_is_invisible() {
        let g = Multigraph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let c =
            PartialColouring::from_assignment(2, vec![Some(1), Some(2), Some(1), Some(2)]).unwrap();
        let d =
            PartialColouring::from_assignment(2, vec![Some(2), Some(1), Some(2), Some(1)]).unwrap();
        assert_eq!(canonical_fingerprint(&g, &c), canonical_fingerprint(&g, &d));
        let path =
            PartialColouring::from_assignment(2, vec![Some(1), Some(2), Some(1), None]).unwrap();
        assert_ne!(
            canonical_fingerprint(&g, &c),
            canonical_fingerprint(&g, &path)
        );
    }

    #[test]
    fn e0_is_distinguished() {
        // A pendant uncoloured edge and an inner one are not interchangeable.
        let g = Multigraph::new(4, [(0, 1), (0, 2), (2, 3)]).unwrap();
        let c = PartialColouring::from_assignment(1, vec![None, None, Some(1)]).unwrap();
        assert_ne!(rooted_fingerprint(&g, &c, 0), rooted_fingerprint(&g, &c, 1));
        // The two end edges of a path are swapped by its reflection.
        let h = Multigraph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let s = PartialColouring::from_assignment(1, vec![None, Some(1), None]).unwrap();
        assert_eq!(rooted_fingerprint(&h, &s, 0), rooted_fingerprint(&h, &s, 2));
    }
}
