//! Maximal Tashkinov trees and the colour-escalation driver.
//!
//! Starting from an uncoloured edge `e0`, a vertex `v` outside the current
//! vertex set `W` joins whenever some edge between `W` and `v` carries a
//! colour missing at a vertex of `W`. The closure `W` does not depend on the
//! order in which vertices are added.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::colouring::{greedy_max_domain, Colour, ColourSet, PartialColouring};
use crate::density::{density_of, DensityCertificate};
use crate::error::{Error, Result};
use crate::multigraph::{EdgeId, Multigraph, VertexId, VertexSet};

/// How to pick the next tree edge among all admissible ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TieBreak {
    /// Least `(colour, edge id)`.
    Lexicographic,
    /// Greatest `(colour, edge id)`.
    ReverseLexicographic,
    /// Uniform choice from a seeded generator.
    Random(u64),
    /// Prefer colours already on the tree, then least `(colour, edge id)`.
    /// A greedy way to keep the used-colour set small.
    MinimizeUsed,
}

impl TieBreak {
    /// `count` distinct policies: the three deterministic ones, then seeds.
    pub fn family(count: usize) -> Vec<TieBreak> {
        let mut out = vec![
            TieBreak::Lexicographic,
            TieBreak::ReverseLexicographic,
            TieBreak::MinimizeUsed,
        ];
        out.extend((0..).map(TieBreak::Random).take(count.saturating_sub(3)));
        out.truncate(count);
        out
    }

    pub fn parse(s: &str) -> Result<TieBreak> {
        match s {
            "lex" | "lexicographic" => Ok(TieBreak::Lexicographic),
            "revlex" | "reverse-lexicographic" => Ok(TieBreak::ReverseLexicographic),
            "min-used" | "minimize-used" => Ok(TieBreak::MinimizeUsed),
            _ => match s.strip_prefix("random:") {
                Some(seed) => seed
                    .parse()
                    .map(TieBreak::Random)
                    .map_err(|_| Error::input(format!("bad seed in policy `{s}`"))),
                None => Err(Error::input(format!(
                    "unknown policy `{s}` (lex, revlex, min-used, random:SEED)"
                ))),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeEdge {
    pub edge: EdgeId,
    pub colour: Colour,
    /// Vertex joined by this edge.
    pub added: VertexId,
    /// A vertex already in the tree at which `colour` was missing.
    pub witness: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TashkinovState {
    pub e0: EdgeId,
    /// Coloured tree edges in insertion order; `e0` itself is not repeated.
    pub tree_edges: Vec<TreeEdge>,
    /// Vertices in the order they joined, ends of `e0` first.
    pub order: Vec<VertexId>,
    pub w_set: VertexSet,
    pub used_colours: ColourSet,
    pub missing_union: ColourSet,
    /// Colours on at least two boundary edges of `W`, with boundary counts.
    pub defective: BTreeMap<Colour, usize>,
    pub elementary: bool,
    /// `k >= Δ + 1`.
    pub within_preconditions: bool,
}

impl TashkinovState {
    /// All tree edges, `e0` first.
    pub fn edge_ids(&self) -> Vec<EdgeId> {
        std::iter::once(self.e0)
            .chain(self.tree_edges.iter().map(|t| t.edge))
            .collect()
    }

    pub fn defective_set(&self) -> ColourSet {
        self.defective.keys().copied().collect()
    }
}

pub fn build_tree(
    c: &PartialColouring,
    g: &Multigraph,
    e0: EdgeId,
    tie_break: TieBreak,
) -> Result<TashkinovState> {
    if e0 >= g.edge_count() || c.edge_count() != g.edge_count() {
        return Err(Error::input(format!(
            "edge {e0} is not an edge of the graph"
        )));
    }
    if let Some(col) = c.colour(e0) {
        return Err(Error::input(format!("e0 = edge {e0} is coloured {col}")));
    }
    let n = g.vertex_count();
    let missing: Vec<ColourSet> = (0..n).map(|v| c.missing_at(g, v)).collect();
    let (a, b) = g.endpoints(e0);
    let mut inside = vec![false; n];
    inside[a] = true;
    inside[b] = true;
    let mut order = vec![a, b];
    let mut m_union = missing[a].union(missing[b]);
    let mut used = ColourSet::empty();
    let mut tree_edges = Vec::new();
    let mut rng = match tie_break {
        TieBreak::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    loop {
        let mut candidates: Vec<(Colour, EdgeId, VertexId)> = Vec::new();
        for &u in &order {
            for &f in g.incident(u) {
                let w = g.other_end(f, u);
                if inside[w] {
                    continue;
                }
                if let Some(col) = c.colour(f) {
                    if m_union.contains(col) {
                        candidates.push((col, f, w));
                    }
                }
            }
        }
        if candidates.is_empty() {
            break;
        }
        candidates.sort_unstable();
        candidates.dedup();
        let (col, f, w) = match tie_break {
            TieBreak::Lexicographic => candidates[0],
            TieBreak::ReverseLexicographic => *candidates.last().expect("non-empty"),
            TieBreak::Random(_) => *candidates
                .choose(rng.as_mut().expect("seeded"))
                .expect("non-empty"),
            TieBreak::MinimizeUsed => candidates
                .iter()
                .copied()
                .find(|&(col, _, _)| used.contains(col))
                .unwrap_or(candidates[0]),
        };
        let witness = *order
            .iter()
            .find(|&&u| missing[u].contains(col))
            .expect("colour is missing somewhere in W");
        inside[w] = true;
        order.push(w);
        m_union = m_union.union(missing[w]);
        used.insert(col);
        tree_edges.push(TreeEdge {
            edge: f,
            colour: col,
            added: w,
            witness,
        });
    }
    let w_set: VertexSet = order.iter().copied().collect();
    let defective = defective_colours(c, g, &w_set);
    let delta = g.max_degree()?;
    Ok(TashkinovState {
        e0,
        tree_edges,
        order,
        elementary: c.is_elementary(g, &w_set),
        w_set,
        used_colours: used,
        missing_union: m_union,
        defective,
        within_preconditions: c.k() as usize > delta,
    })
}

/// Whether every policy produces the same vertex set.
pub fn w_set_invariance(
    c: &PartialColouring,
    g: &Multigraph,
    e0: EdgeId,
    policies: &[TieBreak],
) -> Result<bool> {
    let mut first: Option<VertexSet> = None;
    for &p in policies {
        let w = build_tree(c, g, e0, p)?.w_set;
        match &first {
            None => first = Some(w),
            Some(f) if *f != w => return Ok(false),
            Some(_) => {}
        }
    }
    Ok(true)
}

/// Colours on two or more edges leaving `w`, with their boundary counts.
pub fn defective_colours(
    c: &PartialColouring,
    g: &Multigraph,
    w: &VertexSet,
) -> BTreeMap<Colour, usize> {
    let mut counts: BTreeMap<Colour, usize> = BTreeMap::new();
    for e in g.boundary_edges(w) {
        if let Some(col) = c.colour(e) {
            *counts.entry(col).or_default() += 1;
        }
    }
    counts.retain(|_, n| *n >= 2);
    counts
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "step", rename_all = "kebab-case")]
pub enum PipelineStep {
    /// Every edge got a colour, so `χ' <= k`.
    Complete { k: Colour },
    /// `W` is elementary with no defective colour: `χ' >= ceiling > k`.
    Certificate {
        k: Colour,
        e0: EdgeId,
        certificate: DensityCertificate,
    },
    BlockedDefective {
        k: Colour,
        e0: EdgeId,
        w_size: usize,
        defective: BTreeMap<Colour, usize>,
    },
    NonElementary {
        k: Colour,
        e0: EdgeId,
        w_size: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    /// A density certificate matched by a complete colouring.
    Determined {
        chromatic_index: Colour,
        certificate: DensityCertificate,
    },
    /// A complete colouring without a matching certificate.
    Colourable {
        k: Colour,
    },
    /// Stopped at a tree with a defective colour.
    Blocked {
        k: Colour,
        defective: BTreeMap<Colour, usize>,
    },
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PipelineReport {
    pub steps: Vec<PipelineStep>,
    pub verdict: Verdict,
}

/// Try `k = start_k, ...` up to `max_k`: colour greedily (or use `supplied`
/// for its own `k`), grow `W` from the first uncoloured edge, and either
/// finish, stop at a defective colour, or raise `k` to the certified lower
/// bound and try again.
pub fn escalation_pipeline(
    g: &Multigraph,
    start_k: Colour,
    max_k: Colour,
    seed: u64,
    supplied: Option<&PartialColouring>,
) -> Result<PipelineReport> {
    let delta = g.max_degree()? as Colour;
    if start_k <= delta {
        return Err(Error::precondition(format!(
            "start_k = {start_k} must be at least Δ + 1 = {}",
            delta + 1
        )));
    }
    let mut steps = Vec::new();
    let mut best: Option<DensityCertificate> = None;
    let mut k = start_k;
    while k <= max_k {
        let col = match supplied {
            Some(s) if s.k() == k => s.clone(),
            _ => greedy_max_domain(g, k, seed)?,
        };
        let Some(&e0) = col.uncoloured_edges().first() else {
            steps.push(PipelineStep::Complete { k });
            let verdict = match best {
                Some(cert) if cert.ceiling == k as u64 => Verdict::Determined {
                    chromatic_index: k,
                    certificate: cert,
                },
                _ => Verdict::Colourable { k },
            };
            return Ok(PipelineReport { steps, verdict });
        };
        let st = build_tree(&col, g, e0, TieBreak::Lexicographic)?;
        if !st.elementary {
            steps.push(PipelineStep::NonElementary {
                k,
                e0,
                w_size: st.w_set.len(),
            });
            k += 1;
            continue;
        }
        if !st.defective.is_empty() {
            steps.push(PipelineStep::BlockedDefective {
                k,
                e0,
                w_size: st.w_set.len(),
                defective: st.defective.clone(),
            });
            return Ok(PipelineReport {
                steps,
                verdict: Verdict::Blocked {
                    k,
                    defective: st.defective,
                },
            });
        }
        let cert = density_of(g, &st.w_set)?;
        if cert.ceiling <= k as u64 {
            return Err(Error::Violation(format!(
                "elementary defect-free W of size {} gives only ⌈ρ⌉ = {} <= k = {k}",
                st.w_set.len(),
                cert.ceiling
            )));
        }
        steps.push(PipelineStep::Certificate {
            k,
            e0,
            certificate: cert.clone(),
        });
        let next = cert.ceiling as Colour;
        if best.as_ref().is_none_or(|b| cert.ceiling > b.ceiling) {
            best = Some(cert);
        }
        k = next.max(k + 1);
    }
    Ok(PipelineReport {
        steps,
        verdict: Verdict::Inconclusive,
    })
}
