//! Breadth-first search over the colourings reachable by Kempe switches
//! (and optionally single moves of the uncoloured edge), identifying
//! colourings that differ by a colour relabelling or a graph automorphism.
//!
//! A switch commutes with relabelling: if `ψ = σ ∘ φ ∘ π` for a colour
//! permutation `σ` and an automorphism `π`, the switches available at `ψ` are
//! the images of those at `φ`. Exploring one representative per class
//! therefore visits exactly the classes of all reachable colourings, and the
//! search terminates because there are finitely many classes.

pub mod canon;

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::colouring::{Colour, ColourSet, PartialColouring};
use crate::error::{Error, Result};
use crate::kempe::{bichromatic_components, kempe_switch, ComponentKind};
use crate::multigraph::{EdgeId, Multigraph};
use crate::tashkinov::{build_tree, TieBreak};

pub use canon::{canonical_fingerprint, canonical_form, rooted_fingerprint, CanonicalForm};

pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Clone, Debug)]
pub struct ExploreOptions {
    pub max_depth: Option<usize>,
    pub allow_e0_shift: bool,
    /// Maximum number of classes to visit.
    pub budget: usize,
    /// Worker threads; 1 runs on the calling thread.
    pub threads: usize,
}

impl Default for ExploreOptions {
    fn default() -> Self {
        ExploreOptions {
            max_depth: None,
            allow_e0_shift: false,
            budget: DEFAULT_BUDGET,
            threads: 1,
        }
    }
}

/// A colouring together with its uncoloured edge `e0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct State {
    pub colouring: PartialColouring,
    pub e0: EdgeId,
}

#[derive(Clone, Debug)]
pub struct CanonicalState {
    pub form: CanonicalForm,
    pub representative: State,
    pub depth: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StateSummary {
    /// SHA-256 of the canonical form, for display.
    pub fingerprint: String,
    pub depth: usize,
    pub w_size: usize,
    pub defective: Vec<Colour>,
    pub elementary: bool,
    /// A colour is missing at both ends of `e0`.
    pub extendable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExplorationReport {
    pub states_visited: usize,
    pub max_w_size: usize,
    pub extendable_found: bool,
    pub defect_free_found: bool,
    /// False when the budget or depth limit stopped the search.
    pub complete: bool,
    pub per_state: Vec<StateSummary>,
}

impl ExplorationReport {
    pub fn w_sizes(&self) -> std::collections::BTreeSet<usize> {
        self.per_state.iter().map(|s| s.w_size).collect()
    }
}

pub fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn is_extendable(g: &Multigraph, c: &PartialColouring, e0: EdgeId) -> bool {
    let (a, b) = g.endpoints(e0);
    !c.missing_at(g, a).is_disjoint(c.missing_at(g, b))
}

/// Colourings one Kempe switch away. Switches on a doubled edge are skipped
/// once it is confirmed that the switch only exchanges two parallel edges,
/// which leaves the coloured multigraph unchanged.
pub fn neighbours(g: &Multigraph, c: &PartialColouring) -> Result<Vec<PartialColouring>> {
    let mut out = Vec::new();
    for a in 1..=c.k() {
        for b in a + 1..=c.k() {
            for comp in bichromatic_components(c, g, a, b)? {
                if comp.kind == ComponentKind::DoubleEdge
                    && g.endpoints(comp.edges[0]) == g.endpoints(comp.edges[1])
                {
                    continue;
                }
                out.push(kempe_switch(c, g, &comp)?);
            }
        }
    }
    Ok(out)
}

/// Moves of the uncoloured edge: uncolour `f` and give `e0` a colour then
/// missing at both of its ends; `f` becomes the new `e0`.
pub fn e0_shifts(g: &Multigraph, c: &PartialColouring, e0: EdgeId) -> Vec<State> {
    let (a, b) = g.endpoints(e0);
    let mut out = Vec::new();
    for f in 0..g.edge_count() {
        let Some(old) = c.colour(f) else { continue };
        let mut d = c.clone();
        d.set(f, None).expect("uncolouring is always valid");
        let free: ColourSet = d.missing_at(g, a).intersection(d.missing_at(g, b));
        for col in free.iter() {
            let mut e = d.clone();
            e.set(e0, Some(col)).expect("colour in range");
            if col == old && g.endpoints(f) == g.endpoints(e0) {
                // Relabels a parallel edge only.
                continue;
            }
            out.push(State {
                colouring: e,
                e0: f,
            });
        }
    }
    out
}

fn successors(g: &Multigraph, s: &State, opts: &ExploreOptions) -> Result<Vec<State>> {
    let mut out: Vec<State> = neighbours(g, &s.colouring)?
        .into_iter()
        .map(|c| State {
            colouring: c,
            e0: s.e0,
        })
        .collect();
    if opts.allow_e0_shift {
        out.extend(e0_shifts(g, &s.colouring, s.e0));
    }
    Ok(out)
}

fn summarize(g: &Multigraph, st: &CanonicalState) -> Result<StateSummary> {
    let s = &st.representative;
    let t = build_tree(&s.colouring, g, s.e0, TieBreak::Lexicographic)?;
    Ok(StateSummary {
        fingerprint: hex(&Sha256::digest(st.form.to_bytes())),
        depth: st.depth,
        w_size: t.w_set.len(),
        defective: t.defective.keys().copied().collect(),
        elementary: t.elementary,
        extendable: is_extendable(g, &s.colouring, s.e0),
    })
}

fn with_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if threads <= 1 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::input(format!("cannot start {threads} threads: {e}")))?;
    Ok(pool.install(f))
}

/// Visit every class reachable from `(c, e0)`. The report is sorted by
/// fingerprint and does not depend on the thread count.
pub fn explore(
    g: &Multigraph,
    c: &PartialColouring,
    e0: EdgeId,
    opts: &ExploreOptions,
) -> Result<ExplorationReport> {
    if !c.is_proper(g)? {
        return Err(Error::precondition("colouring is not proper"));
    }
    if e0 >= g.edge_count() || c.colour(e0).is_some() {
        return Err(Error::input(format!(
            "e0 = {e0} must be an uncoloured edge"
        )));
    }
    let threads = opts.threads.max(1);
    let (classes, complete) = with_pool(threads, || bfs(g, c, e0, opts, threads > 1))??;
    let mut per_state = classes
        .iter()
        .map(|s| summarize(g, s))
        .collect::<Result<Vec<_>>>()?;
    per_state.sort_by(|a, b| a.fingerprint.cmp(&b.fingerprint));
    Ok(ExplorationReport {
        states_visited: per_state.len(),
        max_w_size: per_state.iter().map(|s| s.w_size).max().unwrap_or(0),
        extendable_found: per_state.iter().any(|s| s.extendable),
        defect_free_found: per_state.iter().any(|s| s.defective.is_empty()),
        complete,
        per_state,
    })
}

fn bfs(
    g: &Multigraph,
    c: &PartialColouring,
    e0: EdgeId,
    opts: &ExploreOptions,
    parallel: bool,
) -> Result<(Vec<CanonicalState>, bool)> {
    let start = State {
        colouring: c.clone(),
        e0,
    };
    let root = CanonicalState {
        form: canonical_form(g, c, Some(e0)),
        representative: start,
        depth: 0,
    };
    let mut seen: HashMap<CanonicalForm, usize> = HashMap::new();
    seen.insert(root.form.clone(), 0);
    let mut classes = vec![root];
    let mut frontier = vec![0usize];
    let mut depth = 0;
    let mut complete = true;
    while !frontier.is_empty() {
        if opts.max_depth.is_some_and(|d| depth >= d) {
            complete = false;
            break;
        }
        let expand = |&i: &usize| -> Result<Vec<(CanonicalForm, State)>> {
            let succ = successors(g, &classes[i].representative, opts)?;
            Ok(succ
                .into_iter()
                .map(|s| (canonical_form(g, &s.colouring, Some(s.e0)), s))
                .collect())
        };
        let found: Vec<Vec<(CanonicalForm, State)>> = if parallel {
            frontier.par_iter().map(expand).collect::<Result<_>>()?
        } else {
            frontier.iter().map(expand).collect::<Result<_>>()?
        };
        depth += 1;
        let mut next = Vec::new();
        'merge: for batch in found {
            for (form, s) in batch {
                if seen.contains_key(&form) {
                    continue;
                }
                if classes.len() >= opts.budget {
                    complete = false;
                    break 'merge;
                }
                seen.insert(form.clone(), classes.len());
                next.push(classes.len());
                classes.push(CanonicalState {
                    form,
                    representative: s,
                    depth,
                });
            }
        }
        if !complete {
            break;
        }
        frontier = next;
    }
    Ok((classes, complete))
}

/// Exploration without any identification of equivalent colourings, for
/// cross-checking on small inputs. Returns the set of `|W|` values reached,
/// or `None` if more than `budget` colourings are reachable.
pub fn brute_force_w_sizes(
    g: &Multigraph,
    c: &PartialColouring,
    e0: EdgeId,
    allow_e0_shift: bool,
    budget: usize,
) -> Result<Option<std::collections::BTreeSet<usize>>> {
    let opts = ExploreOptions {
        allow_e0_shift,
        ..Default::default()
    };
    let start = State {
        colouring: c.clone(),
        e0,
    };
    let key = |s: &State| (s.colouring.assignment().to_vec(), s.e0);
    let mut seen = std::collections::HashSet::new();
    seen.insert(key(&start));
    let mut queue = std::collections::VecDeque::from([start]);
    let mut sizes = std::collections::BTreeSet::new();
    while let Some(s) = queue.pop_front() {
        sizes.insert(
            build_tree(&s.colouring, g, s.e0, TieBreak::Lexicographic)?
                .w_set
                .len(),
        );
        for t in successors(g, &s, &opts)? {
            if seen.insert(key(&t)) {
                if seen.len() > budget {
                    return Ok(None);
                }
                queue.push_back(t);
            }
        }
    }
    Ok(Some(sizes))
}
