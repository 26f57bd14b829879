//! Backtracking reconstruction of a coloured multigraph from a witness spec.
//!
//! Every colour class is a perfect matching on the vertices not missing that
//! colour. Classes are filled one vertex at a time; each new edge is checked
//! against the already completed classes, rejecting a long cycle or a closed
//! path the pair claims forbid. Fully specified paths and cycles fix their
//! edges before the search starts. A completed assignment gets `e0` and is
//! accepted only if [`verify`] passes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::colouring::{Colour, PartialColouring};
use crate::error::{Error, Result};
use crate::kempe::ComponentKind;
use crate::multigraph::{Labels, Multigraph};

use super::spec::{Profile, WitnessSpec};
use super::verify::{shape_problems, verify, Resolved, Shape};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SynthOptions {
    /// Maximum number of search nodes (edge placements and `e0` trials),
    /// summed over restarts.
    pub budget: u64,
    /// Seeds the tie shuffling of restarts after the first.
    pub seed: u64,
}

impl Default for SynthOptions {
    fn default() -> Self {
        SynthOptions {
            budget: DEFAULT_BUDGET,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug)]
pub enum SynthOutcome {
    Found {
        graph: Multigraph,
        labels: Labels,
        colouring: PartialColouring,
        nodes: u64,
    },
    /// `exhausted` is true when the whole search space was covered, so no
    /// witness exists; false means the budget ran out first.
    NotFound { nodes: u64, exhausted: bool },
}

#[derive(Clone, Debug, Serialize)]
pub struct SynthSummary {
    pub found: bool,
    pub exhausted: bool,
    pub nodes: u64,
}

impl SynthOutcome {
    pub fn summary(&self) -> SynthSummary {
        match self {
            SynthOutcome::Found { nodes, .. } => SynthSummary {
                found: true,
                exhausted: false,
                nodes: *nodes,
            },
            SynthOutcome::NotFound { nodes, exhausted } => SynthSummary {
                found: false,
                exhausted: *exhausted,
                nodes: *nodes,
            },
        }
    }
}

const NONE: usize = usize::MAX;

enum Stop {
    Budget,
    Restart,
}

/// Node limit of the first restart; later ones scale by the Luby sequence.
const RESTART_BASE: u64 = 20_000;

fn luby(i: u64) -> u64 {
    // 1 1 2 1 1 2 4 1 1 2 ...
    let mut k = 1;
    while (1u64 << k) - 1 < i {
        k += 1;
    }
    if (1u64 << k) - 1 == i {
        1 << (k - 1)
    } else {
        luby(i - (1u64 << (k - 1)) + 1)
    }
}

struct Search<'a> {
    spec: &'a WitnessSpec,
    n: usize,
    k: usize,
    /// `avail[c][v]`: `v` does not miss colour `c`.
    avail: Vec<Vec<bool>>,
    mate: Vec<Vec<usize>>,
    profiles: Vec<Vec<Option<Resolved>>>,
    order: Vec<Colour>,
    /// Declared automorphisms as vertex permutations.
    perms: Vec<Vec<usize>>,
    e0_allowed: Vec<bool>,
    /// `blocked[c][v]`: colour `c` may not leave the claimed tree set at
    /// `v`, since a tree would grow across such an edge.
    inside: Vec<bool>,
    blocked: Vec<bool>,
    /// Whether colour `c` is completely placed.
    done: Vec<bool>,
    long_count: Vec<usize>,
    nodes: u64,
    budget: u64,
    run_nodes: u64,
    limit: Option<u64>,
    rng: Option<ChaCha8Rng>,
    found: Option<(Multigraph, PartialColouring)>,
}

fn profile_weight(p: &Profile) -> usize {
    let named = p.path.as_ref().map_or(0, |x| x.len())
        + p.path_set.as_ref().map_or(0, |x| x.len())
        + p.cycle.as_ref().map_or(0, |x| x.iter().flatten().count())
        + p.cycle_contains.as_ref().map_or(0, |x| x.len());
    1 + named + 2 * usize::from(p.long.is_some_and(|l| l > 0))
}

impl<'a> Search<'a> {
    fn new(spec: &'a WitnessSpec, budget: u64) -> Result<Self> {
        let n = spec.vertices.len();
        let k = spec.k as usize;
        let id = |name: &str| {
            spec.vertices
                .iter()
                .position(|v| v == name)
                .expect("declared")
        };
        let mut avail = vec![vec![true; n]; k + 1];
        for (v, name) in spec.vertices.iter().enumerate() {
            for c in spec.missing_set(name).iter() {
                avail[c as usize][v] = false;
            }
        }
        for (c, row) in avail.iter().enumerate().skip(1) {
            if row.iter().filter(|&&a| a).count() % 2 == 1 {
                return Err(Error::precondition(format!(
                    "colour {c} is present at an odd number of vertices"
                )));
            }
        }
        let mut profiles = vec![vec![None; k + 1]; k + 1];
        for a in 1..=k {
            for b in 1..=k {
                if a != b {
                    let p = spec.profile(a as Colour, b as Colour);
                    if p != Profile::default() {
                        profiles[a][b] = Some(Resolved::new(&p, id));
                    }
                }
            }
        }
        let mut order: Vec<Colour> = Vec::new();
        let weight = |a: usize, b: usize| {
            (a != b)
                .then(|| spec.profile(a as Colour, b as Colour))
                .filter(|p| *p != Profile::default())
                .map_or(0, |p| profile_weight(&p))
        };
        while order.len() < k {
            let best = (1..=k)
                .filter(|&c| !order.contains(&(c as Colour)))
                .max_by_key(|&c| {
                    let to_placed: usize = order.iter().map(|&d| weight(c, d as usize)).sum();
                    let strongest = (1..=k).map(|d| weight(c, d)).max().unwrap_or(0);
                    // Prefer ties by the lowest colour.
                    (to_placed, strongest, std::cmp::Reverse(c))
                })
                .expect("colours remain");
            order.push(best as Colour);
        }
        let perms = spec
            .symmetries
            .iter()
            .map(|sym| {
                let mut pi: Vec<usize> = (0..n).collect();
                for (a, b) in &sym.swaps {
                    pi[id(a)] = id(b);
                    pi[id(b)] = id(a);
                }
                pi
            })
            .collect();
        let e0_allowed = match &spec.e0_endpoints_in {
            Some(names) => (0..n).map(|v| names.contains(&spec.vertices[v])).collect(),
            None => vec![true; n],
        };
        let inside: Vec<bool> = match &spec.w.set {
            Some(ws) => {
                let names = ws.resolve(&spec.vertices);
                spec.vertices
                    .iter()
                    .map(|v| names.contains(&v.as_str()))
                    .collect()
            }
            None => vec![true; n],
        };
        let mut blocked = vec![false; k + 1];
        if spec.w.set.is_some() {
            for (v, name) in spec.vertices.iter().enumerate() {
                if inside[v] {
                    for c in spec.missing_set(name).iter() {
                        blocked[c as usize] = true;
                    }
                }
            }
        }
        Ok(Search {
            spec,
            perms,
            inside,
            blocked,
            e0_allowed,
            n,
            k,
            avail,
            mate: vec![vec![NONE; n]; k + 1],
            profiles,
            order,
            done: vec![false; k + 1],
            long_count: vec![0; k + 1],
            nodes: 0,
            budget,
            run_nodes: 0,
            limit: None,
            rng: None,
            found: None,
        })
    }

    /// Path claims that can be read off statically: the number of paths of
    /// every pair is fixed by the missing pattern.
    fn static_ok(&self) -> bool {
        let mut max_paths = 0;
        for a in 1..=self.k {
            for b in a + 1..=self.k {
                let ends = (0..self.n)
                    .filter(|&v| self.avail[a][v] != self.avail[b][v])
                    .count();
                max_paths = max_paths.max(ends / 2);
                if let Some(p) = &self.profiles[a][b] {
                    if p.paths.is_some_and(|x| x != ends / 2) {
                        return false;
                    }
                }
            }
        }
        self.spec.max_paths.is_none_or(|m| max_paths <= m)
    }

    fn place(&mut self, c: usize, u: usize, w: usize) -> bool {
        if self.blocked[c] && self.inside[u] != self.inside[w] {
            return false;
        }
        let m = &mut self.mate[c];
        if m[u] == w {
            return true;
        }
        if u == w || m[u] != NONE || m[w] != NONE || !self.avail[c][u] || !self.avail[c][w] {
            return false;
        }
        m[u] = w;
        m[w] = u;
        true
    }

    /// Edges fixed by fully specified paths, and the alternatives for fully
    /// specified cycles (two phases each).
    fn forced(&mut self) -> Option<Vec<Vec<(usize, usize, usize)>>> {
        let mut cycles = Vec::new();
        for a in 1..=self.k {
            for b in a + 1..=self.k {
                let Some(p) = self.profiles[a][b].clone() else {
                    continue;
                };
                if let Some(path) = &p.path {
                    let first = path[0];
                    let col = match (self.avail[a][first], self.avail[b][first]) {
                        (true, false) => a,
                        (false, true) => b,
                        _ => return None,
                    };
                    let other = a + b - col;
                    for (i, win) in path.windows(2).enumerate() {
                        let c = if i % 2 == 0 { col } else { other };
                        if !self.place(c, win[0], win[1]) {
                            return None;
                        }
                    }
                }
                if let (Some(pat), Some(1)) = (&p.cycle, p.long) {
                    if pat.len() % 2 == 0 && pat.iter().all(Option::is_some) {
                        let vs: Vec<usize> = pat.iter().flatten().copied().collect();
                        let phase = |first: usize| {
                            (0..vs.len())
                                .map(|i| {
                                    let c = if i % 2 == 0 { first } else { a + b - first };
                                    (c, vs[i], vs[(i + 1) % vs.len()])
                                })
                                .collect::<Vec<_>>()
                        };
                        cycles.push(vec![phase(a), phase(b)]);
                    }
                }
            }
        }
        // Cartesian product of cycle phases.
        let mut combos: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new()];
        for alts in cycles {
            combos = combos
                .into_iter()
                .flat_map(|base| {
                    alts.iter().map(move |alt| {
                        let mut v = base.clone();
                        v.extend(alt.iter().copied());
                        v
                    })
                })
                .collect();
        }
        Some(combos)
    }

    fn tick(&mut self) -> std::result::Result<(), Stop> {
        self.nodes += 1;
        self.run_nodes += 1;
        if self.nodes > self.budget {
            Err(Stop::Budget)
        } else if self.limit.is_some_and(|l| self.run_nodes > l) {
            Err(Stop::Restart)
        } else {
            Ok(())
        }
    }

    /// Walk the `(b, d)` alternating subgraph from `start`, leaving along
    /// colour `col`, until it stops or returns to `stop`. Returns the
    /// vertices visited after `start` and whether it closed.
    fn walk(
        &self,
        b: usize,
        d: usize,
        start: usize,
        mut col: usize,
        stop: usize,
    ) -> (Vec<usize>, bool, bool) {
        let mut out = Vec::new();
        let mut cur = start;
        loop {
            let next = self.mate[col][cur];
            if next == NONE {
                // A genuine end misses the colour; otherwise it is unfinished.
                return (out, false, !self.avail[col][cur]);
            }
            if next == stop {
                return (out, true, false);
            }
            out.push(next);
            cur = next;
            col = if col == b { d } else { b };
        }
    }

    /// Check a prospective `b`-edge `u w` (neither end matched in `b` yet)
    /// against every completed colour. Returns the colours whose long-cycle
    /// count would go up, or `None` on conflict.
    fn edge_ok(&self, b: usize, u: usize, w: usize) -> Option<Vec<usize>> {
        if self.blocked[b] && self.inside[u] != self.inside[w] {
            return None;
        }
        let mut bumped = Vec::new();
        for &d in &self.order {
            let d = d as usize;
            if !self.done[d] || self.mate[d][u] == w {
                continue;
            }
            let Some(p) = &self.profiles[b][d] else {
                continue;
            };
            let (side_w, closed, w_end) = self.walk(b, d, w, d, u);
            if closed {
                let mut cyc = vec![u, w];
                cyc.extend(side_w);
                if p.long.is_some_and(|l| self.long_count[d] + 1 > l) || !p.cycle_fits(&cyc) {
                    return None;
                }
                bumped.push(d);
            } else if p.path.is_some() || p.path_set.is_some() || p.path_len.is_some() {
                let (side_u, _, u_end) = self.walk(b, d, u, d, w);
                // A segment lies on the single path if it touches a true end
                // or no further long cycle is allowed.
                let on_path = u_end || w_end || p.long.is_some_and(|l| self.long_count[d] >= l);
                if on_path {
                    let mut seg: Vec<usize> = side_u.into_iter().rev().collect();
                    seg.push(u);
                    seg.push(w);
                    seg.extend(side_w);
                    let fits = if u_end && w_end {
                        p.path_fits(&seg)
                    } else {
                        segment_fits(p, &seg, u_end, w_end)
                    };
                    if !fits {
                        return None;
                    }
                }
            }
        }
        Some(bumped)
    }

    /// Consistent partners of every unmatched vertex of colour `b`, most
    /// promising first: partners in earlier colours lead.
    fn options(&mut self, b: usize) -> Vec<(usize, Vec<(usize, Vec<usize>)>)> {
        let free: Vec<usize> = (0..self.n)
            .filter(|&v| self.avail[b][v] && self.mate[b][v] == NONE)
            .collect();
        let mut out: Vec<(usize, Vec<(usize, Vec<usize>)>)> =
            free.iter().map(|&u| (u, Vec::new())).collect();
        for (i, &u) in free.iter().enumerate() {
            for (j, &w) in free.iter().enumerate().skip(i + 1) {
                if let Some(bumped) = self.edge_ok(b, u, w) {
                    out[i].1.push((w, bumped.clone()));
                    out[j].1.push((u, bumped));
                }
            }
        }
        // Prefer partners already joined to `u` by many placed colours.
        for (u, opts) in &mut out {
            let shared = |w: usize| (1..=self.k).filter(|&c| self.mate[c][*u] == w).count();
            let mut keyed: Vec<_> = opts
                .drain(..)
                .map(|(w, bumped)| {
                    let tie = self.rng.as_mut().map_or(w as u64, |r| r.gen());
                    ((std::cmp::Reverse(shared(w)), tie), (w, bumped))
                })
                .collect();
            keyed.sort_by_key(|(key, _)| *key);
            opts.extend(keyed.into_iter().map(|(_, o)| o));
        }
        out
    }

    fn shapes(&self, a: usize, b: usize) -> Vec<Shape> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        let deg =
            |v: usize| usize::from(self.mate[a][v] != NONE) + usize::from(self.mate[b][v] != NONE);
        for pass in [1, 2] {
            for s in 0..self.n {
                if seen[s] || deg(s) != pass {
                    continue;
                }
                let col = if self.mate[a][s] != NONE { a } else { b };
                let mut vs = vec![s];
                let mut cur = s;
                let mut c = col;
                seen[s] = true;
                loop {
                    let next = self.mate[c][cur];
                    if next == NONE || next == s {
                        break;
                    }
                    seen[next] = true;
                    vs.push(next);
                    cur = next;
                    c = if c == a { b } else { a };
                }
                let kind = match (pass, vs.len()) {
                    (1, _) => ComponentKind::Path,
                    (_, 2) => ComponentKind::DoubleEdge,
                    _ => ComponentKind::Cycle,
                };
                out.push(Shape { kind, vertices: vs });
            }
        }
        out
    }

    fn colour_complete_ok(&self, b: usize) -> bool {
        self.order.iter().all(|&d| {
            let d = d as usize;
            if d == b || !self.done[d] {
                return true;
            }
            match &self.profiles[b][d] {
                Some(p) => shape_problems(p, &self.shapes(b, d), |_| String::new()).is_empty(),
                None => true,
            }
        })
    }

    /// Bounds on every edge multiplicity must allow each declared
    /// automorphism: `lo(u, v) <= hi(π u, π v)`.
    fn symmetry_feasible(&self) -> bool {
        if self.perms.is_empty() {
            return true;
        }
        let n = self.n;
        let mut lo = vec![0u32; n * n];
        let mut hi = vec![0u32; n * n];
        for c in 1..=self.k {
            let (m, av) = (&self.mate[c], &self.avail[c]);
            for u in 0..n {
                if m[u] != NONE {
                    lo[u * n + m[u]] += 1;
                    continue;
                }
                if !av[u] {
                    continue;
                }
                for v in 0..n {
                    if v != u && av[v] && m[v] == NONE {
                        hi[u * n + v] += 1;
                    }
                }
            }
        }
        for u in 0..n {
            for v in 0..n {
                hi[u * n + v] +=
                    lo[u * n + v] + u32::from(u != v && self.e0_allowed[u] && self.e0_allowed[v]);
            }
        }
        self.perms
            .iter()
            .all(|pi| (0..n).all(|u| (0..n).all(|v| lo[u * n + v] <= hi[pi[u] * n + pi[v]])))
    }

    fn fill(&mut self, ci: usize) -> std::result::Result<bool, Stop> {
        if ci == self.order.len() {
            return self.place_e0();
        }
        let b = self.order[ci] as usize;
        if !(0..self.n).any(|v| self.avail[b][v] && self.mate[b][v] == NONE) {
            if !self.colour_complete_ok(b) || !self.symmetry_feasible() {
                return Ok(false);
            }
            self.done[b] = true;
            let saved = std::mem::replace(&mut self.long_count, vec![0; self.k + 1]);
            let r = self.fill(ci + 1);
            self.long_count = saved;
            self.done[b] = false;
            return r;
        }
        let opts = self.options(b);
        let Some((u, cands)) = opts.into_iter().min_by_key(|(u, o)| (o.len(), *u)) else {
            unreachable!("an unmatched vertex exists");
        };
        for (w, bumped) in cands {
            self.tick()?;
            self.mate[b][u] = w;
            self.mate[b][w] = u;
            bumped.iter().for_each(|&d| self.long_count[d] += 1);
            let r = self.fill(ci);
            bumped.iter().for_each(|&d| self.long_count[d] -= 1);
            self.mate[b][u] = NONE;
            self.mate[b][w] = NONE;
            if r? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn place_e0(&mut self) -> std::result::Result<bool, Stop> {
        let allowed: Vec<usize> = match &self.spec.e0_endpoints_in {
            Some(names) => names
                .iter()
                .map(|nm| {
                    self.spec
                        .vertices
                        .iter()
                        .position(|v| v == nm)
                        .expect("declared")
                })
                .collect(),
            None => (0..self.n).collect(),
        };
        let degrees: Vec<usize> = (0..self.n)
            .map(|v| (1..=self.k).filter(|&c| self.avail[c][v]).count())
            .collect();
        let labels = Labels::from_names(self.spec.vertices.iter().cloned());
        for (i, &a) in allowed.iter().enumerate() {
            for &b in &allowed[i + 1..] {
                if let Some(delta) = self.spec.delta {
                    if degrees[a] + 1 > delta || degrees[b] + 1 > delta {
                        continue;
                    }
                }
                self.tick()?;
                let (g, c) = self.build(a, b);
                if verify(&g, &labels, &c, self.spec).is_ok_and(|r| r.passed()) {
                    self.found = Some((g, c));
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    fn build(&self, a: usize, b: usize) -> (Multigraph, PartialColouring) {
        let mut edges = vec![(a.min(b), a.max(b))];
        let mut cols = vec![None];
        for c in 1..=self.k {
            for u in 0..self.n {
                let w = self.mate[c][u];
                if w != NONE && u < w {
                    edges.push((u, w));
                    cols.push(Some(c as Colour));
                }
            }
        }
        let g = Multigraph::new(self.n, edges).expect("matching edges are loopless");
        let c =
            PartialColouring::from_assignment(self.k as Colour, cols).expect("colours in range");
        (g, c)
    }
}

/// Whether `seg` can be extended to a path meeting the claims; `front` and
/// `back` say whether each end of `seg` is already a true end.
fn segment_fits(p: &Resolved, seg: &[usize], front: bool, back: bool) -> bool {
    if let Some(set) = &p.path_set {
        if !seg.iter().all(|v| set.contains(v)) {
            return false;
        }
    }
    if p.path_len.is_some_and(|n| seg.len() > n + 1) {
        return false;
    }
    if let Some(want) = &p.path {
        let rev: Vec<usize> = want.iter().rev().copied().collect();
        let fits = |w: &[usize]| {
            w.len() >= seg.len()
                && (0..=w.len() - seg.len()).any(|i| {
                    w[i..i + seg.len()] == *seg
                        && (!front || i == 0)
                        && (!back || i + seg.len() == w.len())
                })
        };
        if !fits(want) && !fits(&rev) {
            return false;
        }
    }
    true
}

/// Restart `i` runs with node limit `RESTART_BASE * luby(i + 1)`; the first
/// uses plain index order for ties. A restart that finishes under its limit
/// has covered the whole space.
pub fn synthesize(spec: &WitnessSpec, opts: SynthOptions) -> Result<SynthOutcome> {
    let mut s = Search::new(spec, opts.budget)?;
    let exhausted = |nodes| {
        Ok(SynthOutcome::NotFound {
            nodes,
            exhausted: true,
        })
    };
    if !s.static_ok() {
        return exhausted(0);
    }
    let Some(combos) = s.forced() else {
        return exhausted(0);
    };
    let base = s.mate.clone();
    for restart in 0u64.. {
        s.limit = Some(RESTART_BASE.saturating_mul(luby(restart + 1)));
        s.run_nodes = 0;
        s.rng = (restart > 0).then(|| ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(restart)));
        let mut stopped = None;
        for combo in &combos {
            s.mate = base.clone();
            if !combo.iter().all(|&(c, u, w)| s.place(c, u, w)) {
                continue;
            }
            match s.fill(0) {
                Ok(true) => {
                    let (graph, colouring) = s.found.take().expect("set on success");
                    return Ok(SynthOutcome::Found {
                        graph,
                        labels: Labels::from_names(spec.vertices.iter().cloned()),
                        colouring,
                        nodes: s.nodes,
                    });
                }
                Ok(false) => {}
                Err(stop) => {
                    stopped = Some(stop);
                    break;
                }
            }
        }
        match stopped {
            None => return exhausted(s.nodes),
            Some(Stop::Budget) => break,
            Some(Stop::Restart) => {}
        }
    }
    Ok(SynthOutcome::NotFound {
        nodes: s.nodes.min(opts.budget),
        exhausted: false,
    })
}
