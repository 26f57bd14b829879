//! Checking a coloured multigraph against a [`WitnessSpec`].

use serde::Serialize;

use crate::colouring::{Colour, ColourSet, PartialColouring};
use crate::density::{rho, rho_all, RhoMode};
use crate::error::Result;
use crate::extension::{beta_candidates, check_b, check_c, min_used_tree, p_path};
use crate::kempe::{bichromatic_components, ComponentKind, KempeComponent};
use crate::multigraph::{EdgeId, Labels, Multigraph, VertexId, VertexSet};
use crate::tashkinov::{build_tree, TashkinovState, TieBreak};

use super::spec::{Profile, WitnessSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub spec: String,
    pub clauses: Vec<Clause>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        !self.clauses.is_empty() && self.clauses.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Clause> {
        self.clauses.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.clauses.push(Clause {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    /// Records `expected == found` with both in the detail.
    fn expect<T: PartialEq + std::fmt::Debug>(&mut self, name: &str, expected: T, found: T) {
        let detail = format!("expected {expected:?}, found {found:?}");
        self.push(name, expected == found, detail);
    }
}

struct Ctx<'a> {
    g: &'a Multigraph,
    labels: &'a Labels,
    c: &'a PartialColouring,
    spec: &'a WitnessSpec,
}

impl Ctx<'_> {
    fn v(&self, name: &str) -> VertexId {
        self.labels
            .lookup(name)
            .expect("vertex names are checked first")
    }

    fn vs<'s>(&self, names: impl IntoIterator<Item = &'s str>) -> VertexSet {
        names.into_iter().map(|n| self.v(n)).collect()
    }

    fn seq(&self, names: &[String]) -> Vec<VertexId> {
        names.iter().map(|n| self.v(n)).collect()
    }

    fn names(&self, vs: &[VertexId]) -> String {
        vs.iter()
            .map(|&v| self.labels.display(v))
            .collect::<Vec<_>>()
            .join(",")
    }

    fn colours(&self, s: ColourSet) -> String {
        s.iter()
            .map(|c| self.spec.colour_name(c))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Check every claim of `spec`. Structural mismatches (vertex names, colour
/// count, improper colouring) end the check early with those clauses failed.
pub fn verify(
    g: &Multigraph,
    labels: &Labels,
    c: &PartialColouring,
    spec: &WitnessSpec,
) -> Result<VerificationReport> {
    let mut r = VerificationReport {
        spec: spec.name.clone(),
        clauses: Vec::new(),
    };
    let unknown: Vec<&String> = spec
        .vertices
        .iter()
        .filter(|n| labels.lookup(n).is_none())
        .collect();
    let vertices_ok = unknown.is_empty() && g.vertex_count() == spec.vertices.len();
    r.push(
        "vertices",
        vertices_ok,
        format!(
            "{} declared, {} in graph, unlabelled: {:?}",
            spec.vertices.len(),
            g.vertex_count(),
            unknown
        ),
    );
    r.expect("colours", spec.k, c.k());
    let proper = c.edge_count() == g.edge_count() && c.is_proper(g)?;
    r.push(
        "proper",
        proper,
        if proper {
            "no conflicts"
        } else {
            "colouring is not proper"
        },
    );
    if !r.passed() {
        return Ok(r);
    }
    let cx = Ctx { g, labels, c, spec };

    if let Some(d) = spec.delta {
        r.expect("delta", d, g.max_degree()?);
    }
    if let Some(m) = spec.edges {
        r.expect("edges", m, g.edge_count());
    }
    for name in &spec.vertices {
        let want = spec.missing_set(name);
        let got = c.missing_at(g, cx.v(name));
        r.push(
            format!("missing({name})"),
            want == got,
            format!(
                "expected {{{}}}, found {{{}}}",
                cx.colours(want),
                cx.colours(got)
            ),
        );
    }

    let e0 = check_e0(&cx, &mut r);
    check_pairs(&cx, &mut r)?;
    for s in &spec.symmetries {
        let perm: Vec<(VertexId, VertexId)> =
            s.swaps.iter().map(|(a, b)| (cx.v(a), cx.v(b))).collect();
        let ok = is_automorphism(g, &perm);
        r.push(
            format!("symmetry({})", s.text),
            ok,
            if ok {
                "automorphism"
            } else {
                "not an automorphism"
            },
        );
    }
    check_density(&cx, &mut r)?;
    match e0 {
        Some(e0) => {
            let state = build_tree(c, g, e0, TieBreak::Lexicographic)?;
            check_w(&cx, &state, &mut r);
            check_extension(&cx, e0, &mut r)?;
        }
        None => {
            if spec.w != Default::default() || spec.extension != Default::default() {
                r.push("tree", false, "no usable e0, tree claims not checked");
            }
        }
    }
    Ok(r)
}

fn check_e0(cx: &Ctx, r: &mut VerificationReport) -> Option<EdgeId> {
    let unc = cx.c.uncoloured_edges();
    let [e0] = unc[..] else {
        r.push(
            "e0",
            false,
            format!("expected one uncoloured edge, found {}", unc.len()),
        );
        return None;
    };
    let (a, b) = cx.g.endpoints(e0);
    let ok = match &cx.spec.e0_endpoints_in {
        Some(names) => {
            let allowed = cx.vs(names.iter().map(String::as_str));
            allowed.contains(&a) && allowed.contains(&b)
        }
        None => true,
    };
    r.push("e0", ok, format!("edge {e0} joins {}", cx.names(&[a, b])));
    ok.then_some(e0)
}

fn is_automorphism(g: &Multigraph, swaps: &[(VertexId, VertexId)]) -> bool {
    let mut pi: Vec<VertexId> = (0..g.vertex_count()).collect();
    for &(a, b) in swaps {
        pi[a] = b;
        pi[b] = a;
    }
    let norm = |(u, v): (VertexId, VertexId)| (u.min(v), u.max(v));
    let mut before: Vec<_> = g.edges().iter().map(|&e| norm(e)).collect();
    let mut after: Vec<_> = g
        .edges()
        .iter()
        .map(|&(u, v)| norm((pi[u], pi[v])))
        .collect();
    before.sort_unstable();
    after.sort_unstable();
    before == after
}

fn check_pairs(cx: &Ctx, r: &mut VerificationReport) -> Result<()> {
    let k = cx.spec.k;
    let mut max_seen = 0;
    for a in 1..=k {
        for b in a + 1..=k {
            let p = cx.spec.profile(a, b);
            if p == Profile::default() && cx.spec.max_paths.is_none() {
                continue;
            }
            let comps = bichromatic_components(cx.c, cx.g, a, b)?;
            let paths = comps
                .iter()
                .filter(|x| x.kind == ComponentKind::Path)
                .count();
            max_seen = max_seen.max(paths);
            if p == Profile::default() {
                continue;
            }
            let problems = profile_problems(cx, &p, &comps);
            let name = format!(
                "pair({},{})",
                cx.spec.colour_name(a),
                cx.spec.colour_name(b)
            );
            let detail = if problems.is_empty() {
                describe(cx, &comps)
            } else {
                problems.join("; ")
            };
            r.push(name, problems.is_empty(), detail);
        }
    }
    if let Some(m) = cx.spec.max_paths {
        r.push(
            "max-paths",
            max_seen <= m,
            format!("at most {m} path(s) per pair, found {max_seen}"),
        );
    }
    Ok(())
}

fn describe(cx: &Ctx, comps: &[KempeComponent]) -> String {
    comps
        .iter()
        .filter(|x| x.kind != ComponentKind::DoubleEdge)
        .map(|x| {
            let kind = if x.kind == ComponentKind::Path {
                "path"
            } else {
                "cycle"
            };
            format!("{kind} {}", cx.names(&x.vertices))
        })
        .collect::<Vec<_>>()
        .join("; ")
}

pub(crate) fn cycle_matches(cycle: &[VertexId], pattern: &[Option<VertexId>]) -> bool {
    let n = cycle.len();
    if n != pattern.len() {
        return false;
    }
    (0..n).any(|s| {
        let fwd = (0..n).all(|i| pattern[i].is_none_or(|v| v == cycle[(s + i) % n]));
        let bwd = (0..n).all(|i| pattern[i].is_none_or(|v| v == cycle[(s + n - i) % n]));
        fwd || bwd
    })
}

/// A component reduced to its kind and vertex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Shape {
    pub kind: ComponentKind,
    pub vertices: Vec<VertexId>,
}

impl Shape {
    fn edge_count(&self) -> usize {
        match self.kind {
            ComponentKind::Path => self.vertices.len() - 1,
            ComponentKind::Cycle => self.vertices.len(),
            ComponentKind::DoubleEdge => 2,
        }
    }

    fn is_long(&self) -> bool {
        self.kind == ComponentKind::Cycle && self.vertices.len() > 2
    }
}

impl From<&KempeComponent> for Shape {
    fn from(k: &KempeComponent) -> Self {
        Shape {
            kind: k.kind,
            vertices: k.vertices.clone(),
        }
    }
}

/// A [`Profile`] with vertex names replaced by ids.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct Resolved {
    pub paths: Option<usize>,
    pub long: Option<usize>,
    pub path: Option<Vec<VertexId>>,
    pub path_set: Option<VertexSet>,
    pub path_len: Option<usize>,
    pub path_ends_at: Option<VertexId>,
    pub cycle: Option<Vec<Option<VertexId>>>,
    pub cycle_len: Option<usize>,
    pub cycle_contains: Option<Vec<VertexId>>,
}

impl Resolved {
    pub(crate) fn new(p: &Profile, id: impl Fn(&str) -> VertexId) -> Self {
        let list = |l: &Vec<String>| l.iter().map(|n| id(n)).collect::<Vec<_>>();
        Resolved {
            paths: p.paths,
            long: p.long,
            path: p.path.as_ref().map(list),
            path_set: p.path_set.as_ref().map(|l| list(l).into_iter().collect()),
            path_len: p.path_len,
            path_ends_at: p.path_ends_at.as_deref().map(&id),
            cycle: p
                .cycle
                .as_ref()
                .map(|c| c.iter().map(|x| x.as_deref().map(&id)).collect()),
            cycle_len: p.cycle_len,
            cycle_contains: p.cycle_contains.as_ref().map(list),
        }
    }

    /// Whether a path with these vertices satisfies the single-path claims.
    pub(crate) fn path_fits(&self, vs: &[VertexId]) -> bool {
        if let Some(want) = &self.path {
            let rev: Vec<VertexId> = want.iter().rev().copied().collect();
            if vs != want.as_slice() && vs != rev.as_slice() {
                return false;
            }
        }
        if let Some(want) = &self.path_set {
            let got: VertexSet = vs.iter().copied().collect();
            if &got != want || got.len() != vs.len() {
                return false;
            }
        }
        self.path_len.is_none_or(|n| vs.len() == n + 1)
    }

    /// Whether a long cycle with these vertices satisfies the per-cycle
    /// claims. The pattern is only per-cycle when a single long cycle is
    /// expected.
    pub(crate) fn cycle_fits(&self, vs: &[VertexId]) -> bool {
        if self.cycle_len.is_some_and(|n| vs.len() != n) {
            return false;
        }
        if let Some(need) = &self.cycle_contains {
            if !need.iter().all(|v| vs.contains(v)) {
                return false;
            }
        }
        match (&self.cycle, self.long) {
            (Some(p), Some(1)) => cycle_matches(vs, p),
            _ => true,
        }
    }
}

pub(crate) fn shape_problems(
    p: &Resolved,
    shapes: &[Shape],
    names: impl Fn(&[VertexId]) -> String,
) -> Vec<String> {
    let paths: Vec<&Shape> = shapes
        .iter()
        .filter(|x| x.kind == ComponentKind::Path)
        .collect();
    let long: Vec<&Shape> = shapes.iter().filter(|x| x.is_long()).collect();
    let mut out = Vec::new();
    if let Some(n) = p.paths {
        if paths.len() != n {
            out.push(format!("expected {n} path(s), found {}", paths.len()));
        }
    }
    if let Some(n) = p.long {
        if long.len() != n {
            out.push(format!("expected {n} long cycle(s), found {}", long.len()));
        }
    }
    if p.path.is_some() || p.path_set.is_some() || p.path_len.is_some() {
        match paths[..] {
            [only] => {
                if !p.path_fits(&only.vertices) {
                    out.push(format!("path is {}", names(&only.vertices)));
                }
            }
            _ => out.push(format!(
                "path claims need exactly one path, found {}",
                paths.len()
            )),
        }
    }
    if let Some(v) = p.path_ends_at {
        let ends = |x: &&Shape| x.vertices.first() == Some(&v) || x.vertices.last() == Some(&v);
        if !paths.iter().any(ends) {
            out.push(format!("no path ends at {}", names(&[v])));
        }
    }
    if let Some(pattern) = &p.cycle {
        if !long.iter().any(|x| cycle_matches(&x.vertices, pattern)) {
            out.push("no long cycle matches the pattern".to_string());
        }
    }
    if let Some(n) = p.cycle_len {
        if let Some(x) = long.iter().find(|x| x.edge_count() != n) {
            out.push(format!(
                "long cycle of length {}, expected {n}",
                x.edge_count()
            ));
        }
    }
    if let Some(need) = &p.cycle_contains {
        if let Some(x) = long
            .iter()
            .find(|x| !need.iter().all(|v| x.vertices.contains(v)))
        {
            out.push(format!(
                "long cycle {} misses a required vertex",
                names(&x.vertices)
            ));
        }
    }
    out
}

fn profile_problems(cx: &Ctx, p: &Profile, comps: &[KempeComponent]) -> Vec<String> {
    let shapes: Vec<Shape> = comps.iter().map(Shape::from).collect();
    shape_problems(&Resolved::new(p, |n| cx.v(n)), &shapes, |vs| cx.names(vs))
}

fn check_density(cx: &Ctx, r: &mut VerificationReport) -> Result<()> {
    let d = &cx.spec.density;
    if d.ceil.is_none() && d.unique_witness.is_none() {
        return Ok(());
    }
    let report = rho_all(cx.g, RhoMode::BranchAndBound)?;
    let cert = &report.certificate;
    if let Some(want) = d.ceil {
        r.push(
            "density.ceil",
            cert.ceiling == want,
            format!(
                "rho = {}, ceiling {}, expected {want}",
                cert.value, cert.ceiling
            ),
        );
    }
    if let Some(vs) = &d.unique_witness {
        let want = cx.vs(vs.resolve(&cx.spec.vertices));
        let ok = report.maximizer_count == 1 && cert.witness_set == want;
        r.push(
            "density.unique-witness",
            ok,
            format!(
                "{} maximizer(s); reported {{{}}}",
                report.maximizer_count,
                cx.names(&cert.witness_set.iter().copied().collect::<Vec<_>>())
            ),
        );
    }
    Ok(())
}

fn check_w(cx: &Ctx, state: &TashkinovState, r: &mut VerificationReport) {
    let w = &cx.spec.w;
    let w_names = cx.names(&state.w_set.iter().copied().collect::<Vec<_>>());
    if let Some(vs) = &w.set {
        let want = cx.vs(vs.resolve(&cx.spec.vertices));
        r.push("w.set", want == state.w_set, format!("W = {{{w_names}}}"));
    }
    if let Some(n) = w.size {
        r.expect("w.size", n, state.w_set.len());
    }
    let found = state.defective_set();
    if let Some(want) = w.defective {
        r.push(
            "w.defective",
            want == found,
            format!(
                "expected {{{}}}, found {{{}}}",
                cx.colours(want),
                cx.colours(found)
            ),
        );
    }
    if w.defect_parity_odd {
        let even: Vec<String> = state
            .defective
            .iter()
            .filter(|(_, &n)| n % 2 == 0)
            .map(|(&c, n)| format!("{}:{n}", cx.spec.colour_name(c)))
            .collect();
        r.push(
            "w.defect-parity",
            even.is_empty(),
            format!("boundary counts {:?}, even: {even:?}", state.defective),
        );
    }
    if let Some(want) = w.missing_union {
        let got = state.missing_union;
        r.push(
            "w.missing-union",
            want == got,
            format!(
                "expected {{{}}}, found {{{}}}",
                cx.colours(want),
                cx.colours(got)
            ),
        );
    }
    if let Some(want) = w.elementary {
        r.expect("w.elementary", want, state.elementary);
    }
}

fn induced_ceil(g: &Multigraph, s: &VertexSet) -> Result<u64> {
    let (h, _) = g.induced(s);
    Ok(rho(&h, RhoMode::BranchAndBound)?.ceiling)
}

fn check_extension(cx: &Ctx, e0: EdgeId, r: &mut VerificationReport) -> Result<()> {
    let x = &cx.spec.extension;
    if *x == Default::default() {
        return Ok(());
    }
    let state = min_used_tree(cx.c, cx.g, e0)?;
    let used = state.used_colours;
    let cands = beta_candidates(&state);
    if let Some(want) = x.used {
        r.push(
            "extension.used",
            want == used,
            format!(
                "expected {{{}}}, found {{{}}}",
                cx.colours(want),
                cx.colours(used)
            ),
        );
    }
    if let Some(want) = x.used_includes {
        r.push(
            "extension.used-includes",
            want.is_subset(used),
            format!("U = {{{}}}", cx.colours(used)),
        );
    }
    if let Some(want) = x.beta {
        r.push(
            "extension.beta",
            want == cands,
            format!("M \\ U = {{{}}}", cx.colours(cands)),
        );
    }
    let per_beta = x.w1w2.is_some()
        || x.q.is_some()
        || x.size_b.is_some()
        || x.ceil_b.is_some()
        || x.ceil_b_below.is_some()
        || x.ceil_q.is_some()
        || x.check_b.is_some()
        || x.check_c.is_some();
    if !per_beta {
        return Ok(());
    }
    let betas = x.beta.unwrap_or(cands);
    let mut fails: Vec<Vec<String>> = vec![Vec::new(); 8];
    let names = [
        "extension.w1w2",
        "extension.q",
        "extension.size-b",
        "extension.ceil-b",
        "extension.ceil-b-below",
        "extension.ceil-q",
        "extension.check-b",
        "extension.check-c",
    ];
    let mut tried = 0;
    for alpha in state.defective.keys().copied() {
        for beta in betas.iter() {
            tried += 1;
            let tag = format!(
                "({},{})",
                cx.spec.colour_name(alpha),
                cx.spec.colour_name(beta)
            );
            let res = match p_path(cx.c, cx.g, &state, alpha, beta) {
                Ok(res) => res,
                Err(e) => {
                    fails.iter_mut().for_each(|f| f.push(format!("{tag}: {e}")));
                    continue;
                }
            };
            let b_set = res.w_plus_w1w2(&state);
            let q_set = res.w_plus_q(&state);
            if let Some(want) = &x.w1w2 {
                let want = cx.vs(want.iter().map(String::as_str));
                let got: VertexSet = [res.w1, res.w2].into_iter().collect();
                if want != got {
                    fails[0].push(format!("{tag}: {}", cx.names(&[res.w1, res.w2])));
                }
            }
            if let Some(want) = &x.q {
                let want = cx.seq(want);
                let mut rev = want.clone();
                rev.reverse();
                if res.q_segment != want && res.q_segment != rev {
                    fails[1].push(format!("{tag}: {}", cx.names(&res.q_segment)));
                }
            }
            if let Some(want) = x.size_b {
                if b_set.len() != want {
                    fails[2].push(format!("{tag}: {}", b_set.len()));
                }
            }
            if x.ceil_b.is_some() || x.ceil_b_below.is_some() {
                let got = induced_ceil(cx.g, &b_set)?;
                if x.ceil_b.is_some_and(|w| w != got) {
                    fails[3].push(format!("{tag}: {got}"));
                }
                if x.ceil_b_below.is_some_and(|w| got >= w) {
                    fails[4].push(format!("{tag}: {got}"));
                }
            }
            if let Some(want) = x.ceil_q {
                let got = induced_ceil(cx.g, &q_set)?;
                if got != want {
                    fails[5].push(format!("{tag}: {got}"));
                }
            }
            if x.check_b
                .is_some_and(|w| w != check_b(cx.c, cx.g, &state, &res))
            {
                fails[6].push(tag.clone());
            }
            if x.check_c
                .is_some_and(|w| w != check_c(cx.c, cx.g, &state, &res))
            {
                fails[7].push(tag);
            }
        }
    }
    let active = [
        x.w1w2.is_some(),
        x.q.is_some(),
        x.size_b.is_some(),
        x.ceil_b.is_some(),
        x.ceil_b_below.is_some(),
        x.ceil_q.is_some(),
        x.check_b.is_some(),
        x.check_c.is_some(),
    ];
    for i in 0..names.len() {
        if !active[i] {
            continue;
        }
        let ok = tried > 0 && fails[i].is_empty();
        let detail = if tried == 0 {
            "no (alpha, beta) pair to check".to_string()
        } else if ok {
            format!("holds for all {tried} pair(s)")
        } else {
            fails[i].join("; ")
        };
        r.push(names[i], ok, detail);
    }
    Ok(())
}

/// Colours appearing in a pair rule's domain, for callers wanting to
/// enumerate the constrained pairs.
pub fn constrained_pairs(spec: &WitnessSpec) -> Vec<(Colour, Colour)> {
    let mut out = Vec::new();
    for a in 1..=spec.k {
        for b in a + 1..=spec.k {
            if spec.profile(a, b) != Profile::default() {
                out.push((a, b));
            }
        }
    }
    out
}
