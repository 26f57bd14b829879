//! Parser for `.wspec` witness descriptions. The grammar is documented in
//! `docs/wspec.md`.

use std::collections::BTreeMap;

use crate::colouring::{Colour, ColourSet};
use crate::error::{Error, Result};

/// A set of named vertices, possibly given by complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexSpec {
    List(Vec<String>),
    AllExcept(Vec<String>),
}

impl VertexSpec {
    pub fn resolve<'a>(&'a self, vertices: &'a [String]) -> Vec<&'a str> {
        match self {
            VertexSpec::List(l) => l.iter().map(String::as_str).collect(),
            VertexSpec::AllExcept(drop) => vertices
                .iter()
                .filter(|v| !drop.contains(v))
                .map(String::as_str)
                .collect(),
        }
    }

    fn names(&self) -> &[String] {
        match self {
            VertexSpec::List(l) | VertexSpec::AllExcept(l) => l,
        }
    }
}

/// Expected shape of the subgraph formed by two colour classes. Unset
/// fields are not checked.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Profile {
    pub paths: Option<usize>,
    /// Cycles of length greater than two.
    pub long: Option<usize>,
    /// Vertex sequence of the single path, in either direction.
    pub path: Option<Vec<String>>,
    /// Vertex set of the single path.
    pub path_set: Option<Vec<String>>,
    /// Edge count of the single path.
    pub path_len: Option<usize>,
    /// Some path ends at this vertex.
    pub path_ends_at: Option<String>,
    /// Some long cycle matches this cyclic pattern (`None` is a wildcard),
    /// up to rotation and reflection.
    pub cycle: Option<Vec<Option<String>>>,
    /// Every long cycle has this length.
    pub cycle_len: Option<usize>,
    /// Every long cycle passes through all of these vertices.
    pub cycle_contains: Option<Vec<String>>,
}

impl Profile {
    fn merge(&mut self, o: &Profile) {
        macro_rules! take {
            ($($f:ident),*) => { $( if o.$f.is_some() { self.$f = o.$f.clone(); } )* };
        }
        take!(
            paths,
            long,
            path,
            path_set,
            path_len,
            path_ends_at,
            cycle,
            cycle_len,
            cycle_contains
        );
    }

    fn vertex_names(&self) -> Vec<&String> {
        let mut out: Vec<&String> = Vec::new();
        for l in [&self.path, &self.path_set, &self.cycle_contains]
            .into_iter()
            .flatten()
        {
            out.extend(l.iter());
        }
        out.extend(self.path_ends_at.iter());
        if let Some(c) = &self.cycle {
            out.extend(c.iter().flatten());
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairRule {
    pub left: ColourSet,
    pub right: ColourSet,
    pub profile: Profile,
}

/// A vertex permutation given as disjoint swaps, required to be an
/// automorphism of the uncoloured multigraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Symmetry {
    pub text: String,
    pub swaps: Vec<(String, String)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DensityClaims {
    pub ceil: Option<u64>,
    pub unique_witness: Option<VertexSpec>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WClaims {
    pub set: Option<VertexSpec>,
    pub size: Option<usize>,
    pub defective: Option<ColourSet>,
    pub defect_parity_odd: bool,
    pub missing_union: Option<ColourSet>,
    pub elementary: Option<bool>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExtensionClaims {
    pub used: Option<ColourSet>,
    pub used_includes: Option<ColourSet>,
    pub beta: Option<ColourSet>,
    pub w1w2: Option<Vec<String>>,
    /// Compared up to reversal.
    pub q: Option<Vec<String>>,
    pub size_b: Option<usize>,
    pub ceil_b: Option<u64>,
    pub ceil_b_below: Option<u64>,
    pub ceil_q: Option<u64>,
    pub check_b: Option<bool>,
    pub check_c: Option<bool>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WitnessSpec {
    pub name: String,
    pub k: Colour,
    pub aliases: BTreeMap<String, Colour>,
    pub vertices: Vec<String>,
    pub delta: Option<usize>,
    pub edges: Option<usize>,
    /// Exact missing set per vertex; unlisted vertices miss nothing.
    pub missing: BTreeMap<String, ColourSet>,
    pub e0_endpoints_in: Option<Vec<String>>,
    pub default_profile: Profile,
    pub pair_rules: Vec<PairRule>,
    pub max_paths: Option<usize>,
    pub symmetries: Vec<Symmetry>,
    pub density: DensityClaims,
    pub w: WClaims,
    pub extension: ExtensionClaims,
}

impl WitnessSpec {
    pub fn parse(text: &str) -> Result<WitnessSpec> {
        Parser::default().run(text)
    }

    pub fn missing_set(&self, v: &str) -> ColourSet {
        self.missing.get(v).copied().unwrap_or_default()
    }

    /// The merged profile for the pair `{a, b}`.
    pub fn profile(&self, a: Colour, b: Colour) -> Profile {
        let mut p = self.default_profile.clone();
        for r in &self.pair_rules {
            if (r.left.contains(a) && r.right.contains(b))
                || (r.left.contains(b) && r.right.contains(a))
            {
                p.merge(&r.profile);
            }
        }
        p
    }

    /// Display name for a colour, using aliases.
    pub fn colour_name(&self, c: Colour) -> String {
        self.aliases
            .iter()
            .find(|(_, &v)| v == c)
            .map(|(n, _)| n.clone())
            .unwrap_or_else(|| c.to_string())
    }

    /// Every vertex name used anywhere must be declared.
    fn check_names(&self) -> Result<()> {
        let known = |n: &String| self.vertices.contains(n);
        let mut used: Vec<&String> = self.missing.keys().collect();
        for l in [
            &self.e0_endpoints_in,
            &self.extension.w1w2,
            &self.extension.q,
        ]
        .into_iter()
        .flatten()
        {
            used.extend(l.iter());
        }
        for vs in [&self.density.unique_witness, &self.w.set]
            .into_iter()
            .flatten()
        {
            used.extend(vs.names().iter());
        }
        used.extend(self.default_profile.vertex_names());
        for r in &self.pair_rules {
            used.extend(r.profile.vertex_names());
        }
        for s in &self.symmetries {
            for (a, b) in &s.swaps {
                used.push(a);
                used.push(b);
            }
        }
        match used.into_iter().find(|n| !known(n)) {
            Some(n) => Err(Error::input(format!(
                "undeclared vertex `{n}` in witness spec"
            ))),
            None => Ok(()),
        }
    }
}

#[derive(Default)]
struct Parser {
    spec: WitnessSpec,
    section: Option<String>,
}

fn parse_bool(line: usize, s: &str) -> Result<bool> {
    match s {
        "yes" | "true" => Ok(true),
        "no" | "false" => Ok(false),
        _ => Err(Error::parse(line, format!("expected yes/no, found `{s}`"))),
    }
}

fn parse_num<T: std::str::FromStr>(line: usize, s: &str) -> Result<T> {
    s.parse()
        .map_err(|_| Error::parse(line, format!("expected a number, found `{s}`")))
}

fn names(s: &str) -> Vec<String> {
    s.split(',')
        .filter(|x| !x.is_empty())
        .map(str::to_string)
        .collect()
}

impl Parser {
    fn colour(&self, line: usize, s: &str) -> Result<Colour> {
        if let Some(&c) = self.spec.aliases.get(s) {
            return Ok(c);
        }
        let c: Colour = parse_num(line, s)?;
        if c == 0 || c > self.spec.k {
            return Err(Error::parse(
                line,
                format!("colour {c} outside 1..={}", self.spec.k),
            ));
        }
        Ok(c)
    }

    /// `1..15,18,alpha`.
    fn colours(&self, line: usize, s: &str) -> Result<ColourSet> {
        let mut out = ColourSet::empty();
        for item in s.split(',').filter(|x| !x.is_empty()) {
            match item.split_once("..") {
                Some((a, b)) => {
                    let (a, b) = (self.colour(line, a)?, self.colour(line, b)?);
                    if a > b {
                        return Err(Error::parse(line, format!("empty range `{item}`")));
                    }
                    (a..=b).for_each(|c| out.insert(c));
                }
                None => out.insert(self.colour(line, item)?),
            }
        }
        Ok(out)
    }

    fn vertex_spec(&self, line: usize, words: &[&str]) -> Result<VertexSpec> {
        match words {
            ["all-except", list] => Ok(VertexSpec::AllExcept(names(list))),
            ["all"] => Ok(VertexSpec::AllExcept(Vec::new())),
            [list] => Ok(VertexSpec::List(names(list))),
            _ => Err(Error::parse(
                line,
                "expected `NAMES`, `all` or `all-except NAMES`",
            )),
        }
    }

    fn profile(&self, line: usize, words: &[&str]) -> Result<Profile> {
        let mut p = Profile::default();
        for w in words {
            let (key, val) = w
                .split_once('=')
                .ok_or_else(|| Error::parse(line, format!("expected key=value, found `{w}`")))?;
            match key {
                "paths" => p.paths = Some(parse_num(line, val)?),
                "long" => p.long = Some(parse_num(line, val)?),
                "path" => p.path = Some(names(val)),
                "path-set" => p.path_set = Some(names(val)),
                "path-len" => p.path_len = Some(parse_num(line, val)?),
                "path-ends-at" => p.path_ends_at = Some(val.to_string()),
                "cycle" => {
                    p.cycle = Some(
                        val.split(',')
                            .map(|x| (x != "*").then(|| x.to_string()))
                            .collect(),
                    )
                }
                "cycle-len" => p.cycle_len = Some(parse_num(line, val)?),
                "cycle-contains" => p.cycle_contains = Some(names(val)),
                _ => return Err(Error::parse(line, format!("unknown pair key `{key}`"))),
            }
        }
        Ok(p)
    }

    fn run(mut self, text: &str) -> Result<WitnessSpec> {
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("");
            let words: Vec<&str> = body.split_whitespace().collect();
            if words.is_empty() {
                continue;
            }
            if let Some(name) = words[0].strip_prefix('[').and_then(|w| w.strip_suffix(']')) {
                if words.len() != 1 {
                    return Err(Error::parse(line, "section headers stand alone"));
                }
                match name {
                    "MISSING" | "E0" | "PAIRS" | "SYMMETRY" | "DENSITY" | "W" | "EXTENSION" => {
                        self.section = Some(name.to_string())
                    }
                    _ => return Err(Error::parse(line, format!("unknown section `{name}`"))),
                }
                continue;
            }
            let section = self.section.clone();
            match section.as_deref() {
                None => self.header(line, &words)?,
                Some("MISSING") => {
                    let [v, cols] = words[..] else {
                        return Err(Error::parse(line, "expected `VERTEX COLOURS`"));
                    };
                    let set = self.colours(line, cols)?;
                    if self.spec.missing.insert(v.to_string(), set).is_some() {
                        return Err(Error::parse(
                            line,
                            format!("missing set of `{v}` given twice"),
                        ));
                    }
                }
                Some("E0") => match words[..] {
                    ["endpoints-in", list] => self.spec.e0_endpoints_in = Some(names(list)),
                    _ => return Err(Error::parse(line, "expected `endpoints-in NAMES`")),
                },
                Some("PAIRS") => match words[0] {
                    "default" => {
                        let p = self.profile(line, &words[1..])?;
                        self.spec.default_profile.merge(&p);
                    }
                    "max-paths" if words.len() == 2 => {
                        self.spec.max_paths = Some(parse_num(line, words[1])?)
                    }
                    "pair" if words.len() >= 3 => {
                        let rule = PairRule {
                            left: self.colours(line, words[1])?,
                            right: self.colours(line, words[2])?,
                            profile: self.profile(line, &words[3..])?,
                        };
                        self.spec.pair_rules.push(rule);
                    }
                    _ => {
                        return Err(Error::parse(
                            line,
                            "expected `default`, `max-paths N` or `pair L R KEY=VALUE...`",
                        ))
                    }
                },
                Some("SYMMETRY") => {
                    if words[0] != "swap" || words.len() != 3 {
                        return Err(Error::parse(line, "expected `swap A,B,.. C,D,..`"));
                    }
                    let (a, b) = (names(words[1]), names(words[2]));
                    if a.len() != b.len() {
                        return Err(Error::parse(line, "swap lists differ in length"));
                    }
                    self.spec.symmetries.push(Symmetry {
                        text: words[1..].join(" "),
                        swaps: a.into_iter().zip(b).collect(),
                    });
                }
                Some("DENSITY") => match words[0] {
                    "ceil" if words.len() == 2 => {
                        self.spec.density.ceil = Some(parse_num(line, words[1])?)
                    }
                    "unique-witness" => {
                        self.spec.density.unique_witness =
                            Some(self.vertex_spec(line, &words[1..])?)
                    }
                    _ => {
                        return Err(Error::parse(
                            line,
                            format!("unknown DENSITY claim `{}`", words[0]),
                        ))
                    }
                },
                Some("W") => self.w_claim(line, &words)?,
                Some("EXTENSION") => self.extension_claim(line, &words)?,
                Some(_) => unreachable!("sections are validated"),
            }
        }
        let spec = self.spec;
        if spec.k == 0 {
            return Err(Error::parse(1, "missing `colours K`"));
        }
        if spec.vertices.is_empty() {
            return Err(Error::parse(1, "missing `vertices ...`"));
        }
        spec.check_names()?;
        Ok(spec)
    }

    fn header(&mut self, line: usize, words: &[&str]) -> Result<()> {
        match words {
            ["name", n] => self.spec.name = n.to_string(),
            ["colours", k] => {
                let k: Colour = parse_num(line, k)?;
                if k == 0 || k > crate::colouring::MAX_COLOURS {
                    return Err(Error::parse(line, "colour count out of range"));
                }
                self.spec.k = k;
            }
            ["alias", name, c] => {
                let c = self.colour(line, c)?;
                self.spec.aliases.insert(name.to_string(), c);
            }
            ["vertices", rest @ ..] if !rest.is_empty() => {
                let vs: Vec<String> = rest.iter().map(|s| s.to_string()).collect();
                let mut sorted = vs.clone();
                sorted.sort();
                sorted.dedup();
                if sorted.len() != vs.len() {
                    return Err(Error::parse(line, "duplicate vertex name"));
                }
                self.spec.vertices = vs;
            }
            ["delta", d] => self.spec.delta = Some(parse_num(line, d)?),
            ["edges", m] => self.spec.edges = Some(parse_num(line, m)?),
            _ => {
                return Err(Error::parse(
                    line,
                    format!("unknown header line `{}`", words.join(" ")),
                ))
            }
        }
        Ok(())
    }

    fn w_claim(&mut self, line: usize, words: &[&str]) -> Result<()> {
        let w = &mut self.spec.w;
        match words {
            ["set", rest @ ..] => {
                let vs = self.vertex_spec(line, rest)?;
                self.spec.w.set = Some(vs);
            }
            ["size", n] => w.size = Some(parse_num(line, n)?),
            ["defect-parity", "odd"] => w.defect_parity_odd = true,
            ["elementary", b] => w.elementary = Some(parse_bool(line, b)?),
            ["defective"] => w.defective = Some(ColourSet::empty()),
            ["defective", cols] => {
                let s = self.colours(line, cols)?;
                self.spec.w.defective = Some(s);
            }
            ["missing-union", cols] => {
                let s = self.colours(line, cols)?;
                self.spec.w.missing_union = Some(s);
            }
            _ => {
                return Err(Error::parse(
                    line,
                    format!("unknown W claim `{}`", words.join(" ")),
                ))
            }
        }
        Ok(())
    }

    fn extension_claim(&mut self, line: usize, words: &[&str]) -> Result<()> {
        let cols = |p: &Parser, s: &str| p.colours(line, s);
        match words {
            ["used", s] => self.spec.extension.used = Some(cols(self, s)?),
            ["used-includes", s] => self.spec.extension.used_includes = Some(cols(self, s)?),
            ["beta", s] => self.spec.extension.beta = Some(cols(self, s)?),
            ["w1w2", s] => self.spec.extension.w1w2 = Some(names(s)),
            ["q", s] => self.spec.extension.q = Some(names(s)),
            ["size-b", n] => self.spec.extension.size_b = Some(parse_num(line, n)?),
            ["ceil-b", n] => self.spec.extension.ceil_b = Some(parse_num(line, n)?),
            ["ceil-b-below", n] => self.spec.extension.ceil_b_below = Some(parse_num(line, n)?),
            ["ceil-q", n] => self.spec.extension.ceil_q = Some(parse_num(line, n)?),
            ["check-b", b] => self.spec.extension.check_b = Some(parse_bool(line, b)?),
            ["check-c", b] => self.spec.extension.check_c = Some(parse_bool(line, b)?),
            _ => {
                return Err(Error::parse(
                    line,
                    format!("unknown EXTENSION claim `{}`", words.join(" ")),
                ))
            }
        }
        Ok(())
    }
}
