//! Command-line frontend. [`run`] parses arguments, dispatches to the library
//! and writes either a text summary or a [`RunReport`] as JSON.
//!
//! Exit codes: 0 on success, 1 when a check fails, 2 on malformed input or
//! unknown flags.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::colouring::{Colour, PartialColouring};
use crate::density::{rho, rho_all, RhoMode};
use crate::error::{Error, Result};
use crate::explorer::{explore, hex, ExploreOptions};
use crate::extension::{all_pairs, check_b, check_c, min_used_tree, p_path, ExtensionResult};
use crate::fixtures;
use crate::format::{parse_colouring, parse_graph, write_colouring, write_graph};
use crate::kempe::{bichromatic_components, kempe_switch};
use crate::multigraph::{EdgeId, Labels, Multigraph, VertexSet};
use crate::tashkinov::{build_tree, escalation_pipeline, TashkinovState, TieBreak, Verdict};
use crate::witness::{derive_fig3, synthesize, verify, SynthOptions, SynthOutcome, WitnessSpec};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: String,
    /// Input name to SHA-256 of its contents.
    pub inputs: BTreeMap<String, String>,
    pub passed: bool,
    pub outcome: Value,
    pub timing_ms: u64,
}

#[derive(Parser, Debug)]
#[command(
    name = "tashkinov",
    version,
    about = "Tashkinov trees and Kempe chains for multigraph edge colouring"
)]
struct Cli {
    /// Seed for every randomised step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Print the JSON run report instead of text.
    #[arg(long = "report-json", global = true)]
    report_json: bool,
    /// Also write the JSON run report to this file.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Coloured {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    colouring: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Exact,
    Bnb,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Target {
    Thm2,
    Thm3,
    Thm4,
    Shannon,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Density of the graph as an exact fraction.
    Rho {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Bnb)]
        mode: Mode,
        /// List every maximizing set.
        #[arg(long)]
        all_witnesses: bool,
    },
    /// Components of a two-coloured subgraph, optionally switching one.
    Kempe {
        #[command(flatten)]
        input: Coloured,
        /// Two colours, `a,b`.
        #[arg(long)]
        pair: String,
        /// Index of the component to switch.
        #[arg(long)]
        switch: Option<usize>,
        /// File for the switched colouring.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A maximal Tashkinov tree from an uncoloured edge.
    Tashkinov {
        #[command(flatten)]
        input: Coloured,
        #[arg(long)]
        e0: EdgeId,
        /// lex, revlex, min-used or random:SEED.
        #[arg(long, default_value = "lex")]
        policy: String,
        #[arg(long)]
        json: bool,
    },
    /// The (α, β) path out of an elementary `W`, with `w1, w2` and `Q`.
    Extend {
        #[command(flatten)]
        input: Coloured,
        #[arg(long)]
        e0: EdgeId,
        #[arg(long)]
        alpha: Option<Colour>,
        #[arg(long)]
        beta: Option<Colour>,
        #[arg(long)]
        all_pairs: bool,
        #[arg(long)]
        json: bool,
    },
    /// Kempe-reachable colourings up to relabelling and automorphism.
    Explore {
        #[command(flatten)]
        input: Coloured,
        #[arg(long)]
        e0: EdgeId,
        #[arg(long)]
        max_depth: Option<usize>,
        #[arg(long)]
        allow_e0_shift: bool,
        #[arg(long, default_value_t = crate::explorer::DEFAULT_BUDGET)]
        budget: usize,
        /// File for the full exploration report.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Check a coloured multigraph against a witness spec.
    VerifyWitness {
        #[command(flatten)]
        input: Coloured,
        #[arg(long)]
        spec: PathBuf,
    },
    /// Search for a coloured multigraph satisfying a witness spec.
    Synthesize {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = crate::witness::synth::DEFAULT_BUDGET)]
        budget: u64,
        /// Writes PREFIX.graph and PREFIX.col on success.
        #[arg(long)]
        out: PathBuf,
    },
    /// Build the 26-vertex example from the 16-vertex one.
    DeriveFig3 {
        #[command(flatten)]
        input: Coloured,
        /// Writes PREFIX.graph and PREFIX.col.
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-run a headline check on the shipped examples.
    Reproduce {
        #[arg(value_enum)]
        target: Target,
    },
}

/// What a subcommand produced.
struct Done {
    passed: bool,
    outcome: Value,
    text: String,
}

struct Inputs(BTreeMap<String, String>);

impl Inputs {
    fn read(&mut self, key: &str, path: &Path) -> Result<String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
        self.record(key, &text);
        Ok(text)
    }

    fn record(&mut self, key: &str, text: &str) {
        self.0
            .insert(key.to_string(), hex(&Sha256::digest(text.as_bytes())));
    }

    fn graph(&mut self, path: &Path) -> Result<(Multigraph, Labels)> {
        parse_graph(&self.read("graph", path)?)
    }

    fn coloured(&mut self, input: &Coloured) -> Result<(Multigraph, Labels, PartialColouring)> {
        let (g, labels) = self.graph(&input.graph)?;
        let c = parse_colouring(&self.read("colouring", &input.colouring)?, &g)?;
        if let Some((v, col)) = c.find_conflict(&g) {
            return Err(Error::input(format!(
                "colouring is not proper: colour {col} appears twice at {}",
                labels.display(v)
            )));
        }
        Ok((g, labels, c))
    }
}

/// Parse `argv` (program name first), run, and write the result to `out`.
pub fn run<S: AsRef<str>>(argv: &[S], out: &mut dyn Write) -> i32 {
    run_with_report(argv, out).0
}

/// [`run`], also returning the report when the command got far enough to
/// produce one.
pub fn run_with_report<S: AsRef<str>>(argv: &[S], out: &mut dyn Write) -> (i32, Option<RunReport>) {
    let cli = match Cli::try_parse_from(argv.iter().map(|s| s.as_ref())) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = write!(out, "{}", e.render());
            return (code, None);
        }
    };
    let command = subcommand_name(&cli.command);
    let mut inputs = Inputs(BTreeMap::new());
    let started = Instant::now();
    let done = match dispatch(&cli, &mut inputs) {
        Ok(done) => done,
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            return (if e.is_input_error() { 2 } else { 1 }, None);
        }
    };
    let report = RunReport {
        schema: SCHEMA,
        command: command.to_string(),
        inputs: inputs.0,
        passed: done.passed,
        outcome: done.outcome,
        timing_ms: started.elapsed().as_millis() as u64,
    };
    let json = serde_json::to_string_pretty(&report).expect("reports serialize");
    let written = if cli.report_json {
        writeln!(out, "{json}")
    } else {
        write!(out, "{}", done.text)
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return (2, Some(report));
    }
    if let Some(path) = &cli.report {
        if let Err(e) = std::fs::write(path, format!("{json}\n")) {
            let _ = writeln!(out, "error: {}: {e}", path.display());
            return (2, Some(report));
        }
    }
    (if done.passed { 0 } else { 1 }, Some(report))
}

fn subcommand_name(c: &Command) -> &'static str {
    match c {
        Command::Rho { .. } => "rho",
        Command::Kempe { .. } => "kempe",
        Command::Tashkinov { .. } => "tashkinov",
        Command::Extend { .. } => "extend",
        Command::Explore { .. } => "explore",
        Command::VerifyWitness { .. } => "verify-witness",
        Command::Synthesize { .. } => "synthesize",
        Command::DeriveFig3 { .. } => "derive-fig3",
        Command::Reproduce { target } => match target {
            Target::Thm2 => "reproduce thm2",
            Target::Thm3 => "reproduce thm3",
            Target::Thm4 => "reproduce thm4",
            Target::Shannon => "reproduce shannon",
        },
    }
}

fn dispatch(cli: &Cli, inputs: &mut Inputs) -> Result<Done> {
    match &cli.command {
        Command::Rho {
            graph,
            mode,
            all_witnesses,
        } => {
            let (g, labels) = inputs.graph(graph)?;
            cmd_rho(&g, &labels, *mode, *all_witnesses)
        }
        Command::Kempe {
            input,
            pair,
            switch,
            out,
        } => {
            let (g, labels, c) = inputs.coloured(input)?;
            cmd_kempe(&g, &labels, &c, pair, *switch, out.as_deref())
        }
        Command::Tashkinov {
            input,
            e0,
            policy,
            json,
        } => {
            let (g, labels, c) = inputs.coloured(input)?;
            cmd_tashkinov(&g, &labels, &c, *e0, TieBreak::parse(policy)?, *json)
        }
        Command::Extend {
            input,
            e0,
            alpha,
            beta,
            all_pairs,
            json,
        } => {
            let (g, labels, c) = inputs.coloured(input)?;
            cmd_extend(&g, &labels, &c, *e0, *alpha, *beta, *all_pairs, *json)
        }
        Command::Explore {
            input,
            e0,
            max_depth,
            allow_e0_shift,
            budget,
            json,
        } => {
            let (g, _, c) = inputs.coloured(input)?;
            let opts = ExploreOptions {
                max_depth: *max_depth,
                allow_e0_shift: *allow_e0_shift,
                budget: *budget,
                threads: cli.threads,
            };
            cmd_explore(&g, &c, *e0, &opts, json.as_deref())
        }
        Command::VerifyWitness { input, spec } => {
            let (g, labels, c) = inputs.coloured(input)?;
            let spec = WitnessSpec::parse(&inputs.read("spec", spec)?)?;
            cmd_verify(&g, &labels, &c, &spec)
        }
        Command::Synthesize { spec, budget, out } => {
            let spec = WitnessSpec::parse(&inputs.read("spec", spec)?)?;
            cmd_synthesize(&spec, *budget, cli.seed, out)
        }
        Command::DeriveFig3 { input, out } => {
            let (g, labels, c) = inputs.coloured(input)?;
            let (h, hl, hc) = derive_fig3(&g, &labels, &c)?;
            write_prefix(out, &h, &hl, &hc)?;
            Ok(Done {
                passed: true,
                outcome: json!({
                    "vertices": h.vertex_count(),
                    "edges": h.edge_count(),
                    "colours": hc.k(),
                }),
                text: format!(
                    "wrote {} vertices, {} edges, {} colours to {}.graph/.col\n",
                    h.vertex_count(),
                    h.edge_count(),
                    hc.k(),
                    out.display()
                ),
            })
        }
        Command::Reproduce { target } => {
            let opts = ReproduceOptions {
                threads: cli.threads,
            };
            match target {
                Target::Thm2 => reproduce_thm2(inputs, &opts),
                Target::Thm3 => reproduce_thm3(inputs),
                Target::Thm4 => reproduce_thm4(inputs, &opts),
                Target::Shannon => reproduce_shannon(cli.seed),
            }
        }
    }
}

fn names(labels: &Labels, s: &VertexSet) -> Vec<String> {
    labels.display_set(s)
}

fn cmd_rho(g: &Multigraph, labels: &Labels, mode: Mode, all: bool) -> Result<Done> {
    let mode = match mode {
        Mode::Exact => RhoMode::Exact,
        Mode::Bnb => RhoMode::BranchAndBound,
    };
    let r = rho_all(g, mode)?;
    let cert = &r.certificate;
    let mut text = format!(
        "rho = {}/{}\nceiling = {}\nwitness = {}\nmaximizers = {}\n",
        cert.value.numer(),
        cert.value.denom(),
        cert.ceiling,
        names(labels, &cert.witness_set).join(" "),
        r.maximizer_count
    );
    let listed: Vec<Vec<String>> = r.maximizers.iter().map(|s| names(labels, s)).collect();
    if all {
        for s in &listed {
            text.push_str(&format!("  {}\n", s.join(" ")));
        }
    }
    let mut outcome = json!({
        "value": format!("{}/{}", cert.value.numer(), cert.value.denom()),
        "ceiling": cert.ceiling,
        "witness": names(labels, &cert.witness_set),
        "induced_edges": cert.induced_edges,
        "maximizer_count": r.maximizer_count,
    });
    if all {
        outcome["maximizers"] = json!(listed);
    }
    Ok(Done {
        passed: true,
        outcome,
        text,
    })
}

fn parse_pair(s: &str) -> Result<(Colour, Colour)> {
    let bad = || Error::input(format!("--pair expects two colours `a,b`, got `{s}`"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

fn cmd_kempe(
    g: &Multigraph,
    labels: &Labels,
    c: &PartialColouring,
    pair: &str,
    switch: Option<usize>,
    out: Option<&Path>,
) -> Result<Done> {
    let (a, b) = parse_pair(pair)?;
    let comps = bichromatic_components(c, g, a, b)?;
    let mut text = String::new();
    let mut listed = Vec::new();
    for (i, comp) in comps.iter().enumerate() {
        let vs: Vec<String> = comp.vertices.iter().map(|&v| labels.display(v)).collect();
        text.push_str(&format!(
            "{i}: {:?} len {} [{}]\n",
            comp.kind,
            comp.len(),
            vs.join(" ")
        ));
        listed.push(json!({"kind": comp.kind, "vertices": vs, "edges": comp.edges}));
    }
    if let Some(i) = switch {
        let comp = comps
            .get(i)
            .ok_or_else(|| Error::input(format!("no component {i}; there are {}", comps.len())))?;
        let switched = kempe_switch(c, g, comp)?;
        match out {
            Some(path) => {
                std::fs::write(path, write_colouring(&switched))?;
                text.push_str(&format!(
                    "switched component {i}, wrote {}\n",
                    path.display()
                ));
            }
            None => text.push_str(&write_colouring(&switched)),
        }
    }
    Ok(Done {
        passed: true,
        outcome: json!({"pair": [a, b], "components": listed, "switched": switch}),
        text,
    })
}

fn tree_json(labels: &Labels, st: &TashkinovState) -> Value {
    json!({
        "e0": st.e0,
        "w": names(labels, &st.w_set),
        "w_size": st.w_set.len(),
        "missing": st.missing_union.to_vec(),
        "used": st.used_colours.to_vec(),
        "defective": st.defective,
        "elementary": st.elementary,
        "defect_parity_odd": st.defective.values().all(|n| n % 2 == 1),
        "within_preconditions": st.within_preconditions,
        "order": st.order.iter().map(|&v| labels.display(v)).collect::<Vec<_>>(),
    })
}

fn cmd_tashkinov(
    g: &Multigraph,
    labels: &Labels,
    c: &PartialColouring,
    e0: EdgeId,
    policy: TieBreak,
    json: bool,
) -> Result<Done> {
    let st = build_tree(c, g, e0, policy)?;
    let outcome = tree_json(labels, &st);
    let text = if json {
        format!(
            "{}\n",
            serde_json::to_string_pretty(&outcome).expect("json")
        )
    } else {
        format!(
            "W ({}) = {}\nM = {:?}\nU = {:?}\nD = {:?}\nelementary = {}\ndefect parity odd = {}\n",
            st.w_set.len(),
            names(labels, &st.w_set).join(" "),
            st.missing_union.to_vec(),
            st.used_colours.to_vec(),
            st.defective,
            st.elementary,
            outcome["defect_parity_odd"]
        )
    };
    Ok(Done {
        passed: true,
        outcome,
        text,
    })
}

/// `⌈ρ(G[s])⌉`.
fn induced_ceil(g: &Multigraph, s: &VertexSet) -> Result<u64> {
    Ok(rho(&g.induced(s).0, RhoMode::BranchAndBound)?.ceiling)
}

fn extension_json(
    g: &Multigraph,
    labels: &Labels,
    c: &PartialColouring,
    st: &TashkinovState,
    r: &ExtensionResult,
) -> Result<Value> {
    let shown = |vs: &[usize]| vs.iter().map(|&v| labels.display(v)).collect::<Vec<_>>();
    let b = r.w_plus_w1w2(st);
    let q = r.w_plus_q(st);
    let ceil = |s: &VertexSet| -> Result<Option<u64>> {
        if s.len() < 3 {
            return Ok(None);
        }
        Ok(Some(induced_ceil(g, s)?))
    };
    Ok(json!({
        "alpha": r.alpha,
        "beta": r.beta,
        "start": labels.display(r.start),
        "path": shown(&r.p_path.vertices),
        "w1": labels.display(r.w1),
        "w2": labels.display(r.w2),
        "q": shown(&r.q_segment),
        "w_plus_w1w2_size": b.len(),
        "w_plus_w1w2_ceil": ceil(&b)?,
        "w_plus_q_size": q.len(),
        "w_plus_q_ceil": ceil(&q)?,
        "check_b": check_b(c, g, st, r),
        "check_c": check_c(c, g, st, r),
    }))
}

#[allow(clippy::too_many_arguments)]
fn cmd_extend(
    g: &Multigraph,
    labels: &Labels,
    c: &PartialColouring,
    e0: EdgeId,
    alpha: Option<Colour>,
    beta: Option<Colour>,
    every: bool,
    json: bool,
) -> Result<Done> {
    let st = min_used_tree(c, g, e0)?;
    let results = if every {
        all_pairs(c, g, &st)
    } else {
        let a = match alpha {
            Some(a) => a,
            None => *st
                .defective
                .keys()
                .next()
                .ok_or_else(|| Error::precondition("W has no defective colour"))?,
        };
        let b = match beta {
            Some(b) => b,
            None => crate::extension::beta_candidates(&st)
                .first()
                .ok_or_else(|| Error::precondition("M minus U is empty"))?,
        };
        vec![(a, b, p_path(c, g, &st, a, b))]
    };
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut passed = true;
    for (a, b, r) in results {
        match r {
            Ok(r) => {
                let row = extension_json(g, labels, c, &st, &r)?;
                text.push_str(&format!(
                    "alpha={a} beta={b}: w1={} w2={} Q=({}) B ok={} C ok={}\n",
                    row["w1"].as_str().unwrap_or_default(),
                    row["w2"].as_str().unwrap_or_default(),
                    shown_list(&row["q"]),
                    row["check_b"],
                    row["check_c"]
                ));
                passed &= row["check_b"] == true && row["check_c"] == true;
                rows.push(row);
            }
            Err(e @ Error::Violation(_)) => {
                passed = false;
                text.push_str(&format!("alpha={a} beta={b}: {e}\n"));
                rows.push(json!({"alpha": a, "beta": b, "error": e.to_string()}));
            }
            Err(e) => return Err(e),
        }
    }
    let outcome = json!({"tree": tree_json(labels, &st), "pairs": rows});
    if json {
        text = format!(
            "{}\n",
            serde_json::to_string_pretty(&outcome).expect("json")
        );
    }
    Ok(Done {
        passed,
        outcome,
        text,
    })
}

fn shown_list(v: &Value) -> String {
    v.as_array()
        .map(|a| {
            a.iter()
                .filter_map(|x| x.as_str())
                .collect::<Vec<_>>()
                .join(",")
        })
        .unwrap_or_default()
}

fn cmd_explore(
    g: &Multigraph,
    c: &PartialColouring,
    e0: EdgeId,
    opts: &ExploreOptions,
    json_out: Option<&Path>,
) -> Result<Done> {
    let r = explore(g, c, e0, opts)?;
    if let Some(path) = json_out {
        std::fs::write(path, serde_json::to_string_pretty(&r).expect("json") + "\n")?;
    }
    let text = format!(
        "states = {}\nmax |W| = {}\nW sizes = {:?}\nextendable found = {}\ndefect-free found = {}\ncomplete = {}\n",
        r.states_visited,
        r.max_w_size,
        r.w_sizes(),
        r.extendable_found,
        r.defect_free_found,
        r.complete
    );
    Ok(Done {
        passed: true,
        outcome: json!({
            "states_visited": r.states_visited,
            "max_w_size": r.max_w_size,
            "w_sizes": r.w_sizes(),
            "extendable_found": r.extendable_found,
            "defect_free_found": r.defect_free_found,
            "complete": r.complete,
        }),
        text,
    })
}

fn cmd_verify(
    g: &Multigraph,
    labels: &Labels,
    c: &PartialColouring,
    spec: &WitnessSpec,
) -> Result<Done> {
    let report = verify(g, labels, c, spec)?;
    let mut text = String::new();
    for f in report.failures() {
        text.push_str(&format!("FAIL {}: {}\n", f.name, f.detail));
    }
    let failed = report.failures().count();
    text.push_str(&format!(
        "{}: {} of {} clauses passed\n",
        report.spec,
        report.clauses.len() - failed,
        report.clauses.len()
    ));
    Ok(Done {
        passed: report.passed(),
        outcome: serde_json::to_value(&report).expect("json"),
        text,
    })
}

fn write_prefix(
    prefix: &Path,
    g: &Multigraph,
    labels: &Labels,
    c: &PartialColouring,
) -> Result<()> {
    let with = |ext: &str| {
        let mut p = prefix.as_os_str().to_owned();
        p.push(ext);
        PathBuf::from(p)
    };
    std::fs::write(with(".graph"), write_graph(g, labels))?;
    std::fs::write(with(".col"), write_colouring(c))?;
    Ok(())
}

fn cmd_synthesize(spec: &WitnessSpec, budget: u64, seed: u64, out: &Path) -> Result<Done> {
    let outcome = synthesize(spec, SynthOptions { budget, seed })?;
    let summary = outcome.summary();
    let text = match &outcome {
        SynthOutcome::Found {
            graph,
            labels,
            colouring,
            nodes,
        } => {
            write_prefix(out, graph, labels, colouring)?;
            format!(
                "found after {nodes} nodes, wrote {}.graph/.col\n",
                out.display()
            )
        }
        SynthOutcome::NotFound {
            nodes,
            exhausted: true,
        } => {
            format!("no witness exists ({nodes} nodes, search exhausted)\n")
        }
        SynthOutcome::NotFound {
            nodes,
            exhausted: false,
        } => {
            format!("no witness found within {nodes} nodes (inconclusive)\n")
        }
    };
    Ok(Done {
        passed: summary.found,
        outcome: serde_json::to_value(&summary).expect("json"),
        text,
    })
}

struct ReproduceOptions {
    threads: usize,
}

/// One named assertion of a `reproduce` target.
struct Checks {
    rows: Vec<Value>,
    text: String,
    passed: bool,
}

impl Checks {
    fn new() -> Self {
        Checks {
            rows: Vec::new(),
            text: String::new(),
            passed: true,
        }
    }

    fn check(&mut self, name: &str, ok: bool, found: impl Into<Value>) {
        let found = found.into();
        self.passed &= ok;
        self.text.push_str(&format!(
            "{} {name}: {found}\n",
            if ok { "ok  " } else { "FAIL" }
        ));
        self.rows
            .push(json!({"check": name, "passed": ok, "found": found}));
    }

    fn done(self) -> Done {
        Done {
            passed: self.passed,
            outcome: json!({"checks": self.rows}),
            text: self.text,
        }
    }
}

fn load_fixture(inputs: &mut Inputs, which: u8) -> fixtures::Fixture {
    if which == 1 {
        inputs.record("fig1.graph", fixtures::FIG1_GRAPH);
        inputs.record("fig1.col", fixtures::FIG1_COLOURING);
        fixtures::fig1()
    } else {
        inputs.record("fig3.graph", fixtures::FIG3_GRAPH);
        inputs.record("fig3.col", fixtures::FIG3_COLOURING);
        fixtures::fig3()
    }
}

fn reproduce_thm2(inputs: &mut Inputs, opts: &ReproduceOptions) -> Result<Done> {
    let f = load_fixture(inputs, 1);
    let mut checks = Checks::new();
    let r = rho_all(&f.graph, RhoMode::BranchAndBound)?;
    checks.check(
        "ceil rho = 19",
        r.certificate.ceiling == 19,
        r.certificate.ceiling,
    );
    checks.check(
        "unique maximizer V - x",
        r.maximizer_count == 1 && r.certificate.witness_set == f.all_except(&["x"]),
        r.maximizer_count,
    );
    for shift in [false, true] {
        let rep = explore(
            &f.graph,
            &f.colouring,
            f.e0,
            &ExploreOptions {
                allow_e0_shift: shift,
                threads: opts.threads,
                ..Default::default()
            },
        )?;
        let tag = if shift { " (e0 moves)" } else { "" };
        checks.check(
            &format!("closure complete{tag}"),
            rep.complete,
            rep.states_visited,
        );
        checks.check(
            &format!("max |W| = 13{tag}"),
            rep.max_w_size == 13,
            rep.max_w_size,
        );
        checks.check(
            &format!("never extendable{tag}"),
            !rep.extendable_found,
            rep.extendable_found,
        );
        checks.check(
            &format!("never defect-free{tag}"),
            !rep.defect_free_found,
            rep.defect_free_found,
        );
    }
    Ok(checks.done())
}

fn reproduce_thm3(inputs: &mut Inputs) -> Result<Done> {
    let f = load_fixture(inputs, 1);
    let mut checks = Checks::new();
    let st = min_used_tree(&f.colouring, &f.graph, f.e0)?;
    checks.check(
        "W = V - {x, v16, v17}",
        st.w_set == f.all_except(&["x", "v16", "v17"]),
        st.w_set.len(),
    );
    checks.check(
        "D = {alpha}, odd boundary count",
        st.defective.keys().eq([&f.alpha]) && st.defective.values().all(|n| n % 2 == 1),
        json!(st.defective),
    );
    let want = f.set(&["v16", "v17"]);
    for beta in 6..=15 {
        let r = p_path(&f.colouring, &f.graph, &st, f.alpha, beta)?;
        let b = r.w_plus_w1w2(&st);
        checks.check(
            &format!("beta {beta}: w1, w2 = v16, v17"),
            VertexSet::from([r.w1, r.w2]) == want,
            json!([f.labels.display(r.w1), f.labels.display(r.w2)]),
        );
        let ceil = induced_ceil(&f.graph, &b)?;
        checks.check(
            &format!("beta {beta}: W + w1w2 elementary, ceil rho = 19"),
            f.colouring.is_elementary(&f.graph, &b) && ceil == 19,
            ceil,
        );
    }
    Ok(checks.done())
}

fn reproduce_thm4(inputs: &mut Inputs, opts: &ReproduceOptions) -> Result<Done> {
    let f = load_fixture(inputs, 3);
    let mut checks = Checks::new();
    let st = min_used_tree(&f.colouring, &f.graph, f.e0)?;
    checks.check("|W| = 21", st.w_set.len() == 21, st.w_set.len());
    checks.check(
        "D = {alpha}",
        st.defective.keys().eq([&f.alpha]),
        json!(st.defective),
    );
    let q_forward: Vec<usize> = ["v17", "v27", "v26", "v16"]
        .iter()
        .map(|n| f.v(n))
        .collect();
    let mut q_back = q_forward.clone();
    q_back.reverse();
    for (a, beta, r) in all_pairs(&f.colouring, &f.graph, &st) {
        let r = r?;
        let tag = format!("alpha {a} beta {beta}");
        let q_names: Vec<String> = r.q_segment.iter().map(|&v| f.labels.display(v)).collect();
        checks.check(
            &format!("{tag}: Q = (v17, v27, v26, v16)"),
            r.q_segment == q_forward || r.q_segment == q_back,
            json!(q_names),
        );
        let wq = r.w_plus_q(&st);
        let ceil_q = induced_ceil(&f.graph, &wq)?;
        checks.check(
            &format!("{tag}: W + Q elementary, ceil rho = 29"),
            f.colouring.is_elementary(&f.graph, &wq) && ceil_q == 29,
            ceil_q,
        );
        let b = r.w_plus_w1w2(&st);
        let ceil_b = induced_ceil(&f.graph, &b)?;
        checks.check(
            &format!("{tag}: |W + w1w2| = 23, ceil rho < 29"),
            b.len() == 23 && ceil_b < 29,
            ceil_b,
        );
    }
    let rep = explore(
        &f.graph,
        &f.colouring,
        f.e0,
        &ExploreOptions {
            threads: opts.threads,
            ..Default::default()
        },
    )?;
    checks.check("closure complete", rep.complete, rep.states_visited);
    checks.check("max |W| = 21", rep.max_w_size == 21, rep.max_w_size);
    checks.check(
        "never extendable",
        !rep.extendable_found,
        rep.extendable_found,
    );
    Ok(checks.done())
}

fn reproduce_shannon(seed: u64) -> Result<Done> {
    let mut checks = Checks::new();
    for mu in 2..=4 {
        let g = Multigraph::shannon_triangle(mu);
        let start = 2 * mu as Colour + 1;
        let rep = escalation_pipeline(&g, start, 3 * mu as Colour + 2, seed, None)?;
        let got = match &rep.verdict {
            Verdict::Determined {
                chromatic_index,
                certificate,
            } if certificate.ceiling == *chromatic_index as u64 => Some(*chromatic_index),
            _ => None,
        };
        checks.check(
            &format!("mu {mu} from k = {start}: chi' = ceil rho = {}", 3 * mu),
            got == Some(3 * mu as Colour),
            json!(rep.verdict),
        );
    }
    Ok(checks.done())
}
